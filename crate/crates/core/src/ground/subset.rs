use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::universe::{same_universe, Universe};
use crate::bits;
use crate::error::{Error, Result};

/// Pointwise Boolean combinations of two subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SubsetOp {
    Union,
    Intersection,
    Difference,
    SymmetricDifference,
}

impl SubsetOp {
    #[inline]
    pub fn eval(self, a: u32, b: u32) -> u32 {
        match self {
            SubsetOp::Union => a | b,
            SubsetOp::Intersection => a & b,
            SubsetOp::Difference => a & !b,
            SubsetOp::SymmetricDifference => a ^ b,
        }
    }
}

/// A subset of a [`Universe`], stored as its characteristic bit string.
#[derive(Clone, Debug)]
pub struct Subset {
    universe: Arc<Universe>,
    bits: u32,
}

impl Subset {
    pub fn new(universe: &Arc<Universe>, bits: u32) -> Result<Subset> {
        if bits & !universe.full_mask() != 0 {
            return Err(Error::Parse(format!("bit string {bits:#b} has points outside {}", universe)));
        }
        Ok(Subset { universe: universe.clone(), bits })
    }

    /// Caller guarantees `bits` fits the universe.
    pub(crate) fn from_raw(universe: &Arc<Universe>, bits: u32) -> Subset {
        debug_assert!(bits & !universe.full_mask() == 0);
        Subset { universe: universe.clone(), bits }
    }

    /// Builds a subset from 0-based point indices.
    pub fn from_points(universe: &Arc<Universe>, points: &[usize]) -> Result<Subset> {
        let mut bits = 0u32;
        for &p in points {
            if p >= universe.size() {
                return Err(Error::Parse(format!("point {} is not in {}", p + 1, universe)));
            }
            bits |= 1 << p;
        }
        Ok(Subset { universe: universe.clone(), bits })
    }

    pub fn empty(universe: &Arc<Universe>) -> Subset {
        Subset { universe: universe.clone(), bits: 0 }
    }

    pub fn full(universe: &Arc<Universe>) -> Subset {
        Subset { universe: universe.clone(), bits: universe.full_mask() }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, point: usize) -> bool {
        point < 32 && self.bits >> point & 1 == 1
    }

    /// 0-based member points in increasing order.
    pub fn points(&self) -> Vec<usize> {
        bits::points(self.bits).collect()
    }

    pub fn op(&self, other: &Subset, kind: SubsetOp) -> Result<Subset> {
        same_universe(&self.universe, &other.universe)?;
        Ok(Subset { universe: self.universe.clone(), bits: kind.eval(self.bits, other.bits) })
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.op(other, SubsetOp::Union)
    }

    pub fn intersection(&self, other: &Subset) -> Result<Subset> {
        self.op(other, SubsetOp::Intersection)
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        self.op(other, SubsetOp::Difference)
    }

    pub fn symmetric_difference(&self, other: &Subset) -> Result<Subset> {
        self.op(other, SubsetOp::SymmetricDifference)
    }

    pub fn complement(&self) -> Subset {
        Subset { universe: self.universe.clone(), bits: !self.bits & self.universe.full_mask() }
    }

    pub fn is_subset_of(&self, other: &Subset) -> Result<bool> {
        same_universe(&self.universe, &other.universe)?;
        Ok(bits::is_subset(self.bits, other.bits))
    }

    /// Printable 1-based labels of the members.
    pub fn labels(&self) -> Vec<String> {
        bits::points(self.bits).map(|p| self.universe.label(p)).collect()
    }
}

impl PartialEq for Subset {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && *self.universe == *other.universe
    }
}

impl Eq for Subset {}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Unsigned numeric order of the bit strings.
impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits.cmp(&other.bits)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_mask(f, &self.universe, self.bits)
    }
}

pub(crate) fn write_mask(f: &mut impl fmt::Write, universe: &Universe, mask: u32) -> fmt::Result {
    f.write_char('{')?;
    for (i, p) in bits::points(mask).enumerate() {
        if i > 0 {
            f.write_char(',')?;
        }
        f.write_str(&universe.label(p))?;
    }
    f.write_char('}')
}

/// Renders a bare mask in subset syntax.
pub fn format_mask(universe: &Universe, mask: u32) -> String {
    let mut s = String::new();
    write_mask(&mut s, universe, mask).expect("writing to a String");
    s
}

impl Serialize for Subset {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.labels().serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x3() -> Arc<Universe> {
        Universe::new("X", 3).unwrap()
    }

    #[test]
    fn union_of_overlapping_pairs() {
        let u = x3();
        let a = Subset::from_points(&u, &[0, 1]).unwrap();
        let b = Subset::from_points(&u, &[1, 2]).unwrap();
        assert_eq!(a.union(&b).unwrap(), Subset::full(&u));
    }

    #[test]
    fn self_symmetric_difference_is_empty() {
        let u = x3();
        let a = Subset::from_points(&u, &[0, 2]).unwrap();
        assert!(a.symmetric_difference(&a).unwrap().is_empty());
    }

    #[test]
    fn difference_of_contained_set_is_empty() {
        let u = x3();
        let a = Subset::from_points(&u, &[0]).unwrap();
        let b = Subset::from_points(&u, &[0, 1]).unwrap();
        assert!(a.difference(&b).unwrap().is_empty());
    }

    #[test]
    fn mismatch_names_both_universes() {
        let a = Subset::empty(&Universe::new("X", 3).unwrap());
        let b = Subset::empty(&Universe::new("Y", 3).unwrap());
        let msg = a.union(&b).unwrap_err().to_string();
        assert!(msg.contains("X") && msg.contains("Y"), "{msg}");
    }

    #[test]
    fn width_is_enforced() {
        assert!(Subset::new(&x3(), 0b1000).is_err());
        assert_eq!(Subset::new(&x3(), 0b101).unwrap().to_string(), "{1,3}");
    }
}
