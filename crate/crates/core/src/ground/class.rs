use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::subset::{write_mask, Subset};
use super::universe::{same_universe, Universe};
use crate::bits;
use crate::error::{Error, Result};

/// A duplicate-free collection of subsets of one universe, kept sorted by the
/// numeric value of the bit strings. Structural equality is set equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetClass {
    universe: Arc<Universe>,
    members: Vec<u32>,
}

impl SetClass {
    /// Canonicalizes a list of subsets: dedup and sort.
    pub fn canonicalize(universe: &Arc<Universe>, members: &[Subset]) -> Result<SetClass> {
        let mut masks = Vec::with_capacity(members.len());
        for m in members {
            same_universe(universe, m.universe())?;
            masks.push(m.bits());
        }
        bits::canonical(&mut masks);
        Ok(SetClass { universe: universe.clone(), members: masks })
    }

    pub fn from_masks(universe: &Arc<Universe>, mut masks: Vec<u32>) -> Result<SetClass> {
        let fullm = universe.full_mask();
        if let Some(bad) = masks.iter().find(|&&m| m & !fullm != 0) {
            return Err(Error::Parse(format!("mask {bad:#b} has points outside {universe}")));
        }
        bits::canonical(&mut masks);
        Ok(SetClass { universe: universe.clone(), members: masks })
    }

    /// Caller guarantees the masks fit the universe.
    pub(crate) fn from_raw(universe: &Arc<Universe>, mut masks: Vec<u32>) -> SetClass {
        bits::canonical(&mut masks);
        SetClass { universe: universe.clone(), members: masks }
    }

    /// Caller guarantees the masks are already sorted and unique.
    pub(crate) fn from_sorted(universe: &Arc<Universe>, masks: Vec<u32>) -> SetClass {
        debug_assert!(masks.windows(2).all(|w| w[0] < w[1]));
        SetClass { universe: universe.clone(), members: masks }
    }

    pub fn empty(universe: &Arc<Universe>) -> SetClass {
        SetClass { universe: universe.clone(), members: Vec::new() }
    }

    /// The full powerset `P(X)`.
    pub fn powerset(universe: &Arc<Universe>) -> SetClass {
        let members = (0..=universe.full_mask()).collect();
        SetClass { universe: universe.clone(), members }
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn masks(&self) -> &[u32] {
        &self.members
    }

    pub fn into_masks(self) -> Vec<u32> {
        self.members
    }

    pub fn members(&self) -> impl Iterator<Item = Subset> + '_ {
        self.members.iter().map(|&m| Subset::from_raw(&self.universe, m))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains_mask(&self, m: u32) -> bool {
        bits::sorted_contains(&self.members, m)
    }

    pub fn contains(&self, s: &Subset) -> bool {
        **s.universe() == *self.universe && self.contains_mask(s.bits())
    }

    pub fn contains_empty(&self) -> bool {
        self.members.first() == Some(&0)
    }

    pub fn contains_full(&self) -> bool {
        self.members.last() == Some(&self.universe.full_mask())
    }

    /// Union of all members.
    pub fn union_mask(&self) -> u32 {
        self.members.iter().fold(0, |acc, &m| acc | m)
    }

    pub fn is_subclass_of(&self, other: &SetClass) -> Result<bool> {
        same_universe(&self.universe, &other.universe)?;
        Ok(self.members.iter().all(|&m| other.contains_mask(m)))
    }

    /// `{ S ∩ x0 : S ∈ self }`.
    pub fn trace(&self, x0: &Subset) -> Result<SetClass> {
        same_universe(&self.universe, x0.universe())?;
        Ok(self.trace_mask(x0.bits()))
    }

    pub(crate) fn trace_mask(&self, x0: u32) -> SetClass {
        SetClass::from_raw(&self.universe, self.members.iter().map(|&m| m & x0).collect())
    }

    pub fn union(&self, other: &SetClass) -> Result<SetClass> {
        same_universe(&self.universe, &other.universe)?;
        let mut all = self.members.clone();
        all.extend_from_slice(&other.members);
        Ok(SetClass::from_raw(&self.universe, all))
    }

    pub fn intersection(&self, other: &SetClass) -> Result<SetClass> {
        same_universe(&self.universe, &other.universe)?;
        let kept = self.members.iter().copied().filter(|&m| other.contains_mask(m)).collect();
        Ok(SetClass::from_sorted(&self.universe, kept))
    }

    /// Members of `self` that are not in `other`.
    pub fn difference(&self, other: &SetClass) -> Result<SetClass> {
        same_universe(&self.universe, &other.universe)?;
        let kept = self.members.iter().copied().filter(|&m| !other.contains_mask(m)).collect();
        Ok(SetClass::from_sorted(&self.universe, kept))
    }

    pub fn with_mask(&self, m: u32) -> SetClass {
        let mut all = self.members.clone();
        all.push(m);
        SetClass::from_raw(&self.universe, all)
    }

    pub fn format_mask(&self, m: u32) -> String {
        super::subset::format_mask(&self.universe, m)
    }
}

impl fmt::Display for SetClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &m) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write_mask(f, &self.universe, m)?;
        }
        f.write_str("]")
    }
}

/// Serializes as the sorted list of member label arrays.
impl Serialize for SetClass {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let lists: Vec<Vec<String>> = self.members().map(|s| s.labels()).collect();
        lists.serialize(serializer)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x3() -> Arc<Universe> {
        Universe::new("X", 3).unwrap()
    }

    fn s(u: &Arc<Universe>, pts: &[usize]) -> Subset {
        Subset::from_points(u, &pts.iter().map(|p| p - 1).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn canonicalize_dedups_and_sorts() {
        let u = x3();
        let c = SetClass::canonicalize(&u, &[s(&u, &[2]), s(&u, &[1]), s(&u, &[2])]).unwrap();
        assert_eq!(c.to_string(), "[{1},{2}]");
        assert!(SetClass::canonicalize(&u, &[]).unwrap().is_empty());
        let c = SetClass::canonicalize(&u, &[s(&u, &[]), s(&u, &[1, 2, 3])]).unwrap();
        assert_eq!(c.to_string(), "[{},{1,2,3}]");
    }

    #[test]
    fn canonicalize_rejects_foreign_members() {
        let u = x3();
        let v = Universe::new("Y", 3).unwrap();
        assert!(SetClass::canonicalize(&u, &[Subset::empty(&v)]).is_err());
    }

    #[test]
    fn trace_examples() {
        let u = x3();
        let c = SetClass::canonicalize(&u, &[s(&u, &[1]), s(&u, &[1, 2]), s(&u, &[2, 3])]).unwrap();
        assert_eq!(c.trace(&s(&u, &[1, 2])).unwrap().to_string(), "[{1},{2},{1,2}]");
        assert_eq!(c.trace(&Subset::full(&u)).unwrap(), c);
    }
}
