use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::class::SetClass;
use super::subset::{write_mask, Subset};
use super::universe::{same_universe, Universe};
use crate::error::{Error, Result};

/// An eventually periodic sequence `S_1, S_2, ...`: the prefix followed by the
/// cycle repeated forever.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSeq {
    universe: Arc<Universe>,
    prefix: Vec<u32>,
    cycle: Vec<u32>,
}

impl SetSeq {
    pub fn new(universe: &Arc<Universe>, prefix: Vec<u32>, cycle: Vec<u32>) -> Result<SetSeq> {
        if cycle.is_empty() {
            return Err(Error::Parse("a sequence needs a nonempty cycle".into()));
        }
        let fullm = universe.full_mask();
        if prefix.iter().chain(&cycle).any(|&m| m & !fullm != 0) {
            return Err(Error::Parse(format!("sequence has points outside {universe}")));
        }
        Ok(SetSeq { universe: universe.clone(), prefix, cycle })
    }

    pub fn from_subsets(universe: &Arc<Universe>, prefix: &[Subset], cycle: &[Subset]) -> Result<SetSeq> {
        for s in prefix.iter().chain(cycle) {
            same_universe(universe, s.universe())?;
        }
        SetSeq::new(universe, prefix.iter().map(Subset::bits).collect(), cycle.iter().map(Subset::bits).collect())
    }

    /// Eventually constant sequence: `prefix` then `last` forever.
    pub fn eventually(universe: &Arc<Universe>, prefix: Vec<u32>, last: u32) -> Result<SetSeq> {
        SetSeq::new(universe, prefix, vec![last])
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn prefix(&self) -> &[u32] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[u32] {
        &self.cycle
    }

    /// `S_i` for `i >= 1`.
    pub fn term(&self, i: usize) -> u32 {
        assert!(i >= 1, "sequences are indexed from 1");
        let k = i - 1;
        if k < self.prefix.len() {
            self.prefix[k]
        } else {
            self.cycle[(k - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Number of leading terms after which the sequence is periodic: prefix
    /// plus one full cycle covers every distinct pattern.
    pub fn period_horizon(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    /// Pointwise combination of two sequences over the same universe.
    pub fn zip_with(&self, other: &SetSeq, f: impl Fn(u32, u32) -> u32) -> Result<SetSeq> {
        same_universe(&self.universe, &other.universe)?;
        let p = self.prefix.len().max(other.prefix.len());
        let c = lcm(self.cycle.len(), other.cycle.len());
        let prefix = (1..=p).map(|i| f(self.term(i), other.term(i))).collect();
        let cycle = (p + 1..=p + c).map(|i| f(self.term(i), other.term(i))).collect();
        SetSeq::new(&self.universe, prefix, cycle)
    }

    /// Termwise complement.
    pub fn complemented(&self) -> SetSeq {
        let fullm = self.universe.full_mask();
        SetSeq {
            universe: self.universe.clone(),
            prefix: self.prefix.iter().map(|m| !m & fullm).collect(),
            cycle: self.cycle.iter().map(|m| !m & fullm).collect(),
        }
    }

    /// The distinct terms, as a class.
    pub fn terms(&self) -> SetClass {
        SetClass::from_raw(&self.universe, self.prefix.iter().chain(&self.cycle).copied().collect())
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / num_integer::gcd(a, b) * b
}

impl fmt::Display for SetSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list = |f: &mut fmt::Formatter<'_>, xs: &[u32]| -> fmt::Result {
            f.write_str("[")?;
            for (i, &m) in xs.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write_mask(f, &self.universe, m)?;
            }
            f.write_str("]")
        };
        f.write_str("prefix ")?;
        list(f, &self.prefix)?;
        f.write_str(" cycle ")?;
        list(f, &self.cycle)
    }
}

impl Serialize for SetSeq {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let lab = |xs: &[u32]| -> Vec<Vec<String>> {
            xs.iter().map(|&m| Subset::from_raw(&self.universe, m).labels()).collect()
        };
        let mut st = serializer.serialize_struct("SetSeq", 2)?;
        st.serialize_field("prefix", &lab(&self.prefix))?;
        st.serialize_field("cycle", &lab(&self.cycle))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn terms_follow_prefix_then_cycle() {
        let u = Universe::new("X", 3).unwrap();
        let s = SetSeq::new(&u, vec![1], vec![2, 4]).unwrap();
        let got: Vec<u32> = (1..=6).map(|i| s.term(i)).collect();
        assert_eq!(got, vec![1, 2, 4, 2, 4, 2]);
        assert!(SetSeq::new(&u, vec![], vec![]).is_err());
    }

    #[test]
    fn zip_aligns_cycles() {
        let u = Universe::new("X", 3).unwrap();
        let a = SetSeq::new(&u, vec![], vec![1, 2]).unwrap();
        let b = SetSeq::new(&u, vec![4], vec![0, 4, 0]).unwrap();
        let z = a.zip_with(&b, |x, y| x | y).unwrap();
        for i in 1..40 {
            assert_eq!(z.term(i), a.term(i) | b.term(i));
        }
    }
}
