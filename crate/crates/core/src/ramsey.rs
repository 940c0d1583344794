//! Finite Ramsey search: colorings of the `n`-element subsets of a universe
//! and monochromatic `k`-sets.

use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::bits;
use crate::error::{Error, Result};
use crate::ground::{Subset, Universe};

/// Cap on the number of colored `n`-subsets.
pub const MAX_TUPLES: u64 = 20_000;
/// Cap on the number of colorings swept by [`all_colorings`].
pub const MAX_COLORINGS: u64 = 1 << 22;

/// Masks with exactly `k` of the low `n` bits set, in increasing numeric
/// order, which is colex order.
pub fn k_subsets(n: usize, k: usize) -> impl Iterator<Item = u32> {
    let limit: u64 = 1 << n;
    let first: u64 = if k == 0 { 0 } else { (1u64 << k) - 1 };
    let mut next = (k <= n).then_some(first);
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            let c = cur & cur.wrapping_neg();
            let r = cur + c;
            let succ = (((r ^ cur) >> 2) / c) | r;
            (succ < limit).then_some(succ)
        };
        Some(cur as u32)
    })
}

/// Position of an `n`-subset in colex order.
fn colex_rank(mask: u32) -> usize {
    bits::points(mask).enumerate().map(|(i, p)| bits::binomial(p as u64, i as u64 + 1) as usize).sum()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    universe: Arc<Universe>,
    n: usize,
    m: u8,
    /// Color of each `n`-subset, indexed by colex rank.
    colors: Vec<u8>,
}

impl Coloring {
    fn check_params(universe: &Universe, n: usize, m: usize) -> Result<()> {
        if n == 0 || n > universe.size() {
            return Err(Error::precondition(
                "coloring",
                format!("subset size {n} must lie in 1..={}", universe.size()),
            ));
        }
        if m == 0 || m > 255 {
            return Err(Error::precondition("coloring", format!("color count {m} must lie in 1..=255")));
        }
        let tuples = bits::binomial(universe.size() as u64, n as u64);
        if tuples > MAX_TUPLES {
            return Err(Error::cap("colored subsets", tuples as usize, MAX_TUPLES as usize));
        }
        Ok(())
    }

    pub fn from_fn(universe: &Arc<Universe>, n: usize, m: usize, color: impl Fn(u32) -> usize) -> Result<Coloring> {
        Coloring::check_params(universe, n, m)?;
        let colors = k_subsets(universe.size(), n)
            .map(|s| {
                let c = color(s);
                if c < m {
                    Ok(c as u8)
                } else {
                    Err(Error::precondition("coloring", format!("color {c} is not below {m}")))
                }
            })
            .collect::<Result<_>>()?;
        Ok(Coloring { universe: universe.clone(), n, m: m as u8, colors })
    }

    /// Reads a JSON list of `[subset, color]` pairs, the subset given as an
    /// array of point labels (strings or numbers). Every `n`-subset must be
    /// colored exactly once; `m` is one more than the largest color.
    pub fn from_json(universe: &Arc<Universe>, text: &str) -> Result<Coloring> {
        let bad = |why: String| Error::Parse(format!("coloring: {why}"));
        let value: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        let pairs = value.as_array().ok_or_else(|| bad("expected a list of [subset, color] pairs".into()))?;
        let mut entries = Vec::with_capacity(pairs.len());
        for pair in pairs {
            let (set, color) = match pair.as_array().map(Vec::as_slice) {
                Some([set, color]) => (set, color),
                _ => return Err(bad(format!("{pair} is not a [subset, color] pair"))),
            };
            let items = set.as_array().ok_or_else(|| bad(format!("{set} is not a list of points")))?;
            let mut mask = 0u32;
            for item in items {
                let token = match item {
                    Value::String(s) => s.clone(),
                    Value::Number(n) => n.to_string(),
                    _ => return Err(bad(format!("{item} is not a point"))),
                };
                let p = universe.point_index(&token).ok_or_else(|| bad(format!("unknown point {token}")))?;
                mask |= 1 << p;
            }
            let color = color.as_u64().ok_or_else(|| bad(format!("{color} is not a color")))?;
            entries.push((mask, color as usize));
        }
        let (first, _) = *entries.first().ok_or_else(|| bad("no colored subsets".into()))?;
        let n = first.count_ones() as usize;
        let m = entries.iter().map(|&(_, c)| c + 1).max().unwrap_or(1);
        Coloring::check_params(universe, n, m)?;
        let mut colors = vec![None; bits::binomial(universe.size() as u64, n as u64) as usize];
        for (mask, c) in entries {
            if mask.count_ones() as usize != n {
                return Err(bad(format!("{} does not have {n} points", crate::ground::format_mask(universe, mask))));
            }
            let slot = &mut colors[colex_rank(mask)];
            if slot.replace(c as u8).is_some() {
                return Err(bad(format!("{} is colored twice", crate::ground::format_mask(universe, mask))));
            }
        }
        let colors = colors
            .into_iter()
            .zip(k_subsets(universe.size(), n))
            .map(|(c, s)| c.ok_or_else(|| bad(format!("{} is not colored", crate::ground::format_mask(universe, s)))))
            .collect::<Result<_>>()?;
        Ok(Coloring { universe: universe.clone(), n, m: m as u8, colors })
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn colors(&self) -> usize {
        self.m as usize
    }

    pub fn color_of(&self, mask: u32) -> usize {
        self.colors[colex_rank(mask)] as usize
    }
}

impl Serialize for Coloring {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.colors.len()))?;
        for (s, &c) in k_subsets(self.universe.size(), self.n).zip(&self.colors) {
            let labels: Vec<String> = bits::points(s).map(|p| self.universe.label(p)).collect();
            seq.serialize_element(&(labels, c))?;
        }
        seq.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Monochromatic {
    pub set: Subset,
    pub color: usize,
}

fn require_k(coloring: &Coloring, k: usize) -> Result<()> {
    if k > coloring.universe.size() || k < coloring.n {
        return Err(Error::precondition(
            "monochromatic",
            format!("k = {k} must lie in {}..={}", coloring.n, coloring.universe.size()),
        ));
    }
    Ok(())
}

fn find_in(coloring: &Coloring, k: usize) -> Option<(u32, usize)> {
    let size = coloring.universe.size();
    k_subsets(size, k).find_map(|s| {
        let mut inner = k_subsets(k, coloring.n).map(|pattern| spread(pattern, s));
        let c = coloring.color_of(inner.next()?);
        inner.all(|t| coloring.color_of(t) == c).then_some((s, c))
    })
}

/// Places the low bits of `pattern` onto the set bits of `onto`.
fn spread(pattern: u32, onto: u32) -> u32 {
    bits::points(onto).enumerate().filter(|&(i, _)| pattern >> i & 1 == 1).fold(0, |acc, (_, p)| acc | 1 << p)
}

/// The first `k`-set in colex order all of whose `n`-subsets share a color.
pub fn monochromatic(coloring: &Coloring, k: usize) -> Result<Option<Monochromatic>> {
    require_k(coloring, k)?;
    Ok(find_in(coloring, k).map(|(s, color)| Monochromatic { set: Subset::from_raw(&coloring.universe, s), color }))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub colorings: u64,
    pub with_witness: u64,
    /// The first coloring (in order of its color vector read as a base-`m`
    /// number) that has no witness.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Coloring>,
}

impl ExhaustiveReport {
    pub fn every_coloring_has_witness(&self) -> bool {
        self.with_witness == self.colorings
    }
}

/// Sweeps every `m`-coloring of the `n`-subsets of `universe`.
pub fn all_colorings(universe: &Arc<Universe>, n: usize, m: usize, k: usize) -> Result<ExhaustiveReport> {
    Coloring::check_params(universe, n, m)?;
    let tuples = bits::binomial(universe.size() as u64, n as u64);
    let total = (m as u64).checked_pow(tuples as u32).filter(|&t| t <= MAX_COLORINGS);
    let total = total.ok_or_else(|| Error::cap("colorings", usize::MAX, MAX_COLORINGS as usize))?;
    let mut coloring = Coloring { universe: universe.clone(), n, m: m as u8, colors: vec![0; tuples as usize] };
    require_k(&coloring, k)?;
    let mut with_witness = 0;
    let mut counterexample = None;
    for _ in 0..total {
        if find_in(&coloring, k).is_some() {
            with_witness += 1;
        } else if counterexample.is_none() {
            counterexample = Some(coloring.clone());
        }
        for c in coloring.colors.iter_mut() {
            *c += 1;
            if (*c as usize) < m {
                break;
            }
            *c = 0;
        }
    }
    Ok(ExhaustiveReport { colorings: total, with_witness, counterexample })
}

/// The pentagon coloring of pairs on five points: a pair gets color 0 when
/// its points are adjacent on the 5-cycle, else 1.
pub fn pentagon(universe: &Arc<Universe>) -> Result<Coloring> {
    if universe.size() != 5 {
        return Err(Error::precondition("pentagon", "the universe must have five points"));
    }
    Coloring::from_fn(universe, 2, 2, |s| {
        let pts: Vec<usize> = bits::points(s).collect();
        usize::from(!matches!(pts[1] - pts[0], 1 | 4))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn x(n: usize) -> Arc<Universe> {
        Universe::new("X", n).unwrap()
    }

    #[test]
    fn subsets_in_colex_order() {
        let all: Vec<u32> = k_subsets(4, 2).collect();
        assert_eq!(all, vec![0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]);
        for (i, &s) in all.iter().enumerate() {
            assert_eq!(colex_rank(s), i);
        }
        assert_eq!(k_subsets(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(k_subsets(3, 4).count(), 0);
        assert_eq!(k_subsets(24, 24).count(), 1);
    }

    #[test]
    fn six_points_force_a_triangle() {
        let report = all_colorings(&x(6), 2, 2, 3).unwrap();
        assert_eq!(report.colorings, 1 << 15);
        assert!(report.every_coloring_has_witness());
    }

    #[test]
    fn pentagon_has_no_triangle() {
        let c = pentagon(&x(5)).unwrap();
        assert_eq!(monochromatic(&c, 3).unwrap(), None);
        let report = all_colorings(&x(5), 2, 2, 3).unwrap();
        assert!(!report.every_coloring_has_witness());
    }

    #[test]
    fn one_color_is_monochromatic() {
        let u = x(5);
        let c = Coloring::from_fn(&u, 2, 1, |_| 0).unwrap();
        let w = monochromatic(&c, 5).unwrap().unwrap();
        assert_eq!(w.set, Subset::full(&u));
    }

    #[test]
    fn json_round_trip() {
        let u = x(4);
        let c = Coloring::from_fn(&u, 2, 2, |s| (s.count_ones() as usize + s.trailing_zeros() as usize) % 2).unwrap();
        let text = serde_json::to_string(&c).unwrap();
        assert!(text.starts_with(r#"[[["1","2"],0],"#));
        assert_eq!(Coloring::from_json(&u, &text).unwrap(), c);
        let numeric = "[[[1,2],0],[[1,3],0],[[2,3],1]]";
        let c3 = Coloring::from_json(&x(3), numeric).unwrap();
        assert_eq!(c3.color_of(0b110), 1);
        assert!(Coloring::from_json(&x(3), "[[[1,2],0],[[1,3],0]]").is_err());
        assert!(Coloring::from_json(&x(3), "[[[1,2],0],[[1,2],0],[[2,3],1]]").is_err());
    }

    #[test]
    fn caps_and_parameters() {
        assert!(Coloring::from_fn(&x(24), 12, 2, |_| 0).unwrap_err().is_resource());
        assert!(all_colorings(&x(8), 2, 2, 3).unwrap_err().is_resource());
        let c = pentagon(&x(5)).unwrap();
        assert!(monochromatic(&c, 6).is_err());
        assert!(monochromatic(&c, 1).is_err());
    }

    proptest! {
        #[test]
        fn witnesses_survive_extension(colors in prop::collection::vec(0usize..2, 15)) {
            let five = x(5);
            let six = x(6);
            let small = Coloring::from_fn(&five, 2, 2, |s| colors[colex_rank(s)]).unwrap();
            let big = Coloring::from_fn(&six, 2, 2, |s| colors[colex_rank(s)]).unwrap();
            if let Some(w) = monochromatic(&small, 3).unwrap() {
                let found = monochromatic(&big, 3).unwrap().unwrap();
                prop_assert!(found.set.bits() <= w.set.bits());
            }
            prop_assert!(monochromatic(&big, 3).unwrap().is_some());
        }

        #[test]
        fn witness_is_monochromatic_and_first(colors in prop::collection::vec(0usize..3, 20), k in 3usize..5) {
            let u = x(6);
            let c = Coloring::from_fn(&u, 3, 3, |s| colors[colex_rank(s)]).unwrap();
            let found = monochromatic(&c, k).unwrap();
            for s in k_subsets(6, k) {
                let mono = k_subsets(6, 3).filter(|&t| t & !s == 0).map(|t| c.color_of(t)).collect::<std::collections::BTreeSet<_>>().len() == 1;
                if mono {
                    prop_assert_eq!(found.as_ref().map(|w| w.set.bits()), Some(s));
                    break;
                }
                prop_assert!(found.as_ref().is_none_or(|w| w.set.bits() != s));
            }
        }
    }
}
