//! Characteristic functions: `χ_S` of a set, and the ternary encoding
//! `χ(x) = 2 Σ χ_{S_i}(x) / 3^i` of a sequence of sets, computed exactly.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};
use serde::Serialize;

use crate::ground::{SetSeq, Subset};
use crate::setops;

/// A reduced fraction with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExactRational(BigRational);

impl ExactRational {
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> ExactRational {
        ExactRational(BigRational::new(num.into(), den.into()))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl From<BigRational> for ExactRational {
    fn from(r: BigRational) -> Self {
        ExactRational(r)
    }
}

impl fmt::Display for ExactRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

impl Serialize for ExactRational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `Some(n)` when `d = 3^n`.
fn power_of_three(d: &BigInt) -> Option<u32> {
    let three = BigInt::from(3);
    let mut d = d.clone();
    let mut n = 0;
    while d > BigInt::one() {
        if !(&d % &three).is_zero() {
            return None;
        }
        d /= &three;
        n += 1;
    }
    Some(n)
}

fn is_reciprocal_power(r: &BigRational, numer: i32) -> bool {
    r.numer() == &BigInt::from(numer) && power_of_three(r.denom()).is_some_and(|n| n >= 1)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiFlag {
    /// Read off the values alone.
    pub holds: bool,
    /// Checked directly on the sequence.
    pub structural: bool,
    /// First point whose value is not of the required form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub evidence: Option<String>,
}

impl ChiFlag {
    pub fn agree(&self) -> bool {
        self.holds == self.structural
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiFlags {
    /// Values in `{0, 1}`.
    pub constant_sequence: ChiFlag,
    /// Values in `{0} ∪ {2/3^n}`.
    pub pairwise_disjoint: ChiFlag,
    /// Values in `{0, 1} ∪ {1/3^n}`.
    pub increasing: ChiFlag,
    /// Values in `{0, 1} ∪ {1 − 1/3^n}`.
    pub decreasing: ChiFlag,
    /// Values in `{0, 1} ∪ {m/3^n}`.
    pub convergent: ChiFlag,
}

impl ChiFlags {
    pub fn all(&self) -> [(&'static str, &ChiFlag); 5] {
        [
            ("constant_sequence", &self.constant_sequence),
            ("pairwise_disjoint", &self.pairwise_disjoint),
            ("increasing", &self.increasing),
            ("decreasing", &self.decreasing),
            ("convergent", &self.convergent),
        ]
    }

    pub fn all_agree(&self) -> bool {
        self.all().iter().all(|(_, f)| f.agree())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiProfile {
    /// `χ(x)` for each point, in point order.
    pub values: Vec<ExactRational>,
    pub flags: ChiFlags,
}

/// Exact value at one point: the prefix digits summed directly, plus one
/// cycle's worth scaled by `1 / (1 − 3^{-c})`.
fn chi_value(seq: &SetSeq, point: usize) -> BigRational {
    let three = BigRational::from_integer(BigInt::from(3));
    let two = BigRational::from_integer(BigInt::from(2));
    let digit = |m: u32| m >> point & 1 == 1;
    let mut total = BigRational::zero();
    let mut scale = BigRational::one();
    for &m in seq.prefix() {
        scale /= &three;
        if digit(m) {
            total += &two * &scale;
        }
    }
    let mut cycle_sum = BigRational::zero();
    for &m in seq.cycle() {
        scale /= &three;
        if digit(m) {
            cycle_sum += &two * &scale;
        }
    }
    let c = seq.cycle().len() as u32;
    let shrink = BigRational::one() - BigRational::one() / Pow::pow(&three, c);
    total + cycle_sum / shrink
}

fn form_flag(seq: &SetSeq, values: &[BigRational], structural: bool, form: impl Fn(&BigRational) -> bool) -> ChiFlag {
    let bad = values.iter().position(|v| !form(v));
    ChiFlag {
        holds: bad.is_none(),
        structural,
        evidence: bad.map(|p| {
            let v = ExactRational(values[p].clone());
            format!("χ({}) = {}", seq.universe().label(p), v)
        }),
    }
}

/// Terms far enough out that every pair of consecutive terms, and every
/// cycle term seen twice, has appeared.
fn window(seq: &SetSeq) -> Vec<u32> {
    (1..=seq.period_horizon() + seq.cycle().len()).map(|i| seq.term(i)).collect()
}

pub fn chi_sequence(seq: &SetSeq) -> ChiProfile {
    let values: Vec<BigRational> = (0..seq.universe().size()).map(|p| chi_value(seq, p)).collect();
    let terms = window(seq);
    let zero_or_one = |v: &BigRational| v.is_zero() || v.is_one();

    let constant = terms.windows(2).all(|w| w[0] == w[1]);
    let disjoint = {
        let mut seen = 0u32;
        terms.iter().all(|&t| {
            let ok = seen & t == 0;
            seen |= t;
            ok
        })
    };
    let increasing = terms.windows(2).all(|w| w[0] & !w[1] == 0);
    let decreasing = terms.windows(2).all(|w| w[1] & !w[0] == 0);
    let convergent = setops::lim_seq(seq).is_some();

    let flags = ChiFlags {
        constant_sequence: form_flag(seq, &values, constant, zero_or_one),
        pairwise_disjoint: form_flag(seq, &values, disjoint, |v| v.is_zero() || is_reciprocal_power(v, 2)),
        increasing: form_flag(seq, &values, increasing, |v| zero_or_one(v) || is_reciprocal_power(v, 1)),
        decreasing: form_flag(seq, &values, decreasing, |v| {
            zero_or_one(v) || is_reciprocal_power(&(BigRational::one() - v), 1)
        }),
        convergent: form_flag(seq, &values, convergent, |v| zero_or_one(v) || power_of_three(v.denom()).is_some()),
    };
    ChiProfile { values: values.into_iter().map(ExactRational).collect(), flags }
}

/// `χ_S` as one bit per point.
pub fn chi_set(s: &Subset) -> Vec<u8> {
    (0..s.universe().size()).map(|p| u8::from(s.contains(p))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{parse_subset, Universe};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn x(n: usize) -> Arc<Universe> {
        Universe::new("X", n).unwrap()
    }

    fn r(n: i64, d: i64) -> ExactRational {
        ExactRational::new(n, d)
    }

    #[test]
    fn constant_sequence_values() {
        let u = x(3);
        let s = parse_subset(&u, "{1,3}").unwrap().bits();
        let p = chi_sequence(&SetSeq::new(&u, vec![], vec![s]).unwrap());
        assert_eq!(p.values, vec![r(1, 1), r(0, 1), r(1, 1)]);
        assert!(p.flags.constant_sequence.holds && p.flags.all_agree());
    }

    #[test]
    fn disjoint_sequence_value() {
        let u = x(3);
        let seq = SetSeq::new(&u, vec![0b001, 0b010, 0b100], vec![0]).unwrap();
        let p = chi_sequence(&seq);
        assert_eq!(p.values[1], r(2, 9));
        assert_eq!(p.values[0], r(2, 3));
        assert!(p.flags.pairwise_disjoint.holds && p.flags.all_agree());
        assert!(!p.flags.increasing.holds);
        assert_eq!(p.flags.increasing.evidence.as_deref(), Some("χ(1) = 2/3"));
    }

    #[test]
    fn increasing_sequence_value() {
        let u = x(2);
        let seq = SetSeq::new(&u, vec![0b00], vec![0b01]).unwrap();
        let p = chi_sequence(&seq);
        assert_eq!(p.values[0], r(1, 3));
        assert!(p.flags.increasing.holds && p.flags.all_agree());
        assert_eq!(serde_json::to_string(&p.values).unwrap(), r#"["1/3","0/1"]"#);
    }

    #[test]
    fn oscillating_sequence() {
        let u = x(1);
        let seq = SetSeq::new(&u, vec![], vec![1, 0]).unwrap();
        let p = chi_sequence(&seq);
        assert_eq!(p.values[0], r(3, 4));
        assert!(!p.flags.convergent.holds && !p.flags.convergent.structural);
    }

    #[test]
    fn chi_set_identities() {
        let u = x(3);
        assert_eq!(chi_set(&Subset::empty(&u)), vec![0, 0, 0]);
        let a = parse_subset(&u, "{1,2}").unwrap();
        let b = parse_subset(&u, "{2,3}").unwrap();
        let (ca, cb) = (chi_set(&a), chi_set(&b));
        let meet = chi_set(&a.intersection(&b).unwrap());
        let sym = chi_set(&a.symmetric_difference(&b).unwrap());
        for p in 0..3 {
            assert_eq!(meet[p], ca[p].min(cb[p]));
            assert_eq!(sym[p], ca[p].abs_diff(cb[p]));
        }
    }

    fn arb_seq(n: usize) -> impl Strategy<Value = SetSeq> {
        let m = (1u32 << n) - 1;
        (prop::collection::vec(0..=m, 0..5), prop::collection::vec(0..=m, 1..4))
            .prop_map(move |(p, c)| SetSeq::new(&x(n), p, c).unwrap())
    }

    proptest! {
        #[test]
        fn flags_agree_with_structure(seq in arb_seq(4)) {
            let p = chi_sequence(&seq);
            prop_assert!(p.flags.all_agree(), "{:?}", p.flags);
            for v in &p.values {
                prop_assert!(v.value() >= &BigRational::zero() && v.value() <= &BigRational::one());
                let c = seq.cycle().len() as u32;
                let bound = BigInt::from(3).pow(seq.prefix().len() as u32 + c) * (BigInt::from(3).pow(c) - 1);
                prop_assert!((v.value() * BigRational::from_integer(bound)).is_integer());
            }
        }

        #[test]
        fn encoding_separates_patterns(a in arb_seq(3), b in arb_seq(3)) {
            let horizon = a.period_horizon().max(b.period_horizon()) + a.cycle().len() * b.cycle().len();
            let same = (1..=horizon).all(|i| a.term(i) == b.term(i));
            let pa = chi_sequence(&a);
            let pb = chi_sequence(&b);
            prop_assert_eq!(same, pa.values == pb.values);
            for p in 0..3 {
                let same_p = (1..=horizon).all(|i| (a.term(i) ^ b.term(i)) >> p & 1 == 0);
                prop_assert_eq!(same_p, pa.values[p] == pb.values[p]);
            }
        }

        #[test]
        fn chi_set_min_max(a in 0u32..64, b in 0u32..64) {
            let u = x(6);
            let sa = Subset::new(&u, a).unwrap();
            let sb = Subset::new(&u, b).unwrap();
            let (ca, cb) = (chi_set(&sa), chi_set(&sb));
            let join = chi_set(&sa.union(&sb).unwrap());
            let meet = chi_set(&sa.intersection(&sb).unwrap());
            let diff = chi_set(&sa.symmetric_difference(&sb).unwrap());
            for p in 0..6 {
                prop_assert_eq!(join[p], ca[p].max(cb[p]));
                prop_assert_eq!(meet[p], ca[p].min(cb[p]));
                prop_assert_eq!(diff[p], ca[p].abs_diff(cb[p]));
            }
        }
    }
}
