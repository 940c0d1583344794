//! Generation of the least class containing a given one and having a closure
//! property, the stagewise `B` and `Σ/Π` hierarchies, the Kolmogoroff number,
//! the two closure biconditionals for `B` and `B_d`, and localization.
//!
//! Transfinite recursion becomes plain iteration: on a finite universe every
//! increasing chain of classes stabilizes after finitely many stages.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bits::{self, MaskSet};
use crate::error::{Error, Result};
use crate::ground::SetClass;
use crate::setops::{self, OpCode};
use crate::structures;

/// Largest universe for which closures are computed.
pub const MAX_CLOSURE_POINTS: usize = 16;
/// Largest number of Venn cells for the ring fast path (2^cells members).
pub const MAX_RING_CELLS: usize = 20;
/// Upper bound on hierarchy levels before giving up.
pub const MAX_LEVELS: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    Lattice,
    Ring,
    Algebra,
    Dynkin,
    CompleteRing,
    B,
    BDisjoint,
    BComplement,
    Topology,
}

impl Property {
    pub const ALL: [Property; 9] = [
        Property::Lattice,
        Property::Ring,
        Property::Algebra,
        Property::Dynkin,
        Property::CompleteRing,
        Property::B,
        Property::BDisjoint,
        Property::BComplement,
        Property::Topology,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Lattice => "lattice",
            Property::Ring => "ring",
            Property::Algebra => "algebra",
            Property::Dynkin => "dynkin",
            Property::CompleteRing => "complete_ring",
            Property::B => "B",
            Property::BDisjoint => "B_d",
            Property::BComplement => "B_c",
            Property::Topology => "topology",
        }
    }

    /// The binary and unary rules whose least fixpoint realizes the property,
    /// plus the sets adjoined up front.
    fn rules(self) -> (&'static [Rule], Adjoin) {
        use Rule::*;
        match self {
            Property::Lattice => (&[Union, Intersection], Adjoin::Empty),
            Property::Ring | Property::CompleteRing => (&[SymmetricDifference, Intersection], Adjoin::Empty),
            Property::Algebra => (&[SymmetricDifference, Intersection], Adjoin::EmptyAndFull),
            Property::Dynkin => (&[DisjointUnion, ProperDifference], Adjoin::Nothing),
            Property::B => (&[Union, Intersection], Adjoin::Nothing),
            Property::BDisjoint => (&[DisjointUnion, Intersection], Adjoin::Nothing),
            Property::BComplement => (&[DisjointUnion, Complement], Adjoin::Nothing),
            Property::Topology => (&[Union, Intersection], Adjoin::EmptyAndFull),
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Property> {
        Ok(match s {
            "lattice" => Property::Lattice,
            "ring" => Property::Ring,
            "algebra" => Property::Algebra,
            "dynkin" => Property::Dynkin,
            "complete_ring" => Property::CompleteRing,
            "B" => Property::B,
            "B_d" => Property::BDisjoint,
            "B_c" => Property::BComplement,
            "topology" => Property::Topology,
            other => {
                return Err(Error::Parse(format!(
                    "unknown property `{other}` (expected lattice, ring, algebra, dynkin, complete_ring, B, B_d, B_c, topology)"
                )))
            }
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Rule {
    Union,
    Intersection,
    SymmetricDifference,
    DisjointUnion,
    ProperDifference,
    Complement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Adjoin {
    Nothing,
    Empty,
    EmptyAndFull,
}

impl Rule {
    fn combine(self, a: u32, b: u32) -> Option<u32> {
        match self {
            Rule::Union => Some(a | b),
            Rule::Intersection => Some(a & b),
            Rule::SymmetricDifference => Some(a ^ b),
            Rule::DisjointUnion => (a & b == 0).then_some(a | b),
            Rule::ProperDifference => bits::is_subset(b, a).then_some(a & !b),
            Rule::Complement => None,
        }
    }
}

fn check_closure_size(class: &SetClass) -> Result<()> {
    let n = class.universe().size();
    if n > MAX_CLOSURE_POINTS {
        return Err(Error::cap("universe size for closure", n, MAX_CLOSURE_POINTS));
    }
    Ok(())
}

/// Least fixpoint of `rules` over `seeds` by a worklist: every new member is
/// combined with everything found before it, in both orders.
fn fixpoint(n: usize, full: u32, seeds: &[u32], rules: &[Rule]) -> Vec<u32> {
    let mut seen = MaskSet::new(n);
    let mut list: Vec<u32> = Vec::new();
    for &s in seeds {
        if seen.insert(s) {
            list.push(s);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for &rule in rules {
            if rule == Rule::Complement {
                let c = full & !x;
                if seen.insert(c) {
                    list.push(c);
                }
                continue;
            }
            for j in 0..=i {
                let y = list[j];
                for (a, b) in [(x, y), (y, x)] {
                    if let Some(c) = rule.combine(a, b) {
                        if seen.insert(c) {
                            list.push(c);
                        }
                    }
                }
            }
        }
        i += 1;
    }
    list
}

/// The brute-force least fixpoint for `prop`, without fast paths.
pub fn generate_by_fixpoint(class: &SetClass, prop: Property) -> Result<SetClass> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op: "generate" });
    }
    check_closure_size(class)?;
    let u = class.universe();
    let (rules, adjoin) = prop.rules();
    let mut seeds = class.masks().to_vec();
    match adjoin {
        Adjoin::Nothing => {}
        Adjoin::Empty => seeds.push(0),
        Adjoin::EmptyAndFull => seeds.extend([0, u.full_mask()]),
    }
    Ok(SetClass::from_raw(u, fixpoint(u.size(), u.full_mask(), &seeds, rules)))
}

/// Minimal superclass of `class` with `prop`.
pub fn generate(class: &SetClass, prop: Property) -> Result<SetClass> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op: "generate" });
    }
    check_closure_size(class)?;
    match prop {
        Property::Ring | Property::CompleteRing => ring_from_cells(class, class.union_mask()),
        Property::Algebra => ring_from_cells(class, class.universe().full_mask()),
        _ => generate_by_fixpoint(class, prop),
    }
}

/// Nonempty Venn cells of the members inside `within`.
pub(crate) fn venn_cells(masks: &[u32], within: u32) -> Vec<u32> {
    let mut cells = if within == 0 { vec![] } else { vec![within] };
    for &m in masks {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for &c in &cells {
            for part in [c & m, c & !m] {
                if part != 0 {
                    next.push(part);
                }
            }
        }
        cells = next;
    }
    cells.sort_unstable();
    cells
}

/// All unions of the Venn cells inside `within`: the ring generated by the
/// class when `within` is the union of its members, the algebra when it is X.
fn ring_from_cells(class: &SetClass, within: u32) -> Result<SetClass> {
    let cells = venn_cells(class.masks(), within);
    if cells.len() > MAX_RING_CELLS {
        return Err(Error::cap("Venn cells in ring generation", cells.len(), MAX_RING_CELLS));
    }
    let mut out = Vec::with_capacity(1 << cells.len());
    for pick in 0u32..(1u32 << cells.len()) {
        out.push(bits::points(pick).fold(0, |acc, i| acc | cells[i]));
    }
    Ok(SetClass::from_raw(class.universe(), out))
}

/// Whether `class` already has `prop`.
pub fn has_property(class: &SetClass, prop: Property) -> bool {
    if class.is_empty() {
        return false;
    }
    let u = class.universe();
    let ms = class.masks();
    let (rules, adjoin) = prop.rules();
    let adjoined = match adjoin {
        Adjoin::Nothing => true,
        Adjoin::Empty => class.contains_empty(),
        Adjoin::EmptyAndFull => class.contains_empty() && class.contains_full(),
    };
    adjoined
        && rules.iter().all(|&rule| {
            if rule == Rule::Complement {
                return ms.iter().all(|&m| class.contains_mask(u.full_mask() & !m));
            }
            ms.iter().all(|&a| ms.iter().all(|&b| rule.combine(a, b).is_none_or(|c| class.contains_mask(c))))
        })
}

// ---------------------------------------------------------------------------
// Hierarchies

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Flavor {
    /// `B^(α)`, `B_(α)` from a nonempty class.
    B,
    /// `Σ_α`, `Π_α` from a lattice containing ∅ and X.
    SigmaPi,
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flavor> {
        match s {
            "B" => Ok(Flavor::B),
            "SigmaPi" | "sigmapi" | "ΣΠ" => Ok(Flavor::SigmaPi),
            other => Err(Error::Parse(format!("unknown hierarchy flavor `{other}` (expected B or SigmaPi)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Stage {
    pub level: usize,
    /// `B^(α)` or `Σ_α`.
    pub upper: SetClass,
    /// `B_(α)` or `Π_α`.
    pub lower: SetClass,
    /// `upper ∩ lower`; for the `Σ/Π` flavor this is `Δ_α`.
    pub ambiguous: SetClass,
    /// `B^[α]`: `B^(α)` at odd levels, `B_(α)` at even ones.
    pub bracket_upper: SetClass,
    /// `B_[α]`: the other one.
    pub bracket_lower: SetClass,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HierarchyTrace {
    pub flavor: Flavor,
    pub stages: Vec<Stage>,
    /// First level whose stage equals the next one.
    pub stabilized_at: usize,
    /// Least `α` with `B^[α]` equal to the final class (`B` flavor only).
    pub kolmogoroff_number: Option<usize>,
    /// `S_B` for the `B` flavor, the generated algebra for `Σ/Π`.
    #[serde(rename = "final")]
    pub final_class: SetClass,
}

pub fn hierarchy(class: &SetClass, flavor: Flavor) -> Result<HierarchyTrace> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op: "hierarchy" });
    }
    check_closure_size(class)?;
    let u = class.universe();
    let (first_upper, first_lower) = match flavor {
        Flavor::B => (class.clone(), class.clone()),
        Flavor::SigmaPi => {
            if !structures::is_lattice(class) || !class.contains_full() {
                return Err(Error::precondition(
                    "hierarchy",
                    format!("the Σ/Π hierarchy needs a lattice containing ∅ and X, got {class}"),
                ));
            }
            (class.clone(), setops::apply(class, OpCode::Complements)?)
        }
    };

    let mut uppers = vec![first_upper];
    let mut lowers = vec![first_lower];
    let mut union_upper = uppers[0].clone();
    let mut union_lower = lowers[0].clone();
    let mut stabilized_at = None;
    // one stage past stabilization is kept so the bracket classes settle too
    while stabilized_at.is_none_or(|s| uppers.len() < s + 2) {
        if uppers.len() > MAX_LEVELS {
            return Err(Error::cap("hierarchy levels", uppers.len(), MAX_LEVELS));
        }
        let next_upper = setops::apply(&union_lower, OpCode::Unions)?;
        let next_lower = setops::apply(&union_upper, OpCode::Intersections)?;
        union_upper = union_upper.union(&next_upper)?;
        union_lower = union_lower.union(&next_lower)?;
        let last = uppers.len() - 1;
        if stabilized_at.is_none() && next_upper == uppers[last] && next_lower == lowers[last] {
            stabilized_at = Some(last);
        }
        uppers.push(next_upper);
        lowers.push(next_lower);
    }
    let stabilized_at = stabilized_at.expect("loop exits only after stabilization");
    let final_class = union_upper.union(&union_lower)?;

    let stages: Vec<Stage> = uppers
        .into_iter()
        .zip(lowers)
        .enumerate()
        .map(|(level, (upper, lower))| {
            let ambiguous = upper.intersection(&lower).expect("same universe");
            let (bracket_upper, bracket_lower) =
                if level % 2 == 1 { (upper.clone(), lower.clone()) } else { (lower.clone(), upper.clone()) };
            Stage { level, upper, lower, ambiguous, bracket_upper, bracket_lower }
        })
        .collect();
    let kolmogoroff_number = match flavor {
        Flavor::B => stages.iter().position(|s| s.bracket_upper == final_class),
        Flavor::SigmaPi => None,
    };
    debug_assert!(flavor == Flavor::SigmaPi || kolmogoroff_number.is_some());
    let _ = u;
    Ok(HierarchyTrace { flavor, stages, stabilized_at, kolmogoroff_number, final_class })
}

// ---------------------------------------------------------------------------
// Biconditionals relating B, B_d, rings and algebras

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Biconditional {
    pub statement: &'static str,
    pub lhs: bool,
    pub rhs: bool,
    pub agree: bool,
    /// Members of the class on the right that the closure misses.
    pub missing: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClosureBiconditionals {
    pub b_is_ring: Biconditional,
    pub bd_is_algebra: Biconditional,
    pub b_is_algebra: Biconditional,
    pub bd_is_ring: Biconditional,
    /// Members of `S_rB` outside `S_Br`.
    pub rb_minus_br: Vec<String>,
    pub all_agree: bool,
}

fn biconditional(
    statement: &'static str,
    closure: &SetClass,
    target: &SetClass,
    needed: &SetClass,
) -> Result<Biconditional> {
    let lhs = closure == target;
    let missing_masks = needed.difference(closure)?;
    let rhs = missing_masks.is_empty();
    Ok(Biconditional {
        statement,
        lhs,
        rhs,
        agree: lhs == rhs,
        missing: missing_masks.masks().iter().map(|&m| closure.format_mask(m)).collect(),
    })
}

pub fn lemma45_check(class: &SetClass) -> Result<ClosureBiconditionals> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op: "lemma45_check" });
    }
    let sb = generate(class, Property::B)?;
    let sbd = generate(class, Property::BDisjoint)?;
    let rin = generate(class, Property::Ring)?;
    let alg = generate(class, Property::Algebra)?;
    let sr = setops::apply(class, OpCode::Differences)?;
    let sc = setops::apply(class, OpCode::Complements)?;

    let b_is_ring = biconditional("S_B = Rin(S) iff S_r ⊆ S_B", &sb, &rin, &sr)?;
    let bd_is_algebra = biconditional("S_Bd = Alg(S) iff S_c ⊆ S_Bd", &sbd, &alg, &sc)?;
    let b_is_algebra = biconditional("S_B = Alg(S) iff S_c ⊆ S_B", &sb, &alg, &sc)?;
    let bd_is_ring = biconditional("S_Bd = Rin(S) iff S_r ⊆ S_Bd", &sbd, &rin, &sr)?;

    let rb = generate(&sr, Property::B)?;
    let br = setops::apply(&sb, OpCode::Differences)?;
    let rb_minus_br = rb.difference(&br)?;

    let all_agree = b_is_ring.agree && bd_is_algebra.agree && b_is_algebra.agree && bd_is_ring.agree;
    Ok(ClosureBiconditionals {
        b_is_ring,
        bd_is_algebra,
        b_is_algebra,
        bd_is_ring,
        rb_minus_br: rb_minus_br.masks().iter().map(|&m| class.format_mask(m)).collect(),
        all_agree,
    })
}

/// `{X_0 ⊆ X : trace(class, X_0) ⊆ class}`.
pub fn localize(class: &SetClass) -> Result<SetClass> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op: "localize" });
    }
    check_closure_size(class)?;
    let u = class.universe();
    let out = (0..=u.full_mask()).filter(|&x0| class.masks().iter().all(|&m| class.contains_mask(m & x0))).collect();
    Ok(SetClass::from_sorted(u, out))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{parse_class, Universe};
    use proptest::prelude::*;
    use std::sync::Arc;

    fn x(n: usize) -> Arc<Universe> {
        Universe::new("X", n).unwrap()
    }

    fn cls(n: usize, s: &str) -> SetClass {
        parse_class(&x(n), s).unwrap()
    }

    #[test]
    fn ring_generated_by_a_chain_pair() {
        let g = generate(&cls(2, "[{1},{1,2}]"), Property::Ring).unwrap();
        assert_eq!(g.to_string(), "[{},{1},{2},{1,2}]");
    }

    #[test]
    fn dynkin_example_is_already_closed() {
        let c = cls(4, "[∅,{1,2},{1,3},{2,4},{3,4},{1,2,3,4}]");
        assert_eq!(generate(&c, Property::Dynkin).unwrap(), c);
    }

    #[test]
    fn chain_is_b_closed() {
        let c = cls(3, "[{1},{1,2},{1,2,3}]");
        assert_eq!(generate(&c, Property::B).unwrap(), c);
        assert_eq!(hierarchy(&c, Flavor::B).unwrap().kolmogoroff_number, Some(0));
    }

    #[test]
    fn b_disjoint_is_strictly_smaller() {
        let c = cls(3, "[{1},{1,2},{1,3}]");
        assert_eq!(generate(&c, Property::BDisjoint).unwrap(), c);
        assert_eq!(generate(&c, Property::B).unwrap().to_string(), "[{1},{1,2},{1,3},{1,2,3}]");
    }

    #[test]
    fn kolmogoroff_number_of_two_points() {
        let t = hierarchy(&cls(2, "[{1},{2}]"), Flavor::B).unwrap();
        assert_eq!(t.kolmogoroff_number, Some(2));
        assert_eq!(t.stages[1].bracket_upper.to_string(), "[{1},{2},{1,2}]");
        assert_eq!(t.stages[2].bracket_upper.to_string(), "[{},{1},{2},{1,2}]");
        assert_eq!(t.final_class, generate(&cls(2, "[{1},{2}]"), Property::B).unwrap());
    }

    #[test]
    fn sigma_pi_needs_a_lattice_with_whole_space() {
        assert!(hierarchy(&cls(2, "[{1},{2}]"), Flavor::SigmaPi).is_err());
        assert!(hierarchy(&cls(2, "[∅,{1}]"), Flavor::SigmaPi).is_err());
        let t = hierarchy(&cls(3, "[∅,{1},{1,2},{1,2,3}]"), Flavor::SigmaPi).unwrap();
        assert_eq!(t.final_class, generate(&cls(3, "[{1},{1,2}]"), Property::Algebra).unwrap());
        for s in &t.stages {
            assert_eq!(setops::apply(&s.upper, OpCode::Complements).unwrap(), s.lower);
        }
        let last = t.stages.last().unwrap();
        assert_eq!(last.ambiguous, t.final_class);
        assert!(structures::is_algebra(&last.ambiguous));
    }

    #[test]
    fn ambiguous_class_need_not_be_an_algebra_at_intermediate_levels() {
        let t = hierarchy(&cls(3, "[∅,{1},{1,2},{1,2,3}]"), Flavor::SigmaPi).unwrap();
        let d2 = &t.stages[2].ambiguous;
        assert_eq!(d2.to_string(), "[{},{1},{1,2},{3},{2,3},{1,2,3}]");
        assert!(!structures::is_algebra(d2));
    }

    #[test]
    fn biconditionals_on_the_chain() {
        let r = lemma45_check(&cls(3, "[{1},{1,2},{1,2,3}]")).unwrap();
        assert!(!r.b_is_ring.lhs && !r.b_is_ring.rhs && r.all_agree);
        assert!(r.rb_minus_br.contains(&"{1,3}".to_string()));
        let ring = SetClass::powerset(&x(2));
        let r = lemma45_check(&ring).unwrap();
        assert!(r.b_is_ring.lhs && r.b_is_ring.rhs);
        let r = lemma45_check(&cls(3, "[∅,{1,2},{1,3}]")).unwrap();
        assert!(r.all_agree);
    }

    #[test]
    fn localization_examples() {
        assert_eq!(localize(&cls(2, "[{1},{2}]")).unwrap().to_string(), "[{1,2}]");
        let p = SetClass::powerset(&x(3));
        assert_eq!(localize(&p).unwrap(), p);
        let ring = cls(3, "[∅,{1},{2},{1,2}]");
        assert!(structures::is_algebra(&localize(&ring).unwrap()));
    }

    #[test]
    fn ring_fast_path_matches_fixpoint_and_words() {
        let u = x(5);
        let c = parse_class(&u, "[{2,4},{1,2,3},{1,4,5}]").unwrap();
        let fast = generate(&c, Property::Ring).unwrap();
        assert_eq!(fast, generate_by_fixpoint(&c, Property::Ring).unwrap());
        assert_eq!(fast, setops::apply_word_str(&c, "rds").unwrap());
        assert_eq!(fast, setops::apply_word_str(&c, "rsd").unwrap());
        assert_eq!(fast, setops::apply_word_str(&c, "rsrs").unwrap());
        assert_ne!(fast, setops::apply_word_str(&c, "rsr").unwrap());
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
        assert!("sigma".parse::<Property>().is_err());
    }

    fn arb_class(n: usize) -> impl Strategy<Value = SetClass> {
        prop::collection::vec(0u32..(1 << n), 1..6).prop_map(move |ms| SetClass::from_masks(&x(n), ms).unwrap())
    }

    proptest! {
        #[test]
        fn generated_class_has_the_property_and_is_least(c in arb_class(3)) {
            for p in Property::ALL {
                let g = generate(&c, p).unwrap();
                prop_assert!(has_property(&g, p), "{} of {}", p, c);
                prop_assert!(c.is_subclass_of(&g).unwrap());
                prop_assert_eq!(generate(&g, p).unwrap(), g.clone());
                prop_assert_eq!(&g, &generate_by_fixpoint(&c, p).unwrap());
            }
        }

        #[test]
        fn b_hierarchy_reaches_the_closure(c in arb_class(3)) {
            let t = hierarchy(&c, Flavor::B).unwrap();
            prop_assert_eq!(&t.final_class, &generate(&c, Property::B).unwrap());
            for s in t.stages.iter().skip(1) {
                prop_assert!(has_property(&s.upper, Property::B) || setops::apply(&s.upper, OpCode::Unions).unwrap() == s.upper);
            }
            let k = t.kolmogoroff_number.unwrap();
            prop_assert_eq!(&t.stages[k].bracket_upper, &t.final_class);
        }

        #[test]
        fn b_closure_inside_generated_ring(c in arb_class(4)) {
            let sb = generate(&c, Property::B).unwrap();
            let rin = generate(&c, Property::Ring).unwrap();
            prop_assert!(sb.is_subclass_of(&rin).unwrap());
        }

        #[test]
        fn biconditionals_agree(c in arb_class(3)) {
            let r = lemma45_check(&c).unwrap();
            prop_assert!(r.b_is_ring.agree);
            prop_assert!(r.bd_is_algebra.agree);
            prop_assert!(r.b_is_algebra.agree);
        }
    }
}
