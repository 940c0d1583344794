//! Decision procedures for the structures a class of sets can carry.
//!
//! Every check is exact and exhaustive. When a property fails, the witness is
//! the first violating tuple in canonical member order. Properties whose
//! countable variants coincide with the finite ones on a finite universe are
//! reported separately in [`CollapsedFlags`] and marked as such.

use serde::Serialize;

use crate::bits::{self, MaskSet};
use crate::cover;
use crate::error::{Error, Result};
use crate::ground::{same_universe, SetClass, Universe};
use crate::setops;

/// Why a flag has the value it has, when that needs saying.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Note {
    /// Identical to another flag on a finite universe.
    FiniteCollapse { alias_of: &'static str },
    /// True because the defining condition has no instances.
    VacuouslyTrue { reason: &'static str },
    /// The hypotheses of the definition are not met.
    NotApplicable { reason: &'static str },
}

/// Sets illustrating a flag's value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub sets: Vec<String>,
    pub detail: String,
    #[serde(skip)]
    pub masks: Vec<u32>,
}

impl Witness {
    fn new(u: &Universe, masks: Vec<u32>, detail: String) -> Witness {
        let sets = masks.iter().map(|&m| crate::ground::format_mask(u, m)).collect();
        Witness { sets, detail, masks }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Flag {
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<Note>,
}

impl Flag {
    fn yes() -> Flag {
        Flag { holds: true, witness: None, note: None }
    }

    fn no(w: Witness) -> Flag {
        Flag { holds: false, witness: Some(w), note: None }
    }

    fn from(result: std::result::Result<(), Witness>) -> Flag {
        match result {
            Ok(()) => Flag::yes(),
            Err(w) => Flag::no(w),
        }
    }

    fn with_note(mut self, note: Note) -> Flag {
        self.note = Some(note);
        self
    }

    fn alias(of: &Flag, name: &'static str) -> Flag {
        Flag { note: Some(Note::FiniteCollapse { alias_of: name }), ..of.clone() }
    }

    fn not_applicable(reason: &'static str) -> Flag {
        Flag { holds: false, witness: None, note: Some(Note::NotApplicable { reason }) }
    }
}

/// Countable variants that coincide with finite ones here.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CollapsedFlags {
    pub sigma_additive: Flag,
    pub delta_multiplicative: Flag,
    pub sigma_lattice: Flag,
    pub delta_lattice: Flag,
    pub sigma_semiring: Flag,
    pub countable_chain_condition: Flag,
    pub sigma_ring: Flag,
    pub delta_ring: Flag,
    pub sigma_algebra: Flag,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub multiplicative: Flag,
    pub additive: Flag,
    pub lattice: Flag,
    pub semiring: Flag,
    pub finite_chain_condition: Flag,
    pub ring: Flag,
    pub ring_with_unit: Flag,
    pub algebra: Flag,
    pub complete_ring: Flag,
    pub dynkin_class: Flag,
    pub filter: Flag,
    pub ultrafilter: Flag,
    pub filterbase: Flag,
    pub has_fip: Flag,
    pub atomic: Flag,
    pub antiatomic: Flag,
    pub normal_class: Flag,
    pub collapsed: CollapsedFlags,
}

impl StructureReport {
    /// Looks a flag up by its field name (collapsed aliases included).
    pub fn flag(&self, name: &str) -> Option<&Flag> {
        Some(match name {
            "multiplicative" => &self.multiplicative,
            "additive" => &self.additive,
            "lattice" => &self.lattice,
            "semiring" => &self.semiring,
            "finite_chain_condition" | "fcc" => &self.finite_chain_condition,
            "ring" => &self.ring,
            "ring_with_unit" => &self.ring_with_unit,
            "algebra" => &self.algebra,
            "complete_ring" => &self.complete_ring,
            "dynkin_class" | "dynkin" => &self.dynkin_class,
            "filter" => &self.filter,
            "ultrafilter" => &self.ultrafilter,
            "filterbase" => &self.filterbase,
            "has_fip" | "fip" => &self.has_fip,
            "atomic" => &self.atomic,
            "antiatomic" => &self.antiatomic,
            "normal_class" | "normal" => &self.normal_class,
            "sigma_additive" => &self.collapsed.sigma_additive,
            "delta_multiplicative" => &self.collapsed.delta_multiplicative,
            "sigma_lattice" => &self.collapsed.sigma_lattice,
            "delta_lattice" => &self.collapsed.delta_lattice,
            "sigma_semiring" => &self.collapsed.sigma_semiring,
            "countable_chain_condition" => &self.collapsed.countable_chain_condition,
            "sigma_ring" => &self.collapsed.sigma_ring,
            "delta_ring" => &self.collapsed.delta_ring,
            "sigma_algebra" => &self.collapsed.sigma_algebra,
            _ => return None,
        })
    }

    pub const FLAG_NAMES: &'static [&'static str] = &[
        "multiplicative",
        "additive",
        "lattice",
        "semiring",
        "finite_chain_condition",
        "ring",
        "ring_with_unit",
        "algebra",
        "complete_ring",
        "dynkin_class",
        "filter",
        "ultrafilter",
        "filterbase",
        "has_fip",
        "atomic",
        "antiatomic",
        "normal_class",
    ];
}

// ---------------------------------------------------------------------------
// Raw checks on sorted mask slices. `Err` carries the witness.

type Check = std::result::Result<(), Witness>;

fn has(ms: &[u32], m: u32) -> bool {
    bits::sorted_contains(ms, m)
}

fn sym(op: &str) -> &str {
    match op {
        "union" => "∪",
        "intersection" => "∩",
        "symmetric difference" => "Δ",
        _ => "−",
    }
}

/// First pair (in canonical order) whose combination leaves the class.
fn closed_under(u: &Universe, ms: &[u32], name: &str, ordered: bool, f: impl Fn(u32, u32) -> u32) -> Check {
    for (i, &a) in ms.iter().enumerate() {
        let start = if ordered { 0 } else { i };
        for &b in &ms[start..] {
            let c = f(a, b);
            if !has(ms, c) {
                let fm = |m| crate::ground::format_mask(u, m);
                return Err(Witness::new(
                    u,
                    vec![a, b],
                    format!("{} {} {} = {} is missing", fm(a), sym(name), fm(b), fm(c)),
                ));
            }
        }
    }
    Ok(())
}

fn contains_empty(u: &Universe, ms: &[u32]) -> Check {
    if has(ms, 0) {
        Ok(())
    } else {
        Err(Witness::new(u, vec![0], "∅ is missing".into()))
    }
}

pub(crate) fn check_multiplicative(u: &Universe, ms: &[u32]) -> Check {
    closed_under(u, ms, "intersection", false, |a, b| a & b)
}

pub(crate) fn check_additive(u: &Universe, ms: &[u32]) -> Check {
    closed_under(u, ms, "union", false, |a, b| a | b)
}

pub(crate) fn check_lattice(u: &Universe, ms: &[u32]) -> Check {
    contains_empty(u, ms)?;
    check_additive(u, ms)?;
    check_multiplicative(u, ms)
}

pub(crate) fn check_ring(u: &Universe, ms: &[u32]) -> Check {
    contains_empty(u, ms)?;
    closed_under(u, ms, "symmetric difference", false, |a, b| a ^ b)?;
    check_multiplicative(u, ms)
}

/// Semiring: ∅, multiplicative, and every nested pair `S ⊋ T ≠ ∅` has a
/// class-partition of `S` with component `T`, i.e. `S − T` is a disjoint
/// union of members.
pub(crate) fn check_semiring(u: &Universe, ms: &[u32]) -> Check {
    contains_empty(u, ms)?;
    check_multiplicative(u, ms)?;
    for &s in ms {
        for &t in ms {
            if t != 0 && t != s && bits::is_subset(t, s) && !cover::is_coverable(s & !t, ms) {
                let fm = |m| crate::ground::format_mask(u, m);
                return Err(Witness::new(
                    u,
                    vec![s, t],
                    format!("no partition of {} by members has {} as a component", fm(s), fm(t)),
                ));
            }
        }
    }
    Ok(())
}

/// A class-partition of `s` having `t` as a component, canonically least.
pub fn semiring_partition(ms: &[u32], s: u32, t: u32) -> Option<Vec<u32>> {
    if t == 0 || !bits::is_subset(t, s) {
        return None;
    }
    let mut rest = cover::first_cover(s & !t, ms)?;
    rest.push(t);
    rest.sort_unstable();
    Some(rest)
}

/// For all nested members `T ⊆ S` there is a chain of members from `T` to `S`
/// whose consecutive differences are members.
pub(crate) fn check_chain_condition(u: &Universe, ms: &[u32]) -> Check {
    for &s in ms {
        for &t in ms {
            if bits::is_subset(t, s) && !chain_exists(ms, t, s) {
                let fm = |m| crate::ground::format_mask(u, m);
                return Err(Witness::new(
                    u,
                    vec![s, t],
                    format!("no chain of members from {} up to {} with member differences", fm(t), fm(s)),
                ));
            }
        }
    }
    Ok(())
}

fn chain_exists(ms: &[u32], from: u32, to: u32) -> bool {
    let mut seen = vec![from];
    let mut frontier = vec![from];
    while let Some(cur) = frontier.pop() {
        if cur == to {
            return true;
        }
        for &v in ms {
            if v != cur && bits::is_subset(cur, v) && bits::is_subset(v, to) && has(ms, v & !cur) && !seen.contains(&v)
            {
                seen.push(v);
                frontier.push(v);
            }
        }
    }
    false
}

/// Closed under disjoint unions and proper differences.
pub(crate) fn check_dynkin(u: &Universe, ms: &[u32]) -> Check {
    let fm = |m| crate::ground::format_mask(u, m);
    for (i, &a) in ms.iter().enumerate() {
        for &b in &ms[i..] {
            if a & b == 0 && !has(ms, a | b) {
                return Err(Witness::new(
                    u,
                    vec![a, b],
                    format!("disjoint union {} ∪ {} = {} is missing", fm(a), fm(b), fm(a | b)),
                ));
            }
        }
    }
    for &s in ms {
        for &t in ms {
            if bits::is_subset(t, s) && !has(ms, s & !t) {
                return Err(Witness::new(
                    u,
                    vec![s, t],
                    format!("proper difference {} − {} = {} is missing", fm(s), fm(t), fm(s & !t)),
                ));
            }
        }
    }
    Ok(())
}

fn upward_closed(u: &Universe, ms: &[u32]) -> Check {
    let fullm = u.full_mask();
    for &s in ms {
        let free = fullm & !s;
        for extra in bits::submasks(free) {
            if !has(ms, s | extra) {
                let fm = |m| crate::ground::format_mask(u, m);
                return Err(Witness::new(
                    u,
                    vec![s, s | extra],
                    format!("{} contains {} but is missing", fm(s | extra), fm(s)),
                ));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_filter(u: &Universe, ms: &[u32]) -> Check {
    if ms.is_empty() {
        return Err(Witness::new(u, vec![], "a filter is nonempty".into()));
    }
    if has(ms, 0) {
        return Err(Witness::new(u, vec![0], "∅ belongs to the class".into()));
    }
    check_multiplicative(u, ms)?;
    upward_closed(u, ms)
}

fn check_ultrafilter(u: &Universe, ms: &[u32]) -> Check {
    check_filter(u, ms)?;
    let fullm = u.full_mask();
    for a in 0..=fullm {
        if !has(ms, a) && !has(ms, fullm & !a) {
            let fm = |m| crate::ground::format_mask(u, m);
            return Err(Witness::new(
                u,
                vec![a],
                format!("neither {} nor its complement {} belongs", fm(a), fm(fullm & !a)),
            ));
        }
    }
    Ok(())
}

fn check_filterbase(u: &Universe, ms: &[u32]) -> Check {
    if ms.is_empty() {
        return Err(Witness::new(u, vec![], "a filterbase is nonempty".into()));
    }
    if has(ms, 0) {
        return Err(Witness::new(u, vec![0], "∅ belongs to the class".into()));
    }
    for (i, &a) in ms.iter().enumerate() {
        for &b in &ms[i..] {
            if !ms.iter().any(|&c| bits::is_subset(c, a & b)) {
                let fm = |m| crate::ground::format_mask(u, m);
                return Err(Witness::new(u, vec![a, b], format!("no member lies inside {} ∩ {}", fm(a), fm(b))));
            }
        }
    }
    Ok(())
}

/// Finite intersection property; the witness is an inclusion-minimal family
/// with empty intersection, preferring the least pair.
fn check_fip(u: &Universe, ms: &[u32]) -> Check {
    let total = ms.iter().fold(u.full_mask(), |acc, &m| acc & m);
    if total != 0 {
        return Ok(());
    }
    for (i, &a) in ms.iter().enumerate() {
        for &b in &ms[i..] {
            if a & b == 0 {
                let fm = |m| crate::ground::format_mask(u, m);
                let w = if a == b { vec![a] } else { vec![a, b] };
                return Err(Witness::new(u, w, format!("{} ∩ {} = ∅", fm(a), fm(b))));
            }
        }
    }
    let mut family = ms.to_vec();
    let mut i = 0;
    while i < family.len() {
        let without: u32 =
            family.iter().enumerate().filter(|&(j, _)| j != i).fold(u.full_mask(), |acc, (_, &m)| acc & m);
        if without == 0 {
            family.remove(i);
        } else {
            i += 1;
        }
    }
    Err(Witness::new(u, family, "the intersection of these members is ∅".into()))
}

/// Minimal nonempty members.
fn minimal_nonempty(ms: &[u32]) -> Vec<u32> {
    ms.iter().copied().filter(|&a| a != 0 && !ms.iter().any(|&b| b != 0 && b != a && bits::is_subset(b, a))).collect()
}

// ---------------------------------------------------------------------------

pub fn classify(class: &SetClass) -> Result<StructureReport> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op: "classify" });
    }
    let u = class.universe().as_ref();
    let ms = class.masks();

    let multiplicative = Flag::from(check_multiplicative(u, ms));
    let additive = Flag::from(check_additive(u, ms));
    let lattice = Flag::from(check_lattice(u, ms));
    let semiring = Flag::from(check_semiring(u, ms));
    let finite_chain_condition = if has(ms, 0) && multiplicative.holds {
        Flag::from(check_chain_condition(u, ms))
    } else {
        Flag::not_applicable("defined for multiplicative classes containing ∅")
    };
    let ring = Flag::from(check_ring(u, ms));
    let union_all = class.union_mask();
    let ring_with_unit = if !ring.holds {
        Flag { holds: false, witness: ring.witness.clone(), note: None }
    } else if has(ms, union_all) {
        Flag::yes()
    } else {
        Flag::no(Witness::new(u, vec![union_all], "the union of all members is missing".into()))
    };
    let algebra = if !ring.holds {
        Flag { holds: false, witness: ring.witness.clone(), note: None }
    } else {
        Flag::from(if class.contains_full() {
            Ok(())
        } else {
            Err(Witness::new(u, vec![u.full_mask()], "X is missing".into()))
        })
    };
    let complete_ring = if ring.holds {
        // closure under arbitrary nonempty unions == finite unions here
        Flag::from(check_additive(u, ms)).with_note(Note::FiniteCollapse { alias_of: "ring" })
    } else {
        Flag { holds: false, witness: ring.witness.clone(), note: None }
    };
    let dynkin_class = Flag::from(check_dynkin(u, ms));
    let filter = Flag::from(check_filter(u, ms));
    let ultrafilter = Flag::from(check_ultrafilter(u, ms));
    let filterbase = Flag::from(check_filterbase(u, ms));
    let has_fip = Flag::from(check_fip(u, ms));

    let (atomic, antiatomic) = if ring.holds {
        let atoms = minimal_nonempty(ms);
        let uncovered = ms.iter().copied().find(|&m| m != 0 && !atoms.iter().any(|&a| bits::is_subset(a, m)));
        let atomic = match uncovered {
            None => Flag::yes().with_note(Note::FiniteCollapse { alias_of: "ring" }),
            Some(m) => Flag::no(Witness::new(u, vec![m], "contains no atom".into())),
        };
        let holder = ms.iter().copied().find(|&m| m != 0 && atoms.iter().any(|&a| bits::is_subset(a, m)));
        let antiatomic = match holder {
            None => Flag::yes(),
            Some(m) => Flag::no(Witness::new(u, vec![m], "contains an atom".into())),
        };
        (atomic, antiatomic)
    } else {
        (Flag::not_applicable("atoms are defined for rings"), Flag::not_applicable("atoms are defined for rings"))
    };

    let normal_class = if multiplicative.holds {
        Flag::yes().with_note(Note::VacuouslyTrue { reason: "a finite universe admits no infinite class-partitions" })
    } else {
        Flag::not_applicable("defined for multiplicative classes")
    };

    let collapsed = CollapsedFlags {
        sigma_additive: Flag::alias(&additive, "additive"),
        delta_multiplicative: Flag::alias(&multiplicative, "multiplicative"),
        sigma_lattice: Flag::alias(&lattice, "lattice"),
        delta_lattice: Flag::alias(&lattice, "lattice"),
        sigma_semiring: Flag::alias(&semiring, "semiring"),
        countable_chain_condition: Flag::alias(&finite_chain_condition, "finite_chain_condition"),
        sigma_ring: Flag::alias(&ring, "ring"),
        delta_ring: Flag::alias(&ring, "ring"),
        sigma_algebra: Flag::alias(&algebra, "algebra"),
    };

    Ok(StructureReport {
        multiplicative,
        additive,
        lattice,
        semiring,
        finite_chain_condition,
        ring,
        ring_with_unit,
        algebra,
        complete_ring,
        dynkin_class,
        filter,
        ultrafilter,
        filterbase,
        has_fip,
        atomic,
        antiatomic,
        normal_class,
        collapsed,
    })
}

pub fn is_ring(class: &SetClass) -> bool {
    !class.is_empty() && check_ring(class.universe(), class.masks()).is_ok()
}

pub fn is_semiring(class: &SetClass) -> bool {
    !class.is_empty() && check_semiring(class.universe(), class.masks()).is_ok()
}

pub fn is_lattice(class: &SetClass) -> bool {
    !class.is_empty() && check_lattice(class.universe(), class.masks()).is_ok()
}

pub fn is_multiplicative(class: &SetClass) -> bool {
    !class.is_empty() && check_multiplicative(class.universe(), class.masks()).is_ok()
}

pub fn is_additive(class: &SetClass) -> bool {
    !class.is_empty() && check_additive(class.universe(), class.masks()).is_ok()
}

pub fn is_dynkin(class: &SetClass) -> bool {
    !class.is_empty() && check_dynkin(class.universe(), class.masks()).is_ok()
}

pub fn is_algebra(class: &SetClass) -> bool {
    is_ring(class) && class.contains_full()
}

pub fn is_filter(class: &SetClass) -> bool {
    check_filter(class.universe(), class.masks()).is_ok()
}

pub fn is_ultrafilter(class: &SetClass) -> bool {
    check_ultrafilter(class.universe(), class.masks()).is_ok()
}

pub(crate) fn require_ring(op: &'static str, class: &SetClass) -> Result<()> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op });
    }
    check_ring(class.universe(), class.masks())
        .map_err(|w| Error::precondition(op, format!("{} is not a ring: {}", class, w.detail)))
}

pub(crate) fn require_semiring(op: &'static str, class: &SetClass) -> Result<()> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op });
    }
    check_semiring(class.universe(), class.masks())
        .map_err(|w| Error::precondition(op, format!("{} is not a semiring: {}", class, w.detail)))
}

/// Minimal nonempty members of a ring.
pub fn atoms(ring: &SetClass) -> Result<SetClass> {
    require_ring("atoms", ring)?;
    Ok(SetClass::from_sorted(ring.universe(), minimal_nonempty(ring.masks())))
}

// ---------------------------------------------------------------------------
// Ideals

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdealReport {
    pub is_ideal: Flag,
    pub is_proper: Flag,
    pub is_prime: Flag,
    pub is_maximal: Flag,
    pub is_principal: Flag,
    /// `I_0` with `ideal = {S ∈ ring : S ⊆ I_0}`, when principal.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generator: Option<String>,
}

pub(crate) fn check_ideal(u: &Universe, ring: &[u32], ideal: &[u32]) -> Check {
    if ideal.is_empty() {
        return Err(Witness::new(u, vec![], "an ideal is nonempty".into()));
    }
    check_additive(u, ideal)?;
    for &i in ideal {
        for &s in ring {
            if bits::is_subset(s, i) && !has(ideal, s) {
                let fm = |m| crate::ground::format_mask(u, m);
                return Err(Witness::new(
                    u,
                    vec![i, s],
                    format!("{} ⊆ {} lies in the ring but not in the ideal", fm(s), fm(i)),
                ));
            }
        }
    }
    Ok(())
}

pub(crate) fn check_prime(u: &Universe, ring: &[u32], ideal: &[u32]) -> Check {
    for (i, &a) in ring.iter().enumerate() {
        for &b in &ring[i..] {
            if has(ideal, a & b) && !has(ideal, a) && !has(ideal, b) {
                let fm = |m| crate::ground::format_mask(u, m);
                return Err(Witness::new(
                    u,
                    vec![a, b],
                    format!("{} ∩ {} lies in the ideal but neither factor does", fm(a), fm(b)),
                ));
            }
        }
    }
    Ok(())
}

/// Ideal generated by `ideal ∪ {extra}`: members below some `I ∪ extra`.
fn generated_ideal(ring: &[u32], ideal: &[u32], extra: u32) -> Vec<u32> {
    let tops: Vec<u32> = ideal.iter().map(|&i| i | extra).collect();
    ring.iter().copied().filter(|&s| tops.iter().any(|&t| bits::is_subset(s, t))).collect()
}

pub fn ideal_classify(ring: &SetClass, ideal: &SetClass) -> Result<IdealReport> {
    require_ring("ideal_classify", ring)?;
    same_universe(ring.universe(), ideal.universe())?;
    if let Some(&bad) = ideal.masks().iter().find(|&&m| !ring.contains_mask(m)) {
        return Err(Error::precondition(
            "ideal_classify",
            format!("{} is in the ideal but not in the ring", ring.format_mask(bad)),
        ));
    }
    let u = ring.universe().as_ref();
    let (rm, im) = (ring.masks(), ideal.masks());

    let is_ideal = Flag::from(check_ideal(u, rm, im));
    let is_proper = if ideal.len() < ring.len() {
        Flag::yes()
    } else {
        Flag::no(Witness::new(u, vec![], "the ideal is the whole ring".into()))
    };
    let gated = |f: Flag| -> Flag {
        if !is_ideal.holds {
            Flag::not_applicable("not an ideal")
        } else if !is_proper.holds {
            Flag { holds: false, witness: is_proper.witness.clone(), note: None }
        } else {
            f
        }
    };
    let is_prime = gated(Flag::from(check_prime(u, rm, im)));
    let is_maximal = gated({
        let bigger = rm.iter().copied().filter(|&s| !has(im, s)).find(|&s| generated_ideal(rm, im, s).len() < rm.len());
        match bigger {
            None => Flag::yes(),
            Some(s) => {
                Flag::no(Witness::new(u, vec![s], format!("adjoining {} gives a larger proper ideal", u_fmt(u, s))))
            }
        }
    });
    let top = ideal.union_mask();
    let principal = is_ideal.holds && {
        let below: Vec<u32> = rm.iter().copied().filter(|&s| bits::is_subset(s, top)).collect();
        below == im
    };
    let is_principal = if principal {
        Flag::yes()
    } else if !is_ideal.holds {
        Flag::not_applicable("not an ideal")
    } else {
        Flag::no(Witness::new(u, vec![top], "the ideal is not the down-set of its union".into()))
    };
    Ok(IdealReport {
        is_ideal,
        is_proper,
        is_prime,
        is_maximal,
        is_principal,
        generator: principal.then(|| u_fmt(u, top)),
    })
}

fn u_fmt(u: &Universe, m: u32) -> String {
    crate::ground::format_mask(u, m)
}

// ---------------------------------------------------------------------------
// Filters

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FilterReport {
    pub filter: Flag,
    pub ultrafilter: Flag,
    pub filterbase: Flag,
    pub has_fip: Flag,
    /// Smallest filter containing the class, when it has the FIP.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generated: Option<SetClass>,
}

pub fn filter_ops(class: &SetClass) -> Result<FilterReport> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op: "filter_ops" });
    }
    let u = class.universe().as_ref();
    let ms = class.masks();
    let has_fip = Flag::from(check_fip(u, ms));
    let generated = if has_fip.holds { Some(generated_filter(class)?) } else { None };
    Ok(FilterReport {
        filter: Flag::from(check_filter(u, ms)),
        ultrafilter: Flag::from(check_ultrafilter(u, ms)),
        filterbase: Flag::from(check_filterbase(u, ms)),
        has_fip,
        generated,
    })
}

/// Upward closure of the finite intersections.
fn generated_filter(class: &SetClass) -> Result<SetClass> {
    let meets = setops::apply(class, setops::OpCode::Intersections)?;
    Ok(upward_closure(&meets))
}

pub(crate) fn upward_closure(class: &SetClass) -> SetClass {
    let u = class.universe();
    let fullm = u.full_mask();
    let mut seen = MaskSet::new(u.size());
    for &m in class.masks() {
        for extra in bits::submasks(fullm & !m) {
            seen.insert(m | extra);
        }
    }
    SetClass::from_sorted(u, seen.to_sorted_vec())
}

/// All ultrafilters on the universe: the principal ones, one per point.
pub fn ultrafilters(universe: &std::sync::Arc<Universe>) -> Vec<SetClass> {
    let fullm = universe.full_mask();
    (0..universe.size())
        .map(|p| {
            let masks = (0..=fullm).filter(|m| m >> p & 1 == 1).collect();
            SetClass::from_sorted(universe, masks)
        })
        .collect()
}

// ---------------------------------------------------------------------------

/// Searches all classes on universes of size `1..=max_n` for a semiring that
/// violates the finite chain condition. Returns the first found in order of
/// universe size, then class size, then canonical order.
pub fn mine_semiring_without_chain_condition(max_n: usize) -> Option<SetClass> {
    for n in 1..=max_n.min(3) {
        let u = Universe::new("X", n).expect("small universe");
        let all: Vec<u32> = (1..=bits::full(n)).collect();
        let count = all.len();
        let mut found: Vec<Vec<u32>> = Vec::new();
        for pick in 0u64..(1u64 << count) {
            let mut ms = vec![0u32];
            ms.extend((0..count).filter(|i| pick >> i & 1 == 1).map(|i| all[i]));
            if check_semiring(&u, &ms).is_ok() && check_chain_condition(&u, &ms).is_err() {
                found.push(ms);
            }
        }
        found.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        if let Some(ms) = found.into_iter().next() {
            return Some(SetClass::from_raw(&u, ms));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::parse_class;
    use std::sync::Arc;

    fn x(n: usize) -> Arc<Universe> {
        Universe::new("X", n).unwrap()
    }

    fn cls(n: usize, s: &str) -> SetClass {
        parse_class(&x(n), s).unwrap()
    }

    #[test]
    fn singletons_with_whole_are_a_semiring_not_a_ring() {
        let r = classify(&cls(3, "[∅,{1},{2},{3},{1,2,3}]")).unwrap();
        assert!(r.semiring.holds);
        assert!(!r.ring.holds);
        let w = r.ring.witness.unwrap();
        assert_eq!(w.sets, vec!["{1}", "{2}"]);
        assert!(w.detail.contains("{1,2}"));
    }

    #[test]
    fn intersection_of_two_semirings_fails() {
        let r = classify(&cls(3, "[∅,{1},{1,2,3}]")).unwrap();
        assert!(!r.semiring.holds);
        assert_eq!(r.semiring.witness.unwrap().sets, vec!["{1,2,3}", "{1}"]);
    }

    #[test]
    fn dynkin_class_that_is_not_a_ring() {
        let r = classify(&cls(4, "[∅,{1,2},{1,3},{2,4},{3,4},{1,2,3,4}]")).unwrap();
        assert!(r.dynkin_class.holds);
        assert!(!r.ring.holds);
        assert!(!r.multiplicative.holds);
        let w = r.multiplicative.witness.unwrap();
        assert_eq!(w.sets, vec!["{1,2}", "{1,3}"]);
    }

    #[test]
    fn powerset_is_everything_a_ring_can_be() {
        let r = classify(&SetClass::powerset(&x(3))).unwrap();
        for f in ["ring", "algebra", "ring_with_unit", "complete_ring", "semiring", "lattice", "atomic", "dynkin_class"]
        {
            assert!(r.flag(f).unwrap().holds, "{f}");
        }
        assert!(!r.antiatomic.holds);
        assert!(!r.filter.holds);
    }

    #[test]
    fn implications_within_report() {
        for c in ["[∅]", "[∅,{1}]", "[∅,{1},{2},{1,2}]", "[∅,{1,2},{3},{1,2,3}]", "[{1},{1,2}]"] {
            let r = classify(&cls(3, c)).unwrap();
            if r.ring.holds {
                assert!(r.semiring.holds);
            }
            if r.algebra.holds {
                assert!(r.ring_with_unit.holds && r.ring.holds);
            }
            if r.complete_ring.holds {
                assert!(r.ring_with_unit.holds);
            }
            if r.lattice.holds {
                assert!(r.additive.holds && r.multiplicative.holds);
            }
        }
    }

    #[test]
    fn trivial_ring_is_antiatomic() {
        let r = classify(&cls(2, "[∅]")).unwrap();
        assert!(r.ring.holds && r.antiatomic.holds && r.atomic.holds);
        assert!(atoms(&cls(2, "[∅]")).unwrap().is_empty());
    }

    #[test]
    fn atoms_of_rings() {
        assert_eq!(atoms(&cls(3, "[∅,{1,2},{3},{1,2,3}]")).unwrap().to_string(), "[{1,2},{3}]");
        assert_eq!(atoms(&SetClass::powerset(&x(3))).unwrap().to_string(), "[{1},{2},{3}]");
        assert!(atoms(&cls(3, "[∅,{1},{2}]")).is_err());
    }

    #[test]
    fn normal_class_is_vacuous() {
        let r = classify(&cls(3, "[∅,{1},{1,2}]")).unwrap();
        assert!(r.normal_class.holds);
        assert!(matches!(r.normal_class.note, Some(Note::VacuouslyTrue { .. })));
        let r = classify(&cls(3, "[{1},{2}]")).unwrap();
        assert!(!r.normal_class.holds);
    }

    #[test]
    fn collapsed_flags_mirror_finite_ones() {
        let r = classify(&cls(3, "[∅,{1},{2},{3},{1,2,3}]")).unwrap();
        assert_eq!(r.collapsed.sigma_semiring.holds, r.semiring.holds);
        assert!(matches!(r.collapsed.sigma_ring.note, Some(Note::FiniteCollapse { alias_of: "ring" })));
    }

    #[test]
    fn empty_class_rejected() {
        assert!(classify(&SetClass::empty(&x(2))).is_err());
    }

    #[test]
    fn ideal_examples() {
        let p3 = SetClass::powerset(&x(3));
        let r = ideal_classify(&p3, &cls(3, "[∅,{1}]")).unwrap();
        assert!(r.is_ideal.holds && r.is_principal.holds);
        assert!(!r.is_prime.holds && !r.is_maximal.holds);
        assert_eq!(r.generator.as_deref(), Some("{1}"));

        let p2 = SetClass::powerset(&x(2));
        let r = ideal_classify(&p2, &cls(2, "[∅,{2}]")).unwrap();
        assert!(r.is_prime.holds && r.is_maximal.holds);

        let r = ideal_classify(&p2, &p2).unwrap();
        assert!(r.is_ideal.holds && !r.is_proper.holds && !r.is_prime.holds);

        assert!(ideal_classify(&cls(2, "[∅,{1}]"), &cls(2, "[∅,{2}]")).is_err());
    }

    #[test]
    fn filter_examples() {
        let f = filter_ops(&cls(3, "[{1,2},{1,3}]")).unwrap();
        assert!(f.has_fip.holds);
        assert_eq!(f.generated.unwrap().to_string(), "[{1},{1,2},{1,3},{1,2,3}]");

        let f = filter_ops(&cls(3, "[{1},{1,2},{1,3},{1,2,3}]")).unwrap();
        assert!(f.ultrafilter.holds && f.filter.holds);

        let f = filter_ops(&cls(3, "[{1},{2}]")).unwrap();
        assert!(!f.has_fip.holds);
        assert_eq!(f.has_fip.witness.unwrap().sets, vec!["{1}", "{2}"]);
        assert!(f.generated.is_none());
    }

    #[test]
    fn fip_witness_for_three_way_failure() {
        let f = filter_ops(&cls(3, "[{1,2},{1,3},{2,3}]")).unwrap();
        assert!(!f.has_fip.holds);
        assert_eq!(f.has_fip.witness.unwrap().sets.len(), 3);
    }

    #[test]
    fn chain_condition_miner_finds_a_semiring() {
        let found = mine_semiring_without_chain_condition(3).unwrap();
        let r = classify(&found).unwrap();
        assert!(r.semiring.holds && !r.finite_chain_condition.holds);
    }

    #[test]
    fn chain_condition_on_powerset_holds() {
        let r = classify(&SetClass::powerset(&x(3))).unwrap();
        assert!(r.finite_chain_condition.holds);
    }
}
