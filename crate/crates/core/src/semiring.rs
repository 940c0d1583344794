//! Constructive semiring lemmas: extending a disjoint family to a partition,
//! splitting a finite selection into disjoint attributed pieces, the
//! Kolmogoroff ring of finite disjoint unions, and three equivalent
//! characterizations of semirings among multiplicative classes with ∅.
//!
//! Where a construction leaves a choice, the canonically least exact cover is
//! taken and inputs are processed in canonical member order.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits;
use crate::cover;
use crate::error::{Error, Result};
use crate::generate::venn_cells;
use crate::ground::{same_universe, SetClass, Subset};
use crate::partitions::Partition;
use crate::setops::{self, OpCode};
use crate::structures::{self, require_semiring};

fn fm(class: &SetClass, m: u32) -> String {
    class.format_mask(m)
}

/// Semiring partition of `s` with the pairwise disjoint `family` among its
/// components, built by inducting over the family: each new member is cut out
/// of every remainder piece it meets.
pub fn extend_to_partition(semiring: &SetClass, s: &Subset, family: &SetClass) -> Result<Partition> {
    require_semiring("extend_to_partition", semiring)?;
    same_universe(semiring.universe(), s.universe())?;
    same_universe(semiring.universe(), family.universe())?;
    if !semiring.contains(s) {
        return Err(Error::precondition("extend_to_partition", format!("{s} is not in the semiring")));
    }
    let ms = family.masks();
    for (i, &t) in ms.iter().enumerate() {
        if t == 0 {
            return Err(Error::precondition("extend_to_partition", "family members must be nonempty"));
        }
        if !semiring.contains_mask(t) {
            return Err(Error::precondition(
                "extend_to_partition",
                format!("{} is not in the semiring", fm(family, t)),
            ));
        }
        if !bits::is_subset(t, s.bits()) {
            return Err(Error::precondition(
                "extend_to_partition",
                format!("{} is not contained in {s}", fm(family, t)),
            ));
        }
        if let Some(&o) = ms[..i].iter().find(|&&o| o & t != 0) {
            return Err(Error::precondition(
                "extend_to_partition",
                format!("{} and {} are not disjoint", fm(family, o), fm(family, t)),
            ));
        }
    }
    let blocks = extend_masks(semiring.masks(), s.bits(), ms);
    Ok(Partition::from_valid(semiring.universe(), s.bits(), blocks))
}

/// Remainder pieces start as `{s}`; every family member `t` replaces each
/// piece `p` it meets by the canonical cover of `p − (t ∩ p)`.
fn extend_masks(semiring: &[u32], s: u32, family: &[u32]) -> Vec<u32> {
    let mut rest = vec![s];
    for &t in family {
        let mut next = Vec::with_capacity(rest.len() + 2);
        for &p in &rest {
            if p & t == 0 {
                next.push(p);
                continue;
            }
            let piece = structures::semiring_partition(semiring, p, p & t)
                .expect("a semiring splits any member around a nested member");
            next.extend(piece.into_iter().filter(|&m| m != p & t));
        }
        rest = next;
    }
    let mut blocks = family.to_vec();
    blocks.extend(rest);
    blocks
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Attributed {
    pub source: String,
    pub pieces: SetClass,
}

/// Pairwise disjoint semiring members attributed to the inputs they lie in,
/// keyed by 1-based position of the input in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DisjointDecomposition {
    pub parts: BTreeMap<usize, Attributed>,
}

impl DisjointDecomposition {
    pub fn all_pieces(&self) -> Vec<u32> {
        let mut v: Vec<u32> = self.parts.values().flat_map(|a| a.pieces.masks().to_vec()).collect();
        v.sort_unstable();
        v
    }
}

pub fn disjoint_refinement(semiring: &SetClass, inputs: &SetClass) -> Result<DisjointDecomposition> {
    require_semiring("disjoint_refinement", semiring)?;
    same_universe(semiring.universe(), inputs.universe())?;
    if inputs.is_empty() {
        return Err(Error::EmptyClass { op: "disjoint_refinement" });
    }
    for &m in inputs.masks() {
        if m == 0 || !semiring.contains_mask(m) {
            return Err(Error::precondition(
                "disjoint_refinement",
                format!("inputs must be nonempty semiring members, got {}", fm(inputs, m)),
            ));
        }
    }
    let sm = semiring.masks();
    // (owner index, piece)
    let mut pieces: Vec<(usize, u32)> = Vec::new();
    for (k, &s) in inputs.masks().iter().enumerate() {
        let meets: Vec<usize> = (0..pieces.len()).filter(|&i| pieces[i].1 & s != 0).collect();
        if meets.is_empty() {
            pieces.push((k, s));
        } else if let Some(&i) = meets.iter().find(|&&i| bits::is_subset(s, pieces[i].1)) {
            let (owner, p) = pieces.remove(i);
            let split = structures::semiring_partition(sm, p, s).expect("semiring splits nested members");
            pieces.extend(split.into_iter().filter(|&m| m != s).map(|m| (owner, m)));
            pieces.push((k, s));
        } else {
            let family: Vec<u32> = {
                let mut f: Vec<u32> = meets.iter().map(|&i| pieces[i].1 & s).collect();
                f.sort_unstable();
                f
            };
            let blocks = extend_masks(sm, s, &family);
            pieces.extend(blocks.into_iter().filter(|m| !family.contains(m)).map(|m| (k, m)));
        }
    }
    let u = semiring.universe();
    let parts = inputs
        .masks()
        .iter()
        .enumerate()
        .map(|(k, &s)| {
            let own = pieces.iter().filter(|(o, _)| *o == k).map(|&(_, m)| m).collect();
            (k + 1, Attributed { source: fm(inputs, s), pieces: SetClass::from_raw(u, own) })
        })
        .collect();
    Ok(DisjointDecomposition { parts })
}

/// All finite disjoint unions of members of a semiring.
pub fn kol_ring(semiring: &SetClass) -> Result<SetClass> {
    require_semiring("kol_ring", semiring)?;
    setops::apply(semiring, OpCode::DisjointUnions)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SemiringEquivalences {
    /// The class is a semiring.
    pub semiring: bool,
    /// Its finite disjoint unions, with ∅, form a ring.
    pub disjoint_unions_ring: bool,
    /// Every finite selection of members has a common refinement by pairwise
    /// disjoint members.
    pub common_refinement: bool,
    pub agree: bool,
}

pub fn semiring_equivalences(class: &SetClass) -> Result<SemiringEquivalences> {
    if class.is_empty() {
        return Err(Error::EmptyClass { op: "semiring_equivalences" });
    }
    if !class.contains_empty() || !structures::is_multiplicative(class) {
        return Err(Error::precondition(
            "semiring_equivalences",
            format!("{class} must contain ∅ and be closed under finite intersections"),
        ));
    }
    let semiring = structures::is_semiring(class);
    let sd = setops::apply(class, OpCode::DisjointUnions)?.with_mask(0);
    let disjoint_unions_ring = structures::is_ring(&sd);
    // Refining the whole class refines every selection; the pieces must then
    // tile each nonempty Venn cell.
    let common_refinement =
        venn_cells(class.masks(), class.union_mask()).into_iter().all(|cell| cover::is_coverable(cell, class.masks()));
    Ok(SemiringEquivalences {
        semiring,
        disjoint_unions_ring,
        common_refinement,
        agree: semiring == disjoint_unions_ring && semiring == common_refinement,
    })
}
