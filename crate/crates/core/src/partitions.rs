//! Partitions of a universe (or of one of its subsets), the refinement
//! order, meet and join, enumeration by restricted-growth strings, Bell
//! numbers, and the passage between partitions and complete algebras.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;

use crate::bits;
use crate::cover;
use crate::error::{Error, Result};
use crate::generate::venn_cells;
use crate::ground::{same_universe, SetClass, Subset, Universe};
use crate::structures;

pub const MAX_ENUMERATION_POINTS: usize = 12;
pub const MAX_BELL: usize = 200;
pub const MAX_LATTICE_POINTS: usize = 7;
pub const MAX_ALGEBRA_BLOCKS: usize = 20;

/// A partition of `support` into nonempty, pairwise disjoint blocks, listed
/// by least element. `support` is the whole universe unless the partition
/// was built for a particular subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    universe: Arc<Universe>,
    support: u32,
    blocks: Vec<u32>,
}

fn sort_blocks(blocks: &mut [u32]) {
    blocks.sort_unstable_by_key(|b| b.trailing_zeros());
}

impl Partition {
    /// Validates blocks as a partition of the whole universe.
    pub fn new(universe: &Arc<Universe>, blocks: Vec<u32>) -> Result<Partition> {
        Partition::of_subset(universe, universe.full_mask(), blocks)
    }

    /// Validates blocks as a partition of `support`.
    pub fn of_subset(universe: &Arc<Universe>, support: u32, mut blocks: Vec<u32>) -> Result<Partition> {
        let fm = |m| crate::ground::format_mask(universe, m);
        let mut seen = 0u32;
        for &b in &blocks {
            if b == 0 {
                return Err(Error::InvalidPartition("blocks must be nonempty".into()));
            }
            if b & !support != 0 {
                return Err(Error::InvalidPartition(format!("block {} leaves {}", fm(b), fm(support))));
            }
            if b & seen != 0 {
                return Err(Error::InvalidPartition(format!("block {} overlaps an earlier block", fm(b))));
            }
            seen |= b;
        }
        if seen != support {
            return Err(Error::InvalidPartition(format!("points {} are not covered", fm(support & !seen))));
        }
        sort_blocks(&mut blocks);
        Ok(Partition { universe: universe.clone(), support, blocks })
    }

    pub(crate) fn from_valid(universe: &Arc<Universe>, support: u32, mut blocks: Vec<u32>) -> Partition {
        sort_blocks(&mut blocks);
        Partition { universe: universe.clone(), support, blocks }
    }

    pub fn discrete(universe: &Arc<Universe>) -> Partition {
        let blocks = (0..universe.size()).map(|p| 1 << p).collect();
        Partition::from_valid(universe, universe.full_mask(), blocks)
    }

    pub fn indiscrete(universe: &Arc<Universe>) -> Partition {
        Partition::from_valid(universe, universe.full_mask(), vec![universe.full_mask()])
    }

    pub fn universe(&self) -> &Arc<Universe> {
        &self.universe
    }

    pub fn support(&self) -> u32 {
        self.support
    }

    pub fn blocks(&self) -> &[u32] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The blocks as a class (numeric order).
    pub fn as_class(&self) -> SetClass {
        SetClass::from_raw(&self.universe, self.blocks.clone())
    }

    /// Block containing point `p`.
    pub fn block_of(&self, p: usize) -> Option<u32> {
        self.blocks.iter().copied().find(|b| b >> p & 1 == 1)
    }

    /// The least element of every block.
    pub fn representatives(&self) -> Subset {
        let m = self.blocks.iter().fold(0, |acc, &b| acc | (b & b.wrapping_neg()));
        Subset::new(&self.universe, m).expect("blocks fit the universe")
    }

    fn compatible(&self, other: &Partition) -> Result<()> {
        same_universe(&self.universe, &other.universe)?;
        if self.support != other.support {
            return Err(Error::precondition(
                "partition comparison",
                format!(
                    "partitions of {} and {} cannot be compared",
                    crate::ground::format_mask(&self.universe, self.support),
                    crate::ground::format_mask(&self.universe, other.support)
                ),
            ));
        }
        Ok(())
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, &b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(&crate::ground::format_mask(&self.universe, b))?;
        }
        f.write_str("]")
    }
}

/// Serializes as the block list, e.g. `[["1","2"],["3"]]`.
impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let lists: Vec<Vec<String>> =
            self.blocks.iter().map(|&b| bits::points(b).map(|p| self.universe.label(p)).collect()).collect();
        lists.serialize(serializer)
    }
}

/// Every block of `q` lies inside a block of `p`.
pub fn refines(q: &Partition, p: &Partition) -> Result<bool> {
    q.compatible(p)?;
    Ok(q.blocks.iter().all(|&b| p.blocks.iter().any(|&c| bits::is_subset(b, c))))
}

/// Nonempty pairwise intersections of blocks.
pub fn meet(p1: &Partition, p2: &Partition) -> Result<Partition> {
    p1.compatible(p2)?;
    let blocks = p1.blocks.iter().flat_map(|&a| p2.blocks.iter().map(move |&b| a & b)).filter(|&m| m != 0).collect();
    Ok(Partition::from_valid(&p1.universe, p1.support, blocks))
}

/// Connected components of the relation "lie in a common block".
pub fn join(p1: &Partition, p2: &Partition) -> Result<Partition> {
    p1.compatible(p2)?;
    let mut rest = p1.support;
    let mut blocks = Vec::new();
    while rest != 0 {
        let mut comp = rest & rest.wrapping_neg();
        loop {
            let grown = p1.blocks.iter().chain(&p2.blocks).filter(|&&b| b & comp != 0).fold(comp, |acc, &b| acc | b);
            if grown == comp {
                break;
            }
            comp = grown;
        }
        blocks.push(comp);
        rest &= !comp;
    }
    Ok(Partition::from_valid(&p1.universe, p1.support, blocks))
}

/// All partitions of the universe in restricted-growth-string order.
pub fn enumerate_partitions(universe: &Arc<Universe>) -> Result<PartitionIter> {
    let n = universe.size();
    if n > MAX_ENUMERATION_POINTS {
        return Err(Error::cap("universe size for partition enumeration", n, MAX_ENUMERATION_POINTS));
    }
    Ok(PartitionIter { universe: universe.clone(), rgs: Some(vec![0; n]) })
}

/// Restricted-growth strings `a` with `a[0] = 0` and
/// `a[i] ≤ 1 + max(a[..i])`, in lexicographic order.
pub struct PartitionIter {
    universe: Arc<Universe>,
    rgs: Option<Vec<usize>>,
}

impl Iterator for PartitionIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let a = self.rgs.as_mut()?;
        let k = a.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![0u32; k];
        for (p, &b) in a.iter().enumerate() {
            blocks[b] |= 1 << p;
        }
        let out = Partition { universe: self.universe.clone(), support: self.universe.full_mask(), blocks };

        // advance to the next string
        let n = a.len();
        let mut i = n;
        loop {
            if i <= 1 {
                self.rgs = None;
                break;
            }
            i -= 1;
            let bound = a[..i].iter().max().copied().unwrap_or(0) + 1;
            if a[i] < bound {
                a[i] += 1;
                for v in &mut a[i + 1..] {
                    *v = 0;
                }
                break;
            }
        }
        Some(out)
    }
}

/// `p_n` by `p_{n+1} = 1 + Σ_{k=1..n} C(n,k) p_k`, `p_1 = 1`.
pub fn bell(n: usize) -> Result<BigUint> {
    if n > MAX_BELL {
        return Err(Error::cap("bell argument", n, MAX_BELL));
    }
    if n <= 1 {
        return Ok(BigUint::one());
    }
    let mut p: Vec<BigUint> = vec![BigUint::one(), BigUint::one()];
    for m in 1..n {
        let mut next = BigUint::one();
        let mut c = BigUint::one();
        for (k, pk) in p.iter().enumerate().take(m + 1).skip(1) {
            c = c * BigUint::from(m - k + 1) / BigUint::from(k);
            next += &c * pk;
        }
        p.push(next);
    }
    Ok(p.pop().expect("nonempty"))
}

/// The partition of X into the nonempty Venn cells of the cover members,
/// including the cell outside every member.
pub fn partition_from_class(cover: &SetClass) -> Result<Partition> {
    if cover.contains_empty() {
        return Err(Error::precondition("partition_from_class", "members must be nonempty"));
    }
    let u = cover.universe();
    let cells = venn_cells(cover.masks(), u.full_mask());
    Ok(Partition::from_valid(u, u.full_mask(), cells))
}

/// All unions of blocks, `∅` included.
pub fn complete_algebra(partition: &Partition) -> Result<SetClass> {
    let k = partition.len();
    if k > MAX_ALGEBRA_BLOCKS {
        return Err(Error::cap("blocks in complete algebra", k, MAX_ALGEBRA_BLOCKS));
    }
    let out = (0u32..(1u32 << k)).map(|pick| bits::points(pick).fold(0, |acc, i| acc | partition.blocks[i])).collect();
    Ok(SetClass::from_raw(&partition.universe, out))
}

/// The atoms of a complete algebra, which partition X.
pub fn partition_of_complete_algebra(algebra: &SetClass) -> Result<Partition> {
    if !structures::is_algebra(algebra) {
        return Err(Error::precondition(
            "partition_of_complete_algebra",
            format!("{algebra} is not a complete algebra (a ring containing X)"),
        ));
    }
    let atoms = structures::atoms(algebra)?;
    Partition::new(algebra.universe(), atoms.into_masks())
}

#[derive(Debug, Clone, Serialize)]
pub struct SPartitions {
    pub partitions: Vec<Partition>,
    /// Every member occurring as a component of some listed partition.
    pub components: SetClass,
    /// Set when the class is not multiplicative, so meets of these
    /// partitions may fall outside the class.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

/// All partitions of `s` into members of `class`.
pub fn s_partitions(class: &SetClass, s: &Subset) -> Result<SPartitions> {
    same_universe(class.universe(), s.universe())?;
    if !class.contains(s) {
        return Err(Error::precondition("s_partitions", format!("{s} is not a member of {class}")));
    }
    let u = class.universe();
    let covers = cover::all_covers(s.bits(), class.masks());
    let mut comps: Vec<u32> = covers.iter().flatten().copied().collect();
    bits::canonical(&mut comps);
    let mut partitions: Vec<Partition> = covers.into_iter().map(|c| Partition::from_valid(u, s.bits(), c)).collect();
    partitions.sort_by(|a, b| a.blocks.len().cmp(&b.blocks.len()).then_with(|| a.blocks.cmp(&b.blocks)));
    let warning = (!structures::is_multiplicative(class))
        .then(|| "class is not multiplicative; meets of these partitions need not be S-partitions".to_string());
    Ok(SPartitions { partitions, components: SetClass::from_sorted(u, comps), warning })
}

/// The partition lattice of a small universe with its covering relation.
#[derive(Debug, Clone, Serialize)]
pub struct PartitionLattice {
    pub nodes: Vec<PartitionLatticeNode>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PartitionLatticeNode {
    pub partition: Partition,
    /// Indices of the partitions this one immediately covers (its immediate
    /// refinements: split one block into two).
    pub covers: Vec<usize>,
}

pub fn partition_lattice(universe: &Arc<Universe>) -> Result<PartitionLattice> {
    let n = universe.size();
    if n > MAX_LATTICE_POINTS {
        return Err(Error::cap("universe size for the partition lattice", n, MAX_LATTICE_POINTS));
    }
    let all: Vec<Partition> = enumerate_partitions(universe)?.collect();
    let nodes = all
        .iter()
        .map(|p| {
            let covers = all
                .iter()
                .enumerate()
                .filter(|(_, q)| q.len() == p.len() + 1 && refines(q, p).expect("same universe"))
                .map(|(i, _)| i)
                .collect();
            PartitionLatticeNode { partition: p.clone(), covers }
        })
        .collect();
    Ok(PartitionLattice { nodes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::parse_class;
    use crate::ground::parse_mask_list;
    use proptest::prelude::*;

    fn x(n: usize) -> Arc<Universe> {
        Universe::new("X", n).unwrap()
    }

    fn part(u: &Arc<Universe>, s: &str) -> Partition {
        Partition::new(u, parse_mask_list(u, s).unwrap()).unwrap()
    }

    #[test]
    fn validation() {
        let u = x(3);
        assert!(Partition::new(&u, vec![0b011]).is_err());
        assert!(Partition::new(&u, vec![0b011, 0b110]).is_err());
        assert!(Partition::new(&u, vec![0b011, 0, 0b100]).is_err());
        assert_eq!(part(&u, "[{3},{1,2}]").to_string(), "[{1,2},{3}]");
    }

    #[test]
    fn refinement_examples() {
        let u = x(3);
        let d = Partition::discrete(&u);
        let i = Partition::indiscrete(&u);
        let a = part(&u, "[{1,2},{3}]");
        let b = part(&u, "[{1},{2,3}]");
        assert!(refines(&d, &a).unwrap() && refines(&a, &i).unwrap());
        assert!(!refines(&a, &b).unwrap() && !refines(&b, &a).unwrap());
    }

    #[test]
    fn meet_and_join_examples() {
        let u = x(3);
        let a = part(&u, "[{1,2},{3}]");
        let b = part(&u, "[{1},{2,3}]");
        assert_eq!(meet(&a, &b).unwrap(), Partition::discrete(&u));
        assert_eq!(meet(&a, &a).unwrap(), a);
        assert_eq!(join(&a, &a).unwrap(), a);
        let u4 = x(4);
        let j = join(&part(&u4, "[{1,2},{3,4}]"), &part(&u4, "[{2,3},{1},{4}]")).unwrap();
        assert_eq!(j, Partition::indiscrete(&u4));
    }

    #[test]
    fn bell_numbers_match_enumeration() {
        let expected = [1u64, 2, 5, 15, 52, 203, 877, 4140];
        for (i, &e) in expected.iter().enumerate() {
            let n = i + 1;
            assert_eq!(bell(n).unwrap(), BigUint::from(e));
            assert_eq!(enumerate_partitions(&x(n)).unwrap().count() as u64, e);
        }
        assert!(bell(201).is_err());
        assert!(bell(200).unwrap() > BigUint::from(u64::MAX));
    }

    #[test]
    fn enumeration_is_canonical_and_distinct() {
        let all: Vec<Partition> = enumerate_partitions(&x(4)).unwrap().collect();
        for w in all.windows(2) {
            assert_ne!(w[0], w[1]);
        }
        assert_eq!(all[0], Partition::indiscrete(&x(4)));
        assert_eq!(all.last().unwrap(), &Partition::discrete(&x(4)));
    }

    #[test]
    fn partition_from_cover_examples() {
        let u = x(3);
        assert_eq!(partition_from_class(&parse_class(&u, "[{1,2},{2,3}]").unwrap()).unwrap(), Partition::discrete(&u));
        assert_eq!(partition_from_class(&parse_class(&u, "[{1,2,3}]").unwrap()).unwrap(), Partition::indiscrete(&u));
        assert_eq!(partition_from_class(&parse_class(&u, "[{1}]").unwrap()).unwrap().to_string(), "[{1},{2,3}]");
        assert!(partition_from_class(&parse_class(&u, "[∅,{1}]").unwrap()).is_err());
    }

    #[test]
    fn complete_algebra_round_trip() {
        let u = x(3);
        let p = part(&u, "[{1},{2,3}]");
        let a = complete_algebra(&p).unwrap();
        assert_eq!(a.to_string(), "[{},{1},{2,3},{1,2,3}]");
        assert_eq!(partition_of_complete_algebra(&a).unwrap(), p);
        assert_eq!(complete_algebra(&Partition::discrete(&u)).unwrap(), SetClass::powerset(&u));
        for p in enumerate_partitions(&x(4)).unwrap() {
            assert_eq!(partition_of_complete_algebra(&complete_algebra(&p).unwrap()).unwrap(), p);
        }
        assert!(partition_of_complete_algebra(&parse_class(&u, "[∅,{1}]").unwrap()).is_err());
    }

    #[test]
    fn s_partition_examples() {
        let u = x(3);
        let s = Subset::full(&u);
        let t = parse_class(&u, "[∅,{1},{2},{3},{1,2,3}]").unwrap();
        let r = s_partitions(&t, &s).unwrap();
        let shown: Vec<String> = r.partitions.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["[{1,2,3}]", "[{1},{2},{3}]"]);
        let first = parse_class(&u, "[∅,{1},{2,3},{1,2,3}]").unwrap();
        let shown: Vec<String> = s_partitions(&first, &s).unwrap().partitions.iter().map(|p| p.to_string()).collect();
        assert_eq!(shown, vec!["[{1,2,3}]", "[{1},{2,3}]"]);
        let only = parse_class(&u, "[{1,2,3}]").unwrap();
        assert_eq!(s_partitions(&only, &s).unwrap().partitions.len(), 1);
        assert!(s_partitions(&only, &Subset::empty(&u)).is_err());
        let nonmult = parse_class(&u, "[{1,2},{2,3},{1,2,3}]").unwrap();
        assert!(s_partitions(&nonmult, &s).unwrap().warning.is_some());
    }

    #[test]
    fn lattice_of_three_points() {
        let l = partition_lattice(&x(3)).unwrap();
        assert_eq!(l.nodes.len(), 5);
        let edges: usize = l.nodes.iter().map(|n| n.covers.len()).sum();
        assert_eq!(edges, 6);
    }

    #[test]
    fn representatives_are_least_elements() {
        let u = x(4);
        assert_eq!(part(&u, "[{2,4},{1,3}]").representatives().to_string(), "{1,2}");
    }

    fn arb_partition(n: usize) -> impl Strategy<Value = Partition> {
        prop::collection::vec(0usize..n, n).prop_map(move |labels| {
            let u = x(n);
            let mut blocks = vec![0u32; n];
            for (p, &l) in labels.iter().enumerate() {
                blocks[l] |= 1 << p;
            }
            Partition::new(&u, blocks.into_iter().filter(|&b| b != 0).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn meet_is_greatest_lower_bound(a in arb_partition(6), b in arb_partition(6), c in arb_partition(6)) {
            let m = meet(&a, &b).unwrap();
            prop_assert!(refines(&m, &a).unwrap() && refines(&m, &b).unwrap());
            if refines(&c, &a).unwrap() && refines(&c, &b).unwrap() {
                prop_assert!(refines(&c, &m).unwrap());
            }
        }

        #[test]
        fn join_is_least_upper_bound(a in arb_partition(6), b in arb_partition(6), c in arb_partition(6)) {
            let j = join(&a, &b).unwrap();
            prop_assert!(refines(&a, &j).unwrap() && refines(&b, &j).unwrap());
            if refines(&a, &c).unwrap() && refines(&b, &c).unwrap() {
                prop_assert!(refines(&j, &c).unwrap());
            }
        }

        #[test]
        fn lattice_laws(a in arb_partition(7), b in arb_partition(7)) {
            prop_assert_eq!(meet(&a, &join(&a, &b).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(join(&a, &meet(&a, &b).unwrap()).unwrap(), a.clone());
            prop_assert_eq!(meet(&a, &b).unwrap(), meet(&b, &a).unwrap());
            prop_assert_eq!(join(&a, &b).unwrap(), join(&b, &a).unwrap());
        }

        #[test]
        fn cover_partition_is_coarsest_partitioning_each_member(
            ms in prop::collection::vec(1u32..32, 1..5),
            q in arb_partition(5),
        ) {
            let u = x(5);
            let cover = SetClass::from_masks(&u, ms).unwrap();
            let p = partition_from_class(&cover).unwrap();
            for &m in cover.masks() {
                prop_assert!(cover::is_coverable(m, p.blocks()));
            }
            let q = Partition::new(&u, q.blocks().to_vec()).unwrap();
            if cover.masks().iter().all(|&m| cover::is_coverable(m, q.blocks())) {
                prop_assert!(refines(&q, &p).unwrap());
            }
        }
    }
}
