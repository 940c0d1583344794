//! Rings of sets as Boolean rings: ideals and prime ideals, quotients by an
//! ideal, the canonical map onto the powerset of the atoms, the finite Stone
//! space, and the complementation duality between ideals and filters.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::bits;
use crate::error::{Error, Result};
use crate::ground::{same_universe, SetClass, Subset};
use crate::structures::{self, require_ring};

/// Largest ring accepted by the exhaustive procedures here.
pub const MAX_RING_SIZE: usize = 256;

fn require_small_ring(op: &'static str, ring: &SetClass) -> Result<()> {
    require_ring(op, ring)?;
    if ring.len() > MAX_RING_SIZE {
        return Err(Error::cap("ring size", ring.len(), MAX_RING_SIZE));
    }
    Ok(())
}

/// A ring of sets read as a Boolean ring: `+` is `Δ`, `·` is `∩`, `0` is `∅`.
#[derive(Debug, Clone)]
pub struct BooleanRingView {
    carrier: SetClass,
    unit: Option<u32>,
}

impl BooleanRingView {
    pub fn new(ring: &SetClass) -> Result<BooleanRingView> {
        require_ring("boolean_ring", ring)?;
        let u = ring.union_mask();
        Ok(BooleanRingView { carrier: ring.clone(), unit: ring.contains_mask(u).then_some(u) })
    }

    pub fn carrier(&self) -> &SetClass {
        &self.carrier
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn unit(&self) -> Option<Subset> {
        self.unit.map(|m| Subset::from_raw(self.carrier.universe(), m))
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a & b
    }

    /// Checks every Boolean-ring law on all members, returning the first
    /// violated law.
    pub fn check_axioms(&self) -> std::result::Result<(), String> {
        let ms = self.carrier.masks();
        let inside = |m: u32| self.carrier.contains_mask(m);
        let fm = |m: u32| self.carrier.format_mask(m);
        for &a in ms {
            if self.add(a, a) != 0 {
                return Err(format!("{} + {} ≠ 0", fm(a), fm(a)));
            }
            if self.mul(a, a) != a {
                return Err(format!("{} · {} ≠ {}", fm(a), fm(a), fm(a)));
            }
            if self.add(a, 0) != a {
                return Err(format!("0 is not neutral for {}", fm(a)));
            }
            if let Some(e) = self.unit {
                if self.mul(a, e) != a {
                    return Err(format!("the unit is not neutral for {}", fm(a)));
                }
            }
            for &b in ms {
                if !inside(self.add(a, b)) || !inside(self.mul(a, b)) {
                    return Err(format!("{} and {} are not closed under + and ·", fm(a), fm(b)));
                }
                if self.add(a, b) != self.add(b, a) || self.mul(a, b) != self.mul(b, a) {
                    return Err(format!("{} and {} do not commute", fm(a), fm(b)));
                }
                for &c in ms {
                    if self.add(self.add(a, b), c) != self.add(a, self.add(b, c))
                        || self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c))
                    {
                        return Err(format!("associativity fails at {}, {}, {}", fm(a), fm(b), fm(c)));
                    }
                    if self.mul(a, self.add(b, c)) != self.add(self.mul(a, b), self.mul(a, c)) {
                        return Err(format!("distributivity fails at {}, {}, {}", fm(a), fm(b), fm(c)));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Every ideal of a finite ring is the down-set of its union; this lists
/// them, one per member, in canonical order of the generator.
pub fn ideals(ring: &SetClass) -> Result<Vec<SetClass>> {
    require_small_ring("ideals", ring)?;
    Ok(ring.masks().iter().map(|&top| down_set(ring, top)).collect())
}

fn down_set(ring: &SetClass, top: u32) -> SetClass {
    let ms = ring.masks().iter().copied().filter(|&s| bits::is_subset(s, top)).collect();
    SetClass::from_sorted(ring.universe(), ms)
}

/// The prime ideals, found by testing every ideal for primality and
/// properness. They are listed in the order of the atom each one omits, so
/// for a powerset the `k`-th prime is the ideal of sets missing point `k`.
pub fn primes(ring: &SetClass) -> Result<Vec<SetClass>> {
    let mut out = Vec::new();
    for ideal in ideals(ring)? {
        let report = structures::ideal_classify(ring, &ideal)?;
        if report.is_prime.holds {
            out.push(ideal);
        }
    }
    let atoms = structures::atoms(ring)?;
    out.sort_by_key(|p| atoms.masks().iter().position(|&a| !p.contains_mask(a)));
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuotientRing {
    /// Equivalence classes `S + I`, ordered by their least representative.
    pub cosets: Vec<SetClass>,
    /// `add[i][j]` is the index of `cosets[i] + cosets[j]`.
    pub add: Vec<Vec<usize>>,
    pub mul: Vec<Vec<usize>>,
    pub zero: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unit: Option<usize>,
    /// The ring of sets `{S − ∪I : S ∈ ring}`, one member per coset, in coset
    /// order; an isomorphic copy of the quotient inside the powerset.
    pub embedding: Vec<Subset>,
}

impl QuotientRing {
    pub fn len(&self) -> usize {
        self.cosets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cosets.is_empty()
    }
}

pub fn quotient(ring: &SetClass, ideal: &SetClass) -> Result<QuotientRing> {
    require_small_ring("quotient", ring)?;
    let report = structures::ideal_classify(ring, ideal)?;
    if !report.is_ideal.holds {
        let why = report.is_ideal.witness.map(|w| w.detail).unwrap_or_default();
        return Err(Error::precondition("quotient", format!("{ideal} is not an ideal: {why}")));
    }
    let im = ideal.masks();
    let mut index: BTreeMap<u32, usize> = BTreeMap::new();
    let mut cosets: Vec<Vec<u32>> = Vec::new();
    for &s in ring.masks() {
        if index.contains_key(&s) {
            continue;
        }
        let mut coset: Vec<u32> = im.iter().map(|&i| s ^ i).collect();
        bits::canonical(&mut coset);
        for &m in &coset {
            index.insert(m, cosets.len());
        }
        cosets.push(coset);
    }
    let table = |f: fn(u32, u32) -> u32| -> Result<Vec<Vec<usize>>> {
        let mut t = vec![vec![0; cosets.len()]; cosets.len()];
        for (i, ci) in cosets.iter().enumerate() {
            for (j, cj) in cosets.iter().enumerate() {
                let k = index[&f(ci[0], cj[0])];
                if ci.iter().any(|&a| cj.iter().any(|&b| index[&f(a, b)] != k)) {
                    return Err(Error::precondition("quotient", "the operations are not well defined on the cosets"));
                }
                t[i][j] = k;
            }
        }
        Ok(t)
    };
    let add = table(|a, b| a ^ b)?;
    let mul = table(|a, b| a & b)?;
    let unit = (0..cosets.len()).find(|&e| (0..cosets.len()).all(|j| mul[e][j] == j));
    let top = ideal.union_mask();
    let u = ring.universe();
    let embedding = cosets.iter().map(|c| Subset::from_raw(u, c[0] & !top)).collect();
    Ok(QuotientRing {
        zero: index[&0],
        cosets: cosets.into_iter().map(|c| SetClass::from_sorted(u, c)).collect(),
        add,
        mul,
        unit,
        embedding,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomImage {
    pub member: Subset,
    /// Indices (0-based) of the atoms contained in the member.
    pub atoms: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomIso {
    pub atoms: SetClass,
    pub map: Vec<AtomImage>,
    pub atomic: bool,
    pub complete: bool,
    pub injective: bool,
    pub surjective: bool,
    pub preserves_unions: bool,
    pub preserves_intersections: bool,
    pub complete_isomorphism: bool,
    pub note: &'static str,
}

/// `φ(S)` as a bitset over the atom indices.
fn phi(atoms: &[u32], s: u32) -> u32 {
    atoms.iter().enumerate().filter(|&(_, &a)| bits::is_subset(a, s)).fold(0, |acc, (i, _)| acc | 1 << i)
}

pub fn atom_iso(ring: &SetClass) -> Result<AtomIso> {
    require_small_ring("atom_iso", ring)?;
    let atoms = structures::atoms(ring)?;
    let am = atoms.masks();
    let images: Vec<u32> = ring.masks().iter().map(|&s| phi(am, s)).collect();
    let mut distinct = images.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let injective = distinct.len() == images.len();
    let surjective = am.len() < 32 && distinct.len() as u64 == 1u64 << am.len();
    let atomic = ring.masks().iter().all(|&s| s == 0 || am.iter().any(|&a| bits::is_subset(a, s)));
    let complete = ring.contains_mask(ring.union_mask());
    let ms = ring.masks();
    let mut preserves_unions = phi(am, ring.union_mask()) == images.iter().fold(0, |acc, &i| acc | i);
    let mut preserves_intersections = true;
    for (i, &a) in ms.iter().enumerate() {
        for (j, &b) in ms.iter().enumerate() {
            preserves_unions &= phi(am, a | b) == images[i] | images[j];
            preserves_intersections &= phi(am, a & b) == images[i] & images[j];
        }
    }
    let u = ring.universe();
    let map = ms
        .iter()
        .zip(&images)
        .map(|(&s, &img)| AtomImage { member: Subset::from_raw(u, s), atoms: bits::points(img).collect() })
        .collect();
    Ok(AtomIso {
        complete_isomorphism: injective && surjective && preserves_unions && preserves_intersections,
        atoms,
        map,
        atomic,
        complete,
        injective,
        surjective,
        preserves_unions,
        preserves_intersections,
        note: "every finite ring is atomic and complete, so φ is always a complete isomorphism here",
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StoneSpace {
    ring: SetClass,
    /// The prime ideals.
    pub points: Vec<SetClass>,
    /// For each ring member `f`, the bitset of points `p` with `f ∉ p`.
    basis: Vec<(u32, u32)>,
}

impl StoneSpace {
    pub fn ring(&self) -> &SetClass {
        &self.ring
    }

    /// `A_f` as point indices (0-based).
    pub fn basic_open(&self, f: &Subset) -> Option<Vec<usize>> {
        self.basis.iter().find(|&&(m, _)| m == f.bits()).map(|&(_, pts)| bits::points(pts).collect())
    }

    pub fn basis_masks(&self) -> &[(u32, u32)] {
        &self.basis
    }

    /// Graphviz rendering: one node per point, labelled with the members
    /// whose basic open set contains it. The space is discrete, so there are
    /// no edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph stone {\n  node [shape=circle];\n");
        for (i, p) in self.points.iter().enumerate() {
            let opens: Vec<String> = self
                .basis
                .iter()
                .filter(|&&(_, pts)| pts >> i & 1 == 1)
                .map(|&(m, _)| self.ring.format_mask(m))
                .collect();
            out.push_str(&format!("  p{} [label=\"p{}\\n{}\\nin A_f for {}\"];\n", i + 1, i + 1, p, opens.join(" ")));
        }
        out.push_str("}\n");
        out
    }
}

impl Serialize for StoneSpace {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let basis: BTreeMap<String, Vec<usize>> = self
            .basis
            .iter()
            .map(|&(m, pts)| (self.ring.format_mask(m), bits::points(pts).map(|p| p + 1).collect()))
            .collect();
        let mut st = serializer.serialize_struct("StoneSpace", 2)?;
        st.serialize_field("points", &self.points)?;
        st.serialize_field("basis", &basis)?;
        st.end()
    }
}

pub fn stone(ring: &SetClass) -> Result<StoneSpace> {
    let points = primes(ring)?;
    if points.len() > 32 {
        return Err(Error::cap("spectrum size", points.len(), 32));
    }
    let basis = ring
        .masks()
        .iter()
        .map(|&f| {
            let pts =
                points.iter().enumerate().filter(|(_, p)| !p.contains_mask(f)).fold(0, |acc, (i, _)| acc | 1 << i);
            (f, pts)
        })
        .collect();
    Ok(StoneSpace { ring: ring.clone(), points, basis })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualityReport {
    pub points: usize,
    pub ring_size: usize,
    /// `|ring| = 2^points`.
    pub size_matches: bool,
    pub basis_injective: bool,
    /// `A_{f Δ g} = A_f Δ A_g` and `A_{f ∩ g} = A_f ∩ A_g`.
    pub homomorphism: bool,
    /// Stands in for compactness of the spectrum.
    pub has_unit: bool,
    /// Size of the ring of open compact sets of the spectrum, i.e. all its
    /// subsets.
    pub reconstructed_size: usize,
    pub isomorphic: bool,
}

pub fn duality_check(ring: &SetClass) -> Result<DualityReport> {
    let space = stone(ring)?;
    let n = space.points.len();
    let opens: Vec<u32> = space.basis.iter().map(|&(_, p)| p).collect();
    let mut distinct = opens.clone();
    distinct.sort_unstable();
    distinct.dedup();
    let basis_injective = distinct.len() == opens.len();
    let lookup: BTreeMap<u32, u32> = space.basis.iter().copied().collect();
    let mut homomorphism = true;
    for &(f, af) in &space.basis {
        for &(g, ag) in &space.basis {
            homomorphism &= lookup[&(f ^ g)] == af ^ ag && lookup[&(f & g)] == af & ag;
        }
    }
    let reconstructed_size = 1usize << n;
    let surjective = distinct.len() == reconstructed_size;
    let has_unit = ring.contains_mask(ring.union_mask());
    Ok(DualityReport {
        points: n,
        ring_size: ring.len(),
        size_matches: ring.len() == reconstructed_size,
        basis_injective,
        homomorphism,
        has_unit,
        reconstructed_size,
        isomorphic: has_unit && basis_injective && surjective && homomorphism,
    })
}

/// A ring homomorphism `Φ` between finite rings induces a map of spectra
/// `q ↦ Φ⁻¹(q)` exactly when `Φ(source) ⊄ q` for every prime `q` of the
/// target. Returns whether `map` is a homomorphism with that property.
pub fn is_spectral_morphism(source: &SetClass, target: &SetClass, map: impl Fn(u32) -> u32) -> Result<bool> {
    require_small_ring("is_spectral_morphism", source)?;
    require_small_ring("is_spectral_morphism", target)?;
    let ms = source.masks();
    for &a in ms {
        if !target.contains_mask(map(a)) {
            return Ok(false);
        }
        for &b in ms {
            if map(a ^ b) != map(a) ^ map(b) || map(a & b) != map(a) & map(b) {
                return Ok(false);
            }
        }
    }
    let qs = primes(target)?;
    Ok(qs.iter().all(|q| ms.iter().any(|&a| !q.contains_mask(map(a)))))
}

fn require_unit(op: &'static str, ring: &SetClass) -> Result<u32> {
    require_small_ring(op, ring)?;
    let u = ring.union_mask();
    if !ring.contains_mask(u) {
        return Err(Error::precondition(op, format!("{ring} has no unit")));
    }
    Ok(u)
}

/// `{U − I : I ∈ ideal}` for the unit `U` of the ring.
pub fn filter_ideal_dual(ring: &SetClass, ideal: &SetClass) -> Result<SetClass> {
    let u = require_unit("filter_ideal_dual", ring)?;
    let report = structures::ideal_classify(ring, ideal)?;
    if !report.is_ideal.holds {
        return Err(Error::precondition("filter_ideal_dual", format!("{ideal} is not an ideal")));
    }
    Ok(complement_in(ring, ideal, u))
}

/// Inverse of [`filter_ideal_dual`]: the ideal `{U − F : F ∈ filter}`.
pub fn ideal_from_filter(ring: &SetClass, filter: &SetClass) -> Result<SetClass> {
    let u = require_unit("ideal_from_filter", ring)?;
    same_universe(ring.universe(), filter.universe())?;
    let ok = !filter.is_empty()
        && filter.masks().iter().all(|&f| ring.contains_mask(f))
        && filter.masks().iter().all(|&f| filter.masks().iter().all(|&g| filter.contains_mask(f & g)))
        && ring
            .masks()
            .iter()
            .all(|&s| !filter.masks().iter().any(|&f| bits::is_subset(f, s)) || filter.contains_mask(s));
    if !ok {
        return Err(Error::precondition("ideal_from_filter", format!("{filter} is not a filter of the ring")));
    }
    Ok(complement_in(ring, filter, u))
}

fn complement_in(ring: &SetClass, class: &SetClass, u: u32) -> SetClass {
    SetClass::from_raw(ring.universe(), class.masks().iter().map(|&m| u & !m).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ground::{parse_class, Universe};
    use std::sync::Arc;

    fn uni(n: usize) -> Arc<Universe> {
        Universe::new("X", n).unwrap()
    }

    fn class(n: usize, text: &str) -> SetClass {
        parse_class(&uni(n), text).unwrap()
    }

    /// All rings of subsets of an `n`-point universe, by brute force.
    fn all_rings(n: usize) -> Vec<SetClass> {
        let u = uni(n);
        let total = 1usize << n;
        (0u64..1 << (total - 1))
            .map(|pick| {
                let ms = (1..total as u32).filter(|m| pick >> (m - 1) & 1 == 1).chain([0]).collect();
                SetClass::from_masks(&u, ms).unwrap()
            })
            .filter(structures::is_ring)
            .collect()
    }

    /// Ideals by brute force over all subclasses.
    fn brute_ideals(ring: &SetClass) -> Vec<SetClass> {
        let ms = ring.masks();
        let mut out: Vec<SetClass> = (0u64..1 << ms.len())
            .map(|pick| {
                let sub = ms.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, &m)| m).collect();
                SetClass::from_masks(ring.universe(), sub).unwrap()
            })
            .filter(|c| structures::ideal_classify(ring, c).unwrap().is_ideal.holds)
            .collect();
        out.sort_by(|a, b| a.masks().cmp(b.masks()));
        out
    }

    #[test]
    fn prime_examples() {
        let p = primes(&class(2, "[∅,{1},{2},{1,2}]")).unwrap();
        let shown: Vec<String> = p.iter().map(|c| c.to_string()).collect();
        assert_eq!(shown, vec!["[{},{2}]", "[{},{1}]"]);
        assert!(primes(&class(2, "[∅]")).unwrap().is_empty());
        assert_eq!(primes(&class(3, "[∅,{1,2},{3},{1,2,3}]")).unwrap().len(), 2);
    }

    #[test]
    fn quotient_examples() {
        let ring = class(2, "[∅,{1},{2},{1,2}]");
        let q = quotient(&ring, &class(2, "[∅,{1}]")).unwrap();
        assert_eq!(q.len(), 2);
        assert_eq!(q.cosets[1].to_string(), "[{2},{1,2}]");
        assert_eq!(q.add[1][1], q.zero);
        assert_eq!(q.unit, Some(1));
        let same = quotient(&ring, &class(2, "[∅]")).unwrap();
        assert_eq!(same.len(), 4);
        let one = quotient(&ring, &ring).unwrap();
        assert_eq!(one.len(), 1);
        assert_eq!(one.unit, Some(0));
        assert!(quotient(&ring, &class(2, "[∅,{1,2}]")).is_err());
    }

    #[test]
    fn atom_iso_examples() {
        let ring = class(3, "[∅,{1},{2,3},{1,2,3}]");
        let iso = atom_iso(&ring).unwrap();
        assert!(iso.injective && iso.surjective && iso.complete_isomorphism);
        assert_eq!(iso.atoms.to_string(), "[{1},{2,3}]");
        let p = atom_iso(&SetClass::powerset(&uni(3))).unwrap();
        assert!(p.complete_isomorphism && p.atoms.len() == 3);
        assert!(p.map.iter().all(|im| im.atoms.len() == im.member.len()));
    }

    #[test]
    fn stone_examples() {
        let ring = SetClass::powerset(&uni(3));
        let space = stone(&ring).unwrap();
        assert_eq!(space.points.len(), 3);
        let d = duality_check(&ring).unwrap();
        assert!(d.isomorphic && d.size_matches && d.reconstructed_size == 8);
        let nounit = duality_check(&class(2, "[∅,{1}]")).unwrap();
        assert_eq!(nounit.points, 1);
        assert!(nounit.has_unit);
        let json = serde_json::to_string(&stone(&class(2, "[∅,{1},{2},{1,2}]")).unwrap()).unwrap();
        assert_eq!(json, r#"{"points":[[[],["2"]],[[],["1"]]],"basis":{"{1,2}":[1,2],"{1}":[1],"{2}":[2],"{}":[]}}"#);
        let dot = stone(&class(2, "[∅,{1},{2},{1,2}]")).unwrap().to_dot();
        assert_eq!(dot.matches("[label").count(), 2);
        assert!(!dot.contains("--"));
    }

    #[test]
    fn dual_examples() {
        let ring = class(2, "[∅,{1},{2},{1,2}]");
        let f = filter_ideal_dual(&ring, &class(2, "[∅,{1}]")).unwrap();
        assert_eq!(f.to_string(), "[{2},{1,2}]");
        assert_eq!(filter_ideal_dual(&ring, &class(2, "[∅]")).unwrap().to_string(), "[{1,2}]");
        let p1 = class(2, "[∅,{2}]");
        let uf = filter_ideal_dual(&ring, &p1).unwrap();
        assert!(structures::is_ultrafilter(&uf));
        assert_eq!(uf, structures::ultrafilters(ring.universe())[0]);
        assert_eq!(ideal_from_filter(&ring, &uf).unwrap(), p1);
    }

    #[test]
    fn spectral_morphisms() {
        let a = SetClass::powerset(&uni(2));
        assert!(is_spectral_morphism(&a, &a, |m| m).unwrap());
        assert!(!is_spectral_morphism(&a, &a, |m| m & 1).unwrap());
    }

    #[test]
    fn exhaustive_small_rings() {
        for n in 1..=3 {
            for ring in all_rings(n) {
                let view = BooleanRingView::new(&ring).unwrap();
                assert_eq!(view.check_axioms(), Ok(()), "{ring}");

                let mut listed = ideals(&ring).unwrap();
                listed.sort_by(|a, b| a.masks().cmp(b.masks()));
                assert_eq!(listed, brute_ideals(&ring), "{ring}");

                let ps = primes(&ring).unwrap();
                assert_eq!(ps.len(), structures::atoms(&ring).unwrap().len());
                for ideal in &listed {
                    let rep = structures::ideal_classify(&ring, ideal).unwrap();
                    assert_eq!(rep.is_prime.holds, rep.is_maximal.holds, "{ring} {ideal}");
                    if rep.is_proper.holds {
                        assert!(ps.iter().any(|p| ideal.is_subclass_of(p).unwrap()));
                    }
                    let above: Vec<&SetClass> = ps.iter().filter(|p| ideal.is_subclass_of(p).unwrap()).collect();
                    let meet = above.iter().fold(ring.clone(), |acc, p| acc.intersection(p).unwrap());
                    assert_eq!(&meet, ideal, "{ring} {ideal}");

                    let q = quotient(&ring, ideal).unwrap();
                    assert_eq!(q.len() * ideal.len(), ring.len());
                    let emb = SetClass::canonicalize(ring.universe(), &q.embedding).unwrap();
                    assert_eq!(emb.len(), q.len());
                    assert!(structures::is_ring(&emb));

                    let f = filter_ideal_dual(&ring, ideal).unwrap();
                    assert_eq!(&ideal_from_filter(&ring, &f).unwrap(), ideal);
                    for other in &listed {
                        let g = filter_ideal_dual(&ring, other).unwrap();
                        assert_eq!(ideal.is_subclass_of(other).unwrap(), f.is_subclass_of(&g).unwrap());
                    }
                }
                assert!(atom_iso(&ring).unwrap().complete_isomorphism);
                let d = duality_check(&ring).unwrap();
                assert!(d.isomorphic && d.size_matches, "{ring}");
                assert_eq!(ring.len(), 1 << d.points);
            }
        }
    }

    #[test]
    fn round_trip_on_four_points() {
        for ring in all_rings(4) {
            let d = duality_check(&ring).unwrap();
            assert!(d.isomorphic, "{ring}");
        }
    }
}
