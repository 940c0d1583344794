//! Product universes `X × Y`, rectangles and sections, the rectangle classes
//! `S ⊠ T` and `S ⊗ T`, rectangle partitions and networks, projections, and
//! direct sums.
//!
//! A product universe is an ordinary [`Universe`] whose point `(x, y)` has
//! index `x * |Y| + y` and label `(x,y)`, so every class-level tool applies to
//! subsets of a product unchanged.

use std::sync::Arc;

use serde::Serialize;

use crate::bits;
use crate::error::{Error, Result};
use crate::ground::{same_universe, SetClass, Subset, Universe};
use crate::semiring;
use crate::setops::{self, OpCode};
use crate::structures;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductUniverse {
    x: Arc<Universe>,
    y: Arc<Universe>,
    product: Arc<Universe>,
}

impl ProductUniverse {
    pub fn new(x: &Arc<Universe>, y: &Arc<Universe>) -> Result<ProductUniverse> {
        let size = x.size() * y.size();
        if size > bits::MAX_POINTS {
            return Err(Error::cap("product universe size", size, bits::MAX_POINTS));
        }
        let labels = (0..x.size())
            .flat_map(|i| (0..y.size()).map(move |j| (i, j)))
            .map(|(i, j)| format!("({},{})", x.label(i), y.label(j)))
            .collect();
        let product = Universe::with_labels(format!("{}×{}", x.name(), y.name()), labels)?;
        Ok(ProductUniverse { x: x.clone(), y: y.clone(), product })
    }

    pub fn x(&self) -> &Arc<Universe> {
        &self.x
    }

    pub fn y(&self) -> &Arc<Universe> {
        &self.y
    }

    pub fn product(&self) -> &Arc<Universe> {
        &self.product
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.y.size() + j
    }

    /// Mask of `sx × ty`.
    pub fn rect_mask(&self, sx: u32, ty: u32) -> u32 {
        let mut m = 0;
        for i in bits::points(sx) {
            m |= ty << (i * self.y.size());
        }
        m
    }

    fn row(&self, e: u32, i: usize) -> u32 {
        (e >> (i * self.y.size())) & self.y.full_mask()
    }

    fn column(&self, e: u32, j: usize) -> u32 {
        (0..self.x.size()).filter(|&i| e >> self.index(i, j) & 1 == 1).fold(0, |acc, i| acc | 1 << i)
    }

    fn check(&self, e: &Subset) -> Result<()> {
        same_universe(&self.product, e.universe())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rectangle {
    pub x: Subset,
    pub y: Subset,
}

impl Rectangle {
    pub fn new(x: Subset, y: Subset) -> Rectangle {
        Rectangle { x, y }
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty() || self.y.is_empty()
    }

    pub fn embed(&self, pu: &ProductUniverse) -> Result<Subset> {
        same_universe(pu.x(), self.x.universe())?;
        same_universe(pu.y(), self.y.universe())?;
        Subset::new(pu.product(), pu.rect_mask(self.x.bits(), self.y.bits()))
    }
}

impl std::fmt::Display for Rectangle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}×{}", self.x, self.y)
    }
}

impl Serialize for Rectangle {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("Rectangle", 2)?;
        st.serialize_field("x", &self.x.labels())?;
        st.serialize_field("y", &self.y.labels())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sections {
    /// `E_x ⊆ Y` for each `x ∈ X`, in point order.
    pub vertical: Vec<Subset>,
    /// `E^y ⊆ X` for each `y ∈ Y`, in point order.
    pub horizontal: Vec<Subset>,
}

pub fn sections(pu: &ProductUniverse, e: &Subset) -> Result<Sections> {
    pu.check(e)?;
    let vertical = (0..pu.x.size()).map(|i| Subset::new(&pu.y, pu.row(e.bits(), i))).collect::<Result<_>>()?;
    let horizontal = (0..pu.y.size()).map(|j| Subset::new(&pu.x, pu.column(e.bits(), j))).collect::<Result<_>>()?;
    Ok(Sections { vertical, horizontal })
}

/// `{x : E_x ≠ ∅}`.
pub fn project(pu: &ProductUniverse, e: &Subset) -> Result<Subset> {
    pu.check(e)?;
    let m = (0..pu.x.size()).filter(|&i| pu.row(e.bits(), i) != 0).fold(0, |acc, i| acc | 1 << i);
    Subset::new(&pu.x, m)
}

/// `{y : E^y ≠ ∅}`.
pub fn project_y(pu: &ProductUniverse, e: &Subset) -> Result<Subset> {
    pu.check(e)?;
    let m = (0..pu.x.size()).fold(0, |acc, i| acc | pu.row(e.bits(), i));
    Subset::new(&pu.y, m)
}

fn check_factors(pu: &ProductUniverse, s: &SetClass, t: &SetClass, op: &'static str) -> Result<()> {
    if s.is_empty() || t.is_empty() {
        return Err(Error::EmptyClass { op });
    }
    same_universe(pu.x(), s.universe())?;
    same_universe(pu.y(), t.universe())
}

/// All rectangles `S × T` with `S ∈ s`, `T ∈ t`.
pub fn box_product(pu: &ProductUniverse, s: &SetClass, t: &SetClass) -> Result<SetClass> {
    check_factors(pu, s, t, "box_product")?;
    let masks = s.masks().iter().flat_map(|&a| t.masks().iter().map(move |&b| pu.rect_mask(a, b))).collect();
    Ok(SetClass::from_raw(pu.product(), masks))
}

/// Finite unions of rectangles; for two rings, the finite disjoint unions,
/// which then form a ring.
pub fn tensor_product(pu: &ProductUniverse, s: &SetClass, t: &SetClass) -> Result<SetClass> {
    let boxed = box_product(pu, s, t)?;
    if structures::is_ring(s) && structures::is_ring(t) {
        semiring::kol_ring(&boxed)
    } else {
        setops::apply(&boxed, OpCode::Unions)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RectPartitionReport {
    /// Direct check: the pieces are pairwise disjoint and cover `r`.
    pub partitions: bool,
    /// The union of the pieces is `r`.
    pub covers_rectangle: bool,
    /// The sides of the pieces cover the sides of `r`.
    pub covers_sides: bool,
    /// No two pieces meet in both coordinates.
    pub pairwise_disjoint: bool,
    pub criterion: bool,
    pub agree: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

pub fn is_rect_partition(pu: &ProductUniverse, r: &Rectangle, pieces: &[Rectangle]) -> Result<RectPartitionReport> {
    let rm = r.embed(pu)?;
    if rm.is_empty() {
        return Err(Error::precondition("is_rect_partition", "the rectangle must be nonempty"));
    }
    let mut masks = Vec::with_capacity(pieces.len());
    for p in pieces {
        let m = p.embed(pu)?;
        if m.is_empty() {
            return Err(Error::precondition("is_rect_partition", format!("piece {p} is empty")));
        }
        masks.push(m.bits());
    }
    let union = masks.iter().fold(0, |acc, &m| acc | m);
    let mut overlap = None;
    'outer: for i in 0..masks.len() {
        for j in i + 1..masks.len() {
            if masks[i] & masks[j] != 0 {
                overlap = Some((i, j));
                break 'outer;
            }
        }
    }
    let partitions = union == rm.bits() && overlap.is_none();

    let covers_rectangle = union == rm.bits();
    let sx = pieces.iter().fold(0, |acc, p| acc | p.x.bits());
    let ty = pieces.iter().fold(0, |acc, p| acc | p.y.bits());
    let covers_sides = sx == r.x.bits() && ty == r.y.bits();
    let mut side_overlap = None;
    'outer2: for k in 0..pieces.len() {
        for l in k + 1..pieces.len() {
            if pieces[k].x.bits() & pieces[l].x.bits() != 0 && pieces[k].y.bits() & pieces[l].y.bits() != 0 {
                side_overlap = Some((k, l));
                break 'outer2;
            }
        }
    }
    let pairwise_disjoint = side_overlap.is_none();
    let criterion = covers_rectangle && covers_sides && pairwise_disjoint;

    let witness = if let Some((k, l)) = side_overlap {
        Some(format!("{} and {} overlap", pieces[k], pieces[l]))
    } else if !covers_rectangle {
        let missing = rm.bits() & !union;
        let extra = union & !rm.bits();
        Some(if missing != 0 {
            format!("points {} are not covered", crate::ground::format_mask(pu.product(), missing))
        } else {
            format!("points {} lie outside the rectangle", crate::ground::format_mask(pu.product(), extra))
        })
    } else if !covers_sides {
        Some("the piece sides do not cover the sides of the rectangle".into())
    } else {
        None
    };
    Ok(RectPartitionReport {
        partitions,
        covers_rectangle,
        covers_sides,
        pairwise_disjoint,
        criterion,
        agree: partitions == criterion,
        witness,
    })
}

/// The side projections of the pieces partition the sides of `r`
/// (repeated sides allowed).
pub fn is_network(r: &Rectangle, pieces: &[Rectangle]) -> bool {
    fn partitions_side(side: u32, parts: &mut Vec<u32>) -> bool {
        parts.sort_unstable();
        parts.dedup();
        let mut seen = 0u32;
        for &p in parts.iter() {
            if p == 0 || p & seen != 0 {
                return false;
            }
            seen |= p;
        }
        seen == side
    }
    let mut xs: Vec<u32> = pieces.iter().map(|p| p.x.bits()).collect();
    let mut ys: Vec<u32> = pieces.iter().map(|p| p.y.bits()).collect();
    partitions_side(r.x.bits(), &mut xs) && partitions_side(r.y.bits(), &mut ys)
}

/// Grid refinement of a rectangle partition: `x1 ~ x2` when every column
/// agrees, whose classes are the intersections of the x-sides containing a
/// point; likewise for `y`. The products of the classes form a network.
pub fn network_refine(pu: &ProductUniverse, r: &Rectangle, partition: &[Rectangle]) -> Result<Vec<Rectangle>> {
    let report = is_rect_partition(pu, r, partition)?;
    if !report.partitions {
        return Err(Error::precondition(
            "network_refine",
            format!("the pieces do not partition {r}: {}", report.witness.unwrap_or_default()),
        ));
    }
    let classes = |side: u32, sides: Vec<u32>| -> Vec<u32> {
        let mut out: Vec<u32> = bits::points(side)
            .map(|p| sides.iter().filter(|&&s| s >> p & 1 == 1).fold(side, |acc, &s| acc & s))
            .collect();
        out.sort_unstable_by_key(|c| c.trailing_zeros());
        out.dedup();
        out
    };
    let xs = classes(r.x.bits(), partition.iter().map(|p| p.x.bits()).collect());
    let ys = classes(r.y.bits(), partition.iter().map(|p| p.y.bits()).collect());
    let mut out = Vec::with_capacity(xs.len() * ys.len());
    for &a in &xs {
        for &b in &ys {
            out.push(Rectangle::new(Subset::new(pu.x(), a)?, Subset::new(pu.y(), b)?));
        }
    }
    Ok(out)
}

/// A tagged union of several universes and the direct sum of one class on
/// each: `{S : S ∩ X_i ∈ S_i for all i}`.
#[derive(Debug, Clone)]
pub struct DirectSum {
    pub universe: Arc<Universe>,
    /// Mask of each summand's points inside the sum.
    pub parts: Vec<u32>,
    pub class: SetClass,
}

pub fn direct_sum(classes: &[SetClass]) -> Result<DirectSum> {
    if classes.is_empty() {
        return Err(Error::precondition("direct_sum", "at least one summand is needed"));
    }
    let total: usize = classes.iter().map(|c| c.universe().size()).sum();
    if total > bits::MAX_POINTS {
        return Err(Error::cap("direct sum size", total, bits::MAX_POINTS));
    }
    let mut labels = Vec::with_capacity(total);
    let mut parts = Vec::with_capacity(classes.len());
    let mut offset = 0;
    for (i, c) in classes.iter().enumerate() {
        let u = c.universe();
        for p in 0..u.size() {
            labels.push(format!("{}:{}", i + 1, u.label(p)));
        }
        parts.push(bits::full(u.size()) << offset);
        offset += u.size();
    }
    let name = classes.iter().map(|c| c.universe().name()).collect::<Vec<_>>().join("⊕");
    let universe = Universe::with_labels(name, labels)?;
    let mut acc = vec![0u32];
    let mut offset = 0;
    for c in classes {
        acc = acc.iter().flat_map(|&a| c.masks().iter().map(move |&m| a | (m << offset))).collect();
        offset += c.universe().size();
    }
    let class = SetClass::from_raw(&universe, acc);
    Ok(DirectSum { universe, parts, class })
}
