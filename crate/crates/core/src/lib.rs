//! Finite-universe algebra of set classes.
//!
//! Subsets of a universe of at most 24 points are bit strings; classes are
//! sorted duplicate-free lists of them. On top of that the crate provides the
//! subscript operators (`S_s`, `S_d`, `S_r`, `S_c`, ...), decision procedures
//! for lattices, semirings, rings, Dynkin classes and filters, least-fixpoint
//! generation with the Borel-style `B` hierarchy, the partition lattice, the
//! constructive semiring lemmas, rectangles in product universes, finite Stone
//! duality, the base-3 encoding of set sequences, and a finite Ramsey search.
//! [`script`] runs line-oriented sessions over all of it.

pub mod bits;
pub mod cover;
pub mod encode;
pub mod error;
pub mod generate;
pub mod ground;
pub mod partitions;
pub mod products;
pub mod ramsey;
pub mod script;
pub mod semiring;
pub mod setops;
pub mod stone;
pub mod structures;

pub use error::{Error, Result};
pub use ground::{SetClass, SetSeq, Subset, SubsetOp, Universe};
