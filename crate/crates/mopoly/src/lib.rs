//! Marked posets and marked order polyhedra.
//!
//! The combinatorial side (posets, markings, face partitions) and the
//! geometric side (H-representations, vertices, Minkowski summands,
//! conditional polyhedra) are developed together and cross-checked by an
//! independent exact-rational oracle. See the `examples/` directory for a
//! tour of the capabilities.

pub mod cli;
pub mod conditional;
pub mod document;
pub mod error;
pub mod geometry;
pub mod marked;
pub mod oracle;
pub mod partition;
pub mod poset;
pub mod rational;
pub mod sampling;

pub use conditional::{LinearConditions, TilingMap};
pub use error::{Error, Result};
pub use geometry::{HPolyhedron, RationalPoint};
pub use marked::{MarkedPoset, MarkedPosetMap};
pub use partition::{FaceLattice, Partition};
pub use poset::Poset;
pub use rational::Rat;
