//! Exact index computations for n-valued vector fields on combinatorial
//! closed surfaces and circles.
//!
//! The crate computes local indices of n-valued nowhere-zero sections of
//! discrete rank-1 and rank-2 vector bundles, traces the canonical n-fold
//! cover determined by such a field, constructs the resolving branched cover,
//! and verifies the index-sum identities (integer and mod-2) with exact
//! rational arithmetic throughout.

pub mod bundle;
pub mod complex;
pub mod cover;
pub mod degree;
pub mod field;
pub mod gen;
pub mod index;
pub mod io;
pub mod svg;
pub mod turn;

pub use turn::{shortest_lift, winding, SampledLoop, Turn, TurnClass, TurnError};
