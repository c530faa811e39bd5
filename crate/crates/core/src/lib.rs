//! Finite racks and quandles: component metrics, inner automorphism groups,
//! exact rack/quandle cohomology, and free quandles.
//!
//! The data-parallel loops (differential assembly, elimination steps, BFS
//! frontiers, cochain averaging) run through [`exec::Exec`]; build without
//! the default `parallel` feature for a purely sequential library.

pub mod cohomology;
pub mod error;
pub mod exec;
pub mod freequandle;
pub mod geometry;
pub mod group;
pub mod io;
pub mod perm;
pub mod rack;
pub mod ratlinalg;

pub use cohomology::{BettiReport, Cochain, Cohomology, Theory};
pub use error::{Error, ErrorClass, Result};
pub use exec::Exec;
pub use freequandle::{FQElement, FreeWord};
pub use geometry::{components, ComponentDecomposition, RackMetric};
pub use group::{inner_group, NormTable, PermGroup, Subgroup};
pub use perm::Permutation;
pub use rack::{CosetRackSpec, FiniteRack};
pub use ratlinalg::{Rational, RationalMatrix};
