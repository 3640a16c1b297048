//! Exact slope stability for representations of finite acyclic quivers.
//!
//! The crate decides slope-(semi)stability of dimension vectors over Dynkin
//! and Euclidean quivers and computes, for a Euclidean quiver and an integer
//! weight θ, the set of slopes of semistable representations: either the
//! exact finite set with witnesses, or a certified infinite family.
//!
//! All arithmetic is exact.

pub mod cli;
pub mod error;
#[allow(clippy::needless_range_loop)]
mod linalg;
pub mod oracle;
pub mod quiver;
pub mod roots;
pub mod slope_set;
pub mod stability;
pub mod tubes;

pub use error::{Error, Result};
pub use quiver::{parse_quiver, DimVector, Direction, Quiver, QuiverType, Series};
pub use roots::{BaseRoots, RootClass};
pub use slope_set::{compute_slope_set, Certificate, MuDeltaCase, SlopeSetReport, Verdict};
pub use stability::{Slope, StabilityVerdict, Status, Weight};
pub use tubes::{Tube, TubeSystem};
