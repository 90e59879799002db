//! Exact polytope, toric and lattice-point computations for polygon spaces,
//! weight varieties and Gelfand-Tsetlin slices.

pub mod battery;
pub mod ehrhart;
pub mod error;
pub mod exact;
pub mod json;
pub mod polytope;
pub mod toric;
pub mod weights;

pub use error::{Error, Result};
pub use exact::{LatticeVector, Matrix, Rational, Vector};
pub use polytope::{AffineMap, HPolytope, Halfspace, VPolytope};
pub use weights::{ChartedSlice, GtSpec, SideData};
