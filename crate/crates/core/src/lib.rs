//! Curvature, isoperimetry, growth and spectral estimates for locally
//! tessellating planar graphs.
//!
//! Infinite host graphs are always handled through finite [`Truncation`]s
//! (combinatorial balls with interior flags). Counts and curvatures are exact
//! rationals; floating point is used only for logarithms, square roots and
//! eigenvalue solves.

pub mod curvature;
pub mod error;
pub mod format;
pub mod generators;
pub mod growth;
pub mod host;
pub mod isoperimetry;
pub mod map;
pub mod rational;
pub mod report;
pub mod spectrum;
pub mod subset;
pub mod truncation;
pub mod verify;

pub use error::{Error, Result};
pub use host::{CurvatureRegime, Family, HostDescriptor};
pub use map::{FaceId, HalfEdge, PlanarMap, VertexId};
pub use rational::{FaceDegree, Rational};
pub use truncation::{FaceKind, Truncation};
