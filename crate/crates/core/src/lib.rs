//! Robin Laplacian eigenvalues for balls, spherical shells and axisymmetric
//! domains, together with the parallel-coordinate reduction that compares
//! them.

pub mod axisym;
pub mod boundary;
pub mod domain;
pub mod error;
pub mod extrapolate;
pub mod geometry;
pub mod linalg;
pub mod quadrature;
pub mod radial;
pub mod reduction;
pub mod roots;
pub mod secular;

pub use boundary::BoundaryParameter;
pub use error::{Error, Result};
