//! Fisher-Rao geometry of multivariate normal distributions.
//!
//! The Fisher information metric turns the family of `d`-dimensional normal
//! distributions into a Riemannian manifold. Its geodesic distance has no
//! closed form in general, so this crate provides the pieces that *are*
//! exact — equal-mean and equal-cover special cases, the univariate formula,
//! curved-space embeddings — together with tight computable bounds, guided
//! curve discretizations that squeeze the two sides together, and minimax
//! center solvers built on the same machinery.
//!
//! Modules are layered bottom-up:
//!
//! * [`linalg`] — dense symmetric solvers (Cholesky, Jacobi eigenvalues,
//!   triangular factorizations, complex spectra).
//! * [`gaussian`] — the distribution type, its exponential-family
//!   coordinates, divergences, and the Fisher metric tensor.
//! * [`spd`] — the positive-definite cone: affine-invariant distance,
//!   geodesics, Hilbert projective metric, and the Siegel upper half-space.
//! * [`embed`] — isometric and near-isometric embeddings of the Gaussian
//!   manifold into larger positive-definite cones.
//! * [`curves`] — interpolation curves joining two Gaussians.
//! * [`distance`] — exact distances, upper/lower bounds, and curve-length
//!   approximations of the Fisher-Rao distance.
//! * [`center`] — smallest enclosing balls and k-center clustering.
//! * [`sampling`] — reproducible random problem instances and the curve
//!   calibration protocol built on them.

pub mod center;
pub mod curves;
pub mod distance;
pub mod embed;
pub mod error;
pub mod gaussian;
pub mod linalg;
pub mod sampling;
pub mod spd;

pub use error::{Error, Result};
pub use gaussian::Gaussian;
pub use linalg::{Matrix, SpdMatrix};
