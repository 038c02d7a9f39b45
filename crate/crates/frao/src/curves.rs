//! Closed-form curves joining two normal distributions.
//!
//! None of these is the true Fisher-Rao geodesic in general (that one has no
//! known closed form for different means), but each is cheap to evaluate and
//! known to hug it from somewhere useful:
//!
//! * [`CurveKind::LinearLambda`] — straight line in `(mu, Sigma)`;
//! * [`CurveKind::MixtureGeodesic`] — straight line in expectation
//!   coordinates (the mixture-family geodesic);
//! * [`CurveKind::ExponentialGeodesic`] — straight line in natural
//!   coordinates (harmonic covariance interpolation);
//! * [`CurveKind::EmMidCurve`] — the pointwise average of the previous two;
//! * [`CurveKind::ProjectedCO`] — the cone geodesic between the embedded
//!   endpoints, projected back onto the model at every parameter;
//! * [`CurveKind::UnivariateFR`] — the exact geodesic for `d = 1`, a
//!   semicircle in the `sqrt(2)`-stretched Poincare upper half-plane.
//!
//! All curves are normalized so `evaluate(0)` is the *first* endpoint and
//! `evaluate(1)` the second; formulas quoted with the opposite convention
//! are flipped here once, at construction, instead of at every call site.

use crate::embed::{co_embed, co_inverse, EmbeddedGaussian};
use crate::error::{Error, Result};
use crate::gaussian::Gaussian;
use crate::linalg::{sym_eigen, vec_add, vec_lerp, Matrix, SpdMatrix};

/// The six closed-form interpolation families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CurveKind {
    /// Linear interpolation of `(mu, Sigma)`.
    LinearLambda,
    /// Mixture-family geodesic: linear in `(mu, Sigma + mu mu')`.
    MixtureGeodesic,
    /// Exponential-family geodesic: harmonic covariance interpolation with
    /// precision-weighted means.
    ExponentialGeodesic,
    /// Arithmetic average of the mixture and exponential geodesics.
    EmMidCurve,
    /// Cone geodesic of the embedded endpoints, projected back pointwise.
    ProjectedCO,
    /// Exact univariate Fisher-Rao geodesic (dimension 1 only).
    UnivariateFR,
}

impl CurveKind {
    /// All kinds, in a fixed presentation order.
    pub const ALL: [CurveKind; 6] = [
        CurveKind::LinearLambda,
        CurveKind::MixtureGeodesic,
        CurveKind::ExponentialGeodesic,
        CurveKind::EmMidCurve,
        CurveKind::ProjectedCO,
        CurveKind::UnivariateFR,
    ];

    /// Stable lowercase name, used by the CLI and report keys.
    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::LinearLambda => "lambda",
            CurveKind::MixtureGeodesic => "mixture",
            CurveKind::ExponentialGeodesic => "exponential",
            CurveKind::EmMidCurve => "em-mid",
            CurveKind::ProjectedCO => "co",
            CurveKind::UnivariateFR => "univariate-fr",
        }
    }

    /// Parses the stable name back into a kind.
    pub fn from_name(s: &str) -> Option<CurveKind> {
        CurveKind::ALL.iter().copied().find(|k| k.name() == s)
    }
}

/// Per-kind data precomputed at construction so that dense sampling of the
/// curve does not refactorize anything.
#[derive(Debug, Clone)]
enum Prep {
    /// No precomputation needed.
    Direct,
    /// Exponential geodesic: precision matrices and precision-weighted means.
    Exponential {
        prec1: SpdMatrix,
        prec2: SpdMatrix,
        pm1: Vec<f64>,
        pm2: Vec<f64>,
    },
    /// Both legs of the em-average.
    EmMid(Box<(Curve, Curve)>),
    /// Cone geodesic `B diag(l_i^t) B'` of the embedded endpoints.
    Cone { basis: Matrix, eigs: Vec<f64> },
    /// Semicircle data: center, radius, endpoint angles; or a vertical
    /// segment in `(mu, sigma)` when the means coincide.
    Circle {
        c: f64,
        r: f64,
        theta1: f64,
        theta2: f64,
    },
    Vertical {
        mu: f64,
        sigma1: f64,
        sigma2: f64,
    },
}

/// A closed-form curve between two Gaussians, ready for dense evaluation.
#[derive(Debug, Clone)]
pub struct Curve {
    kind: CurveKind,
    n1: Gaussian,
    n2: Gaussian,
    prep: Prep,
}

impl Curve {
    /// Builds the curve of the given kind from `n1` (at `t = 0`) to `n2`
    /// (at `t = 1`).
    pub fn new(kind: CurveKind, n1: &Gaussian, n2: &Gaussian) -> Result<Curve> {
        if n1.dim() != n2.dim() {
            return Err(Error::DimensionMismatch {
                expected: n1.dim(),
                got: n2.dim(),
            });
        }
        let prep = match kind {
            CurveKind::LinearLambda | CurveKind::MixtureGeodesic => Prep::Direct,
            CurveKind::ExponentialGeodesic => Prep::Exponential {
                prec1: n1.cov().inverse(),
                prec2: n2.cov().inverse(),
                pm1: n1.cov().solve_vec(n1.mean()),
                pm2: n2.cov().solve_vec(n2.mean()),
            },
            CurveKind::EmMidCurve => Prep::EmMid(Box::new((
                Curve::new(CurveKind::MixtureGeodesic, n1, n2)?,
                Curve::new(CurveKind::ExponentialGeodesic, n1, n2)?,
            ))),
            CurveKind::ProjectedCO => {
                let (basis, eigs) = cone_geodesic_prep(&co_embed(n1), &co_embed(n2))?;
                Prep::Cone { basis, eigs }
            }
            CurveKind::UnivariateFR => {
                if n1.dim() != 1 {
                    return Err(Error::DimensionMismatch {
                        expected: 1,
                        got: n1.dim(),
                    });
                }
                univariate_prep(n1, n2)
            }
        };
        Ok(Curve {
            kind,
            n1: n1.clone(),
            n2: n2.clone(),
            prep,
        })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn endpoints(&self) -> (&Gaussian, &Gaussian) {
        (&self.n1, &self.n2)
    }

    /// Point of the curve at parameter `t` in `[0, 1]`.
    pub fn evaluate(&self, t: f64) -> Result<Gaussian> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParameter {
                name: "t",
                reason: "curve parameter must lie in [0, 1]",
            });
        }
        match (&self.kind, &self.prep) {
            (CurveKind::LinearLambda, _) => {
                let mean = vec_lerp(self.n1.mean(), self.n2.mean(), t);
                let cov = lerp_spd(self.n1.cov(), self.n2.cov(), t)?;
                Gaussian::new(mean, cov)
            }
            (CurveKind::MixtureGeodesic, _) => {
                // Linear in (mu, Sigma + mu mu'): interpolate the second
                // moments, then subtract the interpolated mean's outer square.
                let mean = vec_lerp(self.n1.mean(), self.n2.mean(), t);
                let m1 = Matrix::outer(self.n1.mean(), self.n1.mean());
                let m2 = Matrix::outer(self.n2.mean(), self.n2.mean());
                let second =
                    &(&(self.n1.cov().mat() + &m1).scale(1.0 - t)
                        + &(self.n2.cov().mat() + &m2).scale(t))
                        - &Matrix::outer(&mean, &mean);
                Gaussian::new(mean, SpdMatrix::new(second)?)
            }
            (CurveKind::ExponentialGeodesic, Prep::Exponential { prec1, prec2, pm1, pm2 }) => {
                // Linear in natural coordinates: harmonic covariance mean,
                // precision-weighted mean blend.
                let prec_t = &prec1.mat().scale(1.0 - t) + &prec2.mat().scale(t);
                let cov = SpdMatrix::new(prec_t)?.inverse();
                let blend = vec_add(&crate::linalg::vec_scale(1.0 - t, pm1), &crate::linalg::vec_scale(t, pm2));
                let mean = cov.mat().mul_vec(&blend);
                Gaussian::new(mean, cov)
            }
            (CurveKind::EmMidCurve, Prep::EmMid(legs)) => {
                let a = legs.0.evaluate(t)?;
                let b = legs.1.evaluate(t)?;
                let mean = vec_lerp(a.mean(), b.mean(), 0.5);
                let cov = lerp_spd(a.cov(), b.cov(), 0.5)?;
                Gaussian::new(mean, cov)
            }
            (CurveKind::ProjectedCO, Prep::Cone { basis, eigs }) => {
                let gamma = cone_geodesic_point(basis, eigs, t)?;
                // Projecting onto the embedded image and decoding is the
                // same as decoding directly: the projection only rescales
                // the matrix block that decoding divides out.
                co_inverse(&EmbeddedGaussian::new(gamma))
                    .map_err(|_| Error::ProjectionOutsideModel)
            }
            (CurveKind::UnivariateFR, Prep::Circle { c, r, theta1, theta2 }) => {
                let theta = (1.0 - t) * theta1 + t * theta2;
                let mu = f64::sqrt(2.0) * (c + r * theta.cos());
                let sigma = r * theta.sin();
                Gaussian::univariate(mu, sigma)
            }
            (CurveKind::UnivariateFR, Prep::Vertical { mu, sigma1, sigma2 }) => {
                Gaussian::univariate(*mu, (1.0 - t) * sigma1 + t * sigma2)
            }
            _ => unreachable!("prep matches kind by construction"),
        }
    }
}

/// Interpolates two SPD matrices linearly (convex combinations of SPD
/// matrices stay SPD for `t` in `[0, 1]`).
fn lerp_spd(a: &SpdMatrix, b: &SpdMatrix, t: f64) -> Result<SpdMatrix> {
    SpdMatrix::new(&a.mat().scale(1.0 - t) + &b.mat().scale(t))
}

/// Diagonalizes the cone geodesic between two embedded Gaussians:
/// `gamma(t) = B diag(l_i^t) B'` with `B = P1^{1/2} Q` and `(l_i, Q)` the
/// eigensystem of `P1^{-1/2} P2 P1^{-1/2}`.
pub(crate) fn cone_geodesic_prep(
    p1: &EmbeddedGaussian,
    p2: &EmbeddedGaussian,
) -> Result<(Matrix, Vec<f64>)> {
    let s = p1.matrix().sqrt()?;
    let w = p1.matrix().inv_sqrt()?;
    let eig = sym_eigen(&p2.matrix().mat().congruence(w.mat()))?;
    for (i, &l) in eig.values.iter().enumerate() {
        if !(l > 0.0) {
            return Err(Error::NotPositiveDefinite { pivot: l, index: i });
        }
    }
    Ok((s.mat() * &eig.vectors, eig.values))
}

/// Evaluates the diagonalized cone geodesic at `t`.
fn cone_geodesic_point(basis: &Matrix, eigs: &[f64], t: f64) -> Result<SpdMatrix> {
    let powed: Vec<f64> = eigs.iter().map(|l| l.powf(t)).collect();
    SpdMatrix::new(Matrix::from_diag(&powed).congruence(basis))
}

/// Semicircle (or vertical-segment) data for the univariate geodesic.
fn univariate_prep(n1: &Gaussian, n2: &Gaussian) -> Prep {
    let (mu1, mu2) = (n1.mean()[0], n2.mean()[0]);
    let (s1, s2) = (n1.cov().mat()[(0, 0)].sqrt(), n2.cov().mat()[(0, 0)].sqrt());
    if mu1 == mu2 {
        return Prep::Vertical {
            mu: mu1,
            sigma1: s1,
            sigma2: s2,
        };
    }
    // Work in the half-plane (mu/sqrt(2), sigma); the geodesic is the
    // circle through both endpoints centered on the horizontal axis.
    let c = (0.5 * (mu2 * mu2 - mu1 * mu1) + s2 * s2 - s1 * s1)
        / (f64::sqrt(2.0) * (mu2 - mu1));
    let x1 = mu1 / f64::sqrt(2.0) - c;
    let r = (x1 * x1 + s1 * s1).sqrt();
    // atan2 with positive sigma lands in (0, pi), which is exactly the
    // "add pi when the arctangent is negative" convention.
    let theta1 = s1.atan2(x1);
    let theta2 = s2.atan2(mu2 / f64::sqrt(2.0) - c);
    Prep::Circle {
        c,
        r,
        theta1,
        theta2,
    }
}

/// Point at parameter `t` of the exact univariate Fisher-Rao geodesic.
///
/// The trace runs along a semicircle centered on the horizontal axis of the
/// `(mu/sqrt(2), sigma)` half-plane, with the angle interpolated linearly;
/// equal means degenerate the circle into the vertical segment
/// `(mu, (1-t) sigma1 + t sigma2)`.
pub fn univariate_fr_geodesic(n1: &Gaussian, n2: &Gaussian, t: f64) -> Result<Gaussian> {
    Curve::new(CurveKind::UnivariateFR, n1, n2)?.evaluate(t)
}
