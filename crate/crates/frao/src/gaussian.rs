//! Multivariate normal distributions as points of a statistical model.
//!
//! A normal `N(mu, Sigma)` is used in three coordinate systems:
//!
//! * the ordinary parameters `(mu, Sigma)` — the [`Gaussian`] type;
//! * natural (exponential-family) coordinates `theta = (Sigma^{-1} mu,
//!   Sigma^{-1}/2)` — [`NaturalParam`];
//! * expectation (moment) coordinates `eta = (mu, -Sigma - mu mu')` —
//!   [`ExpectationParam`].
//!
//! The log-normalizer `F` is convex in `theta`, its Legendre dual `F*` lives
//! on the `eta` side, and Kullback-Leibler divergence between two normals is
//! the Bregman divergence of `F` with the arguments swapped. Those identities
//! are cheap to state and to test, so they double as correctness checks for
//! each coordinate conversion.

use crate::error::{Error, Result};
use crate::linalg::{dot, vec_scale, vec_sub, Matrix, SpdMatrix};

use std::f64::consts::PI;

/// A nondegenerate multivariate normal distribution.
#[derive(Debug, Clone)]
pub struct Gaussian {
    mean: Vec<f64>,
    cov: SpdMatrix,
}

impl Gaussian {
    /// Builds a normal from a mean vector and a positive-definite covariance
    /// of matching dimension.
    pub fn new(mean: Vec<f64>, cov: SpdMatrix) -> Result<Self> {
        if mean.len() != cov.dim() {
            return Err(Error::DimensionMismatch {
                expected: cov.dim(),
                got: mean.len(),
            });
        }
        if !mean.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite { context: "mean vector" });
        }
        Ok(Gaussian { mean, cov })
    }

    /// Standard normal `N(0, I)` in `d` dimensions.
    pub fn standard(d: usize) -> Self {
        Gaussian {
            mean: vec![0.0; d],
            cov: SpdMatrix::identity(d),
        }
    }

    /// Univariate normal from mean and *standard deviation*.
    pub fn univariate(mu: f64, sigma: f64) -> Result<Self> {
        if !(sigma > 0.0) {
            return Err(Error::InvalidParameter {
                name: "sigma",
                reason: "standard deviation must be positive",
            });
        }
        Gaussian::new(vec![mu], SpdMatrix::from_diag(&[sigma * sigma])?)
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &[f64] {
        &self.mean
    }

    pub fn cov(&self) -> &SpdMatrix {
        &self.cov
    }

    /// Largest deviation in mean or covariance entries from another normal.
    pub fn max_abs_diff(&self, other: &Gaussian) -> f64 {
        let dm = self
            .mean
            .iter()
            .zip(&other.mean)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
        dm.max(self.cov.mat().max_abs_diff(other.cov.mat()))
    }

    /// Image under the affine map `x -> A x + a`, which sends `N(mu, Sigma)`
    /// to `N(A mu + a, A Sigma A')`. Fails if `A Sigma A'` is singular
    /// (i.e. `A` is not invertible).
    pub fn affine_image(&self, a_mat: &Matrix, shift: &[f64]) -> Result<Gaussian> {
        let mean = crate::linalg::vec_add(&a_mat.mul_vec(&self.mean), shift);
        let cov = SpdMatrix::new(self.cov.mat().congruence(a_mat))?;
        Gaussian::new(mean, cov)
    }
}

/// Natural (exponential-family) coordinates of a normal.
#[derive(Debug, Clone)]
pub struct NaturalParam {
    theta_v: Vec<f64>,
    theta_m: SpdMatrix,
}

impl NaturalParam {
    /// Builds natural coordinates; `theta_m` must be positive-definite,
    /// which the type of the argument already guarantees.
    pub fn new(theta_v: Vec<f64>, theta_m: SpdMatrix) -> Result<Self> {
        if theta_v.len() != theta_m.dim() {
            return Err(Error::DimensionMismatch {
                expected: theta_m.dim(),
                got: theta_v.len(),
            });
        }
        Ok(NaturalParam { theta_v, theta_m })
    }

    pub fn theta_v(&self) -> &[f64] {
        &self.theta_v
    }

    pub fn theta_m(&self) -> &SpdMatrix {
        &self.theta_m
    }

    pub fn dim(&self) -> usize {
        self.theta_v.len()
    }
}

/// Expectation (moment) coordinates of a normal.
#[derive(Debug, Clone)]
pub struct ExpectationParam {
    eta_v: Vec<f64>,
    eta_m: Matrix,
}

impl ExpectationParam {
    /// Builds expectation coordinates, checking that they describe an actual
    /// normal: `-eta_m - eta_v eta_v'` must be positive-definite.
    pub fn new(eta_v: Vec<f64>, eta_m: Matrix) -> Result<Self> {
        if eta_v.len() != eta_m.dim() {
            return Err(Error::DimensionMismatch {
                expected: eta_m.dim(),
                got: eta_v.len(),
            });
        }
        let eta_m = eta_m.symmetrized()?;
        let implied_cov = &eta_m.scale(-1.0) - &Matrix::outer(&eta_v, &eta_v);
        if SpdMatrix::new(implied_cov).is_err() {
            return Err(Error::InvalidExpectationParam);
        }
        Ok(ExpectationParam { eta_v, eta_m })
    }

    pub fn eta_v(&self) -> &[f64] {
        &self.eta_v
    }

    pub fn eta_m(&self) -> &Matrix {
        &self.eta_m
    }

    pub fn dim(&self) -> usize {
        self.eta_v.len()
    }
}

/// An infinitesimal move `(d_mu, d_sigma)` on the manifold of normals.
#[derive(Debug, Clone)]
pub struct TangentDisplacement {
    d_mu: Vec<f64>,
    d_sigma: Matrix,
}

impl TangentDisplacement {
    /// Builds a displacement; `d_sigma` must be symmetric.
    pub fn new(d_mu: Vec<f64>, d_sigma: Matrix) -> Result<Self> {
        let d_sigma = d_sigma.symmetrized()?;
        if d_mu.len() != d_sigma.dim() {
            return Err(Error::DimensionMismatch {
                expected: d_sigma.dim(),
                got: d_mu.len(),
            });
        }
        Ok(TangentDisplacement { d_mu, d_sigma })
    }

    pub fn d_mu(&self) -> &[f64] {
        &self.d_mu
    }

    pub fn d_sigma(&self) -> &Matrix {
        &self.d_sigma
    }
}

// ---------------------------------------------------------------------------
// coordinate conversions
// ---------------------------------------------------------------------------

/// Natural coordinates `(Sigma^{-1} mu, Sigma^{-1}/2)` of a normal.
pub fn to_natural(n: &Gaussian) -> NaturalParam {
    let theta_v = n.cov().solve_vec(n.mean());
    let theta_m = n.cov().inverse().scale_spd(0.5);
    NaturalParam { theta_v, theta_m }
}

/// Normal with the given natural coordinates: `Sigma = theta_m^{-1}/2`,
/// `mu = Sigma theta_v`.
pub fn from_natural(theta: &NaturalParam) -> Gaussian {
    let cov = theta.theta_m.inverse().scale_spd(0.5);
    let mean = cov.mat().mul_vec(&theta.theta_v);
    Gaussian { mean, cov }
}

/// Expectation coordinates `(mu, -Sigma - mu mu')` of a normal.
pub fn to_expectation(n: &Gaussian) -> ExpectationParam {
    let outer = Matrix::outer(n.mean(), n.mean());
    let eta_m = (n.cov().mat() + &outer).scale(-1.0);
    ExpectationParam {
        eta_v: n.mean().to_vec(),
        eta_m,
    }
}

/// Normal with the given expectation coordinates:
/// `Sigma = -eta_m - eta_v eta_v'`, `mu = eta_v`.
pub fn from_expectation(eta: &ExpectationParam) -> Result<Gaussian> {
    let implied = &eta.eta_m.scale(-1.0) - &Matrix::outer(&eta.eta_v, &eta.eta_v);
    let cov = SpdMatrix::new(implied).map_err(|_| Error::InvalidExpectationParam)?;
    Gaussian::new(eta.eta_v.clone(), cov)
}

// ---------------------------------------------------------------------------
// potentials and divergences
// ---------------------------------------------------------------------------

/// Log-normalizer (cumulant function) of the normal family in natural
/// coordinates:
/// `F(theta) = (d log pi - log|theta_m| + theta_v' theta_m^{-1} theta_v / 2) / 2`.
pub fn log_normalizer(theta: &NaturalParam) -> f64 {
    let d = theta.dim() as f64;
    0.5 * (d * PI.ln() - theta.theta_m.log_det() + 0.5 * theta.theta_m.inv_quad_form(&theta.theta_v))
}

/// Legendre dual of the log-normalizer, evaluated in expectation
/// coordinates:
/// `F*(eta) = -(log(1 + eta_v' eta_m^{-1} eta_v) + log|-eta_m| + d log(2 pi e)) / 2`.
pub fn dual_potential(eta: &ExpectationParam) -> Result<f64> {
    let d = eta.dim() as f64;
    // -eta_m = Sigma + mu mu' is positive-definite for any valid eta.
    let neg_m = SpdMatrix::new(eta.eta_m.scale(-1.0)).map_err(|_| Error::InvalidExpectationParam)?;
    // eta_v' eta_m^{-1} eta_v = -eta_v' (-eta_m)^{-1} eta_v
    let quad = -neg_m.inv_quad_form(&eta.eta_v);
    let arg = 1.0 + quad;
    if !(arg > 0.0) {
        return Err(Error::InvalidExpectationParam);
    }
    Ok(-0.5 * (arg.ln() + neg_m.log_det() + d * (2.0 * PI * std::f64::consts::E).ln()))
}

/// Duality pairing `<theta, eta> = theta_v . eta_v + tr(theta_m eta_m)`.
fn pairing(theta: &NaturalParam, eta: &ExpectationParam) -> f64 {
    let mut tr = 0.0;
    let n = theta.dim();
    let tm = theta.theta_m.mat();
    for i in 0..n {
        for j in 0..n {
            tr += tm[(i, j)] * eta.eta_m[(j, i)];
        }
    }
    dot(&theta.theta_v, &eta.eta_v) + tr
}

/// Kullback-Leibler divergence `KL(N1 : N2)` in closed form:
/// `(tr(S2^{-1} S1) + dmu' S2^{-1} dmu - d + log(|S2|/|S1|)) / 2`.
pub fn kl(n1: &Gaussian, n2: &Gaussian) -> Result<f64> {
    if n1.dim() != n2.dim() {
        return Err(Error::DimensionMismatch {
            expected: n1.dim(),
            got: n2.dim(),
        });
    }
    let d = n1.dim() as f64;
    let ratio = n2.cov().solve_mat(n1.cov().mat());
    let dmu = vec_sub(n2.mean(), n1.mean());
    Ok(0.5
        * (ratio.trace() + n2.cov().inv_quad_form(&dmu) - d + n2.cov().log_det()
            - n1.cov().log_det()))
}

/// Jeffreys divergence `KL(N1:N2) + KL(N2:N1)`, in the determinant-free form
/// `tr(S2^{-1} S1 + S1^{-1} S2 - 2I)/2 + dmu' (S1^{-1} + S2^{-1}) dmu / 2`.
pub fn jeffreys(n1: &Gaussian, n2: &Gaussian) -> Result<f64> {
    if n1.dim() != n2.dim() {
        return Err(Error::DimensionMismatch {
            expected: n1.dim(),
            got: n2.dim(),
        });
    }
    let d = n1.dim() as f64;
    let r12 = n2.cov().solve_mat(n1.cov().mat());
    let r21 = n1.cov().solve_mat(n2.cov().mat());
    let dmu = vec_sub(n2.mean(), n1.mean());
    Ok(0.5 * (r12.trace() + r21.trace() - 2.0 * d)
        + 0.5 * (n1.cov().inv_quad_form(&dmu) + n2.cov().inv_quad_form(&dmu)))
}

/// Bregman divergence of the log-normalizer:
/// `B(theta1 : theta2) = F(theta1) - F(theta2) - <theta1 - theta2, grad F(theta2)>`.
///
/// With the arguments swapped this reproduces KL: `kl(N1, N2) =
/// bregman(theta(N2), theta(N1))`.
pub fn bregman(theta1: &NaturalParam, theta2: &NaturalParam) -> Result<f64> {
    if theta1.dim() != theta2.dim() {
        return Err(Error::DimensionMismatch {
            expected: theta1.dim(),
            got: theta2.dim(),
        });
    }
    // grad F(theta2) is the expectation parameter of the same normal.
    let eta2 = to_expectation(&from_natural(theta2));
    let mut inner = dot(&vec_sub(&theta1.theta_v, &theta2.theta_v), &eta2.eta_v);
    let dm = theta1.theta_m.mat() - theta2.theta_m.mat();
    let n = theta1.dim();
    for i in 0..n {
        for j in 0..n {
            inner += dm[(i, j)] * eta2.eta_m[(j, i)];
        }
    }
    Ok(log_normalizer(theta1) - log_normalizer(theta2) - inner)
}

/// Fenchel-Young divergence in mixed coordinates:
/// `Y(theta1 ; eta2) = F(theta1) + F*(eta2) - <theta1, eta2>`.
///
/// Equals `bregman(theta1, theta2)` when `eta2` are the expectation
/// coordinates of the same normal as `theta2`, and vanishes when the two
/// arguments describe the same distribution.
pub fn fenchel_young(theta1: &NaturalParam, eta2: &ExpectationParam) -> Result<f64> {
    if theta1.dim() != eta2.dim() {
        return Err(Error::DimensionMismatch {
            expected: theta1.dim(),
            got: eta2.dim(),
        });
    }
    Ok(log_normalizer(theta1) + dual_potential(eta2)? - pairing(theta1, eta2))
}

/// Mahalanobis distance between two means under a common covariance:
/// `sqrt((mu2 - mu1)' Sigma^{-1} (mu2 - mu1))`.
pub fn mahalanobis(mu1: &[f64], mu2: &[f64], sigma: &SpdMatrix) -> Result<f64> {
    if mu1.len() != mu2.len() {
        return Err(Error::DimensionMismatch {
            expected: mu1.len(),
            got: mu2.len(),
        });
    }
    if mu1.len() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: sigma.dim(),
            got: mu1.len(),
        });
    }
    Ok(sigma.inv_quad_form(&vec_sub(mu2, mu1)).sqrt())
}

/// Squared line element of the Fisher information metric at `n`:
/// `ds^2 = d_mu' Sigma^{-1} d_mu + tr((Sigma^{-1} d_sigma)^2) / 2`.
pub fn fisher_ds2(n: &Gaussian, disp: &TangentDisplacement) -> Result<f64> {
    if disp.d_mu.len() != n.dim() {
        return Err(Error::DimensionMismatch {
            expected: n.dim(),
            got: disp.d_mu.len(),
        });
    }
    let m = n.cov().solve_mat(&disp.d_sigma);
    let k = n.dim();
    let mut tr_m2 = 0.0;
    for i in 0..k {
        for j in 0..k {
            tr_m2 += m[(i, j)] * m[(j, i)];
        }
    }
    Ok(n.cov().inv_quad_form(&disp.d_mu) + 0.5 * tr_m2)
}

/// Displacement from `n1` to `n2`, scaled by `c`.
pub fn displacement_between(n1: &Gaussian, n2: &Gaussian, c: f64) -> Result<TangentDisplacement> {
    TangentDisplacement::new(
        vec_scale(c, &vec_sub(n2.mean(), n1.mean())),
        (n2.cov().mat() - n1.cov().mat()).scale(c),
    )
}
