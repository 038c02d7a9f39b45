//! Embeddings of the Gaussian manifold into larger positive-definite cones.
//!
//! A `d`-dimensional normal `N(mu, Sigma)` can be coded as the
//! `(d+1) x (d+1)` positive-definite matrix
//!
//! ```text
//! f_beta(mu, Sigma) = [ Sigma + beta mu mu'   beta mu ]
//!                     [ beta mu'              beta    ]
//! ```
//!
//! For `beta = 1` this embedding is determinant-preserving and turns the
//! cone distance (scaled by `1/sqrt(2)`) into a *lower bound* on the
//! Fisher-Rao distance that is exact on equal-mean pairs. The embedded image
//! is not totally geodesic, so cone geodesics drift off it; the orthogonal
//! projection back onto the image and the size of that drift are what the
//! curve and center algorithms lean on.
//!
//! A second, determinant-normalized embedding into the unit-determinant cone
//! yields the Killing distance, implemented here as printed (with its free
//! scale factor `kappa`).

use crate::error::{Error, Result};
use crate::gaussian::Gaussian;
use crate::linalg::{sym_eigen, Matrix, SpdMatrix};
use crate::spd::whitened_log_eigs;

/// A Gaussian coded as a positive-definite matrix of one higher dimension.
#[derive(Debug, Clone)]
pub struct EmbeddedGaussian {
    matrix: SpdMatrix,
    beta: f64,
}

impl EmbeddedGaussian {
    /// Wraps an SPD matrix as an embedded Gaussian, reading `beta` off the
    /// bottom-right entry (positive for any SPD matrix). The Schur
    /// complement of that entry is the recovered covariance; positive
    /// definiteness of the input guarantees it is a valid one.
    pub fn new(matrix: SpdMatrix) -> Self {
        let d1 = matrix.dim();
        let beta = matrix.mat()[(d1 - 1, d1 - 1)];
        EmbeddedGaussian { matrix, beta }
    }

    /// The full `(d+1) x (d+1)` positive-definite matrix.
    pub fn matrix(&self) -> &SpdMatrix {
        &self.matrix
    }

    /// The embedding scale, stored in the bottom-right entry.
    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Dimension of the Gaussian this matrix encodes (`matrix dim - 1`).
    pub fn gaussian_dim(&self) -> usize {
        self.matrix.dim() - 1
    }
}

/// Embedding matrix `f_beta(mu, Sigma)` for a general positive scale.
pub fn co_embed_with(n: &Gaussian, beta: f64) -> Result<EmbeddedGaussian> {
    if !(beta > 0.0) || !beta.is_finite() {
        return Err(Error::InvalidParameter {
            name: "beta",
            reason: "embedding scale must be positive and finite",
        });
    }
    let d = n.dim();
    let mut m = Matrix::zeros(d + 1, d + 1);
    for i in 0..d {
        for j in 0..d {
            m[(i, j)] = n.cov().mat()[(i, j)] + beta * n.mean()[i] * n.mean()[j];
        }
        m[(i, d)] = beta * n.mean()[i];
        m[(d, i)] = beta * n.mean()[i];
    }
    m[(d, d)] = beta;
    Ok(EmbeddedGaussian {
        matrix: SpdMatrix::new(m).expect("f_beta of a valid Gaussian is positive-definite"),
        beta,
    })
}

/// Standard (`beta = 1`) embedding; its determinant equals `|Sigma|`.
pub fn co_embed(n: &Gaussian) -> EmbeddedGaussian {
    co_embed_with(n, 1.0).expect("beta = 1 is always valid")
}

/// Decodes an embedded Gaussian back to `(mu, Sigma)`:
/// `mu` is the last column over `beta`, `Sigma` the Schur complement
/// `A - beta mu mu'`.
pub fn co_inverse(p: &EmbeddedGaussian) -> Result<Gaussian> {
    let d = p.gaussian_dim();
    let m = p.matrix.mat();
    let beta = p.beta;
    let mu: Vec<f64> = (0..d).map(|i| m[(i, d)] / beta).collect();
    let sigma = Matrix::from_fn(d, d, |i, j| m[(i, j)] - beta * mu[i] * mu[j]);
    Gaussian::new(mu, SpdMatrix::new(sigma)?)
}

/// Result of projecting a cone point onto the embedded Gaussian image.
#[derive(Debug, Clone)]
pub struct Projection {
    /// Nearest point of the embedded image, always with `beta = 1`.
    pub projected: EmbeddedGaussian,
    /// Cone distance from the input to the image: `|log beta| / sqrt(2)`.
    pub defect: f64,
}

/// Orthogonal projection of an arbitrary `(d+1) x (d+1)` SPD matrix onto
/// the `beta = 1` embedded image.
///
/// Reads `beta` from the bottom-right entry, decodes `(mu, Sigma)` exactly
/// as [`co_inverse`] does, and re-embeds at scale 1. The projection defect
/// `|log beta| / sqrt(2)` measures how far the input sits from the image;
/// it is the error term the projected-curve approximations carry around.
pub fn co_project(p: &SpdMatrix) -> Result<Projection> {
    let emb = EmbeddedGaussian::new(p.clone());
    let n = co_inverse(&emb).map_err(|_| Error::ProjectionOutsideModel)?;
    Ok(Projection {
        projected: co_embed(&n),
        defect: emb.beta.ln().abs() / f64::sqrt(2.0),
    })
}

/// Embedding lower bound on the Fisher-Rao distance:
/// `sqrt( (1/2) sum_i log^2 lambda_i(P1bar^{-1} P2bar) )`
/// over the `beta = 1` embedding matrices.
///
/// Exact on pairs with equal means; a strict lower bound otherwise.
pub fn co_distance(n1: &Gaussian, n2: &Gaussian) -> Result<f64> {
    if n1.dim() != n2.dim() {
        return Err(Error::DimensionMismatch {
            expected: n1.dim(),
            got: n2.dim(),
        });
    }
    let p1 = co_embed(n1);
    let p2 = co_embed(n2);
    let logs = whitened_log_eigs(p1.matrix(), p2.matrix())?;
    Ok((0.5 * logs.iter().map(|l| l * l).sum::<f64>()).sqrt())
}

/// Closed form of the embedding distance for equal-covariance pairs, as a
/// function of the Mahalanobis separation: `arccosh(1 + delta^2 / 2)`.
pub fn co_same_cov(delta: f64) -> Result<f64> {
    if delta < 0.0 {
        return Err(Error::NegativeInput { value: delta });
    }
    Ok(crate::linalg::arccosh(1.0 + 0.5 * delta * delta))
}

/// Determinant-normalized embedding `|Sigma|^{-1/(d+1)} f_1(mu, Sigma)`,
/// landing in the unit-determinant slice of the cone.
pub fn sspd_embed(n: &Gaussian) -> SpdMatrix {
    let emb = co_embed(n);
    let d1 = emb.matrix().dim() as f64;
    // |f_1| = |Sigma|, so the scale factor is exp(-log|Sigma| / (d+1)).
    let c = (-n.cov().log_det() / d1).exp();
    emb.matrix().scale_spd(c)
}

/// Killing-form distance between two Gaussians through the
/// unit-determinant embedding:
/// `sqrt( kappa sum_i log^2 lambda_i( L1^{-1} P2 L1^{-T} ) )`,
/// where `P1, P2` are the normalized embeddings and `L1` is the Cholesky
/// factor of `P1` (unit determinant, so `L1` has unit determinant too).
///
/// `kappa` is the free positive scale of the Killing form; no single value
/// makes this an isometry, so it is a parameter.
pub fn killing_distance(n1: &Gaussian, n2: &Gaussian, kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::InvalidParameter {
            name: "kappa",
            reason: "killing scale must be positive",
        });
    }
    if n1.dim() != n2.dim() {
        return Err(Error::DimensionMismatch {
            expected: n1.dim(),
            got: n2.dim(),
        });
    }
    let p1 = sspd_embed(n1);
    let p2 = sspd_embed(n2);
    // M = L1^{-1} P2 L1^{-T}: two triangular solves against the cached factor.
    let l1 = p1.chol();
    let d1 = l1.dim();
    let linv = lower_tri_inverse(l1);
    let m = p2.mat().congruence(&linv);
    let eig = sym_eigen(&m)?;
    let mut sum = 0.0;
    for (i, &l) in eig.values.iter().enumerate() {
        if !(l > 0.0) {
            return Err(Error::NotPositiveDefinite { pivot: l, index: i });
        }
        let g = l.ln();
        sum += g * g;
    }
    debug_assert_eq!(eig.values.len(), d1);
    Ok((kappa * sum).sqrt())
}

/// Explicit inverse of a lower-triangular matrix by forward substitution.
fn lower_tri_inverse(l: &Matrix) -> Matrix {
    let n = l.dim();
    let mut inv = Matrix::zeros(n, n);
    for j in 0..n {
        inv[(j, j)] = 1.0 / l[(j, j)];
        for i in (j + 1)..n {
            let mut s = 0.0;
            for k in j..i {
                s -= l[(i, k)] * inv[(k, j)];
            }
            inv[(i, j)] = s / l[(i, i)];
        }
    }
    inv
}

/// Killing distance restricted to equal-mean pairs, in closed form:
/// `sqrt( kappa (sum_i log^2 l_i - (sum_i log l_i)^2 / (d+1)) )`
/// over the eigenvalues `l_i` of `Sigma1^{-1} Sigma2`.
///
/// This is the equal-mean reduction of [`killing_distance`]: the
/// determinant normalization recenters the log-eigenvalues by their mean
/// over the `d+1` embedding dimensions, which produces the quadratic
/// correction term.
pub fn killing_same_mean(n1: &Gaussian, n2: &Gaussian, kappa: f64) -> Result<f64> {
    if !(kappa > 0.0) {
        return Err(Error::InvalidParameter {
            name: "kappa",
            reason: "killing scale must be positive",
        });
    }
    let dev = n1
        .mean()
        .iter()
        .zip(n2.mean())
        .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
    let scale = n1.mean().iter().fold(1.0f64, |m, x| m.max(x.abs()));
    if dev > 1e-9 * scale {
        return Err(Error::MeanMismatch { max_deviation: dev });
    }
    let logs = whitened_log_eigs(n1.cov(), n2.cov())?;
    let q: f64 = logs.iter().map(|l| l * l).sum();
    let s: f64 = logs.iter().sum();
    let d1 = (n1.dim() + 1) as f64;
    // Rounding can push the variance-like bracket a hair below zero when
    // Sigma1 == Sigma2; clamp, since it is a sum of squares analytically.
    Ok((kappa * (q - s * s / d1)).max(0.0).sqrt())
}
