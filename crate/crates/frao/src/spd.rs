//! Geometry of the positive-definite cone and the Siegel upper half-space.
//!
//! The affine-invariant distance on symmetric positive-definite matrices is
//! the workhorse of the whole crate: several Gaussian distances reduce to it
//! exactly, and the embedding approximations push everything through it. The
//! Siegel upper half-space (complex symmetric matrices with positive-definite
//! imaginary part) supplies an alternative embedding whose distance is a
//! matrix cross-ratio formula; it is implemented verbatim, including the
//! eigenvalue cleanup its derivation calls for.

use crate::error::{Error, Result};
use crate::gaussian::Gaussian;
use crate::linalg::{complex_eigenvalues, sym_eigen, Matrix, SpdMatrix};
use num_complex::Complex64;

/// Affine-invariant Riemannian distance on the SPD cone:
/// `sqrt(sum_i log^2 lambda_i(P1^{-1} P2))`.
///
/// The eigenvalues are taken from the symmetric similar matrix
/// `P1^{-1/2} P2 P1^{-1/2}` rather than from the unsymmetric product
/// `P1^{-1} P2`, which keeps them provably real and lets the symmetric
/// eigensolver do the work.
pub fn rho_spd(p1: &SpdMatrix, p2: &SpdMatrix) -> Result<f64> {
    Ok(whitened_log_eigs(p1, p2)?.iter().map(|l| l * l).sum::<f64>().sqrt())
}

/// Logs of the eigenvalues of `P1^{-1/2} P2 P1^{-1/2}`, in non-increasing
/// order of the eigenvalues. Shared by the distance functions on the cone.
pub fn whitened_log_eigs(p1: &SpdMatrix, p2: &SpdMatrix) -> Result<Vec<f64>> {
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch {
            expected: p1.dim(),
            got: p2.dim(),
        });
    }
    let w = p1.inv_sqrt()?;
    let m = p2.mat().congruence(w.mat());
    let eig = sym_eigen(&m)?;
    eig.values
        .iter()
        .enumerate()
        .map(|(i, &l)| {
            if l > 0.0 {
                Ok(l.ln())
            } else {
                Err(Error::NotPositiveDefinite { pivot: l, index: i })
            }
        })
        .collect()
}

/// Point at parameter `t` on the Riemannian geodesic from `P1` to `P2`:
/// `P1^{1/2} (P1^{-1/2} P2 P1^{-1/2})^t P1^{1/2}`.
///
/// `t` is not clamped — values outside `[0,1]` extrapolate the geodesic,
/// which stays inside the cone for every real `t`.
pub fn spd_geodesic(p1: &SpdMatrix, p2: &SpdMatrix, t: f64) -> Result<SpdMatrix> {
    if p1.dim() != p2.dim() {
        return Err(Error::DimensionMismatch {
            expected: p1.dim(),
            got: p2.dim(),
        });
    }
    let s = p1.sqrt()?;
    let w = p1.inv_sqrt()?;
    let mid = SpdMatrix::new(p2.mat().congruence(w.mat()))?;
    let powed = mid.pow(t)?;
    SpdMatrix::new(powed.mat().congruence(s.mat()))
}

/// Hilbert projective distance on the cone:
/// `log(lambda_max / lambda_min)` of `P1^{-1} P2`.
///
/// Invariant under separate positive rescaling of either argument, so it is
/// a metric between *rays* of the cone, not points.
pub fn hilbert_projective(p1: &SpdMatrix, p2: &SpdMatrix) -> Result<f64> {
    let logs = whitened_log_eigs(p1, p2)?;
    // logs are sorted non-increasing.
    Ok(logs[0] - logs[logs.len() - 1])
}

// ---------------------------------------------------------------------------
// Siegel upper half-space
// ---------------------------------------------------------------------------

/// A point `Z = X + iY` of the Siegel upper half-space: `X` symmetric,
/// `Y` positive-definite.
#[derive(Debug, Clone)]
pub struct SiegelPoint {
    x: Matrix,
    y: SpdMatrix,
}

impl SiegelPoint {
    pub fn new(x: Matrix, y: SpdMatrix) -> Result<Self> {
        let x = x.symmetrized()?;
        if x.dim() != y.dim() {
            return Err(Error::DimensionMismatch {
                expected: y.dim(),
                got: x.dim(),
            });
        }
        Ok(SiegelPoint { x, y })
    }

    /// Purely imaginary point `iY`.
    pub fn imaginary(y: SpdMatrix) -> Self {
        SiegelPoint {
            x: Matrix::zeros(y.dim(), y.dim()),
            y,
        }
    }

    pub fn x(&self) -> &Matrix {
        &self.x
    }

    pub fn y(&self) -> &SpdMatrix {
        &self.y
    }

    pub fn dim(&self) -> usize {
        self.x.dim()
    }
}

/// Image of a normal distribution in the Siegel upper half-space:
/// `Z(N) = mu mu' + i Sigma`.
pub fn siegel_embed_gaussian(n: &Gaussian) -> SiegelPoint {
    SiegelPoint {
        x: Matrix::outer(n.mean(), n.mean()),
        y: n.cov().clone(),
    }
}

/// A complex matrix split into real and imaginary parts.
#[derive(Debug, Clone)]
pub struct ComplexMatrix {
    pub re: Matrix,
    pub im: Matrix,
}

/// Dense complex working matrix for the cross-ratio algebra.
struct CMat {
    n: usize,
    data: Vec<Complex64>,
}

impl CMat {
    fn from_parts(re: &Matrix, im: &Matrix) -> CMat {
        let n = re.dim();
        CMat {
            n,
            data: (0..n * n)
                .map(|k| Complex64::new(re.data()[k], im.data()[k]))
                .collect(),
        }
    }

    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.data[i * self.n + j]
    }

    fn sub(&self, other: &CMat) -> CMat {
        CMat {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    fn mul(&self, other: &CMat) -> CMat {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.at(i, k);
                for j in 0..n {
                    out[i * n + j] += aik * other.at(k, j);
                }
            }
        }
        CMat { n, data: out }
    }

    /// Inverse by Gauss-Jordan elimination with partial pivoting; reports
    /// `SingularFactor` when the best available pivot is negligible against
    /// the matrix scale.
    fn inverse(&self) -> Result<CMat> {
        let n = self.n;
        let scale = self.data.iter().fold(0.0f64, |m, z| m.max(z.norm()));
        if scale == 0.0 {
            return Err(Error::SingularFactor);
        }
        let mut a = self.data.clone();
        let mut inv = CMat {
            n,
            data: {
                let mut d = vec![Complex64::new(0.0, 0.0); n * n];
                for i in 0..n {
                    d[i * n + i] = Complex64::new(1.0, 0.0);
                }
                d
            },
        };
        for k in 0..n {
            let mut piv = k;
            let mut best = a[k * n + k].norm();
            for r in (k + 1)..n {
                let cand = a[r * n + k].norm();
                if cand > best {
                    best = cand;
                    piv = r;
                }
            }
            if best <= 1e-14 * scale {
                return Err(Error::SingularFactor);
            }
            if piv != k {
                for j in 0..n {
                    a.swap(k * n + j, piv * n + j);
                    inv.data.swap(k * n + j, piv * n + j);
                }
            }
            let pivot = a[k * n + k];
            for j in 0..n {
                a[k * n + j] /= pivot;
                inv.data[k * n + j] /= pivot;
            }
            for r in 0..n {
                if r == k {
                    continue;
                }
                let factor = a[r * n + k];
                if factor == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    let akj = a[k * n + j];
                    let ikj = inv.data[k * n + j];
                    a[r * n + j] -= factor * akj;
                    inv.data[r * n + j] -= factor * ikj;
                }
            }
        }
        Ok(inv)
    }

    fn into_parts(self) -> ComplexMatrix {
        let n = self.n;
        let re = Matrix::from_fn(n, n, |i, j| self.at(i, j).re);
        let im = Matrix::from_fn(n, n, |i, j| self.at(i, j).im);
        ComplexMatrix { re, im }
    }
}

/// Matrix cross-ratio of two Siegel points:
/// `R = (Z1-Z2) (Z1-conj(Z2))^{-1} (conj(Z1)-conj(Z2)) (conj(Z1)-Z2)^{-1}`.
///
/// Its eigenvalues are real in `[0, 1)` up to rounding and encode the
/// Siegel distance.
pub fn siegel_cross_ratio(z1: &SiegelPoint, z2: &SiegelPoint) -> Result<ComplexMatrix> {
    if z1.dim() != z2.dim() {
        return Err(Error::DimensionMismatch {
            expected: z1.dim(),
            got: z2.dim(),
        });
    }
    let z1c = CMat::from_parts(&z1.x, z1.y.mat());
    let z2c = CMat::from_parts(&z2.x, z2.y.mat());
    let z1bar = CMat::from_parts(&z1.x, &z1.y.mat().scale(-1.0));
    let z2bar = CMat::from_parts(&z2.x, &z2.y.mat().scale(-1.0));

    let a = z1c.sub(&z2c);
    let b = z1c.sub(&z2bar).inverse()?;
    let c = z1bar.sub(&z2bar);
    let d = z1bar.sub(&z2c).inverse()?;
    Ok(a.mul(&b).mul(&c).mul(&d).into_parts())
}

/// Tolerance under which cross-ratio eigenvalue imaginary parts are rounded
/// away, and below which slightly negative real parts are clamped to zero.
const SIEGEL_CLEANUP: f64 = 1e-8;

/// Siegel upper half-space distance:
/// `sqrt(sum_i log^2((1+sqrt(r_i))/(1-sqrt(r_i))))` over the cross-ratio
/// eigenvalues `r_i`.
///
/// Eigenvalues carry rounding residue from the unsymmetric cross-ratio
/// product: imaginary parts up to `1e-8` in magnitude are dropped, real
/// parts in `[-1e-8, 0)` are clamped to zero, and values within `1e-15` of 1
/// are pulled to `1 - 1e-15` so the logarithm stays finite. Anything further
/// outside `[0, 1)` is a genuine failure and is reported as
/// [`Error::InvalidCrossRatio`]. The log ratio is evaluated as
/// `2 atanh(sqrt(r))`, which does not cancel as `r` approaches 1.
pub fn siegel_distance(z1: &SiegelPoint, z2: &SiegelPoint) -> Result<f64> {
    let r = siegel_cross_ratio(z1, z2)?;
    let eigs = complex_eigenvalues(&r.re, &r.im)?;
    let mut sum = 0.0;
    for z in eigs {
        if z.im.abs() > SIEGEL_CLEANUP {
            return Err(Error::InvalidCrossRatio { value: z.im });
        }
        let mut ri = z.re;
        if ri < 0.0 {
            if ri < -SIEGEL_CLEANUP {
                return Err(Error::InvalidCrossRatio { value: ri });
            }
            ri = 0.0;
        }
        if ri >= 1.0 {
            return Err(Error::InvalidCrossRatio { value: ri });
        }
        ri = ri.min(1.0 - 1e-15);
        let term = 2.0 * ri.sqrt().atanh();
        sum += term * term;
    }
    Ok(sum.sqrt())
}
