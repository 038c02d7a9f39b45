//! Dense symmetric linear algebra on small matrices.
//!
//! Everything in this crate runs on covariance-sized problems (dimension a
//! few dozen at most), so the solvers favor predictable accuracy over
//! asymptotic speed: unblocked Cholesky, cyclic Jacobi for symmetric
//! eigenvalues, and explicit triangular factorizations. Row-major storage
//! throughout.
//!
//! Positive-definiteness is treated as *evidence*, not trust: [`SpdMatrix`]
//! can only be constructed by passing a Cholesky factorization, and it keeps
//! the factor for later solves and determinants.

use crate::error::{Error, Result};
use num_complex::Complex64;
use std::ops::{Add, Index, IndexMut, Mul, Sub};

/// Relative asymmetry tolerated before a matrix is rejected as not symmetric.
pub const SYMMETRY_RTOL: f64 = 1e-9;

/// Inverse hyperbolic cosine in the log form `ln(x + sqrt((x-1)(x+1)))`.
///
/// The factored product under the root loses less precision than `x*x - 1`
/// when `x` is barely above 1, which is exactly where the distance formulas
/// evaluate it (nearby distributions). Inputs slightly below 1 from rounding
/// are clamped to 1.
pub fn arccosh(x: f64) -> f64 {
    if x <= 1.0 {
        return 0.0;
    }
    (x + ((x - 1.0) * (x + 1.0)).sqrt()).ln()
}

// ---------------------------------------------------------------------------
// vectors
// ---------------------------------------------------------------------------

/// Dot product of two equal-length slices.
pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Euclidean norm.
pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

/// Elementwise difference `a - b`.
pub fn vec_sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

/// Elementwise sum `a + b`.
pub fn vec_add(a: &[f64], b: &[f64]) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Scalar multiple `c * a`.
pub fn vec_scale(c: f64, a: &[f64]) -> Vec<f64> {
    a.iter().map(|x| c * x).collect()
}

/// Convex-style combination `(1-t) a + t b` (t may lie outside [0,1]).
pub fn vec_lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| (1.0 - t) * x + t * y).collect()
}

// ---------------------------------------------------------------------------
// dense matrices
// ---------------------------------------------------------------------------

/// Dense row-major matrix of `f64`.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix from row-major data, rejecting non-finite entries.
    pub fn new(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidParameter {
                name: "dimension",
                reason: "must be at least 1",
            });
        }
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                expected: rows * cols,
                got: data.len(),
            });
        }
        if !data.iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite {
                context: "matrix entries",
            });
        }
        Ok(Matrix { rows, cols, data })
    }

    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    /// Diagonal matrix from the given entries.
    pub fn from_diag(d: &[f64]) -> Self {
        let mut m = Matrix::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    /// Builds a matrix by evaluating `f(i, j)` at every position.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Matrix::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Order of a square matrix.
    pub fn dim(&self) -> usize {
        debug_assert_eq!(self.rows, self.cols);
        self.rows
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Borrow of the row-major backing store.
    pub fn data(&self) -> &[f64] {
        &self.data
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// Column `j` copied into a vector.
    pub fn col(&self, j: usize) -> Vec<f64> {
        (0..self.rows).map(|i| self[(i, j)]).collect()
    }

    /// Largest entry magnitude (max norm).
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Frobenius norm.
    pub fn fro_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Largest entrywise deviation from another matrix of the same shape.
    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        debug_assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0, |m, (a, b)| m.max((a - b).abs()))
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    /// Scalar multiple.
    pub fn scale(&self, c: f64) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| c * x).collect(),
        }
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        debug_assert_eq!(self.cols, x.len());
        (0..self.rows).map(|i| dot(self.row(i), x)).collect()
    }

    /// Quadratic form `x' A x`.
    pub fn quad_form(&self, x: &[f64]) -> f64 {
        dot(x, &self.mul_vec(x))
    }

    /// Congruence transform `B A B'` of `self` by `b`.
    pub fn congruence(&self, b: &Matrix) -> Matrix {
        b * &(self * &b.transpose())
    }

    /// Sum of diagonal entries.
    pub fn trace(&self) -> f64 {
        (0..self.dim()).map(|i| self[(i, i)]).sum()
    }

    /// Largest deviation between the matrix and its transpose.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                worst = worst.max((self[(i, j)] - self[(j, i)]).abs());
            }
        }
        worst
    }

    /// Replaces the matrix by its symmetric part `(A + A') / 2` if the
    /// asymmetry is within `SYMMETRY_RTOL` of the largest entry, and rejects
    /// it otherwise. Guards every symmetric algorithm in the crate against
    /// silently operating on a matrix that only looks symmetric.
    pub fn symmetrized(mut self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch {
                expected: self.rows,
                got: self.cols,
            });
        }
        let tol = SYMMETRY_RTOL * self.max_abs().max(f64::MIN_POSITIVE);
        let asym = self.max_asymmetry();
        if asym > tol {
            return Err(Error::NotSymmetric {
                max_asymmetry: asym,
                tolerance: tol,
            });
        }
        for i in 0..self.rows {
            for j in (i + 1)..self.cols {
                let avg = 0.5 * (self[(i, j)] + self[(j, i)]);
                self[(i, j)] = avg;
                self[(j, i)] = avg;
            }
        }
        Ok(self)
    }

    /// Outer product `x y'`.
    pub fn outer(x: &[f64], y: &[f64]) -> Matrix {
        Matrix::from_fn(x.len(), y.len(), |i, j| x[i] * y[j])
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        debug_assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        debug_assert_eq!(self.cols, rhs.rows);
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        // i-k-j loop order keeps the inner traversal contiguous in row-major
        // storage.
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self[(i, k)];
                if aik == 0.0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] += aik * rhs[(k, j)];
                }
            }
        }
        out
    }
}

// ---------------------------------------------------------------------------
// triangular factorizations
// ---------------------------------------------------------------------------

/// Lower Cholesky factor `L` with `L L' = A`, for symmetric `A`.
///
/// A non-positive or non-finite pivot means the matrix is not positive
/// definite; the failing pivot and its index are reported. This is the one
/// and only positive-definiteness test in the crate.
pub fn cholesky(a: &Matrix) -> Result<Matrix> {
    let n = a.dim();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut pivot = a[(j, j)];
        for k in 0..j {
            pivot -= l[(j, k)] * l[(j, k)];
        }
        if !(pivot > 0.0) || !pivot.is_finite() {
            return Err(Error::NotPositiveDefinite { pivot, index: j });
        }
        let ljj = pivot.sqrt();
        l[(j, j)] = ljj;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(l)
}

/// Root-free factorization `A = L D L'` with `L` unit lower-triangular and
/// `D` diagonal, for symmetric positive-definite `A` (no pivoting).
pub fn ldl(a: &Matrix) -> Result<(Matrix, Vec<f64>)> {
    let n = a.dim();
    let mut l = Matrix::identity(n);
    let mut d = vec![0.0; n];
    for j in 0..n {
        let mut dj = a[(j, j)];
        for k in 0..j {
            dj -= l[(j, k)] * l[(j, k)] * d[k];
        }
        if !(dj > 0.0) || !dj.is_finite() {
            return Err(Error::NotPositiveDefinite {
                pivot: dj,
                index: j,
            });
        }
        d[j] = dj;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)] * d[k];
            }
            l[(i, j)] = s / dj;
        }
    }
    Ok((l, d))
}

/// Reverse-order factorization `A = U D U'` with `U` unit upper-triangular
/// and `D` diagonal, for symmetric positive-definite `A`.
///
/// The elimination runs from the last row upward, so `D[0]` is the variance
/// of the first coordinate conditioned on all the others — the quantity the
/// mean-aligned distance reduction needs (a plain `L D L'` pass produces the
/// unconditional variance there instead).
pub fn udu(a: &Matrix) -> Result<(Matrix, Vec<f64>)> {
    let n = a.dim();
    let mut u = Matrix::identity(n);
    let mut d = vec![0.0; n];
    for j in (0..n).rev() {
        let mut dj = a[(j, j)];
        for k in (j + 1)..n {
            dj -= u[(j, k)] * u[(j, k)] * d[k];
        }
        if !(dj > 0.0) || !dj.is_finite() {
            return Err(Error::NotPositiveDefinite {
                pivot: dj,
                index: j,
            });
        }
        d[j] = dj;
        for i in 0..j {
            let mut s = a[(i, j)];
            for k in (j + 1)..n {
                s -= u[(i, k)] * u[(j, k)] * d[k];
            }
            u[(i, j)] = s / dj;
        }
    }
    Ok((u, d))
}

/// Solves `L y = b` for lower-triangular `L`.
fn forward_subst(l: &Matrix, b: &[f64]) -> Vec<f64> {
    let n = l.dim();
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut s = b[i];
        for k in 0..i {
            s -= l[(i, k)] * y[k];
        }
        y[i] = s / l[(i, i)];
    }
    y
}

/// Solves `L' x = y` for lower-triangular `L`.
fn backward_subst(l: &Matrix, y: &[f64]) -> Vec<f64> {
    let n = l.dim();
    let mut x = vec![0.0; n];
    for i in (0..n).rev() {
        let mut s = y[i];
        for k in (i + 1)..n {
            s -= l[(k, i)] * x[k];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

// ---------------------------------------------------------------------------
// symmetric eigenvalues: cyclic Jacobi
// ---------------------------------------------------------------------------

/// Eigenvalues in non-increasing order with the matching orthonormal
/// eigenvectors as columns of [`EigenDecomposition::vectors`].
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    /// Eigenvalues sorted from largest to smallest.
    pub values: Vec<f64>,
    /// Column `k` is the unit eigenvector for `values[k]`.
    pub vectors: Matrix,
}

/// Maximum number of Jacobi sweeps before giving up.
const JACOBI_MAX_SWEEPS: usize = 100;

/// Off-diagonal Frobenius norm, the Jacobi convergence measure.
fn off_diag_norm(a: &Matrix) -> f64 {
    let n = a.dim();
    let mut s = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            s += 2.0 * a[(i, j)] * a[(i, j)];
        }
    }
    s.sqrt()
}

/// Full eigendecomposition of a symmetric matrix by the cyclic Jacobi
/// method (Golub & Van Loan, Algorithm 8.5.3).
///
/// Jacobi is slower than tridiagonalization+QL but computes every eigenvalue
/// to high relative accuracy on the well-conditioned, small matrices this
/// crate works with, and its convergence measure — the off-diagonal
/// Frobenius norm — is directly checkable. Iteration stops when that norm
/// falls below `1e-13` times the Frobenius norm of the input, and fails with
/// [`Error::ConvergenceFailure`] if 100 sweeps do not get there.
pub fn sym_eigen(a: &Matrix) -> Result<EigenDecomposition> {
    let a = a.clone().symmetrized()?;
    let n = a.dim();
    let threshold = 1e-13 * a.fro_norm();
    let mut work = a;
    let mut vecs = Matrix::identity(n);

    let mut sweeps = 0;
    while off_diag_norm(&work) > threshold {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::ConvergenceFailure {
                routine: "jacobi eigensolver",
                residual: off_diag_norm(&work),
                iterations: sweeps,
            });
        }
        sweeps += 1;
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = work[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                // Rotation angle that annihilates the (p,q) entry; the
                // smaller-root formula keeps |t| <= 1 for stability.
                let theta = (work[(q, q)] - work[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e10 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                let app = work[(p, p)];
                let aqq = work[(q, q)];
                work[(p, p)] = app - t * apq;
                work[(q, q)] = aqq + t * apq;
                work[(p, q)] = 0.0;
                work[(q, p)] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let arp = work[(r, p)];
                    let arq = work[(r, q)];
                    work[(r, p)] = arp - s * (arq + tau * arp);
                    work[(p, r)] = work[(r, p)];
                    work[(r, q)] = arq + s * (arp - tau * arq);
                    work[(q, r)] = work[(r, q)];
                }
                for r in 0..n {
                    let vrp = vecs[(r, p)];
                    let vrq = vecs[(r, q)];
                    vecs[(r, p)] = vrp - s * (vrq + tau * vrp);
                    vecs[(r, q)] = vrq + s * (vrp - tau * vrq);
                }
            }
        }
    }

    // Sort eigenpairs so the values come out non-increasing.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| work[(j, j)].partial_cmp(&work[(i, i)]).unwrap());
    let values: Vec<f64> = order.iter().map(|&k| work[(k, k)]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| vecs[(i, order[j])]);
    Ok(EigenDecomposition { values, vectors })
}

// ---------------------------------------------------------------------------
// positive-definite matrices
// ---------------------------------------------------------------------------

/// A symmetric positive-definite matrix together with its Cholesky factor.
///
/// Construction *is* the proof: the only way to obtain one is to survive the
/// symmetry check and a successful Cholesky factorization, and the factor is
/// kept so that solves and determinants reuse it.
#[derive(Debug, Clone)]
pub struct SpdMatrix {
    mat: Matrix,
    chol: Matrix,
}

impl SpdMatrix {
    /// Validates a square matrix as symmetric positive-definite.
    pub fn new(mat: Matrix) -> Result<Self> {
        let mat = mat.symmetrized()?;
        let chol = cholesky(&mat)?;
        Ok(SpdMatrix { mat, chol })
    }

    /// Convenience constructor from row-major data.
    pub fn from_rows(n: usize, data: Vec<f64>) -> Result<Self> {
        SpdMatrix::new(Matrix::new(n, n, data)?)
    }

    /// Identity matrix of order `n`.
    pub fn identity(n: usize) -> Self {
        SpdMatrix {
            mat: Matrix::identity(n),
            chol: Matrix::identity(n),
        }
    }

    /// Diagonal matrix with strictly positive entries.
    pub fn from_diag(d: &[f64]) -> Result<Self> {
        SpdMatrix::new(Matrix::from_diag(d))
    }

    pub fn dim(&self) -> usize {
        self.mat.dim()
    }

    /// The underlying symmetric matrix.
    pub fn mat(&self) -> &Matrix {
        &self.mat
    }

    /// The cached lower Cholesky factor.
    pub fn chol(&self) -> &Matrix {
        &self.chol
    }

    /// Log-determinant as twice the log-sum of Cholesky diagonal entries,
    /// which cannot overflow the way a determinant product can.
    pub fn log_det(&self) -> f64 {
        (0..self.dim()).map(|i| self.chol[(i, i)].ln()).sum::<f64>() * 2.0
    }

    /// Solves `A x = b` through the cached factor.
    pub fn solve_vec(&self, b: &[f64]) -> Vec<f64> {
        backward_subst(&self.chol, &forward_subst(&self.chol, b))
    }

    /// Solves `A X = B` column by column.
    pub fn solve_mat(&self, b: &Matrix) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(n, b.cols());
        for j in 0..b.cols() {
            let x = self.solve_vec(&b.col(j));
            for i in 0..n {
                out[(i, j)] = x[i];
            }
        }
        out
    }

    /// Explicit inverse, still positive-definite.
    pub fn inverse(&self) -> SpdMatrix {
        let inv = self.solve_mat(&Matrix::identity(self.dim()));
        // Solving against the identity is symmetric only up to rounding;
        // re-validate so the result carries its own factorization.
        SpdMatrix::new(inv).expect("inverse of a positive-definite matrix")
    }

    /// Quadratic form `x' A^{-1} x` through the cached factor.
    pub fn inv_quad_form(&self, x: &[f64]) -> f64 {
        let y = forward_subst(&self.chol, x);
        dot(&y, &y)
    }

    /// Eigendecomposition (values non-increasing, all positive).
    pub fn eigen(&self) -> Result<EigenDecomposition> {
        sym_eigen(&self.mat)
    }

    /// Spectral map `Q f(Lambda) Q'`.
    fn spectral_map(&self, f: impl Fn(f64) -> f64) -> Result<Matrix> {
        let eig = self.eigen()?;
        let q = &eig.vectors;
        let fd = Matrix::from_diag(&eig.values.iter().map(|&l| f(l)).collect::<Vec<_>>());
        Ok(fd.congruence(q))
    }

    /// Real matrix power `A^t` for any real `t`.
    pub fn pow(&self, t: f64) -> Result<SpdMatrix> {
        let m = self.spectral_map(|l| l.powf(t))?;
        SpdMatrix::new(m)
    }

    /// Principal square root.
    pub fn sqrt(&self) -> Result<SpdMatrix> {
        self.pow(0.5)
    }

    /// Inverse of the principal square root.
    pub fn inv_sqrt(&self) -> Result<SpdMatrix> {
        self.pow(-0.5)
    }

    /// Matrix logarithm (symmetric but in general indefinite).
    pub fn log(&self) -> Result<Matrix> {
        self.spectral_map(f64::ln)
    }

    /// Positive scalar multiple, staying in the positive-definite cone.
    pub fn scale_spd(&self, c: f64) -> SpdMatrix {
        debug_assert!(c > 0.0);
        // The Cholesky factor scales by sqrt(c); no refactorization needed.
        let rc = c.sqrt();
        SpdMatrix {
            mat: self.mat.scale(c),
            chol: self.chol.scale(rc),
        }
    }
}

// ---------------------------------------------------------------------------
// alignment rotations
// ---------------------------------------------------------------------------

/// Rotation `P` (orthogonal, `det P = +1`) sending the direction of `v` to
/// the first coordinate axis: `P v = |v| e1`.
///
/// Built from the Householder reflector through `u - e1` (`u = v/|v|`),
/// whose last row is then negated to flip the determinant from -1 to +1;
/// negating the last row leaves `P u = e1` intact because that coordinate of
/// `e1` is zero. When `u` is already `e1` the reflector degenerates and the
/// identity is returned. For `n = 1` the only rotation is the scalar 1, so a
/// negative `v` cannot be aligned and is reported as such.
pub fn householder_align(v: &[f64]) -> Result<Matrix> {
    let n = v.len();
    let nrm = norm(v);
    if nrm == 0.0 || !nrm.is_finite() {
        return Err(Error::ZeroVector);
    }
    if n == 1 {
        if v[0] > 0.0 {
            return Ok(Matrix::identity(1));
        }
        return Err(Error::AlignmentImpossible(
            "a negative scalar cannot be rotated onto the positive axis in one dimension",
        ));
    }
    let u = vec_scale(1.0 / nrm, v);
    let mut w = u.clone();
    w[0] -= 1.0;
    let w2 = dot(&w, &w);
    if w2 == 0.0 {
        return Ok(Matrix::identity(n));
    }
    let mut p = Matrix::identity(n);
    for i in 0..n {
        for j in 0..n {
            p[(i, j)] -= 2.0 * w[i] * w[j] / w2;
        }
    }
    for j in 0..n {
        p[(n - 1, j)] = -p[(n - 1, j)];
    }
    Ok(p)
}

// ---------------------------------------------------------------------------
// complex eigenvalues of A + iB
// ---------------------------------------------------------------------------

/// Dense complex square matrix in row-major order; the minimal scaffolding
/// the eigenvalue iteration needs.
struct CSquare {
    n: usize,
    e: Vec<Complex64>,
}

impl CSquare {
    fn from_parts(a: &Matrix, b: &Matrix) -> CSquare {
        let n = a.dim();
        CSquare {
            n,
            e: (0..n * n)
                .map(|k| Complex64::new(a.data[k], b.data[k]))
                .collect(),
        }
    }

    fn at(&self, i: usize, j: usize) -> Complex64 {
        self.e[i * self.n + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.e[i * self.n + j] = v;
    }

    fn fro_norm(&self) -> f64 {
        self.e.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Unitary reduction to upper Hessenberg form by Householder
    /// reflections; the eigenvalues are preserved.
    fn hessenberg(&mut self) {
        let n = self.n;
        for k in 0..n.saturating_sub(2) {
            let norm2: f64 = ((k + 1)..n).map(|i| self.at(i, k).norm_sqr()).sum();
            let norm = norm2.sqrt();
            if norm == 0.0 {
                continue;
            }
            let x0 = self.at(k + 1, k);
            let alpha = if x0 == Complex64::ZERO {
                Complex64::new(-norm, 0.0)
            } else {
                -x0 / x0.norm() * norm
            };
            // reflector v = x - alpha e1 with P = I - (2 / v*v) v v*
            let mut v = vec![Complex64::ZERO; n];
            v[k + 1] = x0 - alpha;
            for i in (k + 2)..n {
                v[i] = self.at(i, k);
            }
            let beta: f64 = v.iter().map(|z| z.norm_sqr()).sum();
            if beta == 0.0 {
                continue;
            }
            let two_over = 2.0 / beta;
            // left: H -= (2/beta) v (v* H), affecting rows k+1.. only
            for j in k..n {
                let mut w = Complex64::ZERO;
                for i in (k + 1)..n {
                    w += v[i].conj() * self.at(i, j);
                }
                w *= two_over;
                for i in (k + 1)..n {
                    let upd = self.at(i, j) - v[i] * w;
                    self.set(i, j, upd);
                }
            }
            // right: H -= (2/beta) (H v) v*, affecting columns k+1.. only
            for i in 0..n {
                let mut w = Complex64::ZERO;
                for j in (k + 1)..n {
                    w += self.at(i, j) * v[j];
                }
                w *= two_over;
                for j in (k + 1)..n {
                    let upd = self.at(i, j) - w * v[j].conj();
                    self.set(i, j, upd);
                }
            }
            // the reflection annihilates the column below the subdiagonal
            self.set(k + 1, k, alpha);
            for i in (k + 2)..n {
                self.set(i, k, Complex64::ZERO);
            }
        }
    }
}

/// Wilkinson shift: the eigenvalue of the trailing `2 x 2` block closest to
/// its bottom-right entry.
fn wilkinson_shift(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    let mean = 0.5 * (a + d);
    let disc = (0.25 * (a - d) * (a - d) + b * c).sqrt();
    let mu1 = mean + disc;
    let mu2 = mean - disc;
    if (mu1 - d).norm() <= (mu2 - d).norm() {
        mu1
    } else {
        mu2
    }
}

/// Eigenvalues of the complex matrix `C = A + iB`, for real square `A`, `B`
/// of equal order, sorted by descending real part (then imaginary part).
///
/// The matrix is reduced to upper Hessenberg form and iterated with
/// explicitly shifted QR steps (Givens rotations, Wilkinson shift, the usual
/// exceptional shift every ten stalled iterations) until the subdiagonal
/// deflates. Unlike the real double-shift algorithm there is no conjugate
/// ambiguity: the spectrum of `C` itself comes out, so a real rotation
/// matrix yields `{i, -i}` and a zero matrix yields zeros immediately. The
/// iteration is capped; exceeding the cap reports a `ConvergenceFailure`
/// with the stuck subdiagonal entry as the residual.
pub fn complex_eigenvalues(a: &Matrix, b: &Matrix) -> Result<Vec<Complex64>> {
    let n = a.dim();
    if b.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: b.dim(),
        });
    }
    if n == 0 {
        return Ok(Vec::new());
    }

    let mut h = CSquare::from_parts(a, b);
    let scale = h.fro_norm();
    if scale == 0.0 {
        return Ok(vec![Complex64::ZERO; n]);
    }
    h.hessenberg();

    let eps = f64::EPSILON;
    let negligible = |h: &CSquare, k: usize| -> bool {
        let tol = eps * (h.at(k - 1, k - 1).norm() + h.at(k, k).norm());
        let tol = if tol == 0.0 { eps * scale } else { tol };
        h.at(k, k - 1).norm() <= tol
    };

    let mut out: Vec<Complex64> = Vec::with_capacity(n);
    let mut hi = n - 1;
    let mut stalled = 0usize;
    let mut total = 0usize;
    let max_total = 40 * n;

    loop {
        if hi == 0 {
            out.push(h.at(0, 0));
            break;
        }
        if negligible(&h, hi) {
            out.push(h.at(hi, hi));
            hi -= 1;
            stalled = 0;
            continue;
        }
        total += 1;
        stalled += 1;
        if total > max_total {
            return Err(Error::ConvergenceFailure {
                routine: "complex QR iteration",
                residual: h.at(hi, hi - 1).norm(),
                iterations: total,
            });
        }

        // active window [lo, hi]: walk up until the subdiagonal breaks
        let mut lo = hi;
        while lo > 0 && !negligible(&h, lo) {
            lo -= 1;
        }

        let mu = if stalled % 10 == 0 {
            // exceptional shift to break symmetric stalls (e.g. cyclic
            // permutation matrices, which plain Wilkinson shifts orbit)
            h.at(hi, hi) + Complex64::new(0.75 * h.at(hi, hi - 1).norm(), 0.0)
        } else {
            wilkinson_shift(
                h.at(hi - 1, hi - 1),
                h.at(hi - 1, hi),
                h.at(hi, hi - 1),
                h.at(hi, hi),
            )
        };

        for i in lo..=hi {
            let d = h.at(i, i) - mu;
            h.set(i, i, d);
        }
        // QR by Givens rotations on the Hessenberg window...
        let mut rots: Vec<(Complex64, Complex64)> = Vec::with_capacity(hi - lo);
        for k in lo..hi {
            let x = h.at(k, k);
            let y = h.at(k + 1, k);
            let r = (x.norm_sqr() + y.norm_sqr()).sqrt();
            let (p, q) = if r == 0.0 {
                (Complex64::ONE, Complex64::ZERO)
            } else {
                (x / r, y / r)
            };
            for j in k..=hi {
                let s = h.at(k, j);
                let t = h.at(k + 1, j);
                h.set(k, j, p.conj() * s + q.conj() * t);
                h.set(k + 1, j, p * t - q * s);
            }
            h.set(k + 1, k, Complex64::ZERO);
            rots.push((p, q));
        }
        // ...then the reversed rotations from the right (RQ), which
        // restores Hessenberg form with the shift re-added
        for (k, (p, q)) in (lo..hi).zip(rots) {
            for i in lo..=(k + 1) {
                let s = h.at(i, k);
                let t = h.at(i, k + 1);
                h.set(i, k, s * p + t * q);
                h.set(i, k + 1, t * p.conj() - s * q.conj());
            }
        }
        for i in lo..=hi {
            let d = h.at(i, i) + mu;
            h.set(i, i, d);
        }
    }

    out.sort_by(|x, y| (y.re, y.im).partial_cmp(&(x.re, x.im)).unwrap());
    Ok(out)
}
