// Shared fixtures and assertion helpers for the integration tests. Each test
// binary includes this module separately, so not every helper is used by
// every binary.
#![allow(dead_code)]

use frao::linalg::Matrix;
use frao::{Gaussian, SpdMatrix};

pub fn assert_close(actual: f64, expected: f64, tol: f64, label: &str) {
    assert!(
        (actual - expected).abs() <= tol,
        "{label}: got {actual}, expected {expected} (tol {tol}, off by {})",
        (actual - expected).abs()
    );
}

pub fn assert_rel_close(actual: f64, expected: f64, rtol: f64, label: &str) {
    let scale = expected.abs().max(1e-300);
    assert!(
        (actual - expected).abs() <= rtol * scale,
        "{label}: got {actual}, expected {expected} (rtol {rtol}, rel err {})",
        (actual - expected).abs() / scale
    );
}

pub fn mat2(a: f64, b: f64, c: f64, d: f64) -> Matrix {
    Matrix::new(2, 2, vec![a, b, c, d]).unwrap()
}

pub fn spd2(a: f64, b: f64, c: f64, d: f64) -> SpdMatrix {
    SpdMatrix::from_rows(2, vec![a, b, c, d]).unwrap()
}

pub fn gauss2(mx: f64, my: f64, a: f64, b: f64, c: f64, d: f64) -> Gaussian {
    Gaussian::new(vec![mx, my], spd2(a, b, c, d)).unwrap()
}

/// Two well-separated bivariate normals sharing one anisotropic covariance.
/// The Mahalanobis separation is exactly sqrt(65).
pub fn same_cov_reference_pair() -> (Gaussian, Gaussian) {
    let n1 = gauss2(-1.0, 0.0, 1.1, 0.9, 0.9, 1.1);
    let n2 = gauss2(6.0, 3.0, 1.1, 0.9, 0.9, 1.1);
    (n1, n2)
}

/// Diagonal covariances with swapped axis scales and a unit-diagonal mean
/// shift; a standard hard case for geodesic approximation.
pub fn crossed_diagonal_pair() -> (Gaussian, Gaussian) {
    let n1 = gauss2(0.0, 0.0, 1.0, 0.0, 0.0, 0.1);
    let n2 = gauss2(1.0, 1.0, 0.1, 0.0, 0.0, 1.0);
    (n1, n2)
}

/// Standard normal against a nearby correlated normal.
pub fn skewed_near_pair() -> (Gaussian, Gaussian) {
    let n1 = Gaussian::standard(2);
    let n2 = gauss2(1.0, 0.0, 1.0, -1.0, -1.0, 2.0);
    (n1, n2)
}

/// Standard normal against a distant correlated normal.
pub fn skewed_far_pair() -> (Gaussian, Gaussian) {
    let n1 = Gaussian::standard(2);
    let n2 = gauss2(5.0, 0.0, 1.0, -1.0, -1.0, 2.0);
    (n1, n2)
}

/// Two standard-covariance normals separated by half a unit diagonally.
pub fn unit_shift_pair() -> (Gaussian, Gaussian) {
    let n1 = Gaussian::standard(2);
    let n2 = gauss2(0.5, 0.5, 1.0, 0.0, 0.0, 1.0);
    (n1, n2)
}

/// Determinant by LU with partial pivoting, independent of the library's
/// factorizations; used to check orthogonality and volume preservation.
pub fn det_lu(m: &Matrix) -> f64 {
    let n = m.dim();
    let mut a: Vec<f64> = m.data().to_vec();
    let mut det = 1.0;
    for k in 0..n {
        let mut piv = k;
        for r in (k + 1)..n {
            if a[r * n + k].abs() > a[piv * n + k].abs() {
                piv = r;
            }
        }
        if a[piv * n + k] == 0.0 {
            return 0.0;
        }
        if piv != k {
            for j in 0..n {
                a.swap(k * n + j, piv * n + j);
            }
            det = -det;
        }
        det *= a[k * n + k];
        for r in (k + 1)..n {
            let f = a[r * n + k] / a[k * n + k];
            for j in k..n {
                a[r * n + j] -= f * a[k * n + j];
            }
        }
    }
    det
}
