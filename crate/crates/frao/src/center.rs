//! Minimax centers: smallest enclosing Riemannian balls and k-center
//! clustering for sets of Gaussians.
//!
//! The circumcenter of a set of Gaussians under the Fisher-Rao distance is
//! out of reach (the distance itself is not computable in closed form), so
//! the solver relaxes: embed everything into the SPD cone, run the
//! geodesic-walk smallest-enclosing-ball iteration there, and project the
//! resulting cone center back onto the embedded Gaussian image. The cone
//! distance from the pre-projection center to the image
//! ([`BallResult::projection_gap`]) is the honesty meter for that relaxation:
//! zero means the cone optimum already was a Gaussian.

use crate::embed::{co_distance, co_embed, co_inverse, co_project};
use crate::error::{Error, Result};
use crate::gaussian::Gaussian;
use crate::linalg::SpdMatrix;
use crate::spd::{rho_spd, spd_geodesic};

/// Smallest-enclosing-ball iteration on the SPD cone.
///
/// Starts at the first point and, for `t = 1, 2, ...`, walks a fraction
/// `1/(t+1)` of the geodesic toward the currently farthest point (ties
/// broken toward the lowest index, so reruns are bit-identical). Runs for a
/// fixed budget of `T` iterations — `C_1` is the starting point, and the
/// returned matrix is `C_T`. The step sizes shrink harmonically, which is
/// what makes the walk converge toward the minimax center; no convergence
/// test is applied.
pub fn rieseb_spd(points: &[SpdMatrix], t_iters: usize) -> Result<SpdMatrix> {
    if points.is_empty() {
        return Err(Error::EmptyInput);
    }
    if t_iters == 0 {
        return Err(Error::InvalidParameter {
            name: "T",
            reason: "iteration count must be at least 1",
        });
    }
    let dim = points[0].dim();
    for p in points {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: p.dim(),
            });
        }
    }
    let mut center = points[0].clone();
    for t in 1..t_iters {
        let mut farthest = 0usize;
        let mut best = f64::NEG_INFINITY;
        for (i, p) in points.iter().enumerate() {
            let d = rho_spd(&center, p)?;
            if d > best {
                best = d;
                farthest = i;
            }
        }
        center = spd_geodesic(&center, &points[farthest], 1.0 / (t as f64 + 1.0))?;
    }
    Ok(center)
}

/// Output of the Fisher-Rao circumcenter heuristic.
#[derive(Debug, Clone)]
pub struct BallResult {
    /// The Gaussian read back from the projected cone center.
    pub center: Gaussian,
    /// The cone center before projection (`C_T`).
    pub center_spd: SpdMatrix,
    /// Largest embedding distance from the center to any input.
    pub radius: f64,
    /// Cone distance from `C_T` to the embedded image; small values mean
    /// the cone relaxation stayed close to the Gaussian model.
    pub projection_gap: f64,
}

/// Approximate minimax center of a set of Gaussians: smallest enclosing
/// ball in the embedding cone, projected back onto the model.
pub fn fr_circumcenter(gaussians: &[Gaussian], t_iters: usize) -> Result<BallResult> {
    if gaussians.is_empty() {
        return Err(Error::EmptyInput);
    }
    let dim = gaussians[0].dim();
    for g in gaussians {
        if g.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: g.dim(),
            });
        }
    }
    let embedded: Vec<SpdMatrix> = gaussians
        .iter()
        .map(|g| co_embed(g).matrix().clone())
        .collect();
    let center_spd = rieseb_spd(&embedded, t_iters)?;
    let projection = co_project(&center_spd)?;
    let center = co_inverse(&projection.projected)?;
    let mut radius = 0.0f64;
    for g in gaussians {
        radius = radius.max(co_distance(&center, g)?);
    }
    Ok(BallResult {
        center,
        center_spd,
        radius,
        projection_gap: projection.defect,
    })
}

/// Output of the greedy k-center traversal.
#[derive(Debug, Clone)]
pub struct KCenterResult {
    /// Indices of the chosen centers, in selection order.
    pub center_indices: Vec<usize>,
    /// For each input point, the position (into `center_indices`) of its
    /// nearest center.
    pub assignment: Vec<usize>,
    /// Largest distance from any point to its assigned center.
    pub radius: f64,
}

/// Greedy farthest-first k-center clustering under the embedding distance.
///
/// Classic Gonzalez traversal: start from `seed % n`, then repeatedly
/// promote the point farthest from all chosen centers (ties to the lowest
/// index). Greedy, not minimax — the radius is within a factor 2 of optimal,
/// which is the usual guarantee for this scheme.
pub fn k_center(gaussians: &[Gaussian], k: usize, seed: u64) -> Result<KCenterResult> {
    let n = gaussians.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if k == 0 {
        return Err(Error::InvalidParameter {
            name: "k",
            reason: "cluster count must be at least 1",
        });
    }
    if k > n {
        return Err(Error::KTooLarge { k, n });
    }
    let start = (seed % n as u64) as usize;
    let mut center_indices = vec![start];
    let mut assignment = vec![0usize; n];
    let mut dist: Vec<f64> = gaussians
        .iter()
        .map(|g| co_distance(g, &gaussians[start]))
        .collect::<Result<_>>()?;

    while center_indices.len() < k {
        let mut far = 0usize;
        let mut best = f64::NEG_INFINITY;
        for (i, &d) in dist.iter().enumerate() {
            if d > best {
                best = d;
                far = i;
            }
        }
        let c = center_indices.len();
        center_indices.push(far);
        for i in 0..n {
            let d = co_distance(&gaussians[i], &gaussians[far])?;
            if d < dist[i] {
                dist[i] = d;
                assignment[i] = c;
            }
        }
    }
    let radius = dist.iter().cloned().fold(0.0f64, f64::max);
    Ok(KCenterResult {
        center_indices,
        assignment,
        radius,
    })
}
