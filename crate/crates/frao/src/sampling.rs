//! Reproducible random problem instances and the curve-calibration protocol.
//!
//! Everything downstream of a seed must be bit-identical across runs,
//! platforms, and thread counts, because calibration numbers end up in
//! regression tests. Three rules enforce that:
//!
//! * the generator is ChaCha8 keyed by `seed_from_u64(seed)`, with one
//!   independent *stream* per trial (`set_stream(trial)`), so trials can be
//!   computed in any order or in parallel without affecting each other;
//! * uniform doubles are derived from the top 53 bits of one `u64` draw,
//!   `(x >> 11) * 2^-53`, giving values in `[0, 1)` — spelled out here so
//!   the byte-level contract does not depend on any library's sampling
//!   internals;
//! * parallel reductions collect per-trial results first and combine them
//!   in trial-index order.

use crate::curves::{Curve, CurveKind};
use crate::distance::approx_length;
use crate::embed::co_distance;
use crate::error::Result;
use crate::gaussian::Gaussian;
use crate::linalg::{Matrix, SpdMatrix};
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use std::collections::BTreeMap;

/// Mean/diagonal scale of the separated-diagonal scenario.
pub const SEPARATION_SCALE: f64 = 5.0;

/// ChaCha8 generator for stream `stream` of seed `seed`.
pub fn rng_stream(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Uniform double in `[0, 1)` from the top 53 bits of one `u64` draw.
pub fn uniform01(rng: &mut ChaCha8Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

/// Uniform double in `[0, scale)`.
pub fn uniform(rng: &mut ChaCha8Rng, scale: f64) -> f64 {
    scale * uniform01(rng)
}

/// Random Gaussian with mean entries uniform in `[0, 1)` and covariance
/// `L L'` for a lower-triangular `L` with all entries (diagonal included)
/// uniform in `[0, 1)`.
///
/// Draw order is part of the wire contract: the `d` mean entries first,
/// then `L` row by row, each row left to right up to the diagonal. Note the
/// diagonal is *not* bounded away from zero, so occasional ill-conditioned
/// covariances are a feature of this distribution, not a bug.
pub fn random_gaussian(rng: &mut ChaCha8Rng, d: usize) -> Result<Gaussian> {
    let mean: Vec<f64> = (0..d).map(|_| uniform01(rng)).collect();
    let mut l = Matrix::zeros(d, d);
    for i in 0..d {
        for j in 0..=i {
            l[(i, j)] = uniform01(rng);
        }
    }
    let cov = &l * &l.transpose();
    Gaussian::new(mean, SpdMatrix::new(cov)?)
}

/// Random Gaussian with mean entries uniform in `[0, scale)` and a diagonal
/// covariance with entries uniform in `(0, scale)`.
///
/// Draw order: the `d` mean entries first, then the `d` diagonal entries.
pub fn separated_diagonal_gaussian(
    rng: &mut ChaCha8Rng,
    d: usize,
    scale: f64,
) -> Result<Gaussian> {
    let mean: Vec<f64> = (0..d).map(|_| uniform(rng, scale)).collect();
    let diag: Vec<f64> = (0..d).map(|_| uniform(rng, scale)).collect();
    Gaussian::new(mean, SpdMatrix::from_diag(&diag)?)
}

/// The two pair-generation protocols of the calibration experiments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scenario {
    /// Both endpoints drawn by [`random_gaussian`]: means in the unit cube,
    /// covariances `L L'` with uniform Cholesky entries.
    RandomCholesky,
    /// First endpoint standard normal; second has mean and diagonal
    /// covariance entries uniform in `[0, SEPARATION_SCALE)`. Produces
    /// well-separated pairs whose mean displacement dominates in high
    /// dimension.
    SeparatedDiagonal,
}

impl Scenario {
    /// Stable lowercase name used by the CLI.
    pub fn name(&self) -> &'static str {
        match self {
            Scenario::RandomCholesky => "random-cholesky",
            Scenario::SeparatedDiagonal => "separated-diagonal",
        }
    }

    pub fn from_name(s: &str) -> Option<Scenario> {
        match s {
            "random-cholesky" => Some(Scenario::RandomCholesky),
            "separated-diagonal" => Some(Scenario::SeparatedDiagonal),
            _ => None,
        }
    }

    /// Draws one endpoint pair from this scenario's distribution.
    pub fn draw_pair(&self, rng: &mut ChaCha8Rng, d: usize) -> Result<(Gaussian, Gaussian)> {
        match self {
            Scenario::RandomCholesky => {
                Ok((random_gaussian(rng, d)?, random_gaussian(rng, d)?))
            }
            Scenario::SeparatedDiagonal => Ok((
                Gaussian::standard(d),
                separated_diagonal_gaussian(rng, d, SEPARATION_SCALE)?,
            )),
        }
    }
}

/// Pair number `index` of the given scenario, dimension, and seed
/// (trial `index` lives on RNG stream `index`).
pub fn scenario_pair(
    scenario: Scenario,
    d: usize,
    seed: u64,
    index: u64,
) -> Result<(Gaussian, Gaussian)> {
    scenario.draw_pair(&mut rng_stream(seed, index), d)
}

/// The curve kinds the calibration ratio is computed for (all multivariate
/// families; the univariate exact geodesic is excluded since the ratio is
/// identically tied to it only at `d = 1`).
pub const KAPPA_CURVES: [CurveKind; 5] = [
    CurveKind::LinearLambda,
    CurveKind::MixtureGeodesic,
    CurveKind::ExponentialGeodesic,
    CurveKind::EmMidCurve,
    CurveKind::ProjectedCO,
];

/// Mean of the per-pair calibration ratios `kappa_c = length(c) / lower
/// bound` over `trials` independent pairs, for each multivariate curve
/// family.
///
/// A ratio near 1 means the discretized curve length stays close to the
/// embedding lower bound, i.e. the curve is a good stand-in for the unknown
/// geodesic on that pair distribution. Trials fan out across worker threads
/// (one RNG stream each) and are averaged in trial-index order, so the
/// result is independent of the thread count.
pub fn kappa_averages(
    scenario: Scenario,
    d: usize,
    trials: usize,
    t_segments: usize,
    seed: u64,
) -> Result<BTreeMap<CurveKind, f64>> {
    if trials == 0 {
        return Err(crate::error::Error::InvalidParameter {
            name: "trials",
            reason: "trial count must be at least 1",
        });
    }
    let per_trial: Vec<[f64; 5]> = (0..trials as u64)
        .into_par_iter()
        .map(|i| -> Result<[f64; 5]> {
            let (n1, n2) = scenario_pair(scenario, d, seed, i)?;
            let lower = co_distance(&n1, &n2)?;
            let mut row = [0.0; 5];
            for (k, &kind) in KAPPA_CURVES.iter().enumerate() {
                let len = approx_length(&Curve::new(kind, &n1, &n2)?, t_segments)?.value;
                row[k] = len / lower;
            }
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = BTreeMap::new();
    for (k, &kind) in KAPPA_CURVES.iter().enumerate() {
        let mut acc = 0.0;
        for row in &per_trial {
            acc += row[k];
        }
        out.insert(kind, acc / trials as f64);
    }
    Ok(out)
}
