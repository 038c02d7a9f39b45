//! The five data-driven commands: dist, approx, curve, seb, kcenter.

use crate::{CliError, Format};
use frao::center::{fr_circumcenter, k_center};
use frao::curves::{Curve, CurveKind};
use frao::distance::{
    bounds_report, fr_same_cov, fr_same_mean, fr_univariate, jeffreys_upper_bound,
    mahalanobis_spd_upper_bound, spc_upper_bound,
};
use frao::embed::{co_distance, co_embed, killing_distance};
use frao::spd::{hilbert_projective, siegel_distance, siegel_embed_gaussian};
use frao::Gaussian;
use serde::Serialize;
use std::fmt::Write;

/// Parses `--curves`; `None` selects the five multivariate families.
pub fn curve_kinds(names: Option<&[String]>) -> Result<Vec<CurveKind>, CliError> {
    match names {
        None => Ok(CurveKind::ALL
            .into_iter()
            .filter(|k| *k != CurveKind::UnivariateFR)
            .collect()),
        Some(names) => names
            .iter()
            .map(|name| {
                CurveKind::from_name(name).ok_or_else(|| {
                    CliError::input(format!(
                        "unknown curve {name:?}; known: lambda, mixture, exponential, em-mid, co, univariate-fr"
                    ))
                })
            })
            .collect(),
    }
}

#[derive(Serialize)]
struct DistRecord {
    method: String,
    value: f64,
}

pub fn dist(
    pairs: &[(Gaussian, Gaussian)],
    method: &str,
    kappa: f64,
    format: Format,
) -> Result<String, CliError> {
    let eval = |n1: &Gaussian, n2: &Gaussian| -> Result<f64, CliError> {
        let value = match method {
            "co" => co_distance(n1, n2)?,
            "spc" => spc_upper_bound(n1, n2)?,
            "jeffreys" => jeffreys_upper_bound(n1, n2)?,
            "mahalanobis-spd" => mahalanobis_spd_upper_bound(n1, n2)?,
            "same-cov" => fr_same_cov(n1, n2)?,
            "same-mean" => fr_same_mean(n1, n2)?,
            "univariate" => fr_univariate(n1, n2)?,
            "killing" => killing_distance(n1, n2, kappa)?,
            "hilbert" => hilbert_projective(co_embed(n1).matrix(), co_embed(n2).matrix())?,
            "siegel" => siegel_distance(&siegel_embed_gaussian(n1), &siegel_embed_gaussian(n2))?,
            other => {
                return Err(CliError::input(format!(
                    "unknown method {other:?}; known: co, spc, jeffreys, mahalanobis-spd, \
                     same-cov, same-mean, univariate, killing, hilbert, siegel"
                )))
            }
        };
        Ok(value)
    };

    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("pair,method,value\n");
    }
    for (i, (n1, n2)) in pairs.iter().enumerate() {
        let value = eval(n1, n2)?;
        match format {
            Format::Json => {
                let record = DistRecord {
                    method: method.to_string(),
                    value,
                };
                writeln!(out, "{}", serde_json::to_string(&record).unwrap()).unwrap();
            }
            Format::Csv => writeln!(out, "{i},{method},{value}").unwrap(),
        }
    }
    Ok(out)
}

#[derive(Serialize)]
struct ApproxRecord {
    curve: &'static str,
    t_segments: usize,
    value: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    defect: Option<f64>,
}

#[derive(Serialize)]
struct PairReport {
    co_lower: f64,
    spc_upper: f64,
    jeffreys_upper: f64,
    mahalanobis_spd_upper: f64,
    approximations: Vec<ApproxRecord>,
    #[serde(skip_serializing_if = "Option::is_none")]
    best_approx: Option<f64>,
}

pub fn approx(
    pairs: &[(Gaussian, Gaussian)],
    t_segments: usize,
    kinds: &[CurveKind],
    format: Format,
) -> Result<String, CliError> {
    let mut out = String::new();
    if format == Format::Csv {
        out.push_str("pair,quantity,value\n");
    }
    for (i, (n1, n2)) in pairs.iter().enumerate() {
        let report = bounds_report(n1, n2, t_segments, kinds)
            .map_err(|e| CliError::compute(format!("pair {i}: {e}")))?;
        match format {
            Format::Json => {
                let rendered = PairReport {
                    co_lower: report.co_lower,
                    spc_upper: report.spc_upper,
                    jeffreys_upper: report.jeffreys_upper,
                    mahalanobis_spd_upper: report.mahalanobis_spd_upper,
                    best_approx: report.best_approx(),
                    approximations: report
                        .approximations
                        .values()
                        .map(|a| ApproxRecord {
                            curve: a.curve_kind.name(),
                            t_segments: a.t_segments,
                            value: a.value,
                            defect: a.defect,
                        })
                        .collect(),
                };
                writeln!(out, "{}", serde_json::to_string(&rendered).unwrap()).unwrap();
            }
            Format::Csv => {
                writeln!(out, "{i},co_lower,{}", report.co_lower).unwrap();
                writeln!(out, "{i},spc_upper,{}", report.spc_upper).unwrap();
                writeln!(out, "{i},jeffreys_upper,{}", report.jeffreys_upper).unwrap();
                writeln!(out, "{i},mahalanobis_spd_upper,{}", report.mahalanobis_spd_upper)
                    .unwrap();
                for a in report.approximations.values() {
                    writeln!(out, "{i},approx_{},{}", a.curve_kind.name(), a.value).unwrap();
                    if let Some(defect) = a.defect {
                        writeln!(out, "{i},defect_{},{defect}", a.curve_kind.name()).unwrap();
                    }
                }
                if let Some(best) = report.best_approx() {
                    writeln!(out, "{i},best_approx,{best}").unwrap();
                }
            }
        }
    }
    Ok(out)
}

pub fn curve(
    pairs: &[(Gaussian, Gaussian)],
    samples: usize,
    kinds: &[CurveKind],
) -> Result<String, CliError> {
    let (n1, n2) = match pairs {
        [pair] => pair,
        _ => {
            return Err(CliError::input(format!(
                "curve command takes exactly one pair, input has {}",
                pairs.len()
            )))
        }
    };
    let kind = match kinds {
        [kind] => *kind,
        _ => {
            return Err(CliError::input(
                "curve command needs exactly one --curves entry",
            ))
        }
    };
    if samples < 2 {
        return Err(CliError::input("curve needs at least 2 samples (--T)"));
    }
    let curve = Curve::new(kind, n1, n2)
        .map_err(|e| CliError::compute(format!("curve {}: {e}", kind.name())))?;

    let d = n1.dim();
    let mut out = String::from("t");
    for i in 1..=d {
        write!(out, ",mu_{i}").unwrap();
    }
    for i in 1..=d {
        for j in i..=d {
            write!(out, ",sigma_{i}{j}").unwrap();
        }
    }
    out.push('\n');
    for s in 0..samples {
        let t = s as f64 / (samples - 1) as f64;
        let g = curve
            .evaluate(t)
            .map_err(|e| CliError::compute(format!("curve {} at t = {t}: {e}", kind.name())))?;
        write!(out, "{t}").unwrap();
        for i in 0..d {
            write!(out, ",{}", g.mean()[i]).unwrap();
        }
        for i in 0..d {
            for j in i..d {
                write!(out, ",{}", g.cov().mat()[(i, j)]).unwrap();
            }
        }
        out.push('\n');
    }
    Ok(out)
}

#[derive(Serialize)]
struct GaussianOut {
    mean: Vec<f64>,
    cov: Vec<Vec<f64>>,
}

impl GaussianOut {
    fn of(g: &Gaussian) -> GaussianOut {
        let d = g.dim();
        GaussianOut {
            mean: g.mean().to_vec(),
            cov: (0..d)
                .map(|i| (0..d).map(|j| g.cov().mat()[(i, j)]).collect())
                .collect(),
        }
    }
}

#[derive(Serialize)]
struct SebOut {
    center: GaussianOut,
    radius: f64,
    projection_gap: f64,
}

pub fn seb(set: &[Gaussian], t_iters: usize, format: Format) -> Result<String, CliError> {
    let ball = fr_circumcenter(set, t_iters)?;
    match format {
        Format::Json => {
            let rendered = SebOut {
                center: GaussianOut::of(&ball.center),
                radius: ball.radius,
                projection_gap: ball.projection_gap,
            };
            Ok(format!("{}\n", serde_json::to_string(&rendered).unwrap()))
        }
        Format::Csv => {
            let mut out = String::from("key,value\n");
            writeln!(out, "radius,{}", ball.radius).unwrap();
            writeln!(out, "projection_gap,{}", ball.projection_gap).unwrap();
            let d = ball.center.dim();
            for i in 0..d {
                writeln!(out, "mean_{},{}", i + 1, ball.center.mean()[i]).unwrap();
            }
            for i in 0..d {
                for j in i..d {
                    writeln!(out, "cov_{}{},{}", i + 1, j + 1, ball.center.cov().mat()[(i, j)])
                        .unwrap();
                }
            }
            Ok(out)
        }
    }
}

#[derive(Serialize)]
struct KCenterOut {
    center_indices: Vec<usize>,
    assignment: Vec<usize>,
    radius: f64,
}

pub fn kcenter(set: &[Gaussian], k: usize, seed: u64, format: Format) -> Result<String, CliError> {
    let res = k_center(set, k, seed)?;
    match format {
        Format::Json => {
            let rendered = KCenterOut {
                center_indices: res.center_indices,
                assignment: res.assignment,
                radius: res.radius,
            };
            Ok(format!("{}\n", serde_json::to_string(&rendered).unwrap()))
        }
        Format::Csv => {
            let mut out = String::from("key,value\n");
            for (c, &idx) in res.center_indices.iter().enumerate() {
                writeln!(out, "center_{c},{idx}").unwrap();
            }
            for (p, &a) in res.assignment.iter().enumerate() {
                writeln!(out, "point_{p},{a}").unwrap();
            }
            writeln!(out, "radius,{}", res.radius).unwrap();
            Ok(out)
        }
    }
}
