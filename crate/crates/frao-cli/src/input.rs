//! Input JSON: deserialization and validation of Gaussian pairs and sets.

use crate::CliError;
use frao::linalg::SpdMatrix;
use frao::Gaussian;
use serde::Deserialize;
use std::io::Read;
use std::path::Path;

#[derive(Deserialize)]
struct GaussianSpec {
    mean: Vec<f64>,
    cov: Vec<Vec<f64>>,
}

#[derive(Deserialize)]
struct PairSpec {
    n1: GaussianSpec,
    n2: GaussianSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputDoc {
    #[serde(default)]
    pairs: Vec<PairSpec>,
    #[serde(default)]
    set: Vec<GaussianSpec>,
}

fn read_source(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p)
            .map_err(|e| CliError::input(format!("cannot read {}: {e}", p.display()))),
        _ => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| CliError::input(format!("cannot read stdin: {e}")))?;
            Ok(buf)
        }
    }
}

fn parse(path: Option<&Path>) -> Result<InputDoc, CliError> {
    let text = read_source(path)?;
    serde_json::from_str(&text).map_err(|e| CliError::input(format!("invalid input JSON: {e}")))
}

fn build_gaussian(spec: &GaussianSpec, label: &str) -> Result<Gaussian, CliError> {
    let d = spec.mean.len();
    if spec.cov.len() != d || spec.cov.iter().any(|row| row.len() != d) {
        return Err(CliError::input(format!(
            "{label}: cov must be {d}x{d} to match the mean"
        )));
    }
    let data: Vec<f64> = spec.cov.iter().flatten().copied().collect();
    let cov = SpdMatrix::from_rows(d, data)
        .map_err(|e| CliError::input(format!("{label}: {e}")))?;
    Gaussian::new(spec.mean.clone(), cov).map_err(|e| CliError::input(format!("{label}: {e}")))
}

/// Reads and validates the `pairs` list; errors if it is absent or empty.
pub fn read_pairs(path: Option<&Path>) -> Result<Vec<(Gaussian, Gaussian)>, CliError> {
    let doc = parse(path)?;
    if doc.pairs.is_empty() {
        return Err(CliError::input(
            "input needs a nonempty \"pairs\" list for this command",
        ));
    }
    doc.pairs
        .iter()
        .enumerate()
        .map(|(i, p)| {
            Ok((
                build_gaussian(&p.n1, &format!("pairs[{i}].n1"))?,
                build_gaussian(&p.n2, &format!("pairs[{i}].n2"))?,
            ))
        })
        .collect()
}

/// Reads and validates the `set` list; errors if it is absent or empty.
pub fn read_set(path: Option<&Path>) -> Result<Vec<Gaussian>, CliError> {
    let doc = parse(path)?;
    if doc.set.is_empty() {
        return Err(CliError::input(
            "input needs a nonempty \"set\" list for this command",
        ));
    }
    doc.set
        .iter()
        .enumerate()
        .map(|(i, g)| build_gaussian(g, &format!("set[{i}]")))
        .collect()
}
