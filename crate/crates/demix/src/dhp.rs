//! Dirichlet-process machinery: classic Chinese-restaurant seating
//! probabilities and the intensity-weighted variant where per-source Hawkes
//! intensities replace table counts.
//!
//! In the intensity-weighted prior the base rate `lambda0` plays the
//! concentration role: a new source opens with probability
//! `lambda0 / lambda(t)` and source `h` is reused with probability
//! `lambda_h(t) / lambda(t)`.

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Concentration parameter of the classic Chinese restaurant process.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrpParams {
    pub concentration: f64,
}

impl CrpParams {
    pub fn new(concentration: f64) -> Result<Self> {
        if concentration <= 0.0 {
            return Err(Error::config("CRP concentration must be positive"));
        }
        Ok(CrpParams { concentration })
    }
}

/// Seating probabilities for the next customer given table occupancies.
///
/// Returns a length `H + 1` vector: entry `h` is `n_h / (alpha + n - 1)` for
/// each existing table, and the last entry `alpha / (alpha + n - 1)` opens a
/// new table. An empty configuration seats the first customer at a fresh
/// table with probability 1.
pub fn crp_probabilities(table_counts: &[usize], params: &CrpParams) -> Result<Vec<f64>> {
    if table_counts.contains(&0) {
        return Err(Error::invalid("table counts must be positive"));
    }
    let seated: usize = table_counts.iter().sum();
    let denom = params.concentration + seated as f64;
    let mut probs: Vec<f64> = table_counts.iter().map(|&n| n as f64 / denom).collect();
    probs.push(params.concentration / denom);
    Ok(probs)
}

/// Assignment prior where intensities replace table counts.
///
/// Entry `h` is `lambda_h / lambda(t)`, the last entry `lambda0 / lambda(t)`
/// opens a new source, with `lambda(t) = lambda0 + sum_h lambda_h`. All
/// entries are computed from the same components so the vector sums to 1.
pub fn dhp_assignment_prior(cluster_intensities: &[f64], lambda0: f64) -> Result<Vec<f64>> {
    if lambda0 <= 0.0 {
        return Err(Error::invalid("lambda0 must be positive"));
    }
    if cluster_intensities
        .iter()
        .any(|&l| l < 0.0 || !l.is_finite())
    {
        return Err(Error::invalid(
            "cluster intensities must be finite and non-negative",
        ));
    }
    let total = lambda0 + cluster_intensities.iter().sum::<f64>();
    let mut probs: Vec<f64> = cluster_intensities.iter().map(|&l| l / total).collect();
    probs.push(lambda0 / total);
    Ok(probs)
}
