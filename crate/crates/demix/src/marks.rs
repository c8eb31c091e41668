//! Collapsed conjugate predictive likelihoods for event marks.
//!
//! Content words follow a per-source multinomial with a symmetric Dirichlet
//! prior, vendors a per-source categorical with its own Dirichlet prior.
//! Both parameters are integrated out, leaving predictives that depend only
//! on per-source counts:
//!
//! ```text
//! P(w_n | source) = Gamma(C_n + 1) / prod_w Gamma(c_nw + 1)
//!                 * Gamma(C + theta0 |W|) / Gamma(C + C_n + theta0 |W|)
//!                 * prod_w Gamma(C_w + c_nw + theta0) / Gamma(C_w + theta0)
//!
//! P(v_n = v | source) = (C_v + eta0) / (C + eta0 |V|)
//! ```
//!
//! where `C_w`/`C` are the source's word counts and total excluding the
//! candidate event, and `c_nw`/`C_n` are the candidate's counts. Everything
//! runs through log-Gamma, so counts up to 1e6 stay finite.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::{Error, Result};

/// Symmetric Dirichlet prior over content words.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContentPrior {
    /// Pseudo-count per word; small values make sources content-discriminative.
    pub theta0: f64,
    pub vocab_size: usize,
}

impl ContentPrior {
    pub fn new(theta0: f64, vocab_size: usize) -> Result<Self> {
        if theta0 <= 0.0 {
            return Err(Error::config("theta0 must be positive"));
        }
        Ok(ContentPrior { theta0, vocab_size })
    }
}

/// Symmetric Dirichlet prior over vendors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct VendorPrior {
    pub eta0: f64,
    pub catalog_size: usize,
}

impl VendorPrior {
    pub fn new(eta0: f64, catalog_size: usize) -> Result<Self> {
        if eta0 <= 0.0 {
            return Err(Error::config("eta0 must be positive"));
        }
        Ok(VendorPrior { eta0, catalog_size })
    }
}

/// Per-source sufficient statistics for the collapsed predictives.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ClusterMarkStats {
    word_counts: BTreeMap<usize, u64>,
    word_total: u64,
    vendor_counts: Vec<u64>,
    vendor_total: u64,
}

impl ClusterMarkStats {
    pub fn new(catalog_size: usize) -> Self {
        ClusterMarkStats {
            word_counts: BTreeMap::new(),
            word_total: 0,
            vendor_counts: vec![0; catalog_size],
            vendor_total: 0,
        }
    }

    pub fn word_count(&self, w: usize) -> u64 {
        self.word_counts.get(&w).copied().unwrap_or(0)
    }

    pub fn word_total(&self) -> u64 {
        self.word_total
    }

    pub fn word_counts(&self) -> &BTreeMap<usize, u64> {
        &self.word_counts
    }

    pub fn vendor_count(&self, v: usize) -> u64 {
        self.vendor_counts.get(v).copied().unwrap_or(0)
    }

    pub fn vendor_counts(&self) -> &[u64] {
        &self.vendor_counts
    }

    pub fn vendor_total(&self) -> u64 {
        self.vendor_total
    }

    /// Folds one event's marks into the statistics.
    pub fn add_event(&mut self, content: &BTreeMap<usize, u32>, vendor: usize) -> Result<()> {
        if vendor >= self.vendor_counts.len() {
            return Err(Error::invalid(format!(
                "vendor index {vendor} out of catalog"
            )));
        }
        for (&w, &count) in content {
            *self.word_counts.entry(w).or_insert(0) += count as u64;
            self.word_total += count as u64;
        }
        self.vendor_counts[vendor] += 1;
        self.vendor_total += 1;
        Ok(())
    }

    /// Removes one event's marks; the exact inverse of [`Self::add_event`].
    pub fn remove_event(&mut self, content: &BTreeMap<usize, u32>, vendor: usize) -> Result<()> {
        if vendor >= self.vendor_counts.len() || self.vendor_counts[vendor] == 0 {
            return Err(Error::invalid(format!(
                "cannot remove vendor {vendor}: count would underflow"
            )));
        }
        for (&w, &count) in content {
            let have = self.word_counts.get(&w).copied().unwrap_or(0);
            if have < count as u64 {
                return Err(Error::invalid(format!(
                    "cannot remove word {w}: count would underflow"
                )));
            }
        }
        for (&w, &count) in content {
            let entry = self.word_counts.get_mut(&w).unwrap();
            *entry -= count as u64;
            if *entry == 0 {
                self.word_counts.remove(&w);
            }
            self.word_total -= count as u64;
        }
        self.vendor_counts[vendor] -= 1;
        self.vendor_total -= 1;
        Ok(())
    }
}

fn check_content(content: &BTreeMap<usize, u32>, prior: &ContentPrior) -> Result<()> {
    if let Some((&w, _)) = content.iter().next_back() {
        if w >= prior.vocab_size {
            return Err(Error::invalid(format!(
                "word index {w} out of vocabulary of size {}",
                prior.vocab_size
            )));
        }
    }
    Ok(())
}

fn content_log_predictive_inner(
    stats: &ClusterMarkStats,
    content: &BTreeMap<usize, u32>,
    prior: &ContentPrior,
    with_coefficient: bool,
) -> Result<f64> {
    check_content(content, prior)?;
    let c_n: u64 = content.values().map(|&c| c as u64).sum();
    if c_n == 0 {
        return Ok(0.0);
    }
    let theta_sum = prior.theta0 * prior.vocab_size as f64;
    let c_u = stats.word_total() as f64;

    let mut log_p = ln_gamma(c_u + theta_sum) - ln_gamma(c_u + c_n as f64 + theta_sum);
    for (&w, &count) in content {
        let c_w = stats.word_count(w) as f64;
        log_p += ln_gamma(c_w + count as f64 + prior.theta0) - ln_gamma(c_w + prior.theta0);
    }
    if with_coefficient {
        log_p += ln_gamma(c_n as f64 + 1.0);
        for &count in content.values() {
            log_p -= ln_gamma(count as f64 + 1.0);
        }
    }
    Ok(log_p)
}

/// Log marginal probability of drawing the bag `content` from a source with
/// the given statistics, the Dirichlet parameter integrated out.
///
/// Includes the multinomial coefficient, matching the closed form above;
/// `stats` must exclude the candidate event itself. An empty bag has
/// probability 1.
pub fn content_log_predictive(
    stats: &ClusterMarkStats,
    content: &BTreeMap<usize, u32>,
    prior: &ContentPrior,
) -> Result<f64> {
    content_log_predictive_inner(stats, content, prior, true)
}

/// [`content_log_predictive`] without the multinomial coefficient.
///
/// The coefficient depends only on the candidate bag, so it cancels when
/// scores are normalized across candidate sources; assignment scoring uses
/// this variant.
pub fn content_log_predictive_proportional(
    stats: &ClusterMarkStats,
    content: &BTreeMap<usize, u32>,
    prior: &ContentPrior,
) -> Result<f64> {
    content_log_predictive_inner(stats, content, prior, false)
}

/// Log predictive probability of the vendor mark:
/// `log((C_v + eta0) / (C + eta0 |V|))` with `stats` excluding the candidate.
pub fn vendor_log_predictive(
    stats: &ClusterMarkStats,
    vendor: usize,
    prior: &VendorPrior,
) -> Result<f64> {
    if vendor >= prior.catalog_size {
        return Err(Error::invalid(format!(
            "vendor index {vendor} out of catalog of size {}",
            prior.catalog_size
        )));
    }
    let c_v = stats.vendor_count(vendor) as f64;
    let c = stats.vendor_total() as f64;
    let eta_sum = prior.eta0 * prior.catalog_size as f64;
    Ok(((c_v + prior.eta0) / (c + eta_sum)).ln())
}
