//! Demix untangles a time-ordered stream of marked events (transactions
//! carrying a timestamp, a vendor label, and bag-of-words content) into an
//! unbounded number of latent sources.
//!
//! Each latent source is modeled as a self-exciting Hawkes process over time
//! together with a multinomial distribution over content words and a
//! categorical distribution over vendors. A Dirichlet-process prior in which
//! source intensities play the role of table counts decides, event by event,
//! whether an incoming transaction reuses an existing source or opens a new
//! one. Inference is sequential Monte Carlo over assignment histories.
//!
//! The crate ships four layers:
//!
//! - model primitives: [`hawkes`] (intensities, closed-form compensator,
//!   thinning sampler, kernel-weight MLE), [`dhp`] (assignment priors), and
//!   [`marks`] (collapsed conjugate predictives for words and vendors);
//! - inference: [`smc`] (particles, proposal, resampling, stream fitting);
//! - data: [`event_model`] (transactions, tokenization, JSONL ingestion) and
//!   [`generator`] (the full generative process plus scenario presets);
//! - evaluation: [`evaluation`] (ARS, NMI, V-measure, homogeneity,
//!   silhouette, sliding-window topic coherence) and [`cli`] (the `demix`
//!   command-line front end: `simulate`, `fit`, `eval`, `benchmark`).
//!
//! The `examples/` directory contains one runnable example per capability;
//! start with `fit_mixed_stream`:
//!
//! ```bash
//! cargo run -p demix --example fit_mixed_stream
//! ```

pub mod cli;
pub mod config;
pub mod dhp;
mod error;
pub mod evaluation;
pub mod event_model;
pub mod generator;
pub mod hawkes;
pub mod marks;
pub mod smc;

pub use error::{Error, Result};

/// Numerically stable log(sum(exp(x))) over a slice.
///
/// Entries equal to `f64::NEG_INFINITY` contribute zero mass; an all
/// `-inf` (or empty) input yields `-inf`.
pub fn log_sum_exp(values: &[f64]) -> f64 {
    let max = values.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !max.is_finite() {
        return max;
    }
    let sum: f64 = values.iter().map(|v| (v - max).exp()).sum();
    max + sum.ln()
}
