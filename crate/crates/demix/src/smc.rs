//! Sequential Monte Carlo over source assignments.
//!
//! Each particle carries one full assignment history and the source states
//! it induces. Per event, the proposal is the exact local posterior
//!
//! ```text
//! P(u_n | ...) ~ P(v_n | u_n) * P(w_n | u_n) * P(u_n | t_n)
//! ```
//!
//! over the existing sources plus one fresh source; the importance weight is
//! multiplied by the proposal's normalizing constant (the event's marginal
//! likelihood under the particle), which is the standard pairing when
//! proposing from the local posterior. Systematic resampling triggers when
//! the effective sample size drops below a configured fraction, and kernel
//! weights are refit by maximum likelihood every few assignments per source.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::dhp::dhp_assignment_prior;
use crate::event_model::{Dataset, Transaction};
use crate::hawkes::{
    cluster_intensity, fit_weights_mle, log_likelihood, HawkesParams, KernelWeights,
};
use crate::marks::{
    content_log_predictive_proportional, vendor_log_predictive, ClusterMarkStats, ContentPrior,
    VendorPrior,
};
use crate::{log_sum_exp, Error, Result};

/// Which factors of the proposal participate in scoring. Disabling the
/// vendor factor reproduces the time+content baseline.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AblationFlags {
    pub use_vendor: bool,
    pub use_content: bool,
    pub use_time: bool,
}

impl Default for AblationFlags {
    fn default() -> Self {
        AblationFlags {
            use_vendor: true,
            use_content: true,
            use_time: true,
        }
    }
}

/// How the proposal is realized per event.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AssignmentMode {
    /// Draw from the local posterior (the SMC proposal proper).
    Sample,
    /// Take the highest-scoring option; ties go to the lowest source index.
    /// Fully deterministic regardless of seed when `num_particles == 1`.
    Argmax,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SmcConfig {
    pub num_particles: usize,
    /// Resample when ESS < `ess_threshold * num_particles`.
    pub ess_threshold: f64,
    pub seed: u64,
    pub ablation: AblationFlags,
    pub assignment_mode: AssignmentMode,
    /// Refit a source's kernel weights after this many assignments to it.
    pub mle_refit_interval: usize,
    /// Grid step (days) of the emitted per-source intensity trace.
    pub trace_grid_step: f64,
    /// How many top words each source summary reports.
    pub top_words: usize,
}

impl Default for SmcConfig {
    fn default() -> Self {
        SmcConfig {
            num_particles: 8,
            ess_threshold: 0.5,
            seed: 0,
            ablation: AblationFlags::default(),
            assignment_mode: AssignmentMode::Sample,
            mle_refit_interval: 10,
            trace_grid_step: 1.0,
            top_words: 15,
        }
    }
}

impl SmcConfig {
    pub fn validate(&self) -> Result<()> {
        if self.num_particles == 0 {
            return Err(Error::config("num_particles must be >= 1"));
        }
        if !(self.ess_threshold > 0.0 && self.ess_threshold <= 1.0) {
            return Err(Error::config("ess_threshold must lie in (0, 1]"));
        }
        if self.mle_refit_interval == 0 {
            return Err(Error::config("mle_refit_interval must be >= 1"));
        }
        if self.trace_grid_step <= 0.0 {
            return Err(Error::config("trace_grid_step must be positive"));
        }
        if self.top_words == 0 {
            return Err(Error::config("top_words must be >= 1"));
        }
        Ok(())
    }
}

/// Mutable state of one hypothesized source inside a particle.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterState {
    pub history: Vec<f64>,
    pub weights: KernelWeights,
    pub marks: ClusterMarkStats,
    events_since_refit: usize,
}

impl ClusterState {
    fn new(k: usize, catalog_size: usize) -> Self {
        ClusterState {
            history: Vec::new(),
            weights: KernelWeights::uniform(k),
            marks: ClusterMarkStats::new(catalog_size),
            events_since_refit: 0,
        }
    }
}

/// One SMC hypothesis: a full assignment history, the source states it
/// induces, and a log importance weight.
#[derive(Debug, Clone, PartialEq)]
pub struct Particle {
    pub assignments: Vec<usize>,
    pub clusters: Vec<ClusterState>,
    pub log_weight: f64,
    last_time: Option<f64>,
}

impl Particle {
    pub fn new() -> Self {
        Particle {
            assignments: Vec::new(),
            clusters: Vec::new(),
            log_weight: 0.0,
            last_time: None,
        }
    }

    pub fn num_clusters(&self) -> usize {
        self.clusters.len()
    }
}

impl Default for Particle {
    fn default() -> Self {
        Particle::new()
    }
}

fn empty_mark_stats(catalog_size: usize) -> ClusterMarkStats {
    ClusterMarkStats::new(catalog_size)
}

fn unnormalized_scores(
    particle: &Particle,
    txn: &Transaction,
    params: &HawkesParams,
    content_prior: &ContentPrior,
    vendor_prior: &VendorPrior,
    flags: &AblationFlags,
) -> Result<Vec<f64>> {
    let h = particle.clusters.len();
    let mut scores = vec![0.0f64; h + 1];

    if flags.use_time {
        let mut components = Vec::with_capacity(h);
        for c in &particle.clusters {
            components.push(cluster_intensity(
                &c.history,
                &c.weights,
                &params.kernels,
                txn.time,
            )?);
        }
        let prior = dhp_assignment_prior(&components, params.lambda0)?;
        for (score, p) in scores.iter_mut().zip(&prior) {
            *score += p.ln();
        }
    }

    if flags.use_content {
        for (i, c) in particle.clusters.iter().enumerate() {
            scores[i] +=
                content_log_predictive_proportional(&c.marks, &txn.content, content_prior)?;
        }
        let fresh = empty_mark_stats(vendor_prior.catalog_size);
        scores[h] += content_log_predictive_proportional(&fresh, &txn.content, content_prior)?;
    }

    if flags.use_vendor {
        for (i, c) in particle.clusters.iter().enumerate() {
            scores[i] += vendor_log_predictive(&c.marks, txn.vendor_id, vendor_prior)?;
        }
        let fresh = empty_mark_stats(vendor_prior.catalog_size);
        scores[h] += vendor_log_predictive(&fresh, txn.vendor_id, vendor_prior)?;
    }

    Ok(scores)
}

/// Log-probability vector of length `H + 1` over assignment options for the
/// incoming transaction: each existing source, then a fresh source.
/// Normalized by log-sum-exp; disabled factors contribute nothing.
pub fn assignment_scores(
    particle: &Particle,
    txn: &Transaction,
    params: &HawkesParams,
    content_prior: &ContentPrior,
    vendor_prior: &VendorPrior,
    flags: &AblationFlags,
) -> Result<Vec<f64>> {
    let scores = unnormalized_scores(particle, txn, params, content_prior, vendor_prior, flags)?;
    let norm = log_sum_exp(&scores);
    if !norm.is_finite() {
        return Err(Error::Numerical(
            "all assignment options have zero probability".into(),
        ));
    }
    Ok(scores.iter().map(|s| s - norm).collect())
}

fn pick_option(log_probs: &[f64], mode: AssignmentMode, rng: &mut impl Rng) -> usize {
    match mode {
        AssignmentMode::Argmax => {
            let mut best = 0;
            for (i, &s) in log_probs.iter().enumerate() {
                if s > log_probs[best] {
                    best = i;
                }
            }
            best
        }
        AssignmentMode::Sample => {
            let u: f64 = rng.gen();
            let mut cum = 0.0;
            for (i, &s) in log_probs.iter().enumerate() {
                cum += s.exp();
                if u < cum {
                    return i;
                }
            }
            log_probs.len() - 1
        }
    }
}

/// Advances one particle by one transaction: samples an assignment from the
/// local posterior, applies it, refits the chosen source's kernel weights on
/// schedule, and folds the event's marginal likelihood into the log weight.
///
/// Returns the chosen source index. Events must arrive in time order.
pub fn advance(
    particle: &mut Particle,
    txn: &Transaction,
    params: &HawkesParams,
    content_prior: &ContentPrior,
    vendor_prior: &VendorPrior,
    config: &SmcConfig,
    rng: &mut impl Rng,
) -> Result<usize> {
    if let Some(last) = particle.last_time {
        if txn.time < last {
            return Err(Error::invalid(format!(
                "event at t={} arrived after the particle reached t={last}",
                txn.time
            )));
        }
    }
    let scores = unnormalized_scores(
        particle,
        txn,
        params,
        content_prior,
        vendor_prior,
        &config.ablation,
    )?;
    let marginal = log_sum_exp(&scores);
    if !marginal.is_finite() {
        return Err(Error::Numerical(
            "event has zero marginal likelihood under the particle".into(),
        ));
    }
    let log_probs: Vec<f64> = scores.iter().map(|s| s - marginal).collect();
    let choice = pick_option(&log_probs, config.assignment_mode, rng);

    if choice == particle.clusters.len() {
        particle.clusters.push(ClusterState::new(
            params.kernels.k(),
            vendor_prior.catalog_size,
        ));
    }
    let cluster = &mut particle.clusters[choice];
    cluster.history.push(txn.time);
    cluster.marks.add_event(&txn.content, txn.vendor_id)?;
    cluster.events_since_refit += 1;
    if cluster.events_since_refit >= config.mle_refit_interval {
        let fit = fit_weights_mle(&cluster.history, &params.kernels, params, txn.time)?;
        cluster.weights = fit.weights;
        cluster.events_since_refit = 0;
    }

    particle.assignments.push(choice);
    particle.log_weight += marginal;
    particle.last_time = Some(txn.time);
    Ok(choice)
}

/// Normalized particle weights from the stored log weights.
pub fn normalized_weights(particles: &[Particle]) -> Vec<f64> {
    let logs: Vec<f64> = particles.iter().map(|p| p.log_weight).collect();
    let norm = log_sum_exp(&logs);
    if !norm.is_finite() {
        // all weights collapsed: fall back to uniform
        return vec![1.0 / particles.len() as f64; particles.len()];
    }
    logs.iter().map(|l| (l - norm).exp()).collect()
}

/// Effective sample size `1 / sum_i w_i^2` of the normalized weights.
pub fn effective_sample_size(particles: &[Particle]) -> f64 {
    let weights = normalized_weights(particles);
    1.0 / weights.iter().map(|w| w * w).sum::<f64>()
}

/// Systematic resampling: draws equally spaced positions through the weight
/// CDF, replaces the population with the selected copies, and resets all
/// weights to uniform.
pub fn resample(particles: &mut Vec<Particle>, rng: &mut impl Rng) {
    let n = particles.len();
    if n <= 1 {
        for p in particles.iter_mut() {
            p.log_weight = 0.0;
        }
        return;
    }
    let weights = normalized_weights(particles);
    let start: f64 = rng.gen::<f64>() / n as f64;
    let mut selected = Vec::with_capacity(n);
    let mut cum = weights[0];
    let mut idx = 0;
    for i in 0..n {
        let position = start + i as f64 / n as f64;
        while position > cum && idx + 1 < n {
            idx += 1;
            cum += weights[idx];
        }
        selected.push(idx);
    }
    let mut next: Vec<Particle> = selected.into_iter().map(|i| particles[i].clone()).collect();
    for p in &mut next {
        p.log_weight = 0.0;
    }
    *particles = std::mem::take(&mut next);
}

/// Everything `fit_sequence` needs besides the data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FitConfig {
    pub hawkes: HawkesParams,
    /// Symmetric Dirichlet pseudo-count per content word.
    pub theta0: f64,
    /// Symmetric Dirichlet pseudo-count per vendor.
    pub eta0: f64,
    pub smc: SmcConfig,
}

impl Default for FitConfig {
    fn default() -> Self {
        FitConfig {
            hawkes: HawkesParams::default(),
            theta0: 0.01,
            eta0: 0.1,
            smc: SmcConfig::default(),
        }
    }
}

impl FitConfig {
    pub fn validate(&self) -> Result<()> {
        self.hawkes.validate()?;
        if self.theta0 <= 0.0 {
            return Err(Error::config("theta0 must be positive"));
        }
        if self.eta0 <= 0.0 {
            return Err(Error::config("eta0 must be positive"));
        }
        self.smc.validate()
    }
}

/// One fitted source, summarized for reporting.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterSummary {
    pub size: usize,
    pub event_times: Vec<f64>,
    pub kernel_weights: Vec<f64>,
    /// Most frequent words, by count then vocabulary order.
    pub top_words: Vec<(String, u64)>,
    /// Vendors seen in this source, by count then catalog order.
    pub vendor_histogram: Vec<(String, u64)>,
    /// Source intensity sampled on the shared trace grid.
    pub intensity: Vec<f64>,
}

/// Final labeling of a stream plus per-source summaries, taken from the
/// highest-weight particle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteringResult {
    /// Per-event source index in `[0, h_hat)`.
    pub labels: Vec<usize>,
    /// Number of distinct sources.
    pub h_hat: usize,
    /// Point-process log-likelihood of the stream under the final labeling.
    pub stream_log_likelihood: f64,
    /// Events whose intensity degenerated to zero (drives the likelihood to
    /// `-inf`); zero in well-posed configurations.
    pub degenerate_events: usize,
    /// Shared time grid of the intensity traces.
    pub trace_times: Vec<f64>,
    pub clusters: Vec<ClusterSummary>,
}

fn summarize(
    particle: &Particle,
    dataset: &Dataset,
    config: &FitConfig,
) -> Result<ClusteringResult> {
    let horizon = dataset.stream.horizon_days;
    let mut trace_times = Vec::new();
    let mut t = 0.0;
    while t <= horizon + 1e-12 {
        trace_times.push(t);
        t += config.smc.trace_grid_step;
    }

    let mut clusters = Vec::with_capacity(particle.clusters.len());
    for state in &particle.clusters {
        let mut word_counts: Vec<(usize, u64)> = state
            .marks
            .word_counts()
            .iter()
            .map(|(&w, &c)| (w, c))
            .collect();
        word_counts.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        let top_words = word_counts
            .iter()
            .take(config.smc.top_words)
            .map(|&(w, c)| {
                let word = dataset
                    .vocabulary
                    .word(w)
                    .ok_or_else(|| Error::invalid(format!("word index {w} out of vocabulary")))?;
                Ok((word.to_string(), c))
            })
            .collect::<Result<Vec<_>>>()?;

        let mut vendor_histogram = Vec::new();
        let mut vendor_pairs: Vec<(usize, u64)> = state
            .marks
            .vendor_counts()
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (v, c))
            .collect();
        vendor_pairs.sort_by(|a, b| b.1.cmp(&a.1).then(a.0.cmp(&b.0)));
        for (v, c) in vendor_pairs {
            let name = dataset
                .vendors
                .name(v)
                .ok_or_else(|| Error::invalid(format!("vendor index {v} out of catalog")))?;
            vendor_histogram.push((name.to_string(), c));
        }

        let intensity = trace_times
            .iter()
            .map(|&t| {
                let visible: Vec<f64> = state
                    .history
                    .iter()
                    .copied()
                    .filter(|&ti| ti <= t)
                    .collect();
                cluster_intensity(&visible, &state.weights, &config.hawkes.kernels, t)
            })
            .collect::<Result<Vec<_>>>()?;

        clusters.push(ClusterSummary {
            size: state.history.len(),
            event_times: state.history.clone(),
            kernel_weights: state.weights.as_slice().to_vec(),
            top_words,
            vendor_histogram,
            intensity,
        });
    }

    let weights: Vec<KernelWeights> = particle
        .clusters
        .iter()
        .map(|c| c.weights.clone())
        .collect();
    let times = dataset.stream.times();
    let ll = log_likelihood(
        &times,
        &particle.assignments,
        &weights,
        &config.hawkes,
        horizon,
    )?;

    Ok(ClusteringResult {
        labels: particle.assignments.clone(),
        h_hat: particle.clusters.len(),
        stream_log_likelihood: ll.value,
        degenerate_events: ll.zero_intensity_events,
        trace_times,
        clusters,
    })
}

/// Runs the particle filter over the whole stream and returns the labeling
/// of the highest-weight particle.
pub fn fit_sequence(dataset: &Dataset, config: &FitConfig) -> Result<ClusteringResult> {
    config.validate()?;
    if dataset.stream.is_empty() {
        return Err(Error::invalid("cannot fit an empty stream"));
    }
    let content_prior = ContentPrior::new(config.theta0, dataset.vocabulary.len().max(1))?;
    let vendor_prior = VendorPrior::new(config.eta0, dataset.vendors.len().max(1))?;

    let mut master = ChaCha8Rng::seed_from_u64(config.smc.seed);
    let mut slot_rngs: Vec<ChaCha8Rng> = (0..config.smc.num_particles)
        .map(|_| ChaCha8Rng::seed_from_u64(master.gen()))
        .collect();
    let mut resample_rng = ChaCha8Rng::seed_from_u64(master.gen());

    let mut particles = vec![Particle::new(); config.smc.num_particles];
    for txn in &dataset.stream.transactions {
        for (particle, rng) in particles.iter_mut().zip(slot_rngs.iter_mut()) {
            advance(
                particle,
                txn,
                &config.hawkes,
                &content_prior,
                &vendor_prior,
                &config.smc,
                rng,
            )?;
        }
        let ess = effective_sample_size(&particles);
        if ess < config.smc.ess_threshold * config.smc.num_particles as f64 {
            resample(&mut particles, &mut resample_rng);
        }
    }

    let best = particles
        .iter()
        .enumerate()
        .max_by(|a, b| {
            a.1.log_weight
                .partial_cmp(&b.1.log_weight)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(b.0.cmp(&a.0)) // ties: lowest index wins
        })
        .map(|(_, p)| p.clone())
        .expect("at least one particle");

    let mut winner = best;
    for cluster in &mut winner.clusters {
        let fit = fit_weights_mle(
            &cluster.history,
            &config.hawkes.kernels,
            &config.hawkes,
            dataset.stream.horizon_days,
        )?;
        cluster.weights = fit.weights;
    }

    summarize(&winner, dataset, config)
}
