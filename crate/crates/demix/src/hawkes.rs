//! Hawkes-process intensities with Gaussian-RBF triggering kernels.
//!
//! Each latent source excites itself through a mixture of K radial basis
//! bumps placed at reference delays:
//!
//! ```text
//! lambda_h(t) = sum_{t_i in history(h)} sum_l alpha_h^l * kappa_l(t - t_i)
//! kappa_l(dt) = exp(-(dt - pi_l)^2 / (2 sigma_l^2)),   0 <= dt <= W
//! lambda(t)   = lambda0 + sum_h lambda_h(t)
//! ```
//!
//! with mixture weights on the simplex (`sum_l alpha^l = 1`). Kernels are
//! unnormalized (peak value 1); the simplex constraint absorbs the scale.
//! Contributions beyond the truncation window `W` are exactly zero, which
//! bounds per-event cost and makes dormant sources cheap.
//!
//! The compensator (integrated intensity) has a closed form through the
//! Gaussian error function, so point-process log-likelihoods are exact. The
//! same likelihood, restricted to one source's events, is the objective that
//! [`fit_weights_mle`] maximizes over the simplex by projected gradient
//! ascent.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use statrs::function::erf::erf;

use crate::{Error, Result};

const SQRT_2: f64 = std::f64::consts::SQRT_2;
const SQRT_2PI: f64 = 2.506_628_274_631_000_6;

/// The shared RBF triggering-kernel basis: reference delays, bandwidths, and
/// the truncation horizon beyond which contributions are exactly zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct KernelConfig {
    /// Reference delays `pi_l` in days; the peak location of each bump.
    pub reference_delays: Vec<f64>,
    /// Bandwidths `sigma_l` in days.
    pub bandwidths: Vec<f64>,
    /// Horizon `W`; must cover `max(pi) + 3 max(sigma)`.
    pub truncation_window: f64,
}

impl KernelConfig {
    pub fn new(
        reference_delays: Vec<f64>,
        bandwidths: Vec<f64>,
        truncation_window: f64,
    ) -> Result<Self> {
        let cfg = KernelConfig {
            reference_delays,
            bandwidths,
            truncation_window,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.reference_delays.is_empty() {
            return Err(Error::config("kernel basis must have K >= 1"));
        }
        if self.reference_delays.len() != self.bandwidths.len() {
            return Err(Error::config(
                "reference_delays and bandwidths must have equal length",
            ));
        }
        if self.reference_delays.iter().any(|&p| p <= 0.0)
            || self.bandwidths.iter().any(|&s| s <= 0.0)
        {
            return Err(Error::config(
                "reference delays and bandwidths must be positive",
            ));
        }
        let needed = self.reference_delays.iter().cloned().fold(0.0, f64::max)
            + 3.0 * self.bandwidths.iter().cloned().fold(0.0, f64::max);
        if self.truncation_window < needed {
            return Err(Error::config(format!(
                "truncation_window {} < max(pi) + 3 max(sigma) = {needed}",
                self.truncation_window
            )));
        }
        Ok(())
    }

    /// Number of basis kernels K.
    pub fn k(&self) -> usize {
        self.reference_delays.len()
    }
}

impl Default for KernelConfig {
    /// Delays spanning daily to monthly purchase cadences.
    fn default() -> Self {
        KernelConfig {
            reference_delays: vec![1.0, 3.0, 7.0, 14.0, 30.0],
            bandwidths: vec![0.5, 1.5, 3.5, 7.0, 15.0],
            truncation_window: 75.0,
        }
    }
}

/// Mixture weights over the kernel basis; non-negative and summing to 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct KernelWeights {
    alpha: Vec<f64>,
}

impl KernelWeights {
    pub fn new(alpha: Vec<f64>) -> Result<Self> {
        if alpha.is_empty() {
            return Err(Error::invalid("kernel weights must be non-empty"));
        }
        if alpha.iter().any(|&a| a < 0.0) {
            return Err(Error::invalid("kernel weights must be non-negative"));
        }
        let sum: f64 = alpha.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::invalid(format!(
                "kernel weights must sum to 1 (got {sum})"
            )));
        }
        Ok(KernelWeights { alpha })
    }

    pub fn uniform(k: usize) -> Self {
        KernelWeights {
            alpha: vec![1.0 / k as f64; k.max(1)],
        }
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.alpha
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }
}

impl TryFrom<Vec<f64>> for KernelWeights {
    type Error = Error;
    fn try_from(alpha: Vec<f64>) -> Result<Self> {
        KernelWeights::new(alpha)
    }
}

impl From<KernelWeights> for Vec<f64> {
    fn from(w: KernelWeights) -> Vec<f64> {
        w.alpha
    }
}

/// Base intensity plus the shared kernel basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct HawkesParams {
    /// Base intensity `lambda0` in events/day; also plays the concentration
    /// role in the assignment prior.
    pub lambda0: f64,
    pub kernels: KernelConfig,
}

impl HawkesParams {
    pub fn new(lambda0: f64, kernels: KernelConfig) -> Result<Self> {
        if lambda0 <= 0.0 {
            return Err(Error::config("lambda0 must be positive"));
        }
        kernels.validate()?;
        Ok(HawkesParams { lambda0, kernels })
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambda0 <= 0.0 {
            return Err(Error::config("lambda0 must be positive"));
        }
        self.kernels.validate()
    }
}

impl Default for HawkesParams {
    fn default() -> Self {
        HawkesParams {
            lambda0: 0.05,
            kernels: KernelConfig::default(),
        }
    }
}

/// Borrowed view of one source's state for intensity queries.
#[derive(Debug, Clone, Copy)]
pub struct ClusterTimeline<'a> {
    /// Event times of the source, ascending.
    pub history: &'a [f64],
    pub weights: &'a KernelWeights,
}

/// Value of basis kernel `l` at elapsed time `dt`; exactly zero beyond the
/// truncation window. Negative `dt` violates causality and is an error.
pub fn base_kernel(config: &KernelConfig, l: usize, dt: f64) -> Result<f64> {
    if dt < 0.0 {
        return Err(Error::invalid(format!(
            "kernel queried at negative elapsed time {dt}"
        )));
    }
    if l >= config.k() {
        return Err(Error::invalid(format!("kernel index {l} out of basis")));
    }
    if dt > config.truncation_window {
        return Ok(0.0);
    }
    let z = (dt - config.reference_delays[l]) / config.bandwidths[l];
    Ok((-0.5 * z * z).exp())
}

fn kernel_value_unchecked(config: &KernelConfig, l: usize, dt: f64) -> f64 {
    if dt < 0.0 || dt > config.truncation_window {
        return 0.0;
    }
    let z = (dt - config.reference_delays[l]) / config.bandwidths[l];
    (-0.5 * z * z).exp()
}

/// Intensity contributed by one source at time `t`.
///
/// History events must not postdate `t`; events exactly at `t` contribute
/// the kernel value at zero elapsed time, so tied timestamps stay valid.
pub fn cluster_intensity(
    history: &[f64],
    weights: &KernelWeights,
    config: &KernelConfig,
    t: f64,
) -> Result<f64> {
    let mut total = 0.0;
    for &ti in history {
        let dt = t - ti;
        if dt < 0.0 {
            return Err(Error::invalid(format!(
                "intensity queried at {t} before history event {ti}"
            )));
        }
        if dt > config.truncation_window {
            continue;
        }
        for (l, &a) in weights.as_slice().iter().enumerate() {
            total += a * kernel_value_unchecked(config, l, dt);
        }
    }
    Ok(total)
}

/// Total intensity `lambda0 + sum_h lambda_h(t)` plus the per-source
/// components it was built from.
pub fn total_intensity(
    clusters: &[ClusterTimeline<'_>],
    params: &HawkesParams,
    t: f64,
) -> Result<(f64, Vec<f64>)> {
    let mut components = Vec::with_capacity(clusters.len());
    let mut total = params.lambda0;
    for c in clusters {
        let lh = cluster_intensity(c.history, c.weights, &params.kernels, t)?;
        components.push(lh);
        total += lh;
    }
    Ok((total, components))
}

/// Mass of the standard Gaussian bump `exp(-(s - pi_l)^2 / (2 sigma_l^2))`
/// over `[lo, hi]` intersected with the kernel support `[0, W]`.
fn kernel_mass(config: &KernelConfig, l: usize, lo: f64, hi: f64) -> f64 {
    let lo = lo.max(0.0);
    let hi = hi.min(config.truncation_window);
    if hi <= lo {
        return 0.0;
    }
    let pi_l = config.reference_delays[l];
    let sigma = config.bandwidths[l];
    let a = (lo - pi_l) / sigma;
    let b = (hi - pi_l) / sigma;
    // integral = sigma * sqrt(2 pi) * (Phi(b) - Phi(a))
    sigma * SQRT_2PI * 0.5 * (erf(b / SQRT_2) - erf(a / SQRT_2))
}

/// Closed-form `int_a^b lambda(tau) d tau` for the given sources, using the
/// error function per (event, kernel) pair and respecting truncation.
pub fn compensator(
    clusters: &[ClusterTimeline<'_>],
    params: &HawkesParams,
    window: (f64, f64),
) -> Result<f64> {
    let (a, b) = window;
    if a > b {
        return Err(Error::invalid(format!(
            "compensator window [{a}, {b}] is reversed"
        )));
    }
    let mut total = params.lambda0 * (b - a);
    for c in clusters {
        for &ti in c.history {
            for (l, &alpha) in c.weights.as_slice().iter().enumerate() {
                if alpha == 0.0 {
                    continue;
                }
                total += alpha * kernel_mass(&params.kernels, l, a - ti, b - ti);
            }
        }
    }
    Ok(total)
}

/// A point-process log-likelihood with a degeneracy flag instead of a silent
/// `-inf`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LogLikelihood {
    pub value: f64,
    /// How many events had zero intensity (drives the value to `-inf`).
    pub zero_intensity_events: usize,
}

/// Log-likelihood of a fully assigned stream over `[0, t_end]`:
/// `sum_i log lambda(t_i) - int_0^t_end lambda`.
///
/// `assignment[i]` names the cluster of event `i`; `weights[h]` are that
/// cluster's kernel weights. Times must be ascending and within the window.
pub fn log_likelihood(
    times: &[f64],
    assignment: &[usize],
    weights: &[KernelWeights],
    params: &HawkesParams,
    t_end: f64,
) -> Result<LogLikelihood> {
    if times.len() != assignment.len() {
        return Err(Error::invalid(format!(
            "{} times vs {} assignments",
            times.len(),
            assignment.len()
        )));
    }
    if let Some(&h) = assignment.iter().find(|&&h| h >= weights.len()) {
        return Err(Error::invalid(format!(
            "assignment references cluster {h} without weights"
        )));
    }
    let mut value = 0.0;
    let mut zero_intensity_events = 0;
    for (i, &t) in times.iter().enumerate() {
        let mut lambda = params.lambda0;
        for j in 0..i {
            let dt = t - times[j];
            if dt < 0.0 {
                return Err(Error::invalid("stream times must be ascending"));
            }
            if dt > params.kernels.truncation_window {
                continue;
            }
            for (l, &a) in weights[assignment[j]].as_slice().iter().enumerate() {
                lambda += a * kernel_value_unchecked(&params.kernels, l, dt);
            }
        }
        if lambda <= 0.0 {
            zero_intensity_events += 1;
            value = f64::NEG_INFINITY;
        } else if value.is_finite() {
            value += lambda.ln();
        }
    }

    let mut histories: Vec<Vec<f64>> = vec![Vec::new(); weights.len()];
    for (i, &h) in assignment.iter().enumerate() {
        histories[h].push(times[i]);
    }
    let clusters: Vec<ClusterTimeline<'_>> = histories
        .iter()
        .zip(weights)
        .map(|(history, weights)| ClusterTimeline { history, weights })
        .collect();
    let integral = compensator(&clusters, params, (0.0, t_end))?;
    if value.is_finite() {
        value -= integral;
    }
    Ok(LogLikelihood {
        value,
        zero_intensity_events,
    })
}

/// Largest kernel value attainable for elapsed times in `[lo, hi]`.
fn kernel_peak_in(config: &KernelConfig, l: usize, lo: f64, hi: f64) -> f64 {
    let lo = lo.max(0.0);
    let hi = hi.min(config.truncation_window);
    if hi < lo {
        return 0.0;
    }
    let pi_l = config.reference_delays[l];
    if lo <= pi_l && pi_l <= hi {
        return 1.0;
    }
    kernel_value_unchecked(config, l, lo).max(kernel_value_unchecked(config, l, hi))
}

/// Conditional intensity for the sampler: history events at or after `t`
/// have not happened yet and contribute nothing, so a frozen history may
/// extend past the sampling window.
fn intensity_before(clusters: &[ClusterTimeline<'_>], params: &HawkesParams, t: f64) -> f64 {
    let mut lambda = params.lambda0;
    for c in clusters {
        for &ti in c.history {
            let dt = t - ti;
            if dt < 0.0 || dt > params.kernels.truncation_window {
                continue;
            }
            for (l, &a) in c.weights.as_slice().iter().enumerate() {
                lambda += a * kernel_value_unchecked(&params.kernels, l, dt);
            }
        }
    }
    lambda
}

/// Upper bound on `lambda(t)` for all `t` in `[from, until]`.
fn intensity_bound(
    clusters: &[ClusterTimeline<'_>],
    params: &HawkesParams,
    from: f64,
    until: f64,
) -> f64 {
    let mut bound = params.lambda0;
    for c in clusters {
        for &ti in c.history {
            let lo = from - ti;
            let hi = until - ti;
            if hi < 0.0 || lo > params.kernels.truncation_window {
                continue;
            }
            for (l, &a) in c.weights.as_slice().iter().enumerate() {
                if a == 0.0 {
                    continue;
                }
                bound += a * kernel_peak_in(&params.kernels, l, lo, hi);
            }
        }
    }
    bound
}

/// First event time after `after` drawn from the intensity induced by the
/// given (frozen) sources, by thinning with a bound recomputed after each
/// candidate. Always returns because `lambda >= lambda0 > 0`.
pub fn next_event_time(
    clusters: &[ClusterTimeline<'_>],
    params: &HawkesParams,
    after: f64,
    rng: &mut impl Rng,
) -> Result<f64> {
    let mut s = after;
    loop {
        let bound = intensity_bound(clusters, params, s, f64::INFINITY);
        let gap = -rng.gen::<f64>().ln() / bound;
        let candidate = s + gap;
        let lambda = intensity_before(clusters, params, candidate);
        if rng.gen::<f64>() * bound <= lambda {
            return Ok(candidate);
        }
        s = candidate;
    }
}

/// Events on `(a, b]` drawn by thinning from the intensity induced by the
/// given sources. Sampled events do not feed back into the intensity; feed
/// the result into cluster histories to simulate self-excitation (the
/// generator does exactly that, one event at a time).
pub fn sample_thinning_with(
    clusters: &[ClusterTimeline<'_>],
    params: &HawkesParams,
    window: (f64, f64),
    rng: &mut impl Rng,
) -> Result<Vec<f64>> {
    let (a, b) = window;
    if b < a {
        return Err(Error::invalid(format!(
            "sampling window [{a}, {b}] is reversed"
        )));
    }
    let mut events = Vec::new();
    let mut s = a;
    while s < b {
        let bound = intensity_bound(clusters, params, s, b);
        let gap = -rng.gen::<f64>().ln() / bound;
        let candidate = s + gap;
        if candidate > b {
            break;
        }
        let lambda = intensity_before(clusters, params, candidate);
        if rng.gen::<f64>() * bound <= lambda {
            events.push(candidate);
        }
        s = candidate;
    }
    Ok(events)
}

/// Seeded wrapper around [`sample_thinning_with`]; identical output for
/// identical seed.
pub fn sample_thinning(
    clusters: &[ClusterTimeline<'_>],
    params: &HawkesParams,
    window: (f64, f64),
    seed: u64,
) -> Result<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_thinning_with(clusters, params, window, &mut rng)
}

/// Euclidean projection of `v` onto the probability simplex.
pub fn project_simplex(v: &[f64]) -> Vec<f64> {
    let mut sorted = v.to_vec();
    sorted.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut tau = 0.0;
    let mut rho = 0;
    for (j, &u) in sorted.iter().enumerate() {
        cumsum += u;
        let candidate = (cumsum - 1.0) / (j + 1) as f64;
        if u - candidate > 0.0 {
            tau = candidate;
            rho = j + 1;
        }
    }
    debug_assert!(rho > 0);
    v.iter().map(|&x| (x - tau).max(0.0)).collect()
}

/// Sufficient statistics of the per-cluster likelihood: excitation values at
/// each event and total kernel mass in the window, both per basis kernel.
struct ClusterLikStats {
    /// `excitation[i][l]` = sum over earlier cluster events of kernel `l` at
    /// the elapsed time to event `i`.
    excitation: Vec<Vec<f64>>,
    /// `mass[l]` = integral of kernel `l` over `[0, t_end]` summed over events.
    mass: Vec<f64>,
}

fn cluster_lik_stats(history: &[f64], config: &KernelConfig, t_end: f64) -> ClusterLikStats {
    let k = config.k();
    let mut excitation = vec![vec![0.0; k]; history.len()];
    for i in 0..history.len() {
        for j in 0..i {
            let dt = history[i] - history[j];
            if dt > config.truncation_window {
                continue;
            }
            for (l, slot) in excitation[i].iter_mut().enumerate() {
                *slot += kernel_value_unchecked(config, l, dt);
            }
        }
    }
    let mut mass = vec![0.0; k];
    for &ti in history {
        for (l, m) in mass.iter_mut().enumerate() {
            *m += kernel_mass(config, l, -ti, t_end - ti);
        }
    }
    ClusterLikStats { excitation, mass }
}

fn objective_from_stats(stats: &ClusterLikStats, alpha: &[f64], lambda0: f64, t_end: f64) -> f64 {
    let mut value = -lambda0 * t_end;
    for row in &stats.excitation {
        let lambda: f64 = lambda0 + row.iter().zip(alpha).map(|(s, a)| s * a).sum::<f64>();
        value += lambda.ln();
    }
    value -= stats
        .mass
        .iter()
        .zip(alpha)
        .map(|(m, a)| m * a)
        .sum::<f64>();
    value
}

fn gradient_from_stats(stats: &ClusterLikStats, alpha: &[f64], lambda0: f64) -> Vec<f64> {
    let mut grad = vec![0.0; alpha.len()];
    for row in &stats.excitation {
        let lambda: f64 = lambda0 + row.iter().zip(alpha).map(|(s, a)| s * a).sum::<f64>();
        for (g, s) in grad.iter_mut().zip(row) {
            *g += s / lambda;
        }
    }
    for (g, m) in grad.iter_mut().zip(&stats.mass) {
        *g -= m;
    }
    grad
}

/// Log-likelihood of one source's events over `[0, t_end]` under base rate
/// plus its own excitation, as a function of raw mixture weights.
///
/// Defined for any non-negative `alpha` (not just simplex points) so the
/// gradient can be probed by finite differences.
pub fn cluster_log_likelihood(
    history: &[f64],
    alpha: &[f64],
    config: &KernelConfig,
    params: &HawkesParams,
    t_end: f64,
) -> f64 {
    let stats = cluster_lik_stats(history, config, t_end);
    objective_from_stats(&stats, alpha, params.lambda0, t_end)
}

/// Analytic gradient of [`cluster_log_likelihood`] with respect to `alpha`.
pub fn cluster_log_likelihood_gradient(
    history: &[f64],
    alpha: &[f64],
    config: &KernelConfig,
    params: &HawkesParams,
    t_end: f64,
) -> Vec<f64> {
    let stats = cluster_lik_stats(history, config, t_end);
    gradient_from_stats(&stats, alpha, params.lambda0)
}

/// Result of a kernel-weight fit.
#[derive(Debug, Clone)]
pub struct MleFit {
    pub weights: KernelWeights,
    /// False when the iteration cap was reached before the step stalled;
    /// the best iterate is still returned.
    pub converged: bool,
    pub iterations: usize,
    pub objective: f64,
    /// Objective value at each accepted iterate (non-decreasing).
    pub objective_trace: Vec<f64>,
}

const MLE_MAX_ITERS: usize = 500;
const MLE_TOL: f64 = 1e-12;

/// Maximum-likelihood kernel weights for one source, by projected gradient
/// ascent on the simplex with backtracking line search.
///
/// Starts from uniform weights and only accepts improving iterates, so the
/// returned objective is never below the uniform initialization. Sources
/// with fewer than two events carry no excitation evidence and return
/// uniform weights directly.
pub fn fit_weights_mle(
    history: &[f64],
    config: &KernelConfig,
    params: &HawkesParams,
    t_end: f64,
) -> Result<MleFit> {
    if history.is_empty() {
        return Err(Error::invalid(
            "cannot fit kernel weights for an empty cluster",
        ));
    }
    let k = config.k();
    let uniform = KernelWeights::uniform(k);
    if k == 1 || history.len() < 2 {
        let objective = cluster_log_likelihood(history, uniform.as_slice(), config, params, t_end);
        return Ok(MleFit {
            weights: uniform,
            converged: true,
            iterations: 0,
            objective,
            objective_trace: vec![objective],
        });
    }

    let stats = cluster_lik_stats(history, config, t_end);
    let mut alpha: Vec<f64> = uniform.as_slice().to_vec();
    let mut objective = objective_from_stats(&stats, &alpha, params.lambda0, t_end);
    let mut trace = vec![objective];
    let mut converged = false;
    let mut iterations = 0;

    for _ in 0..MLE_MAX_ITERS {
        iterations += 1;
        let grad = gradient_from_stats(&stats, &alpha, params.lambda0);
        let mut step = 1.0;
        let mut accepted = None;
        while step > 1e-14 {
            let proposal: Vec<f64> = alpha.iter().zip(&grad).map(|(a, g)| a + step * g).collect();
            let projected = project_simplex(&proposal);
            let value = objective_from_stats(&stats, &projected, params.lambda0, t_end);
            if value > objective {
                accepted = Some((projected, value));
                break;
            }
            step *= 0.5;
        }
        match accepted {
            Some((next, value)) => {
                let gain = value - objective;
                alpha = next;
                objective = value;
                trace.push(objective);
                if gain < MLE_TOL * (1.0 + objective.abs()) {
                    converged = true;
                    break;
                }
            }
            None => {
                // No ascent direction at any feasible step: stationary.
                converged = true;
                break;
            }
        }
    }

    Ok(MleFit {
        weights: KernelWeights::new(alpha)?,
        converged,
        iterations,
        objective,
        objective_trace: trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single_kernel() -> KernelConfig {
        KernelConfig::new(vec![2.0], vec![0.5], 10.0).unwrap()
    }

    #[test]
    fn base_kernel_peaks_at_reference_delay() {
        let cfg = single_kernel();
        assert_eq!(base_kernel(&cfg, 0, 2.0).unwrap(), 1.0);
    }

    #[test]
    fn base_kernel_one_bandwidth_out() {
        let cfg = single_kernel();
        let got = base_kernel(&cfg, 0, 2.5).unwrap();
        assert!((got - (-0.5f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn base_kernel_truncates_to_exact_zero() {
        let cfg = single_kernel();
        assert_eq!(base_kernel(&cfg, 0, 10.5).unwrap(), 0.0);
    }

    #[test]
    fn base_kernel_rejects_negative_elapsed_time() {
        let cfg = single_kernel();
        assert!(base_kernel(&cfg, 0, -0.1).is_err());
    }

    #[test]
    fn kernel_config_validates_truncation() {
        assert!(KernelConfig::new(vec![2.0], vec![1.0], 4.0).is_err());
        assert!(KernelConfig::new(vec![2.0], vec![1.0], 5.0).is_ok());
    }

    #[test]
    fn cluster_intensity_empty_history_is_zero() {
        let cfg = single_kernel();
        let w = KernelWeights::uniform(1);
        assert_eq!(cluster_intensity(&[], &w, &cfg, 5.0).unwrap(), 0.0);
    }

    #[test]
    fn cluster_intensity_single_event_at_peak() {
        let cfg = single_kernel();
        let w = KernelWeights::uniform(1);
        let got = cluster_intensity(&[3.0], &w, &cfg, 5.0).unwrap();
        assert!((got - 1.0).abs() < 1e-12);
    }

    #[test]
    fn cluster_intensity_sums_over_events() {
        // both events sit exactly one reference delay before the query
        let cfg = single_kernel();
        let w = KernelWeights::uniform(1);
        let got = cluster_intensity(&[3.0, 3.0], &w, &cfg, 5.0).unwrap();
        assert!((got - 2.0).abs() < 1e-12);
    }

    #[test]
    fn cluster_intensity_rejects_future_history() {
        let cfg = single_kernel();
        let w = KernelWeights::uniform(1);
        assert!(cluster_intensity(&[6.0], &w, &cfg, 5.0).is_err());
    }

    #[test]
    fn total_intensity_without_clusters_is_base_rate() {
        let params = HawkesParams::new(0.1, single_kernel()).unwrap();
        let (total, comps) = total_intensity(&[], &params, 1.0).unwrap();
        assert_eq!(total, 0.1);
        assert!(comps.is_empty());
    }

    #[test]
    fn total_intensity_adds_components() {
        // kappa at pi + sigma*sqrt(2 ln 2) = 1/2; at pi + 2 sigma*sqrt(ln 2)... use
        // analytic offsets giving components 0.5 and 0.25.
        let cfg = single_kernel();
        let params = HawkesParams::new(0.1, cfg.clone()).unwrap();
        let w = KernelWeights::uniform(1);
        let dt_half = 2.0 + 0.5 * (2.0 * 2.0f64.ln()).sqrt();
        let dt_quarter = 2.0 + 0.5 * (2.0 * 4.0f64.ln()).sqrt();
        let h1 = vec![5.0 - dt_half];
        let h2 = vec![5.0 - dt_quarter];
        let clusters = [
            ClusterTimeline {
                history: &h1,
                weights: &w,
            },
            ClusterTimeline {
                history: &h2,
                weights: &w,
            },
        ];
        let (total, comps) = total_intensity(&clusters, &params, 5.0).unwrap();
        assert!((comps[0] - 0.5).abs() < 1e-12);
        assert!((comps[1] - 0.25).abs() < 1e-12);
        assert!((total - 0.85).abs() < 1e-12);
    }

    #[test]
    fn compensator_of_pure_base_rate() {
        let params = HawkesParams::new(0.3, single_kernel()).unwrap();
        let got = compensator(&[], &params, (0.0, 40.0)).unwrap();
        assert!((got - 12.0).abs() < 1e-12);
    }

    #[test]
    fn compensator_empty_window_is_zero() {
        let params = HawkesParams::new(0.3, single_kernel()).unwrap();
        let w = KernelWeights::uniform(1);
        let h = vec![1.0];
        let clusters = [ClusterTimeline {
            history: &h,
            weights: &w,
        }];
        assert_eq!(compensator(&clusters, &params, (4.0, 4.0)).unwrap(), 0.0);
    }

    #[test]
    fn compensator_rejects_reversed_window() {
        let params = HawkesParams::new(0.3, single_kernel()).unwrap();
        assert!(compensator(&[], &params, (2.0, 1.0)).is_err());
    }

    #[test]
    fn compensator_single_event_full_window() {
        // window covers the whole truncated kernel: mass = sigma*sqrt(2pi)*
        // (Phi((W-pi)/sigma) - Phi(-pi/sigma))
        let cfg = single_kernel();
        let params = HawkesParams::new(0.0001, cfg.clone()).unwrap();
        let w = KernelWeights::uniform(1);
        let h = vec![0.0];
        let clusters = [ClusterTimeline {
            history: &h,
            weights: &w,
        }];
        let got = compensator(&clusters, &params, (0.0, 20.0)).unwrap() - 0.0001 * 20.0;
        let phi = |z: f64| 0.5 * (1.0 + erf(z / SQRT_2));
        let expected = 0.5 * SQRT_2PI * (phi((10.0 - 2.0) / 0.5) - phi(-2.0 / 0.5));
        assert!((got - expected).abs() < 1e-12, "{got} vs {expected}");
    }

    #[test]
    fn compensator_is_additive_over_windows() {
        let cfg = single_kernel();
        let params = HawkesParams::new(0.2, cfg).unwrap();
        let w = KernelWeights::uniform(1);
        let h = vec![0.5, 1.7, 4.0];
        let clusters = [ClusterTimeline {
            history: &h,
            weights: &w,
        }];
        let whole = compensator(&clusters, &params, (0.0, 9.0)).unwrap();
        let left = compensator(&clusters, &params, (0.0, 3.3)).unwrap();
        let right = compensator(&clusters, &params, (3.3, 9.0)).unwrap();
        assert!((whole - (left + right)).abs() < 1e-9);
    }

    #[test]
    fn log_likelihood_of_empty_stream_is_survival_only() {
        let params = HawkesParams::new(0.4, single_kernel()).unwrap();
        let ll = log_likelihood(&[], &[], &[], &params, 25.0).unwrap();
        assert!((ll.value - (-0.4 * 25.0)).abs() < 1e-12);
        assert_eq!(ll.zero_intensity_events, 0);
    }

    #[test]
    fn log_likelihood_single_event_window_ending_at_event() {
        let params = HawkesParams::new(0.4, single_kernel()).unwrap();
        let weights = vec![KernelWeights::uniform(1)];
        let ll = log_likelihood(&[7.0], &[0], &weights, &params, 7.0).unwrap();
        let expected = 0.4f64.ln() - 0.4 * 7.0;
        assert!((ll.value - expected).abs() < 1e-12);
    }

    #[test]
    fn log_likelihood_rejects_length_mismatch() {
        let params = HawkesParams::new(0.4, single_kernel()).unwrap();
        assert!(log_likelihood(&[1.0], &[], &[], &params, 5.0).is_err());
    }

    #[test]
    fn thinning_zero_length_window_is_empty() {
        let params = HawkesParams::new(2.0, single_kernel()).unwrap();
        let events = sample_thinning(&[], &params, (3.0, 3.0), 7).unwrap();
        assert!(events.is_empty());
    }

    #[test]
    fn thinning_is_deterministic_under_seed() {
        let params = HawkesParams::new(2.0, single_kernel()).unwrap();
        let a = sample_thinning(&[], &params, (0.0, 20.0), 42).unwrap();
        let b = sample_thinning(&[], &params, (0.0, 20.0), 42).unwrap();
        assert_eq!(a, b);
        assert!(!a.is_empty());
        assert!(a.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn thinning_respects_window_bounds() {
        let params = HawkesParams::new(1.5, single_kernel()).unwrap();
        let events = sample_thinning(&[], &params, (5.0, 9.0), 3).unwrap();
        assert!(events.iter().all(|&t| t > 5.0 && t <= 9.0));
    }

    #[test]
    fn project_simplex_is_identity_on_simplex_points() {
        let p = project_simplex(&[0.2, 0.3, 0.5]);
        assert!((p[0] - 0.2).abs() < 1e-12);
        assert!((p[2] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn project_simplex_clips_and_renormalizes() {
        let p = project_simplex(&[2.0, -1.0]);
        assert!((p[0] - 1.0).abs() < 1e-12);
        assert_eq!(p[1], 0.0);
        let q = project_simplex(&[0.6, 0.6]);
        assert!((q[0] - 0.5).abs() < 1e-12);
        assert!((q[1] - 0.5).abs() < 1e-12);
    }

    #[test]
    fn mle_with_single_kernel_is_degenerate() {
        let cfg = single_kernel();
        let params = HawkesParams::new(0.1, cfg.clone()).unwrap();
        let fit = fit_weights_mle(&[1.0, 3.0, 5.0], &cfg, &params, 10.0).unwrap();
        assert_eq!(fit.weights.as_slice(), &[1.0]);
        assert!(fit.converged);
    }

    #[test]
    fn mle_single_event_returns_uniform() {
        let cfg = KernelConfig::new(vec![1.0, 5.0], vec![0.3, 0.5], 10.0).unwrap();
        let params = HawkesParams::new(0.1, cfg.clone()).unwrap();
        let fit = fit_weights_mle(&[2.0], &cfg, &params, 10.0).unwrap();
        assert_eq!(fit.weights.as_slice(), &[0.5, 0.5]);
    }

    #[test]
    fn mle_rejects_empty_cluster() {
        let cfg = single_kernel();
        let params = HawkesParams::new(0.1, cfg.clone()).unwrap();
        assert!(fit_weights_mle(&[], &cfg, &params, 10.0).is_err());
    }

    #[test]
    fn mle_trace_is_monotone_and_beats_uniform() {
        let cfg = KernelConfig::new(vec![1.0, 6.0], vec![0.3, 1.0], 12.0).unwrap();
        let params = HawkesParams::new(0.05, cfg.clone()).unwrap();
        // events one day apart: kernel 1 evidence
        let history: Vec<f64> = (0..12).map(|i| i as f64).collect();
        let fit = fit_weights_mle(&history, &cfg, &params, 12.0).unwrap();
        assert!(fit.objective_trace.windows(2).all(|w| w[1] >= w[0]));
        let uniform_obj = cluster_log_likelihood(&history, &[0.5, 0.5], &cfg, &params, 12.0);
        assert!(fit.objective >= uniform_obj);
        assert!(fit.weights.as_slice()[0] > fit.weights.as_slice()[1]);
    }
}
