//! Independent oracles shared by the integration and acceptance suites.
//! Nothing here calls the closed-form implementation paths it checks.

#![allow(dead_code)]

use demix::hawkes::{base_kernel, ClusterTimeline, HawkesParams, KernelWeights};
use demix::marks::{ClusterMarkStats, ContentPrior};
use std::collections::BTreeMap;

/// Intensity evaluated directly from the kernel definition (not through
/// `cluster_intensity`), used as the quadrature integrand.
pub fn direct_intensity(clusters: &[ClusterTimeline<'_>], params: &HawkesParams, t: f64) -> f64 {
    let mut lambda = params.lambda0;
    for c in clusters {
        for &ti in c.history {
            if t < ti {
                continue;
            }
            for (l, &a) in c.weights.as_slice().iter().enumerate() {
                lambda += a * base_kernel(&params.kernels, l, t - ti).unwrap();
            }
        }
    }
    lambda
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

#[allow(clippy::too_many_arguments)]
fn adaptive_simpson_rec(
    f: &impl Fn(f64) -> f64,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: usize,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    if depth == 0 || (left + right - whole).abs() <= 15.0 * tol {
        return left + right + (left + right - whole) / 15.0;
    }
    adaptive_simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
        + adaptive_simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
}

/// Adaptive Simpson quadrature with breakpoints at every event time,
/// kernel peak, and truncation edge inside the window, so the integrand is
/// smooth on each panel.
pub fn quadrature_compensator(
    clusters: &[ClusterTimeline<'_>],
    params: &HawkesParams,
    window: (f64, f64),
    tol: f64,
) -> f64 {
    let (a, b) = window;
    if b <= a {
        return 0.0;
    }
    let mut cuts = vec![a, b];
    for c in clusters {
        for &ti in c.history {
            cuts.push(ti);
            cuts.push(ti + params.kernels.truncation_window);
            for &p in &params.kernels.reference_delays {
                cuts.push(ti + p);
            }
        }
    }
    cuts.retain(|&t| t >= a && t <= b);
    cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
    cuts.dedup_by(|x, y| (*x - *y).abs() < 1e-13);

    let f = |t: f64| direct_intensity(clusters, params, t);
    let mut total = 0.0;
    for pair in cuts.windows(2) {
        let (lo, hi) = (pair[0], pair[1]);
        if hi - lo < 1e-13 {
            continue;
        }
        let m = 0.5 * (lo + hi);
        let (fa, fm, fb) = (f(lo), f(m), f(hi));
        let whole = simpson(lo, hi, fa, fm, fb);
        total += adaptive_simpson_rec(&f, lo, hi, fa, fm, fb, whole, tol, 40);
    }
    total
}

/// Sequential Polya-urn predictive for a bag of words, including the
/// multinomial coefficient: consumes the bag token by token, each token
/// with probability `(C_w + theta0) / (C + theta0 |W|)` against running
/// counts seeded from the cluster statistics.
pub fn polya_urn_log_predictive(
    stats: &ClusterMarkStats,
    bag: &BTreeMap<usize, u32>,
    prior: &ContentPrior,
) -> f64 {
    let mut counts: BTreeMap<usize, u64> = stats.word_counts().clone();
    let mut total = stats.word_total() as f64;
    let theta_sum = prior.theta0 * prior.vocab_size as f64;

    let mut log_p = 0.0;
    let mut n_tokens = 0u64;
    for (&w, &count) in bag {
        for _ in 0..count {
            let c_w = counts.get(&w).copied().unwrap_or(0) as f64;
            log_p += ((c_w + prior.theta0) / (total + theta_sum)).ln();
            *counts.entry(w).or_insert(0) += 1;
            total += 1.0;
            n_tokens += 1;
        }
    }
    // multinomial coefficient: n! / prod c_w!
    log_p += ln_factorial(n_tokens);
    for &count in bag.values() {
        log_p -= ln_factorial(count as u64);
    }
    log_p
}

pub fn ln_factorial(n: u64) -> f64 {
    (1..=n).map(|i| (i as f64).ln()).sum()
}

/// Exhaustive simplex grid argmax of a function, at the given resolution.
/// Returns the best grid point.
pub fn simplex_grid_argmax(k: usize, resolution: f64, f: &impl Fn(&[f64]) -> f64) -> Vec<f64> {
    let steps = (1.0 / resolution).round() as usize;
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut point = vec![0.0; k];
    fn recurse(
        k: usize,
        dim: usize,
        remaining: usize,
        steps: usize,
        point: &mut Vec<f64>,
        f: &impl Fn(&[f64]) -> f64,
        best: &mut Option<(f64, Vec<f64>)>,
    ) {
        if dim == k - 1 {
            point[dim] = remaining as f64 / steps as f64;
            let value = f(point);
            if best.as_ref().is_none_or(|(b, _)| value > *b) {
                *best = Some((value, point.clone()));
            }
            return;
        }
        for take in 0..=remaining {
            point[dim] = take as f64 / steps as f64;
            recurse(k, dim + 1, remaining - take, steps, point, f, best);
        }
    }
    recurse(k, 0, steps, steps, &mut point, f, &mut best);
    best.expect("nonempty grid").1
}

/// Sample mean and (unbiased) variance.
pub fn mean_var(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0);
    (mean, var)
}

/// Uniform kernel weights helper for oracle-side cluster views.
pub fn uniform_weights(k: usize) -> KernelWeights {
    KernelWeights::uniform(k)
}
