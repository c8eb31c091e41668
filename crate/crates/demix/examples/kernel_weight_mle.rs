//! Maximum-likelihood kernel weights for one source, by projected gradient
//! ascent on the simplex.
//!
//! ```bash
//! cargo run -p demix --example kernel_weight_mle
//! ```

use demix::hawkes::{
    cluster_log_likelihood, cluster_log_likelihood_gradient, fit_weights_mle, HawkesParams,
    KernelConfig,
};

fn main() -> demix::Result<()> {
    // basis with a daily and a weekly bump
    let kernels = KernelConfig::new(vec![1.0, 7.0], vec![0.4, 1.5], 12.0)?;
    let params = HawkesParams::new(0.05, kernels.clone())?;

    // a buyer who purchases almost every day
    let daily: Vec<f64> = (0..14).map(|i| i as f64).collect();
    let fit = fit_weights_mle(&daily, &kernels, &params, 14.0)?;
    println!("=== Daily cadence ===");
    println!(
        "  fitted weights [daily, weekly] = {:?}",
        fit.weights.as_slice()
    );
    println!("  converged after {} iterations", fit.iterations);
    println!(
        "  objective from uniform init {:.4} -> {:.4} (monotone: {})",
        fit.objective_trace[0],
        fit.objective,
        fit.objective_trace.windows(2).all(|w| w[1] >= w[0]),
    );

    // a buyer on a weekly rhythm
    let weekly: Vec<f64> = (0..8).map(|i| i as f64 * 7.0).collect();
    let fit = fit_weights_mle(&weekly, &kernels, &params, 50.0)?;
    println!("\n=== Weekly cadence ===");
    println!(
        "  fitted weights [daily, weekly] = {:?}",
        fit.weights.as_slice()
    );

    // the analytic gradient matches finite differences
    println!("\n=== Gradient check at the uniform point ===");
    let alpha = [0.5, 0.5];
    let grad = cluster_log_likelihood_gradient(&daily, &alpha, &kernels, &params, 14.0);
    for l in 0..2 {
        let h = 1e-6;
        let mut up = alpha;
        up[l] += h;
        let mut down = alpha;
        down[l] -= h;
        let fd = (cluster_log_likelihood(&daily, &up, &kernels, &params, 14.0)
            - cluster_log_likelihood(&daily, &down, &kernels, &params, 14.0))
            / (2.0 * h);
        println!(
            "  d/d alpha_{l}: analytic {:+.6}, finite difference {fd:+.6}",
            grad[l]
        );
    }

    // a single event carries no excitation evidence
    let fit = fit_weights_mle(&[3.0], &kernels, &params, 10.0)?;
    println!(
        "\n  single-event source stays uniform: {:?}",
        fit.weights.as_slice()
    );
    Ok(())
}
