//! Source intensities and the closed-form compensator.
//!
//! ```bash
//! cargo run -p demix --example hawkes_intensity
//! ```

use demix::hawkes::{
    base_kernel, cluster_intensity, compensator, total_intensity, ClusterTimeline, HawkesParams,
    KernelConfig, KernelWeights,
};

fn main() -> demix::Result<()> {
    let kernels = KernelConfig::new(vec![1.0, 3.0, 7.0], vec![0.5, 1.0, 2.0], 13.0)?;
    let params = HawkesParams::new(0.05, kernels.clone())?;

    println!("=== Kernel basis (peak 1 at each reference delay) ===");
    for dt in [0.5, 1.0, 2.0, 3.0, 7.0, 12.0, 14.0] {
        let values: Vec<String> = (0..kernels.k())
            .map(|l| format!("{:.4}", base_kernel(&kernels, l, dt).unwrap()))
            .collect();
        println!("  dt = {dt:5.1}  kappa = [{}]", values.join(", "));
    }

    // one source that bought on days 0, 1, and 2
    let history = vec![0.0, 1.0, 2.0];
    let weights = KernelWeights::new(vec![0.6, 0.3, 0.1])?;
    println!("\n=== Intensity of one source with events at days 0, 1, 2 ===");
    for t in [2.5, 3.0, 4.0, 6.0, 9.0, 20.0] {
        let lambda_h = cluster_intensity(&history, &weights, &kernels, t)?;
        println!("  lambda_h({t:4.1}) = {lambda_h:.4}");
    }

    let clusters = [ClusterTimeline {
        history: &history,
        weights: &weights,
    }];
    let (lambda, components) = total_intensity(&clusters, &params, 3.0)?;
    println!(
        "\n  total at t=3: {lambda:.4} = lambda0 {} + {:?}",
        params.lambda0, components
    );

    println!("\n=== Compensator (closed form via the error function) ===");
    let whole = compensator(&clusters, &params, (0.0, 30.0))?;
    let left = compensator(&clusters, &params, (0.0, 11.0))?;
    let right = compensator(&clusters, &params, (11.0, 30.0))?;
    println!("  integral over [0, 30]          = {whole:.10}");
    println!("  split at t = 11, recombined    = {:.10}", left + right);
    println!(
        "  additivity gap                 = {:.2e}",
        (whole - left - right).abs()
    );

    // beyond truncation the kernels stop contributing entirely
    let late = compensator(&clusters, &params, (16.0, 30.0))?;
    println!("  integral over [16, 30] (all kernels truncated) = {late:.10}");
    println!(
        "  pure base-rate mass over that window           = {:.10}",
        params.lambda0 * 14.0
    );
    Ok(())
}
