//! Seating priors: classic table counts versus Hawkes intensities.
//!
//! ```bash
//! cargo run -p demix --example assignment_priors
//! ```

use demix::dhp::{crp_probabilities, dhp_assignment_prior, CrpParams};
use demix::hawkes::{cluster_intensity, KernelConfig, KernelWeights};

fn main() -> demix::Result<()> {
    println!("=== Chinese restaurant process ===");
    let params = CrpParams::new(1.0)?;
    for counts in [vec![], vec![1], vec![2, 1], vec![5, 2, 1]] {
        let probs = crp_probabilities(&counts, &params)?;
        println!("  counts {counts:?} -> {probs:?}");
    }

    println!("\n=== Intensity-weighted seating ===");
    println!("  (the base rate plays the concentration role; a source's pull");
    println!("   is its current intensity, not its headcount)");
    let kernels = KernelConfig::new(vec![1.0, 3.0], vec![0.5, 1.0], 6.0)?;
    let weights = KernelWeights::uniform(2);
    let lambda0 = 0.05;

    // two sources with identical sizes but different recency
    let fresh = vec![8.0, 9.0, 9.5];
    let stale = vec![0.0, 1.0, 2.0];
    for t in [10.0, 12.0, 20.0] {
        let intensities = vec![
            cluster_intensity(&fresh, &weights, &kernels, t)?,
            cluster_intensity(&stale, &weights, &kernels, t)?,
        ];
        let prior = dhp_assignment_prior(&intensities, lambda0)?;
        println!(
            "  t = {t:4.1}  lambda = [{:.3}, {:.3}]  P(fresh, stale, new) = [{:.3}, {:.3}, {:.3}]",
            intensities[0], intensities[1], prior[0], prior[1], prior[2]
        );
    }
    println!("\n  by t = 20 both sources have fallen past truncation, so a new");
    println!("  source is certain even though both tables hold three customers");
    Ok(())
}
