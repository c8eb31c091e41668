//! Model-variant comparison over scenario presets: the full model against
//! the vendor-ablated baseline and a content-only reduction.
//!
//! ```bash
//! cargo run -p demix --release --example ablation_benchmark
//! ```

use demix::cli::{cmd_benchmark, BenchmarkArgs};

fn main() -> demix::Result<()> {
    for scenario in ["separable", "vendor-only"] {
        let summary = cmd_benchmark(&BenchmarkArgs {
            config: None,
            scenario: scenario.to_string(),
            seeds: 10,
            seed: 0,
            particles: None,
            events: None,
        })?;
        println!("{summary}");
        let full = &summary.variants[0];
        let ablated = &summary.variants[1];
        println!(
            "full model NMI exceeds the vendor-ablated baseline: {}\n",
            full.nmi_mean > ablated.nmi_mean
        );
    }
    Ok(())
}
