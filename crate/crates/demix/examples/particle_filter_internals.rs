//! Inside the particle filter: per-event proposal scores, weights,
//! effective sample size, and resampling.
//!
//! ```bash
//! cargo run -p demix --example particle_filter_internals
//! ```

use std::collections::BTreeMap;

use demix::event_model::Transaction;
use demix::hawkes::{HawkesParams, KernelConfig};
use demix::marks::{ContentPrior, VendorPrior};
use demix::smc::{
    advance, assignment_scores, effective_sample_size, resample, AblationFlags, Particle, SmcConfig,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn txn(time: f64, vendor: usize, words: &[(usize, u32)]) -> Transaction {
    Transaction {
        time,
        anon_id: "a***z".into(),
        vendor_id: vendor,
        content: words.iter().copied().collect::<BTreeMap<_, _>>(),
        truth_label: None,
    }
}

fn main() -> demix::Result<()> {
    let params = HawkesParams::new(0.1, KernelConfig::new(vec![1.0, 3.0], vec![0.5, 1.0], 6.0)?)?;
    let content_prior = ContentPrior::new(0.01, 6)?;
    let vendor_prior = VendorPrior::new(0.1, 3)?;
    let config = SmcConfig::default();

    // two interleaved behaviors: vendor 0 talking about words {0,1},
    // vendor 1 about words {3,4}
    let stream = [
        txn(0.0, 0, &[(0, 2), (1, 1)]),
        txn(1.0, 1, &[(3, 2)]),
        txn(2.0, 0, &[(0, 1), (1, 2)]),
        txn(2.8, 1, &[(3, 1), (4, 1)]),
        txn(3.9, 0, &[(1, 2)]),
    ];

    let mut particle = Particle::new();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    println!("=== Proposal scores per event (existing sources..., new) ===");
    for event in &stream {
        let scores = assignment_scores(
            &particle,
            event,
            &params,
            &content_prior,
            &vendor_prior,
            &AblationFlags::default(),
        )?;
        let probs: Vec<String> = scores.iter().map(|s| format!("{:.3}", s.exp())).collect();
        let choice = advance(
            &mut particle,
            event,
            &params,
            &content_prior,
            &vendor_prior,
            &config,
            &mut rng,
        )?;
        println!(
            "  t = {:3.1}  P = [{}]  -> source {choice}",
            event.time,
            probs.join(", ")
        );
    }
    println!("  assignments: {:?}", particle.assignments);
    println!(
        "  log weight (sum of event marginals): {:.4}",
        particle.log_weight
    );

    println!("\n=== Effective sample size and resampling ===");
    let mut particles = vec![Particle::new(); 8];
    println!(
        "  fresh uniform population: ESS = {:.1}",
        effective_sample_size(&particles)
    );
    for (i, p) in particles.iter_mut().enumerate() {
        p.log_weight = -(i as f64); // exponentially decaying weights
        p.assignments = vec![i];
    }
    println!(
        "  skewed weights: ESS = {:.3}",
        effective_sample_size(&particles)
    );
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    resample(&mut particles, &mut rng);
    let survivors: Vec<usize> = particles.iter().map(|p| p.assignments[0]).collect();
    println!("  after systematic resampling: survivors by origin = {survivors:?}");
    println!("  ESS restored to {:.1}", effective_sample_size(&particles));
    Ok(())
}
