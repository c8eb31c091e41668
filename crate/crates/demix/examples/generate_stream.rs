//! The generative process: self-excited event times, intensity-weighted
//! source assignment, and per-source mark distributions.
//!
//! ```bash
//! cargo run -p demix --example generate_stream
//! ```

use demix::event_model::write_stream;
use demix::generator::{generate, GeneratorConfig, SourceModel};

fn main() -> demix::Result<()> {
    println!("=== Emergent sources (unbounded, intensity-weighted prior) ===");
    let config = GeneratorConfig {
        hawkes: demix::hawkes::HawkesParams {
            lambda0: 0.5,
            ..Default::default()
        },
        num_events: 120,
        seed: 11,
        ..GeneratorConfig::default()
    };
    let out = generate(&config)?;
    let labels = out.dataset.stream.truth_labels().unwrap();
    println!(
        "  {} events over {:.1} days from {} sources",
        out.dataset.stream.len(),
        out.dataset.stream.horizon_days,
        out.truth.sources.len()
    );
    for (h, source) in out.truth.sources.iter().enumerate() {
        let size = labels.iter().filter(|&&l| l == h).count();
        let top_word = source
            .topic
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).unwrap())
            .unwrap()
            .0;
        println!(
            "  source {h}: {size:3} events, kernel weights {:?}, favorite word w{top_word:03}",
            source
                .kernel_weights
                .iter()
                .map(|w| format!("{w:.2}"))
                .collect::<Vec<_>>()
        );
    }

    println!("\n=== Fixed sources (exact count, staggered onsets) ===");
    let config = GeneratorConfig {
        num_events: 60,
        seed: 2,
        sources: SourceModel::Fixed {
            count: 3,
            onset_stagger_days: 20.0,
            base_rate: 1.0,
        },
        ..GeneratorConfig::default()
    };
    let out = generate(&config)?;
    let labels = out.dataset.stream.truth_labels().unwrap();
    for h in 0..3 {
        let times: Vec<f64> = out
            .dataset
            .stream
            .transactions
            .iter()
            .zip(&labels)
            .filter(|(_, &l)| l == h)
            .map(|(t, _)| t.time)
            .collect();
        println!(
            "  source {h}: {} events active over days {:.1}..{:.1}",
            times.len(),
            times.first().unwrap(),
            times.last().unwrap()
        );
    }

    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("stream.jsonl");
    write_stream(&out.dataset, &path)?;
    let first_line = std::fs::read_to_string(&path)
        .unwrap()
        .lines()
        .next()
        .unwrap()
        .to_string();
    println!("\n  JSONL schema: {first_line}");
    Ok(())
}
