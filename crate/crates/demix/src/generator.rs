//! Ground-truth stream synthesis.
//!
//! Two source models are supported:
//!
//! - [`SourceModel::Emergent`] runs the generative process exactly: each
//!   event time is drawn by thinning from the current total intensity, the
//!   source is drawn from the intensity-weighted assignment prior, fresh
//!   sources draw their kernel weights, topic, and vendor distribution from
//!   their Dirichlet priors, and the marks are drawn from the chosen
//!   source's distributions.
//! - [`SourceModel::Fixed`] synthesizes an exact number of sources with
//!   staggered onsets, generating each source as its own self-exciting
//!   process and merging by time. This mirrors how labeled sequences are
//!   composed from per-buyer subsequences and gives scenario presets exact
//!   control over the true source count and their active periods.
//!
//! Every generated stream carries truth labels and a sidecar of the true
//! per-source parameters for oracle tests.

use std::collections::BTreeMap;

use chrono::{TimeZone, Utc};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Dirichlet, Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::dhp::dhp_assignment_prior;
use crate::event_model::{Dataset, EventStream, Transaction, VendorCatalog, Vocabulary};
use crate::hawkes::{
    cluster_intensity, next_event_time, ClusterTimeline, HawkesParams, KernelWeights,
};
use crate::{Error, Result};

/// How per-source topics are drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum ContentModel {
    /// Fresh sources draw their topic from a symmetric Dirichlet.
    Symmetric { theta0: f64 },
    /// Every source shares the exactly uniform topic (content carries no
    /// signal).
    Uniform,
    /// The vocabulary is split into equal blocks; source `h` draws its topic
    /// inside block `h mod num_blocks`. With `shared_mass > 0` one extra
    /// trailing block is common to all sources and receives that fraction of
    /// every topic's probability.
    Blocks {
        num_blocks: usize,
        within_concentration: f64,
        shared_mass: f64,
    },
}

/// How per-source vendor distributions are drawn.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum VendorModel {
    Symmetric {
        eta0: f64,
    },
    Uniform,
    /// Source `h` concentrates on vendor `h mod |V|`: Dirichlet with
    /// pseudo-count `focus` on the own vendor and `background` elsewhere.
    Distinct {
        focus: f64,
        background: f64,
    },
}

/// How sources come into existence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum SourceModel {
    /// Unbounded sources via the intensity-weighted assignment prior.
    Emergent,
    /// Exactly `count` sources; source `h` starts a base rate of
    /// `base_rate` events/day at `h * onset_stagger_days` and the total
    /// event budget is split evenly across sources.
    Fixed {
        count: usize,
        onset_stagger_days: f64,
        base_rate: f64,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct GeneratorConfig {
    pub hawkes: HawkesParams,
    /// Dirichlet prior over kernel weights for fresh sources (length K).
    pub kernel_dirichlet: Vec<f64>,
    pub content: ContentModel,
    pub vendor: VendorModel,
    pub vocab_size: usize,
    pub catalog_size: usize,
    /// Total number of events N.
    pub num_events: usize,
    /// Poisson mean of tokens per event.
    pub mean_tokens: f64,
    pub seed: u64,
    pub sources: SourceModel,
}

impl Default for GeneratorConfig {
    fn default() -> Self {
        let hawkes = HawkesParams::default();
        let k = hawkes.kernels.k();
        GeneratorConfig {
            hawkes,
            kernel_dirichlet: vec![1.0; k],
            content: ContentModel::Symmetric { theta0: 0.01 },
            vendor: VendorModel::Symmetric { eta0: 0.1 },
            vocab_size: 50,
            catalog_size: 10,
            num_events: 200,
            mean_tokens: 8.0,
            seed: 0,
            sources: SourceModel::Emergent,
        }
    }
}

impl GeneratorConfig {
    pub fn validate(&self) -> Result<()> {
        self.hawkes.validate()?;
        if self.kernel_dirichlet.len() != self.hawkes.kernels.k() {
            return Err(Error::config("kernel_dirichlet length must equal K"));
        }
        if self.kernel_dirichlet.iter().any(|&a| a <= 0.0) {
            return Err(Error::config("kernel_dirichlet entries must be positive"));
        }
        if self.vocab_size == 0 || self.catalog_size == 0 {
            return Err(Error::config("vocab_size and catalog_size must be >= 1"));
        }
        if self.num_events == 0 {
            return Err(Error::config("num_events must be >= 1"));
        }
        if self.mean_tokens <= 0.0 {
            return Err(Error::config("mean_tokens must be positive"));
        }
        match &self.content {
            ContentModel::Symmetric { theta0 } if *theta0 <= 0.0 => {
                return Err(Error::config("content theta0 must be positive"));
            }
            ContentModel::Blocks {
                num_blocks,
                within_concentration,
                shared_mass,
            } => {
                if *num_blocks == 0 {
                    return Err(Error::config("content num_blocks must be >= 1"));
                }
                if *within_concentration <= 0.0 {
                    return Err(Error::config(
                        "content within_concentration must be positive",
                    ));
                }
                if !(0.0..1.0).contains(shared_mass) {
                    return Err(Error::config("content shared_mass must lie in [0, 1)"));
                }
                let blocks = num_blocks + usize::from(*shared_mass > 0.0);
                if !self.vocab_size.is_multiple_of(blocks) {
                    return Err(Error::config(format!(
                        "vocab_size {} must divide into {blocks} equal blocks",
                        self.vocab_size
                    )));
                }
            }
            _ => {}
        }
        match &self.vendor {
            VendorModel::Symmetric { eta0 } if *eta0 <= 0.0 => {
                return Err(Error::config("vendor eta0 must be positive"));
            }
            VendorModel::Distinct { focus, background } if *focus <= 0.0 || *background <= 0.0 => {
                return Err(Error::config(
                    "vendor focus and background must be positive",
                ));
            }
            _ => {}
        }
        match &self.sources {
            SourceModel::Emergent => {}
            SourceModel::Fixed {
                count,
                onset_stagger_days,
                base_rate,
            } => {
                if *count == 0 {
                    return Err(Error::config("fixed source count must be >= 1"));
                }
                if *onset_stagger_days < 0.0 {
                    return Err(Error::config("onset_stagger_days must be non-negative"));
                }
                if *base_rate <= 0.0 {
                    return Err(Error::config("base_rate must be positive"));
                }
            }
        }
        Ok(())
    }
}

/// True parameters of one generated source.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SourceParams {
    pub label: usize,
    pub kernel_weights: Vec<f64>,
    /// Word distribution theta_h over the vocabulary.
    pub topic: Vec<f64>,
    /// Vendor distribution eta_h over the catalog.
    pub vendor_probs: Vec<f64>,
}

/// Sidecar of true per-source parameters, in label order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundTruth {
    pub sources: Vec<SourceParams>,
}

/// A generated labeled stream plus the parameters that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratedStream {
    pub dataset: Dataset,
    pub truth: GroundTruth,
}

fn sample_dirichlet(alpha: &[f64], rng: &mut impl Rng) -> Vec<f64> {
    if alpha.len() == 1 {
        return vec![1.0];
    }
    let dir = Dirichlet::new(alpha).expect("validated dirichlet parameters");
    dir.sample(rng)
}

fn sample_symmetric_dirichlet(alpha: f64, len: usize, rng: &mut impl Rng) -> Vec<f64> {
    sample_dirichlet(&vec![alpha; len], rng)
}

fn sample_topic(
    model: &ContentModel,
    source: usize,
    vocab_size: usize,
    rng: &mut impl Rng,
) -> Vec<f64> {
    match model {
        ContentModel::Symmetric { theta0 } => sample_symmetric_dirichlet(*theta0, vocab_size, rng),
        ContentModel::Uniform => vec![1.0 / vocab_size as f64; vocab_size],
        ContentModel::Blocks {
            num_blocks,
            within_concentration,
            shared_mass,
        } => {
            let blocks = num_blocks + usize::from(*shared_mass > 0.0);
            let block_size = vocab_size / blocks;
            let own = source % num_blocks;
            let mut topic = vec![0.0; vocab_size];
            let own_draw = sample_symmetric_dirichlet(*within_concentration, block_size, rng);
            for (i, p) in own_draw.iter().enumerate() {
                topic[own * block_size + i] = p * (1.0 - shared_mass);
            }
            if *shared_mass > 0.0 {
                let shared_draw =
                    sample_symmetric_dirichlet(*within_concentration, block_size, rng);
                for (i, p) in shared_draw.iter().enumerate() {
                    topic[num_blocks * block_size + i] = p * shared_mass;
                }
            }
            topic
        }
    }
}

fn sample_vendor_probs(
    model: &VendorModel,
    source: usize,
    catalog_size: usize,
    rng: &mut impl Rng,
) -> Vec<f64> {
    match model {
        VendorModel::Symmetric { eta0 } => sample_symmetric_dirichlet(*eta0, catalog_size, rng),
        VendorModel::Uniform => vec![1.0 / catalog_size as f64; catalog_size],
        VendorModel::Distinct { focus, background } => {
            let own = source % catalog_size;
            let alpha: Vec<f64> = (0..catalog_size)
                .map(|v| if v == own { *focus } else { *background })
                .collect();
            sample_dirichlet(&alpha, rng)
        }
    }
}

fn sample_categorical(probs: &[f64], rng: &mut impl Rng) -> usize {
    let u: f64 = rng.gen();
    let mut cum = 0.0;
    for (i, &p) in probs.iter().enumerate() {
        cum += p;
        if u < cum {
            return i;
        }
    }
    probs.len() - 1
}

fn sample_content(topic: &[f64], mean_tokens: f64, rng: &mut impl Rng) -> BTreeMap<usize, u32> {
    let len = Poisson::new(mean_tokens)
        .expect("validated mean_tokens")
        .sample(rng) as usize;
    let mut bag = BTreeMap::new();
    for _ in 0..len {
        let w = sample_categorical(topic, rng);
        *bag.entry(w).or_insert(0u32) += 1;
    }
    bag
}

struct GenSource {
    history: Vec<f64>,
    weights: KernelWeights,
    topic: Vec<f64>,
    vendor_probs: Vec<f64>,
}

impl GenSource {
    fn draw(config: &GeneratorConfig, label: usize, rng: &mut impl Rng) -> Self {
        let weights = KernelWeights::new(sample_dirichlet(&config.kernel_dirichlet, rng))
            .expect("dirichlet draw lies on the simplex");
        GenSource {
            history: Vec::new(),
            weights,
            topic: sample_topic(&config.content, label, config.vocab_size, rng),
            vendor_probs: sample_vendor_probs(&config.vendor, label, config.catalog_size, rng),
        }
    }

    fn params(&self, label: usize) -> SourceParams {
        SourceParams {
            label,
            kernel_weights: self.weights.as_slice().to_vec(),
            topic: self.topic.clone(),
            vendor_probs: self.vendor_probs.clone(),
        }
    }
}

fn emit_transaction(
    source: &GenSource,
    label: usize,
    time: f64,
    mean_tokens: f64,
    rng: &mut impl Rng,
) -> Transaction {
    Transaction {
        time,
        anon_id: "a***z".to_string(),
        vendor_id: sample_categorical(&source.vendor_probs, rng),
        content: sample_content(&source.topic, mean_tokens, rng),
        truth_label: Some(label),
    }
}

fn generate_emergent(
    config: &GeneratorConfig,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Transaction>, Vec<SourceParams>)> {
    let mut sources: Vec<GenSource> = Vec::new();
    let mut transactions = Vec::with_capacity(config.num_events);
    let mut t = 0.0;
    for _ in 0..config.num_events {
        let views: Vec<ClusterTimeline<'_>> = sources
            .iter()
            .map(|s| ClusterTimeline {
                history: &s.history,
                weights: &s.weights,
            })
            .collect();
        t = next_event_time(&views, &config.hawkes, t, rng)?;
        let components: Vec<f64> = sources
            .iter()
            .map(|s| cluster_intensity(&s.history, &s.weights, &config.hawkes.kernels, t))
            .collect::<Result<_>>()?;
        let prior = dhp_assignment_prior(&components, config.hawkes.lambda0)?;
        let label = sample_categorical(&prior, rng);
        if label == sources.len() {
            sources.push(GenSource::draw(config, label, rng));
        }
        let txn = emit_transaction(&sources[label], label, t, config.mean_tokens, rng);
        sources[label].history.push(t);
        transactions.push(txn);
    }
    let params = sources
        .iter()
        .enumerate()
        .map(|(h, s)| s.params(h))
        .collect();
    Ok((transactions, params))
}

fn generate_fixed(
    config: &GeneratorConfig,
    count: usize,
    stagger: f64,
    base_rate: f64,
    rng: &mut ChaCha8Rng,
) -> Result<(Vec<Transaction>, Vec<SourceParams>)> {
    let per_source = config.num_events / count;
    let remainder = config.num_events % count;
    let source_params = HawkesParams::new(base_rate, config.hawkes.kernels.clone())?;

    let mut transactions: Vec<Transaction> = Vec::with_capacity(config.num_events);
    let mut params = Vec::with_capacity(count);
    for h in 0..count {
        let budget = per_source + usize::from(h < remainder);
        let mut source = GenSource::draw(config, h, rng);
        let onset = h as f64 * stagger;
        let mut t = onset;
        for _ in 0..budget {
            let view = [ClusterTimeline {
                history: &source.history,
                weights: &source.weights,
            }];
            t = next_event_time(&view, &source_params, t.max(onset), rng)?;
            let txn = emit_transaction(&source, h, t, config.mean_tokens, rng);
            source.history.push(t);
            transactions.push(txn);
        }
        params.push(source.params(h));
    }
    transactions.sort_by(|a, b| a.time.partial_cmp(&b.time).unwrap());
    Ok((transactions, params))
}

/// Runs the generative process and returns the labeled stream plus the true
/// per-source parameters. Deterministic for a fixed config.
pub fn generate(config: &GeneratorConfig) -> Result<GeneratedStream> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (transactions, sources) = match &config.sources {
        SourceModel::Emergent => generate_emergent(config, &mut rng)?,
        SourceModel::Fixed {
            count,
            onset_stagger_days,
            base_rate,
        } => generate_fixed(config, *count, *onset_stagger_days, *base_rate, &mut rng)?,
    };
    let horizon_days = transactions.last().map(|t| t.time).unwrap_or(0.0);
    let stream = EventStream {
        transactions,
        origin: Utc.with_ymd_and_hms(2019, 1, 1, 0, 0, 0).unwrap(),
        horizon_days,
    };
    Ok(GeneratedStream {
        dataset: Dataset {
            stream,
            vocabulary: Vocabulary::synthetic(config.vocab_size),
            vendors: VendorCatalog::synthetic(config.catalog_size),
        },
        truth: GroundTruth { sources },
    })
}

fn scenario_kernels() -> HawkesParams {
    HawkesParams::new(
        0.05,
        crate::hawkes::KernelConfig::new(vec![1.0, 2.0, 4.0], vec![0.3, 0.5, 1.0], 7.0).unwrap(),
    )
    .unwrap()
}

/// Canned difficulty presets used by the benchmark and the recovery tests.
///
/// - `separable`: five sources with disjoint vocabulary blocks, distinct
///   vendors, and active periods 30 days apart.
/// - `overlapping`: like `separable` but every topic puts half its mass on a
///   shared vocabulary block and active periods are 15 days apart.
/// - `vendor-only`: content is exactly uniform and active periods overlap
///   heavily (4-day stagger), so the vendor mark carries the discriminative
///   signal.
/// - `time-only`: content and vendors are uniform; only the 30-day staggered
///   active periods separate the sources.
pub fn make_scenario(name: &str) -> Result<GeneratorConfig> {
    let base = GeneratorConfig {
        hawkes: scenario_kernels(),
        kernel_dirichlet: vec![2.0, 2.0, 2.0],
        vocab_size: 50,
        catalog_size: 10,
        num_events: 200,
        mean_tokens: 8.0,
        seed: 0,
        content: ContentModel::Blocks {
            num_blocks: 5,
            within_concentration: 0.5,
            shared_mass: 0.0,
        },
        vendor: VendorModel::Distinct {
            focus: 50.0,
            background: 0.1,
        },
        sources: SourceModel::Fixed {
            count: 5,
            onset_stagger_days: 30.0,
            base_rate: 1.0,
        },
    };
    match name {
        "separable" => Ok(base),
        "overlapping" => Ok(GeneratorConfig {
            vocab_size: 60,
            content: ContentModel::Blocks {
                num_blocks: 5,
                within_concentration: 0.5,
                shared_mass: 0.5,
            },
            sources: SourceModel::Fixed {
                count: 5,
                onset_stagger_days: 15.0,
                base_rate: 1.0,
            },
            ..base
        }),
        // all five sources run simultaneously with gentle (subcritical)
        // excitation, so time carries no separating signal and the vendor
        // mark has to do the work
        "vendor-only" => Ok(GeneratorConfig {
            hawkes: HawkesParams::new(
                0.05,
                crate::hawkes::KernelConfig::new(vec![1.0, 2.0, 4.0], vec![0.1, 0.2, 0.4], 5.2)
                    .unwrap(),
            )
            .unwrap(),
            content: ContentModel::Uniform,
            sources: SourceModel::Fixed {
                count: 5,
                onset_stagger_days: 0.0,
                base_rate: 1.0,
            },
            ..base
        }),
        "time-only" => Ok(GeneratorConfig {
            content: ContentModel::Uniform,
            vendor: VendorModel::Uniform,
            ..base
        }),
        other => Err(Error::invalid(format!(
            "unknown scenario {other:?}; expected separable | overlapping | vendor-only | time-only"
        ))),
    }
}

/// Companion fit settings for a scenario preset.
///
/// The uniform-content presets need two departures from the global
/// defaults: kernels on the scenario's own time scale (the default 75-day
/// memory lets one big cluster's intensity swamp every mark factor) and a
/// flat content prior (`theta0 = 1`) so uniform content carries no spurious
/// signal. `vendor-only` additionally raises the base rate, since its
/// sources run simultaneously. The content-separated presets fit well with
/// the defaults.
pub fn scenario_fit_config(name: &str) -> Result<crate::smc::FitConfig> {
    make_scenario(name)?;
    let mut config = crate::smc::FitConfig::default();
    match name {
        "vendor-only" => {
            config.hawkes = HawkesParams::new(
                0.5,
                crate::hawkes::KernelConfig::new(vec![1.0, 2.0, 4.0], vec![0.1, 0.2, 0.4], 5.2)?,
            )?;
            config.theta0 = 1.0;
        }
        "time-only" => {
            config.hawkes = scenario_kernels();
            config.theta0 = 1.0;
        }
        _ => {}
    }
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn argmax(values: &[f64]) -> usize {
        let mut best = 0;
        for (i, &v) in values.iter().enumerate() {
            if v > values[best] {
                best = i;
            }
        }
        best
    }

    #[test]
    fn single_event_run() {
        let config = GeneratorConfig {
            num_events: 1,
            ..GeneratorConfig::default()
        };
        let out = generate(&config).unwrap();
        assert_eq!(out.dataset.stream.len(), 1);
        assert_eq!(out.dataset.stream.transactions[0].truth_label, Some(0));
        assert_eq!(out.truth.sources.len(), 1);
    }

    #[test]
    fn timestamps_strictly_increase() {
        for seed in 0..3 {
            let config = GeneratorConfig {
                num_events: 120,
                seed,
                ..GeneratorConfig::default()
            };
            let out = generate(&config).unwrap();
            let times = out.dataset.stream.times();
            assert!(times.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn deterministic_under_seed() {
        let config = GeneratorConfig {
            num_events: 60,
            seed: 31,
            ..GeneratorConfig::default()
        };
        let a = generate(&config).unwrap();
        let b = generate(&config).unwrap();
        assert_eq!(a.dataset, b.dataset);
        assert_eq!(a.truth, b.truth);
    }

    #[test]
    fn tiny_base_rate_concentrates_on_few_bursty_sources() {
        // base-rate waiting time is 1e4 days, so all clustering structure
        // comes from self-excitation at the 1-day reference delay
        let config = GeneratorConfig {
            hawkes: HawkesParams::new(
                1e-4,
                crate::hawkes::KernelConfig::new(vec![1.0], vec![0.8], 3.5).unwrap(),
            )
            .unwrap(),
            kernel_dirichlet: vec![1.0],
            num_events: 15,
            ..GeneratorConfig::default()
        };
        for seed in 0..6 {
            let out = generate(&GeneratorConfig {
                seed,
                ..config.clone()
            })
            .unwrap();
            assert!(
                out.truth.sources.len() <= 3,
                "seed {seed} produced {} sources",
                out.truth.sources.len()
            );
            // within-source gaps live on the kernel's delay scale, orders of
            // magnitude below the base-rate waiting time
            let mut gaps = Vec::new();
            let mut last: std::collections::HashMap<usize, f64> = Default::default();
            for txn in &out.dataset.stream.transactions {
                let label = txn.truth_label.unwrap();
                if let Some(prev) = last.insert(label, txn.time) {
                    gaps.push(txn.time - prev);
                }
            }
            gaps.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let median = gaps[gaps.len() / 2];
            assert!(
                (0.05..=2.0).contains(&median),
                "seed {seed}: median within-source gap {median}"
            );
        }
    }

    #[test]
    fn mean_source_count_grows_with_base_rate() {
        let mut means = Vec::new();
        for lambda0 in [0.01, 0.25, 1.0] {
            let mut total = 0usize;
            for seed in 0..6 {
                let config = GeneratorConfig {
                    hawkes: HawkesParams::new(
                        lambda0,
                        crate::hawkes::KernelConfig::new(vec![1.0], vec![0.8], 3.5).unwrap(),
                    )
                    .unwrap(),
                    kernel_dirichlet: vec![1.0],
                    num_events: 80,
                    seed,
                    ..GeneratorConfig::default()
                };
                total += generate(&config).unwrap().truth.sources.len();
            }
            means.push(total as f64 / 6.0);
        }
        assert!(means[0] < means[1] && means[1] < means[2], "{means:?}");
    }

    #[test]
    fn fixed_sources_hit_exact_counts() {
        let config = make_scenario("separable").unwrap();
        let out = generate(&config).unwrap();
        assert_eq!(out.dataset.stream.len(), 200);
        assert_eq!(out.truth.sources.len(), 5);
        let labels = out.dataset.stream.truth_labels().unwrap();
        for h in 0..5 {
            assert_eq!(labels.iter().filter(|&&l| l == h).count(), 40);
        }
    }

    #[test]
    fn separable_preset_has_disjoint_topics_and_vendors() {
        let out = generate(&make_scenario("separable").unwrap()).unwrap();
        for a in 0..5 {
            for b in (a + 1)..5 {
                let ta = &out.truth.sources[a].topic;
                let tb = &out.truth.sources[b].topic;
                let overlap: f64 = ta.iter().zip(tb).map(|(x, y)| x.min(*y)).sum();
                assert_eq!(overlap, 0.0, "topics {a} and {b} overlap");
                let va = argmax(&out.truth.sources[a].vendor_probs);
                let vb = argmax(&out.truth.sources[b].vendor_probs);
                assert_ne!(va, vb);
            }
        }
    }

    #[test]
    fn overlapping_preset_shares_half_the_mass() {
        let out = generate(&make_scenario("overlapping").unwrap()).unwrap();
        for s in &out.truth.sources {
            let shared: f64 = s.topic[50..].iter().sum();
            assert!((shared - 0.5).abs() < 1e-9);
        }
    }

    #[test]
    fn vendor_only_preset_makes_content_uninformative() {
        let out = generate(&make_scenario("vendor-only").unwrap()).unwrap();
        for s in &out.truth.sources {
            assert!(s.topic.iter().all(|&p| (p - 1.0 / 50.0).abs() < 1e-12));
        }
    }

    #[test]
    fn unknown_scenario_is_rejected() {
        assert!(make_scenario("impossible").is_err());
    }

    #[test]
    fn zero_events_fails_validation() {
        let config = GeneratorConfig {
            num_events: 0,
            ..GeneratorConfig::default()
        };
        assert!(generate(&config).is_err());
    }
}
