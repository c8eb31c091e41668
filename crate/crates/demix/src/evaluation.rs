//! Clustering evaluation: chance-adjusted and information-theoretic
//! agreement scores against ground truth, plus internal quality scores
//! (silhouette over word-frequency features and sliding-window topic
//! coherence) that need no truth labels.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};

use crate::event_model::Dataset;
use crate::smc::ClusteringResult;
use crate::{Error, Result};

/// Sliding-window width (tokens) for topic coherence; documents shorter
/// than the window count as a single window.
pub const DEFAULT_CV_WINDOW: usize = 110;
/// Top words per cluster entering the coherence computation.
pub const DEFAULT_CV_TOP_K: usize = 10;
const NPMI_EPS: f64 = 1e-12;

/// All scores for one fitted sequence. Truth-based fields are present only
/// when every event carries a truth label; silhouette and coherence are
/// present when defined (at least two clusters, respectively at least one
/// cluster with two distinct top words).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub ars: Option<f64>,
    pub nmi: Option<f64>,
    pub v_score: Option<f64>,
    pub h_score: Option<f64>,
    pub silhouette: Option<f64>,
    pub c_v: Option<f64>,
    pub h_hat: usize,
}

/// Contingency table between two labelings, with row/column sums.
struct Contingency {
    cells: HashMap<(usize, usize), f64>,
    rows: Vec<f64>,
    cols: Vec<f64>,
    n: f64,
}

fn compact(labels: &[usize]) -> Vec<usize> {
    let mut map = HashMap::new();
    labels
        .iter()
        .map(|&l| {
            let next = map.len();
            *map.entry(l).or_insert(next)
        })
        .collect()
}

fn contingency(truth: &[usize], predicted: &[usize]) -> Result<Contingency> {
    if truth.len() != predicted.len() {
        return Err(Error::invalid(format!(
            "label arrays differ in length: {} vs {}",
            truth.len(),
            predicted.len()
        )));
    }
    if truth.len() < 2 {
        return Err(Error::invalid(
            "need at least two events to score a clustering",
        ));
    }
    let t = compact(truth);
    let p = compact(predicted);
    let n_rows = t.iter().max().unwrap() + 1;
    let n_cols = p.iter().max().unwrap() + 1;
    let mut cells: HashMap<(usize, usize), f64> = HashMap::new();
    let mut rows = vec![0.0; n_rows];
    let mut cols = vec![0.0; n_cols];
    for (&ti, &pi) in t.iter().zip(&p) {
        *cells.entry((ti, pi)).or_insert(0.0) += 1.0;
        rows[ti] += 1.0;
        cols[pi] += 1.0;
    }
    Ok(Contingency {
        cells,
        rows,
        cols,
        n: truth.len() as f64,
    })
}

fn comb2(x: f64) -> f64 {
    x * (x - 1.0) / 2.0
}

/// Adjusted Rand score: `(RI - E[RI]) / (max RI - E[RI])` from pair counts.
/// Degenerate cases where both partitions are trivial (and therefore equal)
/// score 1.
pub fn ars(truth: &[usize], predicted: &[usize]) -> Result<f64> {
    let c = contingency(truth, predicted)?;
    let sum_cells: f64 = c.cells.values().map(|&v| comb2(v)).sum();
    let sum_rows: f64 = c.rows.iter().map(|&v| comb2(v)).sum();
    let sum_cols: f64 = c.cols.iter().map(|&v| comb2(v)).sum();
    let total = comb2(c.n);
    let expected = sum_rows * sum_cols / total;
    let max_index = 0.5 * (sum_rows + sum_cols);
    if (max_index - expected).abs() < 1e-15 {
        return Ok(1.0);
    }
    Ok((sum_cells - expected) / (max_index - expected))
}

fn entropy(counts: &[f64], n: f64) -> f64 {
    counts
        .iter()
        .filter(|&&c| c > 0.0)
        .map(|&c| {
            let p = c / n;
            -p * p.ln()
        })
        .sum()
}

fn mutual_information(c: &Contingency) -> f64 {
    let mut mi = 0.0;
    for (&(i, j), &nij) in &c.cells {
        if nij > 0.0 {
            mi += (nij / c.n) * ((c.n * nij) / (c.rows[i] * c.cols[j])).ln();
        }
    }
    mi.max(0.0)
}

/// Normalized mutual information with arithmetic-mean normalization.
pub fn nmi(truth: &[usize], predicted: &[usize]) -> Result<f64> {
    let c = contingency(truth, predicted)?;
    let h_truth = entropy(&c.rows, c.n);
    let h_pred = entropy(&c.cols, c.n);
    if h_truth == 0.0 && h_pred == 0.0 {
        // both partitions are a single cluster
        return Ok(1.0);
    }
    let normalizer = 0.5 * (h_truth + h_pred);
    if normalizer == 0.0 {
        return Ok(0.0);
    }
    Ok(mutual_information(&c) / normalizer)
}

/// V-measure (harmonic mean of homogeneity and completeness) and the
/// homogeneity score, from conditional entropies.
pub fn v_and_h(truth: &[usize], predicted: &[usize]) -> Result<(f64, f64)> {
    let c = contingency(truth, predicted)?;
    let h_truth = entropy(&c.rows, c.n);
    let h_pred = entropy(&c.cols, c.n);

    // H(truth | predicted)
    let mut h_t_given_p = 0.0;
    let mut h_p_given_t = 0.0;
    for (&(i, j), &nij) in &c.cells {
        if nij > 0.0 {
            h_t_given_p -= (nij / c.n) * (nij / c.cols[j]).ln();
            h_p_given_t -= (nij / c.n) * (nij / c.rows[i]).ln();
        }
    }

    let homogeneity = if h_truth == 0.0 {
        1.0
    } else {
        1.0 - h_t_given_p / h_truth
    };
    let completeness = if h_pred == 0.0 {
        1.0
    } else {
        1.0 - h_p_given_t / h_pred
    };
    let v = if homogeneity + completeness == 0.0 {
        0.0
    } else {
        2.0 * homogeneity * completeness / (homogeneity + completeness)
    };
    Ok((v, homogeneity))
}

/// Distance used by the silhouette score.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Euclidean,
    Cosine,
}

fn distance(a: &[f64], b: &[f64], metric: Distance) -> f64 {
    match metric {
        Distance::Euclidean => a
            .iter()
            .zip(b)
            .map(|(x, y)| (x - y) * (x - y))
            .sum::<f64>()
            .sqrt(),
        Distance::Cosine => {
            let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
            let na: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
            let nb: f64 = b.iter().map(|x| x * x).sum::<f64>().sqrt();
            if na == 0.0 && nb == 0.0 {
                0.0
            } else if na == 0.0 || nb == 0.0 {
                1.0
            } else {
                1.0 - dot / (na * nb)
            }
        }
    }
}

/// Mean silhouette coefficient `(b - a) / max(a, b)` over all events.
///
/// `a` is the mean distance to the event's own cluster, `b` the smallest
/// mean distance to another cluster. Events in singleton clusters score 0.
/// A single cluster overall leaves the score undefined and is an error.
pub fn silhouette(features: &[Vec<f64>], labels: &[usize], metric: Distance) -> Result<f64> {
    if features.len() != labels.len() {
        return Err(Error::invalid("features and labels differ in length"));
    }
    let distinct: BTreeSet<usize> = labels.iter().copied().collect();
    if distinct.len() < 2 {
        return Err(Error::invalid(
            "silhouette is undefined for a single cluster",
        ));
    }
    let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
    for (i, &l) in labels.iter().enumerate() {
        members.entry(l).or_default().push(i);
    }

    let mut total = 0.0;
    for (i, x) in features.iter().enumerate() {
        let own = &members[&labels[i]];
        if own.len() == 1 {
            continue; // singleton contributes 0
        }
        let a: f64 = own
            .iter()
            .filter(|&&j| j != i)
            .map(|&j| distance(x, &features[j], metric))
            .sum::<f64>()
            / (own.len() - 1) as f64;
        let b = members
            .iter()
            .filter(|(&l, _)| l != labels[i])
            .map(|(_, idx)| {
                idx.iter()
                    .map(|&j| distance(x, &features[j], metric))
                    .sum::<f64>()
                    / idx.len() as f64
            })
            .fold(f64::INFINITY, f64::min);
        let denom = a.max(b);
        if denom > 0.0 {
            total += (b - a) / denom;
        }
    }
    Ok(total / features.len() as f64)
}

/// L1-normalized word-frequency vector per event (the silhouette features).
pub fn word_frequency_features(dataset: &Dataset) -> Vec<Vec<f64>> {
    let width = dataset.vocabulary.len();
    dataset
        .stream
        .transactions
        .iter()
        .map(|txn| {
            let mut v = vec![0.0; width];
            let total: u32 = txn.content.values().sum();
            if total > 0 {
                for (&w, &c) in &txn.content {
                    v[w] = c as f64 / total as f64;
                }
            }
            v
        })
        .collect()
}

/// Sliding-window topic coherence over per-cluster top-word lists.
///
/// Pipeline: boolean window co-occurrence counts over the corpus, NPMI
/// vector of each top word against the whole top-k set, cosine similarity
/// of each vector to the set's sum vector, means over words then clusters.
/// Pairs involving a word absent from the corpus contribute NPMI 0;
/// everything else is smoothed by a small epsilon on the joint probability.
pub fn topic_coherence_cv(
    clusters_top_words: &[Vec<String>],
    corpus: &[Vec<String>],
    window: usize,
) -> Result<f64> {
    if clusters_top_words.is_empty() {
        return Err(Error::invalid("coherence needs at least one cluster"));
    }
    if corpus.is_empty() || window == 0 {
        return Err(Error::invalid(
            "coherence needs a nonempty corpus and window",
        ));
    }
    for words in clusters_top_words {
        if words.len() < 2 {
            return Err(Error::invalid(
                "coherence needs at least two top words per cluster",
            ));
        }
        let distinct: BTreeSet<&String> = words.iter().collect();
        if distinct.len() != words.len() {
            return Err(Error::invalid("duplicate top words in a cluster"));
        }
    }

    // Occurrence and co-occurrence window counts over the union of top words.
    let tracked: BTreeSet<&String> = clusters_top_words.iter().flatten().collect();
    let index: HashMap<&String, usize> = tracked.iter().enumerate().map(|(i, w)| (*w, i)).collect();
    let m = tracked.len();
    let mut occur = vec![0u64; m];
    let mut joint = vec![0u64; m * m];
    let mut windows = 0u64;
    for doc in corpus {
        let spans: Vec<(usize, usize)> = if doc.len() <= window {
            vec![(0, doc.len())]
        } else {
            (0..=doc.len() - window).map(|s| (s, s + window)).collect()
        };
        for (start, end) in spans {
            windows += 1;
            let mut present: BTreeSet<usize> = BTreeSet::new();
            for tok in &doc[start..end] {
                if let Some(&i) = index.get(tok) {
                    present.insert(i);
                }
            }
            for &i in &present {
                occur[i] += 1;
                for &j in &present {
                    joint[i * m + j] += 1;
                }
            }
        }
    }

    let p = |count: u64| count as f64 / windows as f64;
    let npmi = |i: usize, j: usize| -> f64 {
        let pi = p(occur[i]);
        let pj = p(occur[j]);
        if pi == 0.0 || pj == 0.0 {
            return 0.0;
        }
        let pij = p(joint[i * m + j]) + NPMI_EPS;
        (pij / (pi * pj)).ln() / -pij.ln()
    };

    let mut per_cluster = Vec::with_capacity(clusters_top_words.len());
    for words in clusters_top_words {
        let ids: Vec<usize> = words.iter().map(|w| index[w]).collect();
        let k = ids.len();
        let vectors: Vec<Vec<f64>> = ids
            .iter()
            .map(|&i| ids.iter().map(|&j| npmi(i, j)).collect())
            .collect();
        let mut sum_vector = vec![0.0; k];
        for v in &vectors {
            for (s, x) in sum_vector.iter_mut().zip(v) {
                *s += x;
            }
        }
        let mut sims = 0.0;
        for v in &vectors {
            let dot: f64 = v.iter().zip(&sum_vector).map(|(a, b)| a * b).sum();
            let nv: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            let ns: f64 = sum_vector.iter().map(|x| x * x).sum::<f64>().sqrt();
            if nv > 0.0 && ns > 0.0 {
                sims += dot / (nv * ns);
            }
        }
        per_cluster.push(sims / k as f64);
    }
    Ok(per_cluster.iter().sum::<f64>() / per_cluster.len() as f64)
}

/// Expands a dataset's bags back into token lists (vocabulary order within
/// each event), the corpus form the coherence metric consumes.
pub fn corpus_documents(dataset: &Dataset) -> Vec<Vec<String>> {
    dataset
        .stream
        .transactions
        .iter()
        .map(|txn| {
            let mut doc = Vec::new();
            for (&w, &count) in &txn.content {
                if let Some(word) = dataset.vocabulary.word(w) {
                    for _ in 0..count {
                        doc.push(word.to_string());
                    }
                }
            }
            doc
        })
        .collect()
}

/// Assembles every applicable metric for one fitted sequence.
///
/// Truth-based scores require every event to carry a truth label; the
/// silhouette needs at least two clusters; coherence uses up to
/// [`DEFAULT_CV_TOP_K`] top words per cluster and skips clusters with fewer
/// than two.
pub fn report(result: &ClusteringResult, dataset: &Dataset) -> Result<MetricsReport> {
    let truth = dataset.stream.truth_labels();
    let (mut ars_v, mut nmi_v, mut v_v, mut h_v) = (None, None, None, None);
    if let Some(truth) = &truth {
        if truth.len() >= 2 {
            ars_v = Some(ars(truth, &result.labels)?);
            nmi_v = Some(nmi(truth, &result.labels)?);
            let (v, h) = v_and_h(truth, &result.labels)?;
            v_v = Some(v);
            h_v = Some(h);
        }
    }

    let silhouette_v = if result.h_hat >= 2 {
        let features = word_frequency_features(dataset);
        Some(silhouette(&features, &result.labels, Distance::Euclidean)?)
    } else {
        None
    };

    let top_lists: Vec<Vec<String>> = result
        .clusters
        .iter()
        .map(|c| {
            c.top_words
                .iter()
                .take(DEFAULT_CV_TOP_K)
                .map(|(w, _)| w.clone())
                .collect::<Vec<String>>()
        })
        .filter(|words: &Vec<String>| words.len() >= 2)
        .collect();
    let c_v = if top_lists.is_empty() {
        None
    } else {
        let corpus = corpus_documents(dataset);
        if corpus.iter().all(|d| d.is_empty()) {
            None
        } else {
            Some(topic_coherence_cv(&top_lists, &corpus, DEFAULT_CV_WINDOW)?)
        }
    };

    Ok(MetricsReport {
        ars: ars_v,
        nmi: nmi_v,
        v_score: v_v,
        h_score: h_v,
        silhouette: silhouette_v,
        c_v,
        h_hat: result.h_hat,
    })
}

/// Field-wise mean over per-sequence reports (present values only).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateReport {
    pub sequences: usize,
    pub ars: Option<f64>,
    pub nmi: Option<f64>,
    pub v_score: Option<f64>,
    pub h_score: Option<f64>,
    pub silhouette: Option<f64>,
    pub c_v: Option<f64>,
    pub mean_h_hat: f64,
}

pub fn aggregate(reports: &[MetricsReport]) -> AggregateReport {
    fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
        let present: Vec<f64> = values.flatten().collect();
        if present.is_empty() {
            None
        } else {
            Some(present.iter().sum::<f64>() / present.len() as f64)
        }
    }
    AggregateReport {
        sequences: reports.len(),
        ars: mean(reports.iter().map(|r| r.ars)),
        nmi: mean(reports.iter().map(|r| r.nmi)),
        v_score: mean(reports.iter().map(|r| r.v_score)),
        h_score: mean(reports.iter().map(|r| r.h_score)),
        silhouette: mean(reports.iter().map(|r| r.silhouette)),
        c_v: mean(reports.iter().map(|r| r.c_v)),
        mean_h_hat: if reports.is_empty() {
            0.0
        } else {
            reports.iter().map(|r| r.h_hat as f64).sum::<f64>() / reports.len() as f64
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identical_labelings_score_one() {
        let t = [0, 0, 1, 1, 2, 2];
        assert_eq!(ars(&t, &t).unwrap(), 1.0);
        assert_eq!(nmi(&t, &t).unwrap(), 1.0);
        let (v, h) = v_and_h(&t, &t).unwrap();
        assert_eq!((v, h), (1.0, 1.0));
    }

    #[test]
    fn relabeling_permutation_scores_one() {
        let t = [0, 0, 1, 1, 2, 2];
        let p = [2, 2, 0, 0, 1, 1];
        assert_eq!(ars(&t, &p).unwrap(), 1.0);
        assert!((nmi(&t, &p).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn anti_diagonal_pairs_give_negative_ars() {
        let got = ars(&[0, 0, 1, 1], &[0, 1, 0, 1]).unwrap();
        assert!((got - (-0.5)).abs() < 1e-15);
    }

    #[test]
    fn mismatched_lengths_are_rejected() {
        assert!(ars(&[0, 1], &[0]).is_err());
        assert!(nmi(&[0, 1], &[0]).is_err());
        assert!(v_and_h(&[0, 1], &[0]).is_err());
    }

    #[test]
    fn homogeneity_is_one_for_pure_oversplit() {
        let truth = [0, 0, 0, 0, 1, 1, 1, 1];
        let pred = [0, 0, 1, 1, 2, 2, 3, 3];
        let (_, h) = v_and_h(&truth, &pred).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
    }

    #[test]
    fn random_labelings_have_near_zero_ars_on_average() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let truth: Vec<usize> = (0..60).map(|i| i % 4).collect();
        let mut total = 0.0;
        for _ in 0..1000 {
            let pred: Vec<usize> = (0..60).map(|_| rng.gen_range(0..4)).collect();
            total += ars(&truth, &pred).unwrap();
        }
        let mean = total / 1000.0;
        assert!(mean.abs() < 0.02, "mean ARS of random labelings was {mean}");
    }

    #[test]
    fn silhouette_separated_identical_clusters() {
        let features = vec![
            vec![0.0, 1.0],
            vec![0.0, 1.0],
            vec![5.0, 0.0],
            vec![5.0, 0.0],
        ];
        let got = silhouette(&features, &[0, 0, 1, 1], Distance::Euclidean).unwrap();
        assert!((got - 1.0).abs() < 1e-12);
    }

    #[test]
    fn silhouette_all_identical_vectors_is_zero() {
        let features = vec![vec![1.0], vec![1.0], vec![1.0], vec![1.0]];
        let got = silhouette(&features, &[0, 0, 1, 1], Distance::Euclidean).unwrap();
        assert_eq!(got, 0.0);
    }

    #[test]
    fn silhouette_four_point_line() {
        let features = vec![vec![0.0], vec![0.1], vec![1.0], vec![1.1]];
        let got = silhouette(&features, &[0, 0, 1, 1], Distance::Euclidean).unwrap();
        // per point: (1.05-0.1)/1.05, (0.95-0.1)/0.95, mirrored
        let expected = ((1.05 - 0.1) / 1.05 + (0.95 - 0.1) / 0.95) / 2.0;
        assert!((got - expected).abs() < 1e-10);
    }

    #[test]
    fn silhouette_single_cluster_is_an_error() {
        let features = vec![vec![0.0], vec![1.0]];
        assert!(silhouette(&features, &[0, 0], Distance::Euclidean).is_err());
    }

    #[test]
    fn silhouette_singletons_score_zero() {
        let features = vec![vec![0.0], vec![0.1], vec![9.0]];
        let got = silhouette(&features, &[0, 0, 1], Distance::Euclidean).unwrap();
        // third point is a singleton: mean over 3 of {s0, s1, 0}
        let s0 = (9.0 - 0.1) / 9.0;
        let s1 = (8.9 - 0.1) / 8.9;
        assert!((got - (s0 + s1) / 3.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn silhouette_cosine_scale_invariant(scale in 0.1f64..50.0) {
            let features = vec![
                vec![1.0, 0.2],
                vec![0.9, 0.3],
                vec![0.1, 1.0],
                vec![0.2, 0.9],
            ];
            let scaled: Vec<Vec<f64>> = features
                .iter()
                .map(|v| v.iter().map(|x| x * scale).collect())
                .collect();
            let labels = [0, 0, 1, 1];
            let a = silhouette(&features, &labels, Distance::Cosine).unwrap();
            let b = silhouette(&scaled, &labels, Distance::Cosine).unwrap();
            prop_assert!((a - b).abs() < 1e-12);
        }

        #[test]
        fn truth_metrics_invariant_under_relabeling(perm_seed in 0u64..500) {
            let truth: Vec<usize> = vec![0, 0, 1, 1, 1, 2, 2, 3, 3, 3, 3, 0];
            let pred: Vec<usize> = vec![1, 1, 0, 0, 2, 2, 2, 3, 3, 1, 3, 0];
            let mut names: Vec<usize> = (0..4).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(perm_seed);
            names.shuffle(&mut rng);
            let renamed: Vec<usize> = pred.iter().map(|&l| names[l]).collect();
            prop_assert!((ars(&truth, &pred).unwrap() - ars(&truth, &renamed).unwrap()).abs() < 1e-12);
            prop_assert!((nmi(&truth, &pred).unwrap() - nmi(&truth, &renamed).unwrap()).abs() < 1e-12);
            let (v1, h1) = v_and_h(&truth, &pred).unwrap();
            let (v2, h2) = v_and_h(&truth, &renamed).unwrap();
            prop_assert!((v1 - v2).abs() < 1e-12);
            prop_assert!((h1 - h2).abs() < 1e-12);
        }
    }

    fn docs(raw: &[&str]) -> Vec<Vec<String>> {
        raw.iter()
            .map(|d| d.split_whitespace().map(str::to_string).collect())
            .collect()
    }

    #[test]
    fn coherence_of_always_cooccurring_words_is_one() {
        let corpus = docs(&["aa bb cc", "aa bb cc", "aa bb cc", "aa bb cc dd"]);
        let tops = vec![vec!["aa".to_string(), "bb".to_string(), "cc".to_string()]];
        let got = topic_coherence_cv(&tops, &corpus, DEFAULT_CV_WINDOW).unwrap();
        assert!(got > 0.999, "got {got}");
    }

    #[test]
    fn coherence_of_anti_correlated_words_is_low() {
        let mut raw = Vec::new();
        for _ in 0..20 {
            raw.push("aa xx");
            raw.push("bb yy");
        }
        let corpus = docs(&raw);
        let tops = vec![vec!["aa".to_string(), "bb".to_string()]];
        let got = topic_coherence_cv(&tops, &corpus, DEFAULT_CV_WINDOW).unwrap();
        assert!(got < 0.5, "got {got}");
    }

    #[test]
    fn coherence_rejects_duplicate_top_words() {
        let corpus = docs(&["aa bb"]);
        let tops = vec![vec!["aa".to_string(), "aa".to_string()]];
        assert!(topic_coherence_cv(&tops, &corpus, DEFAULT_CV_WINDOW).is_err());
    }

    #[test]
    fn coherence_handles_words_absent_from_corpus() {
        let corpus = docs(&["aa bb", "aa bb"]);
        let tops = vec![vec!["aa".to_string(), "zz".to_string()]];
        let got = topic_coherence_cv(&tops, &corpus, DEFAULT_CV_WINDOW).unwrap();
        assert!(got.is_finite());
    }

    #[test]
    fn aggregate_takes_field_means() {
        let r1 = MetricsReport {
            ars: Some(1.0),
            nmi: Some(0.8),
            v_score: None,
            h_score: None,
            silhouette: Some(0.2),
            c_v: None,
            h_hat: 4,
        };
        let r2 = MetricsReport {
            ars: Some(0.5),
            nmi: Some(0.6),
            v_score: Some(0.7),
            h_score: None,
            silhouette: None,
            c_v: None,
            h_hat: 6,
        };
        let agg = aggregate(&[r1, r2]);
        assert_eq!(agg.ars, Some(0.75));
        assert_eq!(agg.v_score, Some(0.7));
        assert_eq!(agg.h_score, None);
        assert_eq!(agg.mean_h_hat, 5.0);
    }
}
