//! Transaction data model, tokenization, vocabulary/vendor catalogs, and
//! JSONL stream ingestion.
//!
//! A stream is a time-ordered list of [`Transaction`]s. Times are fractional
//! days since the stream origin; the origin itself is an absolute datetime so
//! streams round-trip through the JSONL schema
//! `{"ts", "anon_id", "vendor", "title", "comment", "truth"?}` (output adds
//! `"t_days"`).

use std::collections::BTreeMap;
use std::collections::HashMap;
use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use chrono::{DateTime, Duration, NaiveDate, NaiveDateTime, TimeZone, Utc};
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

const NANOS_PER_DAY: f64 = 86_400.0 * 1e9;

/// One marked event: a purchase with its comment content bagged into word
/// counts. `truth_label` is the generating source when known; it is used by
/// evaluation only, never by inference.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Transaction {
    /// Days since the stream origin (non-negative).
    pub time: f64,
    /// The masked buyer ID this event was observed under, e.g. `"J***e"`.
    pub anon_id: String,
    /// Index into the stream's [`VendorCatalog`].
    pub vendor_id: usize,
    /// Sparse bag of words: vocabulary index -> count (all counts >= 1).
    /// May be empty; some buyers never comment.
    pub content: BTreeMap<usize, u32>,
    /// Ground-truth source index, if known.
    pub truth_label: Option<usize>,
}

/// A time-ordered transaction sequence with its observation window.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EventStream {
    /// Non-decreasing in `time`; ties keep input order.
    pub transactions: Vec<Transaction>,
    /// Absolute datetime of `time == 0`.
    pub origin: DateTime<Utc>,
    /// End of the observation window in days (>= every event time).
    pub horizon_days: f64,
}

impl EventStream {
    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    /// Event times in stream order.
    pub fn times(&self) -> Vec<f64> {
        self.transactions.iter().map(|t| t.time).collect()
    }

    /// Truth labels, if every transaction carries one.
    pub fn truth_labels(&self) -> Option<Vec<usize>> {
        self.transactions.iter().map(|t| t.truth_label).collect()
    }
}

/// Dense word <-> index mapping plus document frequencies.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Vocabulary {
    words: Vec<String>,
    #[serde(skip)]
    index_of: HashMap<String, usize>,
    doc_freq: Vec<usize>,
}

impl Vocabulary {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn index(&self, word: &str) -> Option<usize> {
        self.index_of.get(word).copied()
    }

    pub fn word(&self, index: usize) -> Option<&str> {
        self.words.get(index).map(String::as_str)
    }

    pub fn doc_freq(&self, index: usize) -> usize {
        self.doc_freq.get(index).copied().unwrap_or(0)
    }

    /// Interns `word`, returning its (possibly fresh) index.
    pub fn intern(&mut self, word: &str) -> usize {
        if let Some(&i) = self.index_of.get(word) {
            return i;
        }
        let i = self.words.len();
        self.words.push(word.to_string());
        self.index_of.insert(word.to_string(), i);
        self.doc_freq.push(0);
        i
    }

    fn count_document(&mut self, content: &BTreeMap<usize, u32>) {
        for &w in content.keys() {
            self.doc_freq[w] += 1;
        }
    }

    /// Rebuilds the word -> index map after deserialization.
    pub fn rebuild_index(&mut self) {
        self.index_of = self
            .words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
    }

    /// Synthetic vocabulary `w000..` of the given size (used by the generator).
    pub fn synthetic(size: usize) -> Self {
        let mut v = Vocabulary::default();
        for i in 0..size {
            v.intern(&format!("w{i:03}"));
        }
        v
    }
}

/// Dense vendor <-> index mapping.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VendorCatalog {
    names: Vec<String>,
    #[serde(skip)]
    index_of: HashMap<String, usize>,
}

impl VendorCatalog {
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.index_of.get(name).copied()
    }

    pub fn name(&self, index: usize) -> Option<&str> {
        self.names.get(index).map(String::as_str)
    }

    pub fn intern(&mut self, name: &str) -> usize {
        if let Some(&i) = self.index_of.get(name) {
            return i;
        }
        let i = self.names.len();
        self.names.push(name.to_string());
        self.index_of.insert(name.to_string(), i);
        i
    }

    pub fn rebuild_index(&mut self) {
        self.index_of = self
            .names
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
    }

    /// Synthetic catalog `v00..` of the given size (used by the generator).
    pub fn synthetic(size: usize) -> Self {
        let mut c = VendorCatalog::default();
        for i in 0..size {
            c.intern(&format!("v{i:02}"));
        }
        c
    }
}

/// A stream together with the catalogs its indices refer to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub stream: EventStream,
    pub vocabulary: Vocabulary,
    pub vendors: VendorCatalog,
}

/// How the absolute datetime of `t = 0` is chosen during ingestion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OriginPolicy {
    /// The earliest event timestamp becomes `t = 0`.
    FirstEvent,
    /// An explicit datetime becomes `t = 0`; it must not postdate the
    /// earliest event.
    Explicit(DateTime<Utc>),
}

/// Lowercased, punctuation-stripped tokens of `title` + `comment`, in
/// appearance order. Tokens shorter than two characters are dropped.
pub fn tokenize_sequence(title: &str, comment: &str) -> Vec<String> {
    let mut tokens = Vec::new();
    for text in [title, comment] {
        let cleaned: String = text
            .chars()
            .map(|c| {
                if c.is_alphanumeric() {
                    c.to_lowercase().next().unwrap_or(' ')
                } else {
                    ' '
                }
            })
            .collect();
        tokens.extend(
            cleaned
                .split_whitespace()
                .filter(|t| t.chars().count() >= 2)
                .map(str::to_string),
        );
    }
    tokens
}

/// Bag-of-words counts over the combined title + comment text.
pub fn tokenize(title: &str, comment: &str) -> BTreeMap<String, u32> {
    let mut counts = BTreeMap::new();
    for tok in tokenize_sequence(title, comment) {
        *counts.entry(tok).or_insert(0) += 1;
    }
    counts
}

#[derive(Deserialize)]
struct RawRecord {
    ts: String,
    anon_id: String,
    vendor: String,
    #[serde(default)]
    title: String,
    #[serde(default)]
    comment: String,
    #[serde(default)]
    truth: Option<usize>,
}

#[derive(Serialize)]
struct OutRecord<'a> {
    ts: String,
    anon_id: &'a str,
    vendor: &'a str,
    title: &'a str,
    comment: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    truth: Option<usize>,
    t_days: f64,
}

fn parse_timestamp(raw: &str, line: usize) -> Result<DateTime<Utc>> {
    if let Ok(dt) = DateTime::parse_from_rfc3339(raw) {
        return Ok(dt.with_timezone(&Utc));
    }
    if let Ok(naive) = NaiveDateTime::parse_from_str(raw, "%Y-%m-%dT%H:%M:%S") {
        return Ok(Utc.from_utc_datetime(&naive));
    }
    if let Ok(date) = NaiveDate::parse_from_str(raw, "%Y-%m-%d") {
        return Ok(Utc.from_utc_datetime(&date.and_hms_opt(0, 0, 0).unwrap()));
    }
    Err(Error::data(line, format!("unparsable timestamp {raw:?}")))
}

fn days_between(later: DateTime<Utc>, earlier: DateTime<Utc>) -> Result<f64> {
    let nanos = (later - earlier)
        .num_nanoseconds()
        .ok_or_else(|| Error::invalid("timestamp span overflows the day axis"))?;
    Ok(nanos as f64 / NANOS_PER_DAY)
}

/// Reads a stop-word file (one word per line, normalized like tokens).
pub fn load_stopwords(path: impl AsRef<Path>) -> Result<std::collections::HashSet<String>> {
    let text = std::fs::read_to_string(path.as_ref())?;
    Ok(text
        .lines()
        .flat_map(|line| tokenize_sequence("", line))
        .collect())
}

/// Reads a JSONL transaction file into a [`Dataset`].
///
/// Records are sorted by timestamp (stable), times converted to fractional
/// days from the origin, and the vocabulary/catalog built in first-appearance
/// order over the sorted stream. Malformed lines are reported with their
/// 1-based line number.
pub fn ingest_stream(path: impl AsRef<Path>, origin_policy: OriginPolicy) -> Result<Dataset> {
    ingest_stream_inner(path, origin_policy, None)
}

/// [`ingest_stream`] with a stop-word list applied during tokenization.
pub fn ingest_stream_filtered(
    path: impl AsRef<Path>,
    origin_policy: OriginPolicy,
    stopwords: &std::collections::HashSet<String>,
) -> Result<Dataset> {
    ingest_stream_inner(path, origin_policy, Some(stopwords))
}

fn ingest_stream_inner(
    path: impl AsRef<Path>,
    origin_policy: OriginPolicy,
    stopwords: Option<&std::collections::HashSet<String>>,
) -> Result<Dataset> {
    let file = File::open(path.as_ref())?;
    let reader = BufReader::new(file);

    struct Parsed {
        ts: DateTime<Utc>,
        anon_id: String,
        vendor: String,
        tokens: Vec<String>,
        truth: Option<usize>,
    }

    let mut parsed: Vec<Parsed> = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let raw: RawRecord = serde_json::from_str(&line)
            .map_err(|e| Error::data(line_no, format!("malformed record: {e}")))?;
        let ts = parse_timestamp(&raw.ts, line_no)?;
        let mut tokens = tokenize_sequence(&raw.title, &raw.comment);
        if let Some(stop) = stopwords {
            tokens.retain(|t| !stop.contains(t));
        }
        parsed.push(Parsed {
            ts,
            anon_id: raw.anon_id,
            vendor: raw.vendor,
            tokens,
            truth: raw.truth,
        });
    }

    parsed.sort_by_key(|p| p.ts);

    let origin = match origin_policy {
        OriginPolicy::FirstEvent => parsed.first().map(|p| p.ts).unwrap_or_else(Utc::now),
        OriginPolicy::Explicit(dt) => dt,
    };

    let mut vocabulary = Vocabulary::default();
    let mut vendors = VendorCatalog::default();
    let mut transactions = Vec::with_capacity(parsed.len());
    for p in &parsed {
        let time = days_between(p.ts, origin)?;
        if time < 0.0 {
            return Err(Error::invalid(format!(
                "event at {} predates the origin {origin}",
                p.ts
            )));
        }
        let vendor_id = vendors.intern(&p.vendor);
        let mut content = BTreeMap::new();
        for tok in &p.tokens {
            let w = vocabulary.intern(tok);
            *content.entry(w).or_insert(0) += 1;
        }
        vocabulary.count_document(&content);
        transactions.push(Transaction {
            time,
            anon_id: p.anon_id.clone(),
            vendor_id,
            content,
            truth_label: p.truth,
        });
    }

    let horizon_days = transactions.last().map(|t| t.time).unwrap_or(0.0);
    Ok(Dataset {
        stream: EventStream {
            transactions,
            origin,
            horizon_days,
        },
        vocabulary,
        vendors,
    })
}

/// Writes a dataset back to the JSONL schema (plus `t_days`).
///
/// Content is emitted as normalized tokens in the `comment` field, each
/// repeated by its count in vocabulary-index order, so that re-ingesting the
/// file reproduces the same stream, vocabulary, and catalog.
pub fn write_stream(dataset: &Dataset, path: impl AsRef<Path>) -> Result<()> {
    let file = File::create(path.as_ref())?;
    let mut out = BufWriter::new(file);
    for txn in &dataset.stream.transactions {
        let nanos = (txn.time * NANOS_PER_DAY).round() as i64;
        let ts = dataset.stream.origin + Duration::nanoseconds(nanos);
        let mut words = Vec::new();
        for (&w, &count) in &txn.content {
            let word = dataset
                .vocabulary
                .word(w)
                .ok_or_else(|| Error::invalid(format!("word index {w} not in vocabulary")))?;
            for _ in 0..count {
                words.push(word);
            }
        }
        let vendor = dataset.vendors.name(txn.vendor_id).ok_or_else(|| {
            Error::invalid(format!("vendor index {} not in catalog", txn.vendor_id))
        })?;
        let record = OutRecord {
            ts: ts.to_rfc3339_opts(chrono::SecondsFormat::Nanos, true),
            anon_id: &txn.anon_id,
            vendor,
            title: "",
            comment: words.join(" "),
            truth: txn.truth_label,
            t_days: txn.time,
        };
        serde_json::to_writer(&mut out, &record).map_err(|e| Error::invalid(e.to_string()))?;
        out.write_all(b"\n")?;
    }
    out.flush()?;
    Ok(())
}

/// Merges per-source streams into one globally time-sorted stream, setting
/// every transaction's `truth_label` to its source stream index.
///
/// All inputs must index into one shared vocabulary and catalog (as streams
/// produced by one generator run or split from one dataset do); use
/// [`mix_datasets`] when each stream carries its own catalogs. Ties in time
/// keep source order.
pub fn mix_ground_truth(streams: &[EventStream]) -> Result<EventStream> {
    if streams.is_empty() {
        return Err(Error::invalid("mix_ground_truth requires a nonempty list"));
    }
    if streams.len() < 2 {
        return Err(Error::invalid(
            "mix_ground_truth requires at least two streams",
        ));
    }
    let origin = streams.iter().map(|s| s.origin).min().unwrap();
    let mut merged: Vec<Transaction> = Vec::new();
    let mut horizon = 0.0f64;
    for (label, stream) in streams.iter().enumerate() {
        let offset = days_between(stream.origin, origin)?;
        horizon = horizon.max(stream.horizon_days + offset);
        for txn in &stream.transactions {
            let mut t = txn.clone();
            t.time += offset;
            t.truth_label = Some(label);
            merged.push(t);
        }
    }
    merged.sort_by(|a, b| a.time.partial_cmp(&b.time).unwrap());
    Ok(EventStream {
        transactions: merged,
        origin,
        horizon_days: horizon,
    })
}

/// Merges independently-ingested datasets, remapping word and vendor indices
/// into fresh catalogs built in merged first-appearance order.
pub fn mix_datasets(datasets: &[Dataset]) -> Result<Dataset> {
    if datasets.len() < 2 {
        return Err(Error::invalid(
            "mix_datasets requires at least two datasets",
        ));
    }
    let origin = datasets.iter().map(|d| d.stream.origin).min().unwrap();
    let mut tagged: Vec<(usize, Transaction)> = Vec::new();
    let mut horizon = 0.0f64;
    for (label, ds) in datasets.iter().enumerate() {
        let offset = days_between(ds.stream.origin, origin)?;
        horizon = horizon.max(ds.stream.horizon_days + offset);
        for txn in &ds.stream.transactions {
            let mut t = txn.clone();
            t.time += offset;
            t.truth_label = Some(label);
            tagged.push((label, t));
        }
    }
    tagged.sort_by(|a, b| a.1.time.partial_cmp(&b.1.time).unwrap());

    let mut vocabulary = Vocabulary::default();
    let mut vendors = VendorCatalog::default();
    let mut transactions = Vec::with_capacity(tagged.len());
    for (label, mut txn) in tagged {
        let src = &datasets[label];
        let vendor = src
            .vendors
            .name(txn.vendor_id)
            .ok_or_else(|| Error::invalid("vendor index out of catalog".to_string()))?;
        txn.vendor_id = vendors.intern(vendor);
        let mut content = BTreeMap::new();
        for (&w, &count) in &txn.content {
            let word = src
                .vocabulary
                .word(w)
                .ok_or_else(|| Error::invalid("word index out of vocabulary".to_string()))?;
            *content.entry(vocabulary.intern(word)).or_insert(0) += count;
        }
        txn.content = content;
        vocabulary.count_document(&txn.content);
        transactions.push(txn);
    }

    Ok(Dataset {
        stream: EventStream {
            transactions,
            origin,
            horizon_days: horizon,
        },
        vocabulary,
        vendors,
    })
}
