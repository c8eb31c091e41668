//! Tokenization rules and JSONL ingestion.
//!
//! ```bash
//! cargo run -p demix --example tokenize_and_ingest
//! ```

use std::io::Write;

use demix::event_model::{ingest_stream, tokenize, write_stream, OriginPolicy};

fn main() -> demix::Result<()> {
    println!("=== Tokenization ===");
    for (title, comment) in [
        ("LSD 100ug", "great product great"),
        ("Ketamine", ""),
        ("", "A+ seller, 10/10 would buy again!"),
        ("", ""),
    ] {
        println!(
            "  ({title:?}, {comment:?}) -> {:?}",
            tokenize(title, comment)
        );
    }

    println!("\n=== Ingestion ===");
    let mut file = tempfile::NamedTempFile::new().expect("temp file");
    for line in [
        r#"{"ts":"2019-03-01T10:00:00Z","anon_id":"J***e","vendor":"acme","title":"LSD 100ug","comment":"fast shipping"}"#,
        r#"{"ts":"2019-03-04T09:30:00Z","anon_id":"J***e","vendor":"acme","title":"LSD 100ug","comment":"great as always"}"#,
        r#"{"ts":"2019-03-02T18:00:00Z","anon_id":"J***e","vendor":"kexchem","title":"Ketamine","comment":""}"#,
    ] {
        writeln!(file, "{line}").expect("write");
    }
    file.flush().expect("flush");

    let dataset = ingest_stream(file.path(), OriginPolicy::FirstEvent)?;
    println!(
        "  {} events over {:.2} days",
        dataset.stream.len(),
        dataset.stream.horizon_days
    );
    println!(
        "  vocabulary: {} words, catalog: {} vendors",
        dataset.vocabulary.len(),
        dataset.vendors.len()
    );
    for txn in &dataset.stream.transactions {
        println!(
            "  t = {:5.2}  vendor = {:8}  words = {:?}",
            txn.time,
            dataset.vendors.name(txn.vendor_id).unwrap(),
            txn.content
                .keys()
                .map(|&w| dataset.vocabulary.word(w).unwrap())
                .collect::<Vec<_>>()
        );
    }

    // streams round-trip through the output schema
    let out = tempfile::NamedTempFile::new().expect("temp file");
    write_stream(&dataset, out.path())?;
    let again = ingest_stream(out.path(), OriginPolicy::FirstEvent)?;
    println!("\n  round-trip identical: {}", dataset == again);
    Ok(())
}
