//! Clustering metrics from label arrays and from fitted results.
//!
//! ```bash
//! cargo run -p demix --example evaluate_labels
//! ```

use demix::evaluation::{
    ars, nmi, silhouette, topic_coherence_cv, v_and_h, Distance, DEFAULT_CV_WINDOW,
};

fn main() -> demix::Result<()> {
    println!("=== Agreement scores against ground truth ===");
    let truth = vec![0, 0, 1, 1, 2, 2];
    for (name, pred) in [
        ("perfect", vec![0, 0, 1, 1, 2, 2]),
        ("relabeled", vec![2, 2, 0, 0, 1, 1]),
        ("merged", vec![0, 0, 0, 0, 1, 1]),
        ("oversplit", vec![0, 1, 2, 3, 4, 5]),
    ] {
        let (v, h) = v_and_h(&truth, &pred)?;
        println!(
            "  {name:10} ARS {:+.4}  NMI {:.4}  V {:.4}  H {:.4}",
            ars(&truth, &pred)?,
            nmi(&truth, &pred)?,
            v,
            h
        );
    }
    println!("  (oversplitting keeps homogeneity at 1; merging destroys it)");

    println!("\n=== Silhouette over word-frequency features ===");
    let features = vec![vec![0.0], vec![0.1], vec![1.0], vec![1.1]];
    let s = silhouette(&features, &[0, 0, 1, 1], Distance::Euclidean)?;
    println!("  1-D points {{0, 0.1 | 1, 1.1}}: silhouette = {s:.6}");

    println!("\n=== Sliding-window topic coherence ===");
    let coherent: Vec<Vec<String>> = (0..10)
        .map(|_| vec!["lsd".into(), "blotter".into(), "tabs".into()])
        .collect();
    let tops = vec![vec![
        "lsd".to_string(),
        "blotter".to_string(),
        "tabs".to_string(),
    ]];
    println!(
        "  words always together: C_v = {:.4}",
        topic_coherence_cv(&tops, &coherent, DEFAULT_CV_WINDOW)?
    );

    let mut scattered: Vec<Vec<String>> = Vec::new();
    for _ in 0..10 {
        scattered.push(vec!["lsd".into(), "fast".into()]);
        scattered.push(vec!["blotter".into(), "slow".into()]);
        scattered.push(vec!["tabs".into(), "okay".into()]);
    }
    println!(
        "  words never together:  C_v = {:.4}",
        topic_coherence_cv(&tops, &scattered, DEFAULT_CV_WINDOW)?
    );
    Ok(())
}
