//! Collapsed conjugate predictives for content and vendor marks.
//!
//! ```bash
//! cargo run -p demix --example collapsed_predictives
//! ```

use std::collections::BTreeMap;

use demix::marks::{
    content_log_predictive, vendor_log_predictive, ClusterMarkStats, ContentPrior, VendorPrior,
};

fn bag(pairs: &[(usize, u32)]) -> BTreeMap<usize, u32> {
    pairs.iter().copied().collect()
}

fn main() -> demix::Result<()> {
    let content_prior = ContentPrior::new(1.0, 2)?;
    let vendor_prior = VendorPrior::new(1.0, 3)?;

    println!("=== Content predictive (Dirichlet-multinomial, collapsed) ===");
    let mut stats = ClusterMarkStats::new(3);
    stats.add_event(&bag(&[(0, 2)]), 0)?;
    let lp = content_log_predictive(&stats, &bag(&[(0, 1)]), &content_prior)?;
    println!(
        "  source counts {{a: 2}}, probe {{a: 1}}: P = {:.4} (urn: (2+1)/(2+2) = 0.75)",
        lp.exp()
    );

    let empty = ClusterMarkStats::new(3);
    let lp = content_log_predictive(&empty, &bag(&[(0, 1), (1, 1)]), &content_prior)?;
    println!(
        "  empty source, probe {{a: 1, b: 1}}: P = {:.4} (urn: 2 * 1/2 * 1/3 = 1/3)",
        lp.exp()
    );

    println!("\n=== Vendor predictive (Dirichlet-categorical, collapsed) ===");
    let mut stats = ClusterMarkStats::new(3);
    for _ in 0..2 {
        stats.add_event(&bag(&[]), 0)?;
    }
    for v in 0..3 {
        let lp = vendor_log_predictive(&stats, v, &vendor_prior)?;
        println!("  counts [2, 0, 0]: P(vendor {v}) = {:.4}", lp.exp());
    }
    let total: f64 = (0..3)
        .map(|v| {
            vendor_log_predictive(&stats, v, &vendor_prior)
                .unwrap()
                .exp()
        })
        .sum();
    println!("  sum over the catalog = {total:.12}");

    println!("\n=== Sufficient statistics are exactly reversible ===");
    let mut stats = ClusterMarkStats::new(3);
    stats.add_event(&bag(&[(0, 1), (1, 2)]), 2)?;
    let before = stats.clone();
    stats.add_event(&bag(&[(1, 1)]), 1)?;
    stats.remove_event(&bag(&[(1, 1)]), 1)?;
    println!("  add then remove restores the source: {}", stats == before);
    println!(
        "  removing from an empty source errors: {}",
        ClusterMarkStats::new(3)
            .remove_event(&bag(&[(0, 1)]), 0)
            .is_err()
    );
    Ok(())
}
