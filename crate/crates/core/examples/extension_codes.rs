//! Two-weight codes from quadrics, extended by a zero coordinate and the
//! all-ones word into projective three-weight codes.
//!
//! cargo run --release --example extension_codes -- 3

use threeweight::constructions::{extension_gate, quadric_two_weight, QuadricVariant};

fn main() -> threeweight::Result<()> {
    let k: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    for variant in [QuadricVariant::Elliptic, QuadricVariant::Hyperbolic] {
        let report = quadric_two_weight(k, variant, None)?;
        let code = &report.code;
        println!(
            "{} k={k}: [{}, {}] weights {:?} certified {}",
            variant.name(),
            code.n(),
            code.k(),
            report.weights,
            report.certified()
        );
        let verdict = extension_gate(code)?;
        for c in verdict.checks() {
            println!("  {} {}: {}", if c.passed { "ok " } else { "BAD" }, c.name, c.detail);
        }
        if let Some(ext) = &verdict.extended {
            println!("  extended: [{}, {}]  {}", ext.n(), ext.k(), ext.weight_distribution()?.enumerator_pretty());
        }
    }
    Ok(())
}
