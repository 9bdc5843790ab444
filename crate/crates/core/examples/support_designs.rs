//! Supports of the codewords of each weight form 2-designs; the observed
//! index is compared with the predicted one.
//!
//! cargo run --release --example support_designs -- 7

use threeweight::constructions::{construct_d_rho, Family};
use threeweight::designs::{assmus_mattson_gate_dual, support_design_report};
use threeweight::field::FieldContext;

fn main() -> threeweight::Result<()> {
    let m: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(7);
    let ctx = FieldContext::new(m, None)?;
    for family in [Family::Short, Family::Long] {
        let code = construct_d_rho(&ctx, 1, family.rho(m))?.code;
        let gate = assmus_mattson_gate_dual(&code, 2)?;
        println!("[{}, {}] gate: d={} s={} passed={}", code.n(), code.k(), gate.d, gate.s, gate.passed);
        for w in code.weight_distribution()?.nonzero_weights() {
            if w == code.n() {
                continue;
            }
            let rep = support_design_report(&code, w, 2)?;
            println!(
                "  w={w}: {} blocks, lambda {:?}, predicted {}",
                rep.design.block_count(),
                rep.verdict.lambda,
                rep.predicted.map_or("-".into(), |p| p.to_string())
            );
        }
    }
    Ok(())
}
