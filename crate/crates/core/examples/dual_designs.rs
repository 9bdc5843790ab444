//! Designs held by the minimum-weight words of the dual code, with the
//! dual counts from the closed form and from the MacWilliams transform.
//!
//! cargo run --release --example dual_designs

use threeweight::codes::DualClosedForm;
use threeweight::constructions::construct_d_rho;
use threeweight::designs::{dual_design_verify, dual_half_weights, DualDesignOutcome};
use threeweight::field::FieldContext;

fn main() -> threeweight::Result<()> {
    let ctx = FieldContext::new(5, None)?;
    // [10, 5, 4] and [6, 5, 2] at m = 5
    for rho in [0, 1] {
        let code = construct_d_rho(&ctx, 1, rho)?.code;
        let (n, k, d) = (code.n(), code.k(), code.min_distance()?);
        let form = DualClosedForm::new(n, k, d);
        let transform = code.weight_distribution()?.macwilliams_dual()?;
        println!("[{n}, {k}, {d}] dual: {}", transform.enumerator_pretty());
        for r in dual_half_weights(n) {
            let rep = dual_design_verify(&code, r)?;
            let observed = match &rep.outcome {
                DualDesignOutcome::Verified { verdict, .. } => format!("{:?}", verdict.lambda),
                DualDesignOutcome::Empty => "no words".into(),
                DualDesignOutcome::PredictionOnly => "not enumerated".into(),
            };
            println!(
                "  weight {}: A = {} (transform {}), lambda {observed}, predicted {}",
                2 * r,
                form.count(r),
                transform.count(2 * r),
                rep.predicted.map_or("-".into(), |p| p.to_string())
            );
        }
    }
    Ok(())
}
