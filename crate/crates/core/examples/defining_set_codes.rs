//! Three-weight codes from the defining set
//! {x : Tr(x) = 1, Tr(x^(2^u+1)) = rho}, checked against their closed forms.
//!
//! cargo run --release --example defining_set_codes -- 7 1

use threeweight::constructions::{construct_d_rho, Family};
use threeweight::field::FieldContext;

fn main() -> threeweight::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let u: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(1);
    let ctx = FieldContext::new(m, None)?;

    for rho in [0, 1] {
        let report = construct_d_rho(&ctx, u, rho)?;
        let code = &report.code;
        let family = report.family.map_or("-", |f| match f {
            Family::Short => "short",
            Family::Long => "long",
        });
        println!(
            "rho={rho} ({family}): [{}, {}, {}]  {}",
            code.n(),
            code.k(),
            code.min_distance()?,
            code.weight_distribution()?.enumerator_pretty()
        );
        for c in &report.checks {
            let mark = if c.matches { "ok " } else { "BAD" };
            println!("  {mark} {:<24} predicted {:<30} observed {}", c.item, c.predicted, c.observed);
        }
    }
    Ok(())
}
