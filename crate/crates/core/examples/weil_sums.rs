//! Quadratic character sums S_u(a, b) over GF(2^m), computed directly and
//! compared with their closed forms.
//!
//! cargo run --release --example weil_sums -- 7 2

use threeweight::charsums::{coprime_exponents, weil_sum_closed, WeilSumQuery, WeilSweep};

fn main() -> threeweight::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: u32 = args.next().and_then(|s| s.parse().ok()).unwrap_or(7);
    let ctx = threeweight::field::FieldContext::new(m, None)?;
    let us: Vec<u32> = match args.next().and_then(|s| s.parse().ok()) {
        Some(u) => vec![u],
        None => coprime_exponents(m),
    };

    let g = ctx.generator();
    for &u in &us {
        let q = WeilSumQuery::new(&ctx, u, g, ctx.pow(g, 3))?;
        let r = weil_sum_closed(&q)?;
        println!("m={m} u={u}: S(g, g^3) = {} predicted {} agrees {:?}", r.value, r.prediction, r.agrees);

        let sweep = WeilSweep::new(&ctx, u)?;
        let rows = sweep.axis_rows()?;
        let bad = rows.iter().filter(|r| r.agrees == Some(false)).count();
        let open = rows.iter().filter(|r| r.agrees.is_none()).count();
        println!("  sweep: {} rows, {bad} disagree, {open} without a closed form", rows.len());
    }
    Ok(())
}
