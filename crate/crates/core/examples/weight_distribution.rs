//! Weight distribution of a small code, its MacWilliams dual and the Pless
//! power moments linking the two.
//!
//! cargo run --example weight_distribution

use threeweight::codes::{dual_summary, pless_check, BinaryVector, LinearCode};

fn main() -> threeweight::Result<()> {
    // the [7, 4, 3] Hamming code
    let rows = ["1000110", "0100101", "0010011", "0001111"]
        .iter()
        .map(|r| BinaryVector::from_bits(r.chars().map(|c| c == '1')))
        .collect();
    let code = LinearCode::new(7, rows)?;
    let dist = code.weight_distribution()?;
    println!("[{}, {}, {}]  {}", code.n(), code.k(), code.min_distance()?, dist.enumerator_pretty());

    let dual = dual_summary(&code)?;
    println!("dual: {}", dual.distribution.enumerator_pretty());
    println!("dual matches direct enumeration: {:?}", dual.direct_agrees);
    println!("code projective: {}", dual.projective);

    let pless = pless_check(dist, &dual.distribution);
    println!("Pless moments hold: {}", pless.passed());
    print!("{}", dist.to_csv());
    Ok(())
}
