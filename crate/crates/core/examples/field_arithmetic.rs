//! Arithmetic in GF(2^m): products, inverses, the absolute trace and the
//! trace down to a subfield.
//!
//! cargo run --example field_arithmetic -- 6

use threeweight::field::{irreducible_polynomials, FieldContext, FieldElement};

fn main() -> threeweight::Result<()> {
    let m: u32 = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(6);
    let ctx = FieldContext::new(m, None)?;
    println!("GF(2^{m}) with modulus {:#x}, generator {:#x}", ctx.modulus(), ctx.generator().bits());

    let x = ctx.generator();
    let y = ctx.pow(x, 5);
    let xy = ctx.mul(x, y);
    println!("x = {:#x}, x^5 = {:#x}, x * x^5 = {:#x}", x.bits(), y.bits(), xy.bits());
    let inv = ctx.inv(y).expect("nonzero");
    println!("(x^5)^-1 = {:#x}, check {:#x}", inv.bits(), ctx.mul(y, inv).bits());

    let ones = ctx.elements().filter(|&z| ctx.trace(z) == 1).count();
    println!("{ones} of {} elements have trace 1", ctx.order());

    for e in (1..m).filter(|e| m % e == 0) {
        let t = ctx.relative_trace(y, e)?;
        println!("trace to GF(2^{e}) of x^5 = {:#x} (in subfield: {})", t.bits(), ctx.in_subfield(t, e));
    }

    // every irreducible modulus gives the same trace-one count
    let alt: Vec<u64> = irreducible_polynomials(m).take(3).collect();
    for p in alt {
        let other = FieldContext::new(m, Some(p))?;
        let n = other.elements().filter(|&z| other.trace(z) == 1).count();
        println!("modulus {p:#x}: {n} trace-one elements, Tr(1) = {}", other.trace(FieldElement::ONE));
    }
    Ok(())
}
