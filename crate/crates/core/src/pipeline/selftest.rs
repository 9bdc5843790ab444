use num_bigint::BigUint;
use num_traits::One;
use serde::Serialize;
use serde_json::json;

use super::table::{row, Table};
use super::{mark, Exponents, Fault, Run, SelftestScope};
use crate::charsums::{SweepRow, WeilSweep, SWEEP_CSV_HEADER};
use crate::codes::{pless_check, three_weight_profile, WeightDistribution};
use crate::constructions::{construct_d_rho, extension_gate, in_regime, jacobi_two, quadric_two_weight, Family, QuadricVariant};
use crate::designs::{assmus_mattson_gate_dual, support_design_report};
use crate::error::{Error, Result};
use crate::field::{is_irreducible, FieldContext, FieldElement};

#[derive(Clone, Debug, Serialize)]
pub(super) struct CheckRow {
    pub case: String,
    pub invariant: String,
    pub passed: bool,
    pub detail: String,
}

struct Checks {
    case: String,
    rows: Vec<CheckRow>,
}

impl Checks {
    fn case(&mut self, case: String) {
        self.case = case;
    }

    fn push(&mut self, invariant: &str, passed: bool, detail: impl Into<String>) {
        self.rows.push(CheckRow {
            case: self.case.clone(),
            invariant: invariant.into(),
            passed,
            detail: detail.into(),
        });
    }
}

pub(super) fn run(run: &mut Run<'_>, scope: SelftestScope, ms: &[u32], us: &Exponents, fault: Option<Fault>) -> Result<bool> {
    let mut checks = Checks {
        case: String::new(),
        rows: Vec::new(),
    };
    let title = match scope {
        SelftestScope::Field => {
            let ms = if ms.is_empty() { (2..=10).collect() } else { ms.to_vec() };
            for m in ms {
                let ctx = run.field_in_sweep(m)?;
                field_checks(&mut checks, &ctx, fault);
            }
            "Field arithmetic self-test"
        }
        SelftestScope::Weil => {
            let ms = if ms.is_empty() { vec![3, 5, 7, 9] } else { ms.to_vec() };
            let mut csv = format!("{SWEEP_CSV_HEADER}\n");
            for m in ms {
                let ctx = run.field_in_sweep(m)?;
                for u in us.resolve(m) {
                    let rows = weil_checks(&mut checks, &ctx, u, fault)?;
                    for r in &rows {
                        csv.push_str(&r.to_csv());
                        csv.push('\n');
                    }
                }
            }
            run.write("weil_sweep.csv", &csv)?;
            "Weil sum self-test"
        }
        SelftestScope::PaperTables => {
            let ms = if ms.is_empty() { vec![5, 7] } else { ms.to_vec() };
            for m in ms {
                if m < 5 || m % 2 == 0 {
                    return Err(Error::Precondition(format!("the three-weight tables need odd m >= 5, got {m}")));
                }
                let ctx = run.field_in_sweep(m)?;
                for u in us.resolve(m) {
                    for rho in [0, 1] {
                        paper_case(&mut checks, &ctx, u, rho, fault)?;
                    }
                }
                extension_cases(&mut checks, run, m)?;
            }
            "Three-weight code and design self-test"
        }
    };

    let passed = checks.rows.iter().all(|r| r.passed);
    let failed: Vec<&CheckRow> = checks.rows.iter().filter(|r| !r.passed).collect();
    let mut table = Table::new(&["case", "invariant", "passed", "detail"]);
    for r in &checks.rows {
        table.push(row![r.case, r.invariant, mark(r.passed), r.detail]);
    }
    let json = json!({"scope": scope, "fault": fault, "checks": checks.rows, "passed": passed});
    run.write_report("selftest", title, &json, &[("checks", table)])?;
    run.summary.push(format!("{} of {} checks passed", checks.rows.len() - failed.len(), checks.rows.len()));
    for r in failed {
        run.summary.push(format!("FAILED {}: {} ({})", r.case, r.invariant, r.detail));
    }
    Ok(passed)
}

fn field_checks(checks: &mut Checks, ctx: &FieldContext, fault: Option<Fault>) {
    let m = ctx.m();
    checks.case(format!("m={m} modulus={:#x}", ctx.modulus()));
    checks.push("modulus irreducible", is_irreducible(ctx.modulus()), "");

    let bad_inverse = ctx
        .elements()
        .skip(1)
        .filter(|&x| ctx.inv(x).map(|y| ctx.mul(x, y)) != Some(FieldElement::ONE))
        .count();
    checks.push("x * x^-1 = 1", bad_inverse == 0, format!("{bad_inverse} failures"));

    let bad_frobenius = ctx
        .elements()
        .filter(|&x| ctx.frobenius(x, m) != x || ctx.pow(x, ctx.order()) != x)
        .count();
    checks.push("x^(2^m) = x", bad_frobenius == 0, format!("{bad_frobenius} failures"));

    let mut ones = ctx.elements().filter(|&x| ctx.trace(x) == 1).count();
    if fault == Some(Fault::FieldTrace) {
        ones += 1;
    }
    let half = 1usize << (m - 1);
    checks.push("trace balanced", ones == half, format!("{ones} elements of trace 1, expected {half}"));

    let bad_square = ctx
        .elements()
        .filter(|&x| ctx.trace(ctx.square(x)) != ctx.trace(x))
        .count();
    checks.push("Tr(x^2) = Tr(x)", bad_square == 0, format!("{bad_square} failures"));

    // all pairs for small fields; otherwise every x against a basis, which
    // still pins down additivity of the trace
    let partners: Vec<FieldElement> = if m <= 10 {
        ctx.elements().collect()
    } else {
        (0..m).map(|i| FieldElement::from_bits(1 << i)).collect()
    };
    let scope = if m <= 10 { "all pairs" } else { "x against a basis" };
    let mut bad_add = 0usize;
    let mut bad_ring = 0usize;
    for x in ctx.elements() {
        for &y in &partners {
            if ctx.trace(x + y) != ctx.trace(x) ^ ctx.trace(y) {
                bad_add += 1;
            }
            let sq = ctx.square(x + y) == ctx.square(x) + ctx.square(y);
            if ctx.mul(x, y) != ctx.mul(y, x) || !sq {
                bad_ring += 1;
            }
        }
    }
    checks.push("trace additive", bad_add == 0, format!("{scope}, {bad_add} failures"));
    checks.push(
        "xy = yx and (x+y)^2 = x^2 + y^2",
        bad_ring == 0,
        format!("{scope}, {bad_ring} failures"),
    );

    for e in (1..m).filter(|e| m % e == 0) {
        let bad = ctx
            .elements()
            .filter(|&x| ctx.relative_trace(x, e).map_or(true, |t| !ctx.in_subfield(t, e)))
            .count();
        checks.push(
            &format!("relative trace to GF(2^{e}) lands in the subfield"),
            bad == 0,
            format!("{bad} failures"),
        );
    }
}

fn weil_checks(checks: &mut Checks, ctx: &FieldContext, u: u32, fault: Option<Fault>) -> Result<Vec<SweepRow>> {
    let m = ctx.m();
    checks.case(format!("m={m} u={u}"));
    let sweep = WeilSweep::new(ctx, u)?;
    let mut rows = sweep.axis_rows()?;
    let (zero, one) = (FieldElement::ZERO.bits(), FieldElement::ONE.bits());
    if fault == Some(Fault::WeilSum) {
        if let Some(r) = rows.iter_mut().find(|r| r.a == one && r.b == one) {
            r.direct += 2;
            r.agrees = r.prediction.admits(r.direct);
        }
    }

    let disagree = rows.iter().filter(|r| r.agrees == Some(false)).count();
    let unclaimed = rows.iter().filter(|r| r.agrees.is_none()).count();
    checks.push(
        "direct sums agree with closed forms",
        disagree == 0,
        format!("{} sums, {disagree} disagree, {unclaimed} without a closed form", rows.len()),
    );
    if !in_regime_weil(m, u) {
        return Ok(rows);
    }

    let bad_a0 = rows.iter().filter(|r| r.b == zero && r.a != zero && r.direct != 0).count();
    checks.push("S(a,0) = 0 for a != 0", bad_a0 == 0, format!("{bad_a0} failures"));

    let magnitude = 1i64 << ((m + 1) / 2);
    let mut bad_support = 0;
    let mut bad_magnitude = 0;
    for r in rows.iter().filter(|r| r.a == one) {
        let trace = ctx.trace(FieldElement::from_bits(r.b));
        if (r.direct == 0) != (trace == 0) {
            bad_support += 1;
        }
        if trace == 1 && r.direct.abs() != magnitude {
            bad_magnitude += 1;
        }
    }
    checks.push("S(1,b) = 0 iff Tr(b) = 0", bad_support == 0, format!("{bad_support} failures"));
    checks.push(
        "|S(1,b)| = 2^((m+1)/2) when Tr(b) = 1",
        bad_magnitude == 0,
        format!("{bad_magnitude} failures"),
    );
    let s11 = rows.iter().find(|r| r.a == one && r.b == one).map(|r| r.direct);
    let expected = jacobi_two(m) * magnitude;
    checks.push(
        "S(1,1) = (-1)^((m^2-1)/8) 2^((m+1)/2)",
        s11 == Some(expected),
        format!("observed {s11:?}, expected {expected}"),
    );
    Ok(rows)
}

fn in_regime_weil(m: u32, u: u32) -> bool {
    m % 2 == 1 && num_integer::gcd(m, u) == 1
}

fn paper_case(checks: &mut Checks, ctx: &FieldContext, u: u32, rho: u8, fault: Option<Fault>) -> Result<()> {
    let m = ctx.m();
    checks.case(format!("m={m} u={u} rho={rho}"));
    if !in_regime(m, u) {
        checks.push("closed-form regime", false, "gcd(u, m) != 1");
        return Ok(());
    }
    let report = construct_d_rho(ctx, u, rho)?;
    for c in report.checks.iter().filter(|c| c.item != "enumerator") {
        checks.push(
            &format!("{} ({})", c.item, c.source),
            c.matches,
            format!("predicted {}, observed {}", c.predicted, c.observed),
        );
    }
    let code = &report.code;
    let true_dist = code.weight_distribution()?;
    let family = Family::of(m, rho);
    let p = family.parameters(m);

    let mut dist = true_dist.clone();
    if fault == Some(Fault::Enumerator) {
        let mut counts = dist.counts().to_vec();
        counts[p.d] += BigUint::one();
        dist = WeightDistribution::from_raw(dist.n(), dist.k(), counts)?;
    }
    let light = p.light_count;
    let expected = format!("1 + {light}z^{} + {light}z^{} + z^{}", p.weights[0], p.weights[1], p.n);
    checks.push(
        "enumerator",
        dist.enumerator() == expected,
        format!("observed {}, expected {expected}", dist.enumerator()),
    );
    let true_dual = true_dist.macwilliams_dual()?;
    let pless = pless_check(&dist, &true_dual);
    checks.push(
        "Pless power moments",
        pless.passed(),
        pless.violated().map_or("all three hold".into(), |m| format!("{m:?} moment violated")),
    );
    checks.push(
        "palindromic iff A_n = 1",
        dist.is_palindromic() == dist.count(code.n()).is_one(),
        format!("palindromic {}", dist.is_palindromic()),
    );
    let profile = three_weight_profile(code)?;
    checks.push(
        "three-weight profile and closed-form dual counts",
        profile.passed(),
        profile
            .report()
            .map_or("hypotheses fail".into(), |r| format!("first dual mismatch {:?}", r.first_dual_mismatch)),
    );
    let gate = assmus_mattson_gate_dual(code, 2)?;
    checks.push(
        "design criterion with the dual as code (t = 2)",
        gate.passed,
        format!("s = {}, d = {}", gate.s, gate.d),
    );
    for w in &p.weights[..2] {
        let rep = support_design_report(code, *w, 2)?;
        let pred = rep.predicted.as_ref().map(|p| p.to_string()).unwrap_or_default();
        checks.push(
            &format!("2-design at weight {w}"),
            rep.matches() == Some(true),
            format!(
                "{} blocks, lambda observed {:?}, predicted {pred}",
                rep.design.block_count(),
                rep.verdict.lambda
            ),
        );
    }
    Ok(())
}

/// Extensions of the quadric codes over `GF(2^(m-1))` and `GF(2^((m-1)/2))²`
/// land on the distributions of the two defining-set families.
fn extension_cases(checks: &mut Checks, run: &mut Run<'_>, m: u32) -> Result<()> {
    let k = (m - 1) / 2;
    let ctx = run.field_in_sweep(m)?;
    for (variant, family) in [(QuadricVariant::Elliptic, Family::Short), (QuadricVariant::Hyperbolic, Family::Long)] {
        checks.case(format!("m={m} {} k={k}", variant.name()));
        let quadric = quadric_two_weight(k, variant, None)?;
        checks.push(
            "quadric code certified two-weight",
            quadric.certified(),
            format!("weights {:?}", quadric.weights),
        );
        let gate = extension_gate(&quadric.code)?;
        checks.push("extension gate", gate.passed(), "");
        let Some(ext) = gate.extended else { continue };
        let target = construct_d_rho(&ctx, 1, family.rho(m))?;
        let same = ext.weight_distribution()? == target.code.weight_distribution()?;
        checks.push(
            "extension distribution equals the defining-set code's",
            same,
            ext.weight_distribution()?.enumerator(),
        );
    }
    Ok(())
}
