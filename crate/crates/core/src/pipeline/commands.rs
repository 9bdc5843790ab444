use std::path::Path;

use num_traits::Zero;
use serde::Serialize;
use serde_json::{json, Value};

use super::table::{row, Table};
use super::{mark, Run};
use crate::codes::{dual_summary, pless_check, three_weight_profile, LinearCode, ThreeWeightProfile, WeightDistribution};
use crate::constructions::{self, extend_code, extension_gate, QuadricVariant};
use crate::designs::{dual_design_verify, dual_half_weights, support_design_report, DesignVerdict, DualDesignOutcome, Side};
use crate::error::{Error, Result};
use crate::field::FieldSpec;
use crate::io;

pub(super) fn distribution_json(dist: &WeightDistribution) -> Value {
    dist.counts()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(w, c)| json!({"weight": w, "count": c.to_string()}))
        .collect()
}

fn distribution_table(dist: &WeightDistribution) -> Table {
    let mut t = Table::new(&["weight", "count"]);
    for (w, c) in dist.counts().iter().enumerate().filter(|(_, c)| !c.is_zero()) {
        t.push(row![w, c]);
    }
    t
}

fn key_values(pairs: &[(&str, String)]) -> Table {
    let mut t = Table::new(&["property", "value"]);
    for (k, v) in pairs {
        t.push(row![k, v]);
    }
    t
}

fn params(code: &LinearCode) -> Result<String> {
    Ok(format!("[{}, {}, {}]", code.n(), code.k(), code.min_distance()?))
}

fn note_source_field(run: &mut Run<'_>, provenance: &Value) {
    let spec = provenance
        .get("field")
        .or_else(|| provenance.get("source").and_then(|s| s.get("field")));
    if let Some(spec) = spec.and_then(|f| serde_json::from_value::<FieldSpec>(f.clone()).ok()) {
        if let Ok(modulus) = crate::field::parse_hex(&spec.modulus) {
            run.note_field(spec.m, modulus);
        }
    }
}

pub(super) fn construct_d_rho(run: &mut Run<'_>, m: u32, u: u32, rho: u8) -> Result<bool> {
    let ctx = run.field(m)?;
    let report = constructions::construct_d_rho(&ctx, u, rho)?;
    let code = &report.code;
    let dist = code.weight_distribution()?;
    let provenance = json!({
        "construction": "d-rho",
        "m": m,
        "u": u,
        "rho": rho,
        "field": ctx.spec(),
        "family": report.family,
    });
    run.write("code.json", &io::code_to_json(code, provenance)?)?;

    let regime = match report.family {
        Some(f) => format!("closed-form regime, {} family", serde_json::to_value(f)?.as_str().unwrap_or("")),
        None => "out of closed-form regime; observed values only".to_string(),
    };
    let status = key_values(&[
        ("parameters", params(code)?),
        ("regime", regime.clone()),
        ("enumerator", dist.enumerator_pretty()),
        ("all predictions match", mark(report.all_match()).to_string()),
    ]);
    let mut checks = Table::new(&["item", "source", "predicted", "observed", "match"]);
    for c in &report.checks {
        checks.push(row![c.item, c.source, c.predicted, c.observed, mark(c.matches)]);
    }
    let json = json!({
        "n": code.n(),
        "k": code.k(),
        "d": code.min_distance()?,
        "in_closed_form_regime": report.in_regime(),
        "family": report.family,
        "enumerator": dist.enumerator(),
        "distribution": distribution_json(dist),
        "checks": report.checks,
        "all_match": report.all_match(),
    });
    run.write_report(
        "report",
        &format!("Defining-set code, m = {m}, u = {u}, rho = {rho}"),
        &json,
        &[("status", status), ("checks", checks), ("distribution", distribution_table(dist))],
    )?;
    run.summary.push(format!("{} code: {}", params(code)?, dist.enumerator()));
    run.summary.push(regime);
    if report.in_regime() {
        run.summary.push(format!(
            "{} of {} closed-form predictions match",
            report.checks.iter().filter(|c| c.matches).count(),
            report.checks.len()
        ));
    }
    Ok(report.all_match())
}

pub(super) fn construct_quadric(run: &mut Run<'_>, k: u32, variant: QuadricVariant) -> Result<bool> {
    let report = constructions::quadric_two_weight(k, variant, run.cfg.modulus)?;
    let field_m = match variant {
        QuadricVariant::Elliptic => 2 * k,
        QuadricVariant::Hyperbolic => k,
    };
    run.note_field(field_m, report.modulus);
    let code = &report.code;
    let certified = report.certified();
    let provenance = json!({
        "construction": "quadric",
        "variant": variant,
        "k": k,
        "field": {"m": field_m, "modulus": format!("{:#x}", report.modulus)},
        "certified": certified,
    });
    run.write("code.json", &io::code_to_json(code, provenance)?)?;

    let [en, ek, ew1, ew2] = variant.expected_parameters(k);
    let dist = code.weight_distribution()?;
    let status = key_values(&[
        ("parameters", params(code)?),
        ("weights", format!("{:?}", report.weights)),
        ("expected", format!("[{en}, {ek}] with weights [{ew1}, {ew2}]")),
        ("enumerator", dist.enumerator_pretty()),
        ("certified for extension", mark(certified).to_string()),
    ]);
    let mut checks = Table::new(&["check", "passed", "detail"]);
    for c in &report.checks {
        checks.push(row![c.name, mark(c.passed), c.detail]);
    }
    let json = json!({
        "variant": variant,
        "k": k,
        "n": code.n(),
        "dimension": code.k(),
        "weights": report.weights,
        "expected": {"n": en, "k": ek, "weights": [ew1, ew2]},
        "distribution": distribution_json(dist),
        "checks": report.checks,
        "certified": certified,
    });
    run.write_report(
        "report",
        &format!("{} quadric code, k = {k}", variant.name()),
        &json,
        &[("status", status), ("checks", checks)],
    )?;
    run.summary.push(format!("{} code with weights {:?}", params(code)?, report.weights));
    run.summary.push(if certified {
        "certified two-weight, projective, w1 + w2 = n + 1".to_string()
    } else {
        "not certified; kept for inspection".to_string()
    });
    Ok(certified)
}

pub(super) fn extend(run: &mut Run<'_>, input: &Path) -> Result<bool> {
    let (code, source) = io::read_code(input)?;
    note_source_field(run, &source);
    let verdict = extension_gate(&code)?;
    let ext = match &verdict.extended {
        Some(e) => e.clone(),
        None => extend_code(&code)?,
    };
    let provenance = json!({
        "construction": "extension",
        "gate_passed": verdict.passed(),
        "source": source,
    });
    run.write("code.json", &io::code_to_json(&ext, provenance)?)?;

    let enumerator = ext.weight_distribution().map(|d| d.enumerator_pretty()).unwrap_or_else(|e| e.to_string());
    let status = key_values(&[
        ("input", format!("[{}, {}]", code.n(), code.k())),
        ("extension", format!("[{}, {}]", ext.n(), ext.k())),
        ("extension enumerator", enumerator),
        ("gate passed", mark(verdict.passed()).to_string()),
    ]);
    let mut checks = Table::new(&["check", "passed", "detail"]);
    for c in verdict.checks() {
        checks.push(row![c.name, mark(c.passed), c.detail]);
    }
    let json = json!({
        "input": {"n": code.n(), "k": code.k()},
        "extension": {"n": ext.n(), "k": ext.k()},
        "extension_distribution": ext.weight_distribution().ok().map(distribution_json),
        "input_checks": verdict.input_checks,
        "output_checks": verdict.output_checks,
        "gate_passed": verdict.passed(),
    });
    run.write_report("report", "Extension by the all-ones word", &json, &[("status", status), ("checks", checks)])?;
    run.summary.push(format!("[{}, {}] -> [{}, {}]", code.n(), code.k(), ext.n(), ext.k()));
    run.summary.push(format!("gate {}", if verdict.passed() { "passed" } else { "failed" }));
    for c in verdict.checks().filter(|c| !c.passed) {
        run.summary.push(format!("failed: {} ({})", c.name, c.detail));
    }
    Ok(verdict.passed())
}

pub(super) fn analyze(run: &mut Run<'_>, input: &Path) -> Result<bool> {
    let (code, provenance) = io::read_code(input)?;
    note_source_field(run, &provenance);
    let dist = code.weight_distribution()?;
    let summary = dual_summary(&code)?;
    let dual = &summary.distribution;
    let pless = pless_check(dist, dual);
    let profile = three_weight_profile(&code)?;
    let profile_ok = match &profile {
        ThreeWeightProfile::Checked(r) => r.passed(),
        ThreeWeightProfile::HypothesesFail(_) => true,
    };
    let passed = pless.passed() && summary.direct_agrees != Some(false) && profile_ok;

    let profile_text = match &profile {
        ThreeWeightProfile::HypothesesFail(h) => format!("not applicable: {h:?}"),
        ThreeWeightProfile::Checked(r) => format!(
            "weights {:?}, weight identity {}, enumerator {}, dual closed form {}",
            r.weights,
            mark(r.weight_formula_holds),
            mark(r.enumerator_matches),
            match r.first_dual_mismatch {
                None => "✓".to_string(),
                Some(w) => format!("✗ at weight {w}"),
            }
        ),
    };
    let direct = match summary.direct_agrees {
        Some(ok) => mark(ok).to_string(),
        None => "dual too large to enumerate".to_string(),
    };
    let dual_d = summary.min_distance.map_or("∞".to_string(), |d| d.to_string());
    let status = key_values(&[
        ("parameters", params(&code)?),
        ("enumerator", dist.enumerator_pretty()),
        ("dual enumerator", dual.enumerator_pretty()),
        ("dual minimum distance", dual_d),
        ("projective", mark(summary.projective).to_string()),
        ("transform equals dual enumeration", direct),
        ("palindromic", mark(dist.is_palindromic()).to_string()),
        (
            "Pless moments",
            match pless.violated() {
                None => "✓".to_string(),
                Some(m) => format!("✗ ({m:?} moment)"),
            },
        ),
        ("three-weight profile", profile_text),
    ]);

    let closed = profile.report().map(|r| &r.dual_closed_form);
    let mut joint = Table::new(&["weight", "A_w", "dual A_w", "dual closed form"]);
    for w in 0..=code.n() {
        let (a, b) = (dist.count(w), dual.count(w));
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let cf = match closed {
            Some(c) if w % 2 == 0 => c[w / 2].to_string(),
            Some(_) => "0".to_string(),
            None => "-".to_string(),
        };
        joint.push(row![w, a, b, cf]);
    }

    match run.cfg.format {
        super::Format::Csv => {
            run.write("distribution.csv", &dist.to_csv())?;
            run.write("dual_distribution.csv", &dual.to_csv())?;
            run.write("analysis_summary.csv", &status.to_csv()?)?;
        }
        _ => {
            let json = json!({
                "n": code.n(),
                "k": code.k(),
                "d": code.min_distance()?,
                "enumerator": dist.enumerator(),
                "distribution": distribution_json(dist),
                "dual_distribution": distribution_json(dual),
                "dual_min_distance": summary.min_distance,
                "projective": summary.projective,
                "transform_equals_dual_enumeration": summary.direct_agrees,
                "palindromic": dist.is_palindromic(),
                "pless": {"first": pless.first, "second": pless.second, "third": pless.third},
                "three_weight_profile": profile.report().map(|r| json!({
                    "weights": r.weights,
                    "predicted_min_weight": r.predicted_min_weight,
                    "weight_formula_holds": r.weight_formula_holds,
                    "enumerator_matches": r.enumerator_matches,
                    "dual_closed_form": r.dual_closed_form.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "first_dual_mismatch": r.first_dual_mismatch,
                })),
                "passed": passed,
            });
            run.write_report(
                "analysis",
                &format!("Analysis of [{}, {}] code", code.n(), code.k()),
                &json,
                &[("summary", status), ("weight_distributions", joint)],
            )?;
        }
    }
    run.summary.push(format!("{} code: {}", params(&code)?, dist.enumerator()));
    run.summary.push(format!(
        "projective {}, Pless {}, three-weight profile {}",
        mark(summary.projective),
        mark(pless.passed()),
        if profile.report().is_some() { mark(profile_ok) } else { "n/a" }
    ));
    Ok(passed)
}

#[derive(Clone, Debug, Serialize)]
struct DesignRow {
    side: Side,
    weight: usize,
    blocks: Option<usize>,
    lambda_observed: Option<u64>,
    lambda_predicted: Option<String>,
    #[serde(rename = "match")]
    matches: Option<bool>,
    status: String,
    #[serde(skip)]
    ok: bool,
}

fn verdict_status(v: &DesignVerdict) -> String {
    if v.is_design {
        "design".into()
    } else if v.degenerate {
        "degenerate".into()
    } else if v.non_integral {
        "not a design (block count rules out integral lambda)".into()
    } else if let Some(w) = &v.witness {
        format!("not a design (witness {:?} in {} blocks)", w.subset, w.count)
    } else {
        "not a design".into()
    }
}

fn design_files(run: &mut Run<'_>, side: &str, w: usize, design: &crate::designs::Design, verdict: &DesignVerdict) -> Result<()> {
    run.write(&format!("design_{side}_w{w}.json"), &io::design_to_json(design)?)?;
    run.write(&format!("verdict_{side}_w{w}.json"), &io::verdict_to_json(verdict)?)
}

pub(super) fn designs(run: &mut Run<'_>, input: &Path, t: usize, filter: Option<&[usize]>, dual: bool) -> Result<bool> {
    let (code, provenance) = io::read_code(input)?;
    note_source_field(run, &provenance);
    let n = code.n();
    let d = code.min_distance()?;
    if t == 0 || t >= d {
        return Err(Error::Precondition(format!("need 0 < t < d = {d}, got t = {t}")));
    }
    if dual && t != 2 {
        return Err(Error::Precondition("dual support designs are verified at t = 2".into()));
    }
    let wanted = |w: usize| filter.is_none_or(|f| f.contains(&w));
    let weights: Vec<usize> = code
        .weight_distribution()?
        .nonzero_weights()
        .into_iter()
        .filter(|&w| w < n && wanted(w))
        .collect();

    let mut rows = Vec::new();
    for w in weights {
        let rep = support_design_report(&code, w, t)?;
        design_files(run, "code", w, &rep.design, &rep.verdict)?;
        let v = &rep.verdict;
        rows.push(DesignRow {
            side: Side::Code,
            weight: w,
            blocks: Some(rep.design.block_count()),
            lambda_observed: v.lambda,
            lambda_predicted: rep.predicted.as_ref().map(|p| p.to_string()),
            matches: rep.matches(),
            status: verdict_status(v),
            ok: v.degenerate || (v.is_design && rep.matches() != Some(false)),
        });
    }
    if dual {
        for r in dual_half_weights(n).filter(|&r| wanted(2 * r)) {
            let rep = dual_design_verify(&code, r)?;
            let predicted = rep.predicted.as_ref().map(|p| p.to_string());
            let row = match &rep.outcome {
                DualDesignOutcome::Verified { design, verdict } => {
                    design_files(run, "dual", 2 * r, design, verdict)?;
                    DesignRow {
                        side: Side::Dual,
                        weight: 2 * r,
                        blocks: Some(design.block_count()),
                        lambda_observed: verdict.lambda,
                        lambda_predicted: predicted,
                        matches: rep.matches(),
                        status: verdict_status(verdict),
                        ok: verdict.degenerate || (verdict.is_design && rep.matches() != Some(false)),
                    }
                }
                DualDesignOutcome::Empty => DesignRow {
                    side: Side::Dual,
                    weight: 2 * r,
                    blocks: Some(0),
                    lambda_observed: None,
                    lambda_predicted: predicted,
                    matches: rep.matches(),
                    status: "empty".into(),
                    ok: rep.matches() != Some(false),
                },
                DualDesignOutcome::PredictionOnly => DesignRow {
                    side: Side::Dual,
                    weight: 2 * r,
                    blocks: None,
                    lambda_observed: None,
                    lambda_predicted: predicted,
                    matches: None,
                    status: "prediction only; dual too large to enumerate".into(),
                    ok: true,
                },
            };
            rows.push(row);
        }
    }

    let passed = rows.iter().all(|r| r.ok);
    let opt = |x: Option<String>| x.unwrap_or_else(|| "-".into());
    let mut table = Table::new(&["side", "weight", "blocks", "lambda_observed", "lambda_predicted", "match"]);
    for r in &rows {
        let side = match r.side {
            Side::Code => "code",
            Side::Dual => "dual",
        };
        table.push(row![
            side,
            r.weight,
            opt(r.blocks.map(|b| b.to_string())),
            r.lambda_observed.map_or_else(|| r.status.clone(), |l| l.to_string()),
            opt(r.lambda_predicted.clone()),
            opt(r.matches.map(|m| mark(m).to_string()))
        ]);
        run.summary.push(format!(
            "{side} weight {}: {}{}",
            r.weight,
            match r.lambda_observed {
                Some(l) => format!("2-({n},{},{l})", r.weight),
                None => r.status.clone(),
            },
            r.lambda_predicted.as_ref().map_or(String::new(), |p| format!(", predicted lambda {p}")),
        ));
    }
    if rows.is_empty() {
        run.summary.push("no weights selected".into());
    }
    let json = json!({"n": n, "k": code.k(), "d": d, "t": t, "rows": rows, "passed": passed});
    run.write_report(
        "designs",
        &format!("Support designs of the [{n}, {}, {d}] code, t = {t}", code.k()),
        &json,
        &[("summary", table)],
    )?;
    Ok(passed)
}
