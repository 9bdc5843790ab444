use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::Command as Process;

use serde_json::Value;
use tempfile::TempDir;
use threeweight::constructions::QuadricVariant;
use threeweight::pipeline::{run_in, Command, Exponents, Fault, Format, SelftestScope};

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap()
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (e.file_name().to_string_lossy().into_owned(), fs::read(e.path()).unwrap())
        })
        .collect()
}

fn construct(dir: &Path, m: u32, rho: u8) {
    let out = run_in(dir, Format::Json, None, Command::ConstructDRho { m, u: 1, rho }).unwrap();
    assert!(out.passed);
}

fn bin() -> Process {
    Process::new(env!("CARGO_BIN_EXE_threeweight"))
}

#[test]
fn construct_writes_code_report_and_manifest() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), 7, 0);
    let code = read_json(&dir.path().join("code.json"));
    assert_eq!((code["n"].as_u64(), code["k"].as_u64()), (Some(28), Some(7)));
    assert_eq!(code["rows"].as_array().unwrap().len(), 7);
    assert_eq!(code["provenance"]["family"], "short");

    let manifest = read_json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["passed"], true);
    assert_eq!(manifest["parameters"]["command"], "construct-d-rho");
    assert_eq!(manifest["outputs"], serde_json::json!(["code.json", "report.json"]));
    assert_eq!(manifest["fields"][0]["m"], 7);
}

#[test]
fn analyze_reports_the_six_five_code() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), 5, 1);
    let out = TempDir::new().unwrap();
    let res = run_in(out.path(), Format::Md, None, Command::Analyze { input: dir.path().join("code.json") }).unwrap();
    assert!(res.passed);
    let md = fs::read_to_string(out.path().join("analysis.md")).unwrap();
    assert!(md.contains("1 + 15z² + 15z⁴ + z⁶"), "{md}");
}

#[test]
fn analyze_csv_lists_exact_dual_counts() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), 7, 1);
    let out = TempDir::new().unwrap();
    let res = run_in(out.path(), Format::Csv, None, Command::Analyze { input: dir.path().join("code.json") }).unwrap();
    assert!(res.passed);
    let dual = fs::read_to_string(out.path().join("dual_distribution.csv")).unwrap();
    assert!(dual.starts_with("weight,count\n0,1\n"));
    assert!(dual.lines().skip(1).all(|l| l.split(',').next().unwrap().parse::<usize>().unwrap() % 2 == 0));
}

#[test]
fn designs_summary_rows() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), 7, 1);
    let out = TempDir::new().unwrap();
    let cmd = Command::Designs {
        input: dir.path().join("code.json"),
        t: 2,
        weights: None,
        dual: false,
    };
    assert!(run_in(out.path(), Format::Csv, None, cmd).unwrap().passed);
    let csv = fs::read_to_string(out.path().join("designs.csv")).unwrap();
    let rows: Vec<&str> = csv.lines().collect();
    assert_eq!(rows[0], "side,weight,blocks,lambda_observed,lambda_predicted,match");
    assert_eq!(&rows[1..], ["code,16,63,12,12,✓", "code,20,63,19,19,✓"]);
    let design = read_json(&out.path().join("design_code_w16.json"));
    assert_eq!(design["blocks"].as_array().unwrap().len(), 63);
}

#[test]
fn absent_weight_gives_an_empty_summary() {
    let dir = TempDir::new().unwrap();
    construct(dir.path(), 7, 0);
    let out = TempDir::new().unwrap();
    let cmd = Command::Designs {
        input: dir.path().join("code.json"),
        t: 2,
        weights: Some(vec![13]),
        dual: false,
    };
    let res = run_in(out.path(), Format::Json, None, cmd).unwrap();
    assert!(res.passed);
    assert_eq!(read_json(&out.path().join("designs.json"))["rows"], serde_json::json!([]));
}

#[test]
fn quadric_extension_round_trip() {
    let dir = TempDir::new().unwrap();
    let cmd = Command::ConstructQuadric {
        k: 3,
        variant: QuadricVariant::Hyperbolic,
    };
    assert!(run_in(dir.path(), Format::Json, None, cmd).unwrap().passed);
    let out = TempDir::new().unwrap();
    let res = run_in(out.path(), Format::Json, None, Command::Extend { input: dir.path().join("code.json") }).unwrap();
    assert!(res.passed);
    let ext = read_json(&out.path().join("code.json"));
    assert_eq!((ext["n"].as_u64(), ext["k"].as_u64()), (Some(36), Some(7)));
}

#[test]
fn reruns_are_byte_identical() {
    let commands = [
        Command::ConstructDRho { m: 7, u: 2, rho: 1 },
        Command::Report {
            ms: vec![5, 7],
            us: Exponents::List(vec![1]),
        },
        Command::Selftest {
            scope: SelftestScope::Weil,
            ms: vec![5],
            us: Exponents::AllCoprime,
            fault: None,
        },
    ];
    for format in [Format::Json, Format::Csv, Format::Md] {
        for cmd in &commands {
            let (a, b) = (TempDir::new().unwrap(), TempDir::new().unwrap());
            run_in(a.path(), format, None, cmd.clone()).unwrap();
            run_in(b.path(), format, None, cmd.clone()).unwrap();
            assert_eq!(snapshot(a.path()), snapshot(b.path()), "{cmd:?} {format:?}");
        }
    }
}

#[test]
fn injected_faults_name_the_broken_invariant() {
    for (scope, fault, ms, invariant) in [
        (SelftestScope::Field, Fault::FieldTrace, vec![4], "trace balanced"),
        (SelftestScope::Weil, Fault::WeilSum, vec![5], "S(1,1) = (-1)^((m^2-1)/8) 2^((m+1)/2)"),
        (SelftestScope::PaperTables, Fault::Enumerator, vec![5], "enumerator"),
    ] {
        let dir = TempDir::new().unwrap();
        let cmd = Command::Selftest {
            scope,
            ms,
            us: Exponents::AllCoprime,
            fault: Some(fault),
        };
        let res = run_in(dir.path(), Format::Csv, None, cmd).unwrap();
        assert!(!res.passed, "{fault:?}");
        let mut reader = csv::Reader::from_path(dir.path().join("selftest.csv")).unwrap();
        let failing: Vec<String> = reader
            .records()
            .map(|r| r.unwrap())
            .filter(|r| &r[2] == "✗")
            .map(|r| r[1].to_string())
            .collect();
        assert!(failing.iter().any(|f| f == invariant), "{fault:?}: {failing:?}");
    }
}

#[test]
fn malformed_code_files_are_rejected() {
    let dir = TempDir::new().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"n": 6, "k": 2, "rows": ["3f", "3f"]}"#).unwrap();
    let err = run_in(dir.path(), Format::Json, None, Command::Analyze { input: bad.clone() }).unwrap_err();
    assert!(err.to_string().contains("depend"), "{err}");

    fs::write(&bad, r#"{"n": "six", "k": 2, "rows": []}"#).unwrap();
    let err = run_in(dir.path(), Format::Json, None, Command::Analyze { input: bad.clone() }).unwrap_err();
    assert!(err.to_string().starts_with("cannot parse n:"), "{err}");

    fs::write(&bad, "{\n  \"n\": 6,\n  \"k\": 2\n  \"rows\": []\n}").unwrap();
    let err = run_in(dir.path(), Format::Json, None, Command::Analyze { input: bad }).unwrap_err();
    assert!(err.to_string().contains("line 4"), "{err}");
}

#[test]
fn cli_exit_codes() {
    let dir = TempDir::new().unwrap();
    let ok = bin()
        .args(["--out", dir.path().to_str().unwrap(), "construct", "d-rho", "--m", "5", "--u", "1", "--rho", "0"])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("[10, 5, 4]"));

    let failed = bin()
        .args(["--out", dir.path().to_str().unwrap(), "selftest", "weil", "--m", "5", "--inject-fault", "weil-sum"])
        .output()
        .unwrap();
    assert_eq!(failed.status.code(), Some(1));

    let wrong_modulus = bin()
        .args(["--out", dir.path().to_str().unwrap(), "--modulus", "0x11b", "construct", "d-rho", "--m", "7", "--u", "1", "--rho", "0"])
        .output()
        .unwrap();
    assert_eq!(wrong_modulus.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&wrong_modulus.stderr).starts_with("error:"));
}

#[test]
fn modulus_override_is_recorded() {
    let dir = TempDir::new().unwrap();
    let res = run_in(dir.path(), Format::Json, Some(0x89), Command::ConstructDRho { m: 7, u: 1, rho: 0 }).unwrap();
    assert!(res.passed);
    let manifest = read_json(&dir.path().join("manifest.json"));
    assert_eq!(manifest["modulus_override"], "0x89");
    assert_eq!(manifest["fields"][0]["modulus"], "0x89");
}
