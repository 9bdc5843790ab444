//! File formats.
//!
//! Code file: `{"n": int, "k": int, "rows": [hex], "provenance": {...}}`, with
//! rows as produced by [`BinaryVector::to_hex`]. Design file:
//! `{"v", "r", "t", "lambda", "blocks"}` with 1-based blocks. Verdicts are
//! the JSON form of [`DesignVerdict`]. Distributions use `weight,count` CSV.

use std::fs;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::codes::{BinaryVector, LinearCode};
use crate::designs::{Design, DesignVerdict};
use crate::error::{Error, Result};

/// Pretty JSON with a trailing newline.
pub fn to_json_string<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

pub fn code_to_value(code: &LinearCode, provenance: Value) -> Value {
    json!({
        "n": code.n(),
        "k": code.k(),
        "rows": code.rows().iter().map(BinaryVector::to_hex).collect::<Vec<_>>(),
        "provenance": provenance,
    })
}

pub fn code_to_json(code: &LinearCode, provenance: Value) -> Result<String> {
    to_json_string(&code_to_value(code, provenance))
}

fn parse_root(text: &str, what: &str) -> Result<Map<String, Value>> {
    let value: Value = serde_json::from_str(text).map_err(|e| Error::parse(what, e.to_string()))?;
    match value {
        Value::Object(map) => Ok(map),
        _ => Err(Error::parse(what, "expected a JSON object")),
    }
}

fn get_usize(map: &Map<String, Value>, field: &str) -> Result<usize> {
    let v = map.get(field).ok_or_else(|| Error::parse(field, "missing"))?;
    v.as_u64()
        .and_then(|x| usize::try_from(x).ok())
        .ok_or_else(|| Error::parse(field, format!("expected a nonnegative integer, found {v}")))
}

fn get_array<'a>(map: &'a Map<String, Value>, field: &str) -> Result<&'a Vec<Value>> {
    map.get(field)
        .ok_or_else(|| Error::parse(field, "missing"))?
        .as_array()
        .ok_or_else(|| Error::parse(field, "expected an array"))
}

/// Parses a code file; dependent or malformed rows are rejected.
pub fn parse_code(text: &str) -> Result<(LinearCode, Value)> {
    let map = parse_root(text, "code file")?;
    let n = get_usize(&map, "n")?;
    let k = get_usize(&map, "k")?;
    let rows = get_array(&map, "rows")?
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let field = format!("rows[{i}]");
            let s = v.as_str().ok_or_else(|| Error::parse(&field, "expected a hex string"))?;
            BinaryVector::from_hex(s, n).map_err(|e| match e {
                Error::Parse { reason, .. } => Error::parse(field, reason),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    if rows.len() != k {
        return Err(Error::parse("k", format!("declared {k} but {} rows given", rows.len())));
    }
    let code = LinearCode::new(n, rows)?;
    let provenance = map.get("provenance").cloned().unwrap_or(Value::Null);
    Ok((code, provenance))
}

pub fn read_code(path: &Path) -> Result<(LinearCode, Value)> {
    parse_code(&fs::read_to_string(path)?)
}

pub fn design_to_json(design: &Design) -> Result<String> {
    to_json_string(design)
}

/// Parses a design file and validates its blocks.
pub fn parse_design(text: &str) -> Result<Design> {
    let map = parse_root(text, "design file")?;
    let v = get_usize(&map, "v")?;
    let r = get_usize(&map, "r")?;
    let optional = |field: &str| -> Result<Option<u64>> {
        match map.get(field) {
            None | Some(Value::Null) => Ok(None),
            Some(x) => x
                .as_u64()
                .map(Some)
                .ok_or_else(|| Error::parse(field, format!("expected an integer or null, found {x}"))),
        }
    };
    let t = optional("t")?.map(|t| t as usize);
    let lambda = optional("lambda")?;
    let blocks = get_array(&map, "blocks")?
        .iter()
        .enumerate()
        .map(|(i, b)| {
            b.as_array()
                .and_then(|pts| pts.iter().map(|p| p.as_u64().map(|p| p as usize)).collect::<Option<Vec<_>>>())
                .ok_or_else(|| Error::parse(format!("blocks[{i}]"), "expected an array of integers"))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut design = Design::new(v, r, blocks)?;
    design.t = t;
    design.lambda = lambda;
    Ok(design)
}

pub fn verdict_to_json(verdict: &DesignVerdict) -> Result<String> {
    to_json_string(verdict)
}

/// Writes `contents` to `dir/name`, creating `dir` if needed.
pub fn write_output(dir: &Path, name: &str, contents: &str) -> Result<()> {
    fs::create_dir_all(dir)?;
    fs::write(dir.join(name), contents)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{support_blocks, verify_t_design};

    fn hamming() -> LinearCode {
        let rows = ["1110000", "1001100", "0101010", "1101001"]
            .iter()
            .map(|r| BinaryVector::from_bits(r.chars().map(|c| c == '1')))
            .collect();
        LinearCode::new(7, rows).unwrap()
    }

    #[test]
    fn code_roundtrip() {
        let code = hamming();
        let text = code_to_json(&code, json!({"construction": "custom"})).unwrap();
        let (back, prov) = parse_code(&text).unwrap();
        assert_eq!(back, code);
        assert_eq!(prov["construction"], "custom");
    }

    fn field_of(e: Error) -> String {
        match e {
            Error::Parse { field, .. } => field,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn malformed_code_files_name_the_field() {
        assert_eq!(field_of(parse_code(r#"{"k": 1, "rows": ["7"]}"#).unwrap_err()), "n");
        assert_eq!(field_of(parse_code(r#"{"n": 3, "k": 1, "rows": ["g"]}"#).unwrap_err()), "rows[0]");
        assert_eq!(field_of(parse_code(r#"{"n": 3, "k": 2, "rows": ["7"]}"#).unwrap_err()), "k");
        assert_eq!(field_of(parse_code(r#"{"n": -3, "k": 1, "rows": ["7"]}"#).unwrap_err()), "n");
        let e = parse_code("{\n  \"n\": 3,\n  oops\n}").unwrap_err();
        assert!(e.to_string().contains("line 3"), "{e}");
    }

    #[test]
    fn dependent_rows_rejected_at_load() {
        let e = parse_code(r#"{"n": 3, "k": 3, "rows": ["3", "6", "5"]}"#).unwrap_err();
        assert!(matches!(e, Error::DependentRows { rank: 2, rows: 3 }));
    }

    #[test]
    fn design_roundtrip() {
        let design = support_blocks(&hamming(), 3).unwrap();
        let verdict = verify_t_design(&design, 2).unwrap();
        let design = design.with_verdict(2, &verdict);
        let back = parse_design(&design_to_json(&design).unwrap()).unwrap();
        assert_eq!(back, design);
        assert_eq!(back.lambda, Some(1));
        let v: Value = serde_json::from_str(&design_to_json(&design).unwrap()).unwrap();
        assert_eq!(v["blocks"][0], json!([1, 2, 3]));
        assert!(parse_design(r#"{"v": 3, "r": 2, "t": null, "lambda": null, "blocks": [[1, 4]]}"#).is_err());
    }

    #[test]
    fn verdict_json_carries_witness() {
        let d = Design::new(4, 3, vec![vec![1, 2, 3], vec![1, 2, 4]]).unwrap();
        let v: Value = serde_json::from_str(&verdict_to_json(&verify_t_design(&d, 2).unwrap()).unwrap()).unwrap();
        assert_eq!(v["is_design"], false);
        assert_eq!(v["witness"]["subset"], json!([3, 4]));
        assert_eq!(v["witness"]["count"], 0);
    }
}
