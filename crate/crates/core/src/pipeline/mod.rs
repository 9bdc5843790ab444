//! Batch front end. Each command writes its outputs and a `manifest.json`
//! into one directory; nothing depends on the clock or on randomness, so a
//! rerun with the same parameters reproduces every file byte for byte.

mod commands;
mod report;
mod selftest;
mod table;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::QuadricVariant;
use crate::error::{Error, Result};
use crate::field::{FieldContext, FieldSpec};
use crate::io;

pub use table::Table;

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    Json,
    Csv,
    Md,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Json => "json",
            Format::Csv => "csv",
            Format::Md => "md",
        }
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "md" | "markdown" => Ok(Format::Md),
            other => Err(Error::parse("format", format!("unknown format {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelftestScope {
    Field,
    Weil,
    PaperTables,
}

impl FromStr for SelftestScope {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "field" => Ok(SelftestScope::Field),
            "weil" => Ok(SelftestScope::Weil),
            "paper-tables" => Ok(SelftestScope::PaperTables),
            other => Err(Error::parse("scope", format!("unknown selftest scope {other:?}"))),
        }
    }
}

/// Which exponents `u` a sweep covers.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exponents {
    AllCoprime,
    List(Vec<u32>),
}

impl Exponents {
    pub fn resolve(&self, m: u32) -> Vec<u32> {
        match self {
            Exponents::AllCoprime => crate::charsums::coprime_exponents(m),
            Exponents::List(us) => us.clone(),
        }
    }
}

impl FromStr for Exponents {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s == "all-coprime" {
            Ok(Exponents::AllCoprime)
        } else {
            parse_list(s, "u").map(Exponents::List)
        }
    }
}

/// Comma-separated positive integers.
pub fn parse_list<T: FromStr>(s: &str, field: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::parse(field, format!("{x:?} is not a valid value")))
        })
        .collect()
}

/// A deliberate corruption of observed data, used to confirm that the
/// checks downstream of it fail and name the broken invariant.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fault {
    /// Miscounts the trace-one elements.
    FieldTrace,
    /// Shifts the observed `S_u(1, 1)` by 2.
    WeilSum,
    /// Adds a phantom codeword of minimum weight.
    Enumerator,
}

impl FromStr for Fault {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "field-trace" => Ok(Fault::FieldTrace),
            "weil-sum" => Ok(Fault::WeilSum),
            "enumerator" => Ok(Fault::Enumerator),
            other => Err(Error::parse("fault", format!("unknown fault {other:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    ConstructDRho {
        m: u32,
        u: u32,
        rho: u8,
    },
    ConstructQuadric {
        k: u32,
        variant: QuadricVariant,
    },
    Extend {
        input: PathBuf,
    },
    Analyze {
        input: PathBuf,
    },
    Designs {
        input: PathBuf,
        t: usize,
        /// Code weights to examine; all weights below the length when absent.
        weights: Option<Vec<usize>>,
        /// Also verify the support designs of the dual at `t = 2`.
        dual: bool,
    },
    Selftest {
        scope: SelftestScope,
        ms: Vec<u32>,
        us: Exponents,
        fault: Option<Fault>,
    },
    Report {
        ms: Vec<u32>,
        us: Exponents,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PipelineConfig {
    pub command: Command,
    pub out: PathBuf,
    pub format: Format,
    /// Replaces the default modulus of fields of the same degree.
    pub modulus: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutcome {
    /// Every requested check passed.
    pub passed: bool,
    /// Files written, relative to the output directory, manifest last.
    pub outputs: Vec<String>,
    /// Human-readable lines for the terminal.
    pub summary: Vec<String>,
}

/// Collects the files of one run and the fields it used.
struct Run<'a> {
    cfg: &'a PipelineConfig,
    outputs: Vec<String>,
    fields: BTreeSet<(u32, u64)>,
    summary: Vec<String>,
}

impl<'a> Run<'a> {
    fn new(cfg: &'a PipelineConfig) -> Self {
        Run {
            cfg,
            outputs: Vec::new(),
            fields: BTreeSet::new(),
            summary: Vec::new(),
        }
    }

    fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        io::write_output(&self.cfg.out, name, contents)?;
        self.outputs.push(name.to_string());
        Ok(())
    }

    fn write_json<T: Serialize + ?Sized>(&mut self, name: &str, value: &T) -> Result<()> {
        self.write(name, &io::to_json_string(value)?)
    }

    /// Writes a report in the configured format: one JSON document, or one
    /// CSV per table, or one markdown file with every table.
    fn write_report(&mut self, stem: &str, title: &str, json: &Value, tables: &[(&str, Table)]) -> Result<()> {
        match self.cfg.format {
            Format::Json => self.write_json(&format!("{stem}.json"), json),
            Format::Csv => {
                for (name, table) in tables {
                    let file = if tables.len() == 1 {
                        format!("{stem}.csv")
                    } else {
                        format!("{stem}_{name}.csv")
                    };
                    self.write(&file, &table.to_csv()?)?;
                }
                Ok(())
            }
            Format::Md => {
                let mut md = format!("# {title}\n");
                for (name, table) in tables {
                    md.push_str(&format!("\n## {}\n\n{}", name.replace('_', " "), table.to_markdown()));
                }
                self.write(&format!("{stem}.md"), &md)
            }
        }
    }

    /// A field of degree `m`, honouring the modulus override. A mismatched
    /// override is an error.
    fn field(&mut self, m: u32) -> Result<FieldContext> {
        let ctx = FieldContext::new(m, self.cfg.modulus)?;
        self.fields.insert((m, ctx.modulus()));
        Ok(ctx)
    }

    /// As [`Run::field`], but the override only applies at its own degree.
    fn field_in_sweep(&mut self, m: u32) -> Result<FieldContext> {
        let modulus = self.cfg.modulus.filter(|&p| modulus_degree(p) == m);
        let ctx = FieldContext::new(m, modulus)?;
        self.fields.insert((m, ctx.modulus()));
        Ok(ctx)
    }

    fn note_field(&mut self, m: u32, modulus: u64) {
        self.fields.insert((m, modulus));
    }

    fn finish(mut self, passed: bool) -> Result<RunOutcome> {
        let fields: Vec<FieldSpec> = self
            .fields
            .iter()
            .map(|&(m, modulus)| FieldSpec {
                m,
                modulus: format!("{modulus:#x}"),
            })
            .collect();
        let manifest = json!({
            "artifact": env!("CARGO_PKG_NAME"),
            "version": ARTIFACT_VERSION,
            "parameters": self.cfg.command,
            "format": self.cfg.format,
            "modulus_override": self.cfg.modulus.map(|p| format!("{p:#x}")),
            "fields": fields,
            "outputs": self.outputs,
            "passed": passed,
        });
        self.write_json("manifest.json", &manifest)?;
        Ok(RunOutcome {
            passed,
            outputs: self.outputs,
            summary: self.summary,
        })
    }
}

fn modulus_degree(p: u64) -> u32 {
    63 - p.max(1).leading_zeros()
}

/// Runs one command and writes its outputs under `cfg.out`.
pub fn run(cfg: &PipelineConfig) -> Result<RunOutcome> {
    let mut run = Run::new(cfg);
    let passed = match &cfg.command {
        Command::ConstructDRho { m, u, rho } => commands::construct_d_rho(&mut run, *m, *u, *rho)?,
        Command::ConstructQuadric { k, variant } => commands::construct_quadric(&mut run, *k, *variant)?,
        Command::Extend { input } => commands::extend(&mut run, input)?,
        Command::Analyze { input } => commands::analyze(&mut run, input)?,
        Command::Designs { input, t, weights, dual } => {
            commands::designs(&mut run, input, *t, weights.as_deref(), *dual)?
        }
        Command::Selftest { scope, ms, us, fault } => selftest::run(&mut run, *scope, ms, us, *fault)?,
        Command::Report { ms, us } => report::run(&mut run, ms, us)?,
    };
    run.finish(passed)
}

/// Convenience for callers that only need a directory and a command.
pub fn run_in(out: &Path, format: Format, modulus: Option<u64>, command: Command) -> Result<RunOutcome> {
    run(&PipelineConfig {
        command,
        out: out.to_path_buf(),
        format,
        modulus,
    })
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "✓"
    } else {
        "✗"
    }
}
