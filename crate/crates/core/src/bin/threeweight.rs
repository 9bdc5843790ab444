use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use threeweight::constructions::QuadricVariant;
use threeweight::field::parse_hex;
use threeweight::pipeline::{self, Command, Exponents, Fault, Format, PipelineConfig, SelftestScope};

/// Constructs binary three-weight codes and verifies their weight
/// distributions, duals and support designs. Exits 0 iff every check passed.
#[derive(Parser)]
#[command(name = "threeweight", version)]
struct Cli {
    /// Output directory.
    #[arg(long, global = true, default_value = "out")]
    out: PathBuf,
    /// Report format: json, csv or md.
    #[arg(long, global = true, default_value = "json")]
    format: Format,
    /// Field modulus in hex, replacing the default irreducible polynomial.
    #[arg(long, global = true, value_parser = parse_hex)]
    modulus: Option<u64>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Build a code and compare it with its closed-form parameters.
    #[command(subcommand)]
    Construct(Construct),
    /// Extend a two-weight code by a zero coordinate and the all-ones word.
    Extend {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Weight distribution, dual distribution and consistency checks.
    Analyze {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Extract and verify support designs.
    Designs {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        t: usize,
        /// Comma-separated weights; all weights below the length by default.
        #[arg(long = "weight", value_delimiter = ',')]
        weights: Option<Vec<usize>>,
        /// Also verify designs held by the dual code.
        #[arg(long)]
        dual: bool,
    },
    /// Exhaustive invariant sweeps.
    Selftest {
        scope: SelftestScope,
        /// Comma-separated extension degrees.
        #[arg(long = "m", value_delimiter = ',')]
        ms: Vec<u32>,
        /// `all-coprime` or a comma-separated list.
        #[arg(long = "u", default_value = "all-coprime")]
        us: Exponents,
        /// Corrupt one observation to confirm the checks catch it.
        #[arg(long)]
        inject_fault: Option<Fault>,
    },
    /// Enumerator, design and dual tables for the defining-set families.
    Report {
        #[arg(long = "m", value_delimiter = ',')]
        ms: Vec<u32>,
        #[arg(long = "u", default_value = "1")]
        us: Exponents,
    },
}

#[derive(Subcommand)]
enum Construct {
    /// Defining-set code of {x : Tr(x) = 1, Tr(x^(2^u+1)) = rho}.
    DRho {
        #[arg(long)]
        m: u32,
        #[arg(long)]
        u: u32,
        #[arg(long)]
        rho: u8,
    },
    /// Two-weight code from an elliptic or hyperbolic quadric.
    Quadric {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        variant: QuadricVariant,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command = match cli.command {
        Cmd::Construct(Construct::DRho { m, u, rho }) => Command::ConstructDRho { m, u, rho },
        Cmd::Construct(Construct::Quadric { k, variant }) => Command::ConstructQuadric { k, variant },
        Cmd::Extend { input } => Command::Extend { input },
        Cmd::Analyze { input } => Command::Analyze { input },
        Cmd::Designs { input, t, weights, dual } => Command::Designs { input, t, weights, dual },
        Cmd::Selftest { scope, ms, us, inject_fault } => Command::Selftest {
            scope,
            ms,
            us,
            fault: inject_fault,
        },
        Cmd::Report { ms, us } => Command::Report { ms, us },
    };
    let cfg = PipelineConfig {
        command,
        out: cli.out,
        format: cli.format,
        modulus: cli.modulus,
    };
    match pipeline::run(&cfg) {
        Ok(outcome) => {
            for line in &outcome.summary {
                println!("{line}");
            }
            println!("wrote {} files to {}", outcome.outputs.len(), cfg.out.display());
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                println!("some checks failed");
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
