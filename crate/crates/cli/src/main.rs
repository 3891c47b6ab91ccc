//! `intcomb`: exact verification experiments for integrable combinatorics.
//!
//! Exit codes: 0 = all experiments passed, 1 = at least one verification
//! failed (or an internal identity error), 2 = usage error.

mod experiments;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use experiments::UsageError;
use intcomb_core::report::Status;
use report::ExperimentReport;

#[derive(Parser)]
#[command(
    name = "intcomb",
    version,
    about = "Exact-arithmetic verification of transfer-matrix, planar-map, ASM, \
             Whittaker and Q-system identities"
)]
struct Cli {
    /// Write the JSON report to this path (use "-" for stdout)
    #[arg(long, global = true)]
    json: Option<PathBuf>,

    /// Write CSV tables (for experiments that produce one) to this path
    #[arg(long, global = true)]
    csv: Option<PathBuf>,

    /// Seed for randomized parameter draws
    #[arg(long, global = true, default_value_t = intcomb_core::lorentzian::DEFAULT_SEED)]
    seed: u64,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Check the transfer-matrix generating function identity
    #[command(name = "lorentzian-genfun")]
    LorentzianGenfun {
        /// triangle weight (rational, e.g. 1/7); omit for seeded random pairs
        #[arg(long)]
        g: Option<String>,
        /// pairing weight (rational); omit for seeded random pairs
        #[arg(long)]
        a: Option<String>,
        #[arg(long, default_value_t = 10)]
        order: i64,
        /// number of seeded pairs when --g/--a are omitted
        #[arg(long, default_value_t = 5)]
        pairs: usize,
    },

    /// Certify commutation of two transfer matrices on a window
    #[command(name = "lorentzian-commute")]
    LorentzianCommute {
        #[arg(long)]
        g: String,
        #[arg(long)]
        a: String,
        /// second pairing weight; g' is solved from phi-conjugacy
        #[arg(long)]
        a2: String,
        /// explicit second triangle weight (overrides conjugacy; control runs)
        #[arg(long)]
        g2: Option<String>,
        #[arg(long, default_value_t = 40)]
        size: usize,
        #[arg(long, default_value_t = 10)]
        window: usize,
    },

    /// Verify the closed-form distance generating functions
    #[command(name = "geodesic-soliton")]
    GeodesicSoliton {
        #[arg(long, default_value_t = 20)]
        order: i64,
        #[arg(long, default_value_t = 8)]
        nmax: i64,
    },

    /// Verify the conserved quantity of the distance recursion
    #[command(name = "geodesic-conserve")]
    GeodesicConserve {
        #[arg(long, default_value_t = 20)]
        order: i64,
        #[arg(long, default_value_t = 8)]
        nmax: i64,
    },

    /// Count ASMs against the product formula
    #[command(name = "asm-count")]
    AsmCount {
        #[arg(long, default_value_t = 6)]
        size: usize,
    },

    /// Round-trip the six-vertex and osculating-path bijections
    #[command(name = "asm-bijection")]
    AsmBijection {
        #[arg(long, default_value_t = 5)]
        size: usize,
    },

    /// Verify the lambda-determinant ASM expansion
    #[command(name = "asm-lambdadet")]
    AsmLambdaDet {
        #[arg(long, default_value_t = 5)]
        size: usize,
    },

    /// Verify the Whittaker-vector defining relations in a Verma module
    #[command(name = "whittaker-verify")]
    WhittakerVerify {
        /// root-system family (only A is wired up)
        #[arg(long = "type", default_value = "A")]
        family: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        depth: usize,
        /// highest weight, comma-separated rationals (one per node)
        #[arg(long)]
        lambda: String,
        /// Whittaker parameters, comma-separated rationals
        #[arg(long)]
        mu: String,
    },

    /// Verify the classical Q-system on rectangular Schur polynomials
    #[command(name = "qsystem-classical")]
    QsystemClassical {
        #[arg(long, default_value_t = 4)]
        nvars: usize,
        #[arg(long, default_value_t = 3)]
        nmax: u32,
    },

    /// Verify the M-system operator relations
    #[command(name = "qsystem-operators")]
    QsystemOperators {
        #[arg(long, default_value_t = 3)]
        nvars: usize,
        #[arg(long = "degree-cap", default_value_t = 4)]
        degree_cap: u32,
    },

    /// Compute and check a graded character
    #[command(name = "qsystem-graded-char")]
    QsystemGradedChar {
        #[arg(long, default_value_t = 3)]
        nvars: usize,
        /// occupation matrix as JSON, rows = levels, columns = modes
        #[arg(long, default_value = "[[2],[0]]")]
        spec: String,
    },

    /// Eigencheck of the deformed operator plus the t->infinity limit
    #[command(name = "macdonald-eigen")]
    MacdonaldEigen {
        #[arg(long, default_value_t = 3)]
        nvars: usize,
        /// single shape, comma-separated parts; omit to sweep by weight
        #[arg(long)]
        lambda: Option<String>,
        #[arg(long = "max-weight", default_value_t = 3)]
        max_weight: u32,
    },

    /// Verify the current exchange relation at mode level
    #[command(name = "dim-exchange")]
    DimExchange {
        #[arg(long, default_value_t = 3)]
        nvars: usize,
        #[arg(long, default_value_t = 2)]
        window: i64,
        #[arg(long = "degree-cap", default_value_t = 3)]
        degree_cap: u32,
    },

    /// Verify the quantum determinant against its ASM expansion
    #[command(name = "qsystem-qdet")]
    QsystemQdet {
        #[arg(long, default_value_t = 3)]
        nvars: usize,
        /// entry vector, comma-separated integers (|a_i| <= 2)
        #[arg(long, default_value = "1,1,1")]
        avec: String,
        #[arg(long = "degree-cap", default_value_t = 1)]
        degree_cap: u32,
    },

    /// Run a registered suite of experiments
    #[command(name = "run-all")]
    RunAll {
        /// quick (~seconds) or full (~minutes)
        #[arg(long, default_value = "quick")]
        suite: String,
    },
}

fn run(cli: &Cli) -> anyhow::Result<Vec<ExperimentReport>> {
    match &cli.cmd {
        Cmd::LorentzianGenfun { g, a, order, pairs } => {
            experiments::genfun(g.as_deref(), a.as_deref(), *order, *pairs, cli.seed)
        }
        Cmd::LorentzianCommute {
            g,
            a,
            a2,
            g2,
            size,
            window,
        } => Ok(vec![experiments::commute(
            g,
            a,
            a2,
            g2.as_deref(),
            *size,
            *window,
        )?]),
        Cmd::GeodesicSoliton { order, nmax } => {
            Ok(vec![experiments::geodesic_soliton(*order, *nmax)?])
        }
        Cmd::GeodesicConserve { order, nmax } => {
            Ok(vec![experiments::geodesic_conserve(*order, *nmax)?])
        }
        Cmd::AsmCount { size } => Ok(vec![experiments::asm_count(*size)?]),
        Cmd::AsmBijection { size } => Ok(vec![experiments::asm_bijection(*size)?]),
        Cmd::AsmLambdaDet { size } => Ok(vec![experiments::asm_lambdadet(*size)?]),
        Cmd::WhittakerVerify {
            family,
            rank,
            depth,
            lambda,
            mu,
        } => Ok(vec![experiments::whittaker(
            family, *rank, *depth, lambda, mu,
        )?]),
        Cmd::QsystemClassical { nvars, nmax } => {
            Ok(vec![experiments::qsystem_classical(*nvars, *nmax)?])
        }
        Cmd::QsystemOperators { nvars, degree_cap } => {
            Ok(vec![experiments::qsystem_operators(*nvars, *degree_cap)?])
        }
        Cmd::QsystemGradedChar { nvars, spec } => Ok(vec![experiments::graded_char(*nvars, spec)?]),
        Cmd::MacdonaldEigen {
            nvars,
            lambda,
            max_weight,
        } => Ok(vec![experiments::macdonald_eigen(
            *nvars,
            lambda.as_deref(),
            *max_weight,
        )?]),
        Cmd::DimExchange {
            nvars,
            window,
            degree_cap,
        } => Ok(vec![experiments::dim_exchange(
            *nvars,
            *window,
            *degree_cap,
        )?]),
        Cmd::QsystemQdet {
            nvars,
            avec,
            degree_cap,
        } => Ok(vec![experiments::qdet(*nvars, avec, *degree_cap)?]),
        Cmd::RunAll { suite } => experiments::run_all(suite, cli.seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(reports) => {
            if let Err(e) = report::emit(&reports, cli.json.as_deref(), cli.csv.as_deref()) {
                eprintln!("error writing reports: {e}");
                return ExitCode::from(1);
            }
            if reports.iter().all(|r| r.status == Status::Pass) {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            if e.downcast_ref::<UsageError>().is_some() {
                eprintln!("usage error: {e}");
                ExitCode::from(2)
            } else {
                eprintln!("verification error: {e}");
                ExitCode::from(1)
            }
        }
    }
}
