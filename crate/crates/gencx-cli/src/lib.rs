//! Command-line front end for `gencx`.
//!
//! Exit status: 0 when the checked property holds, 1 on a mathematical failure (with a
//! witness in the report), 2 on malformed input.

pub mod commands;
pub mod table;

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use serde_json::Value;

/// Environment variable holding the worker-thread count.
pub const THREADS_VAR: &str = "GENCX_THREADS";

#[derive(Parser, Debug)]
#[command(name = "gencx", version, about = "Exact computations with invariant generalized complex structures")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Parse a Lie model and optional forms and print them normalized.
    Parse {
        model: String,
        #[arg(long)]
        twist: Option<String>,
        #[arg(long = "form")]
        forms: Vec<String>,
    },
    /// Betti numbers, and d_H-cohomology when a twist is present.
    Betti {
        model: String,
        #[arg(long)]
        twist: Option<String>,
    },
    /// Check that a spinor is pure, nondegenerate and integrable.
    VerifyGcs {
        model: String,
        #[arg(long)]
        spinor: String,
        #[arg(long)]
        twist: Option<String>,
    },
    /// Betti numbers and structure cells of the bundled nilpotent-algebra table.
    Table1 {
        dir: PathBuf,
        /// Verify every listed structure, not only the Betti columns.
        #[arg(long)]
        verify_all: bool,
    },
    /// Kernels of the Lefschetz maps on cohomology.
    Lefschetz {
        model: String,
        #[arg(long)]
        omega: String,
    },
    /// dd^J-lemma for a spinor, or dδ-lemma for a symplectic form.
    Ddlemma {
        model: String,
        #[arg(long, conflicts_with = "omega", required_unless_present = "omega")]
        spinor: Option<String>,
        #[arg(long)]
        omega: Option<String>,
        #[arg(long)]
        twist: Option<String>,
    },
    /// Triple or quadruple Massey product of closed forms.
    Massey {
        model: String,
        #[arg(num_args = 3..=4, required = true)]
        forms: Vec<String>,
    },
    /// T-dual model along a circle generator, with τ-images of forms and spinors.
    Tdualize {
        model: String,
        /// 1-based index of the connection generator.
        #[arg(long)]
        circle: usize,
        #[arg(long)]
        twist: Option<String>,
        #[arg(long = "form")]
        forms: Vec<String>,
        #[arg(long)]
        spinor: Option<String>,
    },
    /// Cohomology ring of a blow-up and its Lefschetz kernels.
    Blowup {
        /// BlowupInput JSON file; alternatively give --model, --omega and --tangent.
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        model: Option<String>,
        #[arg(long, requires = "model")]
        omega: Option<String>,
        /// Basis vector of the subalgebra, as comma-separated coordinates.
        #[arg(long = "tangent", requires = "model")]
        tangent: Vec<String>,
        /// Chern class of the normal bundle, as a form on the subalgebra.
        #[arg(long = "chern", requires = "model")]
        chern: Vec<String>,
        /// Comma-separated sample values of ε.
        #[arg(long)]
        eps: Option<String>,
    },
    /// Partial minimal model of a Lie model or a CDGA JSON file.
    Minmodel {
        input: String,
        #[arg(long)]
        degree: usize,
        /// Also run the s-formality probe at this degree.
        #[arg(long)]
        probe: bool,
        /// Ambient dimension for the formality bound.
        #[arg(long)]
        dimension: Option<usize>,
    },
    /// sl(2) relations, symplectic star, δ and the φ identities.
    Sl2Check {
        model: String,
        #[arg(long)]
        omega: String,
    },
}

/// Why a command did not produce a passing report.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Math(String),
}

impl Failure {
    pub fn input(e: impl std::fmt::Display) -> Self {
        Failure::Input(e.to_string())
    }

    pub fn math(e: impl std::fmt::Display) -> Self {
        Failure::Math(e.to_string())
    }
}

/// Result of a command: whether its property holds, and the report in both renderings.
pub struct Output {
    pub ok: bool,
    pub json: Value,
    pub text: String,
}

/// Sizes the global rayon pool from the environment. Later calls are no-ops.
pub fn configure_threads() {
    if let Some(n) = std::env::var(THREADS_VAR).ok().and_then(|s| s.trim().parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
}

/// Runs one invocation, writing the report to `out` and diagnostics to `err`; returns the exit code.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    configure_threads();
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let target: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    let json = cli.json;
    match commands::dispatch(cli.command) {
        Ok(o) => {
            let _ = if json {
                writeln!(out, "{}", serde_json::to_string_pretty(&o.json).expect("reports serialize"))
            } else {
                write!(out, "{}", o.text)
            };
            if o.ok {
                0
            } else {
                1
            }
        }
        Err(f) => {
            let (code, kind, msg) = match f {
                Failure::Input(m) => (2, "input", m),
                Failure::Math(m) => (1, "failure", m),
            };
            if json {
                let v = serde_json::json!({ "error": kind, "message": msg });
                let _ = writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"));
            } else {
                let _ = writeln!(err, "error: {}", msg);
            }
            code
        }
    }
}
