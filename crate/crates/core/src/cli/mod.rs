//! Command-line front end: argument parsing, file loading and reports.

mod commands;
mod document;
mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub use commands::example;
pub use document::{DgCategoryDoc, Document};
pub use report::{Check, Format, Report, Verdict};

use crate::error::Error;

#[derive(Parser, Debug)]
#[command(
    name = "dgq",
    version,
    about = "Exact rational checks for dg quotients, Hopf algebras, tetramodules and simplicial constructions",
    after_help = "Exit status: 0 when every check passes, 1 when a check fails, 2 on usage or input errors.\n\
                  Input files are JSON with a \"kind\" field: hopf, bialgebra, tetramodule, dg-category,\n\
                  dg-algebra or monoidal-dg-category. `dgq example <name>` prints one of each.\n\
                  All computations are single-threaded."
)]
pub struct Cli {
    /// Output format of the report.
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,
    /// Seed for randomized steps (basis changes, isomorphism search).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Hopf algebras and bialgebras.
    #[command(subcommand)]
    Hopf(HopfCmd),
    /// Tetramodules and their two monoidal structures.
    #[command(subcommand)]
    Tetra(TetraCmd),
    /// The Gerstenhaber–Schack complex.
    #[command(subcommand)]
    Gs(GsCmd),
    /// Dg categories and their quotients.
    #[command(subcommand)]
    Dg(DgCmd),
    /// Nerves of dg algebras.
    #[command(subcommand)]
    Nerve(NerveCmd),
    /// The simplicial construction from a strict monoidal dg category.
    #[command(subcommand)]
    Pipeline(PipelineCmd),
    /// Print or write a builtin example file.
    Example {
        /// two-object, contractible-pair, dual-numbers, trivial-monoidal,
        /// absorbing-monoidal, chaotic-monoidal, free-tetramodule:<hopf>,
        /// regular-tetramodule:<hopf>, or a builtin Hopf algebra name.
        name: String,
        /// Write to this file instead of standard output.
        #[arg(long)]
        emit: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum HopfCmd {
    /// Validate the axioms of a (Hopf) bialgebra file.
    Check { file: PathBuf },
    /// Validate a builtin: trivial, sweedler, sweedler_double, z<n>.
    Builtin {
        name: String,
        /// Also write the algebra to a file (default `<name>.json`).
        #[arg(long, num_args = 0..=1, default_missing_value = "")]
        emit: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum TetraCmd {
    /// Validate the tetramodule axioms.
    Check { file: PathBuf },
    /// Compare M ⊗₁ N and M ⊗₂ N.
    Tensor { left: PathBuf, right: PathBuf },
    /// Two-sided decomposition M ≅ B ⊗ M₀ ⊗ B and the one-sided Hopf module decomposition.
    Decompose { file: PathBuf },
    /// Braiding and the Eckmann–Hilton map on four tetramodules.
    EhCheck {
        /// Four tetramodule files; when omitted, four free tetramodules over `--free`.
        files: Vec<PathBuf>,
        #[arg(long, default_value = "sweedler")]
        free: String,
    },
    /// Exactness of N ⊗ᵥ (−) and (−) ⊗ᵥ N on a short exact sequence.
    Exactness {
        file: PathBuf,
        /// Use the split sequence 0 → A → A ⊕ B → B → 0 instead of the multiplication sequence.
        #[arg(long, num_args = 2, value_names = ["A", "B"])]
        split: Option<Vec<PathBuf>>,
    },
}

#[derive(Subcommand, Debug)]
pub enum GsCmd {
    /// Total cohomology of the Gerstenhaber–Schack complex in a window.
    Cohomology {
        /// A file or a builtin Hopf algebra name.
        source: String,
        #[arg(long, default_value_t = 3)]
        pmax: usize,
        #[arg(long, default_value_t = 3)]
        qmax: usize,
        /// Restrict to normalized cochains.
        #[arg(long)]
        normalized: bool,
        /// Compare degree 2 with the deformation count.
        #[arg(long)]
        oracle: bool,
        /// Recompute after a random change of basis drawn from `--seed`.
        #[arg(long)]
        conjugate: bool,
    },
}

#[derive(Args, Debug, Clone, Copy)]
pub struct WindowArg {
    /// Degree window `lo:hi`.
    #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
    pub window: Option<(i64, i64)>,
}

#[derive(Subcommand, Debug)]
pub enum DgCmd {
    /// Generalized Drinfeld quotient of a marked dg category.
    Quotient {
        /// A dg-category file with `marked`; the two-object example with `Y` marked when omitted.
        file: Option<PathBuf>,
        #[command(flatten)]
        window: WindowArg,
        #[arg(long)]
        level_cap: Option<usize>,
    },
    /// Acyclicity of the exterior complexes and the comparison maps between them.
    Lambda {
        #[arg(long, default_value_t = 8)]
        max: usize,
    },
    /// The comparison from the generalized quotient to the Drinfeld quotient by the union.
    PsiCheck {
        /// A dg-category file with `marked`; the two-object example with `Y` marked twice when omitted.
        file: Option<PathBuf>,
        #[command(flatten)]
        window: WindowArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum NerveCmd {
    /// Build the nerve of a dg algebra and check the pre-monoid axioms.
    Check {
        file: PathBuf,
        #[arg(long, default_value_t = 4)]
        levels: usize,
        #[command(flatten)]
        window: WindowArg,
    },
}

#[derive(Subcommand, Debug)]
pub enum PipelineCmd {
    /// Build and check the pre-monoid of a strict monoidal dg category and its ideal.
    Run {
        file: PathBuf,
        #[arg(long, default_value_t = 3)]
        nmax: usize,
        #[command(flatten)]
        window: WindowArg,
        #[arg(long)]
        level_cap: Option<usize>,
    },
}

pub fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s.split_once(':').ok_or_else(|| format!("expected lo:hi, got {s:?}"))?;
    let lo = a.trim().parse::<i64>().map_err(|e| format!("{a:?}: {e}"))?;
    let hi = b.trim().parse::<i64>().map_err(|e| format!("{b:?}: {e}"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Exit status for an error raised while running a command.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Usage(_) | Error::Io(_) | Error::Json(_) => 2,
        _ => 1,
    }
}

/// Runs one command; output goes to the writers, the exit status is returned.
pub fn run<I, T>(args: I, out: &mut dyn std::io::Write, err: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match commands::execute(&cli, out) {
        Ok(Some(report)) => {
            let _ = out.write_all(report.emit(cli.format).as_bytes());
            if report.passed() {
                0
            } else {
                1
            }
        }
        Ok(None) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}
