//! `latres`: batch front end for the lattice-resolution library.

mod commands;
mod input;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use latres_core::{AuditMode, Config, ErrorClass};
use serde::Serialize;
use std::io::Write;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(
    name = "latres",
    version,
    about = "Flasque resolutions, Tate cohomology and fundamental groups over finite groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Global {
    /// Largest group order accepted.
    #[arg(long, global = true, default_value_t = 64)]
    budget_order: usize,
    /// Largest cochain dimension a differential may touch.
    #[arg(long, global = true, default_value_t = 40_000)]
    budget_matrix: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    report: Format,
    /// Subgroups inspected by cohomology scans.
    #[arg(long, global = true, value_enum, default_value_t = Audit::Reps)]
    audit: Audit,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Audit {
    Reps,
    Full,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    /// Tate cohomology of a module over the whole group.
    Tate {
        /// Must match the module's own group when given.
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        degree: i64,
        /// Report every subgroup in the audit set instead of the whole group.
        #[arg(long)]
        subgroups: bool,
    },
    /// Flasque and coflasque predicates with witnesses.
    FlasqueCheck {
        #[arg(long)]
        module: String,
    },
    /// A resolution of a lattice by permutation modules.
    ResolveLattice {
        #[arg(long)]
        module: String,
        #[arg(long, value_enum, default_value_t = LatticeMode::Coflasque)]
        mode: LatticeMode,
    },
    /// The character-level flasque resolution of a group datum.
    ResolveGroup {
        #[arg(long, visible_alias = "input")]
        datum: String,
    },
    /// The algebraic fundamental group, cross-checked against cocharacters.
    Pi1 {
        #[arg(long, visible_alias = "input")]
        datum: String,
    },
    /// Runs one verification.
    Verify {
        #[arg(long, value_enum)]
        prop: Prop,
        /// A datum or sequence document, as the verification requires.
        #[arg(long)]
        input: Option<String>,
        #[arg(long)]
        datum: Option<String>,
        #[arg(long)]
        sequence: Option<String>,
    },
    /// Dual abelian cohomology of a group datum.
    Abcoh {
        #[arg(long, visible_alias = "input")]
        datum: String,
        /// Every degree in −1..=2 when omitted.
        #[arg(long, allow_hyphen_values = true)]
        degree: Option<i64>,
    },
    /// The bundled example documents.
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LatticeMode {
    Coflasque,
    FlasqueQuotient,
    FlasqueCover,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
pub enum Prop {
    #[value(name = "2.8")]
    #[serde(rename = "2.8")]
    CoverWeights,
    #[value(name = "2.11")]
    #[serde(rename = "2.11")]
    CoverSixTerm,
    #[value(name = "3.4")]
    #[serde(rename = "3.4")]
    CenterRoof,
    #[value(name = "3.6")]
    #[serde(rename = "3.6")]
    Comparison,
    #[value(name = "3.9")]
    #[serde(rename = "3.9")]
    TorsionCoradical,
    #[value(name = "3.11")]
    #[serde(rename = "3.11")]
    Functoriality,
    #[value(name = "3.14")]
    #[serde(rename = "3.14")]
    Exactness,
    #[value(name = "4.2d")]
    #[serde(rename = "4.2d")]
    ResolutionAbCoh,
    #[value(name = "4.3d")]
    #[serde(rename = "4.3d")]
    KernelCokernel,
    #[value(name = "4.6")]
    #[serde(rename = "4.6")]
    AbCohSequence,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusAction {
    /// Names of all entries.
    List,
    /// Prints one entry.
    Get { name: String },
    /// Parses, validates and round-trips every entry.
    Check,
}

fn config(g: &Global) -> Config {
    Config {
        order_budget: g.budget_order,
        matrix_budget: g.budget_matrix,
        audit: match g.audit {
            Audit::Reps => AuditMode::Representatives,
            Audit::Full => AuditMode::Full,
        },
        ..Config::default()
    }
}

fn exit_code(class: ErrorClass) -> u8 {
    match class {
        ErrorClass::Verification => 2,
        ErrorClass::Input => 3,
        ErrorClass::Budget => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 3 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let cfg = config(&cli.global);
    let started = std::time::Instant::now();
    match commands::run(&cli.command, &cfg) {
        Ok(out) => {
            let text = match cli.global.report {
                Format::Json => match report::json(&cli.command, &out) {
                    Ok(t) => t,
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(exit_code(e.class()));
                    }
                },
                Format::Text => report::text(&cli.command, &out),
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(3);
            }
            eprintln!("elapsed: {:.3}s", started.elapsed().as_secs_f64());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(e.class()))
        }
    }
}
