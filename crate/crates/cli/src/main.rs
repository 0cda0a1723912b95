//! `flagchow`: presentations, bases, Hilbert series, torsion indices and the
//! verification suite from the command line.
//!
//! Exit status is 0 when everything checked passes, 1 on a verification
//! failure and 2 on a usage or data error.

mod report;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use flagchow::catalog::{lookup, supported_cases, CohomologyModel, GroupDescriptor};
use flagchow::verify;
use flagchow::Error;

use report::Render;

/// Truncation degree used when neither `--maxdeg` nor the environment says otherwise.
const DEFAULT_MAXDEG: u32 = 60;
const MAXDEG_ENV: &str = "FLAGCHOW_MAXDEG";

#[derive(Parser, Debug)]
#[command(name = "flagchow", version, about = "Exact mod-p Chow rings of versal flag varieties")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Worker threads for `verify`.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
struct GroupArgs {
    /// Group, e.g. `SO(7)`, `Spin(11)`, `U`, `PU(5)`, `E8`.
    #[arg(long)]
    group: String,
    /// Rank, when the group name does not fix it.
    #[arg(long)]
    rank: Option<usize>,
    /// Prime for the mod-p coefficients.
    #[arg(long)]
    prime: Option<u64>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the catalog, or describe one entry.
    Catalog {
        #[arg(long)]
        group: Option<String>,
        #[arg(long)]
        rank: Option<usize>,
        #[arg(long)]
        prime: Option<u64>,
    },
    /// Print the presentation of CH*(X)/p.
    Present(GroupArgs),
    /// Hilbert series of CH*(X)/p by topological degree.
    Hilbert {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        maxdeg: Option<u32>,
    },
    /// Basis of CH*(R_n)/p for the Rost motive R_n.
    Rost {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        p: u64,
    },
    /// Check the catalog's restriction tables.
    Restrict(GroupArgs),
    /// Compare CH*(X)/p with the Rost part times S(t)/(b).
    Decompose {
        #[command(flatten)]
        group: GroupArgs,
        #[arg(long)]
        maxdeg: Option<u32>,
    },
    /// The p-part of the torsion index with its verification level.
    TorsionIndex {
        #[command(flatten)]
        group: GroupArgs,
        /// Include the witness product and the counting bound.
        #[arg(long)]
        witness: bool,
    },
    /// Evaluate a cohomology operation on a generator.
    Steenrod {
        #[command(flatten)]
        group: GroupArgs,
        /// `beta`, `SqK`, `PK` or `QN`.
        #[arg(long)]
        op: String,
        /// Generator name, e.g. `x3` or `y6`.
        #[arg(long)]
        gen: String,
    },
    /// Run the verification suite.
    Verify {
        /// Run every case.
        #[arg(long, conflicts_with = "case")]
        all: bool,
        /// Run one case by id.
        #[arg(long)]
        case: Option<String>,
    },
}

/// Why a command did not succeed.
enum Failure {
    /// Something checked came out wrong; the report is still printed.
    Verification,
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn model_of(args: &GroupArgs) -> Result<CohomologyModel, Failure> {
    let parsed = GroupDescriptor::parse(&args.group, args.rank, args.prime).and_then(|d| lookup(&d));
    parsed.map_err(|e| match e {
        Error::Unsupported { .. } => Failure::Usage(e.to_string()),
        e => Failure::Usage(format!("{e}; supported cases: {}", supported_cases())),
    })
}

/// The requested truncation degree, capped by `FLAGCHOW_MAXDEG`.
fn maxdeg(requested: Option<u32>) -> Result<u32, Failure> {
    let cap = match std::env::var(MAXDEG_ENV) {
        Ok(v) => v
            .trim()
            .parse::<u32>()
            .map_err(|_| Failure::Usage(format!("{MAXDEG_ENV} must be a non-negative integer, got `{v}`")))?,
        Err(_) => DEFAULT_MAXDEG,
    };
    Ok(requested.map_or(cap, |m| m.min(cap)))
}

fn emit<T: Render>(format: Format, value: &T) {
    let body = match format {
        Format::Json => serde_json::to_string_pretty(value).expect("reports serialize") + "\n",
        Format::Text => value.text(),
    };
    // A closed pipe (`| head`) is not an error worth a panic.
    let _ = std::io::stdout().lock().write_all(body.as_bytes());
}

fn emit_checked<T: Render>(format: Format, value: &T, passed: bool) -> Outcome {
    emit(format, value);
    if passed {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn run(cli: Cli) -> Outcome {
    let format = cli.format;
    match cli.command {
        Command::Catalog { group: None, .. } => {
            let listing = report::catalog_listing();
            let valid = listing.valid;
            return emit_checked(format, &listing, valid);
        }
        Command::Catalog { group: Some(group), rank, prime } => {
            let model = model_of(&GroupArgs { group, rank, prime })?;
            emit(format, &report::CatalogEntry::new(&model));
        }
        Command::Present(g) => emit(format, &report::Presentation::new(&model_of(&g)?)?),
        Command::Hilbert { group, maxdeg: m } => {
            let model = model_of(&group)?;
            emit(format, &report::Hilbert::new(&model, maxdeg(m)?)?);
        }
        Command::Rost { n, p } => emit(format, &report::Rost::new(n, p)?),
        Command::Restrict(g) => {
            let r = report::Restrictions::new(&model_of(&g)?);
            let passed = r.passed;
            return emit_checked(format, &r, passed);
        }
        Command::Decompose { group, maxdeg: m } => {
            let model = model_of(&group)?;
            let r = flagchow::chow::verify_additive_decomposition(&model, maxdeg(m)?)?;
            let passed = r.passed;
            return emit_checked(format, &r, passed);
        }
        Command::TorsionIndex { group, witness } => {
            let model = model_of(&group)?;
            match flagchow::torsion::torsion_index(&model) {
                Ok(mut r) => {
                    if !witness {
                        r.witness = None;
                        r.count = None;
                    }
                    emit(format, &r);
                }
                Err(e @ Error::Inconsistent(_)) => {
                    eprintln!("flagchow: {e}");
                    return Err(Failure::Verification);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Command::Steenrod { group, op, gen } => {
            let model = model_of(&group)?;
            emit(format, &report::Steenrod::new(&model, &op, &gen)?);
        }
        Command::Verify { all, case } => {
            let reports = match (all, case) {
                (true, _) => verify::run_all(cli.jobs)?,
                (false, Some(id)) => vec![verify::run_case(&id).ok_or_else(|| {
                    Failure::Usage(format!("unknown case `{id}`; cases: {}", verify::case_ids().join(", ")))
                })?],
                (false, None) => return Err(Failure::Usage("verify needs --all or --case <id>".into())),
            };
            let s = report::Suite::new(reports);
            let passed = s.failed == 0;
            return emit_checked(format, &s, passed);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("flagchow: {msg}");
            ExitCode::from(2)
        }
    }
}
