use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::Value;

mod commands;

/// Exact verification and classification of real forms of the surfaces X_n.
#[derive(Parser, Debug)]
#[command(name = "realforms", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Caps the worker threads used by batch computations.
    #[arg(long, env = "REALFORMS_THREADS", hide = true)]
    threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Checks the family identities, determinants, G0n membership, Y_n
    /// preservation and the torus action.
    Verify {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        /// Negative control: corrupts the construction.
        #[arg(long, value_enum, default_value_t = MutationArg::None, hide = true)]
        mutation: MutationArg,
    },
    /// Pairwise isomorphism matrix and moduli invariants of fibre points.
    Classify {
        #[arg(long)]
        n: Option<u32>,
        /// JSON file `{"n": .., "points": [["1", "2"], ..]}`; `-` reads stdin.
        #[arg(long)]
        points: PathBuf,
        /// Adds a witness `e` for every isomorphic pair.
        #[arg(long)]
        witnesses: bool,
    },
    /// Minimal resolution of the singular point of Y_n.
    Resolve {
        #[arg(long)]
        n: u32,
    },
    /// Orbit and fibre type of a point of P^3, or the Lorentz matrix of an
    /// element of SL_2(C).
    P1 {
        /// `x,y,z,t` as rationals.
        #[arg(long, conflicts_with = "matrix", required_unless_present = "matrix")]
        point: Option<String>,
        /// `id`, or JSON `[["a", "b"], ["c", "d"]]` over Q(i).
        #[arg(long)]
        matrix: Option<String>,
    },
    /// Random cocycles from fibre points under random twisted conjugation.
    OrbitSample {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: Option<u32>,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MutationArg {
    None,
    FlipSign,
    ZWeight,
}

/// A finished run: the report plus whether every check held.
pub struct Outcome {
    pub report: Value,
    pub passed: bool,
}

/// Exit 2 material: bad flags, unreadable or malformed payloads.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

fn run(cli: Cli) -> anyhow::Result<Outcome> {
    if let Some(k) = cli.threads {
        if k == 0 {
            return Err(UsageError("REALFORMS_THREADS must be positive".into()).into());
        }
        rayon::ThreadPoolBuilder::new().num_threads(k).build_global()?;
    }
    match cli.command {
        Command::Verify { n, m, mutation } => {
            let mutation = match mutation {
                MutationArg::None => realforms_core::family::Mutation::None,
                MutationArg::FlipSign => realforms_core::family::Mutation::FlipSign,
                MutationArg::ZWeight => realforms_core::family::Mutation::ZWeight,
            };
            commands::verify(n, m, mutation)
        }
        Command::Classify { n, points, witnesses } => commands::classify(n, &points, witnesses),
        Command::Resolve { n } => commands::resolve(n),
        Command::P1 { point, matrix } => match (point, matrix) {
            (Some(p), _) => commands::p1_point(&p),
            (None, Some(m)) => commands::p1_matrix(&m),
            (None, None) => Err(UsageError("one of --point or --matrix is required".into()).into()),
        },
        Command::OrbitSample { n, m, count, seed } => commands::orbit_sample(n, m.unwrap_or(n), count, seed),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    match run(cli) {
        Ok(outcome) => {
            let text = serde_json::to_string_pretty(&outcome.report).expect("JSON values serialize");
            let written = match &out {
                Some(path) => std::fs::write(path, text + "\n"),
                None => {
                    println!("{text}");
                    Ok(())
                }
            };
            if let Err(e) = written {
                eprintln!("error: cannot write report: {e}");
                return ExitCode::from(2);
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
