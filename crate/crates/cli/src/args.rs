//! Flag definitions and the small value grammars (`t3`, `family:t1:slot=a,b`,
//! `coords:...`).

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use so5_core::dynamics::Scheme;
use so5_core::verify::Suite;
use so5_core::WeylSlot;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(
    name = "so5",
    version,
    about = "Free rigid body on so(5): integrals, equilibria, stability"
)]
pub struct Cli {
    /// Seed for every random draw.
    #[arg(long, global = true, env = "SO5_SEED", default_value_t = 0)]
    pub seed: u64,

    /// Write the JSON result here instead of stdout.
    #[arg(long, short, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate from an initial state and report invariant drift.
    Simulate(SimulateArgs),
    /// List the Weyl-point equilibria of an orbit and the continuous families.
    Equilibria(OrbitArgs),
    /// Stability verdicts for every family and slot class.
    Classify(ClassifyArgs),
    /// Run the identity suites.
    Verify(VerifyArgs),
    /// Evaluate all integrals at one state.
    Integrals(IntegralsArgs),
}

#[derive(Debug, Args)]
pub struct InertiaArgs {
    /// Inertia parameters λ₁,…,λ₅.
    #[arg(
        long,
        required = true,
        value_delimiter = ',',
        allow_hyphen_values = true
    )]
    pub lambdas: Vec<f64>,
}

#[derive(Debug, Args)]
pub struct OrbitArgs {
    #[command(flatten)]
    pub inertia: InertiaArgs,

    #[arg(long, required = true, allow_hyphen_values = true)]
    pub c1: f64,

    #[arg(long, required = true, allow_hyphen_values = true)]
    pub c2: f64,

    /// Restrict to these Cartan families, e.g. t1,t8,t12.
    #[arg(long, value_delimiter = ',', value_parser = parse_family)]
    pub families: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Expectation {
    /// The built-in expectation table for the fifteen families.
    #[value(name = "paper")]
    Table,
}

#[derive(Debug, Args)]
pub struct ClassifyArgs {
    #[command(flatten)]
    pub orbit: OrbitArgs,

    /// Diff the verdicts against an expectation table; exit 1 on mismatch.
    #[arg(long, value_enum)]
    pub expect: Option<Expectation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SchemeArg {
    Rk4,
    Rk4Projected,
}

impl From<SchemeArg> for Scheme {
    fn from(s: SchemeArg) -> Self {
        match s {
            SchemeArg::Rk4 => Scheme::Rk4,
            SchemeArg::Rk4Projected => Scheme::Rk4Projected,
        }
    }
}

#[derive(Debug, Args)]
pub struct StateArgs {
    #[command(flatten)]
    pub inertia: InertiaArgs,

    /// `family:tK:slot=a,b`, `coords:x1,…,z4` or `random[:NORM]`.
    #[arg(long, required = true, allow_hyphen_values = true)]
    pub init: InitSpec,

    /// Orbit invariants, needed by `family:` initial states.
    #[arg(long, allow_hyphen_values = true)]
    pub c1: Option<f64>,

    #[arg(long, allow_hyphen_values = true)]
    pub c2: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub state: StateArgs,

    #[arg(long, default_value_t = 1e-3)]
    pub dt: f64,

    #[arg(long, default_value_t = 10_000)]
    pub steps: usize,

    #[arg(long, value_enum, default_value_t = SchemeArg::Rk4)]
    pub scheme: SchemeArg,

    /// Keep every N-th state in the CSV.
    #[arg(long, default_value_t = 1)]
    pub stride: usize,

    /// Trajectory CSV destination.
    #[arg(long)]
    pub csv: Option<PathBuf>,

    /// Largest acceptable relative drift.
    #[arg(long, default_value_t = 1e-6)]
    pub bound: f64,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Suites to run (all when omitted).
    #[arg(long, value_delimiter = ',', value_parser = parse_suite)]
    pub suite: Vec<Suite>,

    /// Dimensions for the generator identity (default 4..=8).
    #[arg(long = "n", value_delimiter = ',')]
    pub dims: Vec<usize>,

    #[arg(long, default_value_t = 200)]
    pub samples: usize,
}

#[derive(Debug, Args)]
pub struct IntegralsArgs {
    #[command(flatten)]
    pub state: StateArgs,
}

/// Initial-state reference.
#[derive(Clone, Debug, PartialEq)]
pub enum InitSpec {
    Family { k: usize, slot: WeylSlot },
    Coords([f64; 10]),
    Random { norm: f64 },
}

impl FromStr for InitSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "family" => {
                let (fam, slot) = rest.split_once(':').ok_or_else(|| {
                    CliError::config(format!("--init '{s}': expected family:tK:slot=a,b"))
                })?;
                let slot = slot.strip_prefix("slot=").unwrap_or(slot);
                Ok(InitSpec::Family {
                    k: parse_family(fam)?,
                    slot: slot.parse()?,
                })
            }
            "coords" => {
                let values = parse_floats(rest)?;
                let coords: [f64; 10] = values.try_into().map_err(|v: Vec<f64>| {
                    CliError::config(format!("--init coords needs 10 values, got {}", v.len()))
                })?;
                Ok(InitSpec::Coords(coords))
            }
            "random" => {
                let norm = if rest.is_empty() {
                    1.0
                } else {
                    parse_floats(rest)?
                        .first()
                        .copied()
                        .ok_or_else(|| CliError::config("--init random: empty norm"))?
                };
                if !(norm.is_finite() && norm > 0.0) {
                    return Err(CliError::config(format!("--init random: bad norm {norm}")));
                }
                Ok(InitSpec::Random { norm })
            }
            _ => Err(CliError::config(format!(
                "--init '{s}': expected family:tK:slot=…, coords:… or random"
            ))),
        }
    }
}

fn parse_floats(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| CliError::config(format!("not a number: '{v}'")))
        })
        .collect()
}

/// `t1` … `t15`.
pub fn parse_family(s: &str) -> Result<usize, CliError> {
    s.trim()
        .strip_prefix('t')
        .and_then(|k| k.parse().ok())
        .filter(|k| (1..=15).contains(k))
        .ok_or_else(|| CliError::config(format!("unknown family '{s}' (expected t1..t15)")))
}

fn parse_suite(s: &str) -> Result<Suite, String> {
    s.parse::<Suite>().map_err(|e| e.to_string())
}
