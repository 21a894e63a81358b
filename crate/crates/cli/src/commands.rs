use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use so5_core::dynamics::{conservation_report, integrate, write_csv, ConservationReport};
use so5_core::equilibria::{cartan_point, catalog, Catalog};
use so5_core::invariants::InvariantSnapshot;
use so5_core::lie::so5::coords_to_matrix;
use so5_core::report::write_json;
use so5_core::sampling::{random_coords, rng_from_seed};
use so5_core::stability::classify::Mismatch;
use so5_core::stability::{classify_orbit, diff_expectations, special_condition, RowVerdict};
use so5_core::verify::{run_suites, Suite, VerifyConfig, VerifyReport};
use so5_core::{Coordinates10, InertiaSpec, OrbitInvariants, SkewMatrix};

use crate::args::{ClassifyArgs, InitSpec, OrbitArgs, SimulateArgs, StateArgs, VerifyArgs};
use crate::args::{InertiaArgs, IntegralsArgs};
use crate::error::CliError;

/// Whether the command's property checks held; `false` maps to exit 1.
pub type Passed = bool;

fn inertia(args: &InertiaArgs) -> Result<InertiaSpec, CliError> {
    if args.lambdas.len() != 5 {
        return Err(CliError::config(format!(
            "--lambdas needs 5 values, got {}",
            args.lambdas.len()
        )));
    }
    Ok(InertiaSpec::new(args.lambdas.clone())?)
}

fn orbit(c1: f64, c2: f64) -> Result<OrbitInvariants, CliError> {
    let inv = OrbitInvariants::new(c1, c2);
    inv.check()?;
    Ok(inv)
}

fn initial_state(args: &StateArgs, seed: u64) -> Result<SkewMatrix, CliError> {
    match &args.init {
        InitSpec::Family { k, slot } => {
            let (Some(c1), Some(c2)) = (args.c1, args.c2) else {
                return Err(CliError::config(
                    "--init family:… needs the orbit: pass --c1 and --c2",
                ));
            };
            Ok(cartan_point(*k, *slot, &orbit(c1, c2)?)?.matrix)
        }
        InitSpec::Coords(c) => {
            if c.iter().any(|v| !v.is_finite()) {
                return Err(CliError::config("--init coords: non-finite value"));
            }
            Ok(coords_to_matrix(&Coordinates10(*c)))
        }
        InitSpec::Random { norm } => Ok(coords_to_matrix(&random_coords(
            &mut rng_from_seed(seed),
            *norm,
        ))),
    }
}

/// Opens the JSON destination: a file when given, stdout otherwise.
pub fn sink(path: Option<&Path>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| {
            CliError::config(format!("cannot create {}: {e}", p.display()))
        })?)),
        None => Box::new(io::stdout().lock()),
    })
}

#[derive(Serialize)]
struct SimulateReport {
    lambdas: Vec<f64>,
    initial: [f64; 10],
    scheme: so5_core::dynamics::Scheme,
    dt: f64,
    steps: usize,
    stride: usize,
    /// max_t ‖M(t) − M(0)‖
    max_deviation: f64,
    bound: f64,
    max_drift: f64,
    passed: bool,
    conservation: ConservationReport,
}

pub fn simulate(args: &SimulateArgs, seed: u64, out: &mut dyn Write) -> Result<Passed, CliError> {
    let j = inertia(&args.state.inertia)?;
    let m0 = initial_state(&args.state, seed)?;
    if args.bound.is_nan() || args.bound < 0.0 {
        return Err(CliError::config("--bound must be non-negative"));
    }
    let config = so5_core::dynamics::IntegrationConfig::new(args.dt, args.steps)
        .with_scheme(args.scheme.into())
        .with_stride(args.stride);
    let traj = integrate(&m0, &j, &config)?;
    if let Some(path) = &args.csv {
        let file = File::create(path)
            .map_err(|e| CliError::config(format!("cannot create {}: {e}", path.display())))?;
        let mut w = BufWriter::new(file);
        write_csv(&traj, &mut w)?;
        w.flush()?;
    }
    let conservation = conservation_report(&traj, &j)?;
    let max_drift = conservation.max_drift();
    let passed = conservation.within(args.bound);
    let report = SimulateReport {
        lambdas: j.lambdas().to_vec(),
        initial: so5_core::lie::so5::matrix_to_coords(&m0)?.0,
        scheme: config.scheme,
        dt: config.dt,
        steps: config.steps,
        stride: config.stride,
        max_deviation: traj.max_deviation(&m0)?,
        bound: args.bound,
        max_drift,
        passed,
        conservation,
    };
    write_json(out, &report)?;
    if !passed {
        log::error!("max drift {max_drift:e} exceeds bound {:e}", args.bound);
    }
    Ok(passed)
}

#[derive(Serialize)]
struct EquilibriaReport {
    count: usize,
    max_residual: f64,
    /// Largest relative deviation of (C₁, C₂) from the requested orbit.
    max_casimir_error: f64,
    catalog: Catalog,
}

pub fn equilibria(args: &OrbitArgs, out: &mut dyn Write) -> Result<Passed, CliError> {
    let j = inertia(&args.inertia)?;
    let inv = orbit(args.c1, args.c2)?;
    let families: Vec<usize> = if args.families.is_empty() {
        (1..=15).collect()
    } else {
        args.families.clone()
    };
    let cat = catalog(&j, &inv, &families)?;
    let max_residual = cat.points.iter().map(|p| p.residual).fold(0.0, f64::max);
    let max_casimir_error = cat
        .points
        .iter()
        .map(|p| {
            ((p.casimirs[0] - inv.c1).abs() / inv.c1).max((p.casimirs[1] - inv.c2).abs() / inv.c2)
        })
        .fold(0.0, f64::max);
    write_json(
        out,
        &EquilibriaReport {
            count: cat.points.len(),
            max_residual,
            max_casimir_error,
            catalog: cat,
        },
    )?;
    Ok(true)
}

#[derive(Serialize)]
struct SpecialCondition {
    t6: bool,
    t7: bool,
}

#[derive(Serialize)]
struct ClassifyReport {
    lambdas: Vec<f64>,
    c1: f64,
    c2: f64,
    special_condition: SpecialCondition,
    rows: Vec<RowVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mismatches: Option<Vec<Mismatch>>,
}

pub fn classify(args: &ClassifyArgs, out: &mut dyn Write) -> Result<Passed, CliError> {
    let o = &args.orbit;
    if o.inertia.lambdas.len() != 5 {
        return Err(CliError::config(format!(
            "--lambdas needs 5 values, got {}",
            o.inertia.lambdas.len()
        )));
    }
    let j = InertiaSpec::ordered_so5(o.inertia.lambdas.clone())?;
    let inv = orbit(o.c1, o.c2)?;
    let rows = classify_orbit(&j, &inv, &o.families)?;
    let mismatches = match args.expect {
        Some(_) => Some(diff_expectations(&rows, &j, &inv)?),
        None => None,
    };
    let passed = mismatches.as_ref().map_or(true, Vec::is_empty);
    for m in mismatches.iter().flatten() {
        log::error!(
            "t{} ({}) expected {} but got {}",
            m.family,
            m.class,
            m.expected,
            m.got
        );
    }
    write_json(
        out,
        &ClassifyReport {
            lambdas: j.lambdas().to_vec(),
            c1: inv.c1,
            c2: inv.c2,
            special_condition: SpecialCondition {
                t6: special_condition(6, &inv, &j)?,
                t7: special_condition(7, &inv, &j)?,
            },
            rows,
            mismatches,
        },
    )?;
    Ok(passed)
}

pub fn verify(args: &VerifyArgs, seed: u64, out: &mut dyn Write) -> Result<Passed, CliError> {
    let suites: Vec<Suite> = if args.suite.is_empty() {
        Suite::ALL.to_vec()
    } else {
        args.suite.clone()
    };
    let mut config = VerifyConfig {
        seed,
        samples: args.samples,
        ..VerifyConfig::default()
    };
    if !args.dims.is_empty() {
        config.dims = args.dims.clone();
    }
    let report: VerifyReport = run_suites(&suites, &config)?;
    for s in report.suites.iter().filter(|s| !s.passed) {
        log::error!(
            "{}: max error {:e} above {:e}",
            s.suite,
            s.max_error,
            s.tolerance
        );
    }
    write_json(out, &report)?;
    Ok(report.passed)
}

pub fn integrals(args: &IntegralsArgs, seed: u64, out: &mut dyn Write) -> Result<Passed, CliError> {
    let j = inertia(&args.state.inertia)?;
    let m = initial_state(&args.state, seed)?;
    write_json(out, &InvariantSnapshot::evaluate(&m, &j)?)?;
    Ok(true)
}
