//! Seeded identity suites shared by the `verify` command and the tests.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{
    generator_integrals, manakov_k3, manakov_k3_trace, mishchenko_integral, poisson_bracket,
    Integral, INVOLUTIVE,
};
use crate::lie::so5::{self, coords_to_matrix, matrix_to_coords};
use crate::lie::{hamiltonian, hamiltonian_trace, rigid_body_rhs};
use crate::sampling;
use crate::stability::linear::{jacobian, jacobian_commutator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    /// m_r = Σ λ_i^r F_i for r = 1..=n.
    GeneratorIdentity,
    /// Γ∇C₁ = Γ∇C₂ = 0 and Γ∇H equals the vector field.
    PoissonStructure,
    /// Pairwise brackets of H, C₁, C₂, K₁, K₂, K₃ vanish.
    PoissonCommutation,
    /// Quantities with two independent implementations agree.
    TwoPath,
    /// The bracket table matches matrix commutators.
    BracketTable,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::GeneratorIdentity,
        Suite::PoissonStructure,
        Suite::PoissonCommutation,
        Suite::TwoPath,
        Suite::BracketTable,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::GeneratorIdentity => "generator-identity",
            Suite::PoissonStructure => "poisson-structure",
            Suite::PoissonCommutation => "poisson-commutation",
            Suite::TwoPath => "two-path",
            Suite::BracketTable => "bracket-table",
        }
    }

    pub fn tolerance(self) -> f64 {
        match self {
            Suite::GeneratorIdentity => 1e-10,
            Suite::BracketTable => 0.0,
            _ => 1e-12,
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub seed: u64,
    pub samples: usize,
    /// Dimensions for the generator identity.
    pub dims: Vec<usize>,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            samples: 200,
            dims: (4..=8).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub checks: usize,
    /// Largest scaled error over all checks.
    pub max_error: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub seed: u64,
    pub suites: Vec<SuiteReport>,
    pub passed: bool,
}

struct Tally {
    checks: usize,
    max_error: f64,
}

impl Tally {
    fn new() -> Self {
        Self {
            checks: 0,
            max_error: 0.0,
        }
    }

    fn record(&mut self, err: f64) {
        self.checks += 1;
        // NaN must fail the suite
        self.max_error = if err.is_nan() {
            f64::INFINITY
        } else {
            self.max_error.max(err)
        };
    }
}

pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<SuiteReport> {
    let mut rng = sampling::rng_from_seed(config.seed ^ (suite.stream() << 32));
    let mut t = Tally::new();
    match suite {
        Suite::GeneratorIdentity => {
            for &n in &config.dims {
                if n < 3 {
                    return Err(Error::InvalidDimension(n));
                }
                for _ in 0..config.samples {
                    let j = sampling::random_inertia(&mut rng, n);
                    let m = sampling::random_skew(&mut rng, n);
                    let f = generator_integrals(&m, &j)?;
                    for r in 1..=n as u32 {
                        let mr = mishchenko_integral(&m, &j, r)?;
                        let sum: f64 = j
                            .lambdas()
                            .iter()
                            .zip(&f)
                            .map(|(l, fi)| l.powi(r as i32) * fi)
                            .sum();
                        t.record((mr - sum).abs() / (1.0 + mr.abs()));
                    }
                }
            }
        }
        Suite::PoissonStructure => {
            for _ in 0..config.samples {
                let j = sampling::random_inertia(&mut rng, 5);
                let c = sampling::random_coords(&mut rng, 3.0);
                let g = so5::poisson_tensor(&c);
                let gn = g.norm();
                for grad in [so5::grad_c1(&c), so5::grad_c2(&c)] {
                    t.record((g * grad).norm() / (gn * grad.norm()));
                }
                let gh = so5::grad_hamiltonian(&c, &j)?;
                let rhs = so5::rhs_coords(&c, &j)?.to_vector();
                t.record((g * gh - rhs).norm() / (gn * gh.norm()));
            }
        }
        Suite::PoissonCommutation => {
            for _ in 0..config.samples {
                let j = sampling::random_inertia(&mut rng, 5);
                let c = sampling::random_coords(&mut rng, 2.0);
                let g = so5::poisson_tensor(&c);
                for (a, &f) in INVOLUTIVE.iter().enumerate() {
                    for &h in &INVOLUTIVE[a + 1..] {
                        let scale =
                            f.gradient(&c, &j)?.norm() * g.norm() * h.gradient(&c, &j)?.norm();
                        t.record(
                            poisson_bracket(f, h, &c, &j)?.abs() / scale.max(f64::MIN_POSITIVE),
                        );
                    }
                }
                // the F_i are integrals too
                for i in 1..=5 {
                    let f = Integral::F(i);
                    let scale = f.gradient(&c, &j)?.norm()
                        * g.norm()
                        * Integral::H.gradient(&c, &j)?.norm();
                    t.record(
                        poisson_bracket(f, Integral::H, &c, &j)?.abs()
                            / scale.max(f64::MIN_POSITIVE),
                    );
                }
            }
        }
        Suite::TwoPath => {
            let rel = |a: f64, b: f64| (a - b).abs() / (1.0 + a.abs());
            for _ in 0..config.samples {
                let j = sampling::random_inertia(&mut rng, 5);
                let c = sampling::random_coords(&mut rng, 2.0);
                let m = coords_to_matrix(&c);
                let via_matrix = matrix_to_coords(&rigid_body_rhs(&m, &j)?)?.to_vector();
                let via_components = so5::rhs_coords(&c, &j)?.to_vector();
                t.record((via_matrix - via_components).norm() / (1.0 + via_matrix.norm()));
                t.record(rel(hamiltonian(&m, &j)?, hamiltonian_trace(&m, &j)?));
                t.record(rel(hamiltonian(&m, &j)?, so5::hamiltonian_coords(&c, &j)?));
                t.record(rel(manakov_k3(&m, &j)?, manakov_k3_trace(&m, &j)?));
                let (c1, c2) = crate::invariants::casimirs(&m)?;
                t.record(rel(c1, so5::c1_coords(&c)));
                t.record(rel(c2, so5::c2_coords(&c)));
                let a = jacobian(&m, &j)?;
                t.record((a - jacobian_commutator(&m, &j)?).norm() / (1.0 + a.norm()));
            }
        }
        Suite::BracketTable => {
            for a in 1..=10 {
                for b in 1..=10 {
                    let direct = so5::basis(a)?.commutator(&so5::basis(b)?)?;
                    let table = coords_to_matrix(&so5::bracket_from_table(a, b)?);
                    t.record((&direct - &table).max_abs());
                }
            }
        }
    }
    Ok(SuiteReport {
        suite,
        checks: t.checks,
        max_error: t.max_error,
        tolerance: suite.tolerance(),
        passed: t.max_error <= suite.tolerance(),
    })
}

pub fn run_suites(suites: &[Suite], config: &VerifyConfig) -> Result<VerifyReport> {
    let reports = suites
        .iter()
        .map(|&s| run_suite(s, config))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerifyReport {
        seed: config.seed,
        passed: reports.iter().all(|r| r.passed),
        suites: reports,
    })
}
