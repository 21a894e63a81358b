//! Linear and nonlinear stability of the Cartan-slot equilibria.

pub mod arnold;
pub mod classify;
pub mod factors;
pub mod linear;

pub use arnold::{arnold_test, ArnoldCertificate, Definiteness, GeneratorCombo};
pub use classify::{
    classify_equilibrium, classify_orbit, diff_expectations, Evidence, RowStatus, RowVerdict,
    StabilityVerdict, Status,
};
pub use factors::{
    closed_forms, factor_coefficients, factor_match, special_condition, FactorMatch,
};
pub use linear::{restricted_spectrum, SpectrumReport};
