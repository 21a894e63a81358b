use thiserror::Error;

/// Errors raised by the library. Every variant names the violated rule so
/// that callers (the CLI in particular) can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid dimension {0}: so(n) requires n >= 3")]
    InvalidDimension(usize),

    #[error("dimension mismatch: expected n = {expected}, got n = {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("strict upper triangle for n = {n} needs {expected} entries, got {got}")]
    UpperLength {
        n: usize,
        expected: usize,
        got: usize,
    },

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("non-generic inertia: lambda_{i} + lambda_{j} = {sum} is not positive")]
    NonGenericInertia { i: usize, j: usize, sum: f64 },

    #[error("repeated inertia values: lambda_{i} = lambda_{j} = {value}")]
    RepeatedInertia { i: usize, j: usize, value: f64 },

    #[error(
        "inertia must be strictly decreasing (lambda_1 > ... > lambda_5): \
         lambda_{i} = {left} is not greater than lambda_{j} = {right}"
    )]
    UnorderedInertia {
        i: usize,
        j: usize,
        left: f64,
        right: f64,
    },

    #[error("{what} index {index} out of range 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },

    #[error(
        "orbit (c1 = {c1}, c2 = {c2}) is not regular: violates {violated} \
         (regular orbits need c1 > 0, c2 > 0 and 2c2 > c1^2 > c2)"
    )]
    NonRegularOrbit {
        c1: f64,
        c2: f64,
        violated: &'static str,
    },

    #[error("degenerate point: dC1 and dC2 are linearly dependent (singular value ratio {0:e})")]
    DegeneratePoint(f64),

    #[error("multiplier system for dG = 0 is singular (determinant ratio {0:e})")]
    SingularMultipliers(f64),

    #[error("point is not a Cartan-slot equilibrium")]
    NotCartan,

    #[error("non-finite state encountered at step {step}")]
    NonFiniteState { step: usize },

    #[error("iteration did not converge: {0}")]
    NoConvergence(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
