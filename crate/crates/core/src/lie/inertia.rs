use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Diagonal inertia parameters λ₁…λ_n of J.
///
/// Construction checks the generic-body conditions: every pair sum
/// λ_i + λ_j is positive and all values are distinct. The strict ordering
/// required by the so(5) stability analysis is a separate check,
/// [`InertiaSpec::ordered_so5`], because the flow itself does not need it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct InertiaSpec {
    lambdas: Vec<f64>,
}

impl InertiaSpec {
    pub fn new(lambdas: Vec<f64>) -> Result<Self> {
        let n = lambdas.len();
        if n < 3 {
            return Err(Error::InvalidDimension(n));
        }
        if lambdas.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("inertia"));
        }
        for i in 0..n {
            for j in i + 1..n {
                let sum = lambdas[i] + lambdas[j];
                if sum <= 0.0 {
                    return Err(Error::NonGenericInertia {
                        i: i + 1,
                        j: j + 1,
                        sum,
                    });
                }
                if lambdas[i] == lambdas[j] {
                    return Err(Error::RepeatedInertia {
                        i: i + 1,
                        j: j + 1,
                        value: lambdas[i],
                    });
                }
            }
        }
        Ok(Self { lambdas })
    }

    /// Same as [`InertiaSpec::new`] plus n = 5 and λ₁ > λ₂ > … > λ₅.
    /// Unordered input is rejected, never sorted.
    pub fn ordered_so5(lambdas: Vec<f64>) -> Result<Self> {
        if lambdas.len() != 5 {
            return Err(Error::DimensionMismatch {
                expected: 5,
                got: lambdas.len(),
            });
        }
        let spec = Self::new(lambdas)?;
        spec.check_ordered()?;
        Ok(spec)
    }

    pub fn check_ordered(&self) -> Result<()> {
        for (i, w) in self.lambdas.windows(2).enumerate() {
            if w[0] <= w[1] {
                return Err(Error::UnorderedInertia {
                    i: i + 1,
                    j: i + 2,
                    left: w[0],
                    right: w[1],
                });
            }
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.lambdas.len()
    }

    pub fn lambdas(&self) -> &[f64] {
        &self.lambdas
    }

    /// λ_i, 0-based.
    #[inline]
    pub fn get(&self, i: usize) -> f64 {
        self.lambdas[i]
    }

    #[inline]
    pub fn pair_sum(&self, i: usize, j: usize) -> f64 {
        self.lambdas[i] + self.lambdas[j]
    }

    pub fn min_pair_sum(&self) -> f64 {
        let n = self.dim();
        let mut best = f64::INFINITY;
        for i in 0..n {
            for j in i + 1..n {
                best = best.min(self.pair_sum(i, j));
            }
        }
        best
    }

    pub(crate) fn check_dim(&self, n: usize) -> Result<()> {
        if self.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: n,
            });
        }
        Ok(())
    }
}

impl TryFrom<Vec<f64>> for InertiaSpec {
    type Error = Error;

    fn try_from(v: Vec<f64>) -> Result<Self> {
        InertiaSpec::new(v)
    }
}

impl From<InertiaSpec> for Vec<f64> {
    fn from(spec: InertiaSpec) -> Vec<f64> {
        spec.lambdas
    }
}
