//! Energy-Casimir test: G = Σ ±F_i + m C₁ + n C₂ with dG = 0 at the
//! equilibrium, then the sign of its Hessian on the orbit tangent space.

use std::fmt;
use std::str::FromStr;

use nalgebra::{DMatrix, Matrix2, SymmetricEigen, Vector2};
use serde::{Deserialize, Serialize};

use super::linear::{orbit_tangent_basis, Basis8};
use crate::error::{Error, Result};
use crate::invariants::Integral;
use crate::lie::so5::{self, matrix_to_coords, Mat10, Vec10};
use crate::lie::{InertiaSpec, SkewMatrix};

const SINGULAR_RATIO: f64 = 1e-12;
/// ‖dG‖ ≤ CRITICAL_TOL · (1 + ‖Σ ±∇F_i‖) counts as a critical point.
pub const CRITICAL_TOL: f64 = 1e-12;
/// Eigenvalues within this fraction of max|eig| of zero are treated as zero.
pub const DEFINITE_MARGIN: f64 = 1e-10;

/// A signed selection of generator integrals such as F₁ + F₅ or F₁ − F₄.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorCombo {
    /// (sign, 1-based generator index)
    terms: Vec<(i8, usize)>,
}

impl GeneratorCombo {
    pub fn new(terms: Vec<(i8, usize)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("empty generator combination".into()));
        }
        for &(s, i) in &terms {
            if s != 1 && s != -1 {
                return Err(Error::InvalidArgument(format!("sign {s} is not +1 or -1")));
            }
            if !(1..=5).contains(&i) {
                return Err(Error::IndexOutOfRange {
                    what: "generator",
                    index: i,
                    max: 5,
                });
            }
        }
        Ok(Self { terms })
    }

    /// F_i + s F_j.
    pub fn pair(i: usize, s: i8, j: usize) -> Self {
        Self::new(vec![(1, i), (s, j)]).expect("indices are in range")
    }

    pub fn terms(&self) -> &[(i8, usize)] {
        &self.terms
    }

    fn gradient(&self, c: &crate::Coordinates10, j: &InertiaSpec) -> Result<Vec10> {
        let mut g = Vec10::zeros();
        for &(s, i) in &self.terms {
            g += Integral::F(i).gradient(c, j)? * f64::from(s);
        }
        Ok(g)
    }

    fn hessian(&self, c: &crate::Coordinates10, j: &InertiaSpec) -> Result<Mat10> {
        let mut h = Mat10::zeros();
        for &(s, i) in &self.terms {
            h += Integral::F(i).hessian(c, j)? * f64::from(s);
        }
        Ok(h)
    }
}

impl fmt::Display for GeneratorCombo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, &(s, i)) in self.terms.iter().enumerate() {
            match (n, s) {
                (0, -1) => f.write_str("-")?,
                (0, _) => {}
                (_, -1) => f.write_str("-")?,
                _ => f.write_str("+")?,
            }
            write!(f, "F{i}")?;
        }
        Ok(())
    }
}

impl FromStr for GeneratorCombo {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("cannot parse generator combination '{s}'"));
        let key: String = s
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| if c == '\u{2212}' { '-' } else { c })
            .collect();
        let mut terms = Vec::new();
        let mut rest = key.as_str();
        while !rest.is_empty() {
            let (sign, tail) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ if terms.is_empty() => (1, rest),
                _ => return Err(bad()),
            };
            let tail = tail.strip_prefix('F').ok_or_else(bad)?;
            let end = tail.find(['+', '-']).unwrap_or(tail.len());
            let index: usize = tail[..end].parse().map_err(|_| bad())?;
            terms.push((sign, index));
            rest = &tail[end..];
        }
        Self::new(terms)
    }
}

impl Serialize for GeneratorCombo {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GeneratorCombo {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

/// F_i ± F_j for i < j, in the order F1+F2, F1-F2, F1+F3, …, F4-F5.
pub fn pair_combos() -> Vec<GeneratorCombo> {
    let mut out = Vec::with_capacity(20);
    for i in 1..=5 {
        for j in (i + 1)..=5 {
            out.push(GeneratorCombo::pair(i, 1, j));
            out.push(GeneratorCombo::pair(i, -1, j));
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    Negative,
    Positive,
    Indefinite,
    /// dG could not be made to vanish; no Hessian verdict.
    NotCritical,
}

impl Definiteness {
    pub fn is_definite(self) -> bool {
        matches!(self, Definiteness::Negative | Definiteness::Positive)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArnoldCertificate {
    pub combo: GeneratorCombo,
    pub m: f64,
    pub n: f64,
    /// ‖dG‖ after solving for (m, n).
    pub gradient_residual: f64,
    pub gradient_scale: f64,
    /// Restricted Hessian eigenvalues, ascending.
    pub hessian_eigenvalues: Vec<f64>,
    /// Leading principal minors D₁…D₈, present when the tangent basis is
    /// made of coordinate directions.
    pub minors: Option<Vec<f64>>,
    pub definiteness: Definiteness,
}

impl ArnoldCertificate {
    /// Signs of the leading minors as a string like "-+-+-+-+".
    pub fn minor_signs(&self) -> Option<String> {
        self.minors.as_ref().map(|d| {
            d.iter()
                .map(|x| match x.partial_cmp(&0.0) {
                    Some(std::cmp::Ordering::Greater) => '+',
                    Some(std::cmp::Ordering::Less) => '-',
                    _ => '0',
                })
                .collect()
        })
    }
}

/// Least-squares (m, n) for ∇F + m∇C₁ + n∇C₂ = 0.
pub fn solve_multipliers(g: &Vec10, g1: &Vec10, g2: &Vec10) -> Result<(f64, f64)> {
    let a = Matrix2::new(g1.dot(g1), g1.dot(g2), g2.dot(g1), g2.dot(g2));
    let det = a.determinant();
    let ratio = det.abs() / (a[(0, 0)] * a[(1, 1)]);
    if ratio.is_nan() || ratio < SINGULAR_RATIO {
        return Err(Error::SingularMultipliers(ratio));
    }
    let rhs = -Vector2::new(g1.dot(g), g2.dot(g));
    let x = a.try_inverse().ok_or(Error::SingularMultipliers(ratio))? * rhs;
    Ok((x[0], x[1]))
}

fn coordinate_aligned(p: &Basis8) -> bool {
    p.column_iter().all(|col| {
        let big = col.iter().filter(|x| x.abs() > 1e-12).count();
        big == 1 && col.iter().any(|x| (x.abs() - 1.0).abs() < 1e-12)
    })
}

pub fn classify_hessian(eigenvalues: &[f64]) -> Definiteness {
    let scale = eigenvalues.iter().fold(0.0_f64, |a, x| a.max(x.abs()));
    let margin = DEFINITE_MARGIN * scale;
    if scale == 0.0 {
        Definiteness::Indefinite
    } else if eigenvalues.iter().all(|&x| x < -margin) {
        Definiteness::Negative
    } else if eigenvalues.iter().all(|&x| x > margin) {
        Definiteness::Positive
    } else {
        Definiteness::Indefinite
    }
}

/// Runs the energy-Casimir test at `m` for the given combination.
pub fn arnold_test(
    m: &SkewMatrix,
    j: &InertiaSpec,
    combo: &GeneratorCombo,
) -> Result<ArnoldCertificate> {
    let c = matrix_to_coords(m)?;
    let gf = combo.gradient(&c, j)?;
    let g1 = so5::grad_c1(&c);
    let g2 = so5::grad_c2(&c);
    let (mu, nu) = solve_multipliers(&gf, &g1, &g2)?;
    let residual = (gf + g1 * mu + g2 * nu).norm();
    let scale = 1.0 + gf.norm();

    let h = combo.hessian(&c, j)? + Mat10::identity() * mu + so5::hessian_c2(&c) * nu;
    let p = orbit_tangent_basis(m)?;
    let hr = p.transpose() * h * p;
    let hr = (hr + hr.transpose()) * 0.5;
    let mut eig: Vec<f64> = SymmetricEigen::new(hr)
        .eigenvalues
        .iter()
        .copied()
        .collect();
    eig.sort_by(f64::total_cmp);

    let minors = coordinate_aligned(&p).then(|| {
        (1..=8)
            .map(|k| DMatrix::from_fn(k, k, |r, s| hr[(r, s)]).determinant())
            .collect()
    });
    let definiteness = if residual > CRITICAL_TOL * scale {
        Definiteness::NotCritical
    } else {
        classify_hessian(&eig)
    };
    Ok(ArnoldCertificate {
        combo: combo.clone(),
        m: mu,
        n: nu,
        gradient_residual: residual,
        gradient_scale: scale,
        hessian_eigenvalues: eig,
        minors,
        definiteness,
    })
}

/// Tries the prescribed combination first, then [`pair_combos`] in order.
/// Returns the first definite certificate (if any) together with every
/// non-definite attempt made before it.
pub fn search_definite(
    m: &SkewMatrix,
    j: &InertiaSpec,
    prescribed: Option<&GeneratorCombo>,
) -> Result<(Option<ArnoldCertificate>, Vec<ArnoldCertificate>)> {
    let mut tried = Vec::new();
    let candidates = prescribed
        .into_iter()
        .cloned()
        .chain(pair_combos().into_iter().filter(|c| Some(c) != prescribed));
    for combo in candidates {
        match arnold_test(m, j, &combo) {
            Ok(cert) if cert.definiteness.is_definite() => return Ok((Some(cert), tried)),
            Ok(cert) => tried.push(cert),
            Err(Error::SingularMultipliers(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok((None, tried))
}
