//! Conserved quantities: Casimirs, Mishchenko integrals m_r, the generator
//! integrals F_i with m_r = Σ λ_i^r F_i, and the Manakov integrals K₁–K₃.

use std::fmt;

use nalgebra::Matrix5;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lie::so5::{
    self, coords_to_dense5, dense5_to_coords, Coordinates10, Mat10, Vec10, LAYOUT,
};
use crate::lie::{hamiltonian, InertiaSpec, SkewMatrix};

fn require_n5(m: &SkewMatrix) -> Result<()> {
    if m.dim() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: m.dim(),
        });
    }
    Ok(())
}

fn require_distinct(j: &InertiaSpec) -> Result<()> {
    let l = j.lambdas();
    for a in 0..l.len() {
        for b in a + 1..l.len() {
            // λ_a = −λ_b would also zero λ_a² − λ_b², but that pair sum is
            // excluded by InertiaSpec.
            if l[a] * l[a] == l[b] * l[b] {
                return Err(Error::RepeatedInertia {
                    i: a + 1,
                    j: b + 1,
                    value: l[a],
                });
            }
        }
    }
    Ok(())
}

/// Σ_{i<j} w(i, j) m_ij².
fn weighted_square_sum(m: &SkewMatrix, w: impl Fn(usize, usize) -> f64) -> f64 {
    let n = m.dim();
    let mut s = 0.0;
    for i in 0..n {
        for k in i + 1..n {
            let v = m.get(i, k);
            s += w(i, k) * v * v;
        }
    }
    s
}

/// (c₁, c₂) = (−¼ Tr M², ⅛ Tr M⁴).
pub fn casimirs(m: &SkewMatrix) -> Result<(f64, f64)> {
    require_n5(m)?;
    let d = so5::dense5(m);
    let d2 = d * d;
    Ok((-0.25 * d2.trace(), 0.125 * (d2 * d2).trace()))
}

/// m_r = Σ_{i<k} (λ_i^r − λ_k^r)/(λ_i² − λ_k²) m_ik².
pub fn mishchenko_integral(m: &SkewMatrix, j: &InertiaSpec, r: u32) -> Result<f64> {
    j.check_dim(m.dim())?;
    require_distinct(j)?;
    if r == 0 {
        return Err(Error::InvalidArgument(
            "Mishchenko order r must be >= 1".into(),
        ));
    }
    let l = j.lambdas();
    let r = r as i32;
    Ok(weighted_square_sum(m, |a, b| {
        (l[a].powi(r) - l[b].powi(r)) / (l[a] * l[a] - l[b] * l[b])
    }))
}

/// F_i = Σ_{k≠i} m_ik² / (λ_i² − λ_k²), `i` 1-based.
pub fn generator_integral(m: &SkewMatrix, j: &InertiaSpec, i: usize) -> Result<f64> {
    j.check_dim(m.dim())?;
    require_distinct(j)?;
    let n = m.dim();
    if !(1..=n).contains(&i) {
        return Err(Error::IndexOutOfRange {
            what: "generator",
            index: i,
            max: n,
        });
    }
    let i = i - 1;
    let li = j.get(i);
    Ok((0..n)
        .filter(|&k| k != i)
        .map(|k| {
            let v = m.get(i, k);
            v * v / (li * li - j.get(k) * j.get(k))
        })
        .sum())
}

pub fn generator_integrals(m: &SkewMatrix, j: &InertiaSpec) -> Result<Vec<f64>> {
    (1..=m.dim()).map(|i| generator_integral(m, j, i)).collect()
}

/// ½ Σ_{i<k} (λ_i² + λ_k²) m_ik².
pub fn manakov_k1(m: &SkewMatrix, j: &InertiaSpec) -> Result<f64> {
    require_n5(m)?;
    j.check_dim(5)?;
    let l = j.lambdas();
    Ok(0.5 * weighted_square_sum(m, |a, b| l[a] * l[a] + l[b] * l[b]))
}

/// ½ Σ_{i<k} (λ_i⁴ + λ_i²λ_k² + λ_k⁴) m_ik².
pub fn manakov_k2(m: &SkewMatrix, j: &InertiaSpec) -> Result<f64> {
    require_n5(m)?;
    j.check_dim(5)?;
    let l = j.lambdas();
    Ok(0.5
        * weighted_square_sum(m, |a, b| {
            let (p, q) = (l[a] * l[a], l[b] * l[b]);
            p * p + p * q + q * q
        }))
}

/// The five quartic blocks T₁…T₅ in coordinates.
pub fn k3_blocks(c: &Coordinates10) -> [f64; 5] {
    let [x1, x2, x3, y1, y2, y3, z1, z2, z3, z4] = c.0;
    let sq = |v: f64| v * v;
    let p_yz = sq(y1 * z1 + y2 * z2 + y3 * z3);
    let q1 = sq(x2 * y3 - x3 * y2 - z1 * z4);
    let q2 = sq(x3 * y1 - x1 * y3 - z2 * z4);
    let q3 = sq(x1 * y2 - x2 * y1 - z3 * z4);
    let r1 = sq(x3 * z2 - x2 * z3 - y1 * z4);
    let r2 = sq(x1 * z3 - x3 * z1 - y2 * z4);
    let r3 = sq(x2 * z1 - x1 * z2 - y3 * z4);
    let s12 = sq(x1 * x2 - y1 * y2 - z1 * z2);
    let s13 = sq(x1 * x3 - y1 * y3 - z1 * z3);
    let s23 = sq(x2 * x3 - y2 * y3 - z2 * z3);
    [
        r1 + q1 + s13 + s12 + sq(x2 * x2 + x3 * x3 + y1 * y1 + z1 * z1),
        r2 + q2 + s23 + s12 + sq(x1 * x1 + x3 * x3 + y2 * y2 + z2 * z2),
        r3 + q3 + s13 + s23 + sq(x1 * x1 + x2 * x2 + y3 * y3 + z3 * z3),
        p_yz + q2 + q1 + q3 + sq(y1 * y1 + y2 * y2 + y3 * y3 + z4 * z4),
        r1 + r2 + r3 + p_yz + sq(z1 * z1 + z2 * z2 + z3 * z3 + z4 * z4),
    ]
}

/// K₃ = (1/10) Σ_j T_j λ_j².
pub fn manakov_k3(m: &SkewMatrix, j: &InertiaSpec) -> Result<f64> {
    require_n5(m)?;
    j.check_dim(5)?;
    let t = k3_blocks(&so5::matrix_to_coords(m)?);
    Ok(0.1 * (0..5).map(|i| t[i] * j.get(i) * j.get(i)).sum::<f64>())
}

fn diag_power(j: &InertiaSpec, p: i32) -> Matrix5<f64> {
    Matrix5::from_diagonal(&nalgebra::Vector5::from_fn(|i, _| j.get(i).powi(p)))
}

/// −¼ Tr Σ_{p=0}^{q} J^p M J^{q−p} Ω; q = 3 gives K₁ and q = 5 gives K₂.
pub fn mishchenko_trace_form(m: &SkewMatrix, j: &InertiaSpec, q: i32) -> Result<f64> {
    require_n5(m)?;
    j.check_dim(5)?;
    let md = so5::dense5(m);
    let omega = so5::dense5(&crate::lie::omega_from_momentum(m, j)?);
    let mut total = 0.0;
    for p in 0..=q {
        total += (diag_power(j, p) * md * diag_power(j, q - p) * omega).trace();
    }
    Ok(-0.25 * total)
}

/// Tr(M⁴ J²) / 10; the diagonal of M⁴ reproduces T₁…T₅.
pub fn manakov_k3_trace(m: &SkewMatrix, j: &InertiaSpec) -> Result<f64> {
    require_n5(m)?;
    j.check_dim(5)?;
    let md = so5::dense5(m);
    let m2 = md * md;
    Ok(0.1 * (m2 * m2 * diag_power(j, 2)).trace())
}

/// Coefficients of γ⁰…γ^r in Tr(M + γJ²)^r / (2r), for r in 2..=5.
pub fn manakov_expansion(m: &SkewMatrix, j: &InertiaSpec, r: usize) -> Result<Vec<f64>> {
    require_n5(m)?;
    j.check_dim(5)?;
    if !(2..=5).contains(&r) {
        return Err(Error::InvalidArgument(format!(
            "expansion power r = {r} outside 2..=5"
        )));
    }
    let md = so5::dense5(m);
    let d = diag_power(j, 2);
    // coefficient matrices of the matrix polynomial (M + γD)^k
    let mut poly: Vec<Matrix5<f64>> = vec![Matrix5::identity()];
    for _ in 0..r {
        let mut next = vec![Matrix5::<f64>::zeros(); poly.len() + 1];
        for (p, a) in poly.iter().enumerate() {
            next[p] += a * md;
            next[p + 1] += a * d;
        }
        poly = next;
    }
    let scale = 1.0 / (2 * r) as f64;
    Ok(poly.iter().map(|a| a.trace() * scale).collect())
}

/// A named so(5) integral evaluated in coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Integral {
    H,
    C1,
    C2,
    K1,
    K2,
    K3,
    /// Generator integral, 1-based index.
    F(usize),
    /// Mishchenko integral m_r.
    Mishchenko(u32),
}

impl fmt::Display for Integral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integral::H => f.write_str("H"),
            Integral::C1 => f.write_str("C1"),
            Integral::C2 => f.write_str("C2"),
            Integral::K1 => f.write_str("K1"),
            Integral::K2 => f.write_str("K2"),
            Integral::K3 => f.write_str("K3"),
            Integral::F(i) => write!(f, "F{i}"),
            Integral::Mishchenko(r) => write!(f, "m{r}"),
        }
    }
}

/// H, C₁, C₂, K₁, K₂, K₃, F₁…F₅.
pub const TRACKED: [Integral; 11] = [
    Integral::H,
    Integral::C1,
    Integral::C2,
    Integral::K1,
    Integral::K2,
    Integral::K3,
    Integral::F(1),
    Integral::F(2),
    Integral::F(3),
    Integral::F(4),
    Integral::F(5),
];

/// The six mutually commuting, functionally independent integrals.
pub const INVOLUTIVE: [Integral; 6] = [
    Integral::H,
    Integral::C1,
    Integral::C2,
    Integral::K1,
    Integral::K2,
    Integral::K3,
];

impl Integral {
    pub fn degree(self) -> i32 {
        match self {
            Integral::C2 | Integral::K3 => 4,
            _ => 2,
        }
    }

    /// Per-coordinate weights w_k of quadratic integrals Σ w_k c_k².
    fn quadratic_weights(self, j: &InertiaSpec) -> Result<Option<[f64; 10]>> {
        j.check_dim(5)?;
        let sq = |a: usize| j.get(a) * j.get(a);
        let w = |f: &dyn Fn(usize, usize) -> f64| -> [f64; 10] {
            std::array::from_fn(|k| {
                let (a, b, _) = LAYOUT[k];
                f(a, b)
            })
        };
        Ok(Some(match self {
            Integral::H => w(&|a, b| 0.5 / j.pair_sum(a, b)),
            Integral::C1 => [0.5; 10],
            Integral::K1 => w(&|a, b| 0.5 * (sq(a) + sq(b))),
            Integral::K2 => w(&|a, b| 0.5 * (sq(a) * sq(a) + sq(a) * sq(b) + sq(b) * sq(b))),
            Integral::F(i) => {
                require_distinct(j)?;
                if !(1..=5).contains(&i) {
                    return Err(Error::IndexOutOfRange {
                        what: "generator",
                        index: i,
                        max: 5,
                    });
                }
                let i = i - 1;
                w(&|a, b| {
                    if a == i {
                        1.0 / (sq(a) - sq(b))
                    } else if b == i {
                        1.0 / (sq(b) - sq(a))
                    } else {
                        0.0
                    }
                })
            }
            Integral::Mishchenko(r) => {
                require_distinct(j)?;
                if r == 0 {
                    return Err(Error::InvalidArgument(
                        "Mishchenko order r must be >= 1".into(),
                    ));
                }
                let r = r as i32;
                w(&|a, b| (j.get(a).powi(r) - j.get(b).powi(r)) / (sq(a) - sq(b)))
            }
            Integral::C2 | Integral::K3 => return Ok(None),
        }))
    }

    pub fn value(self, c: &Coordinates10, j: &InertiaSpec) -> Result<f64> {
        if let Some(w) = self.quadratic_weights(j)? {
            return Ok((0..10).map(|k| w[k] * c[k] * c[k]).sum());
        }
        Ok(match self {
            Integral::C2 => so5::c2_coords(c),
            _ => {
                let t = k3_blocks(c);
                0.1 * (0..5).map(|i| t[i] * j.get(i) * j.get(i)).sum::<f64>()
            }
        })
    }

    pub fn gradient(self, c: &Coordinates10, j: &InertiaSpec) -> Result<Vec10> {
        if let Some(w) = self.quadratic_weights(j)? {
            return Ok(Vec10::from_fn(|k, _| 2.0 * w[k] * c[k]));
        }
        Ok(match self {
            Integral::C2 => so5::grad_c2(c),
            _ => {
                // ∇K₃ = −(1/5) Σ_{a=0}^{3} M^{3−a} J² M^a
                let m = coords_to_dense5(c);
                let d = diag_power(j, 2);
                let powers = [Matrix5::identity(), m, m * m, m * m * m];
                let mut acc = Matrix5::zeros();
                for a in 0..4 {
                    acc += powers[3 - a] * d * powers[a];
                }
                dense5_to_coords(&(acc * -0.2)).to_vector()
            }
        })
    }

    pub fn hessian(self, c: &Coordinates10, j: &InertiaSpec) -> Result<Mat10> {
        if let Some(w) = self.quadratic_weights(j)? {
            return Ok(Mat10::from_diagonal(&Vec10::from_fn(|k, _| 2.0 * w[k])));
        }
        Ok(match self {
            Integral::C2 => so5::hessian_c2(c),
            _ => k3_hessian(c, j),
        })
    }
}

/// Second derivative of Tr(M⁴J²)/10: every ordered choice of two of the
/// four M slots receives the pair of directions.
fn k3_hessian(c: &Coordinates10, j: &InertiaSpec) -> Mat10 {
    let m = coords_to_dense5(c);
    let d = diag_power(j, 2);
    let e: [Matrix5<f64>; 10] = std::array::from_fn(|k| {
        let mut u = Coordinates10::ZERO;
        u[k] = 1.0;
        coords_to_dense5(&u)
    });
    let mut h = Mat10::zeros();
    for a in 0..10 {
        for b in a..10 {
            let mut tr = 0.0;
            for p in 0..4 {
                for q in 0..4 {
                    if p == q {
                        continue;
                    }
                    let mut prod = Matrix5::identity();
                    for s in 0..4 {
                        let f = if s == p {
                            &e[a]
                        } else if s == q {
                            &e[b]
                        } else {
                            &m
                        };
                        prod *= f;
                    }
                    tr += (prod * d).trace();
                }
            }
            h[(a, b)] = 0.1 * tr;
            h[(b, a)] = 0.1 * tr;
        }
    }
    h
}

/// {F, G} = ∇Fᵀ Γ₋ ∇G.
pub fn poisson_bracket(
    f: Integral,
    g: Integral,
    c: &Coordinates10,
    j: &InertiaSpec,
) -> Result<f64> {
    let gf = f.gradient(c, j)?;
    let gg = g.gradient(c, j)?;
    Ok(gf.dot(&(so5::poisson_tensor(c) * gg)))
}

/// One-shot evaluation of the so(5) integrals at a state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantSnapshot {
    #[serde(rename = "H")]
    pub h: f64,
    #[serde(rename = "C1")]
    pub c1: f64,
    #[serde(rename = "C2")]
    pub c2: f64,
    #[serde(rename = "K1")]
    pub k1: f64,
    #[serde(rename = "K2")]
    pub k2: f64,
    #[serde(rename = "K3")]
    pub k3: f64,
    #[serde(rename = "F")]
    pub f: Vec<f64>,
    /// m_r for r = 1..=n.
    pub m: Vec<f64>,
}

impl InvariantSnapshot {
    pub fn evaluate(m: &SkewMatrix, j: &InertiaSpec) -> Result<Self> {
        require_n5(m)?;
        let (c1, c2) = casimirs(m)?;
        Ok(Self {
            h: hamiltonian(m, j)?,
            c1,
            c2,
            k1: manakov_k1(m, j)?,
            k2: manakov_k2(m, j)?,
            k3: manakov_k3(m, j)?,
            f: generator_integrals(m, j)?,
            m: (1..=m.dim() as u32)
                .map(|r| mishchenko_integral(m, j, r))
                .collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::so5::{coords_to_matrix, matrix_to_coords};

    fn lam0() -> InertiaSpec {
        InertiaSpec::new(vec![5.0, 4.0, 3.0, 2.0, 1.0]).unwrap()
    }

    fn m1_21() -> SkewMatrix {
        let mut m = SkewMatrix::zeros(5).unwrap();
        m.set(0, 1, 2.0).unwrap();
        m.set(2, 3, 1.0).unwrap();
        m
    }

    fn sample(seed: u32) -> SkewMatrix {
        coords_to_matrix(&Coordinates10(std::array::from_fn(|k| {
            ((seed as f64 + 0.4) * (k as f64 + 1.9)).cos()
        })))
    }

    #[test]
    fn reference_point_values() {
        let (m, j) = (m1_21(), lam0());
        assert_eq!(casimirs(&m).unwrap(), (2.5, 4.25));
        assert!((mishchenko_integral(&m, &j, 1).unwrap() - 29.0 / 45.0).abs() < 1e-15);
        assert!((generator_integral(&m, &j, 1).unwrap() - 4.0 / 9.0).abs() < 1e-15);
        assert!((generator_integral(&m, &j, 2).unwrap() + 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(manakov_k1(&m, &j).unwrap(), 88.5);
    }

    #[test]
    fn collapsed_orders() {
        let j = InertiaSpec::new(vec![3.0, 2.5, 1.0, 0.2, -0.1]).unwrap();
        let m = sample(4);
        let (c1, _) = casimirs(&m).unwrap();
        let m2 = mishchenko_integral(&m, &j, 2).unwrap();
        assert!((m2 - 2.0 * c1).abs() < 1e-14 * c1);
        let m1 = mishchenko_integral(&m, &j, 1).unwrap();
        assert!((m1 - 2.0 * hamiltonian(&m, &j).unwrap()).abs() < 1e-14 * m1.abs());
        let k1 = manakov_k1(&m, &j).unwrap();
        assert!((2.0 * k1 - mishchenko_integral(&m, &j, 4).unwrap()).abs() < 1e-13 * k1);
        let k2 = manakov_k2(&m, &j).unwrap();
        assert!((2.0 * k2 - mishchenko_integral(&m, &j, 6).unwrap()).abs() < 1e-13 * k2);
    }

    #[test]
    fn generator_identity_small_case() {
        let j = InertiaSpec::new(vec![2.0, 1.5, 0.9, 0.3]).unwrap();
        let m = SkewMatrix::from_fn(4, |a, b| (a + 2 * b) as f64 * 0.3 - 0.5).unwrap();
        let f = generator_integrals(&m, &j).unwrap();
        for r in 1..=4u32 {
            let lhs = mishchenko_integral(&m, &j, r).unwrap();
            let rhs: f64 = (0..4).map(|i| j.get(i).powi(r as i32) * f[i]).sum();
            assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + lhs.abs()));
        }
    }

    #[test]
    fn generator_index_and_repeat_errors() {
        let j = lam0();
        assert!(matches!(
            generator_integral(&m1_21(), &j, 6),
            Err(Error::IndexOutOfRange { index: 6, .. })
        ));
        assert!(generator_integral(&m1_21(), &j, 0).is_err());
        let z = SkewMatrix::zeros(5).unwrap();
        assert_eq!(generator_integrals(&z, &j).unwrap(), vec![0.0; 5]);
    }

    #[test]
    fn trace_forms_agree_with_quadratic_forms() {
        let j = InertiaSpec::new(vec![4.0, 3.1, 2.0, 1.4, 0.3]).unwrap();
        for s in 0..5 {
            let m = sample(s);
            let k1 = manakov_k1(&m, &j).unwrap();
            let k2 = manakov_k2(&m, &j).unwrap();
            assert!((mishchenko_trace_form(&m, &j, 3).unwrap() - k1).abs() < 1e-12 * k1);
            assert!((mishchenko_trace_form(&m, &j, 5).unwrap() - k2).abs() < 1e-12 * k2);
            let k3 = manakov_k3(&m, &j).unwrap();
            assert!((manakov_k3_trace(&m, &j).unwrap() - k3).abs() < 1e-12 * k3.abs());
        }
    }

    #[test]
    fn expansion_low_orders() {
        let j = lam0();
        let m = sample(1);
        let (c1, c2) = casimirs(&m).unwrap();
        let e2 = manakov_expansion(&m, &j, 2).unwrap();
        assert!((e2[0] + c1).abs() < 1e-13);
        assert!(e2[1].abs() < 1e-13);
        let e3 = manakov_expansion(&m, &j, 3).unwrap();
        assert!((e3[1] + manakov_k1(&m, &j).unwrap()).abs() < 1e-11);
        let e4 = manakov_expansion(&m, &j, 4).unwrap();
        assert!((e4[0] - c2).abs() < 1e-12);
        let e5 = manakov_expansion(&m, &j, 5).unwrap();
        assert!((e5[1] - 5.0 * manakov_k3(&m, &j).unwrap()).abs() < 1e-10);
        assert!(manakov_expansion(&m, &j, 6).is_err());
        let zero = manakov_expansion(&SkewMatrix::zeros(5).unwrap(), &j, 4).unwrap();
        assert!(zero[..4].iter().all(|v| *v == 0.0));
    }

    #[test]
    fn integral_enum_matches_free_functions() {
        let j = lam0();
        let m = sample(2);
        let c = matrix_to_coords(&m).unwrap();
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-13 * (1.0 + b.abs());
        assert!(close(
            Integral::H.value(&c, &j).unwrap(),
            hamiltonian(&m, &j).unwrap()
        ));
        assert!(close(
            Integral::K3.value(&c, &j).unwrap(),
            manakov_k3(&m, &j).unwrap()
        ));
        assert!(close(
            Integral::F(3).value(&c, &j).unwrap(),
            generator_integral(&m, &j, 3).unwrap()
        ));
        assert!(close(
            Integral::Mishchenko(5).value(&c, &j).unwrap(),
            mishchenko_integral(&m, &j, 5).unwrap()
        ));
        assert_eq!(Integral::F(4).to_string(), "F4");
    }

    #[test]
    fn integral_gradients_and_hessians_match_finite_differences() {
        let j = InertiaSpec::new(vec![4.0, 3.1, 2.0, 1.4, 0.3]).unwrap();
        let c = matrix_to_coords(&sample(3)).unwrap();
        for f in TRACKED {
            let g = f.gradient(&c, &j).unwrap();
            let fd = so5::finite_difference_gradient(|x| f.value(x, &j).unwrap(), &c, 1e-6);
            assert!((g - fd).norm() <= 1e-6 * (1.0 + g.norm()), "{f}");
            let h = f.hessian(&c, &j).unwrap();
            let step = 1e-6;
            for k in 0..10 {
                let mut p = c;
                let mut q = c;
                p[k] += step;
                q[k] -= step;
                let col =
                    (f.gradient(&p, &j).unwrap() - f.gradient(&q, &j).unwrap()) / (2.0 * step);
                assert!((col - h.column(k)).norm() <= 1e-6 * (1.0 + h.norm()), "{f}");
            }
        }
    }

    #[test]
    fn involutive_set_commutes() {
        let j = lam0();
        let c = matrix_to_coords(&sample(6)).unwrap();
        for f in INVOLUTIVE {
            for g in INVOLUTIVE {
                let b = poisson_bracket(f, g, &c, &j).unwrap();
                assert!(b.abs() < 1e-10, "{{{f}, {g}}} = {b}");
            }
        }
    }

    #[test]
    fn snapshot_keys() {
        let snap = InvariantSnapshot::evaluate(&m1_21(), &lam0()).unwrap();
        let v = serde_json::to_value(&snap).unwrap();
        for key in ["H", "C1", "C2", "K1", "K2", "K3", "F", "m"] {
            assert!(v.get(key).is_some(), "{key}");
        }
        assert_eq!(snap.f.len(), 5);
        assert_eq!(snap.m.len(), 5);
    }
}
