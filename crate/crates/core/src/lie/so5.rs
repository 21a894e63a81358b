//! Ten-coordinate realization of so(5).
//!
//! Coordinates are ordered x₁, x₂, x₃, y₁, y₂, y₃, z₁, z₂, z₃, z₄ and the
//! basis E₁…E₁₀ is the one whose coefficients they are. The basis is
//! orthonormal for ⟨X, Y⟩ = −½ Tr(XY), so gradients in coordinates are
//! gradients with respect to the inner product.

use std::ops::{Index, IndexMut};

use nalgebra::{Matrix5, SMatrix, SVector};
use serde::{Deserialize, Serialize};

use super::{InertiaSpec, SkewMatrix};
use crate::error::{Error, Result};

pub type Vec10 = SVector<f64, 10>;
pub type Mat10 = SMatrix<f64, 10, 10>;

pub const COORD_NAMES: [&str; 10] = ["x1", "x2", "x3", "y1", "y2", "y3", "z1", "z2", "z3", "z4"];

/// Coordinate k sits at upper entry (i, j) (0-based) with the given sign.
pub const LAYOUT: [(usize, usize, f64); 10] = [
    (1, 2, -1.0),
    (0, 2, 1.0),
    (0, 1, -1.0),
    (0, 3, 1.0),
    (1, 3, 1.0),
    (2, 3, 1.0),
    (0, 4, 1.0),
    (1, 4, 1.0),
    (2, 4, 1.0),
    (3, 4, 1.0),
];

/// Coordinate index (0-based) of the upper entry (i, j), with its sign.
pub fn coord_of_entry(i: usize, j: usize) -> Option<(usize, f64)> {
    let (i, j, flip) = if i < j { (i, j, 1.0) } else { (j, i, -1.0) };
    LAYOUT
        .iter()
        .position(|&(a, b, _)| a == i && b == j)
        .map(|k| (k, LAYOUT[k].2 * flip))
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Coordinates10(pub [f64; 10]);

impl Coordinates10 {
    pub const ZERO: Coordinates10 = Coordinates10([0.0; 10]);

    pub fn from_vector(v: &Vec10) -> Self {
        let mut out = [0.0; 10];
        out.copy_from_slice(v.as_slice());
        Coordinates10(out)
    }

    pub fn to_vector(&self) -> Vec10 {
        Vec10::from_column_slice(&self.0)
    }

    pub fn from_slice(s: &[f64]) -> Result<Self> {
        let arr: [f64; 10] = s.try_into().map_err(|_| {
            Error::InvalidArgument(format!("expected 10 coordinates, got {}", s.len()))
        })?;
        Ok(Coordinates10(arr))
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }
}

impl Index<usize> for Coordinates10 {
    type Output = f64;
    fn index(&self, k: usize) -> &f64 {
        &self.0[k]
    }
}

impl IndexMut<usize> for Coordinates10 {
    fn index_mut(&mut self, k: usize) -> &mut f64 {
        &mut self.0[k]
    }
}

pub fn coords_to_matrix(c: &Coordinates10) -> SkewMatrix {
    let mut m = SkewMatrix::zeros(5).expect("n = 5 is valid");
    let upper = m.upper_mut();
    for (k, &(i, j, s)) in LAYOUT.iter().enumerate() {
        upper[super::skew::upper_index(5, i, j)] = s * c[k];
    }
    m
}

pub fn matrix_to_coords(m: &SkewMatrix) -> Result<Coordinates10> {
    if m.dim() != 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: m.dim(),
        });
    }
    let mut c = Coordinates10::ZERO;
    for (k, &(i, j, s)) in LAYOUT.iter().enumerate() {
        c[k] = s * m.get(i, j);
    }
    Ok(c)
}

pub(crate) fn dense5(m: &SkewMatrix) -> Matrix5<f64> {
    Matrix5::from_fn(|i, j| m.get(i, j))
}

pub(crate) fn coords_to_dense5(c: &Coordinates10) -> Matrix5<f64> {
    let mut m = Matrix5::zeros();
    for (k, &(i, j, s)) in LAYOUT.iter().enumerate() {
        m[(i, j)] = s * c[k];
        m[(j, i)] = -s * c[k];
    }
    m
}

pub(crate) fn dense5_to_coords(m: &Matrix5<f64>) -> Coordinates10 {
    let mut c = Coordinates10::ZERO;
    for (k, &(i, j, s)) in LAYOUT.iter().enumerate() {
        c[k] = s * m[(i, j)];
    }
    c
}

/// Basis element E_i, 1-based.
pub fn basis(i: usize) -> Result<SkewMatrix> {
    if !(1..=10).contains(&i) {
        return Err(Error::IndexOutOfRange {
            what: "basis",
            index: i,
            max: 10,
        });
    }
    let mut c = Coordinates10::ZERO;
    c[i - 1] = 1.0;
    Ok(coords_to_matrix(&c))
}

/// [E_i, E_j] = sign(t) E_|t| for t = BRACKET_TABLE[i-1][j-1]; 0 means zero.
pub const BRACKET_TABLE: [[i8; 10]; 10] = [
    [0, 3, -2, 0, 6, -5, 0, 9, -8, 0],
    [-3, 0, 1, -6, 0, 4, -9, 0, 7, 0],
    [2, -1, 0, 5, -4, 0, 8, -7, 0, 0],
    [0, 6, -5, 0, 3, -2, -10, 0, 0, 7],
    [-6, 0, 4, -3, 0, 1, 0, -10, 0, 8],
    [5, -4, 0, 2, -1, 0, 0, 0, -10, 9],
    [0, 9, -8, 10, 0, 0, 0, 3, -2, -4],
    [-9, 0, 7, 0, 10, 0, -3, 0, 1, -5],
    [8, -7, 0, 0, 0, 10, 2, -1, 0, -6],
    [0, 0, 0, -7, -8, -9, 4, 5, 6, 0],
];

/// Bracket of two basis elements as coordinates, read from the table.
pub fn bracket_from_table(i: usize, j: usize) -> Result<Coordinates10> {
    for idx in [i, j] {
        if !(1..=10).contains(&idx) {
            return Err(Error::IndexOutOfRange {
                what: "basis",
                index: idx,
                max: 10,
            });
        }
    }
    let t = BRACKET_TABLE[i - 1][j - 1];
    let mut c = Coordinates10::ZERO;
    if t != 0 {
        c[t.unsigned_abs() as usize - 1] = f64::from(t.signum());
    }
    Ok(c)
}

/// Lie-Poisson tensor Γ₋ in coordinates, Γ_ij = ⟨M, [E_j, E_i]⟩.
#[rustfmt::skip]
pub fn poisson_tensor(c: &Coordinates10) -> Mat10 {
    let [x1, x2, x3, y1, y2, y3, z1, z2, z3, z4] = c.0;
    Mat10::from_row_slice(&[
        0.0, -x3,  x2,  0.0, -y3,  y2,  0.0, -z3,  z2,  0.0,
        x3,  0.0, -x1,  y3,  0.0, -y1,  z3,  0.0, -z1,  0.0,
       -x2,  x1,  0.0, -y2,  y1,  0.0, -z2,  z1,  0.0,  0.0,
        0.0, -y3,  y2,  0.0, -x3,  x2,  z4,  0.0,  0.0, -z1,
        y3,  0.0, -y1,  x3,  0.0, -x1,  0.0,  z4,  0.0, -z2,
       -y2,  y1,  0.0, -x2,  x1,  0.0,  0.0,  0.0,  z4, -z3,
        0.0, -z3,  z2, -z4,  0.0,  0.0,  0.0, -x3,  x2,  y1,
        z3,  0.0, -z1,  0.0, -z4,  0.0,  x3,  0.0, -x1,  y2,
       -z2,  z1,  0.0,  0.0,  0.0, -z4, -x2,  x1,  0.0,  y3,
        0.0,  0.0,  0.0,  z1,  z2,  z3, -y1, -y2, -y3,  0.0,
    ])
}

/// One quadratic term of a component equation:
/// sign · c_u · c_v / ((λ_p1+λ_p2)(λ_q1+λ_q2)), indices 0-based.
struct Term {
    sign: f64,
    u: usize,
    v: usize,
    p: (usize, usize),
    q: (usize, usize),
}

/// Row r: ċ_r = (λ_a − λ_b) · Σ terms.
struct Component {
    diff: (usize, usize),
    terms: [Term; 3],
}

const fn t(sign: f64, u: usize, v: usize, p: (usize, usize), q: (usize, usize)) -> Term {
    Term {
        sign,
        u: u - 1,
        v: v - 1,
        p: (p.0 - 1, p.1 - 1),
        q: (q.0 - 1, q.1 - 1),
    }
}

const fn comp(diff: (usize, usize), terms: [Term; 3]) -> Component {
    Component {
        diff: (diff.0 - 1, diff.1 - 1),
        terms,
    }
}

// coordinate numbers: x1..x3 = 1..3, y1..y3 = 4..6, z1..z4 = 7..10
#[rustfmt::skip]
const COMPONENTS: [Component; 10] = [
    comp((2, 3), [t( 1.0, 5, 6, (2, 4), (3, 4)), t(-1.0, 2, 3, (1, 2), (1, 3)), t( 1.0, 8, 9, (2, 5), (3, 5))]),
    comp((3, 1), [t( 1.0, 4, 6, (1, 4), (3, 4)), t(-1.0, 1, 3, (1, 2), (2, 3)), t( 1.0, 7, 9, (1, 5), (3, 5))]),
    comp((1, 2), [t( 1.0, 4, 5, (1, 4), (2, 4)), t(-1.0, 1, 2, (2, 3), (1, 3)), t( 1.0, 7, 8, (1, 5), (2, 5))]),
    comp((1, 4), [t( 1.0, 2, 6, (1, 3), (3, 4)), t(-1.0, 3, 5, (1, 2), (2, 4)), t(-1.0, 7, 10, (1, 5), (4, 5))]),
    comp((2, 4), [t( 1.0, 3, 4, (1, 2), (1, 4)), t(-1.0, 1, 6, (2, 3), (3, 4)), t(-1.0, 8, 10, (2, 5), (4, 5))]),
    comp((3, 4), [t( 1.0, 1, 5, (2, 3), (2, 4)), t(-1.0, 2, 4, (1, 3), (1, 4)), t(-1.0, 9, 10, (3, 5), (4, 5))]),
    comp((1, 5), [t( 1.0, 2, 9, (1, 3), (3, 5)), t(-1.0, 3, 8, (1, 2), (2, 5)), t( 1.0, 4, 10, (1, 4), (4, 5))]),
    comp((2, 5), [t( 1.0, 3, 7, (1, 2), (1, 5)), t(-1.0, 1, 9, (2, 3), (3, 5)), t( 1.0, 5, 10, (2, 4), (4, 5))]),
    comp((3, 5), [t( 1.0, 1, 8, (2, 3), (2, 5)), t(-1.0, 2, 7, (1, 3), (1, 5)), t( 1.0, 6, 10, (3, 4), (4, 5))]),
    comp((4, 5), [t(-1.0, 4, 7, (1, 4), (1, 5)), t(-1.0, 5, 8, (2, 4), (2, 5)), t(-1.0, 6, 9, (3, 4), (3, 5))]),
];

fn check_so5(j: &InertiaSpec) -> Result<()> {
    j.check_dim(5)
}

fn term_weight(term: &Term, j: &InertiaSpec) -> f64 {
    term.sign / (j.pair_sum(term.p.0, term.p.1) * j.pair_sum(term.q.0, term.q.1))
}

/// The ten scalar component equations of the flow, evaluated term by term.
pub fn rhs_coords(c: &Coordinates10, j: &InertiaSpec) -> Result<Coordinates10> {
    check_so5(j)?;
    let mut out = Coordinates10::ZERO;
    for (r, comp) in COMPONENTS.iter().enumerate() {
        let pre = j.get(comp.diff.0) - j.get(comp.diff.1);
        let sum: f64 = comp
            .terms
            .iter()
            .map(|tm| term_weight(tm, j) * c[tm.u] * c[tm.v])
            .sum();
        out[r] = pre * sum;
    }
    Ok(out)
}

/// Jacobian of [`rhs_coords`], differentiated term by term.
pub fn component_jacobian(c: &Coordinates10, j: &InertiaSpec) -> Result<Mat10> {
    check_so5(j)?;
    let mut a = Mat10::zeros();
    for (r, comp) in COMPONENTS.iter().enumerate() {
        let pre = j.get(comp.diff.0) - j.get(comp.diff.1);
        for tm in &comp.terms {
            let w = pre * term_weight(tm, j);
            a[(r, tm.u)] += w * c[tm.v];
            a[(r, tm.v)] += w * c[tm.u];
        }
    }
    Ok(a)
}

/// Weight 1/(λ_i+λ_j) attached to each coordinate.
fn inverse_sums(j: &InertiaSpec) -> [f64; 10] {
    let mut w = [0.0; 10];
    for (k, &(a, b, _)) in LAYOUT.iter().enumerate() {
        w[k] = 1.0 / j.pair_sum(a, b);
    }
    w
}

pub fn hamiltonian_coords(c: &Coordinates10, j: &InertiaSpec) -> Result<f64> {
    check_so5(j)?;
    let w = inverse_sums(j);
    Ok(0.5 * (0..10).map(|k| w[k] * c[k] * c[k]).sum::<f64>())
}

/// ∇H; as a matrix this is Ω.
pub fn grad_hamiltonian(c: &Coordinates10, j: &InertiaSpec) -> Result<Vec10> {
    check_so5(j)?;
    let w = inverse_sums(j);
    Ok(Vec10::from_fn(|k, _| w[k] * c[k]))
}

pub fn c1_coords(c: &Coordinates10) -> f64 {
    0.5 * c.0.iter().map(|v| v * v).sum::<f64>()
}

/// Expanded polynomial form of ⅛ Tr(M⁴).
pub fn c2_coords(c: &Coordinates10) -> f64 {
    let [x1, x2, x3, y1, y2, y3, z1, z2, z3, z4] = c.0;
    let sq = |v: f64| v * v;
    let diag = sq(x2 * x2 + x3 * x3 + y1 * y1 + z1 * z1)
        + sq(x1 * x1 + x3 * x3 + y2 * y2 + z2 * z2)
        + sq(x1 * x1 + x2 * x2 + y3 * y3 + z3 * z3)
        + sq(y1 * y1 + y2 * y2 + y3 * y3 + z4 * z4)
        + sq(z1 * z1 + z2 * z2 + z3 * z3 + z4 * z4);
    let cross = sq(y1 * z1 + y2 * z2 + y3 * z3)
        + sq(x2 * y3 - x3 * y2 - z1 * z4)
        + sq(x3 * y1 - x1 * y3 - z2 * z4)
        + sq(x1 * y2 - x2 * y1 - z3 * z4)
        + sq(x3 * z2 - x2 * z3 - y1 * z4)
        + sq(x1 * z3 - x3 * z1 - y2 * z4)
        + sq(x2 * z1 - x1 * z2 - y3 * z4)
        + sq(x1 * x2 - y1 * y2 - z1 * z2)
        + sq(x1 * x3 - y1 * y3 - z1 * z3)
        + sq(x2 * x3 - y2 * y3 - z2 * z3);
    (diag + 2.0 * cross) / 8.0
}

pub fn grad_c1(c: &Coordinates10) -> Vec10 {
    c.to_vector()
}

/// ∇C₂ = −M³.
pub fn grad_c2(c: &Coordinates10) -> Vec10 {
    let m = coords_to_dense5(c);
    dense5_to_coords(&(-(m * m * m))).to_vector()
}

fn basis_dense() -> [Matrix5<f64>; 10] {
    std::array::from_fn(|k| {
        let mut c = Coordinates10::ZERO;
        c[k] = 1.0;
        coords_to_dense5(&c)
    })
}

/// Hessian of C₂: ½[Tr(XYM²) + Tr(YXM²) + Tr(XMYM)] on basis pairs.
pub fn hessian_c2(c: &Coordinates10) -> Mat10 {
    let m = coords_to_dense5(c);
    let m2 = m * m;
    let e = basis_dense();
    let mut h = Mat10::zeros();
    for a in 0..10 {
        for b in a..10 {
            let v = 0.5
                * ((e[a] * e[b] * m2).trace()
                    + (e[b] * e[a] * m2).trace()
                    + (e[a] * m * e[b] * m).trace());
            h[(a, b)] = v;
            h[(b, a)] = v;
        }
    }
    h
}

/// Central finite-difference gradient, step `h` scaled by max(1, ‖c‖).
/// Meant for tests.
pub fn finite_difference_gradient(
    f: impl Fn(&Coordinates10) -> f64,
    c: &Coordinates10,
    h: f64,
) -> Vec10 {
    let step = h * c.norm().max(1.0);
    Vec10::from_fn(|k, _| {
        let mut p = *c;
        let mut q = *c;
        p[k] += step;
        q[k] -= step;
        (f(&p) - f(&q)) / (2.0 * step)
    })
}
