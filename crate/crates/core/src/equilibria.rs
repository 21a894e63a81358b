//! Equilibria of the so(5) flow on regular adjoint orbits: the fifteen
//! coordinate Cartan subalgebras t₁…t₁₅ with their eight-point Weyl orbits,
//! the ten continuous families s₁…s₁₀, and a random-start census.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use nalgebra::SMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::casimirs;
use crate::lie::so5::{self, coords_to_matrix, matrix_to_coords, Coordinates10, Mat10, Vec10};
use crate::lie::{rigid_body_rhs, InertiaSpec, SkewMatrix};
use crate::sampling;

/// Casimir values (c₁, c₂) labelling an adjoint orbit.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct OrbitInvariants {
    pub c1: f64,
    pub c2: f64,
}

impl OrbitInvariants {
    pub fn new(c1: f64, c2: f64) -> Self {
        Self { c1, c2 }
    }

    /// Orbit through M¹_{a,b}: c₁ = (a²+b²)/2, c₂ = (a⁴+b⁴)/4.
    pub fn from_ab(a: f64, b: f64) -> Self {
        let (a2, b2) = (a * a, b * b);
        Self {
            c1: 0.5 * (a2 + b2),
            c2: 0.25 * (a2 * a2 + b2 * b2),
        }
    }

    pub fn of_matrix(m: &SkewMatrix) -> Result<Self> {
        let (c1, c2) = casimirs(m)?;
        Ok(Self { c1, c2 })
    }

    /// First violated condition of c₁ > 0, c₂ > 0, 2c₂ > c₁², c₁² > c₂.
    fn violation(&self) -> Option<&'static str> {
        let (c1, c2) = (self.c1, self.c2);
        if !(c1.is_finite() && c2.is_finite()) {
            Some("finiteness")
        } else if c1 <= 0.0 {
            Some("c1 > 0")
        } else if c2 <= 0.0 {
            Some("c2 > 0")
        } else if 2.0 * c2 <= c1 * c1 {
            Some("2c2 > c1^2")
        } else if c1 * c1 <= c2 {
            Some("c1^2 > c2")
        } else {
            None
        }
    }

    pub fn is_regular(&self) -> bool {
        self.violation().is_none()
    }

    pub fn check(&self) -> Result<()> {
        match self.violation() {
            None => Ok(()),
            Some(violated) => Err(Error::NonRegularOrbit {
                c1: self.c1,
                c2: self.c2,
                violated,
            }),
        }
    }
}

/// a = √(c₁ + √(2c₂ − c₁²)), b = √(c₁ − √(2c₂ − c₁²)), so a > b > 0.
pub fn weyl_ab(inv: &OrbitInvariants) -> Result<(f64, f64)> {
    inv.check()?;
    let r = (2.0 * inv.c2 - inv.c1 * inv.c1).sqrt();
    Ok(((inv.c1 + r).sqrt(), (inv.c1 - r).sqrt()))
}

/// Which of a, b feeds the first builder argument.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SlotClass {
    #[serde(rename = "a,b")]
    AB,
    #[serde(rename = "b,a")]
    BA,
}

impl fmt::Display for SlotClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SlotClass::AB => "a,b",
            SlotClass::BA => "b,a",
        })
    }
}

/// The eight Weyl-group images of (a, b), read as builder arguments of M^k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeylSlot {
    AB,
    NegANegB,
    BA,
    NegBNegA,
    NegAB,
    ANegB,
    BNegA,
    NegBA,
}

impl WeylSlot {
    pub const ALL: [WeylSlot; 8] = [
        WeylSlot::AB,
        WeylSlot::NegANegB,
        WeylSlot::BA,
        WeylSlot::NegBNegA,
        WeylSlot::NegAB,
        WeylSlot::ANegB,
        WeylSlot::BNegA,
        WeylSlot::NegBA,
    ];

    pub fn label(self) -> &'static str {
        match self {
            WeylSlot::AB => "a,b",
            WeylSlot::NegANegB => "-a,-b",
            WeylSlot::BA => "b,a",
            WeylSlot::NegBNegA => "-b,-a",
            WeylSlot::NegAB => "-a,b",
            WeylSlot::ANegB => "a,-b",
            WeylSlot::BNegA => "b,-a",
            WeylSlot::NegBA => "-b,a",
        }
    }

    /// (sign of first argument, sign of second argument, swapped).
    fn parts(self) -> (f64, f64, bool) {
        match self {
            WeylSlot::AB => (1.0, 1.0, false),
            WeylSlot::NegANegB => (-1.0, -1.0, false),
            WeylSlot::NegAB => (-1.0, 1.0, false),
            WeylSlot::ANegB => (1.0, -1.0, false),
            WeylSlot::BA => (1.0, 1.0, true),
            WeylSlot::NegBNegA => (-1.0, -1.0, true),
            WeylSlot::BNegA => (1.0, -1.0, true),
            WeylSlot::NegBA => (-1.0, 1.0, true),
        }
    }

    /// Builder arguments for this slot.
    pub fn apply(self, a: f64, b: f64) -> (f64, f64) {
        let (s, t, swap) = self.parts();
        if swap {
            (s * b, t * a)
        } else {
            (s * a, t * b)
        }
    }

    pub fn class(self) -> SlotClass {
        if self.parts().2 {
            SlotClass::BA
        } else {
            SlotClass::AB
        }
    }

    /// Slot obtained by first applying `self` and then the transformation
    /// `other` to the resulting pair. Used to check group closure.
    pub fn compose(self, other: WeylSlot) -> WeylSlot {
        let (s1, t1, w1) = self.parts();
        let (s2, t2, w2) = other.parts();
        // self gives (p, q) = (s1·x, t1·y) with x, y = a, b or b, a
        let (p_sign, q_sign) = if w2 {
            (s2 * t1, t2 * s1)
        } else {
            (s2 * s1, t2 * t1)
        };
        let swapped = w1 ^ w2;
        *WeylSlot::ALL
            .iter()
            .find(|w| w.parts() == (p_sign, q_sign, swapped))
            .expect("the slot set is closed")
    }
}

impl fmt::Display for WeylSlot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for WeylSlot {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        WeylSlot::ALL
            .into_iter()
            .find(|w| w.label() == key)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown Weyl slot '{s}'")))
    }
}

impl Serialize for WeylSlot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.label())
    }
}

impl<'de> Deserialize<'de> for WeylSlot {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Entry (row, col) 1-based carrying sign · argument.
#[derive(Clone, Copy, Debug)]
struct Placement {
    row: usize,
    col: usize,
    sign: f64,
}

const fn at(row: usize, col: usize, sign: f64) -> Placement {
    Placement { row, col, sign }
}

/// A coordinate Cartan subalgebra t_k.
#[derive(Clone, Copy, Debug)]
pub struct CartanFamily {
    pub k: usize,
    /// Basis indices (1-based) spanning t_k, lower index first.
    pub basis_pair: (usize, usize),
    a_at: Placement,
    b_at: Placement,
}

const fn cf(
    k: usize,
    basis_pair: (usize, usize),
    a_at: Placement,
    b_at: Placement,
) -> CartanFamily {
    CartanFamily {
        k,
        basis_pair,
        a_at,
        b_at,
    }
}

pub const CARTAN_FAMILIES: [CartanFamily; 15] = [
    cf(1, (3, 6), at(1, 2, 1.0), at(3, 4, 1.0)),
    cf(2, (6, 8), at(2, 5, 1.0), at(3, 4, -1.0)),
    cf(3, (6, 7), at(1, 5, 1.0), at(3, 4, -1.0)),
    cf(4, (5, 7), at(1, 5, 1.0), at(2, 4, 1.0)),
    cf(5, (1, 7), at(1, 5, 1.0), at(2, 3, -1.0)),
    cf(6, (2, 5), at(1, 3, 1.0), at(2, 4, -1.0)),
    cf(7, (5, 9), at(2, 4, 1.0), at(3, 5, -1.0)),
    cf(8, (1, 10), at(2, 3, 1.0), at(4, 5, -1.0)),
    cf(9, (1, 4), at(1, 4, 1.0), at(2, 3, -1.0)),
    cf(10, (2, 8), at(1, 3, 1.0), at(2, 5, -1.0)),
    cf(11, (4, 8), at(1, 4, 1.0), at(2, 5, -1.0)),
    cf(12, (3, 10), at(1, 2, 1.0), at(4, 5, 1.0)),
    cf(13, (3, 9), at(1, 2, 1.0), at(3, 5, -1.0)),
    cf(14, (4, 9), at(1, 4, 1.0), at(3, 5, -1.0)),
    cf(15, (2, 10), at(1, 3, 1.0), at(4, 5, 1.0)),
];

pub fn cartan_family(k: usize) -> Result<&'static CartanFamily> {
    if !(1..=15).contains(&k) {
        return Err(Error::IndexOutOfRange {
            what: "Cartan family",
            index: k,
            max: 15,
        });
    }
    Ok(&CARTAN_FAMILIES[k - 1])
}

impl CartanFamily {
    pub fn name(&self) -> String {
        format!("t{}", self.k)
    }

    /// M^k_{a,b}.
    pub fn build(&self, a: f64, b: f64) -> SkewMatrix {
        let mut m = SkewMatrix::zeros(5).expect("n = 5");
        for (p, v) in [(self.a_at, a), (self.b_at, b)] {
            m.set(p.row - 1, p.col - 1, p.sign * v)
                .expect("table entries are off-diagonal");
        }
        m
    }

    /// Magnitudes of the coordinates on the lower- and higher-indexed basis
    /// element of t_k. These are the (a, b) the spectral closed forms expect.
    pub fn alpha_beta(&self, m: &SkewMatrix) -> Result<(f64, f64)> {
        let c = matrix_to_coords(m)?;
        Ok((
            c[self.basis_pair.0 - 1].abs(),
            c[self.basis_pair.1 - 1].abs(),
        ))
    }

    /// Orthonormal basis of t_k as columns.
    pub fn subspace(&self) -> SMatrix<f64, 10, 2> {
        let mut q = SMatrix::<f64, 10, 2>::zeros();
        q[(self.basis_pair.0 - 1, 0)] = 1.0;
        q[(self.basis_pair.1 - 1, 1)] = 1.0;
        q
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    CartanSlot {
        k: usize,
        slot: WeylSlot,
        /// Weyl values of the orbit, a > b > 0.
        a: f64,
        b: f64,
    },
    Continuous {
        l: usize,
        coefficients: [f64; 3],
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumPoint {
    pub matrix: SkewMatrix,
    pub provenance: Provenance,
}

impl EquilibriumPoint {
    pub fn cartan(&self) -> Option<(&'static CartanFamily, WeylSlot)> {
        match self.provenance {
            Provenance::CartanSlot { k, slot, .. } => cartan_family(k).ok().map(|f| (f, slot)),
            Provenance::Continuous { .. } => None,
        }
    }

    pub fn label(&self) -> String {
        match &self.provenance {
            Provenance::CartanSlot { k, slot, .. } => format!("t{k}[{slot}]"),
            Provenance::Continuous { l, .. } => format!("s{l}"),
        }
    }
}

/// The point of t_k ∩ Orb(c₁, c₂) in the given slot.
pub fn cartan_point(k: usize, slot: WeylSlot, inv: &OrbitInvariants) -> Result<EquilibriumPoint> {
    let fam = cartan_family(k)?;
    let (a, b) = weyl_ab(inv)?;
    let (p, q) = slot.apply(a, b);
    Ok(EquilibriumPoint {
        matrix: fam.build(p, q),
        provenance: Provenance::CartanSlot { k, slot, a, b },
    })
}

/// All eight points of t_k ∩ Orb(c₁, c₂), in [`WeylSlot::ALL`] order.
pub fn weyl_orbit_points(k: usize, inv: &OrbitInvariants) -> Result<Vec<EquilibriumPoint>> {
    WeylSlot::ALL
        .iter()
        .map(|&slot| cartan_point(k, slot, inv))
        .collect()
}

/// (basis p, weight pair, basis q, weight pair, sign pattern).
/// `same` means ± (upper sign for odd l), `opposite` means ∓.
struct SpanRule {
    p: usize,
    wp: (usize, usize),
    q: usize,
    wq: (usize, usize),
    same: bool,
}

const fn sr(p: usize, wp: (usize, usize), q: usize, wq: (usize, usize), same: bool) -> SpanRule {
    SpanRule { p, wp, q, wq, same }
}

#[rustfmt::skip]
const CONTINUOUS_RULES: [[SpanRule; 3]; 5] = [
    [sr(1, (1, 4), 4, (2, 3), true), sr(2, (2, 4), 5, (1, 3), true), sr(3, (3, 4), 6, (1, 2), true)],
    [sr(1, (4, 5), 10, (2, 3), true), sr(5, (3, 5), 9, (2, 4), true), sr(6, (2, 5), 8, (3, 4), false)],
    [sr(2, (4, 5), 10, (1, 3), true), sr(6, (1, 5), 7, (3, 4), true), sr(4, (3, 5), 9, (1, 4), false)],
    [sr(1, (1, 5), 7, (2, 3), true), sr(2, (2, 5), 8, (1, 3), true), sr(3, (3, 5), 9, (1, 2), true)],
    [sr(3, (4, 5), 10, (1, 2), true), sr(4, (2, 5), 8, (1, 4), true), sr(5, (1, 5), 7, (2, 4), false)],
];

/// Three-dimensional linear family s_l of equilibria (depends on J).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuousFamily {
    pub l: usize,
    pub spanning: [SkewMatrix; 3],
}

pub fn continuous_family(l: usize, j: &InertiaSpec) -> Result<ContinuousFamily> {
    if !(1..=10).contains(&l) {
        return Err(Error::IndexOutOfRange {
            what: "continuous family",
            index: l,
            max: 10,
        });
    }
    j.check_dim(5)?;
    let rules = &CONTINUOUS_RULES[(l - 1) / 2];
    let upper = l % 2 == 1;
    let w = |p: (usize, usize)| 1.0 / j.pair_sum(p.0 - 1, p.1 - 1);
    let spanning = std::array::from_fn(|i| {
        let r = &rules[i];
        let sign = if upper == r.same { 1.0 } else { -1.0 };
        let mut c = Coordinates10::ZERO;
        c[r.p - 1] = w(r.wp);
        c[r.q - 1] = sign * w(r.wq);
        coords_to_matrix(&c)
    });
    Ok(ContinuousFamily { l, spanning })
}

impl ContinuousFamily {
    pub fn name(&self) -> String {
        format!("s{}", self.l)
    }

    pub fn combine(&self, coefficients: [f64; 3]) -> EquilibriumPoint {
        let mut m = SkewMatrix::zeros(5).expect("n = 5");
        for (w, v) in coefficients.iter().zip(&self.spanning) {
            m.axpy(*w, v).expect("same dimension");
        }
        EquilibriumPoint {
            matrix: m,
            provenance: Provenance::Continuous {
                l: self.l,
                coefficients,
            },
        }
    }

    /// Orthonormal basis of the span as columns (Gram-Schmidt; the spanning
    /// vectors have disjoint supports so this is a rescaling).
    pub fn subspace(&self) -> SMatrix<f64, 10, 3> {
        let mut q = SMatrix::<f64, 10, 3>::zeros();
        for (i, v) in self.spanning.iter().enumerate() {
            let c = matrix_to_coords(v).expect("n = 5").to_vector();
            q.set_column(i, &(c / c.norm()));
        }
        q
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumCheck {
    pub is_equilibrium: bool,
    pub residual: f64,
    pub threshold: f64,
}

/// ‖rhs(M)‖ ≤ tol · max(1, ‖M‖² / min(λ_i + λ_j)).
pub fn is_equilibrium(m: &SkewMatrix, j: &InertiaSpec, tol: f64) -> Result<EquilibriumCheck> {
    let residual = rigid_body_rhs(m, j)?.norm();
    let threshold = tol * (m.norm().powi(2) / j.min_pair_sum()).max(1.0);
    Ok(EquilibriumCheck {
        is_equilibrium: residual <= threshold,
        residual,
        threshold,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub family: String,
    pub slot: WeylSlot,
    pub matrix: SkewMatrix,
    pub casimirs: [f64; 2],
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ContinuousEntry {
    pub family: String,
    pub spanning: [SkewMatrix; 3],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Catalog {
    pub lambdas: Vec<f64>,
    pub c1: f64,
    pub c2: f64,
    pub a: f64,
    pub b: f64,
    pub points: Vec<CatalogEntry>,
    pub continuous: Vec<ContinuousEntry>,
}

/// The Weyl points of the requested Cartan families (in order) plus all ten
/// continuous families.
pub fn catalog(j: &InertiaSpec, inv: &OrbitInvariants, families: &[usize]) -> Result<Catalog> {
    j.check_dim(5)?;
    let (a, b) = weyl_ab(inv)?;
    let mut points = Vec::with_capacity(8 * families.len());
    for &k in families {
        for p in weyl_orbit_points(k, inv)? {
            let (c1, c2) = casimirs(&p.matrix)?;
            let residual = rigid_body_rhs(&p.matrix, j)?.norm();
            let slot = match p.provenance {
                Provenance::CartanSlot { slot, .. } => slot,
                Provenance::Continuous { .. } => unreachable!("Weyl points are Cartan slots"),
            };
            points.push(CatalogEntry {
                family: format!("t{k}"),
                slot,
                matrix: p.matrix,
                casimirs: [c1, c2],
                residual,
            });
        }
    }
    let continuous = (1..=10)
        .map(|l| {
            continuous_family(l, j).map(|f| ContinuousEntry {
                family: f.name(),
                spanning: f.spanning,
            })
        })
        .collect::<Result<_>>()?;
    Ok(Catalog {
        lambdas: j.lambdas().to_vec(),
        c1: inv.c1,
        c2: inv.c2,
        a,
        b,
        points,
        continuous,
    })
}

/// Linear subspaces making up the equilibrium set, with orthonormal bases.
pub struct FamilySubspaces {
    entries: Vec<(String, SMatrix<f64, 10, 3>, usize)>,
}

impl FamilySubspaces {
    pub fn new(j: &InertiaSpec) -> Result<Self> {
        let mut entries = Vec::with_capacity(25);
        for f in &CARTAN_FAMILIES {
            let mut q = SMatrix::<f64, 10, 3>::zeros();
            q.fixed_columns_mut::<2>(0).copy_from(&f.subspace());
            entries.push((f.name(), q, 2));
        }
        for l in 1..=10 {
            let f = continuous_family(l, j)?;
            entries.push((f.name(), f.subspace(), 3));
        }
        Ok(Self { entries })
    }

    /// Distance from `c` to each family subspace, by orthogonal projection.
    pub fn distances(&self, c: &Vec10) -> Vec<(String, f64)> {
        self.entries
            .iter()
            .map(|(name, q, dim)| {
                let q = q.columns(0, *dim);
                let proj = q * (q.transpose() * c);
                (name.clone(), (c - proj).norm())
            })
            .collect()
    }

    pub fn nearest(&self, c: &Vec10) -> (String, f64) {
        self.distances(c)
            .into_iter()
            .min_by(|x, y| x.1.total_cmp(&y.1))
            .expect("non-empty family list")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RootSearch {
    pub point: Coordinates10,
    pub converged: bool,
    pub iterations: usize,
    pub residual: f64,
}

/// Damped Newton (Levenberg-Marquardt) on ‖rhs‖² restricted to the unit
/// sphere. The flow is homogeneous, so every equilibrium ray meets the sphere.
pub fn find_root(start: &Coordinates10, j: &InertiaSpec, max_iter: usize) -> Result<RootSearch> {
    const CONVERGED: f64 = 1e-15;
    let norm = start.norm();
    if norm == 0.0 || !norm.is_finite() {
        return Err(Error::InvalidArgument(
            "root search needs a nonzero finite start".into(),
        ));
    }
    let mut c = start.to_vector() / norm;
    let eval = |v: &Vec10| -> Result<Vec10> {
        Ok(so5::rhs_coords(&Coordinates10::from_vector(v), j)?.to_vector())
    };
    let mut f = eval(&c)?;
    let mut mu = 1e-3;
    for it in 0..max_iter {
        if f.norm() < CONVERGED {
            return Ok(RootSearch {
                point: Coordinates10::from_vector(&c),
                converged: true,
                iterations: it,
                residual: f.norm(),
            });
        }
        let a = so5::component_jacobian(&Coordinates10::from_vector(&c), j)?;
        let lhs: Mat10 = a.transpose() * a + Mat10::identity() * mu;
        let Some(step) = lhs.cholesky().map(|ch| ch.solve(&(-a.transpose() * f))) else {
            mu *= 4.0;
            continue;
        };
        let mut trial = c + step;
        trial /= trial.norm();
        let ft = eval(&trial)?;
        if ft.norm() < f.norm() {
            c = trial;
            f = ft;
            mu = (mu / 3.0).max(1e-12);
        } else {
            mu *= 4.0;
        }
    }
    Ok(RootSearch {
        point: Coordinates10::from_vector(&c),
        converged: f.norm() < CONVERGED,
        iterations: max_iter,
        residual: f.norm(),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CensusOutlier {
    pub point: Coordinates10,
    pub nearest_family: String,
    pub distance: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CensusReport {
    pub samples: usize,
    pub converged: usize,
    pub not_converged: usize,
    /// Converged roots per nearest family.
    pub by_family: BTreeMap<String, usize>,
    pub worst_distance: f64,
    pub outside: Vec<CensusOutlier>,
}

pub const CENSUS_DISTANCE_TOL: f64 = 1e-8;
const CENSUS_MAX_ITER: usize = 200;

/// Classifies the converged roots of the given starts against the catalog.
pub fn census_from_starts(j: &InertiaSpec, starts: &[Coordinates10]) -> Result<CensusReport> {
    j.check_dim(5)?;
    let subspaces = FamilySubspaces::new(j)?;
    let mut report = CensusReport {
        samples: starts.len(),
        ..Default::default()
    };
    for s in starts {
        let root = find_root(s, j, CENSUS_MAX_ITER)?;
        if !root.converged {
            report.not_converged += 1;
            continue;
        }
        report.converged += 1;
        let (name, d) = subspaces.nearest(&root.point.to_vector());
        report.worst_distance = report.worst_distance.max(d);
        if d <= CENSUS_DISTANCE_TOL {
            *report.by_family.entry(name).or_default() += 1;
        } else {
            report.outside.push(CensusOutlier {
                point: root.point,
                nearest_family: name,
                distance: d,
            });
        }
    }
    Ok(report)
}

/// Random-start falsification harness for the completeness of the catalog.
pub fn equilibrium_census(j: &InertiaSpec, samples: usize, seed: u64) -> Result<CensusReport> {
    let mut rng = sampling::rng_from_seed(seed);
    let starts: Vec<_> = (0..samples)
        .map(|_| sampling::random_coords(&mut rng, 1.0))
        .collect();
    census_from_starts(j, &starts)
}
