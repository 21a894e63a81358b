use nalgebra::{Complex, SMatrix, SVector, Schur};
use serde::{Deserialize, Serialize};

use super::factors::{factor_match, FactorMatch};
use crate::equilibria::EquilibriumPoint;
use crate::error::{Error, Result};
use crate::lie::so5::{self, coords_to_matrix, matrix_to_coords, Coordinates10, Mat10, Vec10};
use crate::lie::{omega_from_momentum, InertiaSpec, SkewMatrix};

pub type Mat8 = SMatrix<f64, 8, 8>;
pub type Basis8 = SMatrix<f64, 10, 8>;

/// Relative gate for a positive real part: 1e-8 · ‖restricted Jacobian‖_F.
pub const SPECTRAL_TOL_REL: f64 = 1e-8;
const DEGENERATE_RATIO: f64 = 1e-8;

/// Jacobian of the flow at `m`, from the component equations.
pub fn jacobian(m: &SkewMatrix, j: &InertiaSpec) -> Result<Mat10> {
    so5::component_jacobian(&matrix_to_coords(m)?, j)
}

/// Jacobian from the commutator form: X ↦ [X, Ω(M)] + [M, Ω(X)].
pub fn jacobian_commutator(m: &SkewMatrix, j: &InertiaSpec) -> Result<Mat10> {
    let omega = omega_from_momentum(m, j)?;
    let mut a = Mat10::zeros();
    for k in 0..10 {
        let mut e = Coordinates10::ZERO;
        e[k] = 1.0;
        let x = coords_to_matrix(&e);
        let col = &x.commutator(&omega)? + &m.commutator(&omega_from_momentum(&x, j)?)?;
        a.set_column(k, &matrix_to_coords(&col)?.to_vector());
    }
    Ok(a)
}

/// Orthonormal basis of ker dC₁ ∩ ker dC₂ at `m` as the columns of a 10×8
/// matrix.
///
/// Coordinate vectors are projected off span(∇C₁, ∇C₂); the eight with the
/// largest surviving component are kept (greedy pivoting) and then
/// orthonormalized in ascending coordinate order. When the normal space is
/// spanned by two coordinate directions, as on every t_k, the result is the
/// remaining eight basis elements in their natural order.
pub fn orbit_tangent_basis(m: &SkewMatrix) -> Result<Basis8> {
    let c = matrix_to_coords(m)?;
    let normal = normal_frame(&c)?;
    let project = |v: &Vec10| v - normal * (normal.transpose() * v);

    let mut chosen = Vec::with_capacity(8);
    let mut frame: Vec<Vec10> = Vec::with_capacity(8);
    let residual = |k: usize, frame: &[Vec10]| {
        let mut v = project(&Vec10::ith(k, 1.0));
        for q in frame {
            v -= q * q.dot(&v);
        }
        v
    };
    for _ in 0..8 {
        let (best, v) = (0..10)
            .filter(|k| !chosen.contains(k))
            .map(|k| (k, residual(k, &frame)))
            .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
            .expect("candidates remain");
        chosen.push(best);
        frame.push(v.normalize());
    }
    chosen.sort_unstable();

    let mut basis = Basis8::zeros();
    let mut done: Vec<Vec10> = Vec::with_capacity(8);
    for (col, &k) in chosen.iter().enumerate() {
        let mut v = project(&Vec10::ith(k, 1.0));
        // two passes keep the frame orthonormal to rounding level
        for _ in 0..2 {
            for q in &done {
                v -= q * q.dot(&v);
            }
            v -= normal * (normal.transpose() * v);
        }
        let v = v.normalize();
        basis.set_column(col, &v);
        done.push(v);
    }
    Ok(basis)
}

/// Orthonormal frame of span(∇C₁, ∇C₂), refusing when they are dependent.
pub fn normal_frame(c: &Coordinates10) -> Result<SMatrix<f64, 10, 2>> {
    let g1 = so5::grad_c1(c);
    let g2 = so5::grad_c2(c);
    let (n1, n2) = (g1.norm(), g2.norm());
    if n1 == 0.0 || n2 == 0.0 {
        return Err(Error::DegeneratePoint(0.0));
    }
    let g = SMatrix::<f64, 10, 2>::from_columns(&[g1 / n1, g2 / n2]);
    let sv = g.singular_values();
    let ratio = sv.min() / sv.max();
    if ratio < DEGENERATE_RATIO {
        return Err(Error::DegeneratePoint(ratio));
    }
    let q1 = g.column(0).into_owned();
    let mut q2 = g.column(1) - q1 * q1.dot(&g.column(1));
    q2 -= q1 * q1.dot(&q2);
    Ok(SMatrix::<f64, 10, 2>::from_columns(&[q1, q2.normalize()]))
}

/// Pᵀ A P for the tangent basis P.
pub fn restricted_jacobian(m: &SkewMatrix, j: &InertiaSpec) -> Result<(Mat8, Basis8)> {
    let p = orbit_tangent_basis(m)?;
    let a = jacobian(m, j)?;
    Ok((p.transpose() * a * p, p))
}

/// Eigenvalues sorted by decreasing real part.
///
/// The Schur iteration in nalgebra can stall on the sparse, exactly
/// structured matrices of the Cartan slots. Each attempt is bounded; on
/// failure the matrix is conjugated by a fixed orthogonal rotation, which
/// leaves the spectrum unchanged but breaks the structure.
pub fn eigenvalues8(a: &Mat8) -> Result<Vec<Complex<f64>>> {
    let mut candidates = vec![*a];
    for seed in 1..=3u64 {
        let q = fixed_rotation(seed);
        candidates.push(q.transpose() * a * q);
    }
    let schur = candidates
        .into_iter()
        .find_map(|m| Schur::try_new(m, 1e-15, 2_000))
        .ok_or(Error::NoConvergence("restricted Jacobian eigenvalues"))?;
    let mut ev: Vec<_> = schur.complex_eigenvalues().iter().copied().collect();
    ev.sort_by(|x, y| y.re.total_cmp(&x.re).then(y.im.total_cmp(&x.im)));
    Ok(ev)
}

fn fixed_rotation(seed: u64) -> Mat8 {
    use rand_distr::{Distribution, StandardNormal};
    let mut rng = crate::sampling::rng_from_seed(seed);
    let g = Mat8::from_fn(|_, _| StandardNormal.sample(&mut rng));
    g.qr().q()
}

/// Largest distance between an eigenvalue and the nearest negated eigenvalue.
pub fn pairing_residual(ev: &[Complex<f64>]) -> f64 {
    ev.iter()
        .map(|z| {
            ev.iter()
                .map(|w| (z + w).norm())
                .fold(f64::INFINITY, f64::min)
        })
        .fold(0.0, f64::max)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Restricted eigenvalues as [re, im], sorted by decreasing real part.
    pub eigenvalues: Vec<[f64; 2]>,
    pub jacobian_norm: f64,
    pub spectral_tol: f64,
    pub max_real: f64,
    pub pairing_residual: f64,
    /// Present for Cartan-slot points.
    pub factor_match: Option<FactorMatch>,
}

impl SpectrumReport {
    pub fn complex(&self) -> Vec<Complex<f64>> {
        self.eigenvalues
            .iter()
            .map(|z| Complex::new(z[0], z[1]))
            .collect()
    }

    pub fn is_unstable(&self) -> bool {
        self.max_real > self.spectral_tol
    }
}

pub fn spectrum_of_matrix(
    m: &SkewMatrix,
    j: &InertiaSpec,
) -> Result<(SpectrumReport, Mat8, Basis8)> {
    let (ar, p) = restricted_jacobian(m, j)?;
    let ev = eigenvalues8(&ar)?;
    let norm = ar.norm();
    let report = SpectrumReport {
        eigenvalues: ev.iter().map(|z| [z.re, z.im]).collect(),
        jacobian_norm: norm,
        spectral_tol: SPECTRAL_TOL_REL * norm,
        max_real: ev.iter().map(|z| z.re).fold(f64::NEG_INFINITY, f64::max),
        pairing_residual: pairing_residual(&ev),
        factor_match: None,
    };
    Ok((report, ar, p))
}

/// Spectrum of the linearization on the orbit tangent space, matched against
/// the closed-form factors when the point is a Cartan slot.
pub fn restricted_spectrum(eq: &EquilibriumPoint, j: &InertiaSpec) -> Result<SpectrumReport> {
    let (mut report, _, _) = spectrum_of_matrix(&eq.matrix, j)?;
    if let Some((fam, _)) = eq.cartan() {
        let (alpha, beta) = fam.alpha_beta(&eq.matrix)?;
        report.factor_match = Some(factor_match(fam.k, alpha, beta, j, &report.complex())?);
    }
    Ok(report)
}

/// Eigenpair of the restricted Jacobian with the largest real part, the
/// vector mapped back to coordinates and normalized (real part of the
/// complex eigenvector).
pub fn dominant_mode(m: &SkewMatrix, j: &InertiaSpec) -> Result<(Complex<f64>, Vec10)> {
    let (ar, p) = restricted_jacobian(m, j)?;
    let ev = eigenvalues8(&ar)?;
    let lambda = ev[0];
    let shifted: SMatrix<Complex<f64>, 8, 8> =
        ar.map(|x| Complex::new(x, 0.0)) - SMatrix::<Complex<f64>, 8, 8>::identity() * lambda;
    let svd = shifted.svd(false, true);
    let v_t = svd.v_t.expect("requested");
    let (imin, _) = svd
        .singular_values
        .iter()
        .enumerate()
        .min_by(|x, y| x.1.total_cmp(y.1))
        .expect("8 singular values");
    let v: SVector<Complex<f64>, 8> = v_t.row(imin).adjoint();
    // rotate so the largest component is real before taking the real part
    let (kmax, _) = v
        .iter()
        .enumerate()
        .max_by(|x, y| x.1.norm().total_cmp(&y.1.norm()))
        .expect("nonempty");
    let phase = v[kmax].conj() / v[kmax].norm();
    let real: SVector<f64, 8> = v.map(|z| (z * phase).re);
    let full = p * real;
    Ok((lambda, full.normalize()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::{cartan_point, OrbitInvariants, WeylSlot};
    use crate::sampling;

    fn lam0() -> InertiaSpec {
        InertiaSpec::new(vec![5.0, 4.0, 3.0, 2.0, 1.0]).unwrap()
    }

    #[test]
    fn jacobian_paths_agree() {
        let mut rng = sampling::rng_from_seed(2);
        let j = lam0();
        for _ in 0..5 {
            let m = sampling::random_skew(&mut rng, 5);
            let d = jacobian(&m, &j).unwrap() - jacobian_commutator(&m, &j).unwrap();
            assert!(d.abs().max() < 1e-13);
        }
        assert_eq!(
            jacobian(&SkewMatrix::zeros(5).unwrap(), &j).unwrap(),
            Mat10::zeros()
        );
    }

    #[test]
    fn tangent_basis_at_t1_is_coordinate_aligned() {
        let p = cartan_point(1, WeylSlot::AB, &OrbitInvariants::new(2.5, 4.25)).unwrap();
        let b = orbit_tangent_basis(&p.matrix).unwrap();
        let expected = [0, 1, 3, 4, 6, 7, 8, 9];
        for (col, &k) in expected.iter().enumerate() {
            assert!((b.column(col) - Vec10::ith(k, 1.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn tangent_basis_is_orthonormal_and_normal_to_gradients() {
        let mut rng = sampling::rng_from_seed(4);
        for _ in 0..5 {
            let c = sampling::random_coords(&mut rng, 2.0);
            let b = orbit_tangent_basis(&coords_to_matrix(&c)).unwrap();
            assert!((b.transpose() * b - Mat8::identity()).abs().max() < 1e-12);
            let g = b.transpose() * so5::grad_c1(&c);
            let h = b.transpose() * so5::grad_c2(&c);
            assert!(g.norm() < 1e-12 && h.norm() < 1e-12 * so5::grad_c2(&c).norm());
        }
    }

    #[test]
    fn degenerate_points_are_refused() {
        // a = b: both Casimir gradients are parallel
        let f = crate::equilibria::cartan_family(1).unwrap();
        let e = orbit_tangent_basis(&f.build(1.0, 1.0)).unwrap_err();
        assert!(matches!(e, Error::DegeneratePoint(_)));
        assert!(orbit_tangent_basis(&SkewMatrix::zeros(5).unwrap()).is_err());
    }

    #[test]
    fn reference_spectrum() {
        let p = cartan_point(1, WeylSlot::AB, &OrbitInvariants::new(2.5, 4.25)).unwrap();
        let rep = restricted_spectrum(&p, &lam0()).unwrap();
        assert!(!rep.is_unstable());
        assert!(rep.pairing_residual < 1e-8);
        let ev = rep.complex();
        let want = [(2.0f64 / 300.0).sqrt(), (48.0f64 / 2430.0).sqrt()];
        for w in want {
            assert!(ev.iter().any(|z| (z - Complex::new(0.0, w)).norm() < 1e-10));
            assert!(ev
                .iter()
                .any(|z| (z - Complex::new(0.0, -w)).norm() < 1e-10));
        }
    }

    #[test]
    fn t3_has_positive_real_eigenvalue() {
        let p = cartan_point(3, WeylSlot::AB, &OrbitInvariants::new(2.5, 4.25)).unwrap();
        let rep = restricted_spectrum(&p, &lam0()).unwrap();
        assert!(rep.is_unstable());
        let (lambda, v) = dominant_mode(&p.matrix, &lam0()).unwrap();
        assert!(lambda.re > 0.0);
        let a = jacobian(&p.matrix, &lam0()).unwrap();
        let residual = (a * v - v * lambda.re).norm();
        assert!(
            lambda.im.abs() > 1e-9 || residual < 1e-9,
            "residual {residual}"
        );
    }
}
