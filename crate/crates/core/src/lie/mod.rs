//! so(n) algebra and the rigid-body vector field.
//!
//! Everything here is generic in n except [`so5`], which carries the
//! explicit ten-coordinate realization.

mod inertia;
mod skew;
pub mod so5;

pub use inertia::InertiaSpec;
pub use skew::{inner_product, upper_len, SkewMatrix};

use crate::error::Result;

/// Ω with ω_ij = m_ij / (λ_i + λ_j).
pub fn omega_from_momentum(m: &SkewMatrix, j: &InertiaSpec) -> Result<SkewMatrix> {
    j.check_dim(m.dim())?;
    SkewMatrix::from_fn(m.dim(), |a, b| m.get(a, b) / j.pair_sum(a, b))
}

/// M = ΩJ + JΩ.
pub fn momentum_from_omega(omega: &SkewMatrix, j: &InertiaSpec) -> Result<SkewMatrix> {
    j.check_dim(omega.dim())?;
    SkewMatrix::from_fn(omega.dim(), |a, b| omega.get(a, b) * j.pair_sum(a, b))
}

/// Ṁ = [M, Ω].
pub fn rigid_body_rhs(m: &SkewMatrix, j: &InertiaSpec) -> Result<SkewMatrix> {
    let omega = omega_from_momentum(m, j)?;
    m.commutator(&omega)
}

/// H = ½ Σ_{i<j} m_ij² / (λ_i + λ_j).
pub fn hamiltonian(m: &SkewMatrix, j: &InertiaSpec) -> Result<f64> {
    j.check_dim(m.dim())?;
    let n = m.dim();
    let mut h = 0.0;
    for a in 0..n {
        for b in a + 1..n {
            let v = m.get(a, b);
            h += v * v / j.pair_sum(a, b);
        }
    }
    Ok(0.5 * h)
}

/// H = −¼ Tr(MΩ) through dense matrix products; kept as an independent path.
pub fn hamiltonian_trace(m: &SkewMatrix, j: &InertiaSpec) -> Result<f64> {
    let omega = omega_from_momentum(m, j)?;
    Ok(-0.25 * (m.to_dense() * omega.to_dense()).trace())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DMatrix;

    fn sample(n: usize) -> SkewMatrix {
        SkewMatrix::from_fn(n, |a, b| ((a * 7 + b * 3) as f64).sin() + 0.1 * b as f64).unwrap()
    }

    #[test]
    fn omega_of_reference_point() {
        let j = InertiaSpec::new(vec![5.0, 4.0, 3.0, 2.0, 1.0]).unwrap();
        let mut m = SkewMatrix::zeros(5).unwrap();
        m.set(0, 1, 2.0).unwrap();
        m.set(2, 3, 1.0).unwrap();
        let omega = omega_from_momentum(&m, &j).unwrap();
        assert_eq!(omega.get(0, 1), 2.0 / 9.0);
        assert_eq!(omega.get(2, 3), 1.0 / 5.0);
        assert_eq!(omega.max_abs(), 2.0 / 9.0);
        let h = hamiltonian(&m, &j).unwrap();
        assert!((h - 29.0 / 90.0).abs() < 1e-15);
    }

    #[test]
    fn momentum_map_is_matrix_identity() {
        let j = InertiaSpec::new(vec![2.5, -0.3, 1.1, 0.7, 4.0, 1.9]).unwrap();
        let m = sample(6);
        let omega = omega_from_momentum(&m, &j).unwrap();
        let jd = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(j.lambdas().to_vec()));
        let od = omega.to_dense();
        let rebuilt = &od * &jd + &jd * &od;
        let diff = (rebuilt - m.to_dense()).abs().max();
        assert!(diff <= 1e-13 * m.norm());
        assert_eq!(momentum_from_omega(&omega, &j).unwrap().upper().len(), 15);
    }

    #[test]
    fn zero_momentum_is_fixed() {
        let j = InertiaSpec::new(vec![3.0, 2.0, 1.0, 0.5]).unwrap();
        let z = SkewMatrix::zeros(4).unwrap();
        assert_eq!(rigid_body_rhs(&z, &j).unwrap(), z);
        assert_eq!(hamiltonian(&z, &j).unwrap(), 0.0);
    }

    #[test]
    fn hamiltonian_paths_agree() {
        for n in 3..9 {
            let lambdas = (0..n).map(|i| 1.0 + 0.37 * i as f64).collect();
            let j = InertiaSpec::new(lambdas).unwrap();
            let m = sample(n);
            let a = hamiltonian(&m, &j).unwrap();
            let b = hamiltonian_trace(&m, &j).unwrap();
            assert!((a - b).abs() <= 1e-13 * a.abs());
        }
    }

    #[test]
    fn energy_is_conserved_to_first_order() {
        // dH/dt = <Omega, [M, Omega]> = 0
        let j = InertiaSpec::new(vec![4.0, 3.0, 2.2, 1.0, 0.4]).unwrap();
        let m = sample(5);
        let omega = omega_from_momentum(&m, &j).unwrap();
        let rhs = rigid_body_rhs(&m, &j).unwrap();
        assert!(inner_product(&omega, &rhs).unwrap().abs() < 1e-13);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let j = InertiaSpec::new(vec![3.0, 2.0, 1.0]).unwrap();
        assert!(rigid_body_rhs(&sample(4), &j).is_err());
    }
}
