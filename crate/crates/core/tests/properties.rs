//! Property tests for the algebraic layer and the integrals.

use proptest::prelude::*;
use so5_core::dynamics::rk4_step;
use so5_core::equilibria::{cartan_point, is_equilibrium, OrbitInvariants, WeylSlot};
use so5_core::invariants::{casimirs, generator_integrals, mishchenko_integral, Integral, TRACKED};
use so5_core::lie::so5::{coords_to_matrix, matrix_to_coords, poisson_tensor};
use so5_core::lie::{hamiltonian, inner_product, rigid_body_rhs};
use so5_core::{Coordinates10, InertiaSpec, SkewMatrix};

fn skew(n: usize) -> impl Strategy<Value = SkewMatrix> {
    prop::collection::vec(-3.0..3.0f64, n * (n - 1) / 2)
        .prop_map(move |u| SkewMatrix::from_upper(n, u).unwrap())
}

fn coords() -> impl Strategy<Value = Coordinates10> {
    prop::array::uniform10(-2.0..2.0f64).prop_map(Coordinates10)
}

/// Distinct positive λ with gaps of at least 0.1, in random order.
fn inertia(n: usize) -> impl Strategy<Value = InertiaSpec> {
    (
        prop::collection::vec(0.1..1.0f64, n),
        0.2..1.0f64,
        Just(()).prop_perturb(move |_, mut rng| {
            let mut idx: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                idx.swap(i, rng.random_range(0..=i));
            }
            idx
        }),
    )
        .prop_map(|(gaps, base, perm)| {
            let mut sorted = Vec::with_capacity(gaps.len());
            let mut acc = base;
            for g in gaps {
                sorted.push(acc);
                acc += g;
            }
            InertiaSpec::new(perm.iter().map(|&i| sorted[i]).collect()).unwrap()
        })
}

fn dim_and_state() -> impl Strategy<Value = (SkewMatrix, InertiaSpec)> {
    (4usize..=8).prop_flat_map(|n| (skew(n), inertia(n)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn coordinates_round_trip(c in coords()) {
        let back = matrix_to_coords(&coords_to_matrix(&c)).unwrap();
        prop_assert_eq!(back, c);
    }

    #[test]
    fn commutator_is_antisymmetric_and_satisfies_jacobi(
        x in skew(5), y in skew(5), z in skew(5),
    ) {
        let xy = x.commutator(&y).unwrap();
        let yx = y.commutator(&x).unwrap();
        prop_assert!((&xy + &yx).max_abs() == 0.0);
        let jac = &(&x.commutator(&y.commutator(&z).unwrap()).unwrap()
            + &y.commutator(&z.commutator(&x).unwrap()).unwrap())
            + &z.commutator(&xy).unwrap();
        prop_assert!(jac.max_abs() <= 1e-11);
    }

    #[test]
    fn energy_is_quadratic((m, j) in dim_and_state(), s in -3.0..3.0f64) {
        let h = hamiltonian(&m, &j).unwrap();
        let hs = hamiltonian(&m.scaled(s), &j).unwrap();
        prop_assert!((hs - s * s * h).abs() <= 1e-12 * (1.0 + s * s * h.abs()));
    }

    #[test]
    fn generator_identity_any_dimension((m, j) in dim_and_state()) {
        let f = generator_integrals(&m, &j).unwrap();
        for r in 1..=j.dim() as u32 {
            let mr = mishchenko_integral(&m, &j, r).unwrap();
            let sum: f64 = j.lambdas().iter().zip(&f).map(|(l, fi)| l.powi(r as i32) * fi).sum();
            prop_assert!((mr - sum).abs() <= 1e-10 * (1.0 + mr.abs()), "r = {}", r);
        }
    }

    #[test]
    fn vector_field_is_orthogonal_to_momentum((m, j) in dim_and_state()) {
        // ⟨M, [M, Ω]⟩ = 0 keeps C₁ constant
        let f = rigid_body_rhs(&m, &j).unwrap();
        let ip = inner_product(&m, &f).unwrap();
        prop_assert!(ip.abs() <= 1e-11 * (1.0 + m.norm().powi(2) * f.norm()));
    }

    #[test]
    fn casimirs_are_coadjoint_invariant(c in coords(), x in skew(5)) {
        // first-order invariance under M ↦ M + t[X, M]
        let m = coords_to_matrix(&c);
        let dir = matrix_to_coords(&x.commutator(&m).unwrap()).unwrap().to_vector();
        let h = 1e-5;
        let plus = casimirs(&(&m + &coords_to_matrix(&Coordinates10::from_vector(&(dir * h))))).unwrap();
        let minus = casimirs(&(&m - &coords_to_matrix(&Coordinates10::from_vector(&(dir * h))))).unwrap();
        let scale = 1.0 + m.norm().powi(4) * x.norm();
        prop_assert!(((plus.0 - minus.0) / (2.0 * h)).abs() <= 1e-6 * scale);
        prop_assert!(((plus.1 - minus.1) / (2.0 * h)).abs() <= 1e-6 * scale);
    }

    #[test]
    fn poisson_tensor_is_skew(c in coords()) {
        let g = poisson_tensor(&c);
        prop_assert!((g + g.transpose()).abs().max() == 0.0);
    }

    #[test]
    fn tracked_integrals_have_vanishing_time_derivative(c in coords(), j in inertia(5)) {
        let rhs = matrix_to_coords(&rigid_body_rhs(&coords_to_matrix(&c), &j).unwrap())
            .unwrap()
            .to_vector();
        for integral in TRACKED {
            let g = integral.gradient(&c, &j).unwrap();
            let d = g.dot(&rhs);
            prop_assert!(
                d.abs() <= 1e-10 * (1.0 + g.norm() * rhs.norm()),
                "{}: {}", integral, d
            );
        }
    }

    #[test]
    fn rk4_step_keeps_structure(m in skew(5), j in inertia(5)) {
        let next = rk4_step(&m, &j, 1e-3).unwrap();
        prop_assert_eq!(next.dim(), 5);
        prop_assert!(next.is_finite());
        let d = (Integral::C1.value(&matrix_to_coords(&next).unwrap(), &j).unwrap()
            - Integral::C1.value(&matrix_to_coords(&m).unwrap(), &j).unwrap())
            .abs();
        prop_assert!(d <= 1e-9 * (1.0 + m.norm().powi(2)));
    }

    #[test]
    fn weyl_points_are_equilibria(
        b in 0.3..2.0f64, ratio in 1.2..3.0f64, k in 1usize..=15, slot in 0usize..8,
        j in inertia(5),
    ) {
        let inv = OrbitInvariants::from_ab(b * ratio, b);
        let p = cartan_point(k, WeylSlot::ALL[slot], &inv).unwrap();
        prop_assert!(is_equilibrium(&p.matrix, &j, 1e-12).unwrap().is_equilibrium);
        let (c1, c2) = casimirs(&p.matrix).unwrap();
        prop_assert!((c1 - inv.c1).abs() <= 1e-12 * inv.c1);
        prop_assert!((c2 - inv.c2).abs() <= 1e-12 * inv.c2);
    }
}
