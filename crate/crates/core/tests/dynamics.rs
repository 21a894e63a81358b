//! Integration runs: conservation, projection and CSV output.

use so5_core::dynamics::{
    conservation_report, integrate, stable_boundedness, write_csv, IntegrationConfig, Scheme,
};
use so5_core::equilibria::cartan_point;
use so5_core::lie::so5::coords_to_matrix;
use so5_core::sampling::{random_coords, random_ordered_so5, rng_from_seed};
use so5_core::{InertiaSpec, OrbitInvariants, WeylSlot};

#[test]
fn random_states_conserve_all_tracked_integrals() {
    let mut rng = rng_from_seed(99);
    for _ in 0..4 {
        let j = random_ordered_so5(&mut rng);
        let m0 = coords_to_matrix(&random_coords(&mut rng, 1.0));
        let traj = integrate(&m0, &j, &IntegrationConfig::new(1e-3, 10_000)).unwrap();
        let report = conservation_report(&traj, &j).unwrap();
        assert_eq!(report.drifts.len(), 11);
        assert!(report.within(1e-6), "{report:#?}");
    }
}

#[test]
fn projection_pins_casimirs_tighter_than_plain_rk4() {
    let j = InertiaSpec::new(vec![5.0, 4.0, 3.0, 2.0, 1.0]).unwrap();
    let m0 = coords_to_matrix(&random_coords(&mut rng_from_seed(5), 3.0));
    let config = IntegrationConfig::new(2e-2, 2_000).with_stride(10);
    let plain = conservation_report(&integrate(&m0, &j, &config).unwrap(), &j).unwrap();
    let proj = conservation_report(
        &integrate(&m0, &j, &config.with_scheme(Scheme::Rk4Projected)).unwrap(),
        &j,
    )
    .unwrap();
    for name in ["C1", "C2"] {
        assert!(proj.drift_of(name).unwrap() <= 1e-12, "{name}");
        assert!(proj.drift_of(name).unwrap() <= plain.drift_of(name).unwrap());
    }
}

#[test]
fn strided_trajectory_times_are_uniform() {
    let j = InertiaSpec::new(vec![5.0, 4.0, 3.0, 2.0, 1.0]).unwrap();
    let m0 = coords_to_matrix(&random_coords(&mut rng_from_seed(8), 1.0));
    let traj = integrate(
        &m0,
        &j,
        &IntegrationConfig::new(1e-3, 1_000).with_stride(250),
    )
    .unwrap();
    assert_eq!(traj.times, vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    let mut out = Vec::new();
    write_csv(&traj, &mut out).unwrap();
    let text = String::from_utf8(out).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("t,x1,x2,x3,y1,y2,y3,z1,z2,z3,z4"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn long_run_near_stable_point_stays_bounded() {
    let j = InertiaSpec::new(vec![5.0, 4.0, 3.0, 2.0, 1.0]).unwrap();
    let eq = cartan_point(1, WeylSlot::NegANegB, &OrbitInvariants::new(2.5, 4.25)).unwrap();
    let run = stable_boundedness(&eq.matrix, &j, 1e-4, 100.0, 17).unwrap();
    assert!(run.max_ratio < 10.0, "{run:?}");
}
