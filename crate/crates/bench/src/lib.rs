//! Shared inputs for the benchmarks.

use so5_core::lie::so5::coords_to_matrix;
use so5_core::sampling::{random_coords, rng_from_seed};
use so5_core::{InertiaSpec, OrbitInvariants, SkewMatrix};

/// λ = (5, 4, 3, 2, 1).
pub fn reference_inertia() -> InertiaSpec {
    InertiaSpec::ordered_so5(vec![5.0, 4.0, 3.0, 2.0, 1.0]).expect("ordered")
}

/// (c₁, c₂) = (2.5, 4.25), i.e. (a, b) = (2, 1).
pub fn reference_orbit() -> OrbitInvariants {
    OrbitInvariants::new(2.5, 4.25)
}

/// A fixed generic so(5) state of unit norm.
pub fn generic_state() -> SkewMatrix {
    coords_to_matrix(&random_coords(&mut rng_from_seed(1), 1.0))
}
