//! Seeded random draws used by the verification suites, the census and the
//! tests. Every generator takes the RNG explicitly.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};

use crate::equilibria::OrbitInvariants;
use crate::lie::so5::Coordinates10;
use crate::lie::{InertiaSpec, SkewMatrix};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Entries i.i.d. standard normal.
pub fn random_skew<R: Rng + ?Sized>(rng: &mut R, n: usize) -> SkewMatrix {
    SkewMatrix::from_fn(n, |_, _| StandardNormal.sample(rng)).expect("n >= 3")
}

/// Standard normal coordinates rescaled to the requested norm.
pub fn random_coords<R: Rng + ?Sized>(rng: &mut R, norm: f64) -> Coordinates10 {
    let mut c = Coordinates10(std::array::from_fn(|_| StandardNormal.sample(rng)));
    let s = norm / c.norm();
    for k in 0..10 {
        c[k] *= s;
    }
    c
}

/// Positive distinct λ in [0.2, 5], consecutive sorted values at least 0.1
/// apart. Returned in random order.
pub fn random_inertia<R: Rng + ?Sized>(rng: &mut R, n: usize) -> InertiaSpec {
    let mut v = sorted_spread(rng, n);
    // Fisher-Yates keeps the draw independent of order
    for i in (1..n).rev() {
        let k = rng.random_range(0..=i);
        v.swap(i, k);
    }
    InertiaSpec::new(v).expect("spread draw is generic")
}

/// Strictly decreasing λ₁ > … > λ₅ in [0.2, 5] with gaps of at least 0.1.
pub fn random_ordered_so5<R: Rng + ?Sized>(rng: &mut R) -> InertiaSpec {
    let mut v = sorted_spread(rng, 5);
    v.reverse();
    InertiaSpec::ordered_so5(v).expect("spread draw is ordered")
}

fn sorted_spread<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    let dist = Uniform::new(0.2, 5.0).expect("valid range");
    loop {
        let mut v: Vec<f64> = (0..n).map(|_| dist.sample(rng)).collect();
        v.sort_by(f64::total_cmp);
        if v.windows(2).all(|w| w[1] - w[0] >= 0.1) {
            return v;
        }
    }
}

/// Regular orbit through M¹_{a,b} with b ∈ [0.3, 2] and a/b ∈ [1.2, 3].
pub fn random_regular_orbit<R: Rng + ?Sized>(rng: &mut R) -> OrbitInvariants {
    let b = rng.random_range(0.3..2.0);
    let a = b * rng.random_range(1.2..3.0);
    OrbitInvariants::from_ab(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible() {
        let a = random_skew(&mut rng_from_seed(7), 6);
        let b = random_skew(&mut rng_from_seed(7), 6);
        assert_eq!(a, b);
    }

    #[test]
    fn inertia_draws_are_valid() {
        let mut rng = rng_from_seed(1);
        for n in 3..9 {
            assert_eq!(random_inertia(&mut rng, n).dim(), n);
        }
        for _ in 0..20 {
            random_ordered_so5(&mut rng).check_ordered().unwrap();
            assert!(random_regular_orbit(&mut rng).is_regular());
        }
    }

    #[test]
    fn coords_have_requested_norm() {
        let c = random_coords(&mut rng_from_seed(3), 2.5);
        assert!((c.norm() - 2.5).abs() < 1e-14);
    }
}
