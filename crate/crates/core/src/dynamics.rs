//! Fixed-step time integration of Ṁ = [M, Ω] and drift monitoring.

use std::io::Write;

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use crate::equilibria::OrbitInvariants;
use crate::error::{Error, Result};
use crate::invariants::{Integral, TRACKED};
use crate::lie::so5::{
    self, coords_to_matrix, matrix_to_coords, Coordinates10, Vec10, COORD_NAMES,
};
use crate::lie::{omega_from_momentum, rigid_body_rhs, InertiaSpec, SkewMatrix};
use crate::stability::linear::dominant_mode;

/// dt·‖Ω(M₀)‖ above this triggers a warning.
pub const STEP_WARNING: f64 = 0.1;
const PROJECTION_TOL: f64 = 1e-13;
const PROJECTION_MAX_ITER: usize = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    Rk4,
    /// RK4 followed by a Newton projection back onto the initial (C₁, C₂)
    /// level set; so(5) only.
    Rk4Projected,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntegrationConfig {
    pub dt: f64,
    pub steps: usize,
    pub scheme: Scheme,
    /// Keep every `stride`-th state.
    pub stride: usize,
}

impl IntegrationConfig {
    pub fn new(dt: f64, steps: usize) -> Self {
        Self {
            dt,
            steps,
            scheme: Scheme::Rk4,
            stride: 1,
        }
    }

    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_stride(mut self, stride: usize) -> Self {
        self.stride = stride;
        self
    }

    fn validate(&self) -> Result<()> {
        if !(self.dt.is_finite() && self.dt > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "dt must be positive, got {}",
                self.dt
            )));
        }
        if self.stride == 0 {
            return Err(Error::InvalidArgument("stride must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<SkewMatrix>,
    pub scheme: Scheme,
    pub dt: f64,
    pub stride: usize,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn last(&self) -> &SkewMatrix {
        self.states
            .last()
            .expect("a trajectory holds at least the initial state")
    }

    /// max_t ‖M(t) − center‖.
    pub fn max_deviation(&self, center: &SkewMatrix) -> Result<f64> {
        self.states
            .iter()
            .map(|s| {
                s.check_same(center)?;
                Ok((s - center).norm())
            })
            .try_fold(0.0, |acc, d: Result<f64>| Ok(f64::max(acc, d?)))
    }
}

/// One classical RK4 step.
pub fn rk4_step(m: &SkewMatrix, j: &InertiaSpec, dt: f64) -> Result<SkewMatrix> {
    let k1 = rigid_body_rhs(m, j)?;
    let k2 = rigid_body_rhs(&(m + &k1.scaled(0.5 * dt)), j)?;
    let k3 = rigid_body_rhs(&(m + &k2.scaled(0.5 * dt)), j)?;
    let k4 = rigid_body_rhs(&(m + &k3.scaled(dt)), j)?;
    let mut next = m.clone();
    next.axpy(dt / 6.0, &k1)?;
    next.axpy(dt / 3.0, &k2)?;
    next.axpy(dt / 3.0, &k3)?;
    next.axpy(dt / 6.0, &k4)?;
    Ok(next)
}

/// Newton iteration along span(∇C₁, ∇C₂) until both Casimirs match
/// `target` to 1e-13 relative, at most five iterations.
pub fn project_to_level_set(m: &SkewMatrix, target: &OrbitInvariants) -> Result<SkewMatrix> {
    let mut c = matrix_to_coords(m)?;
    let goal = Vector2::new(target.c1, target.c2);
    for _ in 0..PROJECTION_MAX_ITER {
        let r = Vector2::new(so5::c1_coords(&c), so5::c2_coords(&c)) - goal;
        if r[0].abs() <= PROJECTION_TOL * (1.0 + goal[0].abs())
            && r[1].abs() <= PROJECTION_TOL * (1.0 + goal[1].abs())
        {
            break;
        }
        let g1 = so5::grad_c1(&c);
        let g2 = so5::grad_c2(&c);
        let a = Matrix2::new(g1.dot(&g1), g1.dot(&g2), g2.dot(&g1), g2.dot(&g2));
        let Some(inv) = a.try_inverse() else {
            return Err(Error::DegeneratePoint(0.0));
        };
        let mu = -(inv * r);
        let step = g1 * mu[0] + g2 * mu[1];
        for k in 0..10 {
            c[k] += step[k];
        }
    }
    Ok(coords_to_matrix(&c))
}

/// Integrates from `m0`. States are stored every `stride` steps, starting
/// with `m0` itself.
pub fn integrate(
    m0: &SkewMatrix,
    j: &InertiaSpec,
    config: &IntegrationConfig,
) -> Result<Trajectory> {
    config.validate()?;
    j.check_dim(m0.dim())?;
    if !m0.is_finite() {
        return Err(Error::NonFiniteState { step: 0 });
    }
    let target = match config.scheme {
        Scheme::Rk4 => None,
        Scheme::Rk4Projected => Some(OrbitInvariants::of_matrix(m0)?),
    };
    let omega_norm = omega_from_momentum(m0, j)?.norm();
    if config.dt * omega_norm > STEP_WARNING {
        log::warn!(
            "dt * |Omega(M0)| = {:.3e} exceeds {STEP_WARNING}; RK4 accuracy will suffer",
            config.dt * omega_norm
        );
    }

    let capacity = config.steps / config.stride + 1;
    let mut times = Vec::with_capacity(capacity);
    let mut states = Vec::with_capacity(capacity);
    times.push(0.0);
    states.push(m0.clone());
    let mut m = m0.clone();
    for step in 1..=config.steps {
        m = rk4_step(&m, j, config.dt)?;
        if let Some(t) = &target {
            m = project_to_level_set(&m, t)?;
        }
        if !m.is_finite() {
            return Err(Error::NonFiniteState { step });
        }
        if step % config.stride == 0 {
            times.push(step as f64 * config.dt);
            states.push(m.clone());
        }
    }
    Ok(Trajectory {
        times,
        states,
        scheme: config.scheme,
        dt: config.dt,
        stride: config.stride,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Drift {
    pub integral: String,
    pub initial: f64,
    /// max_t |I(t) − I(0)| / (1 + |I(0)|)
    pub max_drift: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConservationReport {
    pub drifts: Vec<Drift>,
}

impl ConservationReport {
    pub fn max_drift(&self) -> f64 {
        self.drifts.iter().map(|d| d.max_drift).fold(0.0, f64::max)
    }

    pub fn drift_of(&self, name: &str) -> Option<f64> {
        self.drifts
            .iter()
            .find(|d| d.integral == name)
            .map(|d| d.max_drift)
    }

    pub fn within(&self, bound: f64) -> bool {
        self.max_drift() <= bound
    }
}

/// Relative drift of H, C₁, C₂, K₁, K₂, K₃, F₁…F₅ along an so(5) trajectory.
pub fn conservation_report(traj: &Trajectory, j: &InertiaSpec) -> Result<ConservationReport> {
    let first = traj
        .states
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty trajectory".into()))?;
    let c0 = matrix_to_coords(first)?;
    let initial: Vec<f64> = TRACKED
        .iter()
        .map(|i| i.value(&c0, j))
        .collect::<Result<_>>()?;
    let mut worst = vec![0.0_f64; TRACKED.len()];
    for s in &traj.states[1..] {
        let c = matrix_to_coords(s)?;
        for (k, integral) in TRACKED.iter().enumerate() {
            let d = (integral.value(&c, j)? - initial[k]).abs() / (1.0 + initial[k].abs());
            worst[k] = worst[k].max(d);
        }
    }
    Ok(ConservationReport {
        drifts: TRACKED
            .iter()
            .zip(initial.iter().zip(worst))
            .map(|(i, (&initial, max_drift))| Drift {
                integral: i.to_string(),
                initial,
                max_drift,
            })
            .collect(),
    })
}

/// Value of one tracked integral along the trajectory.
pub fn integral_series(traj: &Trajectory, j: &InertiaSpec, integral: Integral) -> Result<Vec<f64>> {
    traj.states
        .iter()
        .map(|s| integral.value(&matrix_to_coords(s)?, j))
        .collect()
}

/// CSV with header `t,x1,…,z4`; values printed with 17 significant digits.
pub fn write_csv<W: Write>(traj: &Trajectory, mut out: W) -> std::io::Result<()> {
    writeln!(out, "t,{}", COORD_NAMES.join(","))?;
    for (t, s) in traj.times.iter().zip(&traj.states) {
        let c = matrix_to_coords(s).map_err(std::io::Error::other)?;
        write!(out, "{t:.16e}")?;
        for v in c.0 {
            write!(out, ",{v:.16e}")?;
        }
        writeln!(out)?;
    }
    Ok(())
}

/// Outcome of integrating from M* + ε·v, with v a unit coordinate vector.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbationRun {
    pub epsilon: f64,
    pub dt: f64,
    pub horizon: f64,
    /// max_t ‖M(t) − M*‖ / ε
    pub max_ratio: f64,
    pub threshold: f64,
    /// First time the ratio reached `threshold`.
    pub crossing: Option<f64>,
}

/// Integrates from `center` displaced by `epsilon` along `direction` up to
/// `horizon`, tracking the distance to `center`. Nothing is stored, so long
/// horizons are cheap.
pub fn perturbation_run(
    center: &SkewMatrix,
    j: &InertiaSpec,
    direction: &Vec10,
    epsilon: f64,
    horizon: f64,
    dt: f64,
    threshold: f64,
) -> Result<PerturbationRun> {
    IntegrationConfig::new(dt, 1).validate()?;
    let norm = direction.norm();
    if !(norm.is_finite() && norm > 0.0 && epsilon > 0.0 && horizon > 0.0) {
        return Err(Error::InvalidArgument(
            "perturbation needs a nonzero direction and positive epsilon and horizon".into(),
        ));
    }
    let mut m = center.clone();
    m.axpy(
        epsilon / norm,
        &coords_to_matrix(&Coordinates10::from_vector(direction)),
    )?;
    let steps = (horizon / dt).ceil() as usize;
    let mut max_ratio = (&m - center).norm() / epsilon;
    let mut crossing = None;
    for step in 1..=steps {
        m = rk4_step(&m, j, dt)?;
        if !m.is_finite() {
            return Err(Error::NonFiniteState { step });
        }
        let ratio = (&m - center).norm() / epsilon;
        max_ratio = max_ratio.max(ratio);
        if crossing.is_none() && ratio >= threshold {
            crossing = Some(step as f64 * dt);
        }
    }
    Ok(PerturbationRun {
        epsilon,
        dt,
        horizon,
        max_ratio,
        threshold,
        crossing,
    })
}

/// Bounded-deviation check near a stable equilibrium: a seeded random
/// direction in all ten coordinates, deviation kept below 10ε.
pub fn stable_boundedness(
    center: &SkewMatrix,
    j: &InertiaSpec,
    epsilon: f64,
    horizon: f64,
    seed: u64,
) -> Result<PerturbationRun> {
    let direction = crate::sampling::random_coords(&mut crate::sampling::rng_from_seed(seed), 1.0);
    perturbation_run(
        center,
        j,
        &direction.to_vector(),
        epsilon,
        horizon,
        1e-3,
        10.0,
    )
}

/// Growth check near an unstable equilibrium: perturb along the dominant
/// eigenvector and require a 10x deviation within 5 / Re(λ).
pub fn unstable_growth(
    center: &SkewMatrix,
    j: &InertiaSpec,
    epsilon: f64,
) -> Result<(f64, PerturbationRun)> {
    let (lambda, v) = dominant_mode(center, j)?;
    if lambda.re <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "no growing mode: leading eigenvalue {lambda}"
        )));
    }
    let run = perturbation_run(center, j, &v, epsilon, 5.0 / lambda.re, 1e-3, 10.0)?;
    Ok((lambda.re, run))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equilibria::{cartan_point, WeylSlot};
    use crate::sampling;

    fn lam0() -> InertiaSpec {
        InertiaSpec::new(vec![5.0, 4.0, 3.0, 2.0, 1.0]).unwrap()
    }

    #[test]
    fn equilibrium_is_a_fixed_point() {
        let eq = cartan_point(1, WeylSlot::AB, &OrbitInvariants::new(2.5, 4.25)).unwrap();
        let traj = integrate(
            &eq.matrix,
            &lam0(),
            &IntegrationConfig::new(1e-3, 10_000).with_stride(100),
        )
        .unwrap();
        assert_eq!(traj.len(), 101);
        assert!(traj.max_deviation(&eq.matrix).unwrap() <= 1e-12);
        let rep = conservation_report(&traj, &lam0()).unwrap();
        assert_eq!(rep.drifts.len(), 11);
        assert!(rep.within(1e-14));
    }

    #[test]
    fn random_start_conserves_integrals() {
        let mut rng = sampling::rng_from_seed(5);
        let m0 = coords_to_matrix(&sampling::random_coords(&mut rng, 1.0));
        let traj = integrate(&m0, &lam0(), &IntegrationConfig::new(1e-3, 10_000)).unwrap();
        let rep = conservation_report(&traj, &lam0()).unwrap();
        assert!(rep.within(1e-6), "{rep:?}");
    }

    #[test]
    fn rk4_order() {
        let mut rng = sampling::rng_from_seed(3);
        let m0 = coords_to_matrix(&sampling::random_coords(&mut rng, 3.0));
        let drift = |dt: f64| {
            let traj = integrate(
                &m0,
                &lam0(),
                &IntegrationConfig::new(dt, (20.0 / dt) as usize),
            )
            .unwrap();
            conservation_report(&traj, &lam0())
                .unwrap()
                .drift_of("H")
                .unwrap()
        };
        let ratio = drift(0.1) / drift(0.05);
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn projection_pins_casimirs() {
        let mut rng = sampling::rng_from_seed(8);
        let m0 = coords_to_matrix(&sampling::random_coords(&mut rng, 2.0));
        let inv0 = OrbitInvariants::of_matrix(&m0).unwrap();
        let cfg = IntegrationConfig::new(0.02, 500).with_scheme(Scheme::Rk4Projected);
        let traj = integrate(&m0, &lam0(), &cfg).unwrap();
        for s in &traj.states {
            let inv = OrbitInvariants::of_matrix(s).unwrap();
            assert!((inv.c1 - inv0.c1).abs() <= 1e-12 * inv0.c1.abs());
            assert!((inv.c2 - inv0.c2).abs() <= 1e-12 * inv0.c2.abs());
        }
    }

    #[test]
    fn generic_dimension_runs() {
        let mut rng = sampling::rng_from_seed(2);
        let j = sampling::random_inertia(&mut rng, 7);
        let m0 = sampling::random_skew(&mut rng, 7);
        let traj = integrate(&m0, &j, &IntegrationConfig::new(1e-3, 50)).unwrap();
        assert_eq!(traj.last().dim(), 7);
        assert!(integrate(
            &m0,
            &j,
            &IntegrationConfig::new(1e-3, 5).with_scheme(Scheme::Rk4Projected)
        )
        .is_err());
    }

    #[test]
    fn rejects_bad_config_and_blowup() {
        let m0 = coords_to_matrix(&crate::Coordinates10([1.0; 10]));
        assert!(integrate(&m0, &lam0(), &IntegrationConfig::new(0.0, 5)).is_err());
        assert!(integrate(
            &m0,
            &lam0(),
            &IntegrationConfig::new(1e-3, 5).with_stride(0)
        )
        .is_err());
        let big = m0.scaled(1e3);
        assert!(matches!(
            integrate(&big, &lam0(), &IntegrationConfig::new(10.0, 200)),
            Err(Error::NonFiniteState { .. })
        ));
    }

    #[test]
    fn csv_layout() {
        let eq = cartan_point(1, WeylSlot::AB, &OrbitInvariants::new(2.5, 4.25)).unwrap();
        let traj = integrate(&eq.matrix, &lam0(), &IntegrationConfig::new(0.5, 2)).unwrap();
        let mut buf = Vec::new();
        write_csv(&traj, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], "t,x1,x2,x3,y1,y2,y3,z1,z2,z3,z4");
        assert_eq!(lines.len(), 4);
        assert!(lines[2].starts_with("5.0000000000000000e-1,"));
        let parsed: f64 = lines[1].split(',').nth(3).unwrap().parse().unwrap();
        assert_eq!(parsed, matrix_to_coords(&eq.matrix).unwrap()[2]);
    }

    #[test]
    fn stable_point_stays_close() {
        let eq = cartan_point(1, WeylSlot::AB, &OrbitInvariants::new(2.5, 4.25)).unwrap();
        let run = stable_boundedness(&eq.matrix, &lam0(), 1e-4, 10.0, 5).unwrap();
        assert!(run.crossing.is_none() && run.max_ratio < 10.0, "{run:?}");
        assert!(run.max_ratio >= 1.0 - 1e-12);
    }

    #[test]
    fn unstable_point_grows() {
        let eq = cartan_point(3, WeylSlot::AB, &OrbitInvariants::new(2.5, 4.25)).unwrap();
        let (rate, run) = unstable_growth(&eq.matrix, &lam0(), 1e-6).unwrap();
        assert!(rate > 0.0);
        assert!(run.crossing.is_some(), "{run:?}");
        let stable = cartan_point(1, WeylSlot::AB, &OrbitInvariants::new(2.5, 4.25)).unwrap();
        assert!(unstable_growth(&stable.matrix, &lam0(), 1e-6).is_err());
    }
}
