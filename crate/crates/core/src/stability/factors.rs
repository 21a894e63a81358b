//! Closed-form factorization of the restricted characteristic polynomial at
//! the Cartan-slot equilibria:
//!
//! U t² + U′ = 0,  V t² + V′ = 0,  W t⁴ + W′ t² + W″ = 0.
//!
//! The forms take (α, β) = magnitudes of the coordinates on the lower- and
//! higher-indexed basis element of t_k. W′ has no closed form here; it is
//! recovered from the quartic eigenvalues.

use std::ops::Neg;

use nalgebra::Complex;
use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::equilibria::{cartan_family, OrbitInvariants};
use crate::error::{Error, Result};
use crate::lie::InertiaSpec;

type Pair = (usize, usize);

struct FactorSpec {
    /// U = S(u.0)² S(u.1) S(u.2)
    u: [Pair; 3],
    /// U′ = sign β² D(·) D(·)
    u_prime: (i8, Pair, Pair),
    v: [Pair; 3],
    /// V′ = sign α² D(·) D(·)
    v_prime: (i8, Pair, Pair),
    /// W = S(w.0)⁴ S(w.1)⁴ Π S(w.2[i])
    w: (Pair, Pair, [Pair; 4]),
    /// W″ = sign Π D(·) [α² S(pa)² − β² S(pb)²]²
    w_double_prime: (i8, [Pair; 4], Pair, Pair),
}

macro_rules! spec {
    (U $u0:expr, $u1:expr, $u2:expr; Up $us:expr, $ud1:expr, $ud2:expr;
     V $v0:expr, $v1:expr, $v2:expr; Vp $vs:expr, $vd1:expr, $vd2:expr;
     W $w0:expr, $w1:expr, [$($wp:expr),*];
     Wpp $ws:expr, [$($wd:expr),*], $pa:expr, $pb:expr) => {
        FactorSpec {
            u: [$u0, $u1, $u2],
            u_prime: ($us, $ud1, $ud2),
            v: [$v0, $v1, $v2],
            v_prime: ($vs, $vd1, $vd2),
            w: ($w0, $w1, [$($wp),*]),
            w_double_prime: ($ws, [$($wd),*], $pa, $pb),
        }
    };
}

#[rustfmt::skip]
const SPECS: [FactorSpec; 15] = [
    spec!(U (3,4),(3,5),(4,5); Up 1,(3,5),(4,5); V (1,2),(1,5),(2,5); Vp 1,(1,5),(2,5);
          W (1,2),(3,4),[(1,3),(1,4),(2,3),(2,4)]; Wpp 1,[(1,3),(1,4),(2,3),(2,4)],(3,4),(1,2)),
    spec!(U (2,5),(1,2),(1,5); Up 1,(1,2),(1,5); V (3,4),(1,3),(1,4); Vp 1,(1,3),(1,4);
          W (2,5),(3,4),[(2,3),(2,4),(3,5),(4,5)]; Wpp 1,[(2,3),(2,4),(3,5),(4,5)],(2,5),(3,4)),
    spec!(U (1,5),(1,2),(2,5); Up -1,(1,2),(2,5); V (3,4),(2,3),(2,4); Vp 1,(2,3),(2,4);
          W (1,5),(3,4),[(1,3),(1,4),(3,5),(4,5)]; Wpp 1,[(1,3),(1,4),(3,5),(4,5)],(1,5),(3,4)),
    spec!(U (1,5),(1,3),(3,5); Up -1,(1,3),(3,5); V (2,4),(2,3),(3,4); Vp -1,(2,3),(3,4);
          W (1,5),(2,4),[(1,2),(1,4),(2,5),(4,5)]; Wpp 1,[(1,2),(1,4),(2,5),(4,5)],(1,5),(2,4)),
    spec!(U (1,5),(1,4),(4,5); Up -1,(1,4),(4,5); V (2,3),(2,4),(3,4); Vp 1,(2,4),(3,4);
          W (1,5),(2,3),[(1,2),(1,3),(2,5),(3,5)]; Wpp 1,[(1,2),(1,3),(2,5),(3,5)],(1,5),(2,3)),
    spec!(U (2,4),(2,5),(4,5); Up 1,(2,5),(4,5); V (1,3),(1,5),(3,5); Vp 1,(1,5),(3,5);
          W (1,3),(2,4),[(1,2),(1,4),(2,3),(3,4)]; Wpp -1,[(1,2),(1,4),(2,3),(3,4)],(2,4),(1,3)),
    spec!(U (3,5),(1,3),(1,5); Up 1,(1,3),(1,5); V (2,4),(1,4),(1,2); Vp 1,(1,2),(1,4);
          W (2,4),(3,5),[(2,3),(2,5),(3,4),(4,5)]; Wpp -1,[(2,3),(2,5),(3,4),(4,5)],(3,5),(2,4)),
    spec!(U (4,5),(1,4),(1,5); Up 1,(1,4),(1,5); V (2,3),(1,2),(1,3); Vp 1,(1,2),(1,3);
          W (2,3),(4,5),[(2,4),(2,5),(3,4),(3,5)]; Wpp 1,[(2,4),(2,5),(3,4),(3,5)],(4,5),(2,3)),
    spec!(U (1,4),(1,5),(4,5); Up 1,(1,5),(4,5); V (2,3),(2,5),(3,5); Vp 1,(2,5),(3,5);
          W (1,4),(2,3),[(1,2),(1,3),(2,4),(3,4)]; Wpp 1,[(1,2),(1,3),(2,4),(3,4)],(1,4),(2,3)),
    spec!(U (2,5),(2,4),(4,5); Up -1,(2,4),(4,5); V (1,3),(1,4),(3,4); Vp 1,(1,4),(3,4);
          W (1,3),(2,5),[(1,2),(1,5),(2,3),(3,5)]; Wpp -1,[(1,2),(1,5),(2,3),(3,5)],(2,5),(1,3)),
    spec!(U (2,5),(2,3),(3,5); Up -1,(2,3),(3,5); V (1,4),(1,3),(3,4); Vp -1,(1,3),(3,4);
          W (1,4),(2,5),[(1,2),(1,5),(2,4),(4,5)]; Wpp -1,[(1,2),(1,5),(2,4),(4,5)],(2,5),(1,4)),
    spec!(U (4,5),(3,4),(3,5); Up 1,(3,4),(3,5); V (1,2),(1,3),(2,3); Vp 1,(1,3),(2,3);
          W (1,2),(4,5),[(1,4),(1,5),(2,4),(2,5)]; Wpp 1,[(1,4),(1,5),(2,4),(2,5)],(4,5),(1,2)),
    spec!(U (3,5),(3,4),(4,5); Up -1,(3,4),(4,5); V (1,2),(1,4),(2,4); Vp 1,(1,4),(2,4);
          W (1,2),(3,5),[(1,3),(1,5),(2,3),(2,5)]; Wpp 1,[(1,3),(1,5),(2,3),(2,5)],(3,5),(1,2)),
    spec!(U (3,5),(2,3),(2,5); Up 1,(2,3),(2,5); V (1,4),(1,2),(2,4); Vp -1,(1,2),(2,4);
          W (1,4),(3,5),[(1,3),(1,5),(3,4),(4,5)]; Wpp -1,[(1,3),(1,5),(3,4),(4,5)],(3,5),(1,4)),
    spec!(U (4,5),(2,5),(2,4); Up 1,(2,4),(2,5); V (1,3),(1,2),(2,3); Vp -1,(1,2),(2,3);
          W (1,3),(4,5),[(1,4),(1,5),(3,4),(3,5)]; Wpp 1,[(1,4),(1,5),(3,4),(3,5)],(4,5),(1,3)),
];

/// Closed-form coefficients U, U′, V, V′, W, W″ in any numeric type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedForms<T> {
    pub u: T,
    pub u_prime: T,
    pub v: T,
    pub v_prime: T,
    pub w: T,
    pub w_double_prime: T,
}

/// Evaluates the closed forms of family `k` (1-based) at λ and (α, β).
/// Works for integers as well as floats, which is what makes exact
/// reproduction of the integer reference values possible.
pub fn closed_forms<T>(k: usize, lambdas: [T; 5], alpha: T, beta: T) -> Result<ClosedForms<T>>
where
    T: Num + Copy + Neg<Output = T>,
{
    if !(1..=15).contains(&k) {
        return Err(Error::IndexOutOfRange {
            what: "Cartan family",
            index: k,
            max: 15,
        });
    }
    let f = &SPECS[k - 1];
    let s = |p: Pair| lambdas[p.0 - 1] + lambdas[p.1 - 1];
    let d = |p: Pair| lambdas[p.0 - 1] - lambdas[p.1 - 1];
    let sign = |v: i8| if v < 0 { -T::one() } else { T::one() };
    let sq = |x: T| x * x;
    let (a2, b2) = (sq(alpha), sq(beta));

    let u = sq(s(f.u[0])) * s(f.u[1]) * s(f.u[2]);
    let u_prime = sign(f.u_prime.0) * b2 * d(f.u_prime.1) * d(f.u_prime.2);
    let v = sq(s(f.v[0])) * s(f.v[1]) * s(f.v[2]);
    let v_prime = sign(f.v_prime.0) * a2 * d(f.v_prime.1) * d(f.v_prime.2);
    let w = sq(sq(s(f.w.0))) * sq(sq(s(f.w.1))) * f.w.2.iter().fold(T::one(), |acc, &p| acc * s(p));
    let (ws, diffs, pa, pb) = f.w_double_prime;
    let bracket = a2 * sq(s(pa)) - b2 * sq(s(pb));
    let w_double_prime = sign(ws) * diffs.iter().fold(T::one(), |acc, &p| acc * d(p)) * sq(bracket);
    Ok(ClosedForms {
        u,
        u_prime,
        v,
        v_prime,
        w,
        w_double_prime,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorMatch {
    pub forms: ClosedForms<f64>,
    /// Roots ±√(−U′/U) and ±√(−V′/V) as [re, im].
    pub quadratic_roots: [[f64; 2]; 2],
    /// Worst relative mismatch between a quadratic root and its eigenvalue.
    pub quadratic_error: f64,
    /// Product of the four remaining eigenvalues, which should equal W″/W.
    pub quartic_product: f64,
    /// |product − W″/W| / |W″/W|, or the absolute product when W″ = 0.
    pub quartic_error: f64,
    /// W′ = −W (t₁² + t₂²) from the quartic eigenvalues.
    pub w_prime: f64,
}

fn csqrt(x: f64) -> Complex<f64> {
    Complex::new(x, 0.0).sqrt()
}

/// Assigns eigenvalues to the two quadratic factors (exhaustively, best
/// worst-case fit) and checks the remaining four against the quartic.
pub fn factor_match(
    k: usize,
    alpha: f64,
    beta: f64,
    j: &InertiaSpec,
    eigenvalues: &[Complex<f64>],
) -> Result<FactorMatch> {
    j.check_dim(5)?;
    if eigenvalues.len() != 8 {
        return Err(Error::InvalidArgument(format!(
            "factor match needs 8 eigenvalues, got {}",
            eigenvalues.len()
        )));
    }
    let l = j.lambdas();
    let forms = closed_forms(k, [l[0], l[1], l[2], l[3], l[4]], alpha, beta)?;
    let r1 = csqrt(-forms.u_prime / forms.u);
    let r2 = csqrt(-forms.v_prime / forms.v);
    let targets = [r1, -r1, r2, -r2];
    let rel = |z: Complex<f64>, t: Complex<f64>| {
        let scale = t.norm();
        if scale > 0.0 {
            (z - t).norm() / scale
        } else {
            z.norm()
        }
    };

    let mut best: Option<(f64, [usize; 4])> = None;
    for i0 in 0..8 {
        for i1 in (0..8).filter(|&x| x != i0) {
            for i2 in (0..8).filter(|&x| x != i0 && x != i1) {
                for i3 in (0..8).filter(|&x| x != i0 && x != i1 && x != i2) {
                    let idx = [i0, i1, i2, i3];
                    let err = idx
                        .iter()
                        .zip(&targets)
                        .map(|(&i, &t)| rel(eigenvalues[i], t))
                        .fold(0.0, f64::max);
                    if best.map_or(true, |(e, _)| err < e) {
                        best = Some((err, idx));
                    }
                }
            }
        }
    }
    let (quadratic_error, used) = best.expect("8 eigenvalues give candidates");
    let rest: Vec<Complex<f64>> = (0..8)
        .filter(|i| !used.contains(i))
        .map(|i| eigenvalues[i])
        .collect();
    let product = rest.iter().fold(Complex::new(1.0, 0.0), |acc, z| acc * z);
    let ratio = forms.w_double_prime / forms.w;
    let quartic_error = if ratio != 0.0 {
        (product - Complex::new(ratio, 0.0)).norm() / ratio.abs()
    } else {
        product.norm()
    };
    let sum_sq: Complex<f64> = rest.iter().map(|z| z * z).sum();
    Ok(FactorMatch {
        forms,
        quadratic_roots: [[r1.re, r1.im], [r2.re, r2.im]],
        quadratic_error,
        quartic_product: product.re,
        quartic_error,
        w_prime: -forms.w * sum_sq.re / 2.0,
    })
}

/// Closed forms plus the numerically recovered W′, for the builder
/// arguments (a, b) of M^k_{a,b}.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FactorCoefficients {
    pub k: usize,
    pub u: f64,
    pub u_prime: f64,
    pub v: f64,
    pub v_prime: f64,
    pub w: f64,
    pub w_prime: f64,
    pub w_double_prime: f64,
}

pub fn factor_coefficients(
    k: usize,
    a: f64,
    b: f64,
    j: &InertiaSpec,
) -> Result<FactorCoefficients> {
    j.check_ordered()?;
    let fam = cartan_family(k)?;
    let m = fam.build(a, b);
    let (alpha, beta) = fam.alpha_beta(&m)?;
    let (report, _, _) = super::linear::spectrum_of_matrix(&m, j)?;
    let fm = factor_match(k, alpha, beta, j, &report.complex())?;
    Ok(FactorCoefficients {
        k,
        u: fm.forms.u,
        u_prime: fm.forms.u_prime,
        v: fm.forms.v,
        v_prime: fm.forms.v_prime,
        w: fm.forms.w,
        w_prime: fm.w_prime,
        w_double_prime: fm.forms.w_double_prime,
    })
}

/// λ-sum pair entering the extra instability condition of t₆ and t₇.
fn special_pair(k: usize, j: &InertiaSpec) -> Result<(f64, f64)> {
    j.check_dim(5)?;
    let s = |a: usize, b: usize| j.pair_sum(a - 1, b - 1);
    match k {
        6 => Ok((s(2, 4), s(1, 3))),
        7 => Ok((s(2, 4), s(3, 5))),
        _ => Err(Error::InvalidArgument(format!(
            "the special condition is defined for t6 and t7 only, got t{k}"
        ))),
    }
}

/// c₁²(s₁⁴ + s₂⁴) ≠ c₂(s₁² + s₂²)², compared with relative tolerance 1e-12.
pub fn special_condition(k: usize, inv: &OrbitInvariants, j: &InertiaSpec) -> Result<bool> {
    inv.check()?;
    let (s1, s2) = special_pair(k, j)?;
    let lhs = inv.c1 * inv.c1 * (s1.powi(4) + s2.powi(4));
    let rhs = inv.c2 * (s1 * s1 + s2 * s2).powi(2);
    Ok((lhs - rhs).abs() > 1e-12 * lhs.abs().max(rhs.abs()))
}

/// The c₂ at which the special condition fails for a given c₁.
pub fn special_equality_c2(k: usize, c1: f64, j: &InertiaSpec) -> Result<f64> {
    let (s1, s2) = special_pair(k, j)?;
    Ok(c1 * c1 * (s1.powi(4) + s2.powi(4)) / (s1 * s1 + s2 * s2).powi(2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam0() -> InertiaSpec {
        InertiaSpec::new(vec![5.0, 4.0, 3.0, 2.0, 1.0]).unwrap()
    }

    #[test]
    fn exact_reference_values() {
        let f = closed_forms::<i128>(1, [5, 4, 3, 2, 1], 2, 1).unwrap();
        assert_eq!((f.u, f.u_prime, f.v, f.v_prime), (300, 2, 2430, 48));
        assert_eq!(f.w, 9_644_670_000);
        assert_eq!(f.w_double_prime, 4332);
        assert!(closed_forms::<i128>(0, [5, 4, 3, 2, 1], 2, 1).is_err());
    }

    #[test]
    fn u_v_w_positive_under_ordering() {
        for k in 1..=15 {
            let f = closed_forms::<i128>(k, [9, 7, 4, 2, 1], 3, 1).unwrap();
            assert!(f.u > 0 && f.v > 0 && f.w > 0, "t{k}");
        }
    }

    #[test]
    fn t6_quartic_constant_is_nonpositive() {
        let l = [5.0, 4.0, 3.0, 2.0, 1.0];
        let f = closed_forms(6, l, 2.0, 1.0).unwrap();
        assert!(f.w_double_prime < 0.0);
        // a²(λ₂+λ₄)² = b²(λ₁+λ₃)² → zero
        let a: f64 = 8.0 / 6.0;
        let g = closed_forms(6, l, a, 1.0).unwrap();
        assert!(g.w_double_prime.abs() < 1e-9);
    }

    #[test]
    fn special_condition_reference_values() {
        let j = lam0();
        let inv = OrbitInvariants::new(2.5, 4.25);
        assert!(special_condition(6, &inv, &j).unwrap());
        assert!(special_condition(7, &inv, &j).unwrap());
        for k in [6, 7] {
            let c2 = special_equality_c2(k, 2.5, &j).unwrap();
            let eq = OrbitInvariants::new(2.5, c2);
            assert!(eq.is_regular());
            assert!(!special_condition(k, &eq, &j).unwrap());
        }
        assert!(special_condition(5, &inv, &j).is_err());
        assert!((special_equality_c2(6, 2.5, &j).unwrap() - 6.25 * 5392.0 / 10000.0).abs() < 1e-12);
    }

    #[test]
    fn factor_coefficients_reference() {
        let fc = factor_coefficients(1, 2.0, 1.0, &lam0()).unwrap();
        assert_eq!(
            (fc.u, fc.u_prime, fc.v, fc.v_prime),
            (300.0, 2.0, 2430.0, 48.0)
        );
        assert_eq!(fc.w_double_prime, 4332.0);
        assert!(fc.w_prime.is_finite());
        let unordered = InertiaSpec::new(vec![4.0, 5.0, 3.0, 2.0, 1.0]).unwrap();
        assert!(factor_coefficients(1, 2.0, 1.0, &unordered).is_err());
    }
}
