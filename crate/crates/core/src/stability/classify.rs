//! Stability verdicts for the 120 Cartan-slot equilibria of a regular orbit.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::arnold::{search_definite, ArnoldCertificate, Definiteness, GeneratorCombo};
use super::factors::special_condition;
use super::linear::{
    eigenvalues8, jacobian, jacobian_commutator, orbit_tangent_basis, restricted_spectrum,
};
use crate::equilibria::{
    weyl_orbit_points, EquilibriumPoint, OrbitInvariants, SlotClass, WeylSlot,
};
use crate::error::{Error, Result};
use crate::lie::InertiaSpec;

pub const OPEN_NOTE: &str =
    "open: neither the spectrum nor an energy-Casimir function decides stability";
pub const NOT_SPECIAL_NOTE: &str =
    "open: the extra condition on (c1, c2) fails, so instability is not established";
pub const UNPRESCRIBED_NOTE: &str =
    "no energy-Casimir combination is prescribed for this slot class";
pub const NO_DEFINITE_NOTE: &str = "no tested energy-Casimir combination has a definite Hessian";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Unstable,
    NonlinearlyStable,
    Open,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Unstable => "unstable",
            Status::NonlinearlyStable => "nonlinearly_stable",
            Status::Open => "open",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Evidence {
    PositiveRealEigenvalue {
        value: [f64; 2],
        spectral_tol: f64,
    },
    NegativeDefiniteHessian {
        combo: GeneratorCombo,
        minor_signs: Option<String>,
    },
    PositiveDefiniteHessian {
        combo: GeneratorCombo,
        minor_signs: Option<String>,
    },
    OpenCase {
        note: String,
    },
}

/// The Arnold part of a verdict as it appears in the JSON output.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ArnoldSummary {
    pub combo: GeneratorCombo,
    pub m: f64,
    pub n: f64,
    pub minors: Option<Vec<f64>>,
    pub hessian_eigenvalues: Vec<f64>,
    pub definiteness: Definiteness,
    /// Combination prescribed for the slot class, when it differs from the
    /// one reported.
    pub prescribed: Option<GeneratorCombo>,
}

impl From<&ArnoldCertificate> for ArnoldSummary {
    fn from(c: &ArnoldCertificate) -> Self {
        Self {
            combo: c.combo.clone(),
            m: c.m,
            n: c.n,
            minors: c.minors.clone(),
            hessian_eigenvalues: c.hessian_eigenvalues.clone(),
            definiteness: c.definiteness,
            prescribed: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabilityVerdict {
    pub family: usize,
    pub slot: WeylSlot,
    pub status: Status,
    pub evidence: Evidence,
    /// Restricted eigenvalues as [re, im].
    pub spectrum: Vec<[f64; 2]>,
    pub arnold: Option<ArnoldSummary>,
    /// Set when the numerics contradict the instability expected for this
    /// slot class.
    pub disagreement: bool,
}

/// Energy-Casimir combination prescribed for a family and slot class.
pub fn prescribed_combo(k: usize, class: SlotClass) -> Option<GeneratorCombo> {
    use SlotClass::*;
    let (i, s, j) = match (k, class) {
        (1, AB) => (1, 1, 5),
        (1, BA) => (4, 1, 5),
        (2, AB) => (1, -1, 4),
        (8, AB) => (1, 1, 5),
        (8, BA) => (1, 1, 2),
        (9, BA) => (4, -1, 5),
        (12, AB) => (1, -1, 3),
        (12, BA) => (3, -1, 5),
        _ => return None,
    };
    Some(GeneratorCombo::pair(i, s, j))
}

/// Slot classes whose stability is left undecided.
pub fn is_open_class(k: usize, class: SlotClass) -> bool {
    matches!((k, class), (2, SlotClass::BA) | (9, SlotClass::AB))
}

/// What the classification is expected to find for a row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Unstable,
    /// Unstable when the t₆/t₇ condition on (c₁, c₂) holds, else open.
    UnstableIfSpecial,
    Stable,
    Open,
}

pub fn expectation(k: usize, class: SlotClass) -> Result<Expectation> {
    use SlotClass::*;
    Ok(match (k, class) {
        (3 | 4 | 5 | 10 | 11 | 13 | 14 | 15, _) => Expectation::Unstable,
        (6 | 7, BA) => Expectation::Unstable,
        (6 | 7, AB) => Expectation::UnstableIfSpecial,
        (1 | 8 | 12, _) | (2, AB) | (9, BA) => Expectation::Stable,
        (2, BA) | (9, AB) => Expectation::Open,
        _ => {
            return Err(Error::IndexOutOfRange {
                what: "Cartan family",
                index: k,
                max: 15,
            })
        }
    })
}

/// Row status: the common status of the four slots, or mixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RowStatus {
    Unstable,
    NonlinearlyStable,
    Open,
    Mixed,
}

impl From<Status> for RowStatus {
    fn from(s: Status) -> Self {
        match s {
            Status::Unstable => RowStatus::Unstable,
            Status::NonlinearlyStable => RowStatus::NonlinearlyStable,
            Status::Open => RowStatus::Open,
        }
    }
}

impl fmt::Display for RowStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowStatus::Mixed => f.write_str("mixed"),
            RowStatus::Unstable => Status::Unstable.fmt(f),
            RowStatus::NonlinearlyStable => Status::NonlinearlyStable.fmt(f),
            RowStatus::Open => Status::Open.fmt(f),
        }
    }
}

/// Resolves an expectation for an orbit into the row status it predicts.
pub fn expected_row_status(k: usize, class: SlotClass, special: bool) -> Result<RowStatus> {
    Ok(match expectation(k, class)? {
        Expectation::Unstable => RowStatus::Unstable,
        Expectation::UnstableIfSpecial if special => RowStatus::Unstable,
        Expectation::UnstableIfSpecial | Expectation::Open => RowStatus::Open,
        Expectation::Stable => RowStatus::NonlinearlyStable,
    })
}

fn open(note: impl Into<String>) -> Evidence {
    Evidence::OpenCase { note: note.into() }
}

/// Classifies one Cartan-slot equilibrium.
///
/// Order: positive real eigenvalue, then the t₆/t₇ condition, then the
/// energy-Casimir search for the classes that admit one.
pub fn classify_equilibrium(
    eq: &EquilibriumPoint,
    j: &InertiaSpec,
    inv: &OrbitInvariants,
) -> Result<StabilityVerdict> {
    j.check_ordered()?;
    inv.check()?;
    let (fam, slot) = eq.cartan().ok_or(Error::NotCartan)?;
    let (k, class) = (fam.k, slot.class());
    let report = restricted_spectrum(eq, j)?;
    let mut verdict = StabilityVerdict {
        family: k,
        slot,
        status: Status::Open,
        evidence: open(OPEN_NOTE),
        spectrum: report.eigenvalues.clone(),
        arnold: None,
        disagreement: false,
    };

    if matches!(k, 6 | 7) && class == SlotClass::AB && !special_condition(k, inv, j)? {
        verdict.evidence = open(NOT_SPECIAL_NOTE);
        return Ok(verdict);
    }
    if report.is_unstable() {
        verdict.status = Status::Unstable;
        verdict.evidence = Evidence::PositiveRealEigenvalue {
            value: report.eigenvalues[0],
            spectral_tol: report.spectral_tol,
        };
        return Ok(verdict);
    }
    if is_open_class(k, class) {
        return Ok(verdict);
    }
    let Some(combo) = prescribed_combo(k, class) else {
        verdict.disagreement = true;
        verdict.evidence = open(format!(
            "{UNPRESCRIBED_NOTE}; the spectrum is marginal (max Re {:e})",
            report.max_real
        ));
        return Ok(verdict);
    };
    let (found, tried) = search_definite(&eq.matrix, j, Some(&combo))?;
    match found {
        Some(cert) => {
            verdict.status = Status::NonlinearlyStable;
            let (used, minor_signs) = (cert.combo.clone(), cert.minor_signs());
            verdict.evidence = match cert.definiteness {
                Definiteness::Negative => Evidence::NegativeDefiniteHessian {
                    combo: used,
                    minor_signs,
                },
                _ => Evidence::PositiveDefiniteHessian {
                    combo: used,
                    minor_signs,
                },
            };
            let mut summary = ArnoldSummary::from(&cert);
            if cert.combo != combo {
                summary.prescribed = Some(combo);
            }
            verdict.arnold = Some(summary);
        }
        None => {
            verdict.evidence = open(NO_DEFINITE_NOTE);
            verdict.arnold = tried.first().map(Into::into);
        }
    }
    Ok(verdict)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RowVerdict {
    pub family: usize,
    pub class: SlotClass,
    pub status: RowStatus,
    pub slots: Vec<StabilityVerdict>,
}

pub fn row_status(slots: &[StabilityVerdict]) -> RowStatus {
    match slots.first() {
        Some(first) if slots.iter().all(|v| v.status == first.status) => first.status.into(),
        _ => RowStatus::Mixed,
    }
}

/// Verdicts for the requested families (all fifteen when empty), two rows
/// per family in the order (a,b) then (b,a).
pub fn classify_orbit(
    j: &InertiaSpec,
    inv: &OrbitInvariants,
    families: &[usize],
) -> Result<Vec<RowVerdict>> {
    j.check_ordered()?;
    inv.check()?;
    let all: Vec<usize> = (1..=15).collect();
    let families = if families.is_empty() {
        &all[..]
    } else {
        families
    };
    let mut rows = Vec::with_capacity(2 * families.len());
    for &k in families {
        let verdicts = weyl_orbit_points(k, inv)?
            .iter()
            .map(|eq| classify_equilibrium(eq, j, inv))
            .collect::<Result<Vec<_>>>()?;
        for class in [SlotClass::AB, SlotClass::BA] {
            let slots: Vec<_> = verdicts
                .iter()
                .filter(|v| v.slot.class() == class)
                .cloned()
                .collect();
            rows.push(RowVerdict {
                family: k,
                class,
                status: row_status(&slots),
                slots,
            });
        }
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Mismatch {
    pub family: usize,
    pub class: SlotClass,
    pub expected: RowStatus,
    pub got: RowStatus,
}

/// Rows whose status differs from the expectation table.
pub fn diff_expectations(
    rows: &[RowVerdict],
    j: &InertiaSpec,
    inv: &OrbitInvariants,
) -> Result<Vec<Mismatch>> {
    let mut out = Vec::new();
    for row in rows {
        let special = match row.family {
            6 | 7 => special_condition(row.family, inv, j)?,
            _ => true,
        };
        let expected = expected_row_status(row.family, row.class, special)?;
        if expected != row.status {
            out.push(Mismatch {
                family: row.family,
                class: row.class,
                expected,
                got: row.status,
            });
        }
    }
    Ok(out)
}

/// Independent re-check of an instability certificate: the Jacobian is
/// rebuilt from the commutator form, must agree with the component form to
/// 1e-10 relative, and its restricted spectrum must still have an
/// eigenvalue above the spectral tolerance.
pub fn recheck_instability(
    eq: &EquilibriumPoint,
    j: &InertiaSpec,
    verdict: &StabilityVerdict,
) -> Result<bool> {
    let Evidence::PositiveRealEigenvalue {
        value,
        spectral_tol,
    } = verdict.evidence
    else {
        return Ok(false);
    };
    let a = jacobian(&eq.matrix, j)?;
    let b = jacobian_commutator(&eq.matrix, j)?;
    if (a - b).norm() > 1e-10 * (1.0 + a.norm()) {
        return Ok(false);
    }
    let p = orbit_tangent_basis(&eq.matrix)?;
    let ev = eigenvalues8(&(p.transpose() * b * p))?;
    let top = ev[0];
    Ok(top.re > spectral_tol && (top.re - value[0]).abs() <= 1e-8 * (1.0 + value[0].abs()))
}
