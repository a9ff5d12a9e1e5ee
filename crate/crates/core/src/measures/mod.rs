//! Extropy functionals of copula surfaces, computed by quadrature and
//! cross-checked against a registry of closed-form expressions.

mod registry;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::copula::{CopulaError, CopulaSurface, SectionKind};
use crate::quad::{self, Curve, IntegralResult, QuadError, QuadratureConfig};

pub use registry::{
    closed_form, registry_entries, trusted_closed_form, ClosedForm, Origin, RegistryEntry,
};
pub use verify::{
    verify_cocopula_identity, verify_dual_identity, verify_extropy_entropy_bound,
    verify_transform_theorems, EntropyBound, IdentityCheck, TransformCheck,
};

/// Agreement threshold between a closed form and the quadrature value.
pub const AGREEMENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "anchor", rename_all = "kebab-case")]
pub enum MeasureKind {
    /// `¼∬c²`
    CEx,
    /// `¼∬C²`
    CCEx,
    /// `¼∬C̄²`
    SCEx,
    /// `¼∬(u+v−C)²`
    DualEx,
    /// `¼∬(1−C(1−u,1−v))²`
    CoCopEx,
    /// `¼∫C(t,a)²dt`
    HorizontalEx(f64),
    /// `¼∫C(a,t)²dt`
    VerticalEx(f64),
    /// `¼∫C(t,t)²dt`
    DiagonalEx,
    /// `¼∬u·C²`
    WeightedCCEx,
    /// `∬(u+v)C`
    RFunctional,
    /// `∬(u+v)C̄`
    RStarFunctional,
    /// `−∬c·log c`
    CopulaEntropy,
    /// `−∬C̄·log C̄`
    SurvivalCopulaEntropy,
}

impl MeasureKind {
    pub fn name(&self) -> &'static str {
        match self {
            MeasureKind::CEx => "cex",
            MeasureKind::CCEx => "ccex",
            MeasureKind::SCEx => "scex",
            MeasureKind::DualEx => "dual",
            MeasureKind::CoCopEx => "cocopula",
            MeasureKind::HorizontalEx(_) => "horizontal",
            MeasureKind::VerticalEx(_) => "vertical",
            MeasureKind::DiagonalEx => "diagonal",
            MeasureKind::WeightedCCEx => "weighted-ccex",
            MeasureKind::RFunctional => "r",
            MeasureKind::RStarFunctional => "r-star",
            MeasureKind::CopulaEntropy => "entropy",
            MeasureKind::SurvivalCopulaEntropy => "survival-entropy",
        }
    }

    pub fn anchor(&self) -> Option<f64> {
        match self {
            MeasureKind::HorizontalEx(a) | MeasureKind::VerticalEx(a) => Some(*a),
            _ => None,
        }
    }

    pub fn needs_density(&self) -> bool {
        matches!(self, MeasureKind::CEx | MeasureKind::CopulaEntropy)
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.anchor() {
            Some(a) => write!(f, "{}({})", self.name(), a),
            None => f.write_str(self.name()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum MeasureError {
    #[error("{measure} needs a copula density, which {surface} does not have")]
    NoDensity { surface: String, measure: String },
    #[error(transparent)]
    Quadrature(#[from] QuadError),
    #[error(transparent)]
    Copula(#[from] CopulaError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Agree,
    /// A registry entry flagged as disputed disagrees with quadrature.
    PaperTableSuspect,
    NoClosedForm,
    /// A non-disputed registry entry disagrees with quadrature.
    Mismatch,
}

/// One registry entry compared against the quadrature value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryCheck {
    pub formula: String,
    pub origin: Origin,
    pub disputed: bool,
    pub value: f64,
    pub discrepancy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub kind: MeasureKind,
    pub surface: String,
    pub closed_form: Option<f64>,
    pub closed_form_disputed: bool,
    pub closed_form_formula: Option<String>,
    pub quadrature: IntegralResult,
    pub discrepancy: Option<f64>,
    pub verdict: Verdict,
    /// Every registry entry for this measure and family.
    pub entries: Vec<EntryCheck>,
}

impl MeasureReport {
    pub fn value(&self) -> f64 {
        self.quadrature.value
    }
}

fn verdict_for(discrepancy: f64, disputed: bool) -> Verdict {
    if discrepancy <= AGREEMENT_TOL {
        Verdict::Agree
    } else if disputed {
        Verdict::PaperTableSuspect
    } else {
        Verdict::Mismatch
    }
}

/// Quadrature value of a measure on any surface.
pub fn quadrature(
    surface: &CopulaSurface,
    kind: MeasureKind,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult, MeasureError> {
    let no_density = || MeasureError::NoDensity {
        surface: surface.label(),
        measure: kind.to_string(),
    };
    if kind.needs_density() && !surface.has_density() {
        return Err(no_density());
    }
    let res = match kind {
        MeasureKind::CEx => square(surface, cfg, |u, v| {
            let c = surface.density(u, v).unwrap_or(f64::NAN);
            0.25 * c * c
        })?,
        MeasureKind::CCEx => square(surface, cfg, |u, v| 0.25 * surface.cdf(u, v).powi(2))?,
        MeasureKind::SCEx => {
            let s = surface.survival();
            square(&s, cfg, |u, v| 0.25 * s.cdf(u, v).powi(2))?
        }
        MeasureKind::DualEx => {
            let d = surface.dual();
            square(&d, cfg, |u, v| 0.25 * d.cdf(u, v).powi(2))?
        }
        MeasureKind::CoCopEx => {
            let d = surface.cocopula();
            square(&d, cfg, |u, v| 0.25 * d.cdf(u, v).powi(2))?
        }
        MeasureKind::HorizontalEx(a) => section(surface, SectionKind::Horizontal(a), cfg)?,
        MeasureKind::VerticalEx(a) => section(surface, SectionKind::Vertical(a), cfg)?,
        MeasureKind::DiagonalEx => section(surface, SectionKind::Diagonal, cfg)?,
        MeasureKind::WeightedCCEx => {
            square(surface, cfg, |u, v| 0.25 * u * surface.cdf(u, v).powi(2))?
        }
        MeasureKind::RFunctional => square(surface, cfg, |u, v| (u + v) * surface.cdf(u, v))?,
        MeasureKind::RStarFunctional => {
            let s = surface.survival();
            square(&s, cfg, |u, v| (u + v) * s.cdf(u, v))?
        }
        MeasureKind::CopulaEntropy => square(surface, cfg, |u, v| {
            let c = surface.density(u, v).unwrap_or(f64::NAN);
            neg_x_log_x(c)
        })?,
        MeasureKind::SurvivalCopulaEntropy => {
            let s = surface.survival();
            square(&s, cfg, |u, v| neg_x_log_x(s.cdf(u, v)))?
        }
    };
    Ok(res)
}

fn neg_x_log_x(x: f64) -> f64 {
    if x > 0.0 {
        -x * x.ln()
    } else {
        0.0
    }
}

/// Integrate over the square with the surface's kinks as split hints.
pub(crate) fn square<F: Fn(f64, f64) -> f64>(
    target: &CopulaSurface,
    cfg: &QuadratureConfig,
    f: F,
) -> Result<IntegralResult, QuadError> {
    quad::integrate_square(f, &cfg.with_hints(target.kinks()))
}

fn section(
    surface: &CopulaSurface,
    kind: SectionKind,
    cfg: &QuadratureConfig,
) -> Result<IntegralResult, MeasureError> {
    let sec = surface.section(kind)?;
    let hints = sec.kink_points().into_iter().map(Curve::Vertical);
    let cfg = QuadratureConfig {
        split_hints: Vec::new(),
        ..cfg.clone()
    }
    .with_hints(hints);
    Ok(quad::integrate_interval(
        |t| 0.25 * sec.eval(t).powi(2),
        &cfg,
    )?)
}

/// Compute a measure by quadrature and compare it with every registry entry.
pub fn measure(
    surface: &CopulaSurface,
    kind: MeasureKind,
    cfg: &QuadratureConfig,
) -> Result<MeasureReport, MeasureError> {
    let q = quadrature(surface, kind, cfg)?;
    let (entries, primary) = if surface.is_base() {
        let spec = surface.spec();
        (registry_entries(kind, spec), closed_form(kind, spec))
    } else {
        (Vec::new(), None)
    };
    let entries: Vec<EntryCheck> = entries
        .into_iter()
        .map(|e| EntryCheck {
            discrepancy: (e.value - q.value).abs(),
            formula: e.formula.to_string(),
            origin: e.origin,
            disputed: e.disputed,
            value: e.value,
        })
        .collect();
    let (closed, disputed, formula, discrepancy, verdict) = match primary {
        Some(cf) => {
            let d = (cf.value - q.value).abs();
            (
                Some(cf.value),
                cf.disputed,
                Some(cf.formula.to_string()),
                Some(d),
                verdict_for(d, cf.disputed),
            )
        }
        None => (None, false, None, None, Verdict::NoClosedForm),
    };
    Ok(MeasureReport {
        kind,
        surface: surface.label(),
        closed_form: closed,
        closed_form_disputed: disputed,
        closed_form_formula: formula,
        quadrature: q,
        discrepancy,
        verdict,
        entries,
    })
}
