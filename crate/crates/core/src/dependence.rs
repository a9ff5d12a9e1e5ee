//! Copula-based rank dependence measures, quadrant dependence, concordance
//! order, and the inequalities linking them to the extropy measures.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::copula::CopulaSurface;
use crate::measures::{self, MeasureError, MeasureKind};
use crate::quad::{QuadError, QuadratureConfig};

/// Grid points per axis for order predicates (`i/256`, `i = 0..=256`).
pub const DEFAULT_GRID: usize = 257;

const ORDER_TOL: f64 = 1e-12;
const SUMMARY_TOL: f64 = 1e-9;
const INEQUALITY_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DependenceError {
    #[error(transparent)]
    Measure(#[from] MeasureError),
    #[error("{name} violated: {lhs} vs {rhs}")]
    BoundViolation { name: String, lhs: f64, rhs: f64 },
    #[error("grid size must be at least 2, got {0}")]
    Grid(usize),
}

impl From<QuadError> for DependenceError {
    fn from(e: QuadError) -> Self {
        DependenceError::Measure(MeasureError::Quadrature(e))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ClosedForm,
    Quadrature,
    /// Kendall's tau from `1 − 4∬∂uC·∂vC`, valid with singular components.
    DerivativeForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DependenceSummary {
    pub rho: f64,
    /// Only defined for copulas: off the copula class the density and
    /// derivative forms of Kendall's tau no longer agree.
    pub tau: Option<f64>,
    pub eta: f64,
    pub tau_method: Option<Method>,
}

impl DependenceSummary {
    /// Daniels' and Durbin's bounds relating `ρ` and `τ`.
    pub fn bound_checks(&self) -> Vec<InequalityCheck> {
        let r = self.rho;
        let Some(t) = self.tau else {
            return Vec::new();
        };
        vec![
            InequalityCheck::le("daniels-lower", -1.0, 3.0 * t - 2.0 * r),
            InequalityCheck::le("daniels-upper", 3.0 * t - 2.0 * r, 1.0),
            InequalityCheck::le("durbin-upper", 0.5 * (1.0 + t).powi(2), 1.0 + r),
            InequalityCheck::le("durbin-lower", 0.5 * (1.0 - t).powi(2), 1.0 - r),
        ]
    }

    fn validated(self) -> Result<Self, DependenceError> {
        for c in self.bound_checks() {
            if c.slack < -SUMMARY_TOL {
                return Err(DependenceError::BoundViolation {
                    name: c.name,
                    lhs: c.lhs,
                    rhs: c.rhs,
                });
            }
        }
        Ok(self)
    }
}

/// `ρ = 12∬C − 3`
pub fn spearman_rho(
    surface: &CopulaSurface,
    cfg: &QuadratureConfig,
) -> Result<f64, DependenceError> {
    let r = measures::square(surface, cfg, |u, v| 12.0 * surface.cdf(u, v))?;
    Ok(r.value - 3.0)
}

/// `τ = 4∬c·C − 1`; requires a density.
pub fn kendall_tau_density(
    surface: &CopulaSurface,
    cfg: &QuadratureConfig,
) -> Result<f64, DependenceError> {
    if !surface.has_density() {
        return Err(MeasureError::NoDensity {
            surface: surface.label(),
            measure: "kendall tau (density form)".into(),
        }
        .into());
    }
    let r = measures::square(surface, cfg, |u, v| {
        4.0 * surface.density(u, v).unwrap_or(f64::NAN) * surface.cdf(u, v)
    })?;
    Ok(r.value - 1.0)
}

/// `τ = 1 − 4∬∂uC·∂vC`.
pub fn kendall_tau_derivative(
    surface: &CopulaSurface,
    cfg: &QuadratureConfig,
) -> Result<f64, DependenceError> {
    let r = measures::square(surface, cfg, |u, v| {
        4.0 * surface.du(u, v) * surface.dv(u, v)
    })?;
    Ok(1.0 - r.value)
}

/// Kendall's tau, by the density form when a density exists and by the
/// derivative form otherwise.
pub fn kendall_tau(
    surface: &CopulaSurface,
    cfg: &QuadratureConfig,
) -> Result<(f64, Method), DependenceError> {
    if surface.has_density() {
        Ok((kendall_tau_density(surface, cfg)?, Method::Quadrature))
    } else {
        Ok((
            kendall_tau_derivative(surface, cfg)?,
            Method::DerivativeForm,
        ))
    }
}

/// `η = 24∬(1−u)C − 2`
pub fn blest_eta(surface: &CopulaSurface, cfg: &QuadratureConfig) -> Result<f64, DependenceError> {
    let r = measures::square(surface, cfg, |u, v| 24.0 * (1.0 - u) * surface.cdf(u, v))?;
    Ok(r.value - 2.0)
}

/// `ρ`, `τ` and `η` of a surface. For copulas the Daniels and Durbin bounds
/// are enforced; other surfaces get no `τ`.
pub fn dependence_summary(
    surface: &CopulaSurface,
    cfg: &QuadratureConfig,
) -> Result<DependenceSummary, DependenceError> {
    let rho = spearman_rho(surface, cfg)?;
    let eta = blest_eta(surface, cfg)?;
    if !surface.is_copula() {
        return Ok(DependenceSummary {
            rho,
            tau: None,
            eta,
            tau_method: None,
        });
    }
    let (tau, method) = kendall_tau(surface, cfg)?;
    DependenceSummary {
        rho,
        tau: Some(tau),
        eta,
        tau_method: Some(method),
    }
    .validated()
}

/// The survival-copula versions:
/// `ρ = 12∬C̄ − 3`, `τ = 4∬c̄·[C̄ − u − v + 1] − 1`, `η = 24∬u·C̄ − 4`.
pub fn survival_dependence(
    surface: &CopulaSurface,
    cfg: &QuadratureConfig,
) -> Result<DependenceSummary, DependenceError> {
    let s = surface.survival();
    let rho = measures::square(&s, cfg, |u, v| 12.0 * s.cdf(u, v))?.value - 3.0;
    let eta = measures::square(&s, cfg, |u, v| 24.0 * u * s.cdf(u, v))?.value - 4.0;
    if !surface.is_copula() {
        return Ok(DependenceSummary {
            rho,
            tau: None,
            eta,
            tau_method: None,
        });
    }
    let (tau, method) = if s.has_density() {
        let t = measures::square(&s, cfg, |u, v| {
            4.0 * s.density(u, v).unwrap_or(f64::NAN) * (s.cdf(u, v) - u - v + 1.0)
        })?;
        (t.value - 1.0, Method::Quadrature)
    } else {
        (kendall_tau_derivative(&s, cfg)?, Method::DerivativeForm)
    };
    DependenceSummary {
        rho,
        tau: Some(tau),
        eta,
        tau_method: Some(method),
    }
    .validated()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum QuadrantClass {
    Pqd,
    Nqd,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadrantReport {
    pub class: QuadrantClass,
    /// `max(C − uv)` over the grid.
    pub max_above: f64,
    /// `max(uv − C)` over the grid.
    pub max_below: f64,
    pub grid_size: usize,
}

fn grid(n: usize) -> Result<Vec<f64>, DependenceError> {
    if n < 2 {
        return Err(DependenceError::Grid(n));
    }
    Ok((0..n).map(|i| i as f64 / (n - 1) as f64).collect())
}

/// Classify `C` against the product copula on an `n × n` grid.
pub fn pqd_classify(
    surface: &CopulaSurface,
    grid_n: usize,
) -> Result<QuadrantReport, DependenceError> {
    let pts = grid(grid_n)?;
    let (mut above, mut below) = (0.0f64, 0.0f64);
    for &u in &pts {
        for &v in &pts {
            let d = surface.cdf(u, v) - u * v;
            above = above.max(d);
            below = below.max(-d);
        }
    }
    let class = if below <= ORDER_TOL {
        QuadrantClass::Pqd
    } else if above <= ORDER_TOL {
        QuadrantClass::Nqd
    } else {
        QuadrantClass::Neither
    };
    Ok(QuadrantReport {
        class,
        max_above: above,
        max_below: below,
        grid_size: grid_n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Less,
    Greater,
    Equal,
    Incomparable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OrderingVerdict {
    pub relation: Relation,
    /// Largest breach of the reported relation; for `Incomparable`, the
    /// smaller of the two directional breaches.
    pub max_violation: f64,
    /// `max(C1 − C2)` over the grid.
    pub max_above: f64,
    /// `max(C2 − C1)` over the grid.
    pub max_below: f64,
    pub grid_size: usize,
}

/// Pointwise concordance order of two surfaces on an `n × n` grid.
pub fn concordance_compare(
    first: &CopulaSurface,
    second: &CopulaSurface,
    grid_n: usize,
) -> Result<OrderingVerdict, DependenceError> {
    let pts = grid(grid_n)?;
    let (mut above, mut below) = (0.0f64, 0.0f64);
    for &u in &pts {
        for &v in &pts {
            let d = first.cdf(u, v) - second.cdf(u, v);
            above = above.max(d);
            below = below.max(-d);
        }
    }
    let (relation, max_violation) = match (above <= ORDER_TOL, below <= ORDER_TOL) {
        (true, true) => (Relation::Equal, above.max(below)),
        (true, false) => (Relation::Less, above),
        (false, true) => (Relation::Greater, below),
        (false, false) => (Relation::Incomparable, above.min(below)),
    };
    Ok(OrderingVerdict {
        relation,
        max_violation,
        max_above: above,
        max_below: below,
        grid_size: grid_n,
    })
}

/// One inequality `lhs ≤ rhs` with its slack `rhs − lhs`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub holds: bool,
}

impl InequalityCheck {
    pub fn le(name: &str, lhs: f64, rhs: f64) -> Self {
        let slack = rhs - lhs;
        Self {
            name: name.to_string(),
            lhs,
            rhs,
            slack,
            holds: slack >= -INEQUALITY_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub surface: String,
    pub summary: DependenceSummary,
    pub quadrant: QuadrantClass,
    pub checks: Vec<InequalityCheck>,
    pub passed: bool,
}

/// Evaluate every inequality that applies to the surface.
///
/// Copulas get the full set. Surfaces that are not copulas only get the two
/// bounds that need nothing beyond `0 ≤ C ≤ 1`: `J_C ≤ (ρ+3)/48` and
/// `J_C − J^u_C ≤ (η+2)/96`.
pub fn check_inequalities(
    surface: &CopulaSurface,
    cfg: &QuadratureConfig,
) -> Result<InequalityReport, DependenceError> {
    let q = |kind| measures::quadrature(surface, kind, cfg).map(|r| r.value);
    let summary = dependence_summary(surface, cfg)?;
    let quadrant = pqd_classify(surface, DEFAULT_GRID)?;
    let (rho, eta) = (summary.rho, summary.eta);
    let j = q(MeasureKind::CCEx)?;
    let ju = q(MeasureKind::WeightedCCEx)?;

    let mut checks = vec![
        InequalityCheck::le("ccex-spearman", j, (rho + 3.0) / 48.0),
        InequalityCheck::le("weighted-gap-blest", j - ju, (eta + 2.0) / 96.0),
    ];

    if let (true, Some(tau)) = (surface.is_copula(), summary.tau) {
        let js = q(MeasureKind::SCEx)?;
        let jd = q(MeasureKind::DiagonalEx)?;
        checks.push(InequalityCheck::le(
            "ccex-kendall-linear",
            j,
            (3.0 * tau + 7.0) / 96.0,
        ));
        checks.push(InequalityCheck::le(
            "ccex-kendall-quadratic",
            j,
            (8.0 - (1.0 - tau).powi(2)) / 96.0,
        ));
        checks.push(InequalityCheck::le(
            "spearman-kendall-chain-lower",
            (3.0 * tau + 5.0) / 96.0,
            (rho + 3.0) / 48.0,
        ));
        checks.push(InequalityCheck::le(
            "spearman-kendall-chain-upper",
            (rho + 3.0) / 48.0,
            (3.0 * tau + 7.0) / 96.0,
        ));
        checks.extend(summary.bound_checks());
        checks.push(InequalityCheck::le("ccex-lower", 1.0 / 48.0, j));
        checks.push(InequalityCheck::le("ccex-upper", j, 1.0 / 24.0));
        checks.push(InequalityCheck::le("diagonal-upper", jd, 1.0 / 12.0));
        match quadrant.class {
            QuadrantClass::Pqd => {
                checks.push(InequalityCheck::le("pqd-ccex-lower", 1.0 / 36.0, j));
                checks.push(InequalityCheck::le("pqd-scex-lower", 1.0 / 36.0, js));
            }
            QuadrantClass::Nqd => {
                checks.push(InequalityCheck::le("nqd-ccex-upper", j, 1.0 / 36.0));
                checks.push(InequalityCheck::le("nqd-scex-upper", js, 1.0 / 36.0));
            }
            QuadrantClass::Neither => {}
        }
        if surface.has_density() {
            let b = measures::verify_extropy_entropy_bound(surface, cfg)?;
            checks.push(InequalityCheck::le("entropy-bound", b.rhs, b.lhs));
            checks.push(InequalityCheck::le("cex-lower", 0.25, b.extropy));
        }
    }

    let passed = checks.iter().all(|c| c.holds);
    Ok(InequalityReport {
        surface: surface.label(),
        summary,
        quadrant: quadrant.class,
        checks,
        passed,
    })
}
