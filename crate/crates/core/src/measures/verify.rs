//! Numerical checks of the structural identities between measures.

use serde::{Deserialize, Serialize};

use super::{quadrature, MeasureError, MeasureKind};
use crate::copula::{CopulaSurface, FamilySpec, Monotone};
use crate::quad::{self, Curve, QuadratureConfig};

/// Extropy against the entropy bound `J_c ≥ (1 − S_c)/4`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyBound {
    pub extropy: f64,
    pub entropy: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

/// Check `J_c ≥ (1 − S_c)/4`, which follows from `x log x ≤ x² − x`.
pub fn verify_extropy_entropy_bound(
    surface: &CopulaSurface,
    cfg: &QuadratureConfig,
) -> Result<EntropyBound, MeasureError> {
    let extropy = quadrature(surface, MeasureKind::CEx, cfg)?.value;
    let entropy = quadrature(surface, MeasureKind::CopulaEntropy, cfg)?.value;
    let rhs = 0.25 * (1.0 - entropy);
    Ok(EntropyBound {
        extropy,
        entropy,
        lhs: extropy,
        rhs,
        holds: extropy >= rhs - 1e-9,
    })
}

/// Both sides of an identity `lhs = rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub residual: f64,
}

impl IdentityCheck {
    fn new(lhs: f64, rhs: f64) -> Self {
        Self {
            lhs,
            rhs,
            residual: (lhs - rhs).abs(),
        }
    }
}

/// `J_C = J_{C*} + R/2 − 7/24`, with `C*` the dual and `R = ∬(u+v)C`.
pub fn verify_dual_identity(
    surface: &CopulaSurface,
    cfg: &QuadratureConfig,
) -> Result<IdentityCheck, MeasureError> {
    let j = quadrature(surface, MeasureKind::CCEx, cfg)?.value;
    let jd = quadrature(surface, MeasureKind::DualEx, cfg)?.value;
    let r = quadrature(surface, MeasureKind::RFunctional, cfg)?.value;
    Ok(IdentityCheck::new(j, jd + 0.5 * r - 7.0 / 24.0))
}

/// `J_C̄ = J_{C̄*} + R*/2 − 7/24`, with `C̄*` the co-copula and
/// `R* = ∬(u+v)C̄`.
pub fn verify_cocopula_identity(
    surface: &CopulaSurface,
    cfg: &QuadratureConfig,
) -> Result<IdentityCheck, MeasureError> {
    let j = quadrature(surface, MeasureKind::SCEx, cfg)?.value;
    let jd = quadrature(surface, MeasureKind::CoCopEx, cfg)?.value;
    let r = quadrature(surface, MeasureKind::RStarFunctional, cfg)?.value;
    Ok(IdentityCheck::new(j, jd + 0.5 * r - 7.0 / 24.0))
}

/// One cell of the monotone-transform table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransformCheck {
    pub x: Monotone,
    pub y: Monotone,
    pub measure: MeasureKind,
    /// The measure computed on the transformed copula.
    pub transformed: f64,
    /// The value the transform table predicts.
    pub expected: f64,
    pub expected_from: String,
    pub residual: f64,
}

const CASES: [(Monotone, Monotone); 4] = [
    (Monotone::Increasing, Monotone::Increasing),
    (Monotone::Decreasing, Monotone::Decreasing),
    (Monotone::Decreasing, Monotone::Increasing),
    (Monotone::Increasing, Monotone::Decreasing),
];

/// Evaluate CEx (when a density exists), CCEx and SCEx on the copula of
/// `(φ(X), ψ(Y))` for all four monotonicity cases and compare each with the
/// value predicted from the untransformed copula.
///
/// Mixed cases are compared against quadrature of the closed integrands
/// `¼∬[v − C]²`, `¼∬[u − C]²`, `¼∬[v − C̄(1−u,v)]²` and `¼∬[u − C̄(u,1−v)]²`.
pub fn verify_transform_theorems(
    spec: &FamilySpec,
    cfg: &QuadratureConfig,
) -> Result<Vec<TransformCheck>, MeasureError> {
    use Monotone::{Decreasing as Dec, Increasing as Inc};

    let base = CopulaSurface::new(spec.clone());
    let surv = base.survival();
    let mut kinds = Vec::new();
    if base.has_density() {
        kinds.push(MeasureKind::CEx);
    }
    kinds.push(MeasureKind::CCEx);
    kinds.push(MeasureKind::SCEx);

    let base_cex = if base.has_density() {
        Some(quadrature(&base, MeasureKind::CEx, cfg)?.value)
    } else {
        None
    };
    let base_ccex = quadrature(&base, MeasureKind::CCEx, cfg)?.value;
    let base_scex = quadrature(&base, MeasureKind::SCEx, cfg)?.value;

    let display = |hints: Vec<Curve>, f: &dyn Fn(f64, f64) -> f64| {
        quad::integrate_square(f, &cfg.with_hints(hints)).map(|r| r.value)
    };
    let reflect = |c: &CopulaSurface, fu: bool, fv: bool| -> Vec<Curve> {
        c.kinks().iter().map(|k| k.reflect(fu, fv)).collect()
    };

    let mut out = Vec::new();
    for (x, y) in CASES {
        let t = base.transformed(x, y);
        for &kind in &kinds {
            let transformed = quadrature(&t, kind, cfg)?.value;
            let (expected, from) = match (kind, x, y) {
                (MeasureKind::CEx, Inc, Inc) => (base_cex.unwrap_or(f64::NAN), "J_c".to_string()),
                (MeasureKind::CEx, _, _) => {
                    let (fu, fv) = (x == Dec, y == Dec);
                    let v = display(reflect(&base, fu, fv), &|u, v| {
                        let uu = if fu { 1.0 - u } else { u };
                        let vv = if fv { 1.0 - v } else { v };
                        0.25 * base.density(uu, vv).unwrap_or(f64::NAN).powi(2)
                    })?;
                    let label = match (fu, fv) {
                        (true, true) => "1/4 int c^2(1-u,1-v)",
                        (true, false) => "1/4 int c^2(1-u,v)",
                        _ => "1/4 int c^2(u,1-v)",
                    };
                    (v, label.to_string())
                }
                (MeasureKind::CCEx, Inc, Inc) => (base_ccex, "J_C".to_string()),
                (MeasureKind::CCEx, Dec, Dec) => (base_scex, "J_Cbar".to_string()),
                (MeasureKind::CCEx, Dec, Inc) => (
                    display(base.kinks(), &|u, v| 0.25 * (v - base.cdf(u, v)).powi(2))?,
                    "1/4 int [v - C(u,v)]^2".to_string(),
                ),
                (MeasureKind::CCEx, Inc, Dec) => (
                    display(base.kinks(), &|u, v| 0.25 * (u - base.cdf(u, v)).powi(2))?,
                    "1/4 int [u - C(u,v)]^2".to_string(),
                ),
                (MeasureKind::SCEx, Inc, Inc) => (base_scex, "J_Cbar".to_string()),
                (MeasureKind::SCEx, Dec, Dec) => (base_ccex, "J_C".to_string()),
                (MeasureKind::SCEx, Dec, Inc) => (
                    display(reflect(&surv, true, false), &|u, v| {
                        0.25 * (v - surv.cdf(1.0 - u, v)).powi(2)
                    })?,
                    "1/4 int [v - Cbar(1-u,v)]^2".to_string(),
                ),
                (MeasureKind::SCEx, Inc, Dec) => (
                    display(reflect(&surv, false, true), &|u, v| {
                        0.25 * (u - surv.cdf(u, 1.0 - v)).powi(2)
                    })?,
                    "1/4 int [u - Cbar(u,1-v)]^2".to_string(),
                ),
                _ => unreachable!("only CEx, CCEx and SCEx are tabulated"),
            };
            out.push(TransformCheck {
                x,
                y,
                measure: kind,
                transformed,
                expected,
                expected_from: from,
                residual: (transformed - expected).abs(),
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn entropy_bound_on_product_is_tight() {
        let p = CopulaSurface::parse("product").unwrap();
        let b = verify_extropy_entropy_bound(&p, &cfg()).unwrap();
        assert!(b.holds);
        assert!((b.lhs - b.rhs).abs() < 1e-12);
    }

    #[test]
    fn entropy_bound_fgm() {
        let c = CopulaSurface::parse("fgm:1").unwrap();
        let b = verify_extropy_entropy_bound(&c, &cfg()).unwrap();
        assert!(b.holds, "{b:?}");
        assert!(b.entropy < 0.0);
    }

    #[test]
    fn dual_identity_on_product() {
        let p = CopulaSurface::parse("product").unwrap();
        assert!(verify_dual_identity(&p, &cfg()).unwrap().residual < 1e-10);
        assert!(verify_cocopula_identity(&p, &cfg()).unwrap().residual < 1e-10);
    }

    #[test]
    fn transform_table_fgm() {
        let spec = FamilySpec::parse("fgm:0.8").unwrap();
        let rows = verify_transform_theorems(&spec, &cfg()).unwrap();
        assert_eq!(rows.len(), 12);
        for r in &rows {
            assert!(r.residual <= 1e-8, "{r:?}");
        }
        let dd = rows
            .iter()
            .find(|r| {
                r.x == Monotone::Decreasing
                    && r.y == Monotone::Decreasing
                    && r.measure == MeasureKind::CCEx
            })
            .unwrap();
        assert!((dd.transformed - 0.03073).abs() < 5e-6);
    }

    #[test]
    fn transform_table_marshall_olkin() {
        let spec = FamilySpec::parse("marshall-olkin:0.3,0.7").unwrap();
        let rows = verify_transform_theorems(&spec, &cfg()).unwrap();
        assert_eq!(rows.len(), 8);
        for r in &rows {
            assert!(r.residual <= 1e-8, "{r:?}");
        }
        let ii = &rows[0];
        assert_eq!(ii.transformed.to_bits(), ii.expected.to_bits());
        let di = rows
            .iter()
            .find(|r| {
                r.x == Monotone::Decreasing
                    && r.y == Monotone::Increasing
                    && r.measure == MeasureKind::CCEx
            })
            .unwrap();
        assert!((di.transformed - 0.0239265).abs() < 1e-6, "{di:?}");
    }
}
