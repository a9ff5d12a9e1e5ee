//! Copula surfaces: a base family and the functions derived from it.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::family::{Family, FamilySpec};
use super::section::{SectionFn, SectionKind};
use super::CopulaError;
use crate::quad::Curve;

/// Monotone transform applied to one coordinate of the random pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Monotone {
    Increasing,
    Decreasing,
}

impl Monotone {
    fn is_decreasing(self) -> bool {
        self == Monotone::Decreasing
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Node {
    Base(FamilySpec),
    /// `u + v − 1 + C(1−u, 1−v)`
    Survival(Arc<CopulaSurface>),
    /// `u + v − C(u, v)`
    Dual(Arc<CopulaSurface>),
    /// `1 − C(1−u, 1−v)`
    CoCopula(Arc<CopulaSurface>),
    /// Copula of `(α(X), β(Y))` for monotone `α`, `β`.
    Transformed {
        inner: Arc<CopulaSurface>,
        x: Monotone,
        y: Monotone,
    },
}

/// A function on the unit square built from a family: the copula itself,
/// its survival copula, dual, co-copula, or a monotone transform.
///
/// Cheap to clone; derived surfaces share their parent.
#[derive(Debug, Clone, PartialEq)]
pub struct CopulaSurface {
    node: Node,
}

impl From<FamilySpec> for CopulaSurface {
    fn from(spec: FamilySpec) -> Self {
        Self::new(spec)
    }
}

impl CopulaSurface {
    pub fn new(spec: FamilySpec) -> Self {
        Self {
            node: Node::Base(spec),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CopulaError> {
        FamilySpec::parse(text).map(Self::new)
    }

    pub fn survival(&self) -> Self {
        Self {
            node: Node::Survival(Arc::new(self.clone())),
        }
    }

    pub fn dual(&self) -> Self {
        Self {
            node: Node::Dual(Arc::new(self.clone())),
        }
    }

    pub fn cocopula(&self) -> Self {
        Self {
            node: Node::CoCopula(Arc::new(self.clone())),
        }
    }

    pub fn transformed(&self, x: Monotone, y: Monotone) -> Self {
        Self {
            node: Node::Transformed {
                inner: Arc::new(self.clone()),
                x,
                y,
            },
        }
    }

    /// The family this surface is ultimately built from.
    pub fn spec(&self) -> &FamilySpec {
        match &self.node {
            Node::Base(s) => s,
            Node::Survival(c) | Node::Dual(c) | Node::CoCopula(c) => c.spec(),
            Node::Transformed { inner, .. } => inner.spec(),
        }
    }

    pub fn family(&self) -> Family {
        self.spec().family
    }

    pub fn is_base(&self) -> bool {
        matches!(self.node, Node::Base(_))
    }

    /// Whether the surface is a copula (uniform margins, 2-increasing).
    pub fn is_copula(&self) -> bool {
        match &self.node {
            Node::Base(s) => s.family.is_copula(),
            Node::Survival(c) => c.is_copula(),
            Node::Transformed { inner, .. } => inner.is_copula(),
            Node::Dual(_) | Node::CoCopula(_) => false,
        }
    }

    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        match &self.node {
            Node::Base(s) => s.cdf(u, v),
            Node::Survival(c) => u + v - 1.0 + c.cdf(1.0 - u, 1.0 - v),
            Node::Dual(c) => u + v - c.cdf(u, v),
            Node::CoCopula(c) => 1.0 - c.cdf(1.0 - u, 1.0 - v),
            Node::Transformed { inner, x, y } => match (x.is_decreasing(), y.is_decreasing()) {
                (false, false) => inner.cdf(u, v),
                (true, false) => v - inner.cdf(1.0 - u, v),
                (false, true) => u - inner.cdf(u, 1.0 - v),
                (true, true) => u + v - 1.0 + inner.cdf(1.0 - u, 1.0 - v),
            },
        }
    }

    /// `∂/∂u` of the surface.
    pub fn du(&self, u: f64, v: f64) -> f64 {
        match &self.node {
            Node::Base(s) => s.du(u, v),
            Node::Survival(c) => 1.0 - c.du(1.0 - u, 1.0 - v),
            Node::Dual(c) => 1.0 - c.du(u, v),
            Node::CoCopula(c) => c.du(1.0 - u, 1.0 - v),
            Node::Transformed { inner, x, y } => match (x.is_decreasing(), y.is_decreasing()) {
                (false, false) => inner.du(u, v),
                (true, false) => inner.du(1.0 - u, v),
                (false, true) => 1.0 - inner.du(u, 1.0 - v),
                (true, true) => 1.0 - inner.du(1.0 - u, 1.0 - v),
            },
        }
    }

    /// `∂/∂v` of the surface.
    pub fn dv(&self, u: f64, v: f64) -> f64 {
        match &self.node {
            Node::Base(s) => s.dv(u, v),
            Node::Survival(c) => 1.0 - c.dv(1.0 - u, 1.0 - v),
            Node::Dual(c) => 1.0 - c.dv(u, v),
            Node::CoCopula(c) => c.dv(1.0 - u, 1.0 - v),
            Node::Transformed { inner, x, y } => match (x.is_decreasing(), y.is_decreasing()) {
                (false, false) => inner.dv(u, v),
                (true, false) => 1.0 - inner.dv(1.0 - u, v),
                (false, true) => inner.dv(u, 1.0 - v),
                (true, true) => 1.0 - inner.dv(1.0 - u, 1.0 - v),
            },
        }
    }

    /// Density of the surface when it is an absolutely continuous copula.
    pub fn density(&self, u: f64, v: f64) -> Option<f64> {
        match &self.node {
            Node::Base(s) => s.density(u, v),
            Node::Survival(c) => c.density(1.0 - u, 1.0 - v),
            Node::Dual(_) | Node::CoCopula(_) => None,
            Node::Transformed { inner, x, y } => {
                let uu = if x.is_decreasing() { 1.0 - u } else { u };
                let vv = if y.is_decreasing() { 1.0 - v } else { v };
                inner.density(uu, vv)
            }
        }
    }

    pub fn has_density(&self) -> bool {
        self.density(0.5, 0.5).is_some()
    }

    /// Curves on which the surface is not smooth.
    pub fn kinks(&self) -> Vec<Curve> {
        match &self.node {
            Node::Base(s) => s.kinks(),
            Node::Dual(c) => c.kinks(),
            Node::Survival(c) | Node::CoCopula(c) => {
                c.kinks().iter().map(|k| k.reflect(true, true)).collect()
            }
            Node::Transformed { inner, x, y } => inner
                .kinks()
                .iter()
                .map(|k| k.reflect(x.is_decreasing(), y.is_decreasing()))
                .collect(),
        }
    }

    pub fn section(&self, kind: SectionKind) -> Result<SectionFn, CopulaError> {
        SectionFn::new(self.clone(), kind)
    }

    pub fn label(&self) -> String {
        match &self.node {
            Node::Base(s) => s.label(),
            Node::Survival(c) => format!("survival({})", c.label()),
            Node::Dual(c) => format!("dual({})", c.label()),
            Node::CoCopula(c) => format!("cocopula({})", c.label()),
            Node::Transformed { inner, x, y } => {
                let tag = |m: &Monotone| if m.is_decreasing() { "dec" } else { "inc" };
                format!("transformed[{},{}]({})", tag(x), tag(y), inner.label())
            }
        }
    }
}

impl fmt::Display for CopulaSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fgm(t: f64) -> CopulaSurface {
        CopulaSurface::new(FamilySpec::new(Family::Fgm, &[t]).unwrap())
    }

    #[test]
    fn survival_of_product_is_product() {
        let p = CopulaSurface::new(FamilySpec::product()).survival();
        assert!((p.cdf(0.3, 0.8) - 0.24).abs() < 1e-15);
        assert!(p.is_copula());
    }

    #[test]
    fn dual_and_cocopula_are_not_copulas() {
        let c = fgm(0.3);
        assert!(!c.dual().is_copula());
        assert!(!c.cocopula().is_copula());
        assert!(c.dual().density(0.5, 0.5).is_none());
        let (u, v) = (0.3, 0.6);
        assert!((c.dual().cdf(u, v) - (u + v - c.cdf(u, v))).abs() < 1e-15);
        assert!((c.cocopula().cdf(u, v) - (1.0 - c.cdf(1.0 - u, 1.0 - v))).abs() < 1e-15);
    }

    #[test]
    fn transformed_margins_are_uniform() {
        let c = CopulaSurface::parse("marshall-olkin:0.3,0.7").unwrap();
        for (x, y) in [
            (Monotone::Decreasing, Monotone::Increasing),
            (Monotone::Increasing, Monotone::Decreasing),
            (Monotone::Decreasing, Monotone::Decreasing),
        ] {
            let t = c.transformed(x, y);
            for &w in &[0.1, 0.45, 0.8] {
                assert!((t.cdf(w, 1.0) - w).abs() < 1e-14);
                assert!((t.cdf(1.0, w) - w).abs() < 1e-14);
                assert!(t.cdf(w, 0.0).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn kinks_follow_reflections() {
        let sl = CopulaSurface::parse("shih-louis:0.5").unwrap();
        let t = sl.transformed(Monotone::Decreasing, Monotone::Increasing);
        assert_eq!(t.kinks(), vec![Curve::AntiDiagonal]);
        assert_eq!(sl.survival().kinks(), vec![Curve::Diagonal]);
    }

    #[test]
    fn labels() {
        let c = fgm(0.5);
        assert_eq!(c.survival().label(), "survival(fgm:0.5)");
        assert_eq!(
            c.transformed(Monotone::Decreasing, Monotone::Increasing)
                .label(),
            "transformed[dec,inc](fgm:0.5)"
        );
    }
}
