//! Parametric copula families and their closed-form evaluators.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::quad::Curve;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    Product,
    Fgm,
    IteratedFgm,
    ExtendedFgm,
    NelsenPolynomial,
    MarshallOlkin,
    CuadrasAuge,
    ShihLouis,
    LinearSpearman,
    /// The single-branch surface `u·v^(1−α)`. A bivariate distribution
    /// function on the square whose second margin is not uniform, so it is
    /// not a copula.
    CuadrasAugeSection,
}

impl Family {
    pub const ALL: [Family; 10] = [
        Family::Product,
        Family::Fgm,
        Family::IteratedFgm,
        Family::ExtendedFgm,
        Family::NelsenPolynomial,
        Family::MarshallOlkin,
        Family::CuadrasAuge,
        Family::ShihLouis,
        Family::LinearSpearman,
        Family::CuadrasAugeSection,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Family::Product => "product",
            Family::Fgm => "fgm",
            Family::IteratedFgm => "iterated-fgm",
            Family::ExtendedFgm => "extended-fgm",
            Family::NelsenPolynomial => "nelsen-polynomial",
            Family::MarshallOlkin => "marshall-olkin",
            Family::CuadrasAuge => "cuadras-auge",
            Family::ShihLouis => "shih-louis",
            Family::LinearSpearman => "linear-spearman",
            Family::CuadrasAugeSection => "cuadras-auge-section",
        }
    }

    pub fn from_name(name: &str) -> Option<Family> {
        let key = name.trim().to_ascii_lowercase().replace('_', "-");
        let fam = match key.as_str() {
            "product" | "independence" | "pi" => Family::Product,
            "fgm" => Family::Fgm,
            "iterated-fgm" => Family::IteratedFgm,
            "extended-fgm" => Family::ExtendedFgm,
            "nelsen" | "nelsen-polynomial" => Family::NelsenPolynomial,
            "marshall-olkin" | "mo" => Family::MarshallOlkin,
            "cuadras-auge" | "ca" => Family::CuadrasAuge,
            "shih-louis" => Family::ShihLouis,
            "linear-spearman" => Family::LinearSpearman,
            "cuadras-auge-section" => Family::CuadrasAugeSection,
            _ => return None,
        };
        Some(fam)
    }

    pub fn param_names(&self) -> &'static [&'static str] {
        match self {
            Family::Product => &[],
            Family::Fgm => &["theta"],
            Family::IteratedFgm => &["alpha", "beta"],
            Family::ExtendedFgm => &["theta", "p"],
            Family::NelsenPolynomial => &["alpha"],
            Family::MarshallOlkin => &["alpha", "beta"],
            Family::CuadrasAuge => &["alpha"],
            Family::ShihLouis => &["rho"],
            Family::LinearSpearman => &["alpha"],
            Family::CuadrasAugeSection => &["alpha"],
        }
    }

    /// Whether every member of the family is a copula.
    pub fn is_copula(&self) -> bool {
        !matches!(self, Family::CuadrasAugeSection)
    }

    fn check_domain(&self, p: &[f64]) -> Result<(), DomainError> {
        let fail = |i: usize, range: &str| DomainError {
            family: self.name(),
            param: self.param_names()[i],
            value: p[i],
            range: range.to_string(),
        };
        let within = |x: f64, lo: f64, hi: f64| x >= lo && x <= hi;
        for (i, x) in p.iter().enumerate() {
            if !x.is_finite() {
                return Err(fail(i, "finite values"));
            }
        }
        match self {
            Family::Product => {}
            Family::Fgm => {
                if !within(p[0], -1.0, 1.0) {
                    return Err(fail(0, "[-1, 1]"));
                }
            }
            Family::IteratedFgm => {
                if !within(p[0], -1.0, 1.0) {
                    return Err(fail(0, "[-1, 1]"));
                }
                if !within(p[1], -1.0, 1.0) {
                    return Err(fail(1, "[-1, 1]"));
                }
                if p[0] + p[1] < -1.0 {
                    return Err(fail(1, "[-1, 1] with alpha + beta >= -1"));
                }
            }
            Family::ExtendedFgm => {
                if !within(p[0], -1.0, 1.0) {
                    return Err(fail(0, "[-1, 1]"));
                }
                if p[1] < 1.0 {
                    return Err(fail(1, "[1, inf)"));
                }
            }
            Family::NelsenPolynomial => {
                if !within(p[0], 0.0, 0.25) {
                    return Err(fail(0, "[0, 1/4]"));
                }
            }
            Family::MarshallOlkin => {
                if !within(p[0], 0.0, 1.0) {
                    return Err(fail(0, "[0, 1]"));
                }
                if !within(p[1], 0.0, 1.0) {
                    return Err(fail(1, "[0, 1]"));
                }
            }
            Family::CuadrasAuge | Family::LinearSpearman | Family::CuadrasAugeSection => {
                if !within(p[0], 0.0, 1.0) {
                    return Err(fail(0, "[0, 1]"));
                }
            }
            Family::ShihLouis => {
                if !within(p[0], -1.0, 1.0) {
                    return Err(fail(0, "[-1, 1]"));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
#[error("parameter {param} = {value} of {family} must lie in {range}")]
pub struct DomainError {
    pub family: &'static str,
    pub param: &'static str,
    pub value: f64,
    pub range: String,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CopulaError {
    #[error("unknown copula family '{0}'")]
    UnknownFamily(String),
    #[error("{family} takes {expected} parameter(s), got {got}")]
    Arity {
        family: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("cannot parse parameter '{0}' as a number")]
    BadNumber(String),
    #[error(transparent)]
    Domain(#[from] DomainError),
    #[error("section level {0} must lie in [0, 1]")]
    SectionLevel(f64),
}

/// A family together with validated parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<f64>,
}

impl FamilySpec {
    pub fn new(family: Family, params: &[f64]) -> Result<Self, CopulaError> {
        let expected = family.param_names().len();
        if params.len() != expected {
            return Err(CopulaError::Arity {
                family: family.name(),
                expected,
                got: params.len(),
            });
        }
        family.check_domain(params)?;
        Ok(Self {
            family,
            params: params.to_vec(),
        })
    }

    pub fn product() -> Self {
        Self {
            family: Family::Product,
            params: Vec::new(),
        }
    }

    /// Parse `family[:p1[,p2]]`.
    pub fn parse(text: &str) -> Result<Self, CopulaError> {
        let (name, rest) = match text.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (text, None),
        };
        let family =
            Family::from_name(name).ok_or_else(|| CopulaError::UnknownFamily(name.to_string()))?;
        let mut params = Vec::new();
        if let Some(rest) = rest {
            for tok in rest.split(',') {
                let tok = tok.trim();
                let x: f64 = tok
                    .parse()
                    .map_err(|_| CopulaError::BadNumber(tok.to_string()))?;
                params.push(x);
            }
        }
        Self::new(family, &params)
    }

    pub fn param(&self, i: usize) -> f64 {
        self.params[i]
    }

    /// Whether the member reduces to the product copula.
    pub fn is_product(&self) -> bool {
        match self.family {
            Family::Product => true,
            Family::Fgm | Family::NelsenPolynomial | Family::ShihLouis | Family::LinearSpearman => {
                self.params[0] == 0.0
            }
            Family::CuadrasAuge => self.params[0] == 0.0,
            Family::IteratedFgm => self.params[0] == 0.0 && self.params[1] == 0.0,
            Family::ExtendedFgm => self.params[0] == 0.0,
            Family::MarshallOlkin => self.params[0] * self.params[1] == 0.0,
            Family::CuadrasAugeSection => self.params[0] == 0.0,
        }
    }

    pub fn cdf(&self, u: f64, v: f64) -> f64 {
        let p = &self.params;
        match self.family {
            Family::Product => u * v,
            Family::Fgm => u * v * (1.0 + p[0] * (1.0 - u) * (1.0 - v)),
            Family::IteratedFgm => u * v + p[0] * fgm_a(u) * fgm_a(v) + p[1] * fgm_b(u) * fgm_b(v),
            Family::ExtendedFgm => u * v + p[0] * ext_g(u, p[1]) * ext_g(v, p[1]),
            Family::NelsenPolynomial => {
                let a = p[0];
                u * v * (1.0 + 2.0 * a * (1.0 - u) * (1.0 - v) * (1.0 + u + v - 2.0 * u * v))
            }
            Family::MarshallOlkin => mo_cdf(u, v, p[0], p[1]),
            Family::CuadrasAuge => mo_cdf(u, v, p[0], p[0]),
            Family::ShihLouis => {
                let r = p[0];
                if r > 0.0 {
                    (1.0 - r) * u * v + r * u.min(v)
                } else {
                    (1.0 + r) * u * v - r * (u + v - 1.0).max(0.0)
                }
            }
            Family::LinearSpearman => (1.0 - p[0]) * u * v + p[0] * u.min(v),
            Family::CuadrasAugeSection => u * pow(v, 1.0 - p[0]),
        }
    }

    /// `∂C/∂u`, taking the one-sided value below/left of a kink.
    pub fn du(&self, u: f64, v: f64) -> f64 {
        let p = &self.params;
        match self.family {
            Family::Product => v,
            Family::Fgm => v * (1.0 + p[0] * (1.0 - 2.0 * u) * (1.0 - v)),
            Family::IteratedFgm => v + p[0] * fgm_a_d(u) * fgm_a(v) + p[1] * fgm_b_d(u) * fgm_b(v),
            Family::ExtendedFgm => v + p[0] * ext_g_d(u, p[1]) * ext_g(v, p[1]),
            Family::NelsenPolynomial => {
                let a = p[0];
                v * (1.0 + 2.0 * a - 2.0 * a * v * v - 6.0 * a * u * u + 18.0 * a * u * u * v
                    - 12.0 * a * u * u * v * v
                    + 12.0 * a * u * v * v
                    - 12.0 * a * u * v)
            }
            Family::MarshallOlkin => mo_du(u, v, p[0], p[1]),
            Family::CuadrasAuge => mo_du(u, v, p[0], p[0]),
            Family::ShihLouis => {
                let r = p[0];
                if r > 0.0 {
                    (1.0 - r) * v + if u < v { r } else { 0.0 }
                } else {
                    (1.0 + r) * v - if u + v > 1.0 { r } else { 0.0 }
                }
            }
            Family::LinearSpearman => (1.0 - p[0]) * v + if u < v { p[0] } else { 0.0 },
            Family::CuadrasAugeSection => pow(v, 1.0 - p[0]),
        }
    }

    /// `∂C/∂v`.
    pub fn dv(&self, u: f64, v: f64) -> f64 {
        let p = &self.params;
        match self.family {
            Family::MarshallOlkin => mo_du(v, u, p[1], p[0]),
            Family::CuadrasAugeSection => {
                let a = p[0];
                (1.0 - a) * u * pow(v, -a)
            }
            _ => self.du(v, u),
        }
    }

    /// Copula density where the family is absolutely continuous.
    pub fn density(&self, u: f64, v: f64) -> Option<f64> {
        let p = &self.params;
        let c = match self.family {
            Family::Product => 1.0,
            Family::Fgm => 1.0 + p[0] * (1.0 - 2.0 * u) * (1.0 - 2.0 * v),
            Family::IteratedFgm => {
                1.0 + p[0] * fgm_a_d(u) * fgm_a_d(v) + p[1] * fgm_b_d(u) * fgm_b_d(v)
            }
            Family::ExtendedFgm => 1.0 + p[0] * ext_g_d(u, p[1]) * ext_g_d(v, p[1]),
            Family::NelsenPolynomial => {
                let a = p[0];
                1.0 + 2.0 * a - 6.0 * a * u * u - 6.0 * a * v * v - 24.0 * a * u * v
                    + 36.0 * a * u * u * v
                    + 36.0 * a * u * v * v
                    - 36.0 * a * u * u * v * v
            }
            Family::MarshallOlkin
            | Family::CuadrasAuge
            | Family::ShihLouis
            | Family::LinearSpearman => {
                if self.is_product() {
                    1.0
                } else {
                    return None;
                }
            }
            Family::CuadrasAugeSection => return None,
        };
        Some(c)
    }

    /// Curves on which the surface fails to be smooth.
    pub fn kinks(&self) -> Vec<Curve> {
        if self.is_product() {
            return Vec::new();
        }
        let p = &self.params;
        match self.family {
            Family::MarshallOlkin => vec![Curve::power_locus(p[0] / p[1])],
            Family::CuadrasAuge | Family::LinearSpearman => vec![Curve::Diagonal],
            Family::ShihLouis if p[0] > 0.0 => vec![Curve::Diagonal],
            Family::ShihLouis => vec![Curve::AntiDiagonal],
            _ => Vec::new(),
        }
    }

    /// Canonical `family:p1,p2` label.
    pub fn label(&self) -> String {
        if self.params.is_empty() {
            return self.family.name().to_string();
        }
        let ps: Vec<String> = self.params.iter().map(|x| format!("{x}")).collect();
        format!("{}:{}", self.family.name(), ps.join(","))
    }
}

impl FromStr for FamilySpec {
    type Err = CopulaError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::parse(s)
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// `x^e` with `0^e = 0` for positive `e` and `1` for `e = 0`.
fn pow(x: f64, e: f64) -> f64 {
    if e == 0.0 {
        1.0
    } else {
        x.powf(e)
    }
}

fn fgm_a(u: f64) -> f64 {
    u * (1.0 - u)
}

fn fgm_a_d(u: f64) -> f64 {
    1.0 - 2.0 * u
}

fn fgm_b(u: f64) -> f64 {
    u * u * (1.0 - u)
}

fn fgm_b_d(u: f64) -> f64 {
    2.0 * u - 3.0 * u * u
}

fn ext_g(u: f64, p: f64) -> f64 {
    u * pow(1.0 - u, p)
}

fn ext_g_d(u: f64, p: f64) -> f64 {
    pow(1.0 - u, p - 1.0) * (1.0 - (p + 1.0) * u)
}

/// `min(u^(1−α) v, u v^(1−β))`; the first branch holds for `u^α ≥ v^β`.
fn mo_cdf(u: f64, v: f64, a: f64, b: f64) -> f64 {
    (pow(u, 1.0 - a) * v).min(u * pow(v, 1.0 - b))
}

fn mo_du(u: f64, v: f64, a: f64, b: f64) -> f64 {
    if pow(u, a) >= pow(v, b) {
        (1.0 - a) * pow(u, -a) * v
    } else {
        pow(v, 1.0 - b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_round_trip() {
        let s = FamilySpec::parse("fgm:0.5").unwrap();
        assert_eq!(s.family, Family::Fgm);
        assert_eq!(s.params, vec![0.5]);
        assert_eq!(s.label(), "fgm:0.5");
        let s: FamilySpec = "marshall-olkin:0.3,0.7".parse().unwrap();
        assert_eq!(s.params, vec![0.3, 0.7]);
        assert_eq!(
            FamilySpec::parse("nelsen:0.2").unwrap().family,
            Family::NelsenPolynomial
        );
        assert_eq!(FamilySpec::parse("product").unwrap(), FamilySpec::product());
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(
            FamilySpec::parse("gumbel:2"),
            Err(CopulaError::UnknownFamily(_))
        ));
        assert!(matches!(
            FamilySpec::parse("fgm"),
            Err(CopulaError::Arity {
                expected: 1,
                got: 0,
                ..
            })
        ));
        assert!(matches!(
            FamilySpec::parse("fgm:x"),
            Err(CopulaError::BadNumber(_))
        ));
        match FamilySpec::parse("fgm:1.5") {
            Err(CopulaError::Domain(e)) => {
                assert_eq!(e.param, "theta");
                assert_eq!(e.range, "[-1, 1]");
            }
            other => panic!("{other:?}"),
        }
        assert!(FamilySpec::parse("nelsen:0.3").is_err());
        assert!(FamilySpec::parse("iterated-fgm:-0.8,-0.8").is_err());
        assert!(FamilySpec::parse("extended-fgm:0.5,0.5").is_err());
        assert!(FamilySpec::parse("fgm:nan").is_err());
    }

    #[test]
    fn cuadras_auge_is_symmetric_marshall_olkin() {
        let ca = FamilySpec::parse("cuadras-auge:0.4").unwrap();
        let mo = FamilySpec::parse("marshall-olkin:0.4,0.4").unwrap();
        for &(u, v) in &[(0.2, 0.7), (0.5, 0.5), (0.9, 0.1)] {
            assert_eq!(ca.cdf(u, v), mo.cdf(u, v));
        }
    }

    #[test]
    fn partials_match_finite_differences() {
        let h = 1e-6;
        for text in [
            "fgm:0.7",
            "iterated-fgm:0.5,-0.3",
            "extended-fgm:-0.6,2.5",
            "nelsen:0.2",
            "marshall-olkin:0.3,0.7",
            "shih-louis:-0.4",
            "shih-louis:0.4",
            "linear-spearman:0.6",
            "cuadras-auge-section:0.5",
        ] {
            let s = FamilySpec::parse(text).unwrap();
            for &(u, v) in &[(0.23, 0.61), (0.71, 0.35), (0.4, 0.9)] {
                let du = (s.cdf(u + h, v) - s.cdf(u - h, v)) / (2.0 * h);
                let dv = (s.cdf(u, v + h) - s.cdf(u, v - h)) / (2.0 * h);
                assert!((du - s.du(u, v)).abs() < 1e-6, "{text} du at {u},{v}");
                assert!((dv - s.dv(u, v)).abs() < 1e-6, "{text} dv at {u},{v}");
                if let Some(c) = s.density(u, v) {
                    let d = (s.du(u, v + h) - s.du(u, v - h)) / (2.0 * h);
                    assert!((d - c).abs() < 1e-6, "{text} density at {u},{v}");
                }
            }
        }
    }

    #[test]
    fn singular_families_have_kinks() {
        assert!(FamilySpec::parse("cuadras-auge:0.5")
            .unwrap()
            .density(0.3, 0.4)
            .is_none());
        assert_eq!(
            FamilySpec::parse("cuadras-auge:0")
                .unwrap()
                .density(0.3, 0.4),
            Some(1.0)
        );
        assert_eq!(
            FamilySpec::parse("marshall-olkin:0.5,0")
                .unwrap()
                .density(0.3, 0.4),
            Some(1.0)
        );
        assert_eq!(
            FamilySpec::parse("shih-louis:-0.5").unwrap().kinks(),
            vec![Curve::AntiDiagonal]
        );
        assert!(FamilySpec::parse("fgm:0.5").unwrap().kinks().is_empty());
    }
}
