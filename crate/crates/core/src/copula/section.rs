//! One-dimensional sections of a copula surface.

use serde::{Deserialize, Serialize};

use super::surface::CopulaSurface;
use super::CopulaError;
use crate::quad::SectionLine;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SectionKind {
    /// `t ↦ C(t, a)`
    Horizontal(f64),
    /// `t ↦ C(a, t)`
    Vertical(f64),
    /// `t ↦ C(t, t)`
    Diagonal,
}

impl SectionKind {
    fn line(self) -> SectionLine {
        match self {
            SectionKind::Horizontal(a) => SectionLine::Horizontal(a),
            SectionKind::Vertical(a) => SectionLine::Vertical(a),
            SectionKind::Diagonal => SectionLine::Diagonal,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SectionFn {
    surface: CopulaSurface,
    kind: SectionKind,
}

impl SectionFn {
    pub fn new(surface: CopulaSurface, kind: SectionKind) -> Result<Self, CopulaError> {
        if let SectionKind::Horizontal(a) | SectionKind::Vertical(a) = kind {
            if !(0.0..=1.0).contains(&a) {
                return Err(CopulaError::SectionLevel(a));
            }
        }
        Ok(Self { surface, kind })
    }

    pub fn kind(&self) -> SectionKind {
        self.kind
    }

    pub fn surface(&self) -> &CopulaSurface {
        &self.surface
    }

    pub fn eval(&self, t: f64) -> f64 {
        match self.kind {
            SectionKind::Horizontal(a) => self.surface.cdf(t, a),
            SectionKind::Vertical(a) => self.surface.cdf(a, t),
            SectionKind::Diagonal => self.surface.cdf(t, t),
        }
    }

    /// Points in `(0,1)` where the section is not smooth, sorted.
    pub fn kink_points(&self) -> Vec<f64> {
        let line = self.kind.line();
        let mut pts: Vec<f64> = self
            .surface
            .kinks()
            .iter()
            .flat_map(|k| k.section_breaks(line))
            .collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        pts
    }
}
