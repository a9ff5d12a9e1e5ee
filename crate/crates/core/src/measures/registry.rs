//! Closed-form expressions for the measures, keyed by family.
//!
//! `Published` entries are formulas as they appear in the literature;
//! `Derived` entries were worked out independently and are checked against
//! quadrature by the test suite. A published entry that quadrature
//! contradicts is kept, flagged `disputed`, so both values stay visible.

use serde::{Deserialize, Serialize};

use super::MeasureKind;
use crate::copula::{Family, FamilySpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Published,
    Derived,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegistryEntry {
    pub formula: &'static str,
    pub origin: Origin,
    pub disputed: bool,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClosedForm {
    pub value: f64,
    pub disputed: bool,
    pub formula: &'static str,
    pub origin: Origin,
}

impl From<&RegistryEntry> for ClosedForm {
    fn from(e: &RegistryEntry) -> Self {
        Self {
            value: e.value,
            disputed: e.disputed,
            formula: e.formula,
            origin: e.origin,
        }
    }
}

/// The registry's answer for `(kind, spec)`: the published formula when one
/// exists, otherwise a derived one.
pub fn closed_form(kind: MeasureKind, spec: &FamilySpec) -> Option<ClosedForm> {
    let entries = registry_entries(kind, spec);
    entries
        .iter()
        .find(|e| e.origin == Origin::Published)
        .or_else(|| entries.first())
        .map(ClosedForm::from)
}

/// First entry not flagged as disputed.
pub fn trusted_closed_form(kind: MeasureKind, spec: &FamilySpec) -> Option<ClosedForm> {
    registry_entries(kind, spec)
        .iter()
        .find(|e| !e.disputed)
        .map(ClosedForm::from)
}

#[derive(Default)]
struct Entries(Vec<RegistryEntry>);

impl Entries {
    fn published(&mut self, formula: &'static str, value: f64) {
        self.push(formula, Origin::Published, false, value);
    }

    fn disputed(&mut self, formula: &'static str, value: f64) {
        self.push(formula, Origin::Published, true, value);
    }

    fn derived(&mut self, formula: &'static str, value: f64) {
        self.push(formula, Origin::Derived, false, value);
    }

    fn push(&mut self, formula: &'static str, origin: Origin, disputed: bool, value: f64) {
        self.0.push(RegistryEntry {
            formula,
            origin,
            disputed,
            value,
        });
    }
}

/// Every registered closed form for `(kind, spec)`.
pub fn registry_entries(kind: MeasureKind, spec: &FamilySpec) -> Vec<RegistryEntry> {
    use MeasureKind as K;

    let mut e = Entries::default();
    let p = &spec.params;
    match spec.family {
        Family::Product => match kind {
            K::CEx => e.published("1/4", 0.25),
            K::CCEx | K::SCEx => {
                e.disputed("1/16", 1.0 / 16.0);
                e.derived("1/36", 1.0 / 36.0);
            }
            K::DualEx | K::CoCopEx => e.published("11/72", 11.0 / 72.0),
            K::HorizontalEx(a) | K::VerticalEx(a) => e.published("a^2/12", a * a / 12.0),
            K::DiagonalEx => e.published("1/20", 0.05),
            K::WeightedCCEx => e.derived("1/48", 1.0 / 48.0),
            K::RFunctional | K::RStarFunctional => e.derived("1/3", 1.0 / 3.0),
            K::CopulaEntropy => e.derived("0", 0.0),
            K::SurvivalCopulaEntropy => e.derived("1/4", 0.25),
        },
        Family::Fgm => {
            let t = p[0];
            let j = 0.25 * (1.0 / 9.0 + t / 72.0 + t * t / 900.0);
            let r = (12.0 + t) / 36.0;
            match kind {
                K::CEx => e.derived("(1/4)(1 + theta^2/9)", 0.25 * (1.0 + t * t / 9.0)),
                K::CCEx => e.derived("(1/4)(1/9 + theta/72 + theta^2/900)", j),
                K::SCEx => e.published("(1/4)(1/9 + theta/72 + theta^2/900)", j),
                K::DualEx | K::CoCopEx => e.derived(
                    "11/72 - theta/96 + theta^2/3600",
                    11.0 / 72.0 - t / 96.0 + t * t / 3600.0,
                ),
                K::HorizontalEx(a) | K::VerticalEx(a) => e.derived(
                    "a^2 (10 + 5 theta (1-a) + theta^2 (1-a)^2)/120",
                    a * a * (10.0 + 5.0 * t * (1.0 - a) + t * t * (1.0 - a).powi(2)) / 120.0,
                ),
                K::DiagonalEx => e.derived(
                    "1/20 + theta/210 + theta^2/2520",
                    0.05 + t / 210.0 + t * t / 2520.0,
                ),
                K::WeightedCCEx => e.derived(
                    "1/48 + theta/480 + theta^2/7200",
                    1.0 / 48.0 + t / 480.0 + t * t / 7200.0,
                ),
                K::RFunctional => e.derived("(12 + theta)/36", r),
                K::RStarFunctional => {
                    e.disputed("(theta + 5)/36", (t + 5.0) / 36.0);
                    e.derived("(12 + theta)/36", r);
                }
                K::CopulaEntropy | K::SurvivalCopulaEntropy => {}
            }
        }
        Family::IteratedFgm => {
            let (a, b) = (p[0], p[1]);
            let r = 1.0 / 3.0 + a / 36.0 + b / 120.0;
            let j = 0.25
                * (1.0 / 9.0
                    + a / 72.0
                    + b / 200.0
                    + a * a / 900.0
                    + a * b / 1800.0
                    + b * b / 11025.0);
            match kind {
                K::CEx => e.published(
                    "(1/4)[1 + alpha^2/9 + alpha beta/18 + 4 beta^2/225]",
                    0.25 * (1.0 + a * a / 9.0 + a * b / 18.0 + 4.0 * b * b / 225.0),
                ),
                K::CCEx => {
                    e.disputed(
                        "(1/4)[1/9 + alpha/72 + beta/200 + alpha^2/900 + 241 alpha beta/1800 + beta^2/11025]",
                        0.25 * (1.0 / 9.0
                            + a / 72.0
                            + b / 200.0
                            + a * a / 900.0
                            + 241.0 * a * b / 1800.0
                            + b * b / 11025.0),
                    );
                    e.derived(
                        "(1/4)[1/9 + alpha/72 + beta/200 + alpha^2/900 + alpha beta/1800 + beta^2/11025]",
                        j,
                    );
                }
                K::RFunctional => e.derived("1/3 + alpha/36 + beta/120", r),
                K::DualEx => e.derived("J_C + 7/24 - R/2", j + 7.0 / 24.0 - 0.5 * r),
                _ => {}
            }
        }
        Family::ExtendedFgm => {
            let (t, q) = (p[0], p[1]);
            let j = 0.25
                * (1.0 / 9.0
                    + 8.0
                        * t
                        * (1.0 / (2.0 + q).powi(2)
                            - (q * q + 4.0 * q + 2.0) / ((1.0 + q).powi(2) * (3.0 + q).powi(2)))
                    + t * t
                        * (1.0 / (1.0 + q).powi(2)
                            - 8.0 * (2.0 * q * q + 4.0 * q + 1.0)
                                / ((1.0 + 2.0 * q).powi(2) * (3.0 + 2.0 * q).powi(2))));
            let r = 1.0 / 3.0 + 4.0 * t / ((q + 1.0).powi(2) * (q + 2.0).powi(2) * (q + 3.0));
            match kind {
                K::CEx => e.derived(
                    "(1/4)[1 + theta^2 p^2/((2p-1)^2 (2p+1)^2)]",
                    0.25 * (1.0
                        + t * t * q * q / ((2.0 * q - 1.0).powi(2) * (2.0 * q + 1.0).powi(2))),
                ),
                K::CCEx => {
                    e.disputed(
                        "1/36 + theta/(2(p+2)^2(p+3)^2) + (theta^2/4)[p^2/((2p+1)(p+1)^2) + 2(2p^2+6p+1)/((p+1)(2p+1)(2p+3)^2)]",
                        1.0 / 36.0
                            + t / (2.0 * (q + 2.0).powi(2) * (q + 3.0).powi(2))
                            + 0.25
                                * t
                                * t
                                * (q * q / ((2.0 * q + 1.0) * (q + 1.0).powi(2))
                                    + 2.0 * (2.0 * q * q + 6.0 * q + 1.0)
                                        / ((q + 1.0)
                                            * (2.0 * q + 1.0)
                                            * (2.0 * q + 3.0).powi(2))),
                    );
                    e.published(
                        "(1/4)[1/9 + 8 theta{1/(2+p)^2 - (p^2+4p+2)/((1+p)^2(3+p)^2)} + theta^2{1/(1+p)^2 - 8(2p^2+4p+1)/((1+2p)^2(3+2p)^2)}]",
                        j,
                    );
                }
                K::RFunctional => e.derived("1/3 + 4 theta/((p+1)^2 (p+2)^2 (p+3))", r),
                K::DualEx => e.derived("J_C + 7/24 - R/2", j + 7.0 / 24.0 - 0.5 * r),
                _ => {}
            }
        }
        Family::NelsenPolynomial => {
            let a = p[0];
            let j = 1.0 / 36.0 + 37.0 * a / 3600.0 + 221.0 * a * a / 88200.0;
            let r = (4.0 + a) / 12.0;
            match kind {
                K::CEx => {
                    e.disputed(
                        "(1/4)[1 - 8 alpha + 50938 alpha^2/1575]",
                        0.25 * (1.0 - 8.0 * a + 50938.0 * a * a / 1575.0),
                    );
                    e.derived("1/4 + 13 alpha^2/50", 0.25 + 13.0 * a * a / 50.0);
                }
                K::CCEx => {
                    e.disputed(
                        "(1/4)[1/9 + 0.1389 alpha + 2.58 alpha^2]",
                        0.25 * (1.0 / 9.0 + 0.1389 * a + 2.58 * a * a),
                    );
                    e.derived("1/36 + 37 alpha/3600 + 221 alpha^2/88200", j);
                }
                K::SCEx => e.derived("1/36 + 37 alpha/3600 + 221 alpha^2/88200", j),
                K::RFunctional | K::RStarFunctional => e.derived("(4 + alpha)/12", r),
                K::DualEx | K::CoCopEx => e.derived("J_C + 7/24 - R/2", j + 7.0 / 24.0 - 0.5 * r),
                _ => {}
            }
        }
        Family::MarshallOlkin | Family::CuadrasAuge => {
            let (a, b) = if spec.family == Family::CuadrasAuge {
                (p[0], p[0])
            } else {
                (p[0], p[1])
            };
            marshall_olkin(&mut e, kind, spec.family, a, b);
        }
        Family::ShihLouis | Family::LinearSpearman => {
            let r = p[0];
            let positive = spec.family == Family::LinearSpearman || r > 0.0;
            let j = if positive {
                (10.0 + 4.0 * r + r * r) / 360.0
            } else {
                (20.0 + 7.0 * r + 2.0 * r * r) / 720.0
            };
            let rf = (4.0 + r) / 12.0;
            match kind {
                K::CCEx | K::SCEx => {
                    if kind == K::SCEx {
                        match (spec.family, positive) {
                            (Family::LinearSpearman, _) => {
                                e.disputed("(alpha^2 + alpha + 1)/36", (r * r + r + 1.0) / 36.0)
                            }
                            (_, true) => e.disputed(
                                "(1/36)[2 + 5 rho - 4 rho^2]",
                                (2.0 + 5.0 * r - 4.0 * r * r) / 36.0,
                            ),
                            (_, false) => {
                                e.disputed(
                                    "(1/72)[2 + 7 rho + 2 rho^2]",
                                    (2.0 + 7.0 * r + 2.0 * r * r) / 72.0,
                                );
                                e.disputed(
                                    "(1/72)[4 - 22 rho - 5 rho^2]",
                                    (4.0 - 22.0 * r - 5.0 * r * r) / 72.0,
                                );
                            }
                        }
                    }
                    if positive {
                        e.derived("(10 + 4 r + r^2)/360", j);
                    } else {
                        e.derived("(20 + 7 r + 2 r^2)/720", j);
                    }
                }
                K::RFunctional | K::RStarFunctional => e.derived("(4 + r)/12", rf),
                K::DualEx | K::CoCopEx => e.derived("J_C + 7/24 - R/2", j + 7.0 / 24.0 - 0.5 * rf),
                K::HorizontalEx(x) | K::VerticalEx(x) if positive => e.derived(
                    "(1/4)[(1-r)^2 a^2/3 + 2r(1-r) a (a/2 - a^3/6) + r^2 (a^2 - 2a^3/3)]",
                    0.25 * ((1.0 - r).powi(2) * x * x / 3.0
                        + 2.0 * r * (1.0 - r) * x * (x / 2.0 - x.powi(3) / 6.0)
                        + r * r * (x * x - 2.0 * x.powi(3) / 3.0)),
                ),
                K::DiagonalEx if positive => e.derived(
                    "(1/4)[(1-r)^2/5 + r(1-r)/2 + r^2/3]",
                    0.25 * ((1.0 - r).powi(2) / 5.0 + r * (1.0 - r) / 2.0 + r * r / 3.0),
                ),
                K::DiagonalEx => e.derived(
                    "(1/4)[(1+r)^2/5 - 17 r (1+r)/48 + r^2/6]",
                    0.25 * ((1.0 + r).powi(2) / 5.0 - 17.0 * r * (1.0 + r) / 48.0 + r * r / 6.0),
                ),
                _ => {}
            }
        }
        Family::CuadrasAugeSection => {
            let a = p[0];
            let j = 1.0 / (12.0 * (3.0 - 2.0 * a));
            let r = (12.0 - 5.0 * a) / (6.0 * (2.0 - a) * (3.0 - a));
            match kind {
                K::CCEx => {
                    e.published("1/(12(3-2 alpha))", j);
                    e.disputed("-1/(6(3-2 alpha))", -1.0 / (6.0 * (3.0 - 2.0 * a)));
                    e.disputed("1/(12(2-alpha))", 1.0 / (12.0 * (2.0 - a)));
                }
                K::SCEx => e.published(
                    "(1/12)[1/2 + (2 alpha-3)/((2-alpha)(3-alpha)) + 1/(3-2 alpha)]",
                    section_scex(a),
                ),
                K::DualEx => {
                    e.published(
                        "(1/4)[7/6 - (12-5 alpha)/(3(2-alpha)(3-alpha)) + 1/(3(3-2 alpha))]",
                        section_dual(a, 1.0),
                    );
                    e.disputed(
                        "(1/4)[7/6 - (12-5 alpha)/(3(2-alpha)(3-alpha)) - 1/(3(3-2 alpha))]",
                        section_dual(a, -1.0),
                    );
                }
                K::CoCopEx => e.published(
                    "(1/4)[1 - 1/(2-alpha) + 1/(3(3-2 alpha))]",
                    section_cocop(a),
                ),
                K::HorizontalEx(x) => e.published("a^(2-2 alpha)/12", x.powf(2.0 - 2.0 * a) / 12.0),
                K::VerticalEx(x) => {
                    e.published("a^2/(4(3-2 alpha))", x * x / (4.0 * (3.0 - 2.0 * a)))
                }
                K::DiagonalEx => {
                    e.disputed("1/(4(3-alpha))", 1.0 / (4.0 * (3.0 - a)));
                    e.derived("1/(4(5-2 alpha))", 1.0 / (4.0 * (5.0 - 2.0 * a)));
                }
                K::WeightedCCEx => {
                    e.disputed("1/(12(3-alpha))", 1.0 / (12.0 * (3.0 - a)));
                    e.derived("1/(16(3-2 alpha))", 1.0 / (16.0 * (3.0 - 2.0 * a)));
                }
                K::RFunctional => e.published("(12-5 alpha)/(6(2-alpha)(3-alpha))", r),
                K::RStarFunctional => e.derived(
                    "(alpha^2 - 6 alpha + 12)/(6(2-alpha)(3-alpha))",
                    (a * a - 6.0 * a + 12.0) / (6.0 * (2.0 - a) * (3.0 - a)),
                ),
                _ => {}
            }
        }
    }
    e.0
}

fn section_scex(a: f64) -> f64 {
    (0.5 + (2.0 * a - 3.0) / ((2.0 - a) * (3.0 - a)) + 1.0 / (3.0 - 2.0 * a)) / 12.0
}

fn section_dual(a: f64, sign: f64) -> f64 {
    0.25 * (7.0 / 6.0 - (12.0 - 5.0 * a) / (3.0 * (2.0 - a) * (3.0 - a))
        + sign / (3.0 * (3.0 - 2.0 * a)))
}

fn section_cocop(a: f64) -> f64 {
    0.25 * (1.0 - 1.0 / (2.0 - a) + 1.0 / (3.0 * (3.0 - 2.0 * a)))
}

/// `¼∬C²` for `min(u^(1−a) v, u v^(1−b))`, integrating the two regions
/// separated by `v = u^(a/b)`.
pub(crate) fn marshall_olkin_ccex(a: f64, b: f64) -> f64 {
    if a * b == 0.0 {
        return 1.0 / 36.0;
    }
    (1.0 / (3.0 - 2.0 * a + 3.0 * a / b) + 1.0 / (3.0 - 2.0 * b + 3.0 * b / a)) / 12.0
}

/// `∬(u+v)C` for the Marshall–Olkin copula.
pub(crate) fn marshall_olkin_r(a: f64, b: f64) -> f64 {
    if a * b == 0.0 {
        return 1.0 / 3.0;
    }
    let k = a / b;
    let below = 1.0 / (2.0 * (3.0 - a + 2.0 * k)) + 1.0 / (3.0 * (2.0 - a + 3.0 * k));
    let above = (1.0 / 3.0 - 1.0 / (3.0 + k * (2.0 - b))) / (2.0 - b)
        + (0.5 - 1.0 / (2.0 + k * (3.0 - b))) / (3.0 - b);
    below + above
}

fn marshall_olkin(e: &mut Entries, kind: MeasureKind, family: Family, a: f64, b: f64) {
    use MeasureKind as K;

    let ca = family == Family::CuadrasAuge;
    let j = marshall_olkin_ccex(a, b);
    let r = marshall_olkin_r(a, b);
    match kind {
        K::CCEx => {
            if ca {
                e.disputed("1/(12(3-2 alpha))", 1.0 / (12.0 * (3.0 - 2.0 * a)));
            } else {
                e.disputed("-1/(6(3-2 alpha))", -1.0 / (6.0 * (3.0 - 2.0 * a)));
                e.disputed("-1/(6(3-2 beta))", -1.0 / (6.0 * (3.0 - 2.0 * b)));
                e.disputed("1/(12(3-2 alpha))", 1.0 / (12.0 * (3.0 - 2.0 * a)));
            }
            if ca {
                e.derived("1/(12(3-alpha))", j);
            } else {
                e.derived(
                    "(1/12)[1/(3-2 alpha+3 alpha/beta) + 1/(3-2 beta+3 beta/alpha)]",
                    j,
                );
            }
        }
        K::SCEx => {
            e.disputed(
                "(1/12)[1/2 + (2 alpha-3)/((2-alpha)(3-alpha)) + 1/(3-2 alpha)]",
                section_scex(a),
            );
            if !ca {
                e.disputed(
                    "(1/12)[1/2 + (2 beta-3)/((2-beta)(3-beta)) + 1/(3-2 beta)]",
                    section_scex(b),
                );
            }
        }
        K::DualEx => {
            if ca {
                e.disputed(
                    "(1/4)[7/6 - (12-5 alpha)/(3(2-alpha)(3-alpha)) + 1/(3(3-2 alpha))]",
                    section_dual(a, 1.0),
                );
            } else {
                e.disputed(
                    "(1/4)[7/6 - (12-5 alpha)/(3(2-alpha)(3-alpha)) - 1/(3(3-2 alpha))]",
                    section_dual(a, -1.0),
                );
                e.disputed(
                    "(1/4)[7/6 - (12-5 beta)/(3(2-beta)(3-beta)) - 1/(3(3-2 beta))]",
                    section_dual(b, -1.0),
                );
            }
            e.derived("J_C + 7/24 - R/2", j + 7.0 / 24.0 - 0.5 * r);
        }
        K::CoCopEx if !ca => {
            e.disputed(
                "(1/4)[1 - 1/(2-alpha) + 1/(3(3-2 alpha))]",
                section_cocop(a),
            );
            e.disputed("(1/4)[1 - 1/(2-beta) + 1/(3(3-2 beta))]", section_cocop(b));
        }
        K::RFunctional => {
            if ca {
                e.disputed(
                    "(12-5 alpha)/(6(2-alpha)(3-alpha))",
                    (12.0 - 5.0 * a) / (6.0 * (2.0 - a) * (3.0 - a)),
                );
                e.derived("5/(3(5-alpha))", r);
            } else {
                e.derived("two-region integral over v = u^(alpha/beta)", r);
            }
        }
        K::HorizontalEx(x) | K::VerticalEx(x) if ca => {
            e.disputed("a^(2-2 alpha)/12", x.powf(2.0 - 2.0 * a) / 12.0);
            e.disputed("a^2/(4(3-2 alpha))", x * x / (4.0 * (3.0 - 2.0 * a)));
            e.derived(
                "(3a^2 - 2 alpha a^(5-2 alpha))/(12(3-2 alpha))",
                (3.0 * x * x - 2.0 * a * x.powf(5.0 - 2.0 * a)) / (12.0 * (3.0 - 2.0 * a)),
            );
        }
        K::DiagonalEx if ca => {
            e.disputed("1/(4(3-alpha))", 1.0 / (4.0 * (3.0 - a)));
            e.derived("1/(4(5-2 alpha))", 1.0 / (4.0 * (5.0 - 2.0 * a)));
        }
        _ => {}
    }
}
