#![allow(dead_code)]

use copex::copula::{Family, FamilySpec};
use copex::measures::MeasureKind;
use rand::Rng;

/// Draw a member of `family` uniformly over its parameter domain.
/// Marshall-Olkin parameters stay away from 0 so the kink exponent is bounded.
pub fn draw_spec<R: Rng>(family: Family, rng: &mut R) -> FamilySpec {
    let params: Vec<f64> = match family {
        Family::Product => vec![],
        Family::Fgm | Family::ShihLouis => vec![rng.gen_range(-1.0..=1.0)],
        Family::IteratedFgm => {
            let a: f64 = rng.gen_range(-1.0..=1.0);
            let b: f64 = rng.gen_range((-1.0 - a).max(-1.0)..=1.0);
            vec![a, b]
        }
        Family::ExtendedFgm => vec![rng.gen_range(-1.0..=1.0), rng.gen_range(1.0..=5.0)],
        Family::NelsenPolynomial => vec![rng.gen_range(0.0..=0.25)],
        Family::MarshallOlkin => vec![rng.gen_range(0.05..=1.0), rng.gen_range(0.05..=1.0)],
        Family::CuadrasAuge | Family::LinearSpearman | Family::CuadrasAugeSection => {
            vec![rng.gen_range(0.0..=1.0)]
        }
    };
    FamilySpec::new(family, &params).expect("drawn inside the domain")
}

pub fn copula_families() -> impl Iterator<Item = Family> {
    Family::ALL.into_iter().filter(|f| f.is_copula())
}

pub const ALL_KINDS: [MeasureKind; 13] = [
    MeasureKind::CEx,
    MeasureKind::CCEx,
    MeasureKind::SCEx,
    MeasureKind::DualEx,
    MeasureKind::CoCopEx,
    MeasureKind::HorizontalEx(0.3),
    MeasureKind::VerticalEx(0.7),
    MeasureKind::DiagonalEx,
    MeasureKind::WeightedCCEx,
    MeasureKind::RFunctional,
    MeasureKind::RStarFunctional,
    MeasureKind::CopulaEntropy,
    MeasureKind::SurvivalCopulaEntropy,
];

/// One draw from FGM(θ) by conditional inversion of `∂C/∂u`.
pub fn sample_fgm<R: Rng>(theta: f64, rng: &mut R) -> (f64, f64) {
    let u: f64 = rng.gen();
    let w: f64 = rng.gen();
    let a = theta * (1.0 - 2.0 * u);
    let v = if a.abs() < 1e-12 {
        w
    } else {
        let b = 1.0 + a;
        2.0 * w / (b + (b * b - 4.0 * a * w).sqrt())
    };
    (u, v)
}

/// One draw from Marshall-Olkin(α, β) via the exponential shock model.
pub fn sample_marshall_olkin<R: Rng>(alpha: f64, beta: f64, rng: &mut R) -> (f64, f64) {
    let exp = |rate: f64, rng: &mut R| -> f64 {
        if rate == 0.0 {
            f64::INFINITY
        } else {
            -(1.0 - rng.gen::<f64>()).ln() / rate
        }
    };
    let (l1, l2, l12) = ((1.0 - alpha) / alpha, (1.0 - beta) / beta, 1.0);
    let z1 = exp(l1, rng);
    let z2 = exp(l2, rng);
    let z12 = exp(l12, rng);
    let x = z1.min(z12);
    let y = z2.min(z12);
    ((-(l1 + l12) * x).exp(), (-(l2 + l12) * y).exp())
}
