//! Classical sample association statistics.

use serde::{Deserialize, Serialize};

use super::sample::BivariateSample;
use super::EmpiricalError;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SampleDependence {
    pub n: usize,
    pub pearson_r: f64,
    /// Kendall's tau-b (tie corrected).
    pub kendall_tau_b: f64,
    pub kendall_tau_a: f64,
    /// Pearson correlation of average ranks.
    pub spearman_rho: f64,
}

fn pearson(x: &[f64], y: &[f64]) -> Result<f64, EmpiricalError> {
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 {
        return Err(EmpiricalError::Degenerate("first margin is constant"));
    }
    if syy == 0.0 {
        return Err(EmpiricalError::Degenerate("second margin is constant"));
    }
    Ok(sxy / (sxx * syy).sqrt())
}

fn average_ranks(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        let avg = (start + 1 + end) as f64 / 2.0;
        for &k in &order[start..end] {
            ranks[k] = avg;
        }
        start = end;
    }
    ranks
}

/// Returns `(tau_b, tau_a)`.
fn kendall(x: &[f64], y: &[f64]) -> (f64, f64) {
    let n = x.len();
    let (mut conc, mut disc) = (0i64, 0i64);
    let (mut tie_x, mut tie_y) = (0i64, 0i64);
    for i in 0..n {
        for j in i + 1..n {
            let sx = (x[i] - x[j]).partial_cmp(&0.0).map_or(0, |o| o as i8);
            let sy = (y[i] - y[j]).partial_cmp(&0.0).map_or(0, |o| o as i8);
            if sx == 0 {
                tie_x += 1;
            }
            if sy == 0 {
                tie_y += 1;
            }
            match sx * sy {
                1 => conc += 1,
                -1 => disc += 1,
                _ => {}
            }
        }
    }
    let n0 = (n * (n - 1) / 2) as i64;
    let s = (conc - disc) as f64;
    let tau_a = s / n0 as f64;
    let tau_b = s / (((n0 - tie_x) as f64) * ((n0 - tie_y) as f64)).sqrt();
    (tau_b, tau_a)
}

pub fn sample_dependence(sample: &BivariateSample) -> Result<SampleDependence, EmpiricalError> {
    let (x, y) = (sample.x(), sample.y());
    let pearson_r = pearson(x, y)?;
    let (kendall_tau_b, kendall_tau_a) = kendall(x, y);
    let spearman_rho = pearson(&average_ranks(x), &average_ranks(y))?;
    Ok(SampleDependence {
        n: sample.len(),
        pearson_r,
        kendall_tau_b,
        kendall_tau_a,
        spearman_rho,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_orderings() {
        let s = BivariateSample::new(&[(1.0, 2.0), (2.0, 4.0), (3.0, 8.0)]).unwrap();
        let d = sample_dependence(&s).unwrap();
        assert_eq!(d.kendall_tau_b, 1.0);
        assert!((d.spearman_rho - 1.0).abs() < 1e-15);
        let s = BivariateSample::new(&[(1.0, 3.0), (2.0, 2.0), (3.0, 1.0)]).unwrap();
        let d = sample_dependence(&s).unwrap();
        assert!((d.pearson_r + 1.0).abs() < 1e-15);
        assert_eq!(d.kendall_tau_a, -1.0);
    }

    #[test]
    fn ties_follow_tau_b() {
        // C = 4, D = 0, one tie in each margin, n0 = 6
        let s = BivariateSample::new(&[(1.0, 1.0), (1.0, 2.0), (2.0, 2.0), (3.0, 3.0)]).unwrap();
        let d = sample_dependence(&s).unwrap();
        assert!((d.kendall_tau_a - 4.0 / 6.0).abs() < 1e-15);
        assert!((d.kendall_tau_b - 4.0 / 5.0).abs() < 1e-15);
        assert_eq!(average_ranks(&[2.0, 1.0, 2.0]), vec![2.5, 1.0, 2.5]);
    }

    #[test]
    fn constant_margin_is_degenerate() {
        let s = BivariateSample::new(&[(1.0, 1.0), (1.0, 2.0)]).unwrap();
        assert!(matches!(
            sample_dependence(&s),
            Err(EmpiricalError::Degenerate(_))
        ));
    }
}
