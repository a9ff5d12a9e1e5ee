//! Empirical copula and empirical survival copula on the `i/n` grid.

use serde::{Deserialize, Serialize};

use super::sample::BivariateSample;
use super::EmpiricalError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GridKind {
    /// `#{x ≤ x_(i), y ≤ y_(j)} / n`
    Cdf,
    /// `#{x > x_(i), y > y_(j)} / n`
    Survival,
}

/// An `n × n` empirical grid, generated row by row from the ranks so that
/// large samples never need the full matrix in memory.
#[derive(Debug, Clone)]
pub struct EmpiricalGrid {
    kind: GridKind,
    /// `(rank_x, rank_y)` of each point, sorted by `rank_x`.
    points: Vec<(usize, usize)>,
    /// Max-rank of the `i`-th order statistic, for each margin.
    thresh_x: Vec<usize>,
    thresh_y: Vec<usize>,
}

fn thresholds(ranks: &[usize]) -> Vec<usize> {
    let mut t = ranks.to_vec();
    t.sort_unstable();
    t
}

impl EmpiricalGrid {
    pub fn new(sample: &BivariateSample, kind: GridKind) -> Self {
        let mut points: Vec<(usize, usize)> = sample
            .rank_x()
            .iter()
            .copied()
            .zip(sample.rank_y().iter().copied())
            .collect();
        points.sort_unstable();
        Self {
            kind,
            points,
            thresh_x: thresholds(sample.rank_x()),
            thresh_y: thresholds(sample.rank_y()),
        }
    }

    pub fn cdf(sample: &BivariateSample) -> Self {
        Self::new(sample, GridKind::Cdf)
    }

    pub fn survival(sample: &BivariateSample) -> Self {
        Self::new(sample, GridKind::Survival)
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn kind(&self) -> GridKind {
        self.kind
    }

    /// Visit every row `i = 1..=n` as integer counts `n·C(i/n, j/n)`,
    /// `j = 1..=n`.
    pub fn for_each_row_counts(&self, mut visit: impl FnMut(usize, &[u32])) {
        let n = self.n();
        let mut hist = vec![0u32; n + 1];
        let mut cum = vec![0u32; n + 1];
        let mut row = vec![0u32; n];
        let mut next = 0;
        match self.kind {
            GridKind::Cdf => {
                for i in 1..=n {
                    let tx = self.thresh_x[i - 1];
                    while next < n && self.points[next].0 <= tx {
                        hist[self.points[next].1] += 1;
                        next += 1;
                    }
                    for r in 1..=n {
                        cum[r] = cum[r - 1] + hist[r];
                    }
                    for j in 0..n {
                        row[j] = cum[self.thresh_y[j]];
                    }
                    visit(i, &row);
                }
            }
            GridKind::Survival => {
                for &(_, ry) in &self.points {
                    hist[ry] += 1;
                }
                for i in 1..=n {
                    let tx = self.thresh_x[i - 1];
                    while next < n && self.points[next].0 <= tx {
                        hist[self.points[next].1] -= 1;
                        next += 1;
                    }
                    // cum[r] = #{remaining points with rank_y > r}
                    cum[n] = 0;
                    for r in (0..n).rev() {
                        cum[r] = cum[r + 1] + hist[r + 1];
                    }
                    for j in 0..n {
                        row[j] = cum[self.thresh_y[j]];
                    }
                    visit(i, &row);
                }
            }
        }
    }

    /// Single entry at `(i/n, j/n)`, `1 ≤ i, j ≤ n`, by direct counting.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        let (tx, ty) = (self.thresh_x[i - 1], self.thresh_y[j - 1]);
        let count = match self.kind {
            GridKind::Cdf => self
                .points
                .iter()
                .filter(|&&(a, b)| a <= tx && b <= ty)
                .count(),
            GridKind::Survival => self
                .points
                .iter()
                .filter(|&&(a, b)| a > tx && b > ty)
                .count(),
        };
        count as f64 / self.n() as f64
    }

    /// Dense `n × n` matrix; row `i−1`, column `j−1` holds the `(i/n, j/n)` entry.
    pub fn to_matrix(&self) -> Vec<Vec<f64>> {
        let n = self.n() as f64;
        let mut out = Vec::with_capacity(self.n());
        self.for_each_row_counts(|_, row| out.push(row.iter().map(|&c| c as f64 / n).collect()));
        out
    }

    /// `ΣΣ (n·value)²`, exact in integer arithmetic.
    pub fn sum_squared_counts(&self) -> u128 {
        let mut total = 0u128;
        self.for_each_row_counts(|_, row| {
            total += row.iter().map(|&c| (c as u128) * (c as u128)).sum::<u128>();
        });
        total
    }

    /// `ΣΣ value²`.
    pub fn sum_of_squares(&self) -> f64 {
        let n = self.n() as f64;
        self.sum_squared_counts() as f64 / (n * n)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Normalization {
    /// `ΣΣ values² / (670 n²)`
    PaperConstant,
    /// `ΣΣ values² / (4 n²)`, the Riemann sum of the population functional.
    PopulationRiemann,
}

impl Normalization {
    pub fn factor(self, n: usize) -> f64 {
        let n2 = (n as f64) * (n as f64);
        match self {
            Normalization::PaperConstant => 1.0 / (670.0 * n2),
            Normalization::PopulationRiemann => 1.0 / (4.0 * n2),
        }
    }
}

fn resub(grid: &EmpiricalGrid, want: GridKind, norm: Normalization) -> Result<f64, EmpiricalError> {
    if grid.kind() != want {
        return Err(EmpiricalError::GridKind {
            expected: want,
            found: grid.kind(),
        });
    }
    Ok(norm.factor(grid.n()) * grid.sum_of_squares())
}

/// Plug-in estimate of `¼∬C²` from the empirical copula.
pub fn resub_ccex(grid: &EmpiricalGrid, norm: Normalization) -> Result<f64, EmpiricalError> {
    resub(grid, GridKind::Cdf, norm)
}

/// Plug-in estimate of `¼∬C̄²` from the empirical survival copula.
pub fn resub_scex(grid: &EmpiricalGrid, norm: Normalization) -> Result<f64, EmpiricalError> {
    resub(grid, GridKind::Survival, norm)
}

/// Both estimators under both normalizations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResubEstimates {
    pub n: usize,
    pub ccex_population_riemann: f64,
    pub ccex_paper_constant: f64,
    pub scex_population_riemann: f64,
    pub scex_paper_constant: f64,
}

pub fn resub_estimates(sample: &BivariateSample) -> ResubEstimates {
    let n = sample.len();
    let c = EmpiricalGrid::cdf(sample).sum_of_squares();
    let s = EmpiricalGrid::survival(sample).sum_of_squares();
    let pr = Normalization::PopulationRiemann.factor(n);
    let pc = Normalization::PaperConstant.factor(n);
    ResubEstimates {
        n,
        ccex_population_riemann: pr * c,
        ccex_paper_constant: pc * c,
        scex_population_riemann: pr * s,
        scex_paper_constant: pc * s,
    }
}

/// Grid evidence for positive quadrant dependence.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PqdEvidence {
    pub holds: bool,
    /// `(i, j)` minimising `C(i/n, j/n) − (i/n)(j/n)`.
    pub worst_cell: (usize, usize),
    /// The minimum of `C(i/n, j/n) − (i/n)(j/n)`.
    pub margin: f64,
}

/// Check `C(i/n, j/n) ≥ (i/n)(j/n)` for all `1 ≤ i, j < n`.
pub fn pqd_evidence(grid: &EmpiricalGrid) -> Result<PqdEvidence, EmpiricalError> {
    if grid.kind() != GridKind::Cdf {
        return Err(EmpiricalError::GridKind {
            expected: GridKind::Cdf,
            found: grid.kind(),
        });
    }
    let n = grid.n();
    let nf = n as f64;
    let mut worst = (1, 1);
    let mut margin = f64::INFINITY;
    grid.for_each_row_counts(|i, row| {
        if i >= n {
            return;
        }
        for j in 1..n {
            let m = row[j - 1] as f64 / nf - (i as f64 / nf) * (j as f64 / nf);
            if m < margin {
                margin = m;
                worst = (i, j);
            }
        }
    });
    Ok(PqdEvidence {
        holds: margin >= -1e-12,
        worst_cell: worst,
        margin,
    })
}
