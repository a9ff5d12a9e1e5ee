//! Bivariate samples and their two-column CSV form.

use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::EmpiricalError;

/// The aortic/mitral ejection-fraction surgery data, 20 `(x, y)` pairs.
pub const SURGERY_CSV: &str = include_str!("../../data/aortic_mitral_ejection.csv");

/// A sample of `n ≥ 2` finite pairs with max-ranks
/// (`rank(x_k) = #{m : x_m ≤ x_k}`) computed on construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BivariateSample {
    x: Vec<f64>,
    y: Vec<f64>,
    rank_x: Vec<usize>,
    rank_y: Vec<usize>,
}

impl BivariateSample {
    pub fn new(pairs: &[(f64, f64)]) -> Result<Self, EmpiricalError> {
        if pairs.len() < 2 {
            return Err(EmpiricalError::TooFewRows(pairs.len()));
        }
        if let Some(k) = pairs
            .iter()
            .position(|(a, b)| !a.is_finite() || !b.is_finite())
        {
            return Err(EmpiricalError::NonFinite(k));
        }
        let x: Vec<f64> = pairs.iter().map(|p| p.0).collect();
        let y: Vec<f64> = pairs.iter().map(|p| p.1).collect();
        Ok(Self {
            rank_x: max_ranks(&x),
            rank_y: max_ranks(&y),
            x,
            y,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn pairs(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        self.x.iter().copied().zip(self.y.iter().copied())
    }

    /// Max-ranks of the first coordinate, in `1..=n`.
    pub fn rank_x(&self) -> &[usize] {
        &self.rank_x
    }

    pub fn rank_y(&self) -> &[usize] {
        &self.rank_y
    }

    /// Apply strictly increasing maps to the margins.
    pub fn map_margins(
        &self,
        fx: impl Fn(f64) -> f64,
        fy: impl Fn(f64) -> f64,
    ) -> Result<Self, EmpiricalError> {
        let pairs: Vec<(f64, f64)> = self.pairs().map(|(a, b)| (fx(a), fy(b))).collect();
        Self::new(&pairs)
    }
}

fn max_ranks(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0; n];
    let mut start = 0;
    while start < n {
        let mut end = start + 1;
        while end < n && values[order[end]] == values[order[start]] {
            end += 1;
        }
        for &k in &order[start..end] {
            ranks[k] = end;
        }
        start = end;
    }
    ranks
}

/// Parse a two-column CSV. A header is accepted on the first line only;
/// blank lines and malformed rows are rejected with their 1-based line
/// number.
pub fn parse_sample(text: &str) -> Result<BivariateSample, EmpiricalError> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() {
            return Err(EmpiricalError::Parse {
                line: line_no,
                message: "blank line".into(),
            });
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != 2 {
            return Err(EmpiricalError::Parse {
                line: line_no,
                message: format!("expected 2 columns, found {}", fields.len()),
            });
        }
        match (fields[0].parse::<f64>(), fields[1].parse::<f64>()) {
            (Ok(a), Ok(b)) if a.is_finite() && b.is_finite() => pairs.push((a, b)),
            (Ok(_), Ok(_)) => {
                return Err(EmpiricalError::Parse {
                    line: line_no,
                    message: "non-finite value".into(),
                })
            }
            _ if line_no == 1 && looks_like_header(&fields) => {}
            _ => {
                return Err(EmpiricalError::Parse {
                    line: line_no,
                    message: format!("non-numeric row '{line}'"),
                })
            }
        }
    }
    BivariateSample::new(&pairs)
}

fn looks_like_header(fields: &[&str]) -> bool {
    fields
        .iter()
        .all(|f| !f.is_empty() && f.parse::<f64>().is_err())
}

pub fn load_sample<R: Read>(mut reader: R) -> Result<BivariateSample, EmpiricalError> {
    let mut text = String::new();
    reader
        .read_to_string(&mut text)
        .map_err(|e| EmpiricalError::Io(e.to_string()))?;
    parse_sample(&text)
}

pub fn load_sample_path(path: impl AsRef<Path>) -> Result<BivariateSample, EmpiricalError> {
    let file = std::fs::File::open(path.as_ref())
        .map_err(|e| EmpiricalError::Io(format!("{}: {e}", path.as_ref().display())))?;
    load_sample(file)
}

/// The embedded surgery data set.
pub fn surgery_sample() -> BivariateSample {
    parse_sample(SURGERY_CSV).expect("embedded fixture is valid")
}
