//! `family[:p1[,p2]]` strings with an optional sweep over the first parameter.

use copex::copula::{Family, FamilySpec};

use crate::error::CliError;

const MAX_SWEEP: usize = 10_000;

/// Parse `lo:hi:step` into the grid `lo, lo+step, …, ≤ hi`.
pub fn parse_sweep(text: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    if parts.len() != 3 {
        return Err(CliError::parse(text, "sweep must be lo:hi:step"));
    }
    let mut nums = [0.0f64; 3];
    for (slot, tok) in nums.iter_mut().zip(&parts) {
        *slot = tok
            .trim()
            .parse()
            .map_err(|_| CliError::parse(tok, "not a number"))?;
    }
    let [lo, hi, step] = nums;
    if step.is_nan() || step <= 0.0 || !lo.is_finite() || !hi.is_finite() || hi < lo {
        return Err(CliError::parse(text, "need lo <= hi and step > 0"));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize + 1;
    if count > MAX_SWEEP {
        return Err(CliError::parse(
            text,
            format!("more than {MAX_SWEEP} points"),
        ));
    }
    Ok((0..count)
        .map(|k| {
            let x = lo + step * k as f64;
            (x * 1e12).round() / 1e12
        })
        .collect())
}

/// Expand a spec string, possibly carrying an inline `--sweep=` suffix as in
/// `fgm:--sweep=-1:1:0.25`, into concrete family members.
pub fn expand(text: &str, sweep: Option<&str>) -> Result<Vec<FamilySpec>, CliError> {
    let (body, inline) = match text.split_once("--sweep=") {
        Some((b, s)) => (b.trim_end_matches(':'), Some(s)),
        None => (text, None),
    };
    let sweep = match (inline, sweep) {
        (Some(_), Some(_)) => return Err(CliError::parse(text, "sweep given twice")),
        (a, b) => a.or(b),
    };
    let (name, rest) = match body.split_once(':') {
        Some((n, r)) => (n, Some(r)),
        None => (body, None),
    };
    let family =
        Family::from_name(name).ok_or_else(|| CliError::parse(name, "unknown copula family"))?;
    let mut given = Vec::new();
    if let Some(rest) = rest.filter(|r| !r.is_empty()) {
        for tok in rest.split(',') {
            let x: f64 = tok
                .trim()
                .parse()
                .map_err(|_| CliError::parse(tok, "not a number"))?;
            given.push(x);
        }
    }
    match sweep {
        None => Ok(vec![FamilySpec::new(family, &given)?]),
        Some(s) => {
            if family.param_names().is_empty() {
                return Err(CliError::parse(name, "family has no parameter to sweep"));
            }
            parse_sweep(s)?
                .into_iter()
                .map(|x| {
                    let mut params = vec![x];
                    params.extend(given.iter().skip(1));
                    Ok(FamilySpec::new(family, &params)?)
                })
                .collect()
        }
    }
}
