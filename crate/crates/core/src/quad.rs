//! Deterministic adaptive Gauss–Legendre quadrature on `[0,1]` and `[0,1]²`.
//!
//! The square is first cut into *strips*: between consecutive outer
//! breakpoints `u ∈ [a,b]` the region is bounded below and above by two graph
//! curves `v = lo(u)` and `v = hi(u)` (the square's edges or hint curves).
//! Every strip is mapped to a rectangle in `(u, s)` with
//! `v = lo(u) + s·(hi(u) − lo(u))`, and a tensor Gauss–Legendre rule is
//! applied there. Kinks that lie on a hint curve therefore never cross a
//! panel.
//!
//! Panels are refined by dyadic bisection along a single axis, chosen by a
//! two-level error estimate: the panel rule is compared against the sum of the
//! rules on its two halves in `u` and, separately, in `s`. Refinement is
//! global (largest estimated error first, ties broken by panel index) and all
//! reductions run in a fixed order, so results are bit-reproducible.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Upper bound on the number of live panels in one integration.
const MAX_PANELS: usize = 60_000;

/// A curve in the unit square along which an integrand may be non-smooth.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Curve {
    /// The line `u = c`.
    Vertical(f64),
    /// The line `v = c`.
    Horizontal(f64),
    /// `v = u`.
    Diagonal,
    /// `u + v = 1`.
    AntiDiagonal,
    /// `v = u^exponent`, optionally reflected (`u ↦ 1−u`, `v ↦ 1−v`).
    PowerLocus {
        exponent: f64,
        flip_u: bool,
        flip_v: bool,
    },
}

impl Curve {
    pub fn power_locus(exponent: f64) -> Self {
        Curve::PowerLocus {
            exponent,
            flip_u: false,
            flip_v: false,
        }
    }

    /// Height of the curve above `u`, or `None` for vertical lines.
    pub fn graph(&self, u: f64) -> Option<f64> {
        match *self {
            Curve::Vertical(_) => None,
            Curve::Horizontal(c) => Some(c),
            Curve::Diagonal => Some(u),
            Curve::AntiDiagonal => Some(1.0 - u),
            Curve::PowerLocus {
                exponent,
                flip_u,
                flip_v,
            } => {
                let x = if flip_u { 1.0 - u } else { u };
                let y = x.max(0.0).powf(exponent);
                Some(if flip_v { 1.0 - y } else { y })
            }
        }
    }

    /// Image of the curve under the reflections `u ↦ 1−u` and/or `v ↦ 1−v`.
    pub fn reflect(&self, flip_u: bool, flip_v: bool) -> Curve {
        match *self {
            Curve::Vertical(c) => Curve::Vertical(if flip_u { 1.0 - c } else { c }),
            Curve::Horizontal(c) => Curve::Horizontal(if flip_v { 1.0 - c } else { c }),
            Curve::Diagonal | Curve::AntiDiagonal => {
                let diagonal = matches!(self, Curve::Diagonal) ^ flip_u ^ flip_v;
                if diagonal {
                    Curve::Diagonal
                } else {
                    Curve::AntiDiagonal
                }
            }
            Curve::PowerLocus {
                exponent,
                flip_u: fu,
                flip_v: fv,
            } => Curve::PowerLocus {
                exponent,
                flip_u: fu ^ flip_u,
                flip_v: fv ^ flip_v,
            },
        }
    }

    /// Points `t ∈ (0,1)` where a section of a surface kinked along this
    /// curve is itself non-smooth.
    ///
    /// `Horizontal(a)` sections run along `v = a`, `Vertical(a)` sections along
    /// `u = a`; the diagonal section runs along `v = u`.
    pub fn section_breaks(&self, section: SectionLine) -> Vec<f64> {
        let mut out = Vec::new();
        match (section, *self) {
            (SectionLine::Horizontal(_), Curve::Vertical(c)) => out.push(c),
            (SectionLine::Horizontal(_), Curve::Horizontal(_)) => {}
            (SectionLine::Horizontal(a), curve) => {
                find_roots(|u| curve.graph(u).unwrap_or(0.0) - a, &mut out)
            }
            (SectionLine::Vertical(_), Curve::Vertical(_)) => {}
            (SectionLine::Vertical(a), curve) => {
                if let Some(t) = curve.graph(a) {
                    out.push(t)
                }
            }
            (SectionLine::Diagonal, Curve::Vertical(c) | Curve::Horizontal(c)) => out.push(c),
            (SectionLine::Diagonal, Curve::Diagonal) => {}
            (SectionLine::Diagonal, curve) => {
                find_roots(|u| curve.graph(u).unwrap_or(0.0) - u, &mut out)
            }
        }
        out.retain(|t| *t > 0.0 && *t < 1.0);
        out
    }
}

/// The line a one-dimensional section runs along.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SectionLine {
    Horizontal(f64),
    Vertical(f64),
    Diagonal,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadratureConfig {
    /// Gauss–Legendre points per axis per panel.
    pub rule_order: usize,
    /// Maximum number of bisections along each axis.
    pub max_depth: u32,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Curves forcing an initial subdivision. In one dimension only
    /// `Vertical(c)` hints are used, as breakpoints at `c`.
    pub split_hints: Vec<Curve>,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        Self {
            rule_order: 16,
            max_depth: 24,
            abs_tol: 1e-10,
            rel_tol: 1e-9,
            split_hints: Vec::new(),
        }
    }
}

impl QuadratureConfig {
    pub fn validate(&self) -> Result<(), QuadError> {
        if self.rule_order < 2 {
            return Err(QuadError::InvalidConfig(format!(
                "rule_order must be at least 2, got {}",
                self.rule_order
            )));
        }
        if self.abs_tol.is_nan()
            || self.abs_tol <= 0.0
            || self.rel_tol.is_nan()
            || self.rel_tol <= 0.0
        {
            return Err(QuadError::InvalidConfig(format!(
                "tolerances must be positive, got abs_tol={} rel_tol={}",
                self.abs_tol, self.rel_tol
            )));
        }
        Ok(())
    }

    /// Copy of this configuration with extra split hints appended.
    pub fn with_hints(&self, hints: impl IntoIterator<Item = Curve>) -> Self {
        let mut cfg = self.clone();
        for h in hints {
            if !cfg.split_hints.contains(&h) {
                cfg.split_hints.push(h);
            }
        }
        cfg
    }

    pub fn with_abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    /// Short canonical description, stable across runs.
    pub fn digest(&self) -> String {
        format!(
            "gl{}-d{}-abs{:e}-rel{:e}-h{}",
            self.rule_order,
            self.max_depth,
            self.abs_tol,
            self.rel_tol,
            self.split_hints.len()
        )
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralResult {
    pub value: f64,
    pub error_estimate: f64,
    pub panels_used: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadError {
    #[error("invalid quadrature configuration: {0}")]
    InvalidConfig(String),
    #[error("quadrature did not converge: estimate {} with error bound {}", .0.value, .0.error_estimate)]
    NotConverged(IntegralResult),
    #[error("integrand is not finite at ({u}, {v})")]
    NonFinite { u: f64, v: f64 },
}

/// Gauss–Legendre nodes and weights mapped to `[0,1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(order: usize) -> Self {
        let n = order.max(1);
        let mut nodes = vec![0.0; n];
        let mut weights = vec![0.0; n];
        for i in 0..n.div_ceil(2) {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(n, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(n, x);
            if d != 0.0 {
                dp = d;
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            nodes[i] = 0.5 * (1.0 - x);
            weights[i] = 0.5 * w;
            nodes[n - 1 - i] = 0.5 * (1.0 + x);
            weights[n - 1 - i] = 0.5 * w;
        }
        Self { nodes, weights }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    fn apply<F: Fn(f64) -> f64>(&self, a: f64, b: f64, f: &F) -> Result<f64, QuadError> {
        let h = b - a;
        let mut acc = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            let t = a + h * x;
            let y = f(t);
            if !y.is_finite() {
                return Err(QuadError::NonFinite { u: t, v: f64::NAN });
            }
            acc += w * y;
        }
        Ok(acc * h)
    }
}

/// Legendre polynomial `P_n(x)` and its derivative.
fn legendre(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Sign-change roots of `f` on the open interval `(0,1)`.
pub(crate) fn find_roots<F: Fn(f64) -> f64>(f: F, out: &mut Vec<f64>) {
    const SAMPLES: usize = 512;
    let mut prev_t = 0.0;
    let mut prev = f(0.0);
    for k in 1..=SAMPLES {
        let t = k as f64 / SAMPLES as f64;
        let cur = f(t);
        if cur == 0.0 && k < SAMPLES {
            out.push(t);
        } else if prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0) {
            let (mut a, mut b) = (prev_t, t);
            let fa_neg = prev < 0.0;
            for _ in 0..200 {
                let m = 0.5 * (a + b);
                if m <= a || m >= b {
                    break;
                }
                if (f(m) < 0.0) == fa_neg {
                    a = m;
                } else {
                    b = m;
                }
            }
            out.push(0.5 * (a + b));
        }
        prev_t = t;
        prev = cur;
    }
}

/// Neumaier-compensated sum in iteration order.
fn stable_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for x in values {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    sum + comp
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Key(f64, Reverse<usize>);

impl Eq for Key {}

impl PartialOrd for Key {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Key {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.total_cmp(&other.0).then(self.1.cmp(&other.1))
    }
}

#[derive(Debug, Clone, Copy)]
enum Edge {
    Zero,
    One,
    Curve(Curve),
}

impl Edge {
    fn at(&self, u: f64) -> f64 {
        match self {
            Edge::Zero => 0.0,
            Edge::One => 1.0,
            Edge::Curve(c) => c.graph(u).unwrap_or(0.0).clamp(0.0, 1.0),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Strip {
    lo: Edge,
    hi: Edge,
}

fn build_strips(hints: &[Curve]) -> Vec<(f64, f64, Strip)> {
    let graphs: Vec<Curve> = hints
        .iter()
        .copied()
        .filter(|c| !matches!(c, Curve::Vertical(_)))
        .filter(|c| match c {
            Curve::Horizontal(h) => *h > 0.0 && *h < 1.0,
            _ => true,
        })
        .collect();

    let mut breaks = vec![0.0, 1.0];
    for h in hints {
        if let Curve::Vertical(c) = h {
            if *c > 0.0 && *c < 1.0 {
                breaks.push(*c);
            }
        }
    }
    for (i, a) in graphs.iter().enumerate() {
        for b in &graphs[i + 1..] {
            find_roots(
                |u| a.graph(u).unwrap_or(0.0) - b.graph(u).unwrap_or(0.0),
                &mut breaks,
            );
        }
        // where a curve leaves the square it is clamped, which is a kink
        find_roots(|u| a.graph(u).unwrap_or(0.0), &mut breaks);
        find_roots(|u| a.graph(u).unwrap_or(0.0) - 1.0, &mut breaks);
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);

    let mut strips = Vec::new();
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        if b - a <= 1e-15 {
            continue;
        }
        let m = 0.5 * (a + b);
        let mut edges: Vec<(f64, Edge)> = vec![(0.0, Edge::Zero), (1.0, Edge::One)];
        for g in &graphs {
            let y = g.graph(m).unwrap_or(0.0);
            if y > 0.0 && y < 1.0 {
                edges.push((y, Edge::Curve(*g)));
            }
        }
        edges.sort_by(|x, y| x.0.total_cmp(&y.0));
        edges.dedup_by(|x, y| (x.0 - y.0).abs() < 1e-14);
        for e in edges.windows(2) {
            strips.push((
                a,
                b,
                Strip {
                    lo: e[0].1,
                    hi: e[1].1,
                },
            ));
        }
    }
    strips
}

#[derive(Debug, Clone, Copy)]
struct Panel2 {
    strip: usize,
    u0: f64,
    u1: f64,
    s0: f64,
    s1: f64,
    du: u32,
    dv: u32,
    value: f64,
    err: f64,
    err_u: f64,
    err_v: f64,
}

struct Square<'a, F> {
    f: &'a F,
    rule: GaussLegendre,
    strips: Vec<Strip>,
}

impl<F: Fn(f64, f64) -> f64> Square<'_, F> {
    fn rule(&self, strip: usize, u0: f64, u1: f64, s0: f64, s1: f64) -> Result<f64, QuadError> {
        let Strip { lo, hi } = self.strips[strip];
        let hu = u1 - u0;
        let hs = s1 - s0;
        let mut acc = 0.0;
        for (xi, wi) in self.rule.nodes.iter().zip(&self.rule.weights) {
            let u = u0 + hu * xi;
            let a = lo.at(u);
            let width = hi.at(u) - a;
            if width <= 0.0 {
                continue;
            }
            let mut inner = 0.0;
            for (xj, wj) in self.rule.nodes.iter().zip(&self.rule.weights) {
                let v = a + (s0 + hs * xj) * width;
                let y = (self.f)(u, v);
                if !y.is_finite() {
                    return Err(QuadError::NonFinite { u, v });
                }
                inner += wj * y;
            }
            acc += wi * inner * width;
        }
        Ok(acc * hu * hs)
    }

    #[allow(clippy::too_many_arguments)]
    fn panel(
        &self,
        strip: usize,
        u0: f64,
        u1: f64,
        s0: f64,
        s1: f64,
        du: u32,
        dv: u32,
    ) -> Result<Panel2, QuadError> {
        let um = 0.5 * (u0 + u1);
        let sm = 0.5 * (s0 + s1);
        let q0 = self.rule(strip, u0, u1, s0, s1)?;
        let qu = self.rule(strip, u0, um, s0, s1)? + self.rule(strip, um, u1, s0, s1)?;
        let qv = self.rule(strip, u0, u1, s0, sm)? + self.rule(strip, u0, u1, sm, s1)?;
        let err_u = (qu - q0).abs();
        let err_v = (qv - q0).abs();
        Ok(Panel2 {
            strip,
            u0,
            u1,
            s0,
            s1,
            du,
            dv,
            value: qu + qv - q0,
            err: err_u + err_v,
            err_u,
            err_v,
        })
    }

    fn split(&self, p: &Panel2, max_depth: u32) -> Result<Option<[Panel2; 2]>, QuadError> {
        let can_u = p.du < max_depth;
        let can_v = p.dv < max_depth;
        let along_u = match (can_u, can_v) {
            (false, false) => return Ok(None),
            (true, false) => true,
            (false, true) => false,
            (true, true) => p.err_u >= p.err_v,
        };
        let children = if along_u {
            let um = 0.5 * (p.u0 + p.u1);
            [
                self.panel(p.strip, p.u0, um, p.s0, p.s1, p.du + 1, p.dv)?,
                self.panel(p.strip, um, p.u1, p.s0, p.s1, p.du + 1, p.dv)?,
            ]
        } else {
            let sm = 0.5 * (p.s0 + p.s1);
            [
                self.panel(p.strip, p.u0, p.u1, p.s0, sm, p.du, p.dv + 1)?,
                self.panel(p.strip, p.u0, p.u1, sm, p.s1, p.du, p.dv + 1)?,
            ]
        };
        Ok(Some(children))
    }
}

/// Global adaptive driver shared by the 1-D and 2-D engines.
fn drive<P: Copy>(
    mut panels: Vec<P>,
    cfg: &QuadratureConfig,
    value: impl Fn(&P) -> f64,
    err: impl Fn(&P) -> f64,
    mut split: impl FnMut(&P) -> Result<Option<[P; 2]>, QuadError>,
) -> Result<IntegralResult, QuadError> {
    let mut heap: BinaryHeap<Key> = panels
        .iter()
        .enumerate()
        .map(|(i, p)| Key(err(p), Reverse(i)))
        .collect();
    let mut run_val: f64 = panels.iter().map(&value).sum();
    let mut run_err: f64 = panels.iter().map(&err).sum();
    let mut converged = false;

    loop {
        if run_err <= cfg.tolerance(run_val) {
            run_val = stable_sum(panels.iter().map(&value));
            run_err = stable_sum(panels.iter().map(&err));
            if run_err <= cfg.tolerance(run_val) {
                converged = true;
                break;
            }
        }
        if panels.len() >= MAX_PANELS {
            break;
        }
        let Some(Key(_, Reverse(idx))) = heap.pop() else {
            break;
        };
        let parent = panels[idx];
        let Some([a, b]) = split(&parent)? else {
            continue;
        };
        run_val += value(&a) + value(&b) - value(&parent);
        run_err += err(&a) + err(&b) - err(&parent);
        panels[idx] = a;
        heap.push(Key(err(&a), Reverse(idx)));
        panels.push(b);
        heap.push(Key(err(&b), Reverse(panels.len() - 1)));
    }

    Ok(IntegralResult {
        value: stable_sum(panels.iter().map(&value)),
        error_estimate: stable_sum(panels.iter().map(&err)),
        panels_used: panels.len(),
        converged,
    })
}

/// Integrate `f` over `[0,1]²`, reporting convergence in the result rather
/// than as an error.
pub fn adaptive_square<F>(f: F, cfg: &QuadratureConfig) -> Result<IntegralResult, QuadError>
where
    F: Fn(f64, f64) -> f64,
{
    cfg.validate()?;
    let layout = build_strips(&cfg.split_hints);
    let engine = Square {
        f: &f,
        rule: GaussLegendre::new(cfg.rule_order),
        strips: layout.iter().map(|(_, _, s)| *s).collect(),
    };
    let mut panels = Vec::with_capacity(layout.len());
    for (i, (a, b, _)) in layout.iter().enumerate() {
        panels.push(engine.panel(i, *a, *b, 0.0, 1.0, 0, 0)?);
    }
    drive(
        panels,
        cfg,
        |p| p.value,
        |p| p.err,
        |p| engine.split(p, cfg.max_depth),
    )
}

/// Integrate `f` over `[0,1]²`; fails with [`QuadError::NotConverged`] when
/// the tolerance cannot be met within the depth budget.
pub fn integrate_square<F>(f: F, cfg: &QuadratureConfig) -> Result<IntegralResult, QuadError>
where
    F: Fn(f64, f64) -> f64,
{
    let res = adaptive_square(f, cfg)?;
    if res.converged {
        Ok(res)
    } else {
        Err(QuadError::NotConverged(res))
    }
}

#[derive(Debug, Clone, Copy)]
struct Panel1 {
    a: f64,
    b: f64,
    depth: u32,
    value: f64,
    err: f64,
}

fn panel1<F: Fn(f64) -> f64>(
    rule: &GaussLegendre,
    f: &F,
    a: f64,
    b: f64,
    depth: u32,
) -> Result<Panel1, QuadError> {
    let m = 0.5 * (a + b);
    let q0 = rule.apply(a, b, f)?;
    let q2 = rule.apply(a, m, f)? + rule.apply(m, b, f)?;
    Ok(Panel1 {
        a,
        b,
        depth,
        value: q2,
        err: (q2 - q0).abs(),
    })
}

/// Integrate `f` over `[0,1]`, reporting convergence in the result.
pub fn adaptive_interval<F>(f: F, cfg: &QuadratureConfig) -> Result<IntegralResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    cfg.validate()?;
    let rule = GaussLegendre::new(cfg.rule_order);
    let mut breaks = vec![0.0, 1.0];
    for h in &cfg.split_hints {
        if let Curve::Vertical(c) = h {
            if *c > 0.0 && *c < 1.0 {
                breaks.push(*c);
            }
        }
    }
    breaks.sort_by(f64::total_cmp);
    breaks.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
    let mut panels = Vec::new();
    for w in breaks.windows(2) {
        panels.push(panel1(&rule, &f, w[0], w[1], 0)?);
    }
    drive(
        panels,
        cfg,
        |p| p.value,
        |p| p.err,
        |p| {
            if p.depth >= cfg.max_depth {
                return Ok(None);
            }
            let m = 0.5 * (p.a + p.b);
            Ok(Some([
                panel1(&rule, &f, p.a, m, p.depth + 1)?,
                panel1(&rule, &f, m, p.b, p.depth + 1)?,
            ]))
        },
    )
}

/// Integrate `f` over `[0,1]`; fails with [`QuadError::NotConverged`] when
/// the tolerance cannot be met.
pub fn integrate_interval<F>(f: F, cfg: &QuadratureConfig) -> Result<IntegralResult, QuadError>
where
    F: Fn(f64) -> f64,
{
    let res = adaptive_interval(f, cfg)?;
    if res.converged {
        Ok(res)
    } else {
        Err(QuadError::NotConverged(res))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    #[test]
    fn gauss_legendre_weights_sum_to_one() {
        for n in [2, 3, 7, 16, 31] {
            let r = GaussLegendre::new(n);
            let s: f64 = r.weights().iter().sum();
            assert!((s - 1.0).abs() < 1e-14, "n={n} sum={s}");
            assert!(r.nodes().windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn constant_and_separable_polynomial() {
        let one = integrate_square(|_, _| 1.0, &cfg()).unwrap();
        assert!((one.value - 1.0).abs() <= 1e-12);
        let r = integrate_square(|u, v| u * u * v * v, &cfg()).unwrap();
        assert!((r.value - 1.0 / 9.0).abs() <= 1e-14);
    }

    #[test]
    fn min_squared_with_diagonal_hint() {
        let c = cfg().with_hints([Curve::Diagonal]);
        let r = integrate_square(|u, v| u.min(v).powi(2), &c).unwrap();
        assert!((r.value - 1.0 / 6.0).abs() <= 1e-13, "{}", r.value);
    }

    #[test]
    fn interval_examples() {
        let c = cfg();
        let r = integrate_interval(|u| u.powi(4), &c).unwrap();
        assert!((r.value - 0.2).abs() < 1e-14);
        let r = integrate_interval(|u| (2.0 * u - 1.0).powi(2), &c).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-14);
        let r = integrate_interval(|u| u.powf(2.0 * 1.5), &c).unwrap();
        assert!((r.value - 0.25).abs() < 1e-14);
    }

    #[test]
    fn polynomial_exactness_on_single_panel() {
        let c = QuadratureConfig {
            max_depth: 0,
            ..cfg()
        };
        let n = c.rule_order as i32;
        let deg = 2 * n - 1;
        let r = adaptive_square(|u, v| u.powi(deg) * v.powi(deg), &c).unwrap();
        let exact = 1.0 / (deg as f64 + 1.0).powi(2);
        assert_eq!(r.panels_used, 1);
        assert!((r.value - exact).abs() < 1e-15);
        let r = adaptive_interval(|u| u.powi(deg), &c).unwrap();
        assert!((r.value - 1.0 / (deg as f64 + 1.0)).abs() < 1e-15);
    }

    #[test]
    fn diagonal_hint_reduces_panels() {
        let f = |u: f64, v: f64| (u - v).abs();
        let plain = adaptive_square(f, &cfg()).unwrap();
        let hinted = integrate_square(f, &cfg().with_hints([Curve::Diagonal])).unwrap();
        assert!((hinted.value - 1.0 / 3.0).abs() < 1e-13);
        assert!((plain.value - hinted.value).abs() < 1e-8);
        assert!(hinted.panels_used < plain.panels_used);
    }

    #[test]
    fn power_locus_and_antidiagonal_hints() {
        // area under v = u^3 is 1/4; with the hint the indicator is exact
        let c = cfg().with_hints([Curve::power_locus(3.0), Curve::AntiDiagonal]);
        let r = integrate_square(|u, v| if v <= u.powi(3) { 1.0 } else { 0.0 }, &c).unwrap();
        assert!((r.value - 0.25).abs() < 1e-12, "{}", r.value);
        let r = integrate_square(|u, v| (u + v - 1.0).max(0.0), &c).unwrap();
        assert!((r.value - 1.0 / 6.0).abs() < 1e-12);
    }

    #[test]
    fn edge_singularity_converges() {
        // ∫∫ u² v^0.2 = (1/3)(1/1.2)
        let r = integrate_square(|u, v| u * u * v.powf(0.2), &cfg()).unwrap();
        assert!(
            (r.value - 1.0 / 3.6).abs() <= r.error_estimate.max(1e-12),
            "{:?}",
            r
        );
    }

    #[test]
    fn deterministic_bits() {
        let f = |u: f64, v: f64| (u * v).sqrt() * (u - v).abs();
        let a = adaptive_square(f, &cfg()).unwrap();
        let b = adaptive_square(f, &cfg()).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.panels_used, b.panels_used);
    }

    #[test]
    fn not_converged_carries_estimate() {
        let c = QuadratureConfig {
            max_depth: 1,
            abs_tol: 1e-15,
            rel_tol: 1e-15,
            ..cfg()
        };
        match integrate_square(|u, v| (u - v).abs(), &c) {
            Err(QuadError::NotConverged(r)) => {
                assert!(!r.converged);
                assert!((r.value - 1.0 / 3.0).abs() < 1e-3);
                assert!(r.error_estimate > 0.0);
            }
            other => panic!("expected NotConverged, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_config_and_nonfinite() {
        let c = QuadratureConfig {
            rule_order: 1,
            ..cfg()
        };
        assert!(matches!(
            integrate_square(|_, _| 1.0, &c),
            Err(QuadError::InvalidConfig(_))
        ));
        assert!(matches!(
            integrate_square(|u, _| 1.0 / (u - 0.5), &cfg()),
            Ok(_) | Err(QuadError::NonFinite { .. }) | Err(QuadError::NotConverged(_))
        ));
        assert!(matches!(
            integrate_square(|_, _| f64::NAN, &cfg()),
            Err(QuadError::NonFinite { .. })
        ));
    }

    #[test]
    fn curve_reflection() {
        assert_eq!(Curve::Diagonal.reflect(true, false), Curve::AntiDiagonal);
        assert_eq!(Curve::Diagonal.reflect(true, true), Curve::Diagonal);
        let p = Curve::power_locus(2.0).reflect(true, true);
        assert!((p.graph(0.25).unwrap() - (1.0 - 0.75f64.powi(2))).abs() < 1e-15);
        assert_eq!(
            Curve::power_locus(2.0)
                .reflect(true, false)
                .reflect(true, false),
            Curve::power_locus(2.0)
        );
    }

    #[test]
    fn section_breaks_of_curves() {
        let b = Curve::Diagonal.section_breaks(SectionLine::Horizontal(0.3));
        assert_eq!(b.len(), 1);
        assert!((b[0] - 0.3).abs() < 1e-12);
        let b = Curve::AntiDiagonal.section_breaks(SectionLine::Diagonal);
        assert!((b[0] - 0.5).abs() < 1e-12);
        let b = Curve::power_locus(2.0).section_breaks(SectionLine::Vertical(0.5));
        assert!((b[0] - 0.25).abs() < 1e-15);
        assert!(Curve::power_locus(2.0)
            .section_breaks(SectionLine::Diagonal)
            .is_empty());
    }
}
