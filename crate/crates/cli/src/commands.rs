use std::path::Path;

use copex::copula::{CopulaSurface, FamilySpec, Monotone};
use copex::dependence::check_inequalities;
use copex::empirical::{
    load_sample_path, pqd_evidence, resub_estimates, sample_dependence, surgery_sample,
    EmpiricalGrid,
};
use copex::measures::{measure, MeasureError, MeasureKind, Verdict};
use copex::quad::{QuadError, QuadratureConfig};
use copex::tables::{reproduce_table, CellVerdict, TableId, TableSummary};
use serde::Serialize;

use crate::error::{is_not_converged, CliError};
use crate::record::OutputRecord;

/// Records produced by a command together with its exit status.
pub struct Outcome {
    pub records: Vec<OutputRecord>,
    pub status: Result<(), CliError>,
}

impl Outcome {
    fn ok(records: Vec<OutputRecord>) -> Self {
        Self {
            records,
            status: Ok(()),
        }
    }
}

fn tag<T: Serialize>(v: &T) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => String::from("?"),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceView {
    Base,
    Survival,
    Dual,
    CoCopula,
}

pub struct MeasureRequest<'a> {
    pub command: &'a str,
    pub specs: Vec<FamilySpec>,
    pub kinds: Vec<MeasureKind>,
    /// Add every measure the surface supports instead of an explicit list.
    pub all: bool,
    pub view: SurfaceView,
    pub transform: Option<(Monotone, Monotone)>,
}

pub const ALL_KINDS: [MeasureKind; 13] = [
    MeasureKind::CEx,
    MeasureKind::CCEx,
    MeasureKind::SCEx,
    MeasureKind::DualEx,
    MeasureKind::CoCopEx,
    MeasureKind::HorizontalEx(0.5),
    MeasureKind::VerticalEx(0.5),
    MeasureKind::DiagonalEx,
    MeasureKind::WeightedCCEx,
    MeasureKind::RFunctional,
    MeasureKind::RStarFunctional,
    MeasureKind::CopulaEntropy,
    MeasureKind::SurvivalCopulaEntropy,
];

fn build_surface(
    spec: &FamilySpec,
    view: SurfaceView,
    transform: Option<(Monotone, Monotone)>,
) -> CopulaSurface {
    let mut s = CopulaSurface::new(spec.clone());
    if let Some((x, y)) = transform {
        s = s.transformed(x, y);
    }
    match view {
        SurfaceView::Base => s,
        SurfaceView::Survival => s.survival(),
        SurfaceView::Dual => s.dual(),
        SurfaceView::CoCopula => s.cocopula(),
    }
}

pub fn cmd_measure(req: &MeasureRequest, cfg: &QuadratureConfig) -> Outcome {
    let digest = cfg.digest();
    let mut records = Vec::new();
    let mut unconverged = 0;
    for spec in &req.specs {
        let surface = build_surface(spec, req.view, req.transform);
        let kinds: Vec<MeasureKind> = if req.all {
            ALL_KINDS
                .into_iter()
                .filter(|k| !k.needs_density() || surface.has_density())
                .collect()
        } else {
            req.kinds.clone()
        };
        for kind in kinds {
            let mut rec = OutputRecord::new(req.command, surface.label(), &digest);
            rec.text("measure", kind.name());
            if let Some(a) = kind.anchor() {
                rec.num("anchor", a);
            }
            match measure(&surface, kind, cfg) {
                Ok(report) => {
                    rec.num("value", report.value())
                        .num("error_estimate", report.quadrature.error_estimate)
                        .num("panels", report.quadrature.panels_used as f64)
                        .flag("converged", report.quadrature.converged);
                    rec.note("quadrature");
                    if let (Some(cf), Some(formula), Some(d)) = (
                        report.closed_form,
                        &report.closed_form_formula,
                        report.discrepancy,
                    ) {
                        rec.num("closed_form", cf)
                            .text("closed_form_formula", formula.clone())
                            .num("discrepancy", d);
                    }
                    rec.text("verdict", tag(&report.verdict));
                    match report.verdict {
                        Verdict::Agree => {
                            rec.note("closed_form");
                        }
                        Verdict::PaperTableSuspect => {
                            rec.note("disputed");
                        }
                        _ => {}
                    }
                    for (i, e) in report.entries.iter().enumerate() {
                        let key = format!("entry{}", i + 1);
                        rec.text(&format!("{key}_formula"), e.formula.clone())
                            .num(&format!("{key}_value"), e.value)
                            .flag(&format!("{key}_disputed"), e.disputed);
                    }
                }
                Err(MeasureError::Quadrature(QuadError::NotConverged(r))) => {
                    unconverged += 1;
                    rec.num("value", r.value)
                        .num("error_estimate", r.error_estimate)
                        .num("panels", r.panels_used as f64)
                        .flag("converged", false);
                    rec.note("quadrature");
                }
                Err(e) => {
                    return Outcome {
                        records,
                        status: Err(CliError::Runtime(e.to_string())),
                    }
                }
            }
            records.push(rec);
        }
    }
    let status = if unconverged > 0 {
        Err(CliError::NotConverged(unconverged))
    } else {
        Ok(())
    };
    Outcome { records, status }
}

pub enum SampleSource<'a> {
    Path(&'a Path),
    Surgery,
}

pub fn cmd_estimate(command: &str, source: SampleSource, cfg: &QuadratureConfig) -> Outcome {
    let loaded = match source {
        SampleSource::Path(p) => load_sample_path(p).map(|s| (s, p.display().to_string())),
        SampleSource::Surgery => Ok((surgery_sample(), "builtin:surgery".to_string())),
    };
    let (sample, subject) = match loaded {
        Ok(x) => x,
        Err(e) => {
            return Outcome {
                records: Vec::new(),
                status: Err(e.into()),
            }
        }
    };
    let stats = match sample_dependence(&sample) {
        Ok(s) => s,
        Err(e) => {
            return Outcome {
                records: Vec::new(),
                status: Err(e.into()),
            }
        }
    };
    let est = resub_estimates(&sample);
    let pqd = match pqd_evidence(&EmpiricalGrid::cdf(&sample)) {
        Ok(p) => p,
        Err(e) => {
            return Outcome {
                records: Vec::new(),
                status: Err(e.into()),
            }
        }
    };
    let mut rec = OutputRecord::new(command, subject, &cfg.digest());
    rec.num("n", est.n as f64)
        .num("ccex_population_riemann", est.ccex_population_riemann)
        .num("ccex_paper_constant", est.ccex_paper_constant)
        .num("scex_population_riemann", est.scex_population_riemann)
        .num("scex_paper_constant", est.scex_paper_constant)
        .num("pearson_r", stats.pearson_r)
        .num("kendall_tau_b", stats.kendall_tau_b)
        .num("kendall_tau_a", stats.kendall_tau_a)
        .num("spearman_rho", stats.spearman_rho)
        .flag("pqd_evidence", pqd.holds)
        .num("pqd_margin", pqd.margin)
        .num("pqd_worst_i", pqd.worst_cell.0 as f64)
        .num("pqd_worst_j", pqd.worst_cell.1 as f64);
    rec.note("population_riemann = sum/(4 n^2)")
        .note("paper_constant = sum/(670 n^2)");
    Outcome::ok(vec![rec])
}

pub fn cmd_verify_tables(command: &str, tables: &[TableId], cfg: &QuadratureConfig) -> Outcome {
    let digest = cfg.digest();
    let mut records = Vec::new();
    let mut total = TableSummary::default();
    for &table in tables {
        let cells = match reproduce_table(table, cfg) {
            Ok(c) => c,
            Err(e) => {
                let status = if is_not_converged(&e) {
                    CliError::NotConverged(1)
                } else {
                    CliError::Runtime(e.to_string())
                };
                return Outcome {
                    records,
                    status: Err(status),
                };
            }
        };
        for c in &cells {
            let mut rec = OutputRecord::new(command, table.name(), &digest);
            rec.text("row", c.row.clone())
                .text("surface", c.surface.clone());
            if let Some(p) = c.parameter {
                rec.num("parameter", p);
            }
            rec.num("printed", c.printed)
                .num("computed", c.computed)
                .num("delta", c.delta)
                .text("verdict", tag(&c.verdict));
            if let Some(n) = &c.note {
                rec.text("note", n.clone());
            }
            rec.note("quadrature");
            if c.verdict == CellVerdict::Disputed {
                rec.note("disputed");
            }
            records.push(rec);
        }
        let s = TableSummary::of(&cells);
        total.cells += s.cells;
        total.agree += s.agree;
        total.disputed += s.disputed;
        total.disagree += s.disagree;
    }
    let mut summary = OutputRecord::new(command, "summary", &digest);
    summary
        .num("cells", total.cells as f64)
        .num("agree", total.agree as f64)
        .num("disputed", total.disputed as f64)
        .num("disagree", total.disagree as f64);
    records.push(summary);
    let status = if total.disagree > 0 {
        Err(CliError::TablesDisagree(total.disagree))
    } else {
        Ok(())
    };
    Outcome { records, status }
}

pub fn cmd_check(
    command: &str,
    specs: &[FamilySpec],
    blest_only: bool,
    cfg: &QuadratureConfig,
) -> Outcome {
    let digest = cfg.digest();
    let mut records = Vec::new();
    let mut failed = 0;
    for spec in specs {
        let surface = CopulaSurface::new(spec.clone());
        let report = match check_inequalities(&surface, cfg) {
            Ok(r) => r,
            Err(e) => {
                let status = if is_not_converged(&e) {
                    CliError::NotConverged(1)
                } else {
                    CliError::Runtime(e.to_string())
                };
                return Outcome {
                    records,
                    status: Err(status),
                };
            }
        };
        let mut rec = OutputRecord::new(command, report.surface.clone(), &digest);
        if blest_only {
            let c = report
                .checks
                .iter()
                .find(|c| c.name == "weighted-gap-blest")
                .expect("always evaluated");
            rec.num("weighted_gap", c.lhs)
                .num("blest_bound", c.rhs)
                .num("eta", report.summary.eta)
                .num("slack", c.slack)
                .flag("holds", c.holds);
            failed += usize::from(!c.holds);
        } else {
            rec.num("rho", report.summary.rho);
            if let Some(t) = report.summary.tau {
                rec.num("tau", t);
            }
            rec.num("eta", report.summary.eta)
                .text("quadrant", tag(&report.quadrant));
            for c in &report.checks {
                rec.num(&c.name, c.slack);
            }
            let bad: Vec<&str> = report
                .checks
                .iter()
                .filter(|c| !c.holds)
                .map(|c| c.name.as_str())
                .collect();
            rec.flag("passed", report.passed);
            if !bad.is_empty() {
                rec.text("failed", bad.join(";"));
            }
            failed += bad.len();
        }
        rec.note("quadrature");
        records.push(rec);
    }
    let status = if failed > 0 {
        Err(CliError::InequalityViolated(failed))
    } else {
        Ok(())
    };
    Outcome { records, status }
}
