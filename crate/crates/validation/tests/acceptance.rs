//! One PASS/FAIL line per acceptance criterion.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::time::Instant;

use common::{copula_families, draw_spec, sample_fgm, ALL_KINDS};
use copex::copula::{CopulaSurface, Family, FamilySpec, Monotone};
use copex::dependence::check_inequalities;
use copex::empirical::{
    pqd_evidence, resub_ccex, resub_estimates, sample_dependence, surgery_sample, BivariateSample,
    EmpiricalGrid, Normalization,
};
use copex::measures::{
    measure, quadrature, trusted_closed_form, verify_cocopula_identity, verify_dual_identity,
    MeasureKind,
};
use copex::quad::QuadratureConfig;
use copex::tables::{reproduce_table, CellVerdict, TableId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verdict(criterion: &str, ok: bool, detail: &str) {
    println!(
        "{} criterion {criterion}: {detail}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
}

fn cfg() -> QuadratureConfig {
    QuadratureConfig::default()
}

fn surf(text: &str) -> CopulaSurface {
    CopulaSurface::parse(text).unwrap()
}

#[test]
fn criterion_1_table_reproduction() {
    let start = Instant::now();
    let mut failures = Vec::new();
    let mut typo_flagged = false;
    let mut cells = 0;
    for table in [
        TableId::CcexSectionAlpha,
        TableId::ScexFgmTheta,
        TableId::ScexSectionAlpha,
        TableId::WeightedGapSection,
    ] {
        for c in reproduce_table(table, &cfg()).unwrap() {
            cells += 1;
            let typo = table == TableId::CcexSectionAlpha && c.parameter == Some(0.7);
            if typo {
                typo_flagged = c.verdict == CellVerdict::Disputed;
            } else if c.delta > 1e-4 {
                failures.push(format!(
                    "{} {} a={:?} printed {} computed {:.6}",
                    table.name(),
                    c.row,
                    c.parameter,
                    c.printed,
                    c.computed
                ));
            }
        }
    }
    let secs = start.elapsed().as_secs_f64();
    let ok = failures.is_empty() && typo_flagged && secs < 60.0;
    let detail = format!(
        "{cells} cells, {} beyond 1e-4, dropped-digit cell flagged disputed: {typo_flagged}, {secs:.1}s{}",
        failures.len(),
        if failures.is_empty() { String::new() } else { format!("; first: {}", failures[0]) }
    );
    verdict("1", ok, &detail);
}

#[test]
fn criterion_2_closed_forms_match_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    let mut worst: (f64, String) = (0.0, String::new());
    let mut disputed_reported = true;
    for family in Family::ALL {
        for _ in 0..20 {
            let c = CopulaSurface::new(draw_spec(family, &mut rng));
            for kind in ALL_KINDS {
                if kind.needs_density() && !c.has_density() {
                    continue;
                }
                let r = measure(&c, kind, &cfg()).unwrap();
                for e in &r.entries {
                    if e.disputed {
                        disputed_reported &= e.value.is_finite() && r.quadrature.value.is_finite();
                        continue;
                    }
                    checked += 1;
                    if e.discrepancy > worst.0 {
                        worst = (
                            e.discrepancy,
                            format!("{} {} {}", c.label(), kind.name(), e.formula),
                        );
                    }
                }
            }
        }
    }
    let ok = worst.0 <= 1e-6 && disputed_reported && checked > 0;
    verdict(
        "2",
        ok,
        &format!("{checked} non-disputed formula evaluations, worst |closed form - quadrature| = {:.2e} ({})", worst.0, worst.1),
    );
}

#[test]
fn criterion_2_disputed_entries_resolve_to_stated_oracles() {
    let c = cfg();
    let product = quadrature(&surf("product"), MeasureKind::CCEx, &c)
        .unwrap()
        .value;
    let product_ok = (product - 1.0 / 36.0).abs() <= 1e-6;
    println!("  product CCEx {product:.9} vs 1/36");

    let mut mo_worst: f64 = 0.0;
    let mut branch_worst: f64 = 0.0;
    for (a, b) in [(0.3, 0.7), (0.5, 0.5), (0.8, 0.4)] {
        let want = 1.0 / (12.0 * (3.0 - 2.0 * a));
        let mo = quadrature(
            &surf(&format!("marshall-olkin:{a},{b}")),
            MeasureKind::CCEx,
            &c,
        )
        .unwrap()
        .value;
        let branch = quadrature(
            &surf(&format!("cuadras-auge-section:{a}")),
            MeasureKind::CCEx,
            &c,
        )
        .unwrap()
        .value;
        println!("  marshall-olkin:{a},{b} CCEx {mo:.6}, branch u v^(1-a) {branch:.6}, +1/(12(3-2a)) = {want:.6}");
        mo_worst = mo_worst.max((mo - want).abs());
        branch_worst = branch_worst.max((branch - want).abs());
    }
    let mo_ok = mo_worst <= 1e-6;

    let mut diag_worst: f64 = 0.0;
    let mut jd_max: f64 = 0.0;
    for a in [0.1, 0.3, 0.5, 0.7, 0.9] {
        let s = surf(&format!("cuadras-auge:{a}"));
        let d = quadrature(&s, MeasureKind::DiagonalEx, &c).unwrap().value;
        diag_worst = diag_worst.max((d - 1.0 / (4.0 * (5.0 - 2.0 * a))).abs());
        jd_max = jd_max.max(d);
    }
    let diag_ok = diag_worst <= 1e-6 && jd_max <= 1.0 / 12.0;

    verdict(
        "2 (disputed oracles)",
        product_ok && mo_ok && diag_ok,
        &format!(
            "product 1/36: {product_ok}; Marshall-Olkin CCEx = +1/(12(3-2a)): {mo_ok} (max dev {mo_worst:.2e}; on u v^(1-a) {branch_worst:.2e}); Cuadras-Auge diagonal 1/(4(5-2a)) and J_D <= 1/12: {diag_ok}"
        ),
    );
}

#[test]
fn criterion_3_identity_suite() {
    let c = cfg();
    let mut surfaces = vec!["product".to_string()];
    surfaces.extend([-1.0, -0.5, 0.0, 0.5, 1.0].map(|t| format!("fgm:{t}")));
    surfaces.extend((1..=9).map(|k| format!("cuadras-auge:{}", k as f64 / 10.0)));
    surfaces.extend([0.25, 0.5, 0.75].map(|a| format!("marshall-olkin:{a},{a}")));
    let mut worst: f64 = 0.0;
    for text in &surfaces {
        let s = surf(text);
        worst = worst.max(verify_dual_identity(&s, &c).unwrap().residual);
        worst = worst.max(verify_cocopula_identity(&s, &c).unwrap().residual);
    }
    let identities_ok = worst <= 1e-8;

    let mut r_worst: f64 = 0.0;
    for k in 1..=9 {
        let a = k as f64 / 10.0;
        let r = quadrature(
            &surf(&format!("cuadras-auge-section:{a}")),
            MeasureKind::RFunctional,
            &c,
        )
        .unwrap()
        .value;
        r_worst = r_worst.max((r - (12.0 - 5.0 * a) / (6.0 * (2.0 - a) * (3.0 - a))).abs());
    }
    let r_ok = r_worst <= 1e-8;

    let mut rs_worst: f64 = 0.0;
    for t in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        let rs = quadrature(&surf(&format!("fgm:{t}")), MeasureKind::RStarFunctional, &c)
            .unwrap()
            .value;
        println!("  fgm:{t} R* = {rs:.9}, (t+5)/36 = {:.9}", (t + 5.0) / 36.0);
        rs_worst = rs_worst.max((rs - (t + 5.0) / 36.0).abs());
    }
    let rs_ok = rs_worst <= 1e-8;

    verdict(
        "3",
        identities_ok && r_ok && rs_ok,
        &format!(
            "{} surfaces, max identity residual {worst:.2e}; R = (12-5a)/(6(2-a)(3-a)) max dev {r_worst:.2e}; FGM R* = (t+5)/36 max dev {rs_worst:.2e}",
            surfaces.len()
        ),
    );
}

fn sweep_specs() -> Vec<String> {
    let mut out = vec!["product".to_string()];
    let step =
        |lo: f64, hi: f64, n: usize| (0..=n).map(move |k| lo + (hi - lo) * k as f64 / n as f64);
    out.extend(step(-1.0, 1.0, 8).map(|t| format!("fgm:{t}")));
    for a in [-1.0, -0.5, 0.0, 0.5, 1.0] {
        for b in [-1.0, 0.0, 1.0] {
            if a + b >= -1.0 {
                out.push(format!("iterated-fgm:{a},{b}"));
            }
        }
    }
    for t in [-1.0, 0.0, 1.0] {
        for p in [1.0, 2.0, 4.0] {
            out.push(format!("extended-fgm:{t},{p}"));
        }
    }
    out.extend(step(0.0, 0.25, 5).map(|a| format!("nelsen-polynomial:{a}")));
    for a in [0.1, 0.5, 0.9] {
        for b in [0.2, 0.6, 1.0] {
            out.push(format!("marshall-olkin:{a},{b}"));
        }
    }
    out.extend(step(0.0, 1.0, 10).map(|a| format!("cuadras-auge:{a}")));
    out.extend(step(-1.0, 1.0, 8).map(|r| format!("shih-louis:{r}")));
    out.extend(step(0.0, 1.0, 5).map(|r| format!("linear-spearman:{r}")));
    out.extend(step(0.1, 0.9, 8).map(|a| format!("cuadras-auge-section:{a}")));
    out
}

#[test]
fn criterion_4_inequality_suite() {
    let c = cfg();
    let mut checks = 0;
    let mut worst = (f64::INFINITY, String::new());
    for text in sweep_specs() {
        let report = check_inequalities(&surf(&text), &c).unwrap_or_else(|e| panic!("{text}: {e}"));
        for chk in &report.checks {
            checks += 1;
            if chk.slack < worst.0 {
                worst = (chk.slack, format!("{text} {}", chk.name));
            }
        }
    }
    let mut fgm_ok = true;
    for k in 0..=20 {
        let t = -1.0 + k as f64 / 10.0;
        let report = check_inequalities(&surf(&format!("fgm:{t}")), &c).unwrap();
        fgm_ok &= report
            .checks
            .iter()
            .any(|x| x.name == "ccex-spearman" && x.holds);
    }
    verdict(
        "4",
        worst.0 >= -1e-8 && fgm_ok,
        &format!(
            "{checks} inequality evaluations, minimum slack {:.2e} ({}); FGM J_C <= (rho+3)/48 over 21 thetas: {fgm_ok}",
            worst.0, worst.1
        ),
    );
}

#[test]
fn criterion_5_universal_bounds() {
    let c = cfg();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut violations = Vec::new();
    let mut draws = 0;
    for family in copula_families() {
        for _ in 0..50 {
            draws += 1;
            let s = CopulaSurface::new(draw_spec(family, &mut rng));
            let j = quadrature(&s, MeasureKind::CCEx, &c).unwrap().value;
            if !(1.0 / 48.0 - 1e-9..=1.0 / 24.0 + 1e-9).contains(&j) {
                violations.push(format!("{} CCEx {j}", s.label()));
            }
            let jd = quadrature(&s, MeasureKind::DiagonalEx, &c).unwrap().value;
            if jd > 1.0 / 12.0 + 1e-9 {
                violations.push(format!("{} J_D {jd}", s.label()));
            }
            if s.has_density() {
                let jc = quadrature(&s, MeasureKind::CEx, &c).unwrap().value;
                if jc < 0.25 - 1e-9 {
                    violations.push(format!("{} CEx {jc}", s.label()));
                }
            }
        }
    }
    verdict(
        "5",
        violations.is_empty(),
        &format!(
            "{draws} draws, {} violations{}",
            violations.len(),
            violations
                .first()
                .map(|v| format!(", first: {v}"))
                .unwrap_or_default()
        ),
    );
}

#[test]
fn criterion_6_monotone_transforms() {
    use copex::measures::verify_transform_theorems;
    let c = cfg();
    let mut rows = 0;
    let mut worst: f64 = 0.0;
    let mut inc_exact = true;
    for text in [
        "product",
        "fgm:-0.6",
        "fgm:0.8",
        "iterated-fgm:0.4,-0.3",
        "extended-fgm:0.7,2.5",
        "nelsen-polynomial:0.2",
        "marshall-olkin:0.3,0.7",
        "cuadras-auge:0.5",
        "shih-louis:0.5",
        "shih-louis:-0.5",
        "linear-spearman:0.3",
    ] {
        for r in verify_transform_theorems(&FamilySpec::parse(text).unwrap(), &c).unwrap() {
            rows += 1;
            if r.x == Monotone::Increasing && r.y == Monotone::Increasing {
                inc_exact &= r.residual == 0.0;
            }
            worst = worst.max(r.residual);
        }
    }
    verdict(
        "6",
        inc_exact && worst <= 1e-8,
        &format!("{rows} case rows, (inc,inc) exact: {inc_exact}, max residual {worst:.2e}"),
    );
}

#[test]
fn criterion_7_dataset_regression() {
    let sample = surgery_sample();
    let stats = sample_dependence(&sample).unwrap();
    let r_ok = (stats.pearson_r - 0.6870).abs() <= 0.0005;
    let rho_ok = (stats.spearman_rho - 0.6970).abs() <= 0.005;
    let tau_ok = (stats.kendall_tau_b - 0.5050).abs() <= 0.005;
    let pqd = pqd_evidence(&EmpiricalGrid::cdf(&sample)).unwrap();

    let est = resub_estimates(&sample);
    let snapshot_ok = est == resub_estimates(&surgery_sample())
        && est.ccex_population_riemann == 30983.0 / 640000.0
        && est.scex_population_riemann == 22857.0 / 640000.0
        && (est.ccex_paper_constant - 30983.0 / 107_200_000.0).abs() <= 1e-18
        && (est.scex_paper_constant - 22857.0 / 107_200_000.0).abs() <= 1e-18;
    let heuristic_ok = est.ccex_population_riemann >= 1.0 / 36.0 - 0.005;

    verdict(
        "7",
        r_ok && rho_ok && tau_ok && pqd.holds && snapshot_ok && heuristic_ok,
        &format!(
            "r = {:.4} (want 0.6870): {r_ok}; rho = {:.4} (want 0.6970): {rho_ok}; tau_b = {:.4} (want 0.5050): {tau_ok}; \
             PQD evidence: {} (min margin {:.4}); snapshots: {snapshot_ok}; CCEx {:.6} >= 1/36 - 0.005: {heuristic_ok}",
            stats.pearson_r,
            stats.spearman_rho,
            stats.kendall_tau_b,
            pqd.holds,
            pqd.margin,
            est.ccex_population_riemann
        ),
    );
}

#[test]
fn criterion_8_estimator_consistency() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let pairs: Vec<_> = (0..5000).map(|_| sample_fgm(0.5, &mut rng)).collect();
    let sample = BivariateSample::new(&pairs).unwrap();
    let est = resub_ccex(
        &EmpiricalGrid::cdf(&sample),
        Normalization::PopulationRiemann,
    )
    .unwrap();
    let spec = FamilySpec::parse("fgm:0.5").unwrap();
    let truth = trusted_closed_form(MeasureKind::CCEx, &spec).unwrap().value;
    let secs = start.elapsed().as_secs_f64();
    verdict(
        "8",
        (est - truth).abs() <= 5e-3 && secs < 30.0,
        &format!(
            "estimate {est:.6}, closed form {truth:.6}, |diff| {:.2e}, {secs:.2}s",
            (est - truth).abs()
        ),
    );
}
