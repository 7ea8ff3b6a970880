//! The verification pipeline behind `regraph verify` and its JSON report.

use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use regraph_core::{
    bessel_i, count_closed_paths, count_geodesic_paths, gp_from_spectrum, homotopy_census,
    homotopy_class_coefficients, spectrum_with_tolerance, tree_walk_counts, verify_ahumada,
    verify_polygon_identity, verify_trace_formula, Budget, Graph, ReducedClass, TestSequence,
};

pub const SCHEMA_VERSION: u32 = 1;
/// Numeric tolerance for the trace-formula and test-sequence stages.
pub const NUMERIC_TOL: f64 = 1e-8;
/// Tolerance for the polygon identity stage.
pub const POLYGON_TOL: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct VerifySettings {
    pub l_max: usize,
    pub l_trunc: usize,
    pub t_values: Vec<f64>,
    pub eigen_tol: f64,
    pub budget: Budget,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StageStatus {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceEval {
    pub t: f64,
    pub lhs: f64,
    pub contractible_term: f64,
    pub geodesic_sum: f64,
    pub truncation_length: usize,
    pub tail_bound: f64,
    pub residual: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct StageReport {
    pub name: &'static str,
    pub status: StageStatus,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub trace_reports: Vec<TraceEval>,
}

impl StageReport {
    fn simple(name: &'static str, status: StageStatus, detail: impl Into<String>) -> StageReport {
        StageReport {
            name,
            status,
            detail: detail.into(),
            trace_reports: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub schema_version: u32,
    pub library_version: &'static str,
    pub config: serde_json::Value,
    pub stages: Vec<StageReport>,
    pub pass: bool,
}

/// Runs every verification stage in order and collects the report. The
/// overall verdict ignores skipped stages.
pub fn run_verification(g: &Graph, settings: &VerifySettings) -> VerificationReport {
    let census_p = count_closed_paths(g, settings.l_max);
    let census_gp = count_geodesic_paths(g, settings.l_max.max(settings.l_trunc));
    let mut stages = vec![
        master_identity_stage(g, settings, &census_p, &census_gp),
        homotopy_census_stage(g, settings),
        gp_inversion_stage(g, settings, &census_gp),
        trace_formula_stage(g, settings),
        ahumada_stage(g, settings),
    ];
    if g.q() == 1 {
        stages.push(polygon_stage(g, settings));
    }
    let pass = stages.iter().all(|s| s.status != StageStatus::Fail);
    VerificationReport {
        schema_version: SCHEMA_VERSION,
        library_version: env!("CARGO_PKG_VERSION"),
        config: serde_json::Value::Null,
        stages,
        pass,
    }
}

fn master_identity_stage(
    g: &Graph,
    settings: &VerifySettings,
    p: &[BigInt],
    gp: &[BigInt],
) -> StageReport {
    let name = "master_identity";
    let l_max = settings.l_max;
    let tree = tree_walk_counts(g.q(), l_max);
    for l in 0..=l_max {
        let mut rhs = BigInt::from(g.vertex_count()) * &tree.p_tree[l];
        for m in 3..=l {
            match homotopy_class_coefficients(g.q(), m, l) {
                Ok(h) => rhs += &gp[m] * &h[l],
                Err(e) => return StageReport::simple(name, StageStatus::Fail, e.to_string()),
            }
        }
        if p[l] != rhs {
            return StageReport::simple(
                name,
                StageStatus::Fail,
                format!("l = {l}: p_l = {} but decomposition gives {rhs}", p[l]),
            );
        }
    }
    StageReport::simple(
        name,
        StageStatus::Pass,
        format!("exact for all l <= {l_max}"),
    )
}

fn homotopy_census_stage(g: &Graph, settings: &VerifySettings) -> StageReport {
    let name = "homotopy_census";
    if g.vertex_count() > settings.budget.max_vertices {
        return StageReport::simple(
            name,
            StageStatus::Skipped,
            format!(
                "{} vertices exceed the enumeration budget of {}",
                g.vertex_count(),
                settings.budget.max_vertices
            ),
        );
    }
    let l_census = settings.l_max.min(settings.budget.max_length);
    let tree = tree_walk_counts(g.q(), l_census);
    for l in 0..=l_census {
        let census = match homotopy_census(g, l, &settings.budget) {
            Ok(c) => c,
            Err(e) => return StageReport::simple(name, StageStatus::Fail, e.to_string()),
        };
        for (class, count) in &census {
            let want = match class {
                ReducedClass::Contractible => BigInt::from(g.vertex_count()) * &tree.p_tree[l],
                ReducedClass::Geodesic(gc) => {
                    match homotopy_class_coefficients(g.q(), gc.length(), l) {
                        Ok(h) => BigInt::from(gc.lambda()) * &h[l],
                        Err(e) => {
                            return StageReport::simple(name, StageStatus::Fail, e.to_string())
                        }
                    }
                }
            };
            if count != &want {
                return StageReport::simple(
                    name,
                    StageStatus::Fail,
                    format!("l = {l}: bucket {class:?} holds {count}, expected {want}"),
                );
            }
        }
    }
    StageReport::simple(
        name,
        StageStatus::Pass,
        format!("bucket counts exact for all l <= {l_census}"),
    )
}

fn gp_inversion_stage(g: &Graph, settings: &VerifySettings, gp: &[BigInt]) -> StageReport {
    let name = "gp_inversion";
    let sp = match spectrum_with_tolerance(g, settings.eigen_tol) {
        Ok(sp) => sp,
        Err(e) => return StageReport::simple(name, StageStatus::Fail, e.to_string()),
    };
    for l in 1..=settings.l_max {
        match gp_from_spectrum(&sp, l) {
            Ok(value) => {
                if value != gp[l] {
                    return StageReport::simple(
                        name,
                        StageStatus::Fail,
                        format!("l = {l}: inversion gives {value}, census gives {}", gp[l]),
                    );
                }
            }
            Err(e) => return StageReport::simple(name, StageStatus::Fail, e.to_string()),
        }
    }
    StageReport::simple(
        name,
        StageStatus::Pass,
        format!("matches the edge-operator census for all l <= {}", settings.l_max),
    )
}

fn trace_formula_stage(g: &Graph, settings: &VerifySettings) -> StageReport {
    let name = "trace_formula";
    let mut evals = Vec::new();
    let mut all_pass = true;
    for &t in &settings.t_values {
        match verify_trace_formula(g, t, settings.l_trunc) {
            Ok(report) => {
                let pass = report.passes(NUMERIC_TOL);
                all_pass &= pass;
                evals.push(TraceEval {
                    t: report.t,
                    lhs: report.lhs,
                    contractible_term: report.contractible_term,
                    geodesic_sum: report.geodesic_sum,
                    truncation_length: report.truncation_length,
                    tail_bound: report.tail_bound,
                    residual: report.residual,
                    pass,
                });
            }
            Err(e) => return StageReport::simple(name, StageStatus::Fail, e.to_string()),
        }
    }
    StageReport {
        name,
        status: if all_pass {
            StageStatus::Pass
        } else {
            StageStatus::Fail
        },
        detail: format!(
            "residual <= {NUMERIC_TOL:e} + tail bound at l_trunc = {}",
            settings.l_trunc
        ),
        trace_reports: evals,
    }
}

fn ahumada_stage(g: &Graph, settings: &VerifySettings) -> StageReport {
    let name = "ahumada_indicators";
    let l_top = settings.l_max.min(8);
    for l in 1..=l_top {
        match verify_ahumada(g, &TestSequence::indicator(l), l.max(3)) {
            Ok(residual) => {
                if residual >= NUMERIC_TOL {
                    return StageReport::simple(
                        name,
                        StageStatus::Fail,
                        format!("indicator at l = {l}: residual {residual}"),
                    );
                }
            }
            Err(e) => return StageReport::simple(name, StageStatus::Fail, e.to_string()),
        }
    }
    StageReport::simple(
        name,
        StageStatus::Pass,
        format!("indicator sequences pass for l <= {l_top}"),
    )
}

fn polygon_stage(g: &Graph, settings: &VerifySettings) -> StageReport {
    let name = "polygon_identity";
    let l_polygon = g.vertex_count();
    for &t in &settings.t_values {
        if t == 0.0 {
            continue;
        }
        let mut r_trunc = 1;
        while bessel_i(r_trunc * l_polygon, 2.0 * t.abs()) > 1e-18 && r_trunc < 1000 {
            r_trunc += 1;
        }
        let residual = verify_polygon_identity(l_polygon, t, r_trunc);
        if residual >= POLYGON_TOL {
            return StageReport::simple(
                name,
                StageStatus::Fail,
                format!("t = {t}: residual {residual}"),
            );
        }
    }
    StageReport::simple(name, StageStatus::Pass, "cycle identity holds at all t")
}

/// Census columns for the CSV export; `p` and `gp` printed in full precision.
pub fn census_csv(p: &[BigInt], gp: &[BigInt]) -> String {
    let mut out = String::from("l,p_l,gp_l\n");
    for (l, (pl, gpl)) in p.iter().zip(gp).enumerate() {
        out.push_str(&format!("{l},{pl},{gpl}\n"));
    }
    out
}

/// Census as JSON rows with big counts as strings.
pub fn census_json(p: &[BigInt], gp: &[BigInt]) -> String {
    #[derive(Serialize)]
    struct Row {
        l: usize,
        p: String,
        gp: String,
    }
    let rows: Vec<Row> = p
        .iter()
        .zip(gp)
        .enumerate()
        .map(|(l, (pl, gpl))| Row {
            l,
            p: pl.to_string(),
            gp: gpl.to_string(),
        })
        .collect();
    let mut out = serde_json::to_string_pretty(&rows).expect("rows serialize");
    out.push('\n');
    out
}

/// True when all counts vanish; used for friendlier CLI diagnostics only.
pub fn all_zero(counts: &[BigInt]) -> bool {
    counts.iter().all(Zero::is_zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use regraph_core::graph;

    fn settings() -> VerifySettings {
        VerifySettings {
            l_max: 8,
            l_trunc: 20,
            t_values: vec![0.25, 0.5, 1.0],
            eigen_tol: 1e-12,
            budget: Budget::default(),
        }
    }

    #[test]
    fn k4_passes_every_stage() {
        let g = graph::complete(4).unwrap();
        let report = run_verification(&g, &settings());
        assert!(report.pass);
        assert!(report
            .stages
            .iter()
            .all(|s| s.status == StageStatus::Pass));
        assert!(!report.stages.iter().any(|s| s.name == "polygon_identity"));
    }

    #[test]
    fn cycle5_includes_polygon_stage() {
        let g = graph::cycle(5).unwrap();
        let report = run_verification(&g, &settings());
        assert!(report.pass);
        let polygon = report
            .stages
            .iter()
            .find(|s| s.name == "polygon_identity")
            .expect("polygon stage present for q = 1");
        assert_eq!(polygon.status, StageStatus::Pass);
    }

    #[test]
    fn loose_eigen_tolerance_fails_inversion() {
        let g = graph::petersen().unwrap();
        let mut s = settings();
        s.l_max = 12;
        s.eigen_tol = 1e-1;
        let report = run_verification(&g, &s);
        assert!(!report.pass);
        let stage = report
            .stages
            .iter()
            .find(|s| s.name == "gp_inversion")
            .unwrap();
        assert_eq!(stage.status, StageStatus::Fail);
    }

    #[test]
    fn oversized_graph_skips_census_stage() {
        let g = graph::random_regular(18, 3, 11, 10_000).unwrap();
        let mut s = settings();
        s.l_max = 6;
        let report = run_verification(&g, &s);
        let stage = report
            .stages
            .iter()
            .find(|s| s.name == "homotopy_census")
            .unwrap();
        assert_eq!(stage.status, StageStatus::Skipped);
        assert!(report.pass, "skipped stages do not fail the run");
    }
}
