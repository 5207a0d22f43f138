//! End-to-end verification of the crate's numerical guarantees. Each test
//! prints one pass/fail line; run with `--nocapture` to see them all:
//!
//! ```text
//! cargo test --test acceptance -- --nocapture
//! ```

use std::sync::OnceLock;
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use similitude::construction::{
    collinearity_witness, fixed_point_from_witness, reflection_axis, WitnessTriangles,
};
use similitude::geom::{collinear, Line};
use similitude::harness::{self, GenConfig, Report, EQUIV_REL_TOL};
use similitude::{construction, Kind, Point, Similarity, Tolerances, Triangle, Vec2};

fn tol() -> Tolerances {
    Tolerances::default()
}

fn alpha_star() -> Similarity {
    Similarity::from_parts(Kind::Direct, 2.0, 90.0, Vec2::new(4.0, 0.0)).unwrap()
}

fn beta_star() -> Similarity {
    Similarity::from_parts(Kind::Indirect, 2.0, 0.0, Vec2::new(3.0, 0.0)).unwrap()
}

fn verdict(name: &str, ok: bool, detail: &str) {
    println!("acceptance {name}: {} — {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{name}: {detail}");
}

/// The 10,000-case seeded run shared by several criteria.
fn big_run() -> &'static (Report, f64) {
    static RUN: OnceLock<(Report, f64)> = OnceLock::new();
    RUN.get_or_init(|| {
        let config = GenConfig { cases: 10_000, ..GenConfig::default() };
        let start = Instant::now();
        let report = harness::run_equivalence(&config);
        (report, start.elapsed().as_secs_f64())
    })
}

#[test]
fn criterion_1_construction_agrees_with_the_algebraic_solve() {
    let (report, seconds) = big_run();
    let ok = report.total == 10_000
        && report.failed == 0
        && report.max_rel_error <= EQUIV_REL_TOL
        && *seconds < 10.0;
    verdict(
        "1 construction-vs-solver equivalence",
        ok,
        &format!(
            "{}/{} cases within {EQUIV_REL_TOL:e} (max rel {:.3e}) in {seconds:.2}s; worst: {:?}",
            report.passed,
            report.total,
            report.max_rel_error,
            report.worst_case.as_ref().map(|w| (w.index, w.rel_error))
        ),
    );
}

#[test]
fn criterion_2_both_geometric_routes_agree_pairwise() {
    let (report, _) = big_run();
    let ok = report.three_way.checked > 0
        && report.three_way.agreed == report.three_way.checked
        && report.three_way.max_pairwise_rel <= EQUIV_REL_TOL;
    verdict(
        "2 three-method agreement",
        ok,
        &format!(
            "{}/{} non-dilatation cases agree pairwise (max rel {:.3e})",
            report.three_way.agreed, report.three_way.checked, report.three_way.max_pairwise_rel
        ),
    );
}

#[test]
fn criterion_3_worked_example_regression() {
    // Direct reference map with the hand-checkable witness
    // (0,0),(4,0),(4,2) -> (4,0),(4,8),(0,8).
    let alpha = alpha_star();
    let source = Triangle::new(Point::ORIGIN, Point::new(4.0, 0.0), Point::new(4.0, 2.0));
    let witness = WitnessTriangles::for_similarity(&alpha, source, tol()).unwrap();
    let result = fixed_point_from_witness(&alpha, &witness, tol()).unwrap();
    let trace = result.trace.as_ref().unwrap();
    let expectations = [
        ("D", Point::new(4.0, 0.0)),
        ("E", Point::new(0.0, 2.0)),
        ("F", Point::new(4.0, 8.0)),
        ("G", Point::new(0.0, 0.0)),
        ("C", Point::new(0.8, 1.6)),
    ];
    let mut ok = true;
    for (label, expected) in expectations {
        let found = trace.point(label).unwrap();
        if !found.close_to(expected, 1e-9) {
            ok = false;
        }
    }
    ok &= result.point.close_to(Point::new(0.8, 1.6), 1e-9);

    // Indirect reference map: fixed point and axis.
    let beta = beta_star();
    let c_beta = construction::fixed_point(&beta, tol()).unwrap().point;
    ok &= c_beta.close_to(Point::new(-3.0, 0.0), 1e-9);
    let axis = reflection_axis(&beta, c_beta, Point::new(0.0, 1.0), tol()).unwrap();
    ok &= axis.approx_eq(&Line::new(0.0, 1.0, 0.0).unwrap(), 1e-9);

    // Dilation: center recovered by intersecting the invariant lines.
    let delta = Similarity::stretch(Point::new(2.0, 3.0), 3.0).unwrap();
    let c_delta = construction::dilation_center(&delta, Point::ORIGIN, tol()).unwrap().point;
    ok &= c_delta.close_to(Point::new(2.0, 3.0), 1e-9);

    verdict(
        "3 worked-example regression",
        ok,
        &format!("trace D,E,F,G,C exact; axis map C={c_beta}, dilation C={c_delta}"),
    );
}

#[test]
fn criterion_4_center_collinearity_suite() {
    // 1000 seeded (similarity, line) pairs, none of them dilatations.
    let config = GenConfig { cases: 1000, dilation_mix: 0.0, seed: 11, ..GenConfig::default() };
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut uniform = |lo: f64, hi: f64| {
        lo + (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64) * (hi - lo)
    };
    let mut passed = 0;
    let mut total = 0;
    for i in 0..config.cases as u64 {
        let alpha = harness::gen_similarity(&config, i);
        if alpha.is_dilatation() {
            continue;
        }
        let center = alpha.fixed_point_algebraic(tol()).unwrap().point;
        let margin = 0.05 * (1.0 + center.to_vec().norm());
        let line = loop {
            let p = Point::new(uniform(-100.0, 100.0), uniform(-100.0, 100.0));
            let theta = uniform(0.0, std::f64::consts::TAU);
            let l = Line::from_point_direction(p, Vec2::new(theta.cos(), theta.sin())).unwrap();
            if l.distance_to(center) >= margin
                && !similitude::geom::is_parallel(&l, &alpha.apply_line(&l), tol())
            {
                break l;
            }
        };
        total += 1;
        let w = collinearity_witness(&alpha, center, &line, tol()).unwrap();
        if w.collinear && collinear(center, w.d, w.e, tol()) {
            passed += 1;
        }
    }
    verdict(
        "4 center-collinearity suite",
        total == 1000 && passed == total,
        &format!("{passed}/{total} probes collinear with the center"),
    );
}

#[test]
fn criterion_5_transformation_law_suite() {
    let config = GenConfig { cases: 1000, seed: 5, ..GenConfig::default() };
    let report = harness::run_invariants(&config);
    let required = [
        "ratio_law",
        "betweenness_preservation",
        "collineation",
        "dilatation_characterization",
        "commutation",
        "axis_recomposition",
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for name in required {
        match report.invariants.get(name) {
            Some(count) if count.total > 0 && count.passed == count.total => {
                parts.push(format!("{name} {}/{}", count.passed, count.total));
            }
            Some(count) => {
                ok = false;
                parts.push(format!("{name} {}/{} FAILED", count.passed, count.total));
            }
            None => {
                ok = false;
                parts.push(format!("{name} missing"));
            }
        }
    }
    ok &= report.failed == 0;
    verdict("5 transformation-law suite", ok, &parts.join(", "));
}

#[test]
fn criterion_6_proof_case_coverage() {
    let (report, _) = big_run();
    let t = report.betweenness_tally;
    let ok = t.case1 >= 50 && t.case2 >= 50 && t.case3 >= 50;
    verdict(
        "6 betweenness-configuration coverage",
        ok,
        &format!("case1={} case2={} case3={} (each must reach 50)", t.case1, t.case2, t.case3),
    );
}

#[test]
fn criterion_7_reports_are_byte_identical() {
    let config = GenConfig { cases: 2000, seed: 7, ..GenConfig::default() };
    let first = harness::run_equivalence(&config).to_json();
    let second = harness::run_equivalence(&config).to_json();
    let inv_first = harness::run_invariants(&config).to_json();
    let inv_second = harness::run_invariants(&config).to_json();
    let ok = first == second && inv_first == inv_second;
    verdict(
        "7 determinism",
        ok,
        &format!(
            "equivalence report {} bytes, invariant report {} bytes, both byte-identical across runs",
            first.len(),
            inv_first.len()
        ),
    );
}
