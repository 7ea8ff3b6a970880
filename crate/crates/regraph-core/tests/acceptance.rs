//! Acceptance suite: one test per criterion, each pinned to its tolerance.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

use regraph_core::{
    bessel_i, contractible_term, count_closed_paths, count_geodesic_paths, cyclic_reduce_with,
    enumerate_closed_paths, gp_from_spectrum, homotopy_census, homotopy_class_coefficients,
    rho_moment, spectrum, tree_walk_counts, verify_ahumada, verify_polygon_identity,
    verify_trace_formula, Budget, Graph, ReducedClass, ReductionStrategy, TestSequence,
};

use regraph_core::graph;

fn acceptance_graphs() -> Vec<(&'static str, Graph)> {
    vec![
        ("cycle5", graph::cycle(5).unwrap()),
        ("cycle6", graph::cycle(6).unwrap()),
        ("k4", graph::complete(4).unwrap()),
        ("cube", graph::hypercube(3).unwrap()),
        ("petersen", graph::petersen().unwrap()),
        (
            "random_3reg_10_seed7",
            graph::random_regular(10, 3, 7, graph::DEFAULT_REJECTION_BUDGET).unwrap(),
        ),
    ]
}

/// Independent brute-force oracle: closed vertex sequences of length `l`
/// that are non-backtracking cyclically, counted by DFS.
fn brute_force_gp(g: &Graph, l: usize) -> BigInt {
    fn extend(g: &Graph, l: usize, word: &mut Vec<usize>, count: &mut u64) {
        let k = word.len();
        if k == l {
            if g.has_edge(word[l - 1], word[0]) && word[l - 2] != word[0] && word[l - 1] != word[1]
            {
                *count += 1;
            }
            return;
        }
        let last = word[k - 1];
        for &next in g.neighbors(last) {
            if k >= 2 && next == word[k - 2] {
                continue;
            }
            word.push(next);
            extend(g, l, word, count);
            word.pop();
        }
    }
    let mut count = 0;
    let mut word = Vec::new();
    if l >= 3 {
        for start in 0..g.vertex_count() {
            word.push(start);
            extend(g, l, &mut word, &mut count);
            word.pop();
        }
    }
    BigInt::from(count)
}

#[test]
fn criterion_1_exact_master_identity() {
    // p_l = |V| p_tree[l] + sum_{m=3..l} gp_m h(m, l), exact, l <= 12.
    const L_MAX: usize = 12;
    for (name, g) in acceptance_graphs() {
        let p = count_closed_paths(&g, L_MAX);
        let gp = count_geodesic_paths(&g, L_MAX);
        let tree = tree_walk_counts(g.q(), L_MAX);
        let h: Vec<Vec<BigInt>> = (0..=L_MAX)
            .map(|m| {
                if m < 3 {
                    vec![BigInt::zero(); L_MAX + 1]
                } else {
                    homotopy_class_coefficients(g.q(), m, L_MAX).unwrap()
                }
            })
            .collect();
        for l in 0..=L_MAX {
            let mut rhs = BigInt::from(g.vertex_count()) * &tree.p_tree[l];
            for m in 3..=l {
                rhs += &gp[m] * &h[m][l];
            }
            assert_eq!(p[l], rhs, "graph {name}, l = {l}");
        }
    }
}

#[test]
fn criterion_2_homotopy_census_oracle() {
    // Brute-force bucket counts match |V| p_tree[l] and Lambda * h(|gamma|, l)
    // exactly, l <= 10 on K4 and cycle(5).
    const L_MAX: usize = 10;
    let budget = Budget::default();
    for (name, g) in [
        ("k4", graph::complete(4).unwrap()),
        ("cycle5", graph::cycle(5).unwrap()),
    ] {
        let tree = tree_walk_counts(g.q(), L_MAX);
        let h: Vec<Vec<BigInt>> = (0..=L_MAX)
            .map(|m| {
                if m < 3 {
                    vec![BigInt::zero(); L_MAX + 1]
                } else {
                    homotopy_class_coefficients(g.q(), m, L_MAX).unwrap()
                }
            })
            .collect();
        for l in 0..=L_MAX {
            let censusmap = homotopy_census(&g, l, &budget).unwrap();
            for (class, count) in &censusmap {
                match class {
                    ReducedClass::Contractible => {
                        let want = BigInt::from(g.vertex_count()) * &tree.p_tree[l];
                        assert_eq!(count, &want, "graph {name}, l = {l}, contractible");
                    }
                    ReducedClass::Geodesic(gc) => {
                        let want = BigInt::from(gc.lambda()) * &h[gc.length()][l];
                        assert_eq!(
                            count, &want,
                            "graph {name}, l = {l}, class {:?}",
                            gc.canonical_word()
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn criterion_3_geodesic_count_triple_agreement() {
    // Brute force, transfer-operator trace, and spectral inversion agree
    // exactly for l <= 12.
    const L_MAX: usize = 12;
    for (name, g) in acceptance_graphs() {
        let gp = count_geodesic_paths(&g, L_MAX);
        let sp = spectrum(&g).unwrap();
        for l in 3..=L_MAX {
            let brute = brute_force_gp(&g, l);
            assert_eq!(gp[l], brute, "graph {name}, l = {l}, trace vs brute");
            let inverted = gp_from_spectrum(&sp, l).unwrap();
            assert_eq!(gp[l], inverted, "graph {name}, l = {l}, inversion");
        }
    }
    // Spot values.
    assert_eq!(
        count_geodesic_paths(&graph::complete(4).unwrap(), 3)[3],
        BigInt::from(24)
    );
    let pet = graph::petersen().unwrap();
    let gp = count_geodesic_paths(&pet, 5);
    assert_eq!(gp[4], BigInt::zero());
    assert_eq!(gp[5], BigInt::from(120));
    assert_eq!(
        count_geodesic_paths(&graph::cycle(5).unwrap(), 5)[5],
        BigInt::from(10)
    );
}

#[test]
fn criterion_4_numeric_trace_formula() {
    const L_TRUNC: usize = 24;
    for (name, g) in acceptance_graphs() {
        for t in [0.25, 0.5, 1.0] {
            let report = verify_trace_formula(&g, t, L_TRUNC).unwrap();
            assert!(
                report.passes(1e-8),
                "graph {name}, t = {t}: residual {} > 1e-8 + tail {}",
                report.residual,
                report.tail_bound
            );
        }
    }
}

#[test]
fn criterion_5_polygon_identity() {
    for l_polygon in [3usize, 5, 8] {
        for t in [0.5, 1.0, 2.0] {
            // Truncate once the Bessel terms underflow.
            let mut r_trunc = 1;
            while bessel_i(r_trunc * l_polygon, 2.0 * t) > 1e-18 {
                r_trunc += 1;
            }
            let residual = verify_polygon_identity(l_polygon, t, r_trunc);
            assert!(
                residual < 1e-10,
                "L = {l_polygon}, t = {t}: residual {residual}"
            );
        }
    }
}

#[test]
fn criterion_6_contractible_and_density_cross_checks() {
    // Contractible quadrature vs the exact tree-walk series at t = 0.5.
    let tree = tree_walk_counts(2, 60);
    let t: f64 = 0.5;
    let mut series_value = 0.0;
    let mut factorial = 1.0;
    for l in 0..=60usize {
        if l > 0 {
            factorial *= l as f64;
        }
        if l % 2 == 0 {
            series_value += 4.0 * tree.p_tree[l].to_f64().unwrap() * t.powi(l as i32) / factorial;
        }
    }
    let quadrature = contractible_term(2, 4, t).unwrap();
    assert!(
        (quadrature - series_value).abs() < 1e-10,
        "{quadrature} vs {series_value}"
    );
    // Density normalization and second moment.
    for (name, g) in acceptance_graphs() {
        let n = g.vertex_count();
        let q = g.q();
        let mass = rho_moment(q, n, 0).unwrap();
        assert!((mass - n as f64).abs() < 1e-8, "graph {name}: mass {mass}");
        let second = rho_moment(q, n, 2).unwrap();
        let want = (n * (q + 1)) as f64;
        assert!(
            (second - want).abs() < 1e-8,
            "graph {name}: second moment {second} vs {want}"
        );
    }
}

#[test]
fn criterion_7_ahumada_specialization() {
    // Indicator sequences reproduce the spectral inversion identity.
    for (name, g) in [
        ("k4", graph::complete(4).unwrap()),
        ("petersen", graph::petersen().unwrap()),
    ] {
        for l in 1..=8 {
            let residual = verify_ahumada(&g, &TestSequence::indicator(l), 8).unwrap();
            assert!(residual < 1e-8, "graph {name}, l = {l}: residual {residual}");
        }
    }
    // Laurent reduction of the contour term vs direct numerical contour
    // integration on the documented example (q = 2, |V| = 4).
    let ts = TestSequence::new(vec![0.7, 0.0, 1.3, -0.2, 0.0, 0.4, 0.05]);
    let laurent = regraph_core::spectral::ahumada_identity_term(2, 4, &ts);
    let contour = contour_identity_term(2, 4, &ts);
    assert!(
        (laurent - contour).abs() < 1e-8,
        "laurent {laurent} vs contour {contour}"
    );
}

/// Trapezoid on |z| = 1; the integrand is smooth and periodic for q >= 2, so
/// this converges to well below the comparison tolerance.
fn contour_identity_term(q: usize, vertex_count: usize, ts: &TestSequence) -> f64 {
    use std::f64::consts::PI;
    let support = ts.support_max().unwrap_or(0);
    let samples = 1 << 14;
    let qf = q as f64;
    let mut acc = 0.0;
    for i in 0..samples {
        let theta = 2.0 * PI * i as f64 / samples as f64;
        let mut ghat = ts.get(0);
        for n in 1..=support {
            ghat += 2.0 * ts.get(n) * (n as f64 * theta).cos();
        }
        let (re_num, im_num) = (1.0 - (2.0 * theta).cos(), -(2.0 * theta).sin());
        let (re_den, im_den) = (qf - (2.0 * theta).cos(), -(2.0 * theta).sin());
        let den_norm = re_den * re_den + im_den * im_den;
        acc += ghat * qf * (re_num * re_den + im_num * im_den) / den_norm;
    }
    vertex_count as f64 * acc / samples as f64
}

#[test]
fn criterion_8a_cyclic_reduction_confluence() {
    let k4 = graph::complete(4).unwrap();
    let budget = Budget::default();
    for l in 0..=10 {
        for path in enumerate_closed_paths(&k4, l, &budget).unwrap() {
            let left = cyclic_reduce_with(path.vertices(), ReductionStrategy::Leftmost);
            let right = cyclic_reduce_with(path.vertices(), ReductionStrategy::Rightmost);
            assert_eq!(left, right, "path {:?}", path.vertices());
        }
    }
}

#[test]
fn criterion_8b_bipartite_parity() {
    for (name, g) in [
        ("cycle6", graph::cycle(6).unwrap()),
        ("cube", graph::hypercube(3).unwrap()),
    ] {
        let p = count_closed_paths(&g, 11);
        let gp = count_geodesic_paths(&g, 11);
        for l in (1..=11).step_by(2) {
            assert_eq!(p[l], BigInt::zero(), "graph {name}, p_{l}");
            assert_eq!(gp[l], BigInt::zero(), "graph {name}, gp_{l}");
        }
    }
}

#[test]
fn criterion_8c_spectrum_moment_identities() {
    for (name, g) in acceptance_graphs() {
        let sp = spectrum(&g).unwrap();
        let p = count_closed_paths(&g, 6);
        for k in 0..=6usize {
            let moment: f64 = sp.eigenvalues.iter().map(|l| l.powi(k as i32)).sum();
            let want = p[k].to_f64().unwrap();
            let tol = 1e-6 * want.abs().max(1.0);
            assert!(
                (moment - want).abs() <= tol,
                "graph {name}, k = {k}: {moment} vs {want}"
            );
        }
    }
}

#[test]
fn criterion_8d_bounded_ratio_asymptotics() {
    // gp_l ~ q^l (non-bipartite) or gp_l ~ 2 q^l for even l (bipartite),
    // checked as a bounded ratio at the largest tested lengths. The law
    // needs q >= 2; cycles (q = 1) have gp supported on multiples of the
    // girth only and are excluded.
    const L_MAX: usize = 12;
    for (name, g) in acceptance_graphs() {
        if g.q() < 2 {
            continue;
        }
        let gp = count_geodesic_paths(&g, L_MAX);
        let q_pow = |l: usize| (g.q() as f64).powi(l as i32);
        if g.is_bipartite() {
            for l in (1..=L_MAX).step_by(2) {
                assert_eq!(gp[l], BigInt::zero(), "graph {name}, odd gp_{l}");
            }
            let ratio = gp[L_MAX].to_f64().unwrap() / (2.0 * q_pow(L_MAX));
            assert!(
                (0.5..=2.0).contains(&ratio),
                "graph {name}: even ratio {ratio}"
            );
        } else {
            for l in [L_MAX - 1, L_MAX] {
                let ratio = gp[l].to_f64().unwrap() / q_pow(l);
                assert!(
                    (0.5..=2.0).contains(&ratio),
                    "graph {name}, l = {l}: ratio {ratio}"
                );
            }
        }
    }
}
