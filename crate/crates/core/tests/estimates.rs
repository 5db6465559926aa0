mod common;

use census_core::estimate::{
    avoidance_factor, estimate_bipartite, estimate_loopfree_digraphs, estimate_undirected,
    expected_eulerian_orientations, expected_permanent_regular, expected_permanent_sparse, loopfree_probability,
    permanent_complement_ie,
};
use census_core::oracle::{
    count_bipartite, count_loopfree, enumerate_undirected, exact_event_probability, exact_expected_orientations,
    exact_expected_permanent,
};
use census_core::special::ln_factorial;
use census_core::{BipartiteGraph, Budget, DegreePair, Event, ForbiddenGraph};
use num_bigint::BigUint;
use proptest::prelude::*;

fn b() -> Budget {
    Budget::default()
}

#[test]
fn exact_anchors() {
    let dp = DegreePair::regular(5, 2);
    assert_eq!(avoidance_factor(&dp, &ForbiddenGraph::empty()).unwrap().log_value, 0.0);
    // no vertex has both an out- and an in-arc, so no loop is possible
    let dp = DegreePair::new(vec![1, 0], vec![0, 1]).unwrap();
    assert_eq!(loopfree_probability(&dp).unwrap().log_value, 0.0);
    assert!((estimate_undirected(&[1; 4]).unwrap().value() - 3.0).abs() < 1e-12);
    assert!((estimate_undirected(&[1; 6]).unwrap().value() - 15.0).abs() < 1e-12);
    for n in 2..=10 {
        let r = expected_permanent_regular(n, n).unwrap();
        assert_eq!(r.estimate.log_value, ln_factorial(n as u64));
        assert_eq!(r.estimate.error_magnitude, 0.0);
    }
    let holes = BipartiteGraph::new(4, 4, (0..4).map(|i| (i, i))).unwrap();
    assert_eq!(permanent_complement_ie(&holes).unwrap().exact, BigUint::from(9u32));
}

fn log_ratio(exact_ln: f64, est: f64) -> f64 {
    exact_ln - est
}

#[test]
fn two_regular_bipartite_counts() {
    let mut last = f64::INFINITY;
    for n in 3..=6 {
        let dp = DegreePair::regular(n, 2);
        let e = estimate_bipartite(&dp).unwrap();
        let r = log_ratio(count_bipartite(&dp, &ForbiddenGraph::empty(), &b()).unwrap().ln(), e.log_value);
        assert!(r.abs() <= e.error_magnitude, "n = {n}: {r}");
        if n > 3 {
            assert!(r.abs() < last, "n = {n}: |{r}| >= {last}");
        }
        last = r.abs();
    }
}

#[test]
fn three_regular_bipartite_counts_improve() {
    let mut last = f64::INFINITY;
    for n in 4..=6 {
        let dp = DegreePair::regular(n, 3);
        let e = estimate_bipartite(&dp).unwrap();
        let r = log_ratio(count_bipartite(&dp, &ForbiddenGraph::empty(), &b()).unwrap().ln(), e.log_value);
        assert!(r.abs() < last && r.abs() <= e.error_magnitude, "n = {n}: {r}");
        last = r.abs();
    }
}

#[test]
fn loopfree_digraphs_within_error() {
    for n in 3..=6 {
        let dp = DegreePair::regular(n, 2);
        let e = estimate_loopfree_digraphs(&dp).unwrap();
        let r = log_ratio(count_loopfree(&dp, &b()).unwrap().ln(), e.log_value);
        assert!(r.abs() <= e.error_magnitude, "n = {n}: {r}");
    }
}

#[test]
fn derangement_probability_and_avoidance() {
    for n in 4..=9 {
        let dp = DegreePair::regular(n, 1);
        let p = exact_event_probability(&dp, Event::LoopFree, &ForbiddenGraph::empty(), &b()).unwrap();
        let tol = 5.0 / n as f64;
        assert!(log_ratio(p.ln(), loopfree_probability(&dp).unwrap().log_value).abs() <= tol);
        assert!(log_ratio(p.ln(), avoidance_factor(&dp, &ForbiddenGraph::diagonal(n)).unwrap().log_value).abs() <= tol);
    }
}

#[test]
fn sparse_expected_permanent_within_error() {
    for n in 3..=5 {
        let dp = DegreePair::regular(n, 2);
        let e = expected_permanent_sparse(&dp).unwrap();
        let r = log_ratio(exact_expected_permanent(&dp, &b()).unwrap().ln(), e.log_value);
        assert!(r.abs() <= e.error_magnitude, "n = {n}: {r}");
    }
}

#[test]
fn undirected_two_regular() {
    for n in 4..=8 {
        let d = vec![2u32; n];
        let e = estimate_undirected(&d).unwrap();
        let count = enumerate_undirected(&d, &b()).unwrap().len() as f64;
        assert!(log_ratio(count.ln(), e.log_value).abs() <= e.error_magnitude, "n = {n}");
        let eo = expected_eulerian_orientations(&d).unwrap();
        let exact = exact_expected_orientations(&d, &vec![0; n], &b()).unwrap();
        assert!(log_ratio(exact.ln(), eo.log_value).abs() <= eo.error_magnitude, "n = {n}");
    }
}

#[test]
fn odd_degrees_are_rejected() {
    assert!(expected_eulerian_orientations(&[3, 3, 3, 3]).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn parts_add_up(dp in common::degree_pair(5)) {
        if let Ok(e) = estimate_bipartite(&dp) {
            prop_assert!(e.log_value.is_finite());
            prop_assert!(e.error_magnitude >= 0.0);
            prop_assert!((e.log_value - (e.log_prefactor + e.correction)).abs() <= 1e-12 * e.log_value.abs().max(1.0));
        }
    }

    #[test]
    fn sides_are_interchangeable(dp in common::degree_pair(6)) {
        let t = DegreePair::new(dp.t().to_vec(), dp.s().to_vec()).unwrap();
        match (estimate_bipartite(&dp), estimate_bipartite(&t)) {
            (Ok(a), Ok(b)) => {
                prop_assert!((a.log_value - b.log_value).abs() <= 1e-9 * a.log_value.abs().max(1.0));
                prop_assert!((a.error_magnitude - b.error_magnitude).abs() <= 1e-9 * a.error_magnitude.max(1.0));
            }
            (a, b) => prop_assert_eq!(a.is_ok(), b.is_ok()),
        }
    }

    #[test]
    fn relabelling_rows_changes_nothing(dp in common::degree_pair(6), rot in 0usize..6) {
        let mut s = dp.s().to_vec();
        let k = rot % s.len();
        s.rotate_left(k);
        let p = DegreePair::new(s, dp.t().to_vec()).unwrap();
        if let (Ok(a), Ok(b)) = (estimate_bipartite(&dp), estimate_bipartite(&p)) {
            prop_assert!((a.log_value - b.log_value).abs() <= 1e-9 * a.log_value.abs().max(1.0));
        }
    }
}
