use std::collections::HashMap;

use census_core::oracle::{bipartite_graphs, count_loopfree, enumerate_undirected};
use census_core::sample::{
    estimate_event_probability, estimate_expected_orientation_count, sample_bipartite, sample_bipartite_many,
    sample_undirected_many,
};
use census_core::special::chi_square_sf;
use census_core::{Budget, DegreePair, Error, Event, ForbiddenGraph, Method, SamplerConfig};

/// Chi-square p-value of the observed counts against the uniform law on `k` cells.
fn uniform_p<K>(counts: &HashMap<K, u64>, k: usize, draws: u64) -> f64 {
    let expect = draws as f64 / k as f64;
    let observed: f64 = counts.values().map(|&c| (c as f64 - expect).powi(2) / expect).sum();
    let missing = (k - counts.len()) as f64 * expect;
    chi_square_sf(observed + missing, (k - 1) as f64)
}

#[test]
fn bipartite_samplers_are_uniform() {
    let dp = DegreePair::new(vec![2, 2, 1, 1], vec![2, 1, 2, 1]).unwrap();
    let all = bipartite_graphs(&dp, &ForbiddenGraph::empty(), &Budget::default()).unwrap();
    let draws = 6000;
    for method in [Method::ConfigurationRejection, Method::SwapChain] {
        let cfg = SamplerConfig::new(17, method, 200, draws);
        let mut counts = HashMap::new();
        for g in sample_bipartite_many(&dp, &cfg).unwrap() {
            assert!(all.contains(&g));
            *counts.entry(g).or_insert(0) += 1;
        }
        let p = uniform_p(&counts, all.len(), draws);
        assert!(p > 1e-3, "{method:?}: p = {p} over {} graphs", all.len());
    }
}

#[test]
fn undirected_samplers_are_uniform() {
    let d = vec![2u32; 5];
    let all = enumerate_undirected(&d, &Budget::default()).unwrap();
    let draws = 6000;
    for method in [Method::ConfigurationRejection, Method::SwapChain] {
        let cfg = SamplerConfig::new(5, method, 200, draws);
        let mut counts = HashMap::new();
        for g in sample_undirected_many(&d, &cfg).unwrap() {
            assert_eq!(g.degrees(), d);
            *counts.entry(g).or_insert(0) += 1;
        }
        let p = uniform_p(&counts, all.len(), draws);
        assert!(p > 1e-3, "{method:?}: p = {p}");
    }
}

#[test]
fn seeds_reproduce() {
    let dp = DegreePair::regular(6, 2);
    for method in [Method::ConfigurationRejection, Method::SwapChain] {
        let cfg = SamplerConfig::new(99, method, 50, 40);
        let a = sample_bipartite_many(&dp, &cfg).unwrap();
        assert_eq!(a, sample_bipartite_many(&dp, &cfg).unwrap());
        assert_eq!(a[0], sample_bipartite(&dp, &cfg).unwrap());
        let other = sample_bipartite_many(&dp, &SamplerConfig { seed: 100, ..cfg }).unwrap();
        assert_ne!(a, other);
    }
}

#[test]
fn loopfree_probability_by_simulation() {
    let dp = DegreePair::regular(5, 2);
    let budget = Budget::default();
    let all = bipartite_graphs(&dp, &ForbiddenGraph::empty(), &budget).unwrap().len() as f64;
    let p = count_loopfree(&dp, &budget).unwrap().to_f64() / all;
    let cfg = SamplerConfig::new(3, Method::ConfigurationRejection, 0, 20_000);
    let est = estimate_event_probability(&dp, &cfg, Event::LoopFree, &ForbiddenGraph::empty()).unwrap();
    assert_eq!(est.n_samples, 20_000);
    assert!(est.within(p, 4.0, 0.0), "{est:?} vs {p}");
}

#[test]
fn orientation_mean_of_cycles() {
    // every 2-regular graph is a union of cycles, each with 2 Eulerian orientations;
    // on 4 vertices the only such graphs are 4-cycles
    let cfg = SamplerConfig::new(1, Method::SwapChain, 30, 64);
    let est = estimate_expected_orientation_count(&[2; 4], &[0; 4], &cfg, &Budget::default()).unwrap();
    assert_eq!(est.point, 2.0);
    assert_eq!(est.stderr, 0.0);
    let odd = estimate_expected_orientation_count(&[3; 4], &[0; 4], &cfg, &Budget::default()).unwrap();
    assert_eq!(odd.point, 0.0);
}

#[test]
fn bad_configurations() {
    let dp = DegreePair::regular(3, 1);
    let cfg = SamplerConfig::new(0, Method::SwapChain, 10, 0);
    assert!(matches!(sample_bipartite_many(&dp, &cfg), Err(Error::Sampler(_))));
    let infeasible = DegreePair::new(vec![2, 0], vec![2, 0]).unwrap();
    let cfg = SamplerConfig::new(0, Method::SwapChain, 10, 1);
    assert!(sample_bipartite(&infeasible, &cfg).is_err());
    // a dense pair where simple pairings are too rare for a single attempt
    let dense = DegreePair::regular(6, 5);
    let cfg = SamplerConfig::new(0, Method::ConfigurationRejection, 0, 1).with_max_attempts(1);
    let r = (0..20).map(|seed| sample_bipartite(&dense, &SamplerConfig { seed, ..cfg.clone() })).filter(Result::is_err).count();
    assert!(r > 0);
}

#[test]
fn method_choice() {
    assert_eq!(SamplerConfig::auto(&DegreePair::regular(50, 2), 0, 1).method, Method::ConfigurationRejection);
    assert_eq!(SamplerConfig::auto(&DegreePair::regular(6, 3), 0, 1).method, Method::SwapChain);
    assert_eq!("swap-chain".parse::<Method>().unwrap(), Method::SwapChain);
}
