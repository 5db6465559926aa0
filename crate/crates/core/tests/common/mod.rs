#![allow(dead_code)]

use census_core::{BipartiteGraph, DegreePair};
use proptest::prelude::*;

/// A random bipartite graph with at most `max_side` vertices per side.
pub fn graph(max_side: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max_side, 1..=max_side).prop_flat_map(|(m, n)| {
        proptest::collection::vec(any::<bool>(), m * n).prop_map(move |bits| {
            let edges = (0..m * n).filter(|&k| bits[k]).map(|k| (k / n, k % n));
            BipartiteGraph::new(m, n, edges).unwrap()
        })
    })
}

/// A square graph, so its degrees describe a digraph.
pub fn square_graph(max_n: usize) -> impl Strategy<Value = BipartiteGraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let edges = (0..n * n).filter(|&k| bits[k]).map(|k| (k / n, k % n));
            BipartiteGraph::new(n, n, edges).unwrap()
        })
    })
}

/// Realizable degree pairs, read off random graphs.
pub fn degree_pair(max_side: usize) -> impl Strategy<Value = DegreePair> {
    graph(max_side).prop_map(|g| g.degrees())
}
