mod common;

use census_core::degseq::{erdos_gallai, gale_ryser};
use census_core::oracle::{count_bipartite, enumerate_undirected};
use census_core::{BipartiteGraph, Budget, DegreePair, ForbiddenGraph, UndirectedGraph};
use proptest::prelude::*;

#[test]
fn graph_json_is_validated() {
    let g: BipartiteGraph = serde_json::from_str(r#"{"m":2,"n":2,"edges":[[0,1],[1,0]]}"#).unwrap();
    assert_eq!(g.len(), 2);
    assert!(serde_json::from_str::<BipartiteGraph>(r#"{"m":2,"n":2,"edges":[[0,2]]}"#).is_err());
    assert!(serde_json::from_str::<UndirectedGraph>(r#"{"n":3,"edges":[[0,0]]}"#).is_err());
    assert!(serde_json::from_str::<DegreePair>(r#"{"s":[1],"t":[2]}"#).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn json_round_trips(g in common::graph(5)) {
        let back: BipartiteGraph = serde_json::from_str(&serde_json::to_string(&g).unwrap()).unwrap();
        prop_assert_eq!(&back, &g);
        let dp = g.degrees();
        let back: DegreePair = serde_json::from_str(&serde_json::to_string(&dp).unwrap()).unwrap();
        prop_assert_eq!(back, dp);
    }

    #[test]
    fn gale_ryser_decides_realizability(s in proptest::collection::vec(0u32..4, 1..4), t in proptest::collection::vec(0u32..4, 1..4)) {
        prop_assume!(s.iter().sum::<u32>() == t.iter().sum::<u32>());
        let dp = DegreePair::new(s.clone(), t.clone()).unwrap();
        let n = count_bipartite(&dp, &ForbiddenGraph::empty(), &Budget::default()).unwrap();
        prop_assert_eq!(gale_ryser(&s, &t), !n.is_zero());
        prop_assert_eq!(dp.is_bigraphic(), !n.is_zero());
    }

    #[test]
    fn erdos_gallai_decides_graphicality(d in proptest::collection::vec(0u32..5, 1..7)) {
        prop_assume!(d.iter().sum::<u32>() % 2 == 0);
        let n = enumerate_undirected(&d, &Budget::default()).unwrap().len();
        prop_assert_eq!(erdos_gallai(&d), n > 0);
    }

    #[test]
    fn digraph_views_agree(g in common::square_graph(5)) {
        let arcs = g.arcs();
        prop_assert_eq!(BipartiteGraph::from_arcs(g.n(), arcs).unwrap(), g.clone());
        prop_assert_eq!(BipartiteGraph::from_rows(g.n(), &g.rows()), g.clone());
        prop_assert_eq!(g.forbidden_count(&ForbiddenGraph::diagonal(g.n())), g.loop_count());
    }
}
