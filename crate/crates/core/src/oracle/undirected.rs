use num_bigint::BigUint;
use num_traits::Zero;

use super::{count_orientations_with_degrees, Budget, ExactRational};
use crate::degseq::{erdos_gallai, UndirectedGraph};
use crate::error::{Error, Result};
use crate::estimate::estimate_undirected;

/// Every simple graph with degree sequence `d`.
///
/// Repeatedly takes the lowest vertex with residual degree and chooses all
/// of its remaining neighbours among higher vertices (lexicographically),
/// keeping the residual sequence on the higher vertices graphical.
pub fn enumerate_undirected(d: &[u32], budget: &Budget) -> Result<Vec<UndirectedGraph>> {
    let total: u64 = d.iter().map(|&x| x as u64).sum();
    budget.check_edges(total as usize)?;
    if !erdos_gallai(d) {
        return Ok(Vec::new());
    }
    if total >= 2 {
        budget.check_graphs(estimate_undirected(d)?.log_value)?;
    }
    let n = d.len();
    let mut res: Vec<u32> = d.to_vec();
    let mut edges = Vec::new();
    let mut out = Vec::new();
    rec(n, &mut res, &mut edges, &mut out);
    Ok(out)
}

fn rec(n: usize, res: &mut [u32], edges: &mut Vec<(usize, usize)>, out: &mut Vec<UndirectedGraph>) {
    let Some(i) = res.iter().position(|&x| x > 0) else {
        out.push(UndirectedGraph::new(n, edges.iter().copied()).expect("enumeration builds simple graphs"));
        return;
    };
    let k = res[i] as usize;
    let cand: Vec<usize> = (i + 1..n).filter(|&j| res[j] > 0).collect();
    if cand.len() < k {
        return;
    }
    let mut pick = Vec::with_capacity(k);
    choose(n, i, k, &cand, 0, &mut pick, res, edges, out);
}

#[allow(clippy::too_many_arguments)]
fn choose(
    n: usize,
    i: usize,
    k: usize,
    cand: &[usize],
    start: usize,
    pick: &mut Vec<usize>,
    res: &mut [u32],
    edges: &mut Vec<(usize, usize)>,
    out: &mut Vec<UndirectedGraph>,
) {
    if pick.len() == k {
        let saved = res[i];
        res[i] = 0;
        for &j in pick.iter() {
            res[j] -= 1;
            edges.push((i, j));
        }
        if erdos_gallai(&res[i + 1..]) {
            rec(n, res, edges, out);
        }
        for &j in pick.iter() {
            res[j] += 1;
            edges.pop();
        }
        res[i] = saved;
        return;
    }
    for idx in start..cand.len() {
        if cand.len() - idx < k - pick.len() {
            break;
        }
        pick.push(cand[idx]);
        choose(n, i, k, cand, idx + 1, pick, res, edges, out);
        pick.pop();
    }
}

/// Exact mean of the orientation count over all graphs with degrees `d`.
pub fn exact_expected_orientations(d: &[u32], delta: &[i64], budget: &Budget) -> Result<ExactRational> {
    let graphs = enumerate_undirected(d, budget)?;
    if graphs.is_empty() {
        return Err(Error::EmptySpace("no simple graph has this degree sequence".into()));
    }
    let mut sum = BigUint::zero();
    for g in &graphs {
        sum += count_orientations_with_degrees(g, delta, budget)?.0;
    }
    ExactRational::new(sum, BigUint::from(graphs.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(d: &[u32]) -> usize {
        enumerate_undirected(d, &Budget::default()).unwrap().len()
    }

    #[test]
    fn small_sequences() {
        assert_eq!(count(&[1, 1, 1, 1]), 3);
        assert_eq!(count(&[2, 2, 2, 2]), 3);
        assert_eq!(count(&[3, 1]), 0);
        assert_eq!(count(&[2, 2]), 0);
        assert_eq!(count(&[1, 1]), 1);
        assert_eq!(count(&[1; 6]), 15);
        assert_eq!(count(&[2; 5]), 12);
        assert_eq!(count(&[3; 4]), 1);
        assert_eq!(count(&[0, 0]), 1);
    }

    #[test]
    fn graphs_have_the_degrees() {
        let d = [3, 2, 2, 2, 1];
        let gs = enumerate_undirected(&d, &Budget::default()).unwrap();
        assert!(!gs.is_empty());
        for g in &gs {
            assert_eq!(g.degrees(), d);
        }
        let mut uniq = gs.clone();
        uniq.dedup();
        assert_eq!(uniq.len(), gs.len());
    }

    #[test]
    fn eulerian_means() {
        let b = Budget::default();
        assert_eq!(exact_expected_orientations(&[2; 4], &[0; 4], &b).unwrap().to_string(), "2");
        assert_eq!(exact_expected_orientations(&[4; 6], &[0; 6], &b).unwrap().to_string(), "38");
        assert!(matches!(
            exact_expected_orientations(&[2, 2], &[1, -1], &b),
            Err(Error::EmptySpace(_))
        ));
    }
}
