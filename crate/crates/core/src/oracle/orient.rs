use super::{check, Budget, ExactCount};
use crate::degseq::UndirectedGraph;
use crate::error::{Error, Result};

struct Search {
    edges: Vec<(usize, usize)>,
    need: Vec<i64>,
    left: Vec<i64>,
}

impl Search {
    fn ok(&self, v: usize) -> bool {
        self.need[v] >= 0 && self.need[v] <= self.left[v]
    }

    fn run(&mut self, k: usize) -> u128 {
        if k == self.edges.len() {
            return 1;
        }
        let (a, b) = self.edges[k];
        self.left[a] -= 1;
        self.left[b] -= 1;
        let mut total = 0;
        for (from, to) in [(a, b), (b, a)] {
            self.need[from] -= 1;
            if self.ok(from) && self.ok(to) {
                total += self.run(k + 1);
            }
            self.need[from] += 1;
        }
        self.left[a] += 1;
        self.left[b] += 1;
        total
    }
}

fn count(g: &UndirectedGraph, out: Vec<i64>, budget: &Budget) -> Result<ExactCount> {
    check("edges", budget.max_orientation_edges, g.len())?;
    let d = g.degrees();
    let mut s = Search {
        edges: g.edges().iter().copied().collect(),
        left: d.iter().map(|&x| x as i64).collect(),
        need: out,
    };
    if !(0..g.n()).all(|v| s.ok(v)) {
        return Ok(ExactCount::from(0));
    }
    Ok(ExactCount::from(s.run(0)))
}

/// Orientations with in-degree equal to out-degree at every vertex.
/// Graphs with an odd degree have none.
pub fn count_eulerian_orientations(g: &UndirectedGraph, budget: &Budget) -> Result<ExactCount> {
    check("edges", budget.max_orientation_edges, g.len())?;
    let d = g.degrees();
    if d.iter().any(|&x| x % 2 == 1) {
        return Ok(ExactCount::from(0));
    }
    count(g, d.iter().map(|&x| x as i64 / 2).collect(), budget)
}

/// Orientations where vertex `i` has out-degree `d_i/2 + delta_i` and
/// in-degree `d_i/2 - delta_i`.
pub fn count_orientations_with_degrees(g: &UndirectedGraph, delta: &[i64], budget: &Budget) -> Result<ExactCount> {
    let d = g.degrees();
    if delta.len() != d.len() {
        return Err(Error::Precondition(format!(
            "graph has {} vertices but delta has {} entries",
            d.len(),
            delta.len()
        )));
    }
    let mut out = Vec::with_capacity(d.len());
    for (i, (&di, &dl)) in d.iter().zip(delta).enumerate() {
        if di % 2 == 1 {
            return Err(Error::Precondition(format!(
                "vertex {i} has odd degree {di}: targets d/2 +- delta are not integers"
            )));
        }
        let o = di as i64 / 2 + dl;
        if o < 0 || o > di as i64 {
            return Err(Error::Precondition(format!(
                "vertex {i}: out-degree target {o} outside [0, {di}]"
            )));
        }
        out.push(o);
    }
    count(g, out, budget)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eo(g: &UndirectedGraph) -> u128 {
        count_eulerian_orientations(g, &Budget::default()).unwrap().to_f64() as u128
    }

    /// Every orientation checked directly.
    fn brute(g: &UndirectedGraph, out: &[i64]) -> u128 {
        let edges: Vec<_> = g.edges().iter().copied().collect();
        (0u64..1 << edges.len())
            .filter(|mask| {
                let mut o = vec![0i64; g.n()];
                for (k, &(a, b)) in edges.iter().enumerate() {
                    o[if mask >> k & 1 == 1 { a } else { b }] += 1;
                }
                o == out
            })
            .count() as u128
    }

    #[test]
    fn known_counts() {
        assert_eq!(eo(&UndirectedGraph::cycle(4)), 2);
        assert_eq!(eo(&UndirectedGraph::new(3, [(0, 1), (1, 2)]).unwrap()), 0);
        assert_eq!(eo(&UndirectedGraph::complete(5)), 24);
        assert_eq!(eo(&UndirectedGraph::complete(5)), brute(&UndirectedGraph::complete(5), &[2; 5]));
    }

    #[test]
    fn shifted_targets() {
        let c4 = UndirectedGraph::cycle(4);
        let b = Budget::default();
        assert_eq!(count_orientations_with_degrees(&c4, &[0; 4], &b).unwrap(), ExactCount::from(2));
        let got = count_orientations_with_degrees(&c4, &[1, 0, -1, 0], &b).unwrap();
        assert_eq!(got, ExactCount::from(brute(&c4, &[2, 1, 0, 1])));
        assert_eq!(got, ExactCount::from(1));
        let edge = UndirectedGraph::new(2, [(0, 1)]).unwrap();
        assert!(matches!(
            count_orientations_with_degrees(&edge, &[0, 0], &b),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn relabeling_invariance() {
        let g = UndirectedGraph::new(6, [(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2), (0, 5), (5, 3), (1, 4), (3, 1)]).unwrap();
        let base = eo(&g);
        for perm in super::super::moments::permutations(6).iter().step_by(37) {
            assert_eq!(eo(&g.relabel(perm)), base);
        }
    }

    #[test]
    fn edge_budget() {
        let k9 = UndirectedGraph::complete(9);
        assert!(count_eulerian_orientations(&k9, &Budget::default()).unwrap_err().is_budget());
    }
}
