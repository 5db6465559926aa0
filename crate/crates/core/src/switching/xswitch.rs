//! The switching that removes one edge of a forbidden set `X`.
//!
//! Forward, on `G` with `f` edges of `X`: take `u_i v_j ∈ G ∩ X` and
//! `u_a v_c, u_b v_d ∈ G \ X` with `u_i v_c, u_a v_d, u_b v_j ∉ G ∪ X`;
//! replace the three edges by `u_i v_c, u_a v_d, u_b v_j`. The reverse
//! undoes this on the same index tuple, so forward specs on `B_f` and
//! reverse specs on `B_{f-1}` are in bijection.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{avoid, distinct, in_range, in_x, need, rewire, Check, SwitchCountReport};
use crate::degseq::{BipartiteGraph, DegreePair, ForbiddenGraph};
use crate::error::Result;
use crate::oracle::{stratum, Budget, ExactCount};

/// Rows `i, a, b` and columns `j, c, d` of one switching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct XSwitchSpec {
    pub i: usize,
    pub j: usize,
    pub a: usize,
    pub c: usize,
    pub b: usize,
    pub d: usize,
}

impl XSwitchSpec {
    fn rows(&self) -> [usize; 3] {
        [self.i, self.a, self.b]
    }

    fn cols(&self) -> [usize; 3] {
        [self.j, self.c, self.d]
    }

    fn check_forward(&self, g: &BipartiteGraph, x: &ForbiddenGraph) -> Check {
        let s = *self;
        in_range(g, &[(s.i, s.j), (s.a, s.c), (s.b, s.d)])?;
        need(g, "u_i v_j in G", (s.i, s.j))?;
        in_x(x, "u_i v_j in X", (s.i, s.j), true)?;
        need(g, "u_a v_c in G", (s.a, s.c))?;
        in_x(x, "u_a v_c not in X", (s.a, s.c), false)?;
        need(g, "u_b v_d in G", (s.b, s.d))?;
        in_x(x, "u_b v_d not in X", (s.b, s.d), false)?;
        for (clause, e) in [("u_i v_c", (s.i, s.c)), ("u_a v_d", (s.a, s.d)), ("u_b v_j", (s.b, s.j))] {
            avoid(g, clause, e)?;
            in_x(x, clause, e, false)?;
        }
        distinct("rows i, a, b", &self.rows())?;
        distinct("columns j, c, d", &self.cols())
    }

    fn check_reverse(&self, g: &BipartiteGraph, x: &ForbiddenGraph) -> Check {
        let s = *self;
        in_range(g, &[(s.i, s.j), (s.a, s.c), (s.b, s.d)])?;
        in_x(x, "u_i v_j in X", (s.i, s.j), true)?;
        avoid(g, "u_i v_j not in G'", (s.i, s.j))?;
        for (clause, e) in [("u_i v_c", (s.i, s.c)), ("u_b v_j", (s.b, s.j)), ("u_a v_d", (s.a, s.d))] {
            need(g, clause, e)?;
            in_x(x, clause, e, false)?;
        }
        for (clause, e) in [("u_a v_c", (s.a, s.c)), ("u_b v_d", (s.b, s.d))] {
            avoid(g, clause, e)?;
            in_x(x, clause, e, false)?;
        }
        distinct("rows i, a, b", &self.rows())?;
        distinct("columns j, c, d", &self.cols())
    }
}

pub fn apply_forward_x_switch(g: &BipartiteGraph, x: &ForbiddenGraph, spec: &XSwitchSpec) -> Result<BipartiteGraph> {
    spec.check_forward(g, x)?;
    let s = spec;
    Ok(rewire(
        g,
        &[(s.i, s.j), (s.a, s.c), (s.b, s.d)],
        &[(s.i, s.c), (s.a, s.d), (s.b, s.j)],
    ))
}

pub fn apply_reverse_x_switch(g: &BipartiteGraph, x: &ForbiddenGraph, spec: &XSwitchSpec) -> Result<BipartiteGraph> {
    spec.check_reverse(g, x)?;
    let s = spec;
    Ok(rewire(
        g,
        &[(s.i, s.c), (s.b, s.j), (s.a, s.d)],
        &[(s.i, s.j), (s.a, s.c), (s.b, s.d)],
    ))
}

fn blocked(g: &BipartiteGraph, x: &ForbiddenGraph, e: (usize, usize)) -> bool {
    g.contains(e.0, e.1) || x.contains(e.0, e.1)
}

/// Every valid forward spec, scanning edges of `G`.
pub fn forward_x_switches(g: &BipartiteGraph, x: &ForbiddenGraph) -> Vec<XSwitchSpec> {
    let free: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(a, c)| !x.contains(a, c)).collect();
    let mut out = Vec::new();
    for &(i, j) in g.edges().iter().filter(|&&(i, j)| x.contains(i, j)) {
        for &(a, c) in &free {
            if blocked(g, x, (i, c)) {
                continue;
            }
            for &(b, d) in &free {
                if (b, d) == (a, c) || blocked(g, x, (a, d)) || blocked(g, x, (b, j)) {
                    continue;
                }
                let spec = XSwitchSpec { i, j, a, c, b, d };
                debug_assert!(spec.check_forward(g, x).is_ok());
                out.push(spec);
            }
        }
    }
    out
}

/// `N(G)`: number of forward switchings applicable to `G`.
pub fn count_forward_x_switches(g: &BipartiteGraph, x: &ForbiddenGraph) -> ExactCount {
    ExactCount::from(forward_x_switches(g, x).len() as u128)
}

/// `N'(G')`: number of reverse switchings applicable to `G'`.
pub fn count_reverse_x_switches(g: &BipartiteGraph, x: &ForbiddenGraph) -> ExactCount {
    let free: Vec<(usize, usize)> = g.edges().iter().copied().filter(|&(a, c)| !x.contains(a, c)).collect();
    let mut count = 0u128;
    for &(i, j) in x.edges().iter().filter(|&&(i, j)| i < g.m() && j < g.n() && !g.contains(i, j)) {
        for &(_, c) in free.iter().filter(|&&(r, _)| r == i) {
            for &(b, _) in free.iter().filter(|&&(_, col)| col == j) {
                for &(a, d) in &free {
                    if blocked(g, x, (a, c)) || blocked(g, x, (b, d)) {
                        continue;
                    }
                    debug_assert!(XSwitchSpec { i, j, a, c, b, d }.check_reverse(g, x).is_ok());
                    count += 1;
                }
            }
        }
    }
    ExactCount::from(count)
}

/// Independent recount: every index tuple tested against the full
/// condition list.
pub fn count_forward_x_switches_naive(g: &BipartiteGraph, x: &ForbiddenGraph) -> ExactCount {
    count_naive(g, |s| s.check_forward(g, x).is_ok())
}

pub fn count_reverse_x_switches_naive(g: &BipartiteGraph, x: &ForbiddenGraph) -> ExactCount {
    count_naive(g, |s| s.check_reverse(g, x).is_ok())
}

fn count_naive(g: &BipartiteGraph, ok: impl Fn(&XSwitchSpec) -> bool) -> ExactCount {
    let (m, n) = (g.m(), g.n());
    let mut count = 0u128;
    for i in 0..m {
        for a in 0..m {
            for b in 0..m {
                for j in 0..n {
                    for c in 0..n {
                        for d in 0..n {
                            if ok(&XSwitchSpec { i, j, a, c, b, d }) {
                                count += 1;
                            }
                        }
                    }
                }
            }
        }
    }
    ExactCount::from(count)
}

/// `sum_{G in B_f} N(G)` against `sum_{G' in B_{f-1}} N'(G')`.
pub fn verify_x_switch_identity(dp: &DegreePair, x: &ForbiddenGraph, f: usize, budget: &Budget) -> Result<SwitchCountReport> {
    if f == 0 {
        return Err(crate::error::Error::Precondition("f must be at least 1".into()));
    }
    let upper = stratum(dp, x, f, budget)?;
    let lower = stratum(dp, x, f - 1, budget)?;
    let fwd: BigUint = upper.par_iter().map(|g| count_forward_x_switches(g, x).0).sum();
    let rev: BigUint = lower.par_iter().map(|g| count_reverse_x_switches(g, x).0).sum();
    Ok(SwitchCountReport {
        stratum: f,
        forward_graphs: upper.len(),
        reverse_graphs: lower.len(),
        total_forward: ExactCount(fwd),
        total_reverse: ExactCount(rev),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::switching::Violation;

    /// Rows i=0, a=1, b=2; columns j=0, c=1, d=2; X = {u_0 v_0}.
    fn figure() -> (BipartiteGraph, ForbiddenGraph, XSwitchSpec) {
        let g = BipartiteGraph::new(3, 3, [(0, 0), (1, 1), (2, 2)]).unwrap();
        let x = ForbiddenGraph::new([(0, 0)]).unwrap();
        let spec = XSwitchSpec { i: 0, j: 0, a: 1, c: 1, b: 2, d: 2 };
        (g, x, spec)
    }

    #[test]
    fn forward_then_reverse() {
        let (g, x, spec) = figure();
        let h = apply_forward_x_switch(&g, &x, &spec).unwrap();
        assert_eq!(h.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 0)]);
        assert_eq!(h.degrees(), g.degrees());
        assert_eq!(h.forbidden_count(&x), 0);
        assert_eq!(apply_reverse_x_switch(&h, &x, &spec).unwrap(), g);
    }

    #[test]
    fn double_edge_named() {
        let (g, x, spec) = figure();
        let g = BipartiteGraph::new(3, 3, g.edges().iter().copied().chain([(0, 1)])).unwrap();
        let err = apply_forward_x_switch(&g, &x, &spec).unwrap_err();
        match err {
            Error::Switch(Violation::Present { clause, .. }) => assert_eq!(clause, "u_i v_c"),
            other => panic!("{other:?}"),
        }
        assert!(err_text(&g, &x, &spec).contains("would create double edge"));
    }

    fn err_text(g: &BipartiteGraph, x: &ForbiddenGraph, s: &XSwitchSpec) -> String {
        apply_forward_x_switch(g, x, s).unwrap_err().to_string()
    }

    #[test]
    fn counts_agree_with_naive() {
        let (g, x, _) = figure();
        assert_eq!(count_forward_x_switches(&g, &x), count_forward_x_switches_naive(&g, &x));
        let id = BipartiteGraph::from_arcs(3, [(0, 0), (1, 1), (2, 2)]).unwrap();
        let diag = ForbiddenGraph::diagonal(3);
        // every edge is in X, so no pair of free edges exists
        assert_eq!(count_forward_x_switches(&id, &diag), ExactCount::from(0));
        assert_eq!(count_forward_x_switches_naive(&id, &diag), ExactCount::from(0));
        let h = BipartiteGraph::from_arcs(3, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(count_forward_x_switches(&h, &diag), ExactCount::from(0));
        assert_eq!(count_reverse_x_switches(&h, &ForbiddenGraph::empty()), ExactCount::from(0));
        assert_eq!(count_forward_x_switches(&h, &ForbiddenGraph::empty()), ExactCount::from(0));
    }

    #[test]
    fn small_identities() {
        let b = Budget::default();
        let r = verify_x_switch_identity(&DegreePair::regular(3, 1), &ForbiddenGraph::diagonal(3), 1, &b).unwrap();
        assert!(r.holds());
        let x = ForbiddenGraph::new([(0, 0), (1, 1)]).unwrap();
        let r = verify_x_switch_identity(&DegreePair::regular(3, 2), &x, 1, &b).unwrap();
        assert!(r.holds());
        let r = verify_x_switch_identity(&DegreePair::regular(3, 2), &x, 2, &b).unwrap();
        assert!(r.holds());
        let r = verify_x_switch_identity(&DegreePair::regular(3, 1), &ForbiddenGraph::diagonal(3), 3, &b).unwrap();
        assert!(r.holds());
    }

    #[test]
    fn empty_strata() {
        let x = ForbiddenGraph::new([(0, 0)]).unwrap();
        let r = verify_x_switch_identity(&DegreePair::regular(3, 1), &x, 2, &Budget::default()).unwrap();
        // B_1 is non-empty but X lies inside each of its graphs
        assert_eq!((r.forward_graphs, r.reverse_graphs), (0, 2));
        assert!(r.total_reverse.is_zero());
        assert!(r.holds());
    }
}
