//! Switchings that clear a small edge set, and the one bounding how many
//! 2-cycles a loop-free digraph is likely to carry.
//!
//! Removal of `A = {u_{j_l} v_{k_l}}`: pick edges `u_{p_l} v_{q_l}` of `G`,
//! pairwise disjoint and disjoint from `A`, with `u_{j_l} v_{q_l}` and
//! `u_{p_l} v_{k_l}` absent. Delete `A` and the picked edges, insert
//! `u_{j_l} v_{q_l}` and `u_{p_l} v_{k_l}`. The result avoids `A`, and the
//! reverse on the same tuple restores `G`.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{avoid, distinct, in_range, need, rewire, Check, SwitchCountReport, Violation};
use crate::degseq::{BipartiteGraph, DegreePair, ForbiddenGraph};
use crate::error::{Error, Result};
use crate::oracle::{stratum, Budget, ExactCount};

/// Largest `|A|` handled by the removal switching.
pub const MAX_REMOVAL: usize = 4;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RemovalSpec {
    /// The edges of `A`, as `(j_l, k_l)`.
    pub removed: Vec<(usize, usize)>,
    /// The partner edges `(p_l, q_l)`.
    pub partners: Vec<(usize, usize)>,
}

impl RemovalSpec {
    fn inserted(&self) -> Vec<(usize, usize)> {
        self.removed
            .iter()
            .zip(&self.partners)
            .flat_map(|(&(j, k), &(p, q))| [(j, q), (p, k)])
            .collect()
    }

    fn old(&self) -> Vec<(usize, usize)> {
        self.removed.iter().chain(&self.partners).copied().collect()
    }

    fn shape(&self, g: &BipartiteGraph) -> Check {
        if self.removed.len() != self.partners.len() {
            return Err(Violation::Shape("one partner edge per removed edge".into()));
        }
        if self.removed.len() > MAX_REMOVAL {
            return Err(Violation::Shape(format!("at most {MAX_REMOVAL} edges can be removed at once")));
        }
        in_range(g, &self.old())?;
        let ps: Vec<usize> = self.partners.iter().map(|e| e.0).collect();
        let qs: Vec<usize> = self.partners.iter().map(|e| e.1).collect();
        distinct("partner rows p", &ps)?;
        distinct("partner columns q", &qs)?;
        if let Some(&(p, q)) = self.partners.iter().find(|&&(p, q)| self.removed.iter().any(|&(j, k)| p == j || q == k)) {
            return Err(Violation::Shape(format!("partner u_{p} v_{q} touches a removed edge")));
        }
        Ok(())
    }

    fn check_forward(&self, g: &BipartiteGraph) -> Check {
        self.shape(g)?;
        for &e in &self.removed {
            need(g, "A in G", e)?;
        }
        for &e in &self.partners {
            need(g, "partner in G", e)?;
        }
        for e in self.inserted() {
            avoid(g, "inserted pair", e)?;
        }
        Ok(())
    }

    fn check_reverse(&self, g: &BipartiteGraph) -> Check {
        self.shape(g)?;
        for &e in &self.removed {
            avoid(g, "A disjoint from G'", e)?;
        }
        for e in self.inserted() {
            need(g, "inserted pair in G'", e)?;
        }
        for &e in &self.partners {
            avoid(g, "partner", e)?;
        }
        Ok(())
    }
}

fn removal_set(a: &ForbiddenGraph) -> Result<Vec<(usize, usize)>> {
    if a.len() > MAX_REMOVAL {
        return Err(Error::Precondition(format!(
            "removal switching handles at most {MAX_REMOVAL} edges, got {}",
            a.len()
        )));
    }
    Ok(a.edges().iter().copied().collect())
}

pub fn apply_removal_switch(g: &BipartiteGraph, spec: &RemovalSpec) -> Result<BipartiteGraph> {
    spec.check_forward(g)?;
    Ok(rewire(g, &spec.old(), &spec.inserted()))
}

pub fn apply_reverse_removal_switch(g: &BipartiteGraph, spec: &RemovalSpec) -> Result<BipartiteGraph> {
    spec.check_reverse(g)?;
    Ok(rewire(g, &spec.inserted(), &spec.old()))
}

fn forward_specs(g: &BipartiteGraph, removed: &[(usize, usize)], limit: usize) -> Vec<RemovalSpec> {
    fn rec(g: &BipartiteGraph, spec: &mut RemovalSpec, edges: &[(usize, usize)], limit: usize, out: &mut Vec<RemovalSpec>) {
        let l = spec.partners.len();
        if out.len() >= limit {
            return;
        }
        if l == spec.removed.len() {
            debug_assert!(spec.check_forward(g).is_ok());
            out.push(spec.clone());
            return;
        }
        let (j, k) = spec.removed[l];
        for &(p, q) in edges {
            if spec.removed.iter().any(|&(jj, kk)| p == jj || q == kk)
                || spec.partners.iter().any(|&(pp, qq)| p == pp || q == qq)
                || g.contains(j, q)
                || g.contains(p, k)
            {
                continue;
            }
            spec.partners.push((p, q));
            rec(g, spec, edges, limit, out);
            spec.partners.pop();
        }
    }
    if !removed.iter().all(|&(j, k)| g.contains(j, k)) {
        return Vec::new();
    }
    let edges: Vec<_> = g.edges().iter().copied().collect();
    let mut spec = RemovalSpec { removed: removed.to_vec(), partners: Vec::new() };
    let mut out = Vec::new();
    rec(g, &mut spec, &edges, limit, &mut out);
    out
}

/// Forward switchings removing all of `a` from `g`; zero unless `a ⊆ g`.
pub fn count_removal_switches(g: &BipartiteGraph, a: &ForbiddenGraph) -> Result<ExactCount> {
    let removed = removal_set(a)?;
    Ok(ExactCount::from(forward_specs(g, &removed, usize::MAX).len() as u128))
}

/// Reverse switchings putting all of `a` back into `g`; zero unless `g`
/// avoids `a`.
pub fn count_reverse_removal_switches(g: &BipartiteGraph, a: &ForbiddenGraph) -> Result<ExactCount> {
    fn rec(g: &BipartiteGraph, spec: &mut RemovalSpec) -> u128 {
        let l = spec.partners.len();
        if l == spec.removed.len() {
            debug_assert!(spec.check_reverse(g).is_ok());
            return 1;
        }
        let (j, k) = spec.removed[l];
        let mut total = 0;
        for q in (0..g.n()).filter(|&q| g.contains(j, q)) {
            for p in (0..g.m()).filter(|&p| g.contains(p, k)) {
                if spec.removed.iter().any(|&(jj, kk)| p == jj || q == kk)
                    || spec.partners.iter().any(|&(pp, qq)| p == pp || q == qq)
                    || g.contains(p, q)
                {
                    continue;
                }
                spec.partners.push((p, q));
                total += rec(g, spec);
                spec.partners.pop();
            }
        }
        total
    }
    let removed = removal_set(a)?;
    if removed.iter().any(|&(j, k)| g.contains(j, k)) {
        return Ok(ExactCount::from(0));
    }
    let mut spec = RemovalSpec { removed, partners: Vec::new() };
    Ok(ExactCount::from(rec(g, &mut spec)))
}

/// Applies the first forward switching (in edge order) that clears
/// `loop_set` from `g`. `None` when no switching applies.
pub fn loopfree_removal_switch(g: &BipartiteGraph, loop_set: &ForbiddenGraph) -> Result<Option<(RemovalSpec, BipartiteGraph)>> {
    let removed = removal_set(loop_set)?;
    let Some(spec) = forward_specs(g, &removed, 1).pop() else {
        return Ok(None);
    };
    let h = apply_removal_switch(g, &spec)?;
    Ok(Some((spec, h)))
}

/// Forward counts over graphs containing all of `a` against reverse
/// counts over graphs avoiding `a`.
pub fn verify_removal_identity(dp: &DegreePair, a: &ForbiddenGraph, budget: &Budget) -> Result<SwitchCountReport> {
    removal_set(a)?;
    let upper = stratum(dp, a, a.len(), budget)?;
    let lower = stratum(dp, a, 0, budget)?;
    let fwd = upper
        .par_iter()
        .map(|g| count_removal_switches(g, a).map(|c| c.0))
        .try_reduce(BigUint::default, |x, y| Ok(x + y))?;
    let rev = lower
        .par_iter()
        .map(|g| count_reverse_removal_switches(g, a).map(|c| c.0))
        .try_reduce(BigUint::default, |x, y| Ok(x + y))?;
    Ok(SwitchCountReport {
        stratum: a.len(),
        forward_graphs: upper.len(),
        reverse_graphs: lower.len(),
        total_forward: ExactCount(fwd),
        total_reverse: ExactCount(rev),
    })
}

/// Removes the 2-cycle on `i, j` using edges `u_a v_b` and `u_c v_d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoCycleBoundSpec {
    pub i: usize,
    pub j: usize,
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl TwoCycleBoundSpec {
    fn check(&self, g: &BipartiteGraph, kept: &ForbiddenGraph) -> Check {
        let s = *self;
        in_range(g, &[(s.i, s.j), (s.j, s.i), (s.a, s.b), (s.c, s.d)])?;
        if s.i == s.j {
            return Err(Violation::NotDistinct("i and j"));
        }
        need(g, "u_i v_j", (s.i, s.j))?;
        need(g, "u_j v_i", (s.j, s.i))?;
        need(g, "u_a v_b", (s.a, s.b))?;
        need(g, "u_c v_d", (s.c, s.d))?;
        if (s.a, s.b) == (s.c, s.d) {
            return Err(Violation::NotDistinct("edges u_a v_b and u_c v_d"));
        }
        for e in [(s.a, s.b), (s.c, s.d)] {
            if kept.contains(e.0, e.1) {
                return Err(Violation::Present { clause: "K", edge: e, why: "is a protected edge" });
            }
        }
        for (clause, e) in [
            ("u_i v_b", (s.i, s.b)),
            ("u_b v_i", (s.b, s.i)),
            ("u_a v_i", (s.a, s.i)),
            ("u_i v_a", (s.i, s.a)),
            ("u_j v_d", (s.j, s.d)),
            ("u_d v_j", (s.d, s.j)),
            ("u_c v_j", (s.c, s.j)),
            ("u_j v_c", (s.j, s.c)),
        ] {
            avoid(g, clause, e)?;
        }
        Ok(())
    }
}

/// Removes `ij, ji, ab, cd` and inserts `ib, jd, ai, cj`. Edges of `kept`
/// may not be used as `ab` or `cd`.
pub fn apply_twocycle_bound_switch(g: &BipartiteGraph, kept: &ForbiddenGraph, spec: &TwoCycleBoundSpec) -> Result<BipartiteGraph> {
    spec.check(g, kept)?;
    let s = spec;
    Ok(rewire(
        g,
        &[(s.i, s.j), (s.j, s.i), (s.a, s.b), (s.c, s.d)],
        &[(s.i, s.b), (s.j, s.d), (s.a, s.i), (s.c, s.j)],
    ))
}

/// Ordered choices of `(ab, cd)` removing the 2-cycle on `i, j`.
pub fn count_twocycle_bound_switches(g: &BipartiteGraph, kept: &ForbiddenGraph, i: usize, j: usize) -> ExactCount {
    let edges: Vec<_> = g.edges().iter().copied().collect();
    let mut count = 0u128;
    for &(a, b) in &edges {
        for &(c, d) in &edges {
            if (TwoCycleBoundSpec { i, j, a, b, c, d }).check(g, kept).is_ok() {
                count += 1;
            }
        }
    }
    ExactCount::from(count)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::stratum_by_two_cycles;

    #[test]
    fn clears_a_single_edge() {
        let g = BipartiteGraph::new(2, 2, [(0, 0), (1, 1)]).unwrap();
        let a = ForbiddenGraph::new([(0, 0)]).unwrap();
        let spec = RemovalSpec { removed: vec![(0, 0)], partners: vec![(1, 1)] };
        let h = apply_removal_switch(&g, &spec).unwrap();
        assert_eq!(h.edges().iter().copied().collect::<Vec<_>>(), vec![(0, 1), (1, 0)]);
        assert_eq!(apply_reverse_removal_switch(&h, &spec).unwrap(), g);
        assert_eq!(count_removal_switches(&g, &a).unwrap(), ExactCount::from(1));
        assert_eq!(count_reverse_removal_switches(&h, &a).unwrap(), ExactCount::from(1));
        let (found, out) = loopfree_removal_switch(&g, &a).unwrap().unwrap();
        assert_eq!((found, out), (spec, h));
    }

    #[test]
    fn removes_every_loop() {
        let g = BipartiteGraph::from_arcs(6, [(0, 0), (1, 1), (2, 3), (3, 4), (4, 5), (5, 2)]).unwrap();
        let loops = ForbiddenGraph::new([(0, 0), (1, 1)]).unwrap();
        let (_, h) = loopfree_removal_switch(&g, &loops).unwrap().unwrap();
        assert_eq!(h.loop_count(), 0);
        assert_eq!(h.degrees(), g.degrees());
    }

    #[test]
    fn too_many_edges() {
        let g = BipartiteGraph::from_arcs(5, (0..5).map(|i| (i, i))).unwrap();
        assert!(matches!(
            count_removal_switches(&g, &ForbiddenGraph::diagonal(5)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn removal_identities() {
        let b = Budget::default();
        for (dp, a) in [
            (DegreePair::regular(4, 2), ForbiddenGraph::new([(0, 0)]).unwrap()),
            (DegreePair::regular(4, 2), ForbiddenGraph::new([(0, 0), (1, 1)]).unwrap()),
            (DegreePair::regular(5, 2), ForbiddenGraph::new([(0, 0), (0, 1)]).unwrap()),
            (DegreePair::regular(6, 1), ForbiddenGraph::diagonal(4)),
        ] {
            let r = verify_removal_identity(&dp, &a, &b).unwrap();
            assert!(r.holds(), "{dp:?} {a:?} {r:?}");
        }
    }

    #[test]
    fn bound_switch_drops_one_cycle() {
        let dp = DegreePair::regular(5, 2);
        for q in 1..=2 {
            for g in stratum_by_two_cycles(&dp, q, &Budget::default()).unwrap() {
                let kept = ForbiddenGraph::new(g.edges().iter().copied().filter(|&(x, y)| g.contains(y, x))).unwrap();
                for &(i, j) in kept.edges() {
                    let edges: Vec<_> = g.edges().iter().copied().collect();
                    let mut seen = 0u128;
                    for &(a, bb) in &edges {
                        for &(c, d) in &edges {
                            let spec = TwoCycleBoundSpec { i, j, a, b: bb, c, d };
                            if let Ok(h) = apply_twocycle_bound_switch(&g, &kept, &spec) {
                                seen += 1;
                                assert_eq!(h.two_cycle_count(), q - 1);
                                assert_eq!(h.loop_count(), 0);
                                assert_eq!(h.degrees(), dp);
                            }
                        }
                    }
                    assert_eq!(ExactCount::from(seen), count_twocycle_bound_switches(&g, &kept, i, j));
                }
            }
        }
    }
}
