//! The switching that destroys one 2-cycle of a loop-free digraph.
//!
//! With ten distinct indices `a, ..., j`, the forward switching removes
//! `E1 = {ba, dc, ij, ji, fe, hg}` and inserts `E2 = {jc, bi, da, ie, fg, hj}`;
//! none of `E3 = {ab, cd, ef, gh, ad, cj, ib, jh, ei, gf}` may be edges, so
//! no other 2-cycle appears or disappears. The relabelling
//! `i<->j, c<->e, b<->h, d<->f, a<->g` maps valid specs to valid specs
//! producing the same graph, so ordered counts are even and are halved.

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{avoid, distinct, in_range, need, rewire, Check, SwitchCountReport, Violation};
use crate::degseq::{BipartiteGraph, DegreePair};
use crate::error::{Error, Result};
use crate::oracle::{stratum_by_two_cycles, Budget, ExactCount};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoCycleSpec {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
    pub e: usize,
    pub f: usize,
    pub g: usize,
    pub h: usize,
    pub i: usize,
    pub j: usize,
}

impl TwoCycleSpec {
    pub fn e1(&self) -> [(usize, usize); 6] {
        let s = self;
        [(s.b, s.a), (s.d, s.c), (s.i, s.j), (s.j, s.i), (s.f, s.e), (s.h, s.g)]
    }

    pub fn e2(&self) -> [(usize, usize); 6] {
        let s = self;
        [(s.j, s.c), (s.b, s.i), (s.d, s.a), (s.i, s.e), (s.f, s.g), (s.h, s.j)]
    }

    pub fn e3(&self) -> [(usize, usize); 10] {
        let s = self;
        [
            (s.a, s.b),
            (s.c, s.d),
            (s.e, s.f),
            (s.g, s.h),
            (s.a, s.d),
            (s.c, s.j),
            (s.i, s.b),
            (s.j, s.h),
            (s.e, s.i),
            (s.g, s.f),
        ]
    }

    /// The partner spec under the relabelling involution.
    pub fn twin(&self) -> Self {
        let s = *self;
        TwoCycleSpec {
            a: s.g,
            b: s.h,
            c: s.e,
            d: s.f,
            e: s.c,
            f: s.d,
            g: s.a,
            h: s.b,
            i: s.j,
            j: s.i,
        }
    }

    fn indices(&self) -> [usize; 10] {
        let s = self;
        [s.a, s.b, s.c, s.d, s.e, s.f, s.g, s.h, s.i, s.j]
    }

    fn check(&self, g: &BipartiteGraph, present: [(usize, usize); 6], absent: [(usize, usize); 6]) -> Check {
        if g.m() != g.n() {
            return Err(Violation::Shape("2-cycle switching needs a square graph".into()));
        }
        in_range(g, &present)?;
        distinct("indices a..j", &self.indices())?;
        for e in present {
            need(g, "E1", e)?;
        }
        for e in absent {
            avoid(g, "E2", e)?;
        }
        for e in self.e3() {
            if g.contains(e.0, e.1) {
                return Err(Violation::Present {
                    clause: "E3",
                    edge: e,
                    why: "is an edge: would create or destroy another 2-cycle",
                });
            }
        }
        Ok(())
    }

    fn check_forward(&self, g: &BipartiteGraph) -> Check {
        self.check(g, self.e1(), self.e2())
    }

    fn check_reverse(&self, g: &BipartiteGraph) -> Check {
        self.check(g, self.e2(), self.e1()).map_err(|v| match v {
            // on the reverse side the roles of E1 and E2 swap
            Violation::Missing { edge, .. } => Violation::Missing { clause: "E2", edge },
            Violation::Present { clause: "E2", edge, why } => Violation::Present { clause: "E1", edge, why },
            other => other,
        })
    }
}

pub fn apply_twocycle_switch(g: &BipartiteGraph, spec: &TwoCycleSpec) -> Result<BipartiteGraph> {
    spec.check_forward(g)?;
    Ok(rewire(g, &spec.e1(), &spec.e2()))
}

pub fn apply_reverse_twocycle_switch(g: &BipartiteGraph, spec: &TwoCycleSpec) -> Result<BipartiteGraph> {
    spec.check_reverse(g)?;
    Ok(rewire(g, &spec.e2(), &spec.e1()))
}

fn arcs(g: &BipartiteGraph) -> Vec<(usize, usize)> {
    g.edges().iter().copied().filter(|&(x, y)| x != y).collect()
}

/// Every valid forward spec on `g` as an ordered tuple.
pub fn ordered_twocycle_switches(g: &BipartiteGraph) -> Vec<TwoCycleSpec> {
    let arcs = arcs(g);
    let mut out = Vec::new();
    for &(i, j) in arcs.iter().filter(|&&(i, j)| g.contains(j, i)) {
        for &(b, a) in &arcs {
            if [a, b].iter().any(|x| [i, j].contains(x)) || g.contains(b, i) || g.contains(a, b) || g.contains(i, b) {
                continue;
            }
            for &(d, c) in &arcs {
                if [c, d].iter().any(|x| [i, j, a, b].contains(x)) || g.contains(j, c) || g.contains(d, a) {
                    continue;
                }
                for &(f, e) in &arcs {
                    if [e, f].iter().any(|x| [i, j, a, b, c, d].contains(x)) || g.contains(i, e) {
                        continue;
                    }
                    for &(h, gg) in &arcs {
                        let spec = TwoCycleSpec { a, b, c, d, e, f, g: gg, h, i, j };
                        if spec.check_forward(g).is_ok() {
                            out.push(spec);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Every valid reverse spec on `g` as an ordered tuple.
pub fn ordered_reverse_twocycle_switches(g: &BipartiteGraph) -> Vec<TwoCycleSpec> {
    let arcs = arcs(g);
    let n = g.n();
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j || g.contains(i, j) || g.contains(j, i) {
                continue;
            }
            let outs = |v: usize| arcs.iter().filter(move |&&(x, _)| x == v).map(|&(_, y)| y);
            let ins = |v: usize| arcs.iter().filter(move |&&(_, y)| y == v).map(|&(x, _)| x);
            for c in outs(j) {
                for b in ins(i) {
                    for e in outs(i) {
                        for h in ins(j) {
                            if distinct("", &[i, j, b, c, e, h]).is_err() {
                                continue;
                            }
                            for &(d, a) in &arcs {
                                for &(f, gg) in &arcs {
                                    let spec = TwoCycleSpec { a, b, c, d, e, f, g: gg, h, i, j };
                                    if spec.check_reverse(g).is_ok() {
                                        out.push(spec);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

fn halve(ordered: usize) -> ExactCount {
    assert_eq!(ordered % 2, 0, "ordered 2-cycle switch count must be even");
    ExactCount::from((ordered / 2) as u128)
}

/// Forward switchings applicable to `g`, each counted once.
pub fn count_twocycle_switches(g: &BipartiteGraph) -> ExactCount {
    halve(ordered_twocycle_switches(g).len())
}

pub fn count_reverse_twocycle_switches(g: &BipartiteGraph) -> ExactCount {
    halve(ordered_reverse_twocycle_switches(g).len())
}

/// Summed forward counts over `T_q` against reverse counts over `T_{q-1}`.
pub fn verify_twocycle_identity(dp: &DegreePair, q: usize, budget: &Budget) -> Result<SwitchCountReport> {
    if q == 0 {
        return Err(Error::Precondition("q must be at least 1".into()));
    }
    let upper = stratum_by_two_cycles(dp, q, budget)?;
    let lower = stratum_by_two_cycles(dp, q - 1, budget)?;
    let fwd: BigUint = upper.par_iter().map(|g| count_twocycle_switches(g).0).sum();
    let rev: BigUint = lower.par_iter().map(|g| count_reverse_twocycle_switches(g).0).sum();
    Ok(SwitchCountReport {
        stratum: q,
        forward_graphs: upper.len(),
        reverse_graphs: lower.len(),
        total_forward: ExactCount(fwd),
        total_reverse: ExactCount(rev),
    })
}
