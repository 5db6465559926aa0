//! Depth-first enumeration of `B(s, t)` over bitmask rows.
//!
//! Rows are filled in decreasing order of `s_i` (ties by index); each row's
//! neighbour set is chosen among the columns with residual degree left, in
//! lexicographic order. After each row the residual pair is tested with the
//! Gale–Ryser condition, which is necessary for completion even when some
//! cells are forbidden. The first row's choices are split across threads
//! and the partial results recombined in choice order.

use num_bigint::BigUint;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::moments::permutations;
use super::ryser::ryser_rows;
use super::{check, Budget, ExactCount, ExactRational, MAX_PERMUTATION_N};
use crate::degseq::{BipartiteGraph, DegreePair, ForbiddenGraph};
use crate::error::{Error, Result};
use crate::estimate::estimate_bipartite;

struct Space {
    n: usize,
    order: Vec<usize>,
    s: Vec<u32>,
    forbidden: Vec<u64>,
    prune: bool,
}

fn setup(dp: &DegreePair, forbidden: &ForbiddenGraph, budget: &Budget, prune: bool) -> Result<Option<Space>> {
    check("rows", 64, dp.m())?;
    check("columns", 64, dp.n())?;
    budget.check_edges(dp.total() as usize)?;
    if dp.total() > 0 {
        budget.check_graphs(estimate_bipartite(dp)?.log_value)?;
    }
    forbidden.degrees(dp.m(), dp.n())?;
    if !dp.is_bigraphic() {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..dp.m()).collect();
    order.sort_by(|&a, &b| dp.s()[b].cmp(&dp.s()[a]));
    Ok(Some(Space {
        n: dp.n(),
        order,
        s: dp.s().to_vec(),
        forbidden: forbidden.row_masks(dp.m()),
        prune,
    }))
}

impl Space {
    /// Gale–Ryser on the rows after `depth` against the residual columns.
    fn feasible(&self, depth: usize, cols: &[u32]) -> bool {
        let mut lhs = 0u32;
        for (k, &row) in self.order[depth..].iter().enumerate() {
            let r = self.s[row];
            if r == 0 {
                break;
            }
            lhs += r;
            let rhs: u32 = cols.iter().map(|&c| c.min(k as u32 + 1)).sum();
            if lhs > rhs {
                return false;
            }
        }
        true
    }

    /// Every admissible neighbour set for the row at `depth`, lexicographic.
    fn choices(&self, depth: usize, cols: &[u32]) -> Vec<u64> {
        let row = self.order[depth];
        let cand: Vec<usize> = (0..self.n)
            .filter(|&j| cols[j] > 0 && self.forbidden[row] >> j & 1 == 0)
            .collect();
        let k = self.s[row] as usize;
        let mut out = Vec::new();
        let mut stack = Vec::with_capacity(k);
        fn rec(cand: &[usize], start: usize, k: usize, stack: &mut Vec<usize>, out: &mut Vec<u64>) {
            if stack.len() == k {
                out.push(stack.iter().fold(0u64, |m, &j| m | 1 << j));
                return;
            }
            let need = k - stack.len();
            for idx in start..=cand.len().saturating_sub(need) {
                if idx >= cand.len() {
                    break;
                }
                stack.push(cand[idx]);
                rec(cand, idx + 1, k, stack, out);
                stack.pop();
            }
        }
        rec(&cand, 0, k, &mut stack, &mut out);
        out
    }

    fn place(&self, depth: usize, mask: u64, rows: &mut [u64], cols: &mut [u32]) -> bool {
        rows[self.order[depth]] = mask;
        for j in crate::degseq::bits(mask) {
            cols[j] -= 1;
        }
        !self.prune || self.feasible(depth + 1, cols)
    }

    fn unplace(&self, depth: usize, mask: u64, rows: &mut [u64], cols: &mut [u32]) {
        rows[self.order[depth]] = 0;
        for j in crate::degseq::bits(mask) {
            cols[j] += 1;
        }
    }

    fn dfs<F: FnMut(&[u64])>(&self, depth: usize, rows: &mut [u64], cols: &mut [u32], visit: &mut F) {
        if depth == self.order.len() {
            if cols.iter().all(|&c| c == 0) {
                visit(rows);
            }
            return;
        }
        for mask in self.choices(depth, cols) {
            if self.place(depth, mask, rows, cols) {
                self.dfs(depth + 1, rows, cols, visit);
            }
            self.unplace(depth, mask, rows, cols);
        }
    }
}

/// Fold over every graph of `B(s, t)` avoiding `forbidden`, visiting each
/// graph as bitmask rows indexed by the original row order.
pub(crate) fn fold_bipartite<T, I, F, R>(
    dp: &DegreePair,
    forbidden: &ForbiddenGraph,
    budget: &Budget,
    prune: bool,
    init: I,
    fold: F,
    reduce: R,
) -> Result<T>
where
    T: Send,
    I: Fn() -> T + Sync,
    F: Fn(&mut T, &[u64]) + Sync,
    R: Fn(T, T) -> T,
{
    let Some(space) = setup(dp, forbidden, budget, prune)? else {
        return Ok(init());
    };
    let m = dp.m();
    let root_cols = dp.t().to_vec();
    if m == 0 {
        let mut acc = init();
        if root_cols.iter().all(|&c| c == 0) {
            fold(&mut acc, &[]);
        }
        return Ok(acc);
    }
    let first = space.choices(0, &root_cols);
    let parts: Vec<T> = first
        .par_iter()
        .map(|&mask| {
            let mut acc = init();
            let mut rows = vec![0u64; m];
            let mut cols = root_cols.clone();
            if space.place(0, mask, &mut rows, &mut cols) {
                space.dfs(1, &mut rows, &mut cols, &mut |r| fold(&mut acc, r));
            }
            acc
        })
        .collect();
    Ok(parts.into_iter().fold(init(), reduce))
}

fn count_with(dp: &DegreePair, x: &ForbiddenGraph, budget: &Budget, prune: bool) -> Result<ExactCount> {
    let c = fold_bipartite(dp, x, budget, prune, || 0u128, |acc, _| *acc += 1, |a, b| a + b)?;
    Ok(ExactCount::from(c))
}

/// `B(s, t, X)`: graphs with degrees `(s, t)` containing no edge of `X`.
pub fn count_bipartite(dp: &DegreePair, x: &ForbiddenGraph, budget: &Budget) -> Result<ExactCount> {
    count_with(dp, x, budget, true)
}

/// As [`count_bipartite`] without feasibility pruning.
pub fn count_bipartite_unpruned(dp: &DegreePair, x: &ForbiddenGraph, budget: &Budget) -> Result<ExactCount> {
    count_with(dp, x, budget, false)
}

fn x_hits(rows: &[u64], x: &[u64]) -> usize {
    rows.iter().zip(x).map(|(r, m)| (r & m).count_ones() as usize).sum()
}

/// `|B_f|` for `f = 0..=|X|`, where `B_f` holds exactly `f` edges of `X`.
pub fn count_bipartite_stratified(dp: &DegreePair, x: &ForbiddenGraph, budget: &Budget) -> Result<Vec<ExactCount>> {
    let xr = x.row_masks(dp.m());
    let len = x.len() + 1;
    let counts = fold_bipartite(
        dp,
        &ForbiddenGraph::empty(),
        budget,
        true,
        || vec![0u128; len],
        |acc, rows| acc[x_hits(rows, &xr)] += 1,
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )?;
    Ok(counts.into_iter().map(ExactCount::from).collect())
}

pub(crate) fn two_cycles(rows: &[u64]) -> usize {
    let mut q = 0;
    for (i, &r) in rows.iter().enumerate() {
        for j in crate::degseq::bits(r >> (i + 1)).map(|b| b + i + 1) {
            if j < rows.len() && rows[j] >> i & 1 == 1 {
                q += 1;
            }
        }
    }
    q
}

/// `R(s, t)`: loop-free digraphs.
pub fn count_loopfree(dp: &DegreePair, budget: &Budget) -> Result<ExactCount> {
    dp.require_square("loop-free count")?;
    count_bipartite(dp, &ForbiddenGraph::diagonal(dp.n()), budget)
}

/// Digraphs with neither loops nor 2-cycles.
pub fn count_oriented(dp: &DegreePair, budget: &Budget) -> Result<ExactCount> {
    dp.require_square("oriented count")?;
    let c = fold_bipartite(
        dp,
        &ForbiddenGraph::diagonal(dp.n()),
        budget,
        true,
        || 0u128,
        |acc, rows| {
            if two_cycles(rows) == 0 {
                *acc += 1
            }
        },
        |a, b| a + b,
    )?;
    Ok(ExactCount::from(c))
}

/// Every graph in `B(s, t)` avoiding `forbidden`, in enumeration order.
pub fn bipartite_graphs(dp: &DegreePair, forbidden: &ForbiddenGraph, budget: &Budget) -> Result<Vec<BipartiteGraph>> {
    let n = dp.n();
    fold_bipartite(
        dp,
        forbidden,
        budget,
        true,
        Vec::new,
        |acc, rows| acc.push(BipartiteGraph::from_rows(n, rows)),
        |mut a, b| {
            a.extend(b);
            a
        },
    )
}

/// The stratum `B_f`: graphs of `B(s, t)` with exactly `f` edges of `X`.
pub fn stratum(dp: &DegreePair, x: &ForbiddenGraph, f: usize, budget: &Budget) -> Result<Vec<BipartiteGraph>> {
    let xr = x.row_masks(dp.m());
    let n = dp.n();
    fold_bipartite(
        dp,
        &ForbiddenGraph::empty(),
        budget,
        true,
        Vec::new,
        |acc, rows| {
            if x_hits(rows, &xr) == f {
                acc.push(BipartiteGraph::from_rows(n, rows))
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )
}

/// `T_q`: loop-free digraphs with exactly `q` 2-cycles.
pub fn stratum_by_two_cycles(dp: &DegreePair, q: usize, budget: &Budget) -> Result<Vec<BipartiteGraph>> {
    dp.require_square("2-cycle stratum")?;
    let n = dp.n();
    fold_bipartite(
        dp,
        &ForbiddenGraph::diagonal(n),
        budget,
        true,
        Vec::new,
        |acc, rows| {
            if two_cycles(rows) == q {
                acc.push(BipartiteGraph::from_rows(n, rows))
            }
        },
        |mut a, b| {
            a.extend(b);
            a
        },
    )
}

/// Events on a uniform element of `B(s, t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Event {
    LoopFree,
    /// No 2-cycle, conditioned on having no loop.
    TwocycleFree,
    ContainsX,
    AvoidsX,
}

impl Event {
    /// `None` when the graph falls outside the conditioning set.
    pub fn holds(self, g: &BipartiteGraph, x: &ForbiddenGraph) -> Option<bool> {
        match self {
            Event::LoopFree => Some(g.loop_count() == 0),
            Event::TwocycleFree => (g.loop_count() == 0).then(|| g.two_cycle_count() == 0),
            Event::ContainsX => Some(x.edges().iter().all(|&(i, j)| g.contains(i, j))),
            Event::AvoidsX => Some(g.forbidden_count(x) == 0),
        }
    }

    fn holds_rows(self, rows: &[u64], x: &[u64]) -> Option<bool> {
        let loops = rows.iter().enumerate().any(|(i, r)| i < 64 && r >> i & 1 == 1);
        match self {
            Event::LoopFree => Some(!loops),
            Event::TwocycleFree => (!loops).then(|| two_cycles(rows) == 0),
            Event::ContainsX => Some(rows.iter().zip(x).all(|(r, m)| r & m == *m)),
            Event::AvoidsX => Some(x_hits(rows, x) == 0),
        }
    }

    pub fn needs_square(self) -> bool {
        matches!(self, Event::LoopFree | Event::TwocycleFree)
    }
}

/// Exact probability of `event` under the uniform measure (conditioned
/// where the event says so).
pub fn exact_event_probability(dp: &DegreePair, event: Event, x: &ForbiddenGraph, budget: &Budget) -> Result<ExactRational> {
    if event.needs_square() {
        dp.require_square("loop events")?;
    }
    let xr = x.row_masks(dp.m());
    let (hits, total) = fold_bipartite(
        dp,
        &ForbiddenGraph::empty(),
        budget,
        true,
        || (0u128, 0u128),
        |acc, rows| {
            if let Some(h) = event.holds_rows(rows, &xr) {
                acc.1 += 1;
                acc.0 += h as u128;
            }
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    )?;
    if total == 0 {
        return Err(Error::EmptySpace(format!("no graph in the conditioning set for {event:?}")));
    }
    ExactRational::new(BigUint::from(hits), BigUint::from(total))
}

/// Mean permanent over `B(s, t)`, by Ryser on every matrix.
pub fn exact_expected_permanent(dp: &DegreePair, budget: &Budget) -> Result<ExactRational> {
    dp.require_square("expected permanent")?;
    check("n", budget.max_ryser_n, dp.n())?;
    let n = dp.n();
    let (count, sum) = fold_bipartite(
        dp,
        &ForbiddenGraph::empty(),
        budget,
        true,
        || (0u128, BigUint::zero()),
        |acc, rows| {
            acc.0 += 1;
            acc.1 += ryser_rows(rows, n);
        },
        |a, b| (a.0 + b.0, a.1 + b.1),
    )?;
    if count == 0 {
        return Err(Error::EmptySpace("B(s, t) is empty".into()));
    }
    ExactRational::new(sum, BigUint::from(count))
}

/// Mean permanent as `sum_sigma B(s - 1, t - 1, X_sigma) / B(s, t)`, where
/// `X_sigma` is the transversal of `sigma`: a graph contains the transversal
/// iff removing it leaves a graph of the reduced pair avoiding it.
pub fn expected_permanent_by_transversals(dp: &DegreePair, budget: &Budget) -> Result<ExactRational> {
    dp.require_square("expected permanent")?;
    let n = dp.n();
    check("n", MAX_PERMUTATION_N, n)?;
    let total = count_bipartite(dp, &ForbiddenGraph::empty(), budget)?;
    if total.is_zero() {
        return Err(Error::EmptySpace("B(s, t) is empty".into()));
    }
    let mut sum = BigUint::zero();
    if let Ok(reduced) = dp.minus_ones() {
        for sigma in permutations(n) {
            let x = ForbiddenGraph::new(sigma.iter().enumerate().map(|(i, &j)| (i, j)))?;
            sum += count_bipartite(&reduced, &x, budget)?.0;
        }
    }
    ExactRational::new(sum, total.0)
}
