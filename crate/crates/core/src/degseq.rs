//! Degree-sequence data model: degree pairs, forbidden edge sets, concrete
//! bipartite and undirected graphs, and the statistics derived from them.
//!
//! Indices are 0-based throughout. A digraph on `n` vertices is stored as a
//! bipartite graph on `U ∪ V` with `|U| = |V| = n`: the arc `w_i -> w_j`
//! is the edge `(i, j)`, so loops are the pairs `(i, i)` and 2-cycles are
//! `{(i, j), (j, i)}` with `i != j`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::falling;

/// A bipartite degree sequence `(s, t)` with `sum(s) == sum(t)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawDegreePair")]
pub struct DegreePair {
    s: Vec<u32>,
    t: Vec<u32>,
}

#[derive(Deserialize)]
struct RawDegreePair {
    s: Vec<u32>,
    t: Vec<u32>,
}

impl TryFrom<RawDegreePair> for DegreePair {
    type Error = Error;

    fn try_from(raw: RawDegreePair) -> Result<Self> {
        DegreePair::new(raw.s, raw.t)
    }
}

impl DegreePair {
    pub fn new(s: Vec<u32>, t: Vec<u32>) -> Result<Self> {
        let ss: u64 = s.iter().map(|&x| x as u64).sum();
        let ts: u64 = t.iter().map(|&x| x as u64).sum();
        if ss != ts {
            return Err(Error::InvalidDegreePair(format!(
                "sum(s) = {ss} differs from sum(t) = {ts}"
            )));
        }
        Ok(Self { s, t })
    }

    /// Square pair with `s == t == (d, ..., d)` of length `n`.
    pub fn regular(n: usize, d: u32) -> Self {
        Self {
            s: vec![d; n],
            t: vec![d; n],
        }
    }

    /// The digraph sequence `s = t = d`.
    pub fn symmetric(d: Vec<u32>) -> Self {
        Self { t: d.clone(), s: d }
    }

    pub fn s(&self) -> &[u32] {
        &self.s
    }

    pub fn t(&self) -> &[u32] {
        &self.t
    }

    pub fn m(&self) -> usize {
        self.s.len()
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn is_square(&self) -> bool {
        self.s.len() == self.t.len()
    }

    pub fn total(&self) -> u64 {
        self.s.iter().map(|&x| x as u64).sum()
    }

    pub fn s_max(&self) -> u64 {
        self.s.iter().copied().max().unwrap_or(0) as u64
    }

    pub fn t_max(&self) -> u64 {
        self.t.iter().copied().max().unwrap_or(0) as u64
    }

    /// `W = sum_i s_i t_i`; square pairs only.
    pub fn w(&self) -> Result<u64> {
        self.require_square("W")?;
        Ok(self
            .s
            .iter()
            .zip(&self.t)
            .map(|(&a, &b)| a as u64 * b as u64)
            .sum())
    }

    pub fn require_square(&self, what: &'static str) -> Result<()> {
        if self.is_square() {
            Ok(())
        } else {
            Err(Error::SquareOnly(what, self.m(), self.n()))
        }
    }

    /// `(s - x, t - y)` for the degree sequence `(x, y)` of `forbidden`.
    pub fn minus(&self, forbidden: &ForbiddenGraph) -> Result<DegreePair> {
        let (x, y) = forbidden.degrees(self.m(), self.n())?;
        let sub = |a: &[u32], b: &[u32], side: &str| -> Result<Vec<u32>> {
            a.iter()
                .zip(b)
                .enumerate()
                .map(|(i, (&a, &b))| {
                    a.checked_sub(b).ok_or_else(|| {
                        Error::Infeasible(format!("{side}[{i}]: forbidden degree {b} exceeds {a}"))
                    })
                })
                .collect()
        };
        DegreePair::new(sub(&self.s, &x, "s")?, sub(&self.t, &y, "t")?)
    }

    /// `(s - j, t - j)`; requires every entry to be positive.
    pub fn minus_ones(&self) -> Result<DegreePair> {
        self.require_square("s - j")?;
        if self.s.iter().chain(&self.t).any(|&x| x == 0) {
            return Err(Error::Domain("zero entry in s or t".into()));
        }
        Ok(DegreePair {
            s: self.s.iter().map(|x| x - 1).collect(),
            t: self.t.iter().map(|x| x - 1).collect(),
        })
    }

    /// Gale–Ryser test: is there a simple bipartite graph with these degrees?
    pub fn is_bigraphic(&self) -> bool {
        gale_ryser(&self.s, &self.t)
    }
}

/// Gale–Ryser condition for row sums `rows` and column sums `cols`.
pub fn gale_ryser(rows: &[u32], cols: &[u32]) -> bool {
    let rs: u64 = rows.iter().map(|&x| x as u64).sum();
    let cs: u64 = cols.iter().map(|&x| x as u64).sum();
    if rs != cs {
        return false;
    }
    let mut r: Vec<u32> = rows.to_vec();
    r.sort_unstable_by(|a, b| b.cmp(a));
    let mut lhs = 0u64;
    for (k, &rk) in r.iter().enumerate() {
        if rk == 0 {
            break;
        }
        lhs += rk as u64;
        let rhs: u64 = cols.iter().map(|&c| c.min(k as u32 + 1) as u64).sum();
        if lhs > rhs {
            return false;
        }
    }
    true
}

/// Erdős–Gallai test for an undirected degree sequence.
pub fn erdos_gallai(d: &[u32]) -> bool {
    let total: u64 = d.iter().map(|&x| x as u64).sum();
    if total % 2 == 1 {
        return false;
    }
    let mut v: Vec<u64> = d.iter().map(|&x| x as u64).collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    let n = v.len();
    let mut lhs = 0u64;
    for k in 1..=n {
        lhs += v[k - 1];
        let rhs = (k * (k - 1)) as u64 + v[k..].iter().map(|&x| x.min(k as u64)).sum::<u64>();
        if lhs > rhs {
            return false;
        }
    }
    true
}

/// Every sum appearing in the estimates, computed from its definition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DerivedStats {
    pub m: usize,
    pub n: usize,
    #[serde(rename = "S")]
    pub s_total: u64,
    #[serde(rename = "S_2")]
    pub s2: u64,
    #[serde(rename = "S_3")]
    pub s3: u64,
    #[serde(rename = "T_2")]
    pub t2: u64,
    #[serde(rename = "T_3")]
    pub t3: u64,
    pub s_max: u64,
    pub t_max: u64,
    /// `sum s_i t_i`; present only when `m == n`.
    #[serde(rename = "W", skip_serializing_if = "Option::is_none", default)]
    pub w: Option<u64>,
    /// Undirected view `d = s + t` (square pairs): `D = sum d_i`.
    #[serde(rename = "D", skip_serializing_if = "Option::is_none", default)]
    pub d_total: Option<u64>,
    /// `D_2 = sum (d_i)_2`.
    #[serde(rename = "D_2", skip_serializing_if = "Option::is_none", default)]
    pub d2: Option<u64>,
    /// Orientation view `delta = (t - s) / 2`: `Delta_2 = sum delta_i^2`.
    /// Quarter-integers, exact in binary floating point.
    #[serde(rename = "Delta_2", skip_serializing_if = "Option::is_none", default)]
    pub delta2: Option<f64>,
    /// `V = sum delta_i d_i`.
    #[serde(rename = "V", skip_serializing_if = "Option::is_none", default)]
    pub v: Option<f64>,
}

impl DerivedStats {
    pub fn w(&self) -> Result<u64> {
        self.w.ok_or(Error::SquareOnly("W", self.m, self.n))
    }
}

fn sum_falling(v: &[u32], b: u32) -> u64 {
    v.iter().map(|&x| falling(x as i64, b) as u64).sum()
}

pub fn derive_stats(dp: &DegreePair) -> DerivedStats {
    let square = dp.is_square();
    let (mut d_total, mut d2, mut delta2, mut v) = (None, None, None, None);
    if square {
        let d: Vec<u32> = dp.s.iter().zip(&dp.t).map(|(a, b)| a + b).collect();
        d_total = Some(d.iter().map(|&x| x as u64).sum());
        d2 = Some(sum_falling(&d, 2));
        let delta: Vec<f64> = dp
            .s
            .iter()
            .zip(&dp.t)
            .map(|(&a, &b)| (b as f64 - a as f64) / 2.0)
            .collect();
        delta2 = Some(delta.iter().map(|x| x * x).sum());
        v = Some(delta.iter().zip(&d).map(|(x, &di)| x * di as f64).sum());
    }
    DerivedStats {
        m: dp.m(),
        n: dp.n(),
        s_total: dp.total(),
        s2: sum_falling(&dp.s, 2),
        s3: sum_falling(&dp.s, 3),
        t2: sum_falling(&dp.t, 2),
        t3: sum_falling(&dp.t, 3),
        s_max: dp.s_max(),
        t_max: dp.t_max(),
        w: dp.w().ok(),
        d_total,
        d2,
        delta2,
        v,
    }
}

/// An edge set `X ⊆ U × V`, kept in sorted canonical order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ForbiddenGraph {
    edges: BTreeSet<(usize, usize)>,
}

impl ForbiddenGraph {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Rejects duplicate edges.
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for e in edges {
            if !set.insert(e) {
                return Err(Error::Precondition(format!("duplicate forbidden edge {e:?}")));
            }
        }
        Ok(Self { edges: set })
    }

    /// The perfect matching `{(i, i)}` on `n` vertices (the loops of a digraph).
    pub fn diagonal(n: usize) -> Self {
        Self {
            edges: (0..n).map(|i| (i, i)).collect(),
        }
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn union(&self, other: &ForbiddenGraph) -> ForbiddenGraph {
        ForbiddenGraph {
            edges: self.edges.union(&other.edges).copied().collect(),
        }
    }

    pub fn has_diagonal_edge(&self) -> bool {
        self.edges.iter().any(|&(i, j)| i == j)
    }

    /// Degree vectors `(x, y)` of `X` inside an `m × n` bipartition.
    pub fn degrees(&self, m: usize, n: usize) -> Result<(Vec<u32>, Vec<u32>)> {
        let mut x = vec![0u32; m];
        let mut y = vec![0u32; n];
        for &(i, j) in &self.edges {
            if i >= m || j >= n {
                return Err(Error::Precondition(format!(
                    "forbidden edge ({i}, {j}) outside {m} x {n}"
                )));
            }
            x[i] += 1;
            y[j] += 1;
        }
        Ok((x, y))
    }

    /// Bitmask rows (bit `j` of row `i` set iff `(i, j) ∈ X`).
    pub(crate) fn row_masks(&self, m: usize) -> Vec<u64> {
        let mut rows = vec![0u64; m];
        for &(i, j) in &self.edges {
            if i < m && j < 64 {
                rows[i] |= 1 << j;
            }
        }
        rows
    }
}

/// `F`, `δ_max` and the degree maxima of `X` relative to a degree pair.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ForbiddenStats {
    #[serde(rename = "F")]
    pub f: u64,
    pub delta_max: u64,
    pub x_max: u64,
    pub y_max: u64,
    /// Residual statistics for the subgraph probability; `None` when some
    /// `x_i > s_i` or `y_j > t_j`.
    pub hat: Option<HatStats>,
}

/// `F̂`, `δ̂_max` and `Ŝ` for the residual pair `(s - x, t - y)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HatStats {
    #[serde(rename = "F_hat")]
    pub f_hat: u64,
    pub delta_hat_max: u64,
    pub s_hat_max: u64,
    pub t_hat_max: u64,
    #[serde(rename = "S_hat")]
    pub s_hat: u64,
}

pub fn forbidden_stats(dp: &DegreePair, x: &ForbiddenGraph) -> Result<ForbiddenStats> {
    let (xd, yd) = x.degrees(dp.m(), dp.n())?;
    let f = x
        .edges
        .iter()
        .map(|&(i, j)| dp.s[i] as u64 * dp.t[j] as u64)
        .sum();
    let x_max = xd.iter().copied().max().unwrap_or(0) as u64;
    let y_max = yd.iter().copied().max().unwrap_or(0) as u64;
    let (s_max, t_max) = (dp.s_max(), dp.t_max());
    Ok(ForbiddenStats {
        f,
        delta_max: s_max * t_max + s_max * y_max + x_max * t_max,
        x_max,
        y_max,
        hat: hat_stats(dp, x).ok(),
    })
}

pub fn hat_stats(dp: &DegreePair, x: &ForbiddenGraph) -> Result<HatStats> {
    let (xd, yd) = x.degrees(dp.m(), dp.n())?;
    let residual = dp.minus(x)?;
    let f_hat = x
        .edges
        .iter()
        .map(|&(i, j)| residual.s[i] as u64 * residual.t[j] as u64)
        .sum();
    let x_max = xd.iter().copied().max().unwrap_or(0) as u64;
    let y_max = yd.iter().copied().max().unwrap_or(0) as u64;
    let (sh, th) = (residual.s_max(), residual.t_max());
    Ok(HatStats {
        f_hat,
        delta_hat_max: sh * th + sh * y_max + x_max * th,
        s_hat_max: sh,
        t_hat_max: th,
        s_hat: residual.total(),
    })
}

/// Tail cutoffs `N_0` (forbidden edges) and `N_1` (2-cycles, square only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Cutoffs {
    pub n0: u64,
    pub n1: Option<u64>,
}

pub fn cutoffs(dp: &DegreePair, x: &ForbiddenGraph) -> Result<Cutoffs> {
    let s = dp.total();
    if s == 0 {
        return Err(Error::UndefinedCutoff);
    }
    let sf = s as f64;
    let f = forbidden_stats(dp, x)?.f as f64;
    let n0 = sf.ln().max(42.0 * f / sf).ceil() as u64;
    let n1 = dp.w().ok().map(|w| {
        let w = w as f64;
        sf.ln().max(24.0 * w * w / (sf * sf)).ceil() as u64
    });
    Ok(Cutoffs { n0, n1 })
}

/// A simple bipartite graph on `U ∪ V`, `|U| = m`, `|V| = n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawBipartite")]
pub struct BipartiteGraph {
    m: usize,
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawBipartite {
    m: usize,
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawBipartite> for BipartiteGraph {
    type Error = Error;

    fn try_from(raw: RawBipartite) -> Result<Self> {
        BipartiteGraph::new(raw.m, raw.n, raw.edges)
    }
}

impl BipartiteGraph {
    pub fn new(m: usize, n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i >= m || j >= n {
                return Err(Error::Precondition(format!("edge ({i}, {j}) outside {m} x {n}")));
            }
            if !set.insert((i, j)) {
                return Err(Error::Precondition(format!("duplicate edge ({i}, {j})")));
            }
        }
        Ok(Self { m, n, edges: set })
    }

    /// Digraph on `n` vertices from its arc list.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::new(n, n, arcs)
    }

    /// From bitmask rows: bit `j` of `rows[i]` is the edge `(i, j)`.
    pub fn from_rows(n: usize, rows: &[u64]) -> Self {
        let edges = rows
            .iter()
            .enumerate()
            .flat_map(|(i, &r)| bits(r).map(move |j| (i, j)))
            .collect();
        Self {
            m: rows.len(),
            n,
            edges,
        }
    }

    pub fn rows(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bitmask rows need n <= 64");
        let mut rows = vec![0u64; self.m];
        for &(i, j) in &self.edges {
            rows[i] |= 1 << j;
        }
        rows
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.edges.contains(&(i, j))
    }

    pub fn degrees(&self) -> DegreePair {
        let mut s = vec![0u32; self.m];
        let mut t = vec![0u32; self.n];
        for &(i, j) in &self.edges {
            s[i] += 1;
            t[j] += 1;
        }
        DegreePair { s, t }
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|&&(i, j)| i == j).count()
    }

    pub fn two_cycle_count(&self) -> usize {
        self.edges
            .iter()
            .filter(|&&(i, j)| i < j && self.edges.contains(&(j, i)))
            .count()
    }

    pub fn forbidden_count(&self, x: &ForbiddenGraph) -> usize {
        x.edges.iter().filter(|e| self.edges.contains(e)).count()
    }

    pub(crate) fn edges_mut(&mut self) -> &mut BTreeSet<(usize, usize)> {
        &mut self.edges
    }
}

/// A simple undirected graph on `n` vertices; edges stored as `(i, j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawUndirected")]
pub struct UndirectedGraph {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Deserialize)]
struct RawUndirected {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl TryFrom<RawUndirected> for UndirectedGraph {
    type Error = Error;

    fn try_from(raw: RawUndirected) -> Result<Self> {
        UndirectedGraph::new(raw.n, raw.edges)
    }
}

impl UndirectedGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(Error::Precondition(format!("loop at {a}")));
            }
            if a >= n || b >= n {
                return Err(Error::Precondition(format!("edge ({a}, {b}) outside [0, {n})")));
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::Precondition(format!("duplicate edge ({a}, {b})")));
            }
        }
        Ok(Self { n, edges: set })
    }

    pub fn cycle(n: usize) -> Self {
        Self::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle on n >= 3 vertices")
    }

    pub fn complete(n: usize) -> Self {
        Self {
            n,
            edges: (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<(usize, usize)> {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn degrees(&self) -> Vec<u32> {
        let mut d = vec![0u32; self.n];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    /// Relabel vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        Self {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|&(a, b)| {
                    let (x, y) = (perm[a], perm[b]);
                    (x.min(y), x.max(y))
                })
                .collect(),
        }
    }

    /// Number of connected components with at least one edge.
    pub fn cycle_components(&self) -> usize {
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                parent[ra] = rb;
            }
        }
        let d = self.degrees();
        let mut roots = BTreeSet::new();
        for v in 0..self.n {
            if d[v] > 0 {
                roots.insert(find(&mut parent, v));
            }
        }
        roots.len()
    }
}

/// Indices of set bits, ascending.
pub(crate) fn bits(mut x: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if x == 0 {
            None
        } else {
            let j = x.trailing_zeros() as usize;
            x &= x - 1;
            Some(j)
        }
    })
}
