use std::collections::{BTreeSet, HashSet};

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Draw, Method, SamplerConfig};
use crate::degseq::{erdos_gallai, UndirectedGraph};
use crate::error::{Error, Result};

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Havel-Hakimi realization: the vertex of largest residual degree is
/// joined to the next largest ones.
pub fn greedy_undirected(d: &[u32]) -> Result<UndirectedGraph> {
    if !erdos_gallai(d) {
        return Err(Error::Infeasible(format!("{d:?} is not graphical")));
    }
    let n = d.len();
    let mut res: Vec<u32> = d.to_vec();
    let mut edges = Vec::new();
    loop {
        let mut order: Vec<usize> = (0..n).filter(|&v| res[v] > 0).collect();
        if order.is_empty() {
            break;
        }
        order.sort_by_key(|&v| (std::cmp::Reverse(res[v]), v));
        let v = order[0];
        let k = res[v] as usize;
        if order.len() <= k {
            return Err(Error::Infeasible(format!("{d:?} is not graphical")));
        }
        res[v] = 0;
        for &w in &order[1..=k] {
            res[w] -= 1;
            edges.push(key(v, w));
        }
    }
    UndirectedGraph::new(n, edges)
}

#[derive(Clone, Debug)]
struct Chain {
    edges: Vec<(usize, usize)>,
    set: HashSet<(usize, usize)>,
}

impl Chain {
    /// Two edges `ab, cd` become `ac, bd` or `ad, bc` with equal chance;
    /// loops and repeated edges are rejected.
    fn step(&mut self, rng: &mut ChaCha8Rng) {
        let len = self.edges.len();
        if len < 2 {
            return;
        }
        let x = rng.random_range(0..len);
        let y = rng.random_range(0..len);
        let ((a, b), (mut c, mut d)) = (self.edges[x], self.edges[y]);
        if rng.random_bool(0.5) {
            std::mem::swap(&mut c, &mut d);
        }
        if x == y || a == c || b == d {
            return;
        }
        let (e, f) = (key(a, c), key(b, d));
        if self.set.contains(&e) || self.set.contains(&f) {
            return;
        }
        self.set.remove(&self.edges[x]);
        self.set.remove(&self.edges[y]);
        self.set.insert(e);
        self.set.insert(f);
        self.edges[x] = e;
        self.edges[y] = f;
    }
}

#[derive(Clone, Debug)]
pub struct UndirectedSampler {
    n: usize,
    d: Vec<u32>,
    method: Method,
    burn_in: u64,
    max_attempts: u64,
    stubs: Vec<usize>,
    chain: Option<Chain>,
}

impl UndirectedSampler {
    pub fn new(d: &[u32], cfg: &SamplerConfig) -> Result<Self> {
        if !erdos_gallai(d) {
            return Err(Error::Infeasible(format!("no simple graph has degrees {d:?}")));
        }
        Ok(Self {
            n: d.len(),
            d: d.to_vec(),
            method: cfg.method,
            burn_in: cfg.burn_in,
            max_attempts: cfg.max_attempts,
            stubs: d.iter().enumerate().flat_map(|(v, &k)| std::iter::repeat_n(v, k as usize)).collect(),
            chain: None,
        })
    }

    /// A uniform perfect matching of the half-edges; `None` on the first
    /// loop or repeated edge.
    fn pairing(&self, rng: &mut ChaCha8Rng) -> Option<UndirectedGraph> {
        let mut stubs = self.stubs.clone();
        let mut set = BTreeSet::new();
        while let Some(a) = stubs.pop() {
            let pick = rng.random_range(0..stubs.len());
            let b = stubs.swap_remove(pick);
            if a == b || !set.insert(key(a, b)) {
                return None;
            }
        }
        Some(UndirectedGraph::new(self.n, set).expect("pairing builds a simple graph"))
    }
}

impl Draw for UndirectedSampler {
    type Graph = UndirectedGraph;

    fn draw(&mut self, rng: &mut ChaCha8Rng) -> Result<UndirectedGraph> {
        match self.method {
            Method::ConfigurationRejection => {
                for _ in 0..self.max_attempts {
                    if let Some(g) = self.pairing(rng) {
                        return Ok(g);
                    }
                }
                Err(Error::Sampler(format!(
                    "configuration rejection exhausted {} attempts",
                    self.max_attempts
                )))
            }
            Method::SwapChain => {
                let chain = match &mut self.chain {
                    Some(c) => c,
                    None => {
                        let g = greedy_undirected(&self.d)?;
                        self.chain.insert(Chain {
                            edges: g.edges().iter().copied().collect(),
                            set: g.edges().iter().copied().collect(),
                        })
                    }
                };
                for _ in 0..self.burn_in {
                    chain.step(rng);
                }
                UndirectedGraph::new(self.n, chain.edges.iter().copied())
            }
        }
    }
}
