use std::collections::HashSet;

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Draw, Method, SamplerConfig};
use crate::degseq::{BipartiteGraph, DegreePair};
use crate::error::{Error, Result};

/// A realization of `(s, t)`: each row in decreasing-degree order is joined
/// to the columns of largest residual degree. Succeeds exactly when the
/// pair is bigraphic.
pub fn greedy_bipartite(dp: &DegreePair) -> Result<BipartiteGraph> {
    let mut res: Vec<u32> = dp.t().to_vec();
    let mut rows: Vec<usize> = (0..dp.m()).collect();
    rows.sort_by_key(|&i| std::cmp::Reverse(dp.s()[i]));
    let mut edges = Vec::with_capacity(dp.total() as usize);
    for i in rows {
        let mut cols: Vec<usize> = (0..dp.n()).filter(|&j| res[j] > 0).collect();
        cols.sort_by_key(|&j| std::cmp::Reverse(res[j]));
        let k = dp.s()[i] as usize;
        if cols.len() < k {
            return Err(Error::Infeasible("degree pair is not bigraphic".into()));
        }
        for &j in &cols[..k] {
            res[j] -= 1;
            edges.push((i, j));
        }
    }
    BipartiteGraph::new(dp.m(), dp.n(), edges)
}

#[derive(Clone, Debug)]
struct Chain {
    edges: Vec<(usize, usize)>,
    set: HashSet<(usize, usize)>,
}

impl Chain {
    fn new(g: &BipartiteGraph) -> Self {
        Self {
            edges: g.edges().iter().copied().collect(),
            set: g.edges().clone().into_iter().collect(),
        }
    }

    /// Propose `ab, cd -> ad, cb`; rejected proposals leave the graph as is.
    fn step(&mut self, rng: &mut ChaCha8Rng) {
        let len = self.edges.len();
        if len < 2 {
            return;
        }
        let x = rng.random_range(0..len);
        let y = rng.random_range(0..len);
        let ((a, b), (c, d)) = (self.edges[x], self.edges[y]);
        if a == c || b == d || self.set.contains(&(a, d)) || self.set.contains(&(c, b)) {
            return;
        }
        self.set.remove(&(a, b));
        self.set.remove(&(c, d));
        self.set.insert((a, d));
        self.set.insert((c, b));
        self.edges[x] = (a, d);
        self.edges[y] = (c, b);
    }
}

#[derive(Clone, Debug)]
pub struct BipartiteSampler {
    dp: DegreePair,
    method: Method,
    burn_in: u64,
    max_attempts: u64,
    stubs: Vec<usize>,
    chain: Option<Chain>,
}

impl BipartiteSampler {
    pub fn new(dp: &DegreePair, cfg: &SamplerConfig) -> Result<Self> {
        if !dp.is_bigraphic() {
            return Err(Error::Infeasible(format!(
                "no bipartite graph has degrees s = {:?}, t = {:?}",
                dp.s(),
                dp.t()
            )));
        }
        let stubs = dp.t().iter().enumerate().flat_map(|(j, &k)| std::iter::repeat_n(j, k as usize)).collect();
        Ok(Self {
            dp: dp.clone(),
            method: cfg.method,
            burn_in: cfg.burn_in,
            max_attempts: cfg.max_attempts,
            stubs,
            chain: None,
        })
    }

    /// One uniformly random pairing of row and column half-edges; `None`
    /// as soon as a repeated edge appears.
    fn pairing(&self, rng: &mut ChaCha8Rng) -> Option<BipartiteGraph> {
        let mut stubs = self.stubs.clone();
        let mut left = stubs.len();
        let mut set = std::collections::BTreeSet::new();
        for (i, &k) in self.dp.s().iter().enumerate() {
            for _ in 0..k {
                let pick = rng.random_range(0..left);
                let j = stubs[pick];
                stubs.swap(pick, left - 1);
                left -= 1;
                if !set.insert((i, j)) {
                    return None;
                }
            }
        }
        Some(BipartiteGraph::new(self.dp.m(), self.dp.n(), set).expect("pairing stays in range"))
    }
}

impl Draw for BipartiteSampler {
    type Graph = BipartiteGraph;

    fn draw(&mut self, rng: &mut ChaCha8Rng) -> Result<BipartiteGraph> {
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
                    None => self.chain.insert(Chain::new(&greedy_bipartite(&self.dp)?)),
                };
                for _ in 0..self.burn_in {
                    chain.step(rng);
                }
                BipartiteGraph::new(self.dp.m(), self.dp.n(), chain.edges.iter().copied())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::{sample_bipartite, sample_bipartite_many, stream_rng};

    #[test]
    fn greedy_realizes() {
        for dp in [
            DegreePair::regular(5, 2),
            DegreePair::new(vec![3, 1, 1], vec![2, 2, 1]).unwrap(),
            DegreePair::new(vec![0, 4], vec![1, 1, 1, 1]).unwrap(),
        ] {
            assert_eq!(greedy_bipartite(&dp).unwrap().degrees(), dp);
        }
        let bad = DegreePair::new(vec![2], vec![2]).unwrap();
        assert!(matches!(greedy_bipartite(&bad), Err(Error::Infeasible(_))));
    }

    #[test]
    fn both_methods_keep_degrees() {
        let dp = DegreePair::regular(3, 2);
        for method in [Method::ConfigurationRejection, Method::SwapChain] {
            let cfg = SamplerConfig::new(7, method, 50, 40);
            for g in sample_bipartite_many(&dp, &cfg).unwrap() {
                assert_eq!(g.degrees(), dp);
                assert_eq!(g.len(), 6);
            }
        }
    }

    #[test]
    fn infeasible_pair() {
        let cfg = SamplerConfig::new(1, Method::ConfigurationRejection, 0, 1);
        let dp = DegreePair::new(vec![2], vec![2]).unwrap();
        assert!(matches!(sample_bipartite(&dp, &cfg), Err(Error::Infeasible(_))));
    }

    #[test]
    fn reproducible() {
        let dp = DegreePair::regular(6, 2);
        for method in [Method::ConfigurationRejection, Method::SwapChain] {
            let cfg = SamplerConfig::new(42, method, 30, 25);
            assert_eq!(sample_bipartite_many(&dp, &cfg).unwrap(), sample_bipartite_many(&dp, &cfg).unwrap());
            let other = SamplerConfig { seed: 43, ..cfg.clone() };
            assert_ne!(sample_bipartite_many(&dp, &cfg).unwrap(), sample_bipartite_many(&dp, &other).unwrap());
        }
    }

    #[test]
    fn attempts_exhausted() {
        let dp = DegreePair::regular(4, 4);
        let cfg = SamplerConfig::new(3, Method::ConfigurationRejection, 0, 1).with_max_attempts(1);
        let mut s = BipartiteSampler::new(&dp, &cfg).unwrap();
        let mut rng = stream_rng(3, 0);
        // about 0.5% of pairings give the simple graph K_{4,4}
        assert!((0..50).any(|_| matches!(s.draw(&mut rng), Err(Error::Sampler(_)))));
    }
}
