//! Random sampling over `B(s, t)` and over simple graphs with a given degree
//! sequence, plus Monte Carlo estimators built on them.
//!
//! Randomness comes from ChaCha8 (`rand_chacha`). A run is split into
//! [`STREAMS`] independent streams: stream `k` is `ChaCha8Rng::seed_from_u64(seed)`
//! with `set_stream(k)`, and draws samples `k, k + STREAMS, ...`. Streams
//! run in parallel and are merged in stream order, so output depends only
//! on the seed and configuration, never on thread scheduling.

mod bipartite;
mod undirected;

pub use bipartite::{greedy_bipartite, BipartiteSampler};
pub use undirected::{greedy_undirected, UndirectedSampler};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::degseq::{BipartiteGraph, DegreePair, ForbiddenGraph, UndirectedGraph};
use crate::error::{Error, Result};
use crate::oracle::{count_orientations_with_degrees, Budget, Event};

/// Number of independent random streams per run.
pub const STREAMS: u64 = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Uniform pairing of half-edges, restarted unless simple. Exact.
    ConfigurationRejection,
    /// Double-edge swaps from a greedy realization. Approximate.
    SwapChain,
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "configuration-rejection" | "configuration" => Ok(Method::ConfigurationRejection),
            "swap-chain" | "swap" => Ok(Method::SwapChain),
            _ => Err(Error::Sampler(format!("unknown method '{s}'"))),
        }
    }
}

impl Method {
    /// Configuration rejection when `max_product <= total / 10`, else the
    /// swap chain.
    pub fn auto(max_product: u64, total: u64) -> Method {
        if 10 * max_product <= total {
            Method::ConfigurationRejection
        } else {
            Method::SwapChain
        }
    }
}

/// `ceil(10 S ln S)` swaps; a heuristic, not a mixing bound.
pub fn default_burn_in(total: u64) -> u64 {
    if total < 2 {
        return 0;
    }
    (10.0 * total as f64 * (total as f64).ln()).ceil() as u64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub seed: u64,
    pub method: Method,
    /// Swaps before the first sample of a stream, and between consecutive
    /// samples of a stream.
    pub burn_in: u64,
    pub samples: u64,
    /// Attempts allowed per accepted sample, covering both simplicity
    /// rejection and conditioning.
    #[serde(default = "default_attempts")]
    pub max_attempts: u64,
}

fn default_attempts() -> u64 {
    1_000_000
}

impl SamplerConfig {
    pub fn new(seed: u64, method: Method, burn_in: u64, samples: u64) -> Self {
        Self {
            seed,
            method,
            burn_in,
            samples,
            max_attempts: default_attempts(),
        }
    }

    /// Method and burn-in chosen from the degree pair.
    pub fn auto(dp: &DegreePair, seed: u64, samples: u64) -> Self {
        let total = dp.total();
        Self::new(seed, Method::auto(dp.s_max() * dp.t_max(), total), default_burn_in(total), samples)
    }

    /// The same for a simple-graph degree sequence, judged by `d_max^2`
    /// against the degree sum.
    pub fn auto_undirected(d: &[u32], seed: u64, samples: u64) -> Self {
        let total: u64 = d.iter().map(|&x| x as u64).sum();
        let dmax = d.iter().copied().max().unwrap_or(0) as u64;
        Self::new(seed, Method::auto(dmax * dmax, total), default_burn_in(total / 2), samples)
    }

    pub fn with_max_attempts(mut self, n: u64) -> Self {
        self.max_attempts = n;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(Error::Sampler("samples must be at least 1".into()));
        }
        if self.max_attempts == 0 {
            return Err(Error::Sampler("max_attempts must be at least 1".into()));
        }
        Ok(())
    }

    fn stream_share(&self, k: u64) -> u64 {
        self.samples / STREAMS + u64::from(k < self.samples % STREAMS)
    }
}

pub(crate) fn stream_rng(seed: u64, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k);
    rng
}

/// Running mean and sum of squared deviations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Moments {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    /// Pooled combination of two disjoint batches.
    pub fn merge(self, o: Moments) -> Moments {
        if self.n == 0 {
            return o;
        }
        if o.n == 0 {
            return self;
        }
        let n = self.n + o.n;
        let d = o.mean - self.mean;
        Moments {
            n,
            mean: self.mean + d * o.n as f64 / n as f64,
            m2: self.m2 + o.m2 + d * d * self.n as f64 * o.n as f64 / n as f64,
        }
    }

    pub fn estimate(&self) -> EmpiricalEstimate {
        let stderr = if self.n < 2 {
            0.0
        } else {
            (self.m2 / (self.n - 1) as f64).sqrt() / (self.n as f64).sqrt()
        };
        EmpiricalEstimate {
            point: self.mean,
            stderr,
            n_samples: self.n,
        }
    }
}

/// Monte Carlo mean with standard error `sd / sqrt(n)` (sample sd; zero
/// for a single sample).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalEstimate {
    pub point: f64,
    pub stderr: f64,
    pub n_samples: u64,
}

impl EmpiricalEstimate {
    /// `|point - target| <= k * stderr + slack`.
    pub fn within(&self, target: f64, k: f64, slack: f64) -> bool {
        (self.point - target).abs() <= k * self.stderr + slack
    }
}

/// Something that draws one graph per call from a stream.
pub trait Draw: Clone + Send {
    type Graph: Send;
    fn draw(&mut self, rng: &mut ChaCha8Rng) -> Result<Self::Graph>;
}

/// Runs `per_sample` over `cfg.samples` draws split across the streams.
fn run<S: Draw + Sync, T: Send>(
    sampler: &S,
    cfg: &SamplerConfig,
    per_sample: impl Fn(&mut S, &mut ChaCha8Rng) -> Result<T> + Sync,
) -> Result<Vec<Vec<T>>> {
    cfg.validate()?;
    (0..STREAMS)
        .into_par_iter()
        .map(|k| {
            let mut rng = stream_rng(cfg.seed, k);
            let mut s = sampler.clone();
            (0..cfg.stream_share(k)).map(|_| per_sample(&mut s, &mut rng)).collect()
        })
        .collect()
}

fn pooled(per_stream: Vec<Vec<f64>>) -> EmpiricalEstimate {
    per_stream
        .into_iter()
        .map(|xs| {
            let mut m = Moments::default();
            xs.into_iter().for_each(|x| m.push(x));
            m
        })
        .fold(Moments::default(), Moments::merge)
        .estimate()
}

/// Interleaves stream outputs back into sample order `0, 1, 2, ...`.
fn interleave<T>(per_stream: Vec<Vec<T>>) -> Vec<T> {
    let total = per_stream.iter().map(Vec::len).sum();
    let mut iters: Vec<_> = per_stream.into_iter().map(Vec::into_iter).collect();
    let mut out = Vec::with_capacity(total);
    while out.len() < total {
        for it in iters.iter_mut() {
            if let Some(x) = it.next() {
                out.push(x);
            }
        }
    }
    out
}

/// One sample from `B(s, t)`: the first draw of stream 0.
pub fn sample_bipartite(dp: &DegreePair, cfg: &SamplerConfig) -> Result<BipartiteGraph> {
    cfg.validate()?;
    let mut s = BipartiteSampler::new(dp, cfg)?;
    s.draw(&mut stream_rng(cfg.seed, 0))
}

/// `cfg.samples` draws from `B(s, t)`, in sample order.
pub fn sample_bipartite_many(dp: &DegreePair, cfg: &SamplerConfig) -> Result<Vec<BipartiteGraph>> {
    let s = BipartiteSampler::new(dp, cfg)?;
    Ok(interleave(run(&s, cfg, |s, rng| s.draw(rng))?))
}

pub fn sample_undirected(d: &[u32], cfg: &SamplerConfig) -> Result<UndirectedGraph> {
    cfg.validate()?;
    let mut s = UndirectedSampler::new(d, cfg)?;
    s.draw(&mut stream_rng(cfg.seed, 0))
}

pub fn sample_undirected_many(d: &[u32], cfg: &SamplerConfig) -> Result<Vec<UndirectedGraph>> {
    let s = UndirectedSampler::new(d, cfg)?;
    Ok(interleave(run(&s, cfg, |s, rng| s.draw(rng))?))
}

/// Monte Carlo probability of `event`. Conditioned events (2-cycle free
/// given loop-free) redraw until the condition holds.
pub fn estimate_event_probability(
    dp: &DegreePair,
    cfg: &SamplerConfig,
    event: Event,
    x: &ForbiddenGraph,
) -> Result<EmpiricalEstimate> {
    if event.needs_square() {
        dp.require_square("loop events")?;
    }
    let s = BipartiteSampler::new(dp, cfg)?;
    let limit = cfg.max_attempts;
    let per = run(&s, cfg, |s, rng| {
        for _ in 0..limit {
            let g = s.draw(rng)?;
            if let Some(h) = event.holds(&g, x) {
                return Ok(if h { 1.0 } else { 0.0 });
            }
        }
        Err(Error::Sampler(format!("conditioning rejected {limit} draws in a row")))
    })?;
    Ok(pooled(per))
}

/// Monte Carlo mean, over random simple graphs with degrees `d`, of the
/// number of orientations with out-degrees `d/2 + delta`.
pub fn estimate_expected_orientation_count(
    d: &[u32],
    delta: &[i64],
    cfg: &SamplerConfig,
    budget: &Budget,
) -> Result<EmpiricalEstimate> {
    if delta.len() != d.len() {
        return Err(Error::Precondition(format!(
            "d has {} entries but delta has {}",
            d.len(),
            delta.len()
        )));
    }
    let odd = d.iter().any(|&x| x % 2 == 1);
    let s = UndirectedSampler::new(d, cfg)?;
    let per = run(&s, cfg, |s, rng| {
        let g = s.draw(rng)?;
        if odd {
            // no orientation can balance an odd vertex at d/2 + delta
            return Ok(0.0);
        }
        Ok(count_orientations_with_degrees(&g, delta, budget)?.to_f64())
    })?;
    Ok(pooled(per))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pooled_moments_match_direct() {
        let xs: Vec<f64> = (0..37).map(|i| ((i * 7919) % 13) as f64 * 0.5).collect();
        let mut all = Moments::default();
        xs.iter().for_each(|&x| all.push(x));
        let mut a = Moments::default();
        let mut b = Moments::default();
        xs[..10].iter().for_each(|&x| a.push(x));
        xs[10..].iter().for_each(|&x| b.push(x));
        let m = a.merge(b);
        assert_eq!(m.n, all.n);
        assert!((m.mean - all.mean).abs() < 1e-12);
        assert!((m.m2 - all.m2).abs() < 1e-9);
        let e = m.estimate();
        let mean = xs.iter().sum::<f64>() / 37.0;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / 36.0;
        assert!((e.stderr - (var / 37.0).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn shares_cover_samples() {
        for n in [1u64, 7, 8, 9, 100, 12345] {
            let cfg = SamplerConfig::new(0, Method::SwapChain, 0, n);
            assert_eq!((0..STREAMS).map(|k| cfg.stream_share(k)).sum::<u64>(), n);
        }
    }

    #[test]
    fn interleave_restores_order() {
        let per = vec![vec![0, 3, 6], vec![1, 4], vec![2, 5]];
        assert_eq!(interleave(per), vec![0, 1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn zero_samples_rejected() {
        let cfg = SamplerConfig::new(1, Method::ConfigurationRejection, 0, 0);
        assert!(matches!(
            sample_bipartite(&DegreePair::regular(3, 1), &cfg),
            Err(Error::Sampler(_))
        ));
    }

    #[test]
    fn auto_method() {
        assert_eq!(Method::auto(4, 40), Method::ConfigurationRejection);
        assert_eq!(Method::auto(4, 39), Method::SwapChain);
        assert_eq!(default_burn_in(1), 0);
        assert_eq!(default_burn_in(10), 231);
    }
}
