//! Closed-form asymptotic estimates, carried in log space.
//!
//! Each estimate is split as `prefactor * exp(correction + O(error))`. The
//! big-O argument is evaluated with constant 1 and reported separately as
//! `error_magnitude`; it is never folded into `log_value`.

mod bipartite;
mod digraph;
mod lemmas;
mod permanent;
mod undirected;

pub use bipartite::{
    avoidance_factor, estimate_bipartite, estimate_bipartite_avoiding, q_correction,
    subgraph_probability,
};
pub use digraph::{
    estimate_loopfree_avoiding, estimate_loopfree_digraphs, estimate_loopfree_regular,
    estimate_oriented, estimate_oriented_regular, loopfree_probability,
    twocycle_free_probability,
};
pub use lemmas::{
    permutation_functional_stats, summation_bounds, PermutationStats, SummationInput,
    SummationOutput,
};
pub use permanent::{
    expected_permanent_dense, expected_permanent_regular, expected_permanent_sparse,
    permanent_complement_ie, regular_permanent_stirling, ComplementIe, RegularPermanent,
    RegularRange,
};
pub use undirected::{
    expected_eulerian_orientations, expected_orientations, pauling_and_residual_entropy,
    estimate_undirected, ResidualEntropy,
};


use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

/// The result an estimate or diagnostic refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Context {
    BipartiteCount,
    Avoidance,
    BipartiteAvoiding,
    SubgraphProbability,
    InitialBipartite,
    LoopProbability,
    LoopFree,
    LoopFreeRegular,
    LoopFreeAvoiding,
    TwoCycleBound,
    TwoCycleFree,
    Oriented,
    OrientedRegular,
    Undirected,
    Orientations,
    EulerianOrientations,
    Pauling,
    PermanentSparse,
    PermanentDense,
    PermanentComplement,
    PermanentRegular,
    Exact,
}

impl Context {
    pub const ALL: [Context; 22] = [
        Context::BipartiteCount,
        Context::Avoidance,
        Context::BipartiteAvoiding,
        Context::SubgraphProbability,
        Context::InitialBipartite,
        Context::LoopProbability,
        Context::LoopFree,
        Context::LoopFreeRegular,
        Context::LoopFreeAvoiding,
        Context::TwoCycleBound,
        Context::TwoCycleFree,
        Context::Oriented,
        Context::OrientedRegular,
        Context::Undirected,
        Context::Orientations,
        Context::EulerianOrientations,
        Context::Pauling,
        Context::PermanentSparse,
        Context::PermanentDense,
        Context::PermanentComplement,
        Context::PermanentRegular,
        Context::Exact,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Context::BipartiteCount => "bipartite-count",
            Context::Avoidance => "avoidance",
            Context::BipartiteAvoiding => "bipartite-avoiding",
            Context::SubgraphProbability => "subgraph-probability",
            Context::InitialBipartite => "initial-bipartite",
            Context::LoopProbability => "loop-probability",
            Context::LoopFree => "loop-free",
            Context::LoopFreeRegular => "loop-free-regular",
            Context::LoopFreeAvoiding => "loop-free-avoiding",
            Context::TwoCycleBound => "two-cycle-bound",
            Context::TwoCycleFree => "two-cycle-free",
            Context::Oriented => "oriented",
            Context::OrientedRegular => "oriented-regular",
            Context::Undirected => "undirected",
            Context::Orientations => "orientations",
            Context::EulerianOrientations => "eulerian-orientations",
            Context::Pauling => "pauling",
            Context::PermanentSparse => "permanent-sparse",
            Context::PermanentDense => "permanent-dense",
            Context::PermanentComplement => "permanent-complement",
            Context::PermanentRegular => "permanent-regular",
            Context::Exact => "exact",
        }
    }
}

impl fmt::Display for Context {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Context {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Context::ALL
            .iter()
            .copied()
            .find(|c| c.name() == s)
            .ok_or_else(|| format!("unknown context `{s}`"))
    }
}

/// `exp(log_value) = exp(log_prefactor) * exp(correction)`, with the big-O
/// argument of the underlying formula in `error_magnitude`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LogEstimate {
    pub log_value: f64,
    pub log_prefactor: f64,
    pub correction: f64,
    pub error_magnitude: f64,
    pub context: Context,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl LogEstimate {
    pub fn new(context: Context, log_prefactor: f64, correction: f64, error_magnitude: f64) -> Self {
        Self {
            log_value: log_prefactor + correction,
            log_prefactor,
            correction,
            error_magnitude,
            context,
            warnings: Vec::new(),
        }
    }

    /// The exact value 1 (log 0, no error).
    pub fn one(context: Context) -> Self {
        Self::new(context, 0.0, 0.0, 0.0)
    }

    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }

    /// Product of estimates: logs, corrections and error magnitudes add.
    pub fn product(context: Context, parts: &[&LogEstimate]) -> Self {
        let mut out = Self::one(context);
        for p in parts {
            out.log_prefactor += p.log_prefactor;
            out.correction += p.correction;
            out.error_magnitude += p.error_magnitude;
            out.warnings.extend(p.warnings.iter().cloned());
        }
        out.log_value = out.log_prefactor + out.correction;
        out
    }

    pub fn with_context(mut self, context: Context) -> Self {
        self.context = context;
        self
    }

    pub fn warn(mut self, msg: impl Into<String>) -> Self {
        self.warnings.push(msg.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn context_names_round_trip() {
        for c in Context::ALL {
            assert_eq!(c.name().parse::<Context>().unwrap(), c);
            let json = serde_json::to_string(&c).unwrap();
            assert_eq!(json, format!("\"{}\"", c.name()));
        }
        assert!("no-such-context".parse::<Context>().is_err());
    }

    #[test]
    fn estimate_json_shape() {
        let e = LogEstimate::new(Context::BipartiteCount, 1.5, -0.25, 0.1);
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(v["log_value"], 1.25);
        assert_eq!(v["context"], "bipartite-count");
        assert!(v.get("warnings").is_none());
    }

    #[test]
    fn product_adds() {
        let a = LogEstimate::new(Context::BipartiteCount, 1.0, 0.5, 0.1);
        let b = LogEstimate::new(Context::Avoidance, 0.0, -0.25, 0.2);
        let p = LogEstimate::product(Context::BipartiteAvoiding, &[&a, &b]);
        assert_eq!(p.log_value, 1.25);
        assert!((p.error_magnitude - 0.3).abs() < 1e-15);
    }
}
