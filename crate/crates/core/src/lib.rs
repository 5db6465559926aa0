//! Asymptotic enumeration of bipartite graphs, loop-free digraphs and
//! oriented graphs by degree sequence, together with exact oracles,
//! switching-count identities and random samplers to check the estimates
//! at small sizes.
//!
//! A digraph on `n` vertices is the bipartite graph with rows `u_0..u_{n-1}`
//! and columns `v_0..v_{n-1}` where the arc `x -> y` is the edge `u_x v_y`.

pub mod degseq;
pub mod diagnostics;
pub mod error;
pub mod estimate;
pub mod oracle;
pub mod sample;
pub mod special;
pub mod switching;

pub use degseq::{
    cutoffs, derive_stats, forbidden_stats, hat_stats, BipartiteGraph, Cutoffs, DegreePair, DerivedStats,
    ForbiddenGraph, ForbiddenStats, HatStats, UndirectedGraph,
};
pub use diagnostics::{assumption_report, undirected_assumption_report, DiagnosticRecord};
pub use error::{Error, Result};
pub use estimate::{Context, LogEstimate};
pub use oracle::{Budget, Event, ExactCount, ExactRational};
pub use sample::{EmpiricalEstimate, Method, SamplerConfig};
