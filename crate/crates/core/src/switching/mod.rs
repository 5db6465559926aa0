//! Degree-preserving switchings as explicit value objects, with exhaustive
//! counters for the double-counting identities behind them.
//!
//! Digraph edges follow the bipartite convention of [`crate::degseq`]: the
//! pair `(x, y)` is the edge `u_x v_y`.

mod removal;
mod twocycle;
mod xswitch;

pub use removal::{
    apply_removal_switch, apply_reverse_removal_switch, apply_twocycle_bound_switch,
    count_removal_switches, count_reverse_removal_switches, count_twocycle_bound_switches,
    loopfree_removal_switch, verify_removal_identity, RemovalSpec, TwoCycleBoundSpec,
};
pub use twocycle::{
    apply_reverse_twocycle_switch, apply_twocycle_switch, count_reverse_twocycle_switches,
    count_twocycle_switches, ordered_reverse_twocycle_switches, ordered_twocycle_switches,
    verify_twocycle_identity, TwoCycleSpec,
};
pub use xswitch::{
    apply_forward_x_switch, apply_reverse_x_switch, count_forward_x_switches,
    count_forward_x_switches_naive, count_reverse_x_switches, count_reverse_x_switches_naive, forward_x_switches,
    verify_x_switch_identity, XSwitchSpec,
};

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::degseq::{BipartiteGraph, ForbiddenGraph};
use crate::oracle::ExactCount;

/// A violated switching condition, naming the clause.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    NotDistinct(&'static str),
    Missing {
        clause: &'static str,
        edge: (usize, usize),
    },
    Present {
        clause: &'static str,
        edge: (usize, usize),
        why: &'static str,
    },
    Shape(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::NotDistinct(what) => write!(f, "{what} must be distinct"),
            Violation::Missing { clause, edge } => {
                write!(f, "{clause}: u_{} v_{} must be an edge", edge.0, edge.1)
            }
            Violation::Present { clause, edge, why } => {
                write!(f, "{clause}: u_{} v_{} {why}", edge.0, edge.1)
            }
            Violation::Shape(msg) => f.write_str(msg),
        }
    }
}

impl std::error::Error for Violation {}

/// Totals of both sides of a double-counting identity.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwitchCountReport {
    /// The stratum index on the forward side (`f` or `q`).
    pub stratum: usize,
    pub forward_graphs: usize,
    pub reverse_graphs: usize,
    pub total_forward: ExactCount,
    pub total_reverse: ExactCount,
}

impl SwitchCountReport {
    pub fn holds(&self) -> bool {
        self.total_forward == self.total_reverse
    }
}

type Check = std::result::Result<(), Violation>;

fn need(g: &BipartiteGraph, clause: &'static str, e: (usize, usize)) -> Check {
    if g.contains(e.0, e.1) {
        Ok(())
    } else {
        Err(Violation::Missing { clause, edge: e })
    }
}

fn avoid(g: &BipartiteGraph, clause: &'static str, e: (usize, usize)) -> Check {
    if g.contains(e.0, e.1) {
        Err(Violation::Present {
            clause,
            edge: e,
            why: "is already an edge: would create double edge",
        })
    } else {
        Ok(())
    }
}

fn in_x(x: &ForbiddenGraph, clause: &'static str, e: (usize, usize), want: bool) -> Check {
    match (x.contains(e.0, e.1), want) {
        (true, false) => Err(Violation::Present {
            clause,
            edge: e,
            why: "is in X",
        }),
        (false, true) => Err(Violation::Missing { clause, edge: e }),
        _ => Ok(()),
    }
}

fn distinct(what: &'static str, xs: &[usize]) -> Check {
    let set: BTreeSet<_> = xs.iter().collect();
    if set.len() == xs.len() {
        Ok(())
    } else {
        Err(Violation::NotDistinct(what))
    }
}

fn in_range(g: &BipartiteGraph, edges: &[(usize, usize)]) -> Check {
    for &(a, b) in edges {
        if a >= g.m() || b >= g.n() {
            return Err(Violation::Shape(format!("u_{a} v_{b} lies outside the graph")));
        }
    }
    Ok(())
}

/// Remove then insert; callers have already checked every condition.
fn rewire(g: &BipartiteGraph, remove: &[(usize, usize)], insert: &[(usize, usize)]) -> BipartiteGraph {
    let mut out = g.clone();
    let edges = out.edges_mut();
    for e in remove {
        let had = edges.remove(e);
        debug_assert!(had, "switch removed a non-edge {e:?}");
    }
    for &e in insert {
        let fresh = edges.insert(e);
        assert!(fresh, "switch produced a double edge {e:?}");
    }
    out
}
