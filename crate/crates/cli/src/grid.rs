//! Parameter grids for `compare` and `sweep`: every point pairs an exact
//! oracle value with the matching closed-form estimate.

use census_core::estimate::{
    avoidance_factor, estimate_bipartite, estimate_bipartite_avoiding, estimate_loopfree_digraphs,
    estimate_loopfree_regular, estimate_oriented, estimate_oriented_regular, estimate_undirected,
    expected_eulerian_orientations, expected_orientations, expected_permanent_dense,
    expected_permanent_regular, expected_permanent_sparse, loopfree_probability, subgraph_probability,
    twocycle_free_probability,
};
use census_core::oracle::{
    count_bipartite, count_loopfree, count_oriented, enumerate_undirected, exact_event_probability,
    exact_expected_orientations, exact_expected_permanent,
};
use census_core::{Budget, Context, DegreePair, Event, ExactCount, ExactRational, ForbiddenGraph, LogEstimate};
use clap::ValueEnum;
use num_bigint::{BigUint, Sign};
use rayon::prelude::*;
use serde::Serialize;

use crate::tol::{Tolerance, Vars};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `s = t = (1, .., 1)`: permutation matrices.
    OneRegular,
    /// `s = t = (d, .., d)`.
    DRegular,
    /// `s = t = (d, .., d)`, read as digraphs without 2-cycles.
    DRegularOriented,
    /// Simple `d`-regular graphs on `n` vertices.
    UndirectedRegular,
}

impl Family {
    pub fn default_context(self) -> Context {
        match self {
            Family::OneRegular => Context::LoopProbability,
            Family::DRegular => Context::BipartiteCount,
            Family::DRegularOriented => Context::Oriented,
            Family::UndirectedRegular => Context::Undirected,
        }
    }

    fn undirected(self) -> bool {
        self == Family::UndirectedRegular
    }

    /// Contexts with both an oracle and an estimate on this family.
    pub fn supports(self, c: Context) -> bool {
        use Context::*;
        if self.undirected() {
            matches!(c, Undirected | Orientations | EulerianOrientations)
        } else {
            matches!(
                c,
                BipartiteCount
                    | Avoidance
                    | BipartiteAvoiding
                    | SubgraphProbability
                    | LoopProbability
                    | LoopFree
                    | LoopFreeRegular
                    | TwoCycleFree
                    | Oriented
                    | OrientedRegular
                    | PermanentSparse
                    | PermanentDense
                    | PermanentRegular
            )
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Instance {
    pub family: Family,
    pub n: usize,
    pub d: u32,
    #[serde(rename = "S")]
    pub s_total: u64,
}

impl Instance {
    pub fn new(family: Family, n: usize, d: u32) -> Self {
        let s_total = n as u64 * d as u64;
        Self {
            family,
            n,
            d,
            s_total: if family.undirected() { s_total / 2 } else { s_total },
        }
    }

    fn vars(&self) -> Vars {
        Vars {
            n: self.n as f64,
            m: self.n as f64,
            s: self.s_total as f64,
            d: self.d as f64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ExactValue {
    Count(ExactCount),
    Rational(ExactRational),
}

impl ExactValue {
    fn ln(&self) -> f64 {
        match self {
            ExactValue::Count(c) => c.ln(),
            ExactValue::Rational(r) => r.ln(),
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            ExactValue::Count(c) => c.is_zero(),
            ExactValue::Rational(r) => r.0.numer().sign() == Sign::NoSign,
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            ExactValue::Count(c) => c.value().to_string(),
            ExactValue::Rational(r) => r.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonRecord {
    pub index: usize,
    pub instance: Instance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<ExactValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub estimate: Option<LogEstimate>,
    /// `ln(exact) - estimate.log_value`; absent when either side is missing
    /// or the exact value is 0.
    pub log_ratio: Option<f64>,
    pub error_magnitude: Option<f64>,
    /// `|log_ratio| <= error_magnitude`.
    pub within_budget: bool,
    pub tolerance: Option<f64>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_kind: Option<ErrorKind>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ErrorKind {
    Budget,
    Domain,
}

fn pair(inst: &Instance, ctx: Context, budget: &Budget) -> census_core::Result<(ExactValue, LogEstimate)> {
    use Context::*;
    let (n, d) = (inst.n, inst.d);
    if inst.family.undirected() {
        let deg = vec![d; n];
        let zero = vec![0i64; n];
        return Ok(match ctx {
            Undirected => (
                ExactValue::Count(ExactCount(BigUint::from(enumerate_undirected(&deg, budget)?.len()))),
                estimate_undirected(&deg)?,
            ),
            Orientations => (
                ExactValue::Rational(exact_expected_orientations(&deg, &zero, budget)?),
                expected_orientations(&deg, &zero)?,
            ),
            EulerianOrientations => (
                ExactValue::Rational(exact_expected_orientations(&deg, &zero, budget)?),
                expected_eulerian_orientations(&deg)?,
            ),
            _ => unreachable!("checked by Family::supports"),
        });
    }
    let dp = DegreePair::regular(n, d);
    let diag = ForbiddenGraph::diagonal(n);
    let empty = ForbiddenGraph::empty();
    let event = |e: Event, x: &ForbiddenGraph| -> census_core::Result<ExactValue> {
        Ok(ExactValue::Rational(exact_event_probability(&dp, e, x, budget)?))
    };
    Ok(match ctx {
        BipartiteCount => (ExactValue::Count(count_bipartite(&dp, &empty, budget)?), estimate_bipartite(&dp)?),
        Avoidance => (event(Event::AvoidsX, &diag)?, avoidance_factor(&dp, &diag)?),
        BipartiteAvoiding => (
            ExactValue::Count(count_bipartite(&dp, &diag, budget)?),
            estimate_bipartite_avoiding(&dp, &diag)?,
        ),
        SubgraphProbability => (event(Event::ContainsX, &diag)?, subgraph_probability(&dp, &diag)?),
        LoopProbability => (event(Event::LoopFree, &empty)?, loopfree_probability(&dp)?),
        LoopFree => (ExactValue::Count(count_loopfree(&dp, budget)?), estimate_loopfree_digraphs(&dp)?),
        LoopFreeRegular => (ExactValue::Count(count_loopfree(&dp, budget)?), estimate_loopfree_regular(n, d)?),
        TwoCycleFree => (event(Event::TwocycleFree, &empty)?, twocycle_free_probability(&dp)?),
        Oriented => (ExactValue::Count(count_oriented(&dp, budget)?), estimate_oriented(&dp)?),
        OrientedRegular => (ExactValue::Count(count_oriented(&dp, budget)?), estimate_oriented_regular(n, d)?),
        PermanentSparse => (ExactValue::Rational(exact_expected_permanent(&dp, budget)?), expected_permanent_sparse(&dp)?),
        PermanentDense => (ExactValue::Rational(exact_expected_permanent(&dp, budget)?), expected_permanent_dense(&dp)?),
        PermanentRegular => (
            ExactValue::Rational(exact_expected_permanent(&dp, budget)?),
            expected_permanent_regular(n, d as usize)?.estimate,
        ),
        _ => unreachable!("checked by Family::supports"),
    })
}

pub struct Grid {
    pub family: Family,
    pub context: Context,
    pub points: Vec<(usize, u32)>,
    pub tol: Option<Tolerance>,
}

impl Grid {
    pub fn check(&self) -> Result<(), CliError> {
        if !self.family.supports(self.context) {
            return Err(CliError::Usage(format!(
                "context `{}` has no oracle on family `{}`",
                self.context,
                self.family.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default()
            )));
        }
        if self.family == Family::OneRegular {
            if let Some(&(_, d)) = self.points.iter().find(|&&(_, d)| d != 1) {
                return Err(CliError::Usage(format!("family one-regular has d = 1, got d = {d}")));
            }
        }
        Ok(())
    }

    /// Runs every point on the rayon pool; records come back in index order.
    pub fn run(&self, budget: &Budget) -> Vec<ComparisonRecord> {
        self.points
            .par_iter()
            .enumerate()
            .map(|(index, &(n, d))| self.record(index, Instance::new(self.family, n, d), budget))
            .collect()
    }

    fn record(&self, index: usize, instance: Instance, budget: &Budget) -> ComparisonRecord {
        match pair(&instance, self.context, budget) {
            Ok((exact, estimate)) => {
                let log_ratio = (!exact.is_zero()).then(|| exact.ln() - estimate.log_value);
                let err = estimate.error_magnitude;
                let within_budget = log_ratio.is_some_and(|r| r.abs() <= err);
                let tolerance = match &self.tol {
                    Some(t) => t.eval(&instance.vars()),
                    None => err,
                };
                ComparisonRecord {
                    index,
                    instance,
                    exact: Some(exact),
                    estimate: Some(estimate),
                    log_ratio,
                    error_magnitude: Some(err),
                    within_budget,
                    tolerance: Some(tolerance),
                    pass: log_ratio.is_some_and(|r| r.abs() <= tolerance),
                    error: None,
                    error_kind: None,
                }
            }
            Err(e) => ComparisonRecord {
                index,
                instance,
                exact: None,
                estimate: None,
                log_ratio: None,
                error_magnitude: None,
                within_budget: false,
                tolerance: None,
                pass: false,
                error: Some(e.to_string()),
                error_kind: Some(if e.is_budget() { ErrorKind::Budget } else { ErrorKind::Domain }),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Summary {
    pub instances: usize,
    pub passed: usize,
    pub failed: usize,
    pub budget_errors: usize,
    pub domain_errors: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trend: Option<Trend>,
}

impl Summary {
    pub fn of(records: &[ComparisonRecord]) -> Self {
        let count = |k| records.iter().filter(|r| r.error_kind == Some(k)).count();
        let passed = records.iter().filter(|r| r.pass).count();
        Summary {
            instances: records.len(),
            passed,
            failed: records.len() - passed,
            budget_errors: count(ErrorKind::Budget),
            domain_errors: count(ErrorKind::Domain),
            trend: None,
        }
    }

    /// Budget errors win over domain errors, which win over tolerance failures.
    pub fn exit_code(&self) -> u8 {
        if self.budget_errors > 0 {
            3
        } else if self.domain_errors > 0 {
            2
        } else if self.failed > 0 {
            1
        } else {
            0
        }
    }
}

/// How `log_ratio` moves along the swept variable.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Trend {
    pub variable: &'static str,
    pub values: Vec<usize>,
    pub log_ratios: Vec<Option<f64>>,
    /// Every `|log_ratio|` is at most the previous one (false if any is missing).
    pub abs_nonincreasing: bool,
    /// Least-squares slope of `ln|log_ratio|` against `ln(variable)`.
    pub decay_exponent: Option<f64>,
}

impl Trend {
    pub fn of(variable: &'static str, values: Vec<usize>, records: &[ComparisonRecord]) -> Self {
        let log_ratios: Vec<Option<f64>> = records.iter().map(|r| r.log_ratio).collect();
        let abs_nonincreasing = log_ratios.iter().all(Option::is_some)
            && log_ratios
                .windows(2)
                .all(|w| w[1].unwrap().abs() <= w[0].unwrap().abs());
        let pts: Vec<(f64, f64)> = values
            .iter()
            .zip(&log_ratios)
            .filter_map(|(&v, r)| match r {
                Some(r) if *r != 0.0 && v > 0 => Some(((v as f64).ln(), r.abs().ln())),
                _ => None,
            })
            .collect();
        Trend {
            variable,
            values,
            log_ratios,
            abs_nonincreasing,
            decay_exponent: slope(&pts),
        }
    }
}

fn slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let k = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / k;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / k;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}
