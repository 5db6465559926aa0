//! `census`: closed-form estimates, exact counts, comparisons, sweeps,
//! samples and switching identities for graphs with given degrees.

mod grid;
mod input;
mod tol;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::{SystemTime, UNIX_EPOCH};

use census_core::estimate::{
    avoidance_factor, estimate_bipartite, estimate_bipartite_avoiding, estimate_loopfree_avoiding,
    estimate_loopfree_digraphs, estimate_loopfree_regular, estimate_oriented, estimate_oriented_regular,
    estimate_undirected, expected_eulerian_orientations, expected_orientations, expected_permanent_dense,
    expected_permanent_regular, expected_permanent_sparse, loopfree_probability, pauling_and_residual_entropy,
    permanent_complement_ie, subgraph_probability, twocycle_free_probability,
};
use census_core::oracle::{
    count_bipartite, count_bipartite_stratified, count_eulerian_orientations, count_loopfree,
    count_orientations_with_degrees, count_oriented, enumerate_undirected, exact_event_probability,
    exact_expected_orientations, exact_expected_permanent, ryser_permanent, Matrix01,
};
use census_core::sample::{
    estimate_event_probability, estimate_expected_orientation_count, sample_bipartite_many,
    sample_undirected_many,
};
use census_core::switching::{verify_removal_identity, verify_twocycle_identity, verify_x_switch_identity};
use census_core::{
    assumption_report, undirected_assumption_report, Budget, Context, DegreePair, Event, ExactCount,
    LogEstimate, Method, SamplerConfig,
};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

use grid::{ComparisonRecord, Family, Grid, Summary, Trend};
use input::{parse_range, Input};
use tol::Tolerance;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] census_core::Error),
    #[error("writing output: {0}")]
    Io(#[from] io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Core(e) if e.is_budget() => 3,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "census", version, about = "Degree-sequence enumeration: estimates, exact oracles and checks")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Serialize)]
struct Global {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Largest edge count the exhaustive oracles may enumerate.
    #[arg(long = "budget-S", global = true)]
    #[serde(skip)]
    budget_s: Option<usize>,
    /// Largest matrix order for Ryser's permanent.
    #[arg(long = "budget-n", global = true)]
    #[serde(skip)]
    budget_n: Option<usize>,
    /// Tolerance on |log ratio|, an expression in n, m, S and d such as `5/n`.
    #[arg(long, global = true)]
    tol: Option<Tolerance>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Leave the timestamp out of the header, making output byte-reproducible.
    #[arg(long, global = true)]
    #[serde(skip)]
    no_timestamp: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Closed-form estimate with its hypothesis diagnostics.
    Estimate(EstimateArgs),
    /// Exact brute-force count or probability.
    Exact(ExactArgs),
    /// Exact against estimate over a grid of instances.
    Compare(GridArgs),
    /// Like compare along one varying parameter, with a trend summary.
    Sweep(GridArgs),
    /// Random graphs, or Monte Carlo estimates over them.
    Sample(SampleArgs),
    /// Check a switching double-counting identity exhaustively.
    SwitchVerify(SwitchArgs),
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Estimate(_) => "estimate",
            Command::Exact(_) => "exact",
            Command::Compare(_) => "compare",
            Command::Sweep(_) => "sweep",
            Command::Sample(_) => "sample",
            Command::SwitchVerify(_) => "switch-verify",
        }
    }
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("shape").multiple(false)))]
struct EstimateArgs {
    /// Which estimate; defaults follow the shortcut flag.
    #[arg(long, value_parser = parse_context)]
    context: Option<Context>,
    /// Bipartite graphs with degrees `-s`, `-t` (count by default).
    #[arg(long, group = "shape")]
    bipartite: bool,
    /// `d`-regular loop-free digraphs on `n` vertices.
    #[arg(long = "regular-digraph", group = "shape")]
    regular_digraph: bool,
    /// Expected Eulerian orientations of a random graph with degrees `-d`.
    #[arg(long = "eulerian-expect", group = "shape")]
    eulerian_expect: bool,
    #[command(flatten)]
    input: Input,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum EventArg {
    LoopFree,
    TwocycleFree,
    ContainsX,
    AvoidsX,
}

impl From<EventArg> for Event {
    fn from(e: EventArg) -> Event {
        match e {
            EventArg::LoopFree => Event::LoopFree,
            EventArg::TwocycleFree => Event::TwocycleFree,
            EventArg::ContainsX => Event::ContainsX,
            EventArg::AvoidsX => Event::AvoidsX,
        }
    }
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("what").required(true).multiple(false)))]
struct ExactArgs {
    /// Eulerian orientations of `--graph` (undirected).
    #[arg(long, group = "what")]
    eulerian: bool,
    /// Orientations of `--graph` with out-degrees `d/2 + delta`.
    #[arg(long, group = "what")]
    orientations: bool,
    /// Bipartite graphs with the given degrees avoiding the forbidden edges.
    #[arg(long, group = "what")]
    bipartite: bool,
    /// As `--bipartite`, split by the number of forbidden edges used.
    #[arg(long, group = "what")]
    stratified: bool,
    /// Loop-free digraphs.
    #[arg(long, group = "what")]
    loopfree: bool,
    /// Oriented graphs (no loops, no 2-cycles).
    #[arg(long, group = "what")]
    oriented: bool,
    /// Probability of an event under the uniform bipartite measure.
    #[arg(long, group = "what", value_enum)]
    event: Option<EventArg>,
    /// Permanent of the biadjacency matrix of `--graph` (bipartite).
    #[arg(long, group = "what")]
    permanent: bool,
    /// Expected permanent of a uniform 0-1 matrix with the given margins.
    #[arg(long = "expected-permanent", group = "what")]
    expected_permanent: bool,
    /// Simple graphs with undirected degrees `-d`.
    #[arg(long, group = "what")]
    undirected: bool,
    /// Expected orientation count over simple graphs with degrees `-d`.
    #[arg(long = "expected-orientations", group = "what")]
    expected_orientations: bool,
    #[command(flatten)]
    input: Input,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// `a:b` or `a:b:step`, inclusive.
    #[arg(long = "n-range")]
    n_range: Option<String>,
    #[arg(short = 'n', long = "n")]
    n: Option<usize>,
    /// Degrees to combine with every `n`, comma separated.
    #[arg(short = 'd', long = "d", value_delimiter = ',')]
    d: Vec<u32>,
    #[arg(long = "d-range")]
    d_range: Option<String>,
    #[arg(long, value_parser = parse_context)]
    context: Option<Context>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    #[arg(long, default_value_t = 1)]
    samples: u64,
    /// configuration-rejection or swap-chain; chosen from the degrees when absent.
    #[arg(long)]
    method: Option<Method>,
    #[arg(long = "burn-in")]
    burn_in: Option<u64>,
    #[arg(long = "max-attempts")]
    max_attempts: Option<u64>,
    /// Estimate the probability of this event instead of printing graphs.
    #[arg(long, value_enum, conflicts_with = "orientations")]
    event: Option<EventArg>,
    /// Estimate the mean orientation count over graphs with degrees `-d`.
    #[arg(long)]
    orientations: bool,
    #[command(flatten)]
    input: Input,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
enum SwitchKind {
    XSwitch,
    TwoCycle,
    Removal,
}

#[derive(Args, Debug, Serialize)]
struct SwitchArgs {
    #[arg(long, value_enum)]
    kind: SwitchKind,
    /// Stratum on the forward side: forbidden edges (x-switch) or 2-cycles (two-cycle).
    #[arg(long, default_value_t = 1)]
    stratum: usize,
    #[command(flatten)]
    #[serde(flatten)]
    input: Input,
}

/// Accepts the kebab-case names and a few short aliases; case, `-` and `_`
/// are ignored.
fn parse_context(s: &str) -> Result<Context, String> {
    let key: String = s
        .chars()
        .filter(|c| *c != '-' && *c != '_')
        .flat_map(char::to_lowercase)
        .collect();
    let alias = match key.as_str() {
        "loopprob" => Some(Context::LoopProbability),
        "count" | "bipartite" => Some(Context::BipartiteCount),
        "eulerian" => Some(Context::EulerianOrientations),
        "subgraph" => Some(Context::SubgraphProbability),
        _ => None,
    };
    alias
        .or_else(|| Context::ALL.into_iter().find(|c| c.name().replace('-', "") == key))
        .ok_or_else(|| {
            let names: Vec<&str> = Context::ALL.iter().map(|c| c.name()).collect();
            format!("unknown context `{s}`; expected one of {}", names.join(", "))
        })
}

#[derive(Serialize)]
struct Header<'a, A: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'static str,
    #[serde(flatten)]
    global: &'a Global,
    budget: Budget,
    #[serde(skip_serializing_if = "Option::is_none")]
    timestamp: Option<u64>,
    args: A,
}

struct Ctx<'a> {
    global: &'a Global,
    command: &'static str,
    budget: Budget,
}

impl Ctx<'_> {
    fn header<A: Serialize>(&self, args: A) -> Value {
        let timestamp = (!self.global.no_timestamp)
            .then(|| SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0));
        let h = Header {
            tool: "census",
            version: env!("CARGO_PKG_VERSION"),
            command: self.command,
            global: self.global,
            budget: self.budget,
            timestamp,
            args,
        };
        serde_json::to_value(h).expect("header serializes")
    }

    fn json_only(&self) -> Result<(), CliError> {
        match self.global.format {
            Format::Json => Ok(()),
            Format::Csv => Err(CliError::Usage(format!(
                "--format csv is for tables (compare, sweep); `{}` prints JSON",
                self.command
            ))),
        }
    }
}

fn print_object(v: &Value) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn print_line(out: &mut impl Write, v: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, v).map_err(io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("census: {e}");
            ExitCode::from(e.code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let default_s = match cli.command {
        Command::SwitchVerify(_) => 14,
        _ => Budget::default().max_edges,
    };
    let mut budget = Budget::default().with_max_edges(cli.global.budget_s.unwrap_or(default_s));
    if let Some(n) = cli.global.budget_n {
        budget = budget.with_max_ryser_n(n);
    }
    let ctx = Ctx {
        global: &cli.global,
        command: cli.command.name(),
        budget,
    };
    match &cli.command {
        Command::Estimate(a) => cmd_estimate(&ctx, a),
        Command::Exact(a) => cmd_exact(&ctx, a),
        Command::Compare(a) => cmd_grid(&ctx, a, false),
        Command::Sweep(a) => cmd_grid(&ctx, a, true),
        Command::Sample(a) => cmd_sample(&ctx, a),
        Command::SwitchVerify(a) => cmd_switch(&ctx, a),
    }
}

fn cmd_estimate(ctx: &Ctx, a: &EstimateArgs) -> Result<u8, CliError> {
    ctx.json_only()?;
    let context = match (a.context, a.bipartite, a.regular_digraph, a.eulerian_expect) {
        (Some(c), ..) => c,
        (None, true, _, _) => Context::BipartiteCount,
        (None, _, true, _) => Context::LoopFreeRegular,
        (None, _, _, true) => Context::EulerianOrientations,
        _ => return Err(CliError::Usage("give --context or one of --bipartite, --regular-digraph, --eulerian-expect".into())),
    };
    let inp = &a.input;
    let header = ctx.header(json!({ "context": context, "input": inp }));
    let est = |e: LogEstimate, diag| json!({ "config": header, "estimate": e, "diagnostics": diag });
    use Context::*;
    let out = match context {
        BipartiteCount | LoopProbability | LoopFree | TwoCycleFree | Oriented | PermanentSparse | PermanentDense => {
            let dp = inp.degree_pair()?;
            let e = match context {
                BipartiteCount => estimate_bipartite(&dp)?,
                LoopProbability => loopfree_probability(&dp)?,
                LoopFree => estimate_loopfree_digraphs(&dp)?,
                TwoCycleFree => twocycle_free_probability(&dp)?,
                Oriented => estimate_oriented(&dp)?,
                PermanentSparse => expected_permanent_sparse(&dp)?,
                _ => expected_permanent_dense(&dp)?,
            };
            est(e, json!(assumption_report(&dp, None, context)))
        }
        Avoidance | BipartiteAvoiding | SubgraphProbability | LoopFreeAvoiding => {
            let dp = inp.degree_pair()?;
            let x = inp.forbidden(dp.n())?;
            let e = match context {
                Avoidance => avoidance_factor(&dp, &x)?,
                BipartiteAvoiding => estimate_bipartite_avoiding(&dp, &x)?,
                SubgraphProbability => subgraph_probability(&dp, &x)?,
                _ => estimate_loopfree_avoiding(&dp, &x)?,
            };
            est(e, json!(assumption_report(&dp, Some(&x), context)))
        }
        LoopFreeRegular | OrientedRegular => {
            let (n, d) = inp.require_regular()?;
            let e = if context == LoopFreeRegular {
                estimate_loopfree_regular(n, d)?
            } else {
                estimate_oriented_regular(n, d)?
            };
            est(e, json!(assumption_report(&DegreePair::regular(n, d), None, context)))
        }
        Undirected | Orientations | EulerianOrientations => {
            let d = inp.undirected_degrees()?;
            let e = match context {
                Undirected => estimate_undirected(&d)?,
                Orientations => expected_orientations(&d, &inp.delta_for(d.len())?)?,
                _ => expected_eulerian_orientations(&d)?,
            };
            est(e, json!(undirected_assumption_report(&d, context)))
        }
        Pauling => {
            let d = inp.undirected_degrees()?;
            json!({
                "config": header,
                "entropy": pauling_and_residual_entropy(&d)?,
                "diagnostics": undirected_assumption_report(&d, context),
            })
        }
        PermanentComplement => {
            let holes = inp.bipartite_graph()?;
            json!({
                "config": header,
                "permanent": permanent_complement_ie(&holes)?,
                "diagnostics": assumption_report(&holes.degrees(), None, context),
            })
        }
        PermanentRegular => {
            let (n, d) = inp.require_regular()?;
            json!({
                "config": header,
                "permanent": expected_permanent_regular(n, d as usize)?,
                "diagnostics": assumption_report(&DegreePair::regular(n, d), None, context),
            })
        }
        InitialBipartite | TwoCycleBound | Exact => {
            return Err(CliError::Usage(format!(
                "context `{context}` has diagnostics only, no estimate to print"
            )))
        }
    };
    print_object(&out)?;
    Ok(0)
}

fn cmd_exact(ctx: &Ctx, a: &ExactArgs) -> Result<u8, CliError> {
    ctx.json_only()?;
    let inp = &a.input;
    let b = &ctx.budget;
    let count = |c: ExactCount| json!({ "value": c, "ln": c.ln() });
    let (quantity, result) = if a.eulerian {
        ("eulerian-orientations", count(count_eulerian_orientations(&inp.undirected_graph()?, b)?))
    } else if a.orientations {
        let g = inp.undirected_graph()?;
        let delta = inp.delta_for(g.n())?;
        ("orientations", count(count_orientations_with_degrees(&g, &delta, b)?))
    } else if a.bipartite || a.stratified {
        let dp = inp.degree_pair()?;
        let x = inp.forbidden(dp.n())?;
        if a.stratified {
            let strata = count_bipartite_stratified(&dp, &x, b)?;
            ("bipartite-stratified", json!({ "value": strata }))
        } else {
            ("bipartite", count(count_bipartite(&dp, &x, b)?))
        }
    } else if a.loopfree {
        ("loop-free", count(count_loopfree(&inp.degree_pair()?, b)?))
    } else if a.oriented {
        ("oriented", count(count_oriented(&inp.degree_pair()?, b)?))
    } else if let Some(e) = a.event {
        let dp = inp.degree_pair()?;
        let x = inp.forbidden(dp.n())?;
        let p = exact_event_probability(&dp, e.into(), &x, b)?;
        ("event-probability", json!({ "event": e, "value": p, "ln": p.ln(), "approx": p.to_f64() }))
    } else if a.permanent {
        let m = Matrix01::from_graph(&inp.bipartite_graph()?)?;
        ("permanent", count(ryser_permanent(&m, b)?))
    } else if a.expected_permanent {
        let p = exact_expected_permanent(&inp.degree_pair()?, b)?;
        ("expected-permanent", json!({ "value": p, "ln": p.ln(), "approx": p.to_f64() }))
    } else if a.undirected {
        let n = enumerate_undirected(&inp.undirected_degrees()?, b)?.len();
        ("undirected", count(ExactCount(BigUint::from(n))))
    } else {
        let d = inp.undirected_degrees()?;
        let p = exact_expected_orientations(&d, &inp.delta_for(d.len())?, b)?;
        ("expected-orientations", json!({ "value": p, "ln": p.ln(), "approx": p.to_f64() }))
    };
    let header = ctx.header(json!({ "quantity": quantity, "input": inp }));
    print_object(&json!({ "config": header, "quantity": quantity, "result": result }))?;
    Ok(0)
}

fn cmd_grid(ctx: &Ctx, a: &GridArgs, sweep: bool) -> Result<u8, CliError> {
    let ns = match (&a.n_range, a.n) {
        (Some(r), None) => parse_range(r)?,
        (None, Some(n)) => vec![n],
        _ => return Err(CliError::Usage("give exactly one of --n-range and -n".into())),
    };
    let ds: Vec<u32> = match (&a.d_range, a.d.as_slice()) {
        (Some(r), []) => parse_range(r)?.into_iter().map(|d| d as u32).collect(),
        (None, []) if a.family == Family::OneRegular => vec![1],
        (None, ds) if !ds.is_empty() => ds.to_vec(),
        _ => return Err(CliError::Usage("give exactly one of --d and --d-range".into())),
    };
    let variable = match (ns.len() > 1, ds.len() > 1) {
        (_, false) => "n",
        (false, true) => "d",
        (true, true) if sweep => return Err(CliError::Usage("sweep varies one of n and d, not both".into())),
        (true, true) => "n",
    };
    let grid = Grid {
        family: a.family,
        context: a.context.unwrap_or(a.family.default_context()),
        points: ns.iter().flat_map(|&n| ds.iter().map(move |&d| (n, d))).collect(),
        tol: ctx.global.tol.clone(),
    };
    grid.check()?;
    let records = grid.run(&ctx.budget);
    let mut summary = Summary::of(&records);
    if sweep {
        let values = if variable == "n" { ns } else { ds.iter().map(|&d| d as usize).collect() };
        summary.trend = Some(Trend::of(variable, values, &records));
    }
    let header = ctx.header(json!({
        "family": grid.family,
        "context": grid.context,
        "n": ns_or(&a.n_range, a.n),
        "d": ds,
        "tolerance": ctx.global.tol.as_ref().map_or("error_magnitude", Tolerance::source),
        "instances": grid.points.len(),
    }));
    let mut out = io::stdout().lock();
    match ctx.global.format {
        Format::Json => {
            print_line(&mut out, &json!({ "config": header }))?;
            for r in &records {
                print_line(&mut out, r)?;
            }
            print_line(&mut out, &json!({ "summary": summary }))?;
        }
        Format::Csv => write_csv(&mut out, &header, &records, &summary)?,
    }
    Ok(summary.exit_code())
}

fn ns_or(range: &Option<String>, n: Option<usize>) -> Value {
    match (range, n) {
        (Some(r), _) => json!(r),
        (None, n) => json!(n),
    }
}

fn write_csv(out: &mut impl Write, header: &Value, records: &[ComparisonRecord], summary: &Summary) -> Result<(), CliError> {
    writeln!(out, "# config {header}")?;
    {
        let mut w = csv::Writer::from_writer(&mut *out);
        w.write_record([
            "index", "family", "n", "d", "S", "exact", "log_exact", "log_estimate", "log_ratio",
            "error_magnitude", "within_budget", "tolerance", "pass", "error",
        ])?;
        let num = |x: Option<f64>| x.map(|v| v.to_string()).unwrap_or_default();
        for r in records {
            let fam = serde_json::to_value(r.instance.family).expect("family serializes");
            w.write_record([
                r.index.to_string(),
                fam.as_str().unwrap_or_default().to_string(),
                r.instance.n.to_string(),
                r.instance.d.to_string(),
                r.instance.s_total.to_string(),
                r.exact.as_ref().map(|e| e.to_text()).unwrap_or_default(),
                num(r.log_ratio.zip(r.estimate.as_ref()).map(|(lr, e)| lr + e.log_value)),
                num(r.estimate.as_ref().map(|e| e.log_value)),
                num(r.log_ratio),
                num(r.error_magnitude),
                r.within_budget.to_string(),
                num(r.tolerance),
                r.pass.to_string(),
                r.error.clone().unwrap_or_default(),
            ])?;
        }
        w.flush()?;
    }
    writeln!(out, "# summary {}", serde_json::to_string(summary).map_err(io::Error::from)?)?;
    Ok(())
}

fn cmd_sample(ctx: &Ctx, a: &SampleArgs) -> Result<u8, CliError> {
    ctx.json_only()?;
    let inp = &a.input;
    let undirected = a.orientations || (inp.s.is_empty() && inp.t.is_empty() && inp.n.is_none() && inp.degrees.is_none());
    let seed = ctx.global.seed;
    let finish = |mut cfg: SamplerConfig| -> Result<SamplerConfig, CliError> {
        if let Some(m) = a.method {
            cfg.method = m;
        }
        if let Some(b) = a.burn_in {
            cfg.burn_in = b;
        }
        if let Some(m) = a.max_attempts {
            cfg = cfg.with_max_attempts(m);
        }
        cfg.validate()?;
        Ok(cfg)
    };
    if let Some(event) = a.event {
        let dp = inp.degree_pair()?;
        let x = inp.forbidden(dp.n())?;
        let cfg = finish(SamplerConfig::auto(&dp, seed, a.samples))?;
        let ev: Event = event.into();
        let estimate = estimate_event_probability(&dp, &cfg, ev, &x)?;
        let formula = match ev {
            Event::LoopFree => loopfree_probability(&dp),
            Event::TwocycleFree => twocycle_free_probability(&dp),
            Event::AvoidsX => avoidance_factor(&dp, &x),
            Event::ContainsX => subgraph_probability(&dp, &x),
        };
        let header = ctx.header(json!({ "sampler": cfg, "event": event, "input": inp }));
        print_object(&json!({ "config": header, "estimate": estimate, "formula": formula_json(formula) }))?;
        return Ok(0);
    }
    if a.orientations {
        let d = inp.undirected_degrees()?;
        let delta = inp.delta_for(d.len())?;
        let cfg = finish(SamplerConfig::auto_undirected(&d, seed, a.samples))?;
        let estimate = estimate_expected_orientation_count(&d, &delta, &cfg, &ctx.budget)?;
        let header = ctx.header(json!({ "sampler": cfg, "orientations": true, "input": inp }));
        let formula = formula_json(expected_orientations(&d, &delta));
        print_object(&json!({ "config": header, "estimate": estimate, "formula": formula }))?;
        return Ok(0);
    }
    let mut out = io::stdout().lock();
    if undirected {
        let d = inp.undirected_degrees()?;
        let cfg = finish(SamplerConfig::auto_undirected(&d, seed, a.samples))?;
        let graphs = sample_undirected_many(&d, &cfg)?;
        print_line(&mut out, &json!({ "config": ctx.header(json!({ "sampler": cfg, "input": inp })) }))?;
        for (index, g) in graphs.iter().enumerate() {
            print_line(&mut out, &json!({ "index": index, "graph": g }))?;
        }
    } else {
        let dp = inp.degree_pair()?;
        let cfg = finish(SamplerConfig::auto(&dp, seed, a.samples))?;
        let graphs = sample_bipartite_many(&dp, &cfg)?;
        print_line(&mut out, &json!({ "config": ctx.header(json!({ "sampler": cfg, "input": inp })) }))?;
        for (index, g) in graphs.iter().enumerate() {
            print_line(&mut out, &json!({ "index": index, "graph": g }))?;
        }
    }
    Ok(0)
}

/// The closed form next to a Monte Carlo estimate; its hypotheses may not
/// hold, in which case the reason is printed instead.
fn formula_json(f: census_core::Result<LogEstimate>) -> Value {
    match f {
        Ok(e) => json!({ "estimate": e, "value": e.value() }),
        Err(e) => json!({ "error": e.to_string() }),
    }
}

fn cmd_switch(ctx: &Ctx, a: &SwitchArgs) -> Result<u8, CliError> {
    ctx.json_only()?;
    let inp = &a.input;
    let dp = inp.degree_pair()?;
    let b = &ctx.budget;
    let report = match a.kind {
        SwitchKind::XSwitch => verify_x_switch_identity(&dp, &inp.forbidden(dp.n())?, a.stratum, b)?,
        SwitchKind::TwoCycle => verify_twocycle_identity(&dp, a.stratum, b)?,
        SwitchKind::Removal => verify_removal_identity(&dp, &inp.forbidden(dp.n())?, b)?,
    };
    let holds = report.holds();
    let header = ctx.header(a);
    print_object(&json!({ "config": header, "kind": a.kind, "report": report, "holds": holds }))?;
    Ok(if holds { 0 } else { 1 })
}
