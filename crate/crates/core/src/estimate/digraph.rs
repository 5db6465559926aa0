use super::bipartite::{avoidance_terms, bipartite_error, ln_multinomial, q_of};
use super::{Context, LogEstimate};
use crate::degseq::{derive_stats, forbidden_stats, DegreePair, DerivedStats, ForbiddenGraph};
use crate::error::{Error, Result};
use crate::special::ln_factorial;

struct Square {
    st: DerivedStats,
    s: f64,
    w: f64,
    smax: f64,
    tmax: f64,
}

fn square(dp: &DegreePair, what: &'static str) -> Result<Square> {
    dp.require_square(what)?;
    let st = derive_stats(dp);
    if st.s_total == 0 {
        return Err(Error::Domain("S = 0".into()));
    }
    Ok(Square {
        s: st.s_total as f64,
        w: st.w()? as f64,
        smax: st.s_max as f64,
        tmax: st.t_max as f64,
        st,
    })
}

/// Probability that a uniform element of `B(s, t)` has no loop.
pub fn loopfree_probability(dp: &DegreePair) -> Result<LogEstimate> {
    let sq = square(dp, "loop-free probability")?;
    if sq.w == 0.0 {
        return Ok(LogEstimate::one(Context::LoopProbability));
    }
    Ok(LogEstimate::new(
        Context::LoopProbability,
        0.0,
        -sq.w / sq.s,
        sq.smax * sq.tmax * sq.w / (sq.s * sq.s),
    ))
}

/// Number of loop-free simple digraphs with out-degrees `s`, in-degrees `t`.
pub fn estimate_loopfree_digraphs(dp: &DegreePair) -> Result<LogEstimate> {
    let sq = square(dp, "loop-free digraph count")?;
    Ok(LogEstimate::new(
        Context::LoopFree,
        ln_multinomial(dp),
        q_of(&sq.st) - sq.w / sq.s,
        bipartite_error(&sq.st) + sq.smax * sq.tmax * sq.w / (sq.s * sq.s),
    ))
}

fn regular_prefactor(n: usize, d: u32) -> Result<f64> {
    if n == 0 || d == 0 {
        return Err(Error::Domain(format!("need n >= 1 and d >= 1 (got n = {n}, d = {d})")));
    }
    Ok(ln_factorial(d as u64 * n as u64) - 2.0 * n as f64 * ln_factorial(d as u64))
}

/// Closed form for loop-free `d`-regular digraphs on `n` vertices.
pub fn estimate_loopfree_regular(n: usize, d: u32) -> Result<LogEstimate> {
    let pre = regular_prefactor(n, d)?;
    let (nf, df) = (n as f64, d as f64);
    Ok(LogEstimate::new(
        Context::LoopFreeRegular,
        pre,
        -(df * df + 1.0) / 2.0 - df.powi(3) / (6.0 * nf),
        df * df / nf,
    ))
}

/// Loop-free digraphs avoiding every arc of `X`.
pub fn estimate_loopfree_avoiding(dp: &DegreePair, x: &ForbiddenGraph) -> Result<LogEstimate> {
    if x.has_diagonal_edge() {
        return Err(Error::Precondition(
            "forbidden set contains a loop; loops are already excluded".into(),
        ));
    }
    let sq = square(dp, "loop-free avoiding count")?;
    let fs = forbidden_stats(dp, x)?;
    let f = fs.f as f64;
    let (s, w) = (sq.s, sq.w);
    let correction = q_of(&sq.st) - w / s + if fs.f == 0 { 0.0 } else { avoidance_terms(f, s) };
    let error = bipartite_error(&sq.st)
        + fs.delta_max as f64 * (f + w) / (s * s)
        + f * f * (f + w) / s.powi(5);
    Ok(LogEstimate::new(Context::LoopFreeAvoiding, ln_multinomial(dp), correction, error))
}

/// Probability that a uniform loop-free digraph has no 2-cycle.
pub fn twocycle_free_probability(dp: &DegreePair) -> Result<LogEstimate> {
    let sq = square(dp, "2-cycle-free probability")?;
    if sq.w == 0.0 {
        return Ok(LogEstimate::one(Context::TwoCycleFree));
    }
    let s = sq.s;
    Ok(LogEstimate::new(
        Context::TwoCycleFree,
        0.0,
        -sq.w * sq.w / (2.0 * s * s),
        sq.smax * sq.tmax * (sq.smax + sq.tmax) * sq.w / (s * s),
    ))
}

/// Number of oriented graphs (no loops, no 2-cycles) with degrees `(s, t)`.
pub fn estimate_oriented(dp: &DegreePair) -> Result<LogEstimate> {
    let sq = square(dp, "oriented graph count")?;
    let (s, w) = (sq.s, sq.w);
    Ok(LogEstimate::new(
        Context::Oriented,
        ln_multinomial(dp),
        q_of(&sq.st) - w / s - w * w / (2.0 * s * s),
        bipartite_error(&sq.st) + sq.smax * sq.tmax * (sq.smax + sq.tmax) * w / (s * s),
    ))
}

/// Closed form for `d`-regular oriented graphs on `n` vertices.
pub fn estimate_oriented_regular(n: usize, d: u32) -> Result<LogEstimate> {
    let pre = regular_prefactor(n, d)?;
    let df = d as f64;
    Ok(LogEstimate::new(
        Context::OrientedRegular,
        pre,
        -(2.0 * df * df + 1.0) / 2.0,
        df.powi(3) / n as f64,
    ))
}
