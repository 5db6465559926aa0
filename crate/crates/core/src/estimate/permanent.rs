use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::bipartite::q_of;
use super::{Context, LogEstimate};
use crate::degseq::{derive_stats, BipartiteGraph, DegreePair};
use crate::error::{Error, Result};
use crate::oracle::decimal;
use crate::special::{factorial_big, ln_binomial, ln_factorial};

/// Largest order accepted by [`permanent_complement_ie`].
pub const COMPLEMENT_IE_MAX_N: usize = 14;

fn permanent_error(smax: f64, tmax: f64, s: f64) -> f64 {
    if s == 0.0 {
        0.0
    } else {
        (smax * tmax).powf(1.5) / s
    }
}

/// Expected permanent of a uniform 0-1 matrix with row sums `s` and column
/// sums `t`, sparse regime. `Q` of the all-zero residual is taken as 0.
pub fn expected_permanent_sparse(dp: &DegreePair) -> Result<LogEstimate> {
    dp.require_square("expected permanent")?;
    if dp.s().iter().chain(dp.t()).any(|&x| x == 0) {
        return Err(Error::Domain("row and column sums must be positive".into()));
    }
    let n = dp.n() as u64;
    let st = derive_stats(dp);
    let reduced = derive_stats(&dp.minus_ones()?);
    let s = st.s_total as f64;
    let pre = dp
        .s()
        .iter()
        .zip(dp.t())
        .map(|(&a, &b)| (a as f64 * b as f64).ln())
        .sum::<f64>()
        - ln_binomial(st.s_total, n);
    let correction = -(s - n as f64) / n as f64 + q_of(&reduced) - q_of(&st);
    Ok(LogEstimate::new(
        Context::PermanentSparse,
        pre,
        correction,
        permanent_error(st.s_max as f64, st.t_max as f64, s),
    ))
}

/// Expected permanent of a uniform 0-1 matrix with row sums `n - s_i` and
/// column sums `n - t_j` (so `s`, `t` count the zeros).
pub fn expected_permanent_dense(dp: &DegreePair) -> Result<LogEstimate> {
    dp.require_square("expected permanent")?;
    let n = dp.n();
    if n == 0 {
        return Err(Error::Domain("empty matrix".into()));
    }
    if dp.s_max() > n as u64 || dp.t_max() > n as u64 {
        return Err(Error::Domain(format!("zero count exceeds n = {n}")));
    }
    let s = dp.total() as f64;
    Ok(LogEstimate::new(
        Context::PermanentDense,
        ln_factorial(n as u64),
        -s / n as f64,
        permanent_error(dp.s_max() as f64, dp.t_max() as f64, s),
    ))
}

/// Exact permanent of the complement of a hole pattern by inclusion-exclusion,
/// with the additive error window around `n! e^{-S/n}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComplementIe {
    pub n: usize,
    #[serde(with = "decimal")]
    pub exact: BigUint,
    /// `m_k`: ordered sequences of `k` holes, no two sharing a row or column.
    #[serde(with = "decimal::vec")]
    pub ordered_selections: Vec<BigUint>,
    pub lower: f64,
    pub upper: f64,
    pub holes: u64,
    pub s_max: u64,
    pub t_max: u64,
}

impl ComplementIe {
    /// Sandwich `(S - C(k,2)(s_max + t_max)) S^{k-1} <= m_k <= (S)_k`.
    pub fn selection_bounds(&self, k: usize) -> (BigInt, BigInt) {
        let s = BigInt::from(self.holes);
        if k == 0 {
            return (BigInt::from(1), BigInt::from(1));
        }
        let pairs = BigInt::from((k * (k - 1) / 2) as u64);
        let lower = (&s - pairs * BigInt::from(self.s_max + self.t_max)) * s.pow(k as u32 - 1);
        let mut upper = BigInt::from(1);
        for i in 0..k as u64 {
            let f = BigInt::from(self.holes) - BigInt::from(i);
            if !f.is_positive() {
                upper = BigInt::zero();
                break;
            }
            upper *= f;
        }
        (lower, upper)
    }
}

/// Number of `k`-matchings of a bipartite hole graph, for each `k`.
fn matching_counts(holes: &BipartiteGraph) -> Vec<u128> {
    let n = holes.n();
    let rows = holes.rows();
    let mut dp = vec![0u128; 1 << n];
    dp[0] = 1;
    for &row in &rows {
        let mut next = dp.clone();
        for mask in 0..dp.len() {
            if dp[mask] == 0 {
                continue;
            }
            let mut free = row & !(mask as u64);
            while free != 0 {
                let j = free.trailing_zeros();
                free &= free - 1;
                next[mask | (1 << j)] += dp[mask];
            }
        }
        dp = next;
    }
    let mut r = vec![0u128; n + 1];
    for (mask, &c) in dp.iter().enumerate() {
        r[(mask as u64).count_ones() as usize] += c;
    }
    r
}

pub fn permanent_complement_ie(holes: &BipartiteGraph) -> Result<ComplementIe> {
    let n = holes.n();
    if holes.m() != n {
        return Err(Error::SquareOnly("hole pattern", holes.m(), n));
    }
    if n == 0 {
        return Err(Error::Domain("empty matrix".into()));
    }
    if n > COMPLEMENT_IE_MAX_N {
        return Err(Error::Budget {
            what: "n",
            limit: COMPLEMENT_IE_MAX_N,
            actual: n,
        });
    }
    let r = matching_counts(holes);
    let mut total = BigInt::zero();
    let mut ordered = Vec::with_capacity(n + 1);
    for (k, &rk) in r.iter().enumerate() {
        let term = BigInt::from(factorial_big((n - k) as u64)) * BigInt::from(rk);
        if k % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
        ordered.push(factorial_big(k as u64) * BigUint::from(rk));
    }
    let exact = total
        .to_biguint()
        .expect("inclusion-exclusion permanent is nonnegative");
    let deg = holes.degrees();
    let (s, smax, tmax) = (deg.total(), deg.s_max(), deg.t_max());
    let (sf, nf) = (s as f64, n as f64);
    let nfact = ln_factorial(n as u64).exp();
    let centre = (-sf / nf).exp();
    let spread = (sf / nf).exp() * (smax + tmax) as f64 * sf / (2.0 * nf * nf);
    Ok(ComplementIe {
        n,
        exact,
        ordered_selections: ordered,
        lower: nfact * (centre - spread),
        upper: nfact * (centre + spread),
        holes: s,
        s_max: smax,
        t_max: tmax,
    })
}

/// Which argument covers `(n, d)`; the first matching range wins.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegularRange {
    /// `d <= n^{1/3}`.
    Sparse,
    /// `d <= 2n / ln n`.
    LowerMiddle,
    /// `d <= n - 2n / ln n`.
    Dense,
    /// `d <= n - n^{1/3}`.
    UpperMiddle,
    /// `d <= n - 1`.
    Complement,
    /// `d = n`.
    Full,
}

impl RegularRange {
    pub fn classify(n: usize, d: usize) -> RegularRange {
        let (nf, df) = (n as f64, d as f64);
        let cube = nf.cbrt();
        let log_cut = 2.0 * nf / nf.ln();
        if d == n {
            RegularRange::Full
        } else if df <= cube {
            RegularRange::Sparse
        } else if df <= log_cut {
            RegularRange::LowerMiddle
        } else if df <= nf - log_cut {
            RegularRange::Dense
        } else if df <= nf - cube {
            RegularRange::UpperMiddle
        } else {
            RegularRange::Complement
        }
    }
}

/// Expected permanent of a uniform `d`-regular `n x n` 0-1 matrix: the
/// range-uniform headline plus the range-specific expressions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegularPermanent {
    pub n: usize,
    pub d: usize,
    /// `headline` for `d < n`; the exact `n!` at `d = n`.
    pub estimate: LogEstimate,
    /// `d^{2n} / C(dn, n) * e^{-1/2}`.
    pub headline: LogEstimate,
    /// The Stirling form of the headline.
    pub stirling: LogEstimate,
    pub sparse: LogEstimate,
    /// `ln( n! d^{2n} C(n^2, nd) / (n^{2n} C(n(n-1), n(d-1))) )`.
    pub log_middle: f64,
    /// `ln( n! lambda^n exp((1 - lambda)/(2 lambda)) )`, `lambda = d/n`.
    pub log_dense_lambda: f64,
    /// Complement-margin form `n! e^{-(n-d)}`.
    pub complement: LogEstimate,
    #[serde(with = "decimal::option", skip_serializing_if = "Option::is_none")]
    pub exact: Option<BigUint>,
    pub range: RegularRange,
}

/// `sqrt(2 pi (d-1) n / d) ((d-1)^{d-1} / d^{d-2})^n e^{-1/2}`.
pub fn regular_permanent_stirling(n: usize, d: usize) -> LogEstimate {
    let (nf, df) = (n as f64, d as f64);
    let pre = 0.5 * (2.0 * std::f64::consts::PI * (df - 1.0) * nf / df).ln()
        + nf * ((df - 1.0) * (df - 1.0).ln() - (df - 2.0) * df.ln());
    LogEstimate::new(Context::PermanentRegular, pre, -0.5, nf.powf(-1.0 / 7.0))
}

pub fn expected_permanent_regular(n: usize, d: usize) -> Result<RegularPermanent> {
    if d < 2 || d > n {
        return Err(Error::Domain(format!("need 2 <= d <= n (got n = {n}, d = {d})")));
    }
    let (nu, du) = (n as u64, d as u64);
    let (nf, df) = (n as f64, d as f64);
    let headline = LogEstimate::new(
        Context::PermanentRegular,
        2.0 * nf * df.ln() - ln_binomial(du * nu, nu),
        -0.5,
        nf.powf(-1.0 / 7.0),
    );
    let ln_nfact = ln_factorial(nu);
    let log_middle = ln_nfact + 2.0 * nf * df.ln() + ln_binomial(nu * nu, nu * du)
        - 2.0 * nf * nf.ln()
        - ln_binomial(nu * (nu - 1), nu * (du - 1));
    let lambda = df / nf;
    let log_dense_lambda = ln_nfact + nf * lambda.ln() + (1.0 - lambda) / (2.0 * lambda);
    let sparse = expected_permanent_sparse(&DegreePair::regular(n, d as u32))?;
    let complement = expected_permanent_dense(&DegreePair::regular(n, (n - d) as u32))?;
    let (estimate, exact) = if d == n {
        (
            LogEstimate::new(Context::Exact, ln_nfact, 0.0, 0.0),
            Some(factorial_big(nu)),
        )
    } else {
        (headline.clone(), None)
    };
    Ok(RegularPermanent {
        n,
        d,
        estimate,
        headline,
        stirling: regular_permanent_stirling(n, d),
        sparse,
        log_middle,
        log_dense_lambda,
        complement,
        exact,
        range: RegularRange::classify(n, d),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sparse_permutation_matrices() {
        for n in 1..8 {
            let e = expected_permanent_sparse(&DegreePair::regular(n, 1)).unwrap();
            assert_eq!(e.log_value, 0.0);
        }
        let dp = DegreePair::new(vec![1, 0], vec![1, 0]).unwrap();
        assert!(matches!(expected_permanent_sparse(&dp), Err(Error::Domain(_))));
    }

    #[test]
    fn dense_all_ones() {
        let e = expected_permanent_dense(&DegreePair::regular(6, 0)).unwrap();
        assert_eq!(e.correction, 0.0);
        assert!((e.value() - 720.0).abs() < 1e-9);
        let e = expected_permanent_dense(&DegreePair::regular(4, 1)).unwrap();
        assert_eq!(e.correction, -1.0);
        assert!(expected_permanent_dense(&DegreePair::regular(3, 4)).is_err());
    }

    #[test]
    fn complement_examples() {
        let diag = BipartiteGraph::from_arcs(4, (0..4).map(|i| (i, i))).unwrap();
        let c = permanent_complement_ie(&diag).unwrap();
        assert_eq!(c.exact, BigUint::from(9u32));
        // m_k = (n)_k for the diagonal
        let falling: Vec<u32> = vec![1, 4, 12, 24, 24];
        for (m, f) in c.ordered_selections.iter().zip(falling) {
            assert_eq!(*m, BigUint::from(f));
        }

        let empty = BipartiteGraph::new(5, 5, []).unwrap();
        assert_eq!(permanent_complement_ie(&empty).unwrap().exact, BigUint::from(120u32));

        let one = BipartiteGraph::new(3, 3, [(0, 0)]).unwrap();
        assert_eq!(permanent_complement_ie(&one).unwrap().exact, BigUint::from(4u32));

        let big = BipartiteGraph::new(15, 15, []).unwrap();
        assert!(permanent_complement_ie(&big).unwrap_err().is_budget());
    }

    #[test]
    fn selection_sandwich() {
        let holes = BipartiteGraph::new(6, 6, [(0, 0), (0, 3), (1, 1), (2, 5), (4, 4), (5, 2)]).unwrap();
        let c = permanent_complement_ie(&holes).unwrap();
        for (k, m) in c.ordered_selections.iter().enumerate() {
            let (lo, hi) = c.selection_bounds(k);
            let m = BigInt::from(m.clone());
            assert!(lo <= m && m <= hi, "k = {k}");
        }
        let exact = c.exact.to_string().parse::<f64>().unwrap();
        assert!(c.lower <= exact && exact <= c.upper);
    }

    #[test]
    fn regular_full_is_factorial() {
        for n in 2..=10 {
            let r = expected_permanent_regular(n, n).unwrap();
            assert_eq!(r.exact, Some(factorial_big(n as u64)));
            assert_eq!(r.range, RegularRange::Full);
            assert_eq!(r.estimate.correction, 0.0);
            assert!((r.log_middle - ln_factorial(n as u64)).abs() < 1e-9);
            assert!((r.complement.log_value - ln_factorial(n as u64)).abs() < 1e-12);
        }
        assert!(expected_permanent_regular(5, 1).is_err());
        assert!(expected_permanent_regular(5, 6).is_err());
    }

    #[test]
    fn stirling_forms_agree() {
        for (n, d) in [(100usize, 5usize), (200, 3)] {
            let r = expected_permanent_regular(n, d).unwrap();
            let rel = (r.headline.log_value - r.stirling.log_value).abs() / r.headline.log_value.abs();
            assert!(rel < 1e-2, "({n}, {d}): {rel}");
        }
    }

    #[test]
    fn ranges_at_200() {
        assert_eq!(RegularRange::classify(200, 5), RegularRange::Sparse);
        assert_eq!(RegularRange::classify(200, 6), RegularRange::LowerMiddle);
        assert_eq!(RegularRange::classify(200, 100), RegularRange::Dense);
        assert_eq!(RegularRange::classify(200, 190), RegularRange::UpperMiddle);
        assert_eq!(RegularRange::classify(200, 197), RegularRange::Complement);
    }

    #[test]
    fn sparse_and_middle_agree_near_cutoff() {
        for d in [5usize, 6] {
            let r = expected_permanent_regular(200, d).unwrap();
            let rel = (r.sparse.log_value - r.log_middle).abs() / r.log_middle.abs();
            assert!(rel < 0.05, "d = {d}: {rel}");
        }
    }
}
