use serde::Serialize;

use super::{Context, LogEstimate};
use crate::degseq::erdos_gallai;
use crate::error::{Error, Result};
use crate::special::{falling, ln_binomial, ln_factorial};

struct Sums {
    d: f64,
    d2: f64,
    d_max: f64,
}

fn sums(d: &[u32]) -> Sums {
    Sums {
        d: d.iter().map(|&x| x as f64).sum(),
        d2: d.iter().map(|&x| falling(x as i64, 2) as f64).sum(),
        d_max: d.iter().copied().max().unwrap_or(0) as f64,
    }
}

fn undirected_error(s: &Sums) -> f64 {
    s.d_max.powi(4) / s.d
}

/// Number of simple graphs with degree sequence `d`.
pub fn estimate_undirected(d: &[u32]) -> Result<LogEstimate> {
    let total: u64 = d.iter().map(|&x| x as u64).sum();
    if total % 2 == 1 {
        return Err(Error::Parity(format!("degree sum {total} is odd")));
    }
    if total < 2 {
        return Err(Error::Domain("degree sum must be at least 2".into()));
    }
    let s = sums(d);
    let half = total / 2;
    let pre = ln_factorial(total)
        - ln_factorial(half)
        - half as f64 * std::f64::consts::LN_2
        - d.iter().map(|&x| ln_factorial(x as u64)).sum::<f64>();
    Ok(LogEstimate::new(
        Context::Undirected,
        pre,
        -s.d2 / (2.0 * s.d) - s.d2 * s.d2 / (4.0 * s.d * s.d),
        undirected_error(&s),
    ))
}

/// Expected number of orientations of a uniform random graph with degrees
/// `d` in which vertex `i` has in-degree `d_i/2 - delta_i` and out-degree
/// `d_i/2 + delta_i`.
pub fn expected_orientations(d: &[u32], delta: &[i64]) -> Result<LogEstimate> {
    if d.len() != delta.len() {
        return Err(Error::Precondition(format!(
            "d has {} entries but delta has {}",
            d.len(),
            delta.len()
        )));
    }
    if delta.iter().sum::<i64>() != 0 {
        return Err(Error::Precondition("delta must sum to 0".into()));
    }
    for (i, (&di, &dl)) in d.iter().zip(delta).enumerate() {
        if di % 2 == 1 {
            return Err(Error::Parity(format!(
                "d[{i}] = {di} is odd; d/2 +- delta is not integral for integer delta"
            )));
        }
        if dl.unsigned_abs() > (di / 2) as u64 {
            return Err(Error::Infeasible(format!(
                "d[{i}]/2 +- delta[{i}] negative (d = {di}, delta = {dl})"
            )));
        }
    }
    let total: u64 = d.iter().map(|&x| x as u64).sum();
    if total == 0 {
        return Err(Error::Domain("D = 0".into()));
    }
    let s = sums(d);
    let half = total / 2;
    let pre = half as f64 * std::f64::consts::LN_2 - ln_binomial(total, half)
        + d.iter()
            .zip(delta)
            .map(|(&di, &dl)| ln_binomial(di as u64, (di as i64 / 2 + dl) as u64))
            .sum::<f64>();
    let delta2: f64 = delta.iter().map(|&x| (x * x) as f64).sum();
    let v: f64 = delta.iter().zip(d).map(|(&x, &di)| (x * di as i64) as f64).sum();
    let dd = s.d;
    let correction = -0.75 + 4.0 * delta2 / dd - 4.0 * delta2 * delta2 / (dd * dd) + 2.0 * v * v / (dd * dd);
    let context = if delta.iter().all(|&x| x == 0) {
        Context::EulerianOrientations
    } else {
        Context::Orientations
    };
    let mut est = LogEstimate::new(context, pre, correction, undirected_error(&s));
    if !erdos_gallai(d) {
        est = est.warn("vacuous expectation: no simple graph has this degree sequence");
    }
    Ok(est)
}

/// Eulerian case `delta = 0`.
pub fn expected_eulerian_orientations(d: &[u32]) -> Result<LogEstimate> {
    expected_orientations(d, &vec![0; d.len()])
}

/// Per-vertex residual entropy estimates, in nats.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ResidualEntropy {
    /// The classical per-vertex estimate.
    pub pauling: f64,
    /// With the `(1/(2n)) log(pi D/2) - 3/(4n)` refinement.
    pub sharpened: f64,
}

pub fn pauling_and_residual_entropy(d: &[u32]) -> Result<ResidualEntropy> {
    if d.is_empty() {
        return Err(Error::Domain("empty degree sequence".into()));
    }
    if let Some((i, &x)) = d.iter().enumerate().find(|(_, &x)| x % 2 == 1 || x == 0) {
        return Err(Error::Parity(format!("d[{i}] = {x}; all degrees must be even and positive")));
    }
    let n = d.len() as f64;
    let total: f64 = d.iter().map(|&x| x as f64).sum();
    let pauling = -(total / (2.0 * n)) * std::f64::consts::LN_2
        + d.iter().map(|&x| ln_binomial(x as u64, x as u64 / 2)).sum::<f64>() / n;
    let sharpened = pauling + (std::f64::consts::PI * total / 2.0).ln() / (2.0 * n) - 3.0 / (4.0 * n);
    Ok(ResidualEntropy { pauling, sharpened })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn perfect_matchings_exact() {
        // (D - 1)!! for 1-regular d
        for (n, want) in [(2usize, 1.0), (4, 3.0), (6, 15.0), (8, 105.0)] {
            let e = estimate_undirected(&vec![1; n]).unwrap();
            assert_eq!(e.correction, 0.0);
            assert!((e.value() / want - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn undirected_parity() {
        assert!(matches!(estimate_undirected(&[1, 1, 1]), Err(Error::Parity(_))));
    }

    #[test]
    fn eulerian_correction() {
        let e = expected_eulerian_orientations(&[2, 2, 2, 2]).unwrap();
        assert_eq!(e.correction, -0.75);
        assert_eq!(e.context, Context::EulerianOrientations);
        // 2^n 2^n / C(2n, n) e^{-3/4} at n = 4
        let want = (256.0f64 / 70.0).ln() - 0.75;
        assert!((e.log_value - want).abs() < 1e-12);
    }

    #[test]
    fn orientation_preconditions() {
        assert!(matches!(expected_orientations(&[3, 3], &[0, 0]), Err(Error::Parity(_))));
        assert!(expected_orientations(&[2, 2], &[1, 0]).is_err());
        assert!(matches!(expected_orientations(&[2, 2], &[2, -2]), Err(Error::Infeasible(_))));
        assert!(expected_orientations(&[2, 2], &[0]).is_err());
    }

    #[test]
    fn vacuous_expectation_warns() {
        let e = expected_orientations(&[2, 2], &[1, -1]).unwrap();
        assert!((e.log_prefactor - (2.0f64.powi(2) / 6.0).ln()).abs() < 1e-12);
        assert_eq!(e.warnings.len(), 1);
        assert!(expected_eulerian_orientations(&[2, 2, 2]).unwrap().warnings.is_empty());
    }

    #[test]
    fn pauling_values() {
        let r = pauling_and_residual_entropy(&[2; 10]).unwrap();
        assert!(r.pauling.abs() < 1e-15);
        let r = pauling_and_residual_entropy(&[2, 2, 2, 2]).unwrap();
        let want = (4.0 * std::f64::consts::PI).ln() / 8.0 - 3.0 / 16.0;
        assert!((r.sharpened - want).abs() < 1e-14);
        let r = pauling_and_residual_entropy(&[4; 8]).unwrap();
        assert!((r.pauling - (-2.0 * 2f64.ln() + 6f64.ln())).abs() < 1e-14);
        assert!(matches!(pauling_and_residual_entropy(&[2, 3, 1]), Err(Error::Parity(_))));
    }
}
