use super::{Context, LogEstimate};
use crate::degseq::{derive_stats, forbidden_stats, hat_stats, DegreePair, DerivedStats, ForbiddenGraph};
use crate::error::{Error, Result};
use crate::special::ln_factorial;

/// The six-term correction exponent; 0 when `S = 0`.
pub(crate) fn q_of(st: &DerivedStats) -> f64 {
    if st.s_total == 0 {
        return 0.0;
    }
    let s = st.s_total as f64;
    let (s2, s3, t2, t3) = (st.s2 as f64, st.s3 as f64, st.t2 as f64, st.t3 as f64);
    let (sq, cu, qu, qi) = (s * s, s * s * s, s.powi(4), s.powi(5));
    -s2 * t2 / (2.0 * sq) - s2 * t2 / (2.0 * cu) + s3 * t3 / (3.0 * cu)
        - s2 * t2 * (s2 + t2) / (4.0 * qu)
        - (s2 * s2 * t3 + s3 * t2 * t2) / (2.0 * qu)
        + s2 * s2 * t2 * t2 / (2.0 * qi)
}

fn require_edges(st: &DerivedStats) -> Result<f64> {
    if st.s_total == 0 {
        Err(Error::Domain("S = 0".into()))
    } else {
        Ok(st.s_total as f64)
    }
}

pub fn q_correction(dp: &DegreePair) -> Result<f64> {
    let st = derive_stats(dp);
    require_edges(&st)?;
    Ok(q_of(&st))
}

/// `ln S! - sum ln s_i! - sum ln t_j!`.
pub(crate) fn ln_multinomial(dp: &DegreePair) -> f64 {
    ln_factorial(dp.total())
        - dp.s().iter().map(|&x| ln_factorial(x as u64)).sum::<f64>()
        - dp.t().iter().map(|&x| ln_factorial(x as u64)).sum::<f64>()
}

/// `s_max^3 t_max^3 / S^2`.
pub(crate) fn bipartite_error(st: &DerivedStats) -> f64 {
    let s = st.s_total as f64;
    (st.s_max as f64 * st.t_max as f64).powi(3) / (s * s)
}

/// Number of simple bipartite graphs with degrees `(s, t)`.
pub fn estimate_bipartite(dp: &DegreePair) -> Result<LogEstimate> {
    let st = derive_stats(dp);
    require_edges(&st)?;
    Ok(LogEstimate::new(
        Context::BipartiteCount,
        ln_multinomial(dp),
        q_of(&st),
        bipartite_error(&st),
    ))
}

/// `exp(-F/S - 3F^2/(2S^3))`.
pub(crate) fn avoidance_terms(f: f64, s: f64) -> f64 {
    -f / s - 3.0 * f * f / (2.0 * s * s * s)
}

/// Fraction of `B(s, t)` that avoids every edge of `X`.
pub fn avoidance_factor(dp: &DegreePair, x: &ForbiddenGraph) -> Result<LogEstimate> {
    let st = derive_stats(dp);
    let s = require_edges(&st)?;
    let fs = forbidden_stats(dp, x)?;
    if fs.f == 0 {
        return Ok(LogEstimate::one(Context::Avoidance));
    }
    let f = fs.f as f64;
    Ok(LogEstimate::new(
        Context::Avoidance,
        0.0,
        avoidance_terms(f, s),
        fs.delta_max as f64 * f / (s * s) + f.powi(3) / s.powi(5),
    ))
}

/// Number of graphs in `B(s, t)` containing no edge of `X`.
pub fn estimate_bipartite_avoiding(dp: &DegreePair, x: &ForbiddenGraph) -> Result<LogEstimate> {
    let b = estimate_bipartite(dp)?;
    let a = avoidance_factor(dp, x)?;
    Ok(LogEstimate::product(Context::BipartiteAvoiding, &[&b, &a]))
}

/// Probability that a uniform element of `B(s, t)` contains every edge of `X`.
///
/// Both bipartite counts in the prefactor are estimated, so their error
/// magnitudes are added to the avoidance error.
pub fn subgraph_probability(dp: &DegreePair, x: &ForbiddenGraph) -> Result<LogEstimate> {
    if x.is_empty() {
        return Ok(LogEstimate::one(Context::SubgraphProbability));
    }
    let h = hat_stats(dp, x)?;
    if h.s_hat == 0 {
        return Err(Error::Domain("S - |X| = 0".into()));
    }
    let residual = dp.minus(x)?;
    let full = estimate_bipartite(dp)?;
    let part = estimate_bipartite(&residual)?;
    let sh = h.s_hat as f64;
    let fh = h.f_hat as f64;
    let (correction, avoid_err) = if h.f_hat == 0 {
        (0.0, 0.0)
    } else {
        (
            avoidance_terms(fh, sh),
            h.delta_hat_max as f64 * fh / (sh * sh) + fh.powi(3) / sh.powi(5),
        )
    };
    Ok(LogEstimate::new(
        Context::SubgraphProbability,
        part.log_value - full.log_value,
        correction,
        avoid_err + part.error_magnitude + full.error_magnitude,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn q_single_cell() {
        // S = 2, S_2 = T_2 = 2, S_3 = T_3 = 0
        let dp = DegreePair::new(vec![2], vec![2]).unwrap();
        assert!((q_correction(&dp).unwrap() + 0.75).abs() < 1e-15);
    }

    #[test]
    fn q_vanishes_on_ones() {
        assert_eq!(q_correction(&DegreePair::regular(9, 1)).unwrap(), 0.0);
        let empty = DegreePair::new(vec![0, 0], vec![0]).unwrap();
        assert!(matches!(q_correction(&empty), Err(Error::Domain(_))));
    }

    #[test]
    fn q_regular_limit() {
        let (n, d) = (10_000usize, 3u32);
        let q = q_correction(&DegreePair::regular(n, d)).unwrap();
        let lead = -((d - 1) as f64).powi(2) / 2.0;
        assert!((q - lead).abs() <= 10.0 * (d as f64).powi(3) / n as f64);
    }

    #[test]
    fn bipartite_small() {
        let e = estimate_bipartite(&DegreePair::regular(2, 1)).unwrap();
        assert!((e.value() - 2.0).abs() < 1e-12);
        let e = estimate_bipartite(&DegreePair::regular(2, 2)).unwrap();
        assert!((e.log_prefactor.exp() - 1.5).abs() < 1e-12);
        let e = estimate_bipartite(&DegreePair::regular(10, 1)).unwrap();
        assert_eq!(e.correction, 0.0);
        assert!((e.value() / 3628800.0 - 1.0).abs() < 1e-12);
    }

    #[test]
    fn avoidance_identity_matching() {
        let x = ForbiddenGraph::diagonal(4);
        let a = avoidance_factor(&DegreePair::regular(4, 1), &x).unwrap();
        assert!((a.correction + 1.375).abs() < 1e-15);
        assert!((a.value() - 0.2528).abs() < 1e-4);
        assert!((a.error_magnitude - (0.75 + 64.0 / 1024.0)).abs() < 1e-15);

        let none = avoidance_factor(&DegreePair::regular(4, 1), &ForbiddenGraph::empty()).unwrap();
        assert_eq!(none.log_value, 0.0);
        assert_eq!(none.error_magnitude, 0.0);
    }

    #[test]
    fn avoiding_without_x_is_bipartite() {
        let dp = DegreePair::new(vec![3, 2, 1], vec![2, 2, 2]).unwrap();
        let a = estimate_bipartite_avoiding(&dp, &ForbiddenGraph::empty()).unwrap();
        assert_eq!(a.log_value, estimate_bipartite(&dp).unwrap().log_value);
    }

    #[test]
    fn avoiding_two_by_two() {
        let x = ForbiddenGraph::new([(0, 0)]).unwrap();
        let e = estimate_bipartite_avoiding(&DegreePair::regular(2, 1), &x).unwrap();
        let want = 2f64.ln() - 0.5 - 3.0 / 16.0;
        assert!((e.log_value - want).abs() < 1e-14);
    }

    #[test]
    fn subgraph_single_edge_of_matching() {
        for n in 2..9 {
            let x = ForbiddenGraph::new([(0, 0)]).unwrap();
            let p = subgraph_probability(&DegreePair::regular(n, 1), &x).unwrap();
            assert_eq!(p.correction, 0.0);
            assert!((p.value() * n as f64 - 1.0).abs() < 1e-12);
        }
        let p = subgraph_probability(&DegreePair::regular(3, 2), &ForbiddenGraph::empty()).unwrap();
        assert_eq!(p.log_value, 0.0);
    }

    #[test]
    fn subgraph_infeasible() {
        let dp = DegreePair::new(vec![1, 0], vec![1, 0]).unwrap();
        let x = ForbiddenGraph::new([(1, 1)]).unwrap();
        assert!(matches!(subgraph_probability(&dp, &x), Err(Error::Infeasible(_))));
    }

    proptest! {
        #[test]
        fn q_symmetries(s in proptest::collection::vec(1u32..6, 2..8), seed in any::<u64>()) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let mut t = s.clone();
            t.shuffle(&mut rng);
            t.rotate_left(1);
            let dp = DegreePair::new(s.clone(), t.clone()).unwrap();
            let q = q_correction(&dp).unwrap();
            let swapped = q_correction(&DegreePair::new(t.clone(), s.clone()).unwrap()).unwrap();
            let mut s2 = s.clone();
            s2.shuffle(&mut rng);
            let permuted = q_correction(&DegreePair::new(s2, t).unwrap()).unwrap();
            prop_assert!((q - swapped).abs() <= 1e-12 * q.abs().max(1.0));
            prop_assert!((q - permuted).abs() <= 1e-12 * q.abs().max(1.0));
        }
    }
}
