use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Input to the ratio-recurrence summation bound.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SummationInput {
    /// `A(1..=N)`.
    pub a: Vec<f64>,
    /// `C(1..=N)`.
    pub c: Vec<f64>,
    pub c_hat: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SummationOutput {
    /// `n_0 = 1, n_1, ..., n_N`.
    pub terms: Vec<f64>,
    /// `n_0 + n_1 + ... + n_N`.
    pub sum: f64,
    pub lower: f64,
    pub upper: f64,
}

impl SummationOutput {
    /// Allows a relative `1e-12` for rounding: when the tail term is below
    /// one ulp the bounds collapse onto the exact sum.
    pub fn sandwich_holds(&self) -> bool {
        let slack = 1e-12 * self.sum.abs();
        self.lower <= self.sum + slack && self.sum <= self.upper + slack
    }
}

impl SummationInput {
    pub fn validate(&self) -> Result<()> {
        let n = self.a.len();
        if n < 2 {
            return Err(Error::Precondition(format!("N = {n} < 2")));
        }
        if self.c.len() != n {
            return Err(Error::Precondition("A and C differ in length".into()));
        }
        if !(self.c_hat > 0.0 && self.c_hat < 1.0 / 3.0) {
            return Err(Error::Precondition(format!("c_hat = {} outside (0, 1/3)", self.c_hat)));
        }
        for (k, (&a, &c)) in self.a.iter().zip(&self.c).enumerate() {
            let i = k as f64 + 1.0;
            if a < 0.0 {
                return Err(Error::Precondition(format!("A({}) = {a} < 0", k + 1)));
            }
            if a - (i - 1.0) * c < 0.0 {
                return Err(Error::Precondition(format!(
                    "A({0}) - {1} C({0}) < 0",
                    k + 1,
                    k
                )));
            }
        }
        let (_, a2, c1, c2) = self.extremes();
        let worst = (a2 / n as f64).max(c1.abs()).max(c2.abs());
        if worst > self.c_hat {
            return Err(Error::Precondition(format!(
                "max(A_2/N, |C_1|, |C_2|) = {worst} exceeds c_hat = {}",
                self.c_hat
            )));
        }
        Ok(())
    }

    /// `(A_1, A_2, C_1, C_2)`: min and max of `A` and `C`.
    fn extremes(&self) -> (f64, f64, f64, f64) {
        let min = |v: &[f64]| v.iter().copied().fold(f64::INFINITY, f64::min);
        let max = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        (min(&self.a), max(&self.a), min(&self.c), max(&self.c))
    }
}

/// Terms `n_i = (A(i) - (i-1) C(i)) n_{i-1} / i` and the two-sided bound
/// on their sum, which includes `n_0 = 1`.
pub fn summation_bounds(input: &SummationInput) -> Result<SummationOutput> {
    input.validate()?;
    let n = input.a.len();
    let mut terms = Vec::with_capacity(n + 1);
    terms.push(1.0);
    for (k, (&a, &c)) in input.a.iter().zip(&input.c).enumerate() {
        let i = k as f64 + 1.0;
        let prev = terms[k];
        terms.push((a - (i - 1.0) * c) * prev / i);
    }
    let sum = terms.iter().sum();
    let (a1, a2, c1, c2) = input.extremes();
    let tail = (2.0 * std::f64::consts::E * input.c_hat).powi(n as i32);
    Ok(SummationOutput {
        terms,
        sum,
        lower: (a1 - 0.5 * a1 * c2).exp() - tail,
        upper: (a2 - 0.5 * a2 * c1 + 0.5 * a2 * c1 * c1).exp() + tail,
    })
}

/// Mean and variance of `sum_j u(j) v(sigma_j)` over uniform permutations,
/// and the window that contains its exponential moment.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PermutationStats {
    pub mean: f64,
    pub variance: f64,
    /// Bound on the remainder: `1.5 n alpha^3 + 11 n alpha^4`.
    pub k_bound: f64,
    pub window: (f64, f64),
}

pub fn permutation_functional_stats(u: &[f64], v: &[f64]) -> Result<PermutationStats> {
    let n = u.len();
    if v.len() != n {
        return Err(Error::Precondition("u and v differ in length".into()));
    }
    if n < 2 {
        return Err(Error::Precondition(format!("n = {n} < 2")));
    }
    let nf = n as f64;
    let ubar = u.iter().sum::<f64>() / nf;
    let vbar = v.iter().sum::<f64>() / nf;
    let su: f64 = u.iter().map(|x| (x - ubar) * (x - ubar)).sum();
    let sv: f64 = v.iter().map(|x| (x - vbar) * (x - vbar)).sum();
    let mean = nf * ubar * vbar;
    let variance = su * sv / (nf - 1.0);
    let range = |w: &[f64]| {
        w.iter().copied().fold(f64::NEG_INFINITY, f64::max)
            - w.iter().copied().fold(f64::INFINITY, f64::min)
    };
    let alpha = range(u) * range(v);
    let k_bound = 1.5 * nf * alpha.powi(3) + 11.0 * nf * alpha.powi(4);
    let centre = mean + variance / 2.0;
    Ok(PermutationStats {
        mean,
        variance,
        k_bound,
        window: ((centre - k_bound).exp(), (centre + k_bound).exp()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn zero_input() {
        for n in [2usize, 5, 20] {
            let inp = SummationInput {
                a: vec![0.0; n],
                c: vec![0.0; n],
                c_hat: 0.1,
            };
            let out = summation_bounds(&inp).unwrap();
            assert_eq!(out.sum, 1.0);
            let tail = (0.2 * std::f64::consts::E).powi(n as i32);
            assert!((out.lower - (1.0 - tail)).abs() < 1e-15);
            assert!(out.sandwich_holds());
        }
    }

    #[test]
    fn poisson_collapse() {
        let a = 2.0;
        let inp = SummationInput {
            a: vec![a; 60],
            c: vec![0.0; 60],
            c_hat: 0.1,
        };
        let out = summation_bounds(&inp).unwrap();
        assert!((out.sum - a.exp()).abs() < 1e-12);
        assert!((out.terms[3] - a.powi(3) / 6.0).abs() < 1e-14);
        assert!(out.sandwich_holds());
    }

    #[test]
    fn invalid_inputs() {
        let ok = SummationInput {
            a: vec![0.1, 0.1],
            c: vec![0.0, 0.0],
            c_hat: 0.2,
        };
        assert!(ok.validate().is_ok());
        let mut bad = ok.clone();
        bad.a[0] = -0.1;
        assert!(summation_bounds(&bad).is_err());
        let mut bad = ok.clone();
        bad.c[1] = 0.15;
        assert!(summation_bounds(&bad).is_err());
        let mut bad = ok.clone();
        bad.c_hat = 0.4;
        assert!(summation_bounds(&bad).is_err());
        let mut bad = ok;
        bad.a.truncate(1);
        bad.c.truncate(1);
        assert!(summation_bounds(&bad).is_err());
    }

    #[test]
    fn functional_small() {
        let p = permutation_functional_stats(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap();
        assert!((p.mean - 1.0 / 3.0).abs() < 1e-15);
        assert!((p.variance - 2.0 / 9.0).abs() < 1e-15);
        let p = permutation_functional_stats(&[0.5; 4], &[0.5; 4]).unwrap();
        assert_eq!((p.mean, p.variance, p.k_bound), (1.0, 0.0, 0.0));
        assert!(permutation_functional_stats(&[1.0], &[1.0]).is_err());
    }

    fn valid_input() -> impl Strategy<Value = SummationInput> {
        (2usize..=30).prop_flat_map(|n| {
            (
                proptest::collection::vec(0.0f64..1.0, n),
                proptest::collection::vec(-0.05f64..0.05, n),
            )
                .prop_map(move |(a, c)| {
                    let c = c
                        .iter()
                        .zip(&a)
                        .enumerate()
                        .map(|(k, (&c, &a))| if k == 0 { c } else { c.min(a / k as f64) })
                        .collect();
                    SummationInput { a, c, c_hat: 0.3 }
                })
                .prop_filter("A_2/N <= c_hat", |inp| inp.validate().is_ok())
        })
    }

    proptest! {
        #[test]
        fn sandwich(inp in valid_input()) {
            let out = summation_bounds(&inp).unwrap();
            prop_assert!(out.sandwich_holds(), "{:?} -> {:?}", inp, out);
        }
    }
}
