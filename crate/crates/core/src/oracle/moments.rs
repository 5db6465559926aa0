use serde::Serialize;

use super::check;
use crate::error::{Error, Result};

pub const MAX_PERMUTATION_N: usize = 9;

/// All permutations of `0..n` in lexicographic order.
pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// Averages of `Psi(sigma) = sum_j u(j) v(sigma_j)` over all of `S_n`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct MomentOracle {
    pub mean: f64,
    pub variance: f64,
    pub exp_moment: f64,
}

pub fn permutation_moment_oracle(u: &[f64], v: &[f64]) -> Result<MomentOracle> {
    let n = u.len();
    if v.len() != n {
        return Err(Error::Precondition("u and v differ in length".into()));
    }
    check("n", MAX_PERMUTATION_N, n)?;
    let perms = permutations(n);
    let psi: Vec<f64> = perms
        .iter()
        .map(|p| p.iter().enumerate().map(|(j, &k)| u[j] * v[k]).sum())
        .collect();
    let count = psi.len() as f64;
    let mean = psi.iter().sum::<f64>() / count;
    let variance = psi.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>() / count;
    let exp_moment = psi.iter().map(|x| x.exp()).sum::<f64>() / count;
    Ok(MomentOracle {
        mean,
        variance,
        exp_moment,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_listing() {
        assert_eq!(permutations(0), vec![Vec::<usize>::new()]);
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(permutations(5).len(), 120);
    }

    #[test]
    fn small_oracle() {
        let r = permutation_moment_oracle(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap();
        assert!((r.mean - 1.0 / 3.0).abs() < 1e-15);
        assert!((r.variance - 2.0 / 9.0).abs() < 1e-15);
        let r = permutation_moment_oracle(&[0.3, -1.0, 2.0], &[0.7; 3]).unwrap();
        assert!(r.variance.abs() < 1e-15);
        assert!(permutation_moment_oracle(&[0.0; 10], &[0.0; 10]).unwrap_err().is_budget());
    }
}
