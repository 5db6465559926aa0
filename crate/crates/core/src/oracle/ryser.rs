use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::moments::permutations;
use super::{check, Budget, ExactCount};
use crate::degseq::BipartiteGraph;
use crate::error::{Error, Result};

/// A square 0-1 matrix stored as bitmask rows (bit `j` of row `i` is entry `(i, j)`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matrix01 {
    n: usize,
    rows: Vec<u64>,
}

impl Matrix01 {
    pub fn new(n: usize, rows: Vec<u64>) -> Result<Self> {
        if rows.len() != n || n > 64 {
            return Err(Error::Precondition(format!("need {n} rows and n <= 64")));
        }
        if n < 64 && rows.iter().any(|&r| r >> n != 0) {
            return Err(Error::Precondition("entry outside the matrix".into()));
        }
        Ok(Self { n, rows })
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let rows = (0..n)
            .map(|i| (0..n).filter(|&j| f(i, j)).fold(0u64, |m, j| m | 1 << j))
            .collect();
        Self { n, rows }
    }

    pub fn from_graph(g: &BipartiteGraph) -> Result<Self> {
        if g.m() != g.n() {
            return Err(Error::SquareOnly("permanent", g.m(), g.n()));
        }
        Self::new(g.n(), g.rows())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }
}

/// Ryser's formula with Gray-code column toggling. Arithmetic wraps in
/// `i128`; the permanent of an `n <= 24` 0-1 matrix is below `24! < 2^80`,
/// so the wrapped total is exact.
pub(crate) fn ryser_rows(rows: &[u64], n: usize) -> BigUint {
    if n == 0 {
        return BigUint::from(1u32);
    }
    assert!(n <= 30, "ryser_rows: n = {n} too large for exact wrapping arithmetic");
    let mut sums = vec![0i64; n];
    let mut total: i128 = 0;
    let mut subset = 0u64;
    for k in 1u64..(1 << n) {
        let j = k.trailing_zeros();
        subset ^= 1 << j;
        let add = subset >> j & 1 == 1;
        for (i, &r) in rows.iter().enumerate() {
            if r >> j & 1 == 1 {
                sums[i] += if add { 1 } else { -1 };
            }
        }
        let mut prod: i128 = 1;
        for &s in &sums {
            if s == 0 {
                prod = 0;
                break;
            }
            prod = prod.wrapping_mul(s as i128);
        }
        if prod != 0 {
            // sign (-1)^{n - |subset|}
            if (n as u32 - subset.count_ones()).is_multiple_of(2) {
                total = total.wrapping_add(prod);
            } else {
                total = total.wrapping_sub(prod);
            }
        }
    }
    BigUint::from(total as u128)
}

pub fn ryser_permanent(m: &Matrix01, budget: &Budget) -> Result<ExactCount> {
    check("n", budget.max_ryser_n.min(30), m.n)?;
    Ok(ExactCount(ryser_rows(&m.rows, m.n)))
}

/// Sum over all `n!` permutations; for cross-checking only.
pub fn naive_permanent(m: &Matrix01) -> Result<ExactCount> {
    check("n", 8, m.n)?;
    let c = permutations(m.n)
        .iter()
        .filter(|p| p.iter().enumerate().all(|(i, &j)| m.get(i, j)))
        .count();
    Ok(ExactCount::from(c as u128))
}
