//! Log-space factorials and binomials, plus small integer helpers.

/// `ln(n!)`.
pub fn ln_factorial(n: u64) -> f64 {
    if n < 2 {
        return 0.0;
    }
    libm::lgamma(n as f64 + 1.0)
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// `ln Γ(x)` for real `x > 0`.
pub fn ln_gamma(x: f64) -> f64 {
    libm::lgamma(x)
}

/// Falling factorial `(x)_b = x (x-1) ... (x-b+1)`, with `(x)_0 = 1`.
pub fn falling(x: i64, b: u32) -> i128 {
    (0..b as i64).fold(1i128, |acc, k| acc * (x - k) as i128)
}

/// Exact `n!` as a big integer.
pub fn factorial_big(n: u64) -> num_bigint::BigUint {
    (1..=n).fold(num_bigint::BigUint::from(1u32), |acc, k| acc * k)
}

/// Upper tail probability of the chi-square distribution via the
/// Wilson–Hilferty cube-root normal approximation. Accurate to a few
/// parts in 10^4 for `dof >= 30`.
pub fn chi_square_sf(stat: f64, dof: f64) -> f64 {
    if stat <= 0.0 {
        return 1.0;
    }
    let k = dof;
    let z = ((stat / k).cbrt() - (1.0 - 2.0 / (9.0 * k))) / (2.0 / (9.0 * k)).sqrt();
    0.5 * libm::erfc(z / std::f64::consts::SQRT_2)
}
