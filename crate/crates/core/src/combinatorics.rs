//! Factorials and binomial coefficients in the two regimes the algebra needs:
//! exact integer arithmetic for small arguments and log-factorials beyond.

use std::sync::OnceLock;

/// Arguments up to this bound are handled with exact integer arithmetic.
pub const EXACT_LIMIT: u64 = 20;

const LN_TABLE_LEN: usize = 4096;

fn ln_factorial_table() -> &'static [f64] {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut table = Vec::with_capacity(LN_TABLE_LEN);
        let mut acc = 0.0f64;
        table.push(0.0);
        for k in 1..LN_TABLE_LEN {
            acc += (k as f64).ln();
            table.push(acc);
        }
        table
    })
}

/// `n!` as an exact integer, `None` once it leaves `u64`.
pub fn factorial_exact(n: u64) -> Option<u64> {
    (1..=n).try_fold(1u64, |acc, k| acc.checked_mul(k))
}

/// `ln(n!)`.
pub fn ln_factorial(n: u64) -> f64 {
    let table = ln_factorial_table();
    if (n as usize) < table.len() {
        return table[n as usize];
    }
    // Stirling series; at n >= 4096 the truncation error is far below f64 resolution.
    let x = n as f64;
    x * x.ln() - x + 0.5 * (2.0 * std::f64::consts::PI * x).ln() + 1.0 / (12.0 * x)
        - 1.0 / (360.0 * x * x * x)
}

/// `binom(n, k)` as an exact integer for `n <= EXACT_LIMIT`.
pub fn binomial_exact(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `binom(n, k)` in floating point: exact below [`EXACT_LIMIT`], log-factorials above.
pub fn binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return 0.0;
    }
    if n <= EXACT_LIMIT {
        return binomial_exact(n, k) as f64;
    }
    (ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)).exp()
}

/// `ln binom(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial(n: u64, k: u64) -> f64 {
    if k > n {
        return f64::NEG_INFINITY;
    }
    ln_factorial(n) - ln_factorial(k) - ln_factorial(n - k)
}

/// Number of multi-indices of degree `d` in `m` variables, `binom(d + m - 1, d)`.
pub fn basis_len(m: usize, d: usize) -> usize {
    if m == 0 {
        return usize::from(d == 0);
    }
    let n = (d + m - 1) as u128;
    let k = (m - 1).min(d) as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    usize::try_from(acc).unwrap_or(usize::MAX)
}
