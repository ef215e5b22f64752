use std::fmt;

use crate::combinatorics::{basis_len, factorial_exact, ln_factorial, EXACT_LIMIT};
use crate::error::{Error, Result};

/// Exponent vector `D = (d_1, ..., d_m)` labelling the orthonormal basis vector
/// `v^D = v_1^{d_1} ... v_m^{d_m} / sqrt(d_1! ... d_m!)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiIndex {
    exponents: Vec<u32>,
    degree: usize,
}

impl MultiIndex {
    pub fn new(exponents: Vec<u32>) -> Self {
        let degree = exponents.iter().map(|&e| e as usize).sum();
        Self { exponents, degree }
    }

    /// The multi-index of degree zero in `m` variables.
    pub fn zero(m: usize) -> Self {
        Self::new(vec![0; m])
    }

    /// `e_i`, the label of the degree-one basis vector `v_i`.
    pub fn unit(m: usize, i: usize) -> Self {
        let mut exponents = vec![0; m];
        exponents[i] = 1;
        Self { exponents, degree: 1 }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn dim(&self) -> usize {
        self.exponents.len()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Componentwise sum `D + E`.
    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.dim(), other.dim());
        Self {
            exponents: self
                .exponents
                .iter()
                .zip(&other.exponents)
                .map(|(a, b)| a + b)
                .collect(),
            degree: self.degree + other.degree,
        }
    }

    /// Componentwise difference `D - B`, `None` unless `B <= D` entrywise.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let exponents = self
            .exponents
            .iter()
            .zip(&other.exponents)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()?;
        Some(Self::new(exponents))
    }

    /// Position of this multi-index in [`enumerate_basis`] for its degree.
    pub fn rank(&self) -> usize {
        rank_of(&self.exponents, self.degree)
    }

    /// `ln(d_1! ... d_m!)`.
    pub fn ln_factorial(&self) -> f64 {
        self.exponents.iter().map(|&e| ln_factorial(e as u64)).sum()
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// Rank of a raw exponent vector of the given degree.
pub(crate) fn rank_of(exponents: &[u32], degree: usize) -> usize {
    let m = exponents.len();
    let mut remaining = degree;
    let mut rank = 0usize;
    for (i, &e) in exponents.iter().enumerate() {
        let parts_left = m - i;
        if parts_left == 1 {
            break;
        }
        let e = e as usize;
        // entries with a larger exponent in slot i come first
        if remaining > e {
            rank += basis_len(parts_left, remaining - e - 1);
        }
        remaining -= e;
    }
    rank
}

/// All multi-indices of degree `d` in `m` variables, graded-lexicographic
/// (first exponent descending, then recursively on the rest).
pub fn enumerate_basis(m: usize, d: usize) -> Vec<MultiIndex> {
    assert!(m >= 1, "dimension must be positive");
    let mut out = Vec::with_capacity(basis_len(m, d));
    let mut current = vec![0u32; m];
    fill(&mut current, 0, d, &mut out);
    out
}

fn fill(current: &mut [u32], slot: usize, remaining: usize, out: &mut Vec<MultiIndex>) {
    let m = current.len();
    if slot == m - 1 {
        current[slot] = remaining as u32;
        out.push(MultiIndex::new(current.to_vec()));
        return;
    }
    for e in (0..=remaining).rev() {
        current[slot] = e as u32;
        fill(current, slot + 1, remaining - e, out);
    }
    current[slot] = 0;
}

/// `sqrt(d_1! ... d_m!)`, the factor relating the monomial `v_1^{d_1} ... v_m^{d_m}`
/// to the unit vector `v^D`.
pub fn normalization(index: &MultiIndex) -> Result<f64> {
    if index.exponents.iter().all(|&e| u64::from(e) <= EXACT_LIMIT) {
        let mut acc = 1.0f64;
        for &e in &index.exponents {
            acc *= factorial_exact(u64::from(e)).expect("within exact limit") as f64;
        }
        if acc.is_finite() {
            return Ok(acc.sqrt());
        }
    }
    let value = (0.5 * index.ln_factorial()).exp();
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::Overflow(format!(
            "sqrt of factorial product for multi-index {index}"
        )))
    }
}
