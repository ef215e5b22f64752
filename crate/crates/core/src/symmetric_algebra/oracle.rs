//! Brute-force references computed straight from the defining formulas.
//! They share no code path with the coordinate arithmetic they are used to check.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_complex::Complex64;

use super::multi_index::MultiIndex;
use crate::error::{Error, Result};

/// Largest degree accepted by the factorial-cost oracles.
pub const ORACLE_DEGREE_GUARD: usize = 8;

/// An ordered list `x_1, ..., x_d` of vectors in `C^m`.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorList {
    dim: usize,
    vectors: Vec<Vec<Complex64>>,
}

impl VectorList {
    pub fn new(dim: usize, vectors: Vec<Vec<Complex64>>) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if let Some(bad) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.len(),
            });
        }
        Ok(Self { dim, vectors })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<Complex64>] {
        &self.vectors
    }
}

fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

/// `⟨x_1⋯x_d | y_1⋯y_d⟩ = Σ_p Π_j ⟨x_j | y_{p(j)}⟩`, summed over all `d!` permutations.
pub fn permanent_inner_oracle(xs: &VectorList, ys: &VectorList) -> Result<Complex64> {
    if xs.dim() != ys.dim() {
        return Err(Error::DimensionMismatch {
            expected: xs.dim(),
            found: ys.dim(),
        });
    }
    if xs.len() != ys.len() {
        return Err(Error::InvalidInput(format!(
            "vector lists have different lengths {} and {}",
            xs.len(),
            ys.len()
        )));
    }
    let d = xs.len();
    if d > ORACLE_DEGREE_GUARD {
        return Err(Error::GuardExceeded {
            what: "permanent degree",
            value: d,
            limit: ORACLE_DEGREE_GUARD,
        });
    }
    let gram: Vec<Vec<Complex64>> = xs
        .vectors()
        .iter()
        .map(|x| ys.vectors().iter().map(|y| dot(x, y)).collect())
        .collect();
    if d == 0 {
        return Ok(Complex64::new(1.0, 0.0));
    }
    Ok((0..d)
        .permutations(d)
        .map(|p| (0..d).map(|j| gram[j][p[j]]).product::<Complex64>())
        .sum())
}

/// Expansion of the coproduct on the unnormalized monomial `u^D = v_1^{d_1}⋯v_m^{d_m}`:
/// every splitting `(B, D - B)` with its integer weight.
///
/// Each factor `v_i` is sent to `v_i ⊕ v_i` and the product is expanded term by
/// term, one left/right choice per factor, so the weights are counted rather
/// than taken from a binomial formula. Output is ordered by `B` ascending.
pub fn coproduct_oracle(index: &MultiIndex) -> Result<Vec<(MultiIndex, MultiIndex, u64)>> {
    let d = index.degree();
    if d > ORACLE_DEGREE_GUARD {
        return Err(Error::GuardExceeded {
            what: "coproduct degree",
            value: d,
            limit: ORACLE_DEGREE_GUARD,
        });
    }
    let factors: Vec<usize> = index
        .exponents()
        .iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(i, e as usize))
        .collect();
    let m = index.dim();
    let mut counts: BTreeMap<Vec<u32>, u64> = BTreeMap::new();
    for mask in 0u32..(1u32 << d) {
        let mut left = vec![0u32; m];
        for (bit, &var) in factors.iter().enumerate() {
            if mask & (1 << bit) != 0 {
                left[var] += 1;
            }
        }
        *counts.entry(left).or_insert(0) += 1;
    }
    Ok(counts
        .into_iter()
        .map(|(left, weight)| {
            let left = MultiIndex::new(left);
            let right = index.checked_sub(&left).expect("left split is dominated");
            (left, right, weight)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn equal_unit_vectors_give_two() {
        let x = vec![c(0.6, 0.0), c(0.0, 0.8)];
        let xs = VectorList::new(2, vec![x.clone(), x]).unwrap();
        let v = permanent_inner_oracle(&xs, &xs).unwrap();
        assert!((v - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn orthonormal_pair_gives_zero() {
        let xs = VectorList::new(2, vec![vec![c(1.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let ys = VectorList::new(2, vec![vec![c(0.0, 0.0), c(1.0, 0.0)]]).unwrap();
        assert_eq!(permanent_inner_oracle(&xs, &ys).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn cube_of_a_single_vector() {
        let x = vec![c(0.3, -0.2), c(0.5, 0.1)];
        let y = vec![c(-0.4, 0.7), c(0.2, 0.2)];
        let xs = VectorList::new(2, vec![x.clone(); 3]).unwrap();
        let ys = VectorList::new(2, vec![y.clone(); 3]).unwrap();
        let expected = dot(&x, &y).powu(3) * 6.0;
        assert!((permanent_inner_oracle(&xs, &ys).unwrap() - expected).norm() < 1e-14);
    }

    #[test]
    fn guards_and_mismatches() {
        let xs = VectorList::new(1, vec![vec![c(1.0, 0.0)]; 9]).unwrap();
        assert!(matches!(
            permanent_inner_oracle(&xs, &xs),
            Err(Error::GuardExceeded { .. })
        ));
        let short = VectorList::new(1, vec![vec![c(1.0, 0.0)]; 2]).unwrap();
        assert!(permanent_inner_oracle(&xs, &short).is_err());
        assert!(VectorList::new(2, vec![vec![c(1.0, 0.0)]]).is_err());
        assert!(coproduct_oracle(&MultiIndex::new(vec![5, 4])).is_err());
    }

    #[test]
    fn coproduct_small_cases() {
        let out = coproduct_oracle(&MultiIndex::zero(2)).unwrap();
        assert_eq!(out, vec![(MultiIndex::zero(2), MultiIndex::zero(2), 1)]);

        let out = coproduct_oracle(&MultiIndex::new(vec![1])).unwrap();
        assert_eq!(
            out,
            vec![
                (MultiIndex::new(vec![0]), MultiIndex::new(vec![1]), 1),
                (MultiIndex::new(vec![1]), MultiIndex::new(vec![0]), 1),
            ]
        );

        let out = coproduct_oracle(&MultiIndex::new(vec![2])).unwrap();
        let weights: Vec<u64> = out.iter().map(|t| t.2).collect();
        assert_eq!(weights, vec![1, 2, 1]);
        assert_eq!(out[0].1, MultiIndex::new(vec![2]));
    }

    #[test]
    fn coproduct_counit() {
        let d = MultiIndex::new(vec![2, 0, 3]);
        let out = coproduct_oracle(&d).unwrap();
        let zero_split = out.iter().find(|t| t.0.degree() == 0).unwrap();
        assert_eq!(zero_split.1, d);
        assert_eq!(zero_split.2, 1);
        let total: u64 = out.iter().map(|t| t.2).sum();
        assert_eq!(total, 1 << d.degree());
    }
}
