use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::multi_index::MultiIndex;
use crate::combinatorics::basis_len;
use crate::error::{Error, Result};

/// A degreewise-truncated formal series `Φ = Σ_d Φ_d`.
///
/// Each `Φ_d` is stored by its coordinates in the orthonormal basis `{v^D}` of
/// `S^d V`, ordered as in [`enumerate_basis`](super::enumerate_basis). Degrees
/// above [`max_degree`](Self::max_degree) are either exactly zero (a polynomial)
/// or unknown (a truncated series), as recorded by [`is_truncated`](Self::is_truncated).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedElement {
    dim: usize,
    components: Vec<Vec<Complex64>>,
    truncated: bool,
}

impl GradedElement {
    /// The zero element stored through `max_degree`.
    pub fn zero(dim: usize, max_degree: usize) -> Self {
        assert!(dim >= 1, "dimension must be positive");
        let components = (0..=max_degree)
            .map(|d| vec![Complex64::new(0.0, 0.0); basis_len(dim, d)])
            .collect();
        Self {
            dim,
            components,
            truncated: false,
        }
    }

    /// The Fock vacuum `1 ∈ S^0 V`.
    pub fn vacuum(dim: usize) -> Self {
        let mut out = Self::zero(dim, 0);
        out.components[0][0] = Complex64::new(1.0, 0.0);
        out
    }

    /// Builds an element from per-degree coordinate vectors, validating lengths.
    pub fn from_components(
        dim: usize,
        components: Vec<Vec<Complex64>>,
        truncated: bool,
    ) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if components.is_empty() {
            return Err(Error::InvalidInput(
                "at least the degree-0 component is required".into(),
            ));
        }
        for (d, c) in components.iter().enumerate() {
            let expected = basis_len(dim, d);
            if c.len() != expected {
                return Err(Error::DimensionMismatch {
                    expected,
                    found: c.len(),
                });
            }
        }
        Ok(Self {
            dim,
            components,
            truncated,
        })
    }

    /// A homogeneous element concentrated in degree `d`.
    pub fn homogeneous(dim: usize, d: usize, coords: Vec<Complex64>) -> Result<Self> {
        let mut out = Self::zero(dim, d);
        let expected = basis_len(dim, d);
        if coords.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: coords.len(),
            });
        }
        out.components[d] = coords;
        Ok(out)
    }

    /// A vector `x ∈ V = S^1 V` given by its coordinates.
    pub fn from_vector(x: &[Complex64]) -> Self {
        Self::homogeneous(x.len(), 1, x.to_vec()).expect("degree-one length is the dimension")
    }

    /// The single basis vector `v^D`.
    pub fn basis_vector(index: &MultiIndex) -> Self {
        let mut out = Self::zero(index.dim(), index.degree());
        out.components[index.degree()][index.rank()] = Complex64::new(1.0, 0.0);
        out
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn max_degree(&self) -> usize {
        self.components.len() - 1
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Marks the element as a truncation of an infinite series (or not).
    pub fn with_truncated(mut self, truncated: bool) -> Self {
        self.truncated = truncated;
        self
    }

    pub fn components(&self) -> &[Vec<Complex64>] {
        &self.components
    }

    /// Coordinates of `Φ_d`; `None` above the stored horizon.
    pub fn component(&self, d: usize) -> Option<&[Complex64]> {
        self.components.get(d).map(Vec::as_slice)
    }

    pub(crate) fn component_mut(&mut self, d: usize) -> &mut [Complex64] {
        &mut self.components[d]
    }

    /// Coordinate along `v^D`; zero above the stored horizon.
    pub fn coordinate(&self, index: &MultiIndex) -> Complex64 {
        debug_assert_eq!(index.dim(), self.dim);
        self.components
            .get(index.degree())
            .map_or(Complex64::new(0.0, 0.0), |c| c[index.rank()])
    }

    pub fn set_coordinate(&mut self, index: &MultiIndex, value: Complex64) {
        assert!(
            index.degree() <= self.max_degree(),
            "degree {} above horizon {}",
            index.degree(),
            self.max_degree()
        );
        self.components[index.degree()][index.rank()] = value;
    }

    /// `‖Φ_d‖`, zero above the horizon.
    pub fn component_norm(&self, d: usize) -> f64 {
        self.component(d)
            .map_or(0.0, |c| c.iter().map(Complex64::norm_sqr).sum::<f64>().sqrt())
    }

    /// Highest degree carrying a nonzero coordinate.
    pub fn support_degree(&self) -> Option<usize> {
        self.components
            .iter()
            .rposition(|c| c.iter().any(|z| *z != Complex64::new(0.0, 0.0)))
    }

    /// Highest degree at which this element is known: the stored horizon for a
    /// truncated series, unbounded for a polynomial.
    pub fn known_through(&self) -> Option<usize> {
        self.truncated.then(|| self.max_degree())
    }

    /// Restricts (or zero-extends) the stored degrees to `0..=max_degree`.
    /// Dropping a nonzero component marks the result truncated.
    pub fn resized(&self, max_degree: usize) -> Self {
        let mut out = self.clone();
        if max_degree < self.max_degree() {
            let dropped_nonzero = self.support_degree().is_some_and(|s| s > max_degree);
            out.components.truncate(max_degree + 1);
            out.truncated |= dropped_nonzero;
        } else {
            for d in self.max_degree() + 1..=max_degree {
                out.components
                    .push(vec![Complex64::new(0.0, 0.0); basis_len(self.dim, d)]);
            }
        }
        out
    }

    /// `c·Φ`.
    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = self.clone();
        for comp in &mut out.components {
            for z in comp.iter_mut() {
                *z *= c;
            }
        }
        out
    }

    /// Scales the degree-`d` component by `f(d)`.
    pub fn map_degrees(&self, f: impl Fn(usize) -> Complex64) -> Self {
        let mut out = self.clone();
        for (d, comp) in out.components.iter_mut().enumerate() {
            let c = f(d);
            for z in comp.iter_mut() {
                *z *= c;
            }
        }
        out
    }

    /// `Φ + Ψ` over the common stored range; the sum is truncated if either is.
    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dims(self, other)?;
        let horizon = match (self.truncated, other.truncated) {
            (true, true) => self.max_degree().min(other.max_degree()),
            (true, false) => self.max_degree(),
            (false, true) => other.max_degree(),
            (false, false) => self.max_degree().max(other.max_degree()),
        };
        let mut out = Self::zero(self.dim, horizon);
        for d in 0..=horizon {
            for (k, z) in out.components[d].iter_mut().enumerate() {
                let a = self.components.get(d).map_or(Complex64::new(0.0, 0.0), |c| c[k]);
                let b = other.components.get(d).map_or(Complex64::new(0.0, 0.0), |c| c[k]);
                *z = a + b;
            }
        }
        out.truncated = self.truncated || other.truncated;
        Ok(out)
    }

    /// Largest coordinate difference over the union of stored degrees.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        let top = self.max_degree().max(other.max_degree());
        let zero = Complex64::new(0.0, 0.0);
        let mut worst = 0.0f64;
        for d in 0..=top {
            let len = basis_len(self.dim, d);
            for k in 0..len {
                let a = self.components.get(d).map_or(zero, |c| c[k]);
                let b = other.components.get(d).map_or(zero, |c| c[k]);
                worst = worst.max((a - b).norm());
            }
        }
        worst
    }
}

pub(crate) fn check_dims(a: &GradedElement, b: &GradedElement) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            expected: a.dim,
            found: b.dim,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths_are_validated() {
        let bad = GradedElement::from_components(
            2,
            vec![vec![Complex64::new(1.0, 0.0)], vec![Complex64::new(0.0, 0.0)]],
            false,
        );
        assert!(matches!(
            bad,
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 1
            })
        ));
    }

    #[test]
    fn resizing_a_nonzero_tail_flags_truncation() {
        let x = GradedElement::basis_vector(&MultiIndex::new(vec![2, 1]));
        assert!(!x.resized(5).is_truncated());
        assert!(x.resized(2).is_truncated());
        assert_eq!(x.resized(2).max_degree(), 2);
    }

    #[test]
    fn sum_of_truncated_and_polynomial_keeps_the_truncated_horizon() {
        let p = GradedElement::basis_vector(&MultiIndex::new(vec![1, 0]));
        let t = GradedElement::zero(2, 4).with_truncated(true);
        let s = p.add(&t).unwrap();
        assert!(s.is_truncated());
        assert_eq!(s.max_degree(), 4);
    }
}
