//! The domain `G(V)` of linear maps with numerical range in the open right
//! half-plane, and the holomorphic square root of the determinant on it.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

/// Smallest admissible eigenvalue of the Hermitian part for `G(V)` membership.
pub const GV_THRESHOLD: f64 = 1e-12;

/// Smallest eigenvalue of `(T + T^H) / 2`.
pub fn hermitian_part_min_eigenvalue(t: &DMatrix<Complex64>) -> Result<f64> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.nrows(),
            cols: t.ncols(),
        });
    }
    if t.nrows() == 0 {
        return Err(Error::InvalidInput("empty matrix".into()));
    }
    let h = (t + t.adjoint()) * Complex64::new(0.5, 0.0);
    Ok(h
        .symmetric_eigen()
        .eigenvalues
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min))
}

/// `Re⟨v | T v⟩ > 0` for all `v ≠ 0`, decided through the Hermitian part.
pub fn in_gv(t: &DMatrix<Complex64>) -> Result<bool> {
    Ok(hermitian_part_min_eigenvalue(t)? > GV_THRESHOLD)
}

/// A matrix certified to lie in `G(V)`.
#[derive(Clone, Debug, PartialEq)]
pub struct GvMatrix(DMatrix<Complex64>);

impl GvMatrix {
    pub fn new(t: DMatrix<Complex64>) -> Result<Self> {
        let lowest = hermitian_part_min_eigenvalue(&t)?;
        if lowest > GV_THRESHOLD {
            Ok(Self(t))
        } else {
            Err(Error::DomainViolation(format!(
                "matrix is not in G(V): smallest eigenvalue of its Hermitian part is {lowest:e}"
            )))
        }
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }
}

/// Eigenvalues of a general complex matrix, read off the complex Schur form.
pub fn eigenvalues(t: &DMatrix<Complex64>) -> Vec<Complex64> {
    let schur = t.clone().schur();
    let (_, upper) = schur.unpack();
    (0..upper.nrows()).map(|k| upper[(k, k)]).collect()
}

/// `Det^{1/2}(T)`: the product of principal square roots of the eigenvalues.
///
/// Every eigenvalue of a member of `G(V)` has positive real part, so along any
/// path in the (convex) domain no factor crosses the principal cut; the product
/// is therefore the continuous branch equal to 1 at the identity.
pub fn det_sqrt(t: &GvMatrix) -> Complex64 {
    eigenvalues(t.matrix())
        .into_iter()
        .map(|mu| mu.sqrt())
        .product()
}

/// Values of `s ↦ Det^{1/2}(I + s(T - I))` at `steps + 1` equally spaced
/// points of `[0, 1]`, obtained by analytic continuation from 1 at `s = 0`.
///
/// Each determinant comes from an LU factorization and the sign of its square
/// root is the one nearest the previous value. This shares nothing with the
/// eigenvalue route in [`det_sqrt`] and serves as a check on it.
pub fn det_sqrt_by_continuation(t: &DMatrix<Complex64>, steps: usize) -> Result<Vec<Complex64>> {
    if !t.is_square() {
        return Err(Error::NotSquare {
            rows: t.nrows(),
            cols: t.ncols(),
        });
    }
    let steps = steps.max(1);
    let n = t.nrows();
    let identity = DMatrix::<Complex64>::identity(n, n);
    let delta = t - &identity;
    let mut out = Vec::with_capacity(steps + 1);
    let mut previous = Complex64::new(1.0, 0.0);
    out.push(previous);
    for k in 1..=steps {
        let s = k as f64 / steps as f64;
        let point = &identity + &delta * Complex64::new(s, 0.0);
        let root = point.lu().determinant().sqrt();
        previous = if (root - previous).norm() <= (-root - previous).norm() {
            root
        } else {
            -root
        };
        out.push(previous);
    }
    Ok(out)
}

/// Values of [`det_sqrt`] along the same segment, for continuity checks.
pub fn det_sqrt_along_segment(t: &GvMatrix, steps: usize) -> Vec<Complex64> {
    let steps = steps.max(1);
    let n = t.dim();
    let identity = DMatrix::<Complex64>::identity(n, n);
    let delta = t.matrix() - &identity;
    (0..=steps)
        .map(|k| {
            let s = Complex64::new(k as f64 / steps as f64, 0.0);
            // convexity keeps every point of the segment inside G(V)
            let point = GvMatrix(&identity + &delta * s);
            det_sqrt(&point)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn membership_examples() {
        assert!(in_gv(&DMatrix::identity(3, 3)).unwrap());
        assert!(!in_gv(&(-DMatrix::<Complex64>::identity(3, 3))).unwrap());
        assert!(in_gv(&(DMatrix::<Complex64>::identity(2, 2) * c(2.0, 0.0))).unwrap());
        assert!(matches!(in_gv(&DMatrix::zeros(2, 3)), Err(Error::NotSquare { .. })));
        // a skew-Hermitian perturbation does not affect the Hermitian part
        let t = DMatrix::from_row_slice(2, 2, &[c(1.0, 5.0), c(3.0, 0.0), c(-3.0, 0.0), c(1.0, 0.0)]);
        assert!(in_gv(&t).unwrap());
    }

    #[test]
    fn normalization_and_scalar_cases() {
        let id = GvMatrix::new(DMatrix::identity(4, 4)).unwrap();
        assert!((det_sqrt(&id) - c(1.0, 0.0)).norm() < 1e-15);
        let two = GvMatrix::new(DMatrix::<Complex64>::identity(2, 2) * c(2.0, 0.0)).unwrap();
        assert!((det_sqrt(&two) - c(2.0, 0.0)).norm() < 1e-14);
        let two3 = GvMatrix::new(DMatrix::<Complex64>::identity(3, 3) * c(2.0, 0.0)).unwrap();
        assert!((det_sqrt(&two3) - c(2f64.powf(1.5), 0.0)).norm() < 1e-13);
    }

    #[test]
    fn one_dimensional_branch() {
        // (1 - conj(a) b) with |a|, |b| <= 1 has positive real part unless it vanishes
        for (a, b) in [(c(1.0, 0.0), c(-1.0, 0.0)), (c(0.0, 1.0), c(0.6, 0.8)), (c(0.3, -0.9), c(-0.7, 0.7))] {
            let w = c(1.0, 0.0) - a.conj() * b;
            let t = GvMatrix::new(DMatrix::from_element(1, 1, w)).unwrap();
            assert!((det_sqrt(&t) - w.sqrt()).norm() < 1e-15);
        }
    }

    #[test]
    fn rejects_non_members() {
        assert!(matches!(
            GvMatrix::new(DMatrix::from_element(1, 1, c(-1.0, 0.1))),
            Err(Error::DomainViolation(_))
        ));
    }

    #[test]
    fn continuation_agrees_with_eigenvalue_branch() {
        // eigenvalues near the imaginary axis, where a naive sqrt(det) flips sign
        let t = DMatrix::from_row_slice(
            3,
            3,
            &[c(0.05, 3.0), c(0.1, 0.0), c(0.0, 0.0),
              c(-0.1, 0.0), c(0.05, 2.5), c(0.0, 0.2),
              c(0.0, 0.0), c(0.0, 0.2), c(0.1, -1.0)],
        );
        let g = GvMatrix::new(t.clone()).unwrap();
        let cont = det_sqrt_by_continuation(&t, 256).unwrap();
        let direct = det_sqrt(&g);
        assert!((cont.last().unwrap() - direct).norm() < 1e-10 * direct.norm());
        let seg = det_sqrt_along_segment(&g, 64);
        for w in seg.windows(2) {
            let darg = (w[1] / w[0]).arg().abs();
            assert!(darg < 0.5);
        }
        let det = t.lu().determinant();
        assert!((direct * direct - det).norm() < 1e-10 * det.norm());
    }
}
