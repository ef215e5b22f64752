use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::combinatorics::basis_len;
use crate::error::{Error, Result};
use crate::symmetric_algebra::{enumerate_basis, normalization, symmetric_product, GradedElement};

/// Largest tolerated entry of `B^H B - I` for a unitary block.
pub const UNITARY_TOL: f64 = 1e-10;

/// `(UΦ)_d = U_d Φ_d` for per-degree unitary blocks `U_d` on `S^d V`.
///
/// Blocks must cover every stored degree of `Φ`; any beyond are ignored.
pub fn graded_unitary_apply(
    blocks: &[DMatrix<Complex64>],
    phi: &GradedElement,
) -> Result<GradedElement> {
    let m = phi.dim();
    if blocks.len() <= phi.max_degree() {
        return Err(Error::DimensionMismatch {
            expected: phi.max_degree() + 1,
            found: blocks.len(),
        });
    }
    let mut components = Vec::with_capacity(phi.max_degree() + 1);
    for (d, block) in blocks.iter().take(phi.max_degree() + 1).enumerate() {
        let n = basis_len(m, d);
        if block.nrows() != n || block.ncols() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: block.nrows().max(block.ncols()),
            });
        }
        let deviation = (block.adjoint() * block - DMatrix::<Complex64>::identity(n, n))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        if deviation > UNITARY_TOL {
            return Err(Error::NotUnitary { degree: d, deviation });
        }
        let x = DVector::from_column_slice(phi.component(d).expect("degree is stored"));
        components.push((block * x).as_slice().to_vec());
    }
    GradedElement::from_components(m, components, phi.is_truncated())
}

/// Matrix of the `d`-th symmetric power of `W` in the orthonormal basis
/// `{v^D}`: column `D` is `Π_i (W v_i)^{d_i} / sqrt(D!)`.
pub fn symmetric_power(w: &DMatrix<Complex64>, d: usize) -> Result<DMatrix<Complex64>> {
    if !w.is_square() {
        return Err(Error::NotSquare {
            rows: w.nrows(),
            cols: w.ncols(),
        });
    }
    let m = w.nrows();
    let basis = enumerate_basis(m, d);
    let images: Vec<GradedElement> = (0..m)
        .map(|i| GradedElement::from_vector(w.column(i).as_slice()))
        .collect();
    let mut out = DMatrix::zeros(basis.len(), basis.len());
    for (col, index) in basis.iter().enumerate() {
        let mut monomial = GradedElement::vacuum(m);
        for (i, &e) in index.exponents().iter().enumerate() {
            for _ in 0..e {
                let next = monomial.max_degree() + 1;
                monomial = symmetric_product(&monomial, &images[i], next)?;
            }
        }
        let scale = 1.0 / normalization(index)?;
        let top = monomial.component(d).expect("product has degree d");
        for (row, z) in top.iter().enumerate() {
            out[(row, col)] = z * scale;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric_algebra::inner_product;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rotation() -> DMatrix<Complex64> {
        let (s, co) = (0.6, 0.8);
        DMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(0.0, s), c(0.0, s), c(co, 0.0)])
    }

    #[test]
    fn identity_blocks_fix_elements() {
        let phi = GradedElement::from_vector(&[c(1.0, 0.0), c(0.0, 2.0)]);
        let blocks: Vec<_> = (0..=1).map(|d| DMatrix::identity(basis_len(2, d), basis_len(2, d))).collect();
        assert_eq!(graded_unitary_apply(&blocks, &phi).unwrap(), phi);
    }

    #[test]
    fn symmetric_powers_are_unitary() {
        let w = rotation();
        for d in 0..=5 {
            let s = symmetric_power(&w, d).unwrap();
            let n = basis_len(2, d);
            let dev = (s.adjoint() * &s - DMatrix::<Complex64>::identity(n, n)).norm();
            assert!(dev < 1e-12, "d={d}");
        }
        assert_eq!(symmetric_power(&w, 1).unwrap(), w);
    }

    #[test]
    fn lift_preserves_inner_products() {
        let w = rotation();
        let blocks: Vec<_> = (0..=3).map(|d| symmetric_power(&w, d).unwrap()).collect();
        let phi = GradedElement::from_components(
            2,
            (0..=3).map(|d| (0..basis_len(2, d)).map(|k| c(d as f64 - k as f64, 0.3 * k as f64)).collect()).collect(),
            false,
        )
        .unwrap();
        let u = graded_unitary_apply(&blocks, &phi).unwrap();
        assert!((inner_product(&u, &u).unwrap() - inner_product(&phi, &phi).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn rejects_bad_blocks() {
        let phi = GradedElement::from_vector(&[c(1.0, 0.0), c(0.0, 2.0)]);
        let wrong_size = vec![DMatrix::identity(1, 1), DMatrix::identity(3, 3)];
        assert!(matches!(graded_unitary_apply(&wrong_size, &phi), Err(Error::DimensionMismatch { .. })));
        let not_unitary = vec![DMatrix::identity(1, 1), DMatrix::identity(2, 2) * c(2.0, 0.0)];
        assert!(matches!(graded_unitary_apply(&not_unitary, &phi), Err(Error::NotUnitary { degree: 1, .. })));
        let too_few = vec![DMatrix::identity(1, 1)];
        assert!(graded_unitary_apply(&too_few, &phi).is_err());
    }
}
