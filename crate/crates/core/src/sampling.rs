//! Seeded random instances for the verification suites.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::antilinear::{operator_norm, AntilinearSymmetricMap};
use crate::combinatorics::basis_len;
use crate::symmetric_algebra::GradedElement;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Real and imaginary parts uniform on `[-1, 1]`.
pub fn complex<R: Rng>(rng: &mut R) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

pub fn vector<R: Rng>(rng: &mut R, m: usize) -> Vec<Complex64> {
    (0..m).map(|_| complex(rng)).collect()
}

pub fn matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> DMatrix<Complex64> {
    DMatrix::from_fn(rows, cols, |_, _| complex(rng))
}

pub fn symmetric_matrix<R: Rng>(rng: &mut R, m: usize) -> DMatrix<Complex64> {
    let a = matrix(rng, m, m);
    (&a + a.transpose()) * Complex64::new(0.5, 0.0)
}

/// A symmetric antilinear map rescaled to operator norm exactly `norm`.
pub fn map_with_norm<R: Rng>(rng: &mut R, m: usize, norm: f64) -> AntilinearSymmetricMap {
    let raw = AntilinearSymmetricMap::new(symmetric_matrix(rng, m)).expect("symmetric by construction");
    let current = operator_norm(&raw);
    if current == 0.0 {
        return AntilinearSymmetricMap::zero(m);
    }
    raw.scaled(Complex64::new(norm / current, 0.0))
}

/// A map in the closed Siegel domain; with probability 1/4 on its boundary.
pub fn closed_domain_map<R: Rng>(rng: &mut R, m: usize) -> AntilinearSymmetricMap {
    let norm = if rng.random_bool(0.25) {
        1.0
    } else {
        rng.random_range(0.0..1.0)
    };
    map_with_norm(rng, m, norm)
}

/// Unitary from the QR factorization of a random matrix.
pub fn unitary<R: Rng>(rng: &mut R, m: usize) -> DMatrix<Complex64> {
    matrix(rng, m, m).qr().q()
}

/// A member of `G(V)`: positive definite Hermitian part plus a skew-Hermitian
/// part, scaled so that eigenvalues often sit close to the imaginary axis.
pub fn gv_member<R: Rng>(rng: &mut R, m: usize) -> DMatrix<Complex64> {
    let b = matrix(rng, m, m);
    let floor = 10f64.powf(rng.random_range(-3.0..0.0));
    let h = &b * b.adjoint() * Complex64::new(rng.random_range(0.01..1.0), 0.0)
        + DMatrix::identity(m, m) * Complex64::new(floor, 0.0);
    let k = matrix(rng, m, m) * Complex64::new(rng.random_range(0.0..5.0), 0.0);
    h + (&k - k.adjoint()) * Complex64::new(0.5, 0.0)
}

/// A truncated series through `max_degree` with coordinates damped by `decay^d`.
pub fn graded<R: Rng>(rng: &mut R, m: usize, max_degree: usize, decay: f64) -> GradedElement {
    let components = (0..=max_degree)
        .map(|d| {
            let w = decay.powi(d as i32);
            (0..basis_len(m, d)).map(|_| complex(rng) * w).collect()
        })
        .collect();
    GradedElement::from_components(m, components, true).expect("lengths match the basis")
}

/// A polynomial of degree at most `max_degree`.
pub fn polynomial<R: Rng>(rng: &mut R, m: usize, max_degree: usize) -> GradedElement {
    graded(rng, m, max_degree, 1.0).with_truncated(false)
}
