//! The square root of the determinant on G(V), compared with a path-following
//! continuation from the identity.

use fockpair::detsqrt::{det_sqrt, det_sqrt_by_continuation, hermitian_part_min_eigenvalue, GvMatrix};
use nalgebra::DMatrix;
use num_complex::Complex64;

fn main() -> fockpair::Result<()> {
    // eigenvalues near the imaginary axis, where sqrt(det) alone picks the wrong sign
    let t = DMatrix::from_row_slice(
        2,
        2,
        &[Complex64::new(0.05, 3.0), Complex64::new(0.2, 0.0), Complex64::new(-0.2, 0.0), Complex64::new(0.05, 2.0)],
    );
    println!("min eigenvalue of the Hermitian part: {}", hermitian_part_min_eigenvalue(&t)?);
    let g = GvMatrix::new(t.clone())?;
    let branch = det_sqrt(&g);
    let naive = t.clone().lu().determinant().sqrt();
    let tracked = *det_sqrt_by_continuation(&t, 512)?.last().unwrap();
    println!("Det^1/2       = {branch}");
    println!("continuation  = {tracked}");
    println!("principal root of det = {naive}");

    let minus = GvMatrix::new(-DMatrix::<Complex64>::identity(2, 2));
    println!("-I rejected: {}", minus.is_err());
    Ok(())
}
