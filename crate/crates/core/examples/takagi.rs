//! Takagi factorization `A = U diag(λ) U^T` of a complex symmetric matrix and
//! the resulting Siegel-domain membership.

use fockpair::antilinear::{siegel_membership, takagi, AntilinearSymmetricMap};
use nalgebra::DMatrix;
use num_complex::Complex64;

fn main() -> fockpair::Result<()> {
    let a = DMatrix::from_row_slice(
        3,
        3,
        &[
            Complex64::new(0.4, 0.1), Complex64::new(0.2, -0.3), Complex64::new(0.0, 0.1),
            Complex64::new(0.2, -0.3), Complex64::new(-0.1, 0.0), Complex64::new(0.3, 0.0),
            Complex64::new(0.0, 0.1), Complex64::new(0.3, 0.0), Complex64::new(0.2, 0.2),
        ],
    );
    let map = AntilinearSymmetricMap::new(a)?;
    let f = takagi(&map);
    println!("takagi values: {:?}", f.values);
    println!("reconstruction error: {:e}", (f.reconstruct() - map.matrix()).norm());
    println!("membership: {:?}", siegel_membership(&map));

    let sigma = AntilinearSymmetricMap::conjugation(3);
    println!("conjugation: values {:?}, {:?}", takagi(&sigma).values, siegel_membership(&sigma));
    Ok(())
}
