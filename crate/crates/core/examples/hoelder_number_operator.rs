//! Hölder norms of truncations, the Hölder slack, and rebalancing the pairing
//! with powers of the number operator.

use fockpair::pairing::{hoelder_norm, hoelder_pairing_check, number_op_pow, HoelderExponent};
use fockpair::sampling;
use fockpair::symmetric_algebra::inner_product;

fn main() -> fockpair::Result<()> {
    let mut rng = sampling::rng(3);
    let phi = sampling::graded(&mut rng, 2, 8, 0.9);
    let psi = sampling::graded(&mut rng, 2, 8, 0.7);
    for p in [HoelderExponent::Finite(1.0), HoelderExponent::Finite(2.0), HoelderExponent::Infinity] {
        println!("{p:?}: {:.6}", hoelder_norm(&phi, p, 8)?.value);
    }
    let slack = hoelder_pairing_check(&phi, &psi, HoelderExponent::Finite(3.0), HoelderExponent::Finite(1.5), 8)?;
    println!("slack for (3, 3/2): {slack:.6}");

    let plain = inner_product(&phi, &psi)?;
    for r in [-1.0, 0.5, 2.0] {
        let moved = inner_product(&number_op_pow(&phi, -r), &number_op_pow(&psi, r))?;
        println!("r={r}: {moved} vs {plain}");
    }
    Ok(())
}
