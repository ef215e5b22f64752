//! `‖e^Z‖²` from the series against `Π (1 - λ_k²)^{-1/2}`.

use fockpair::antilinear::AntilinearSymmetricMap;
use fockpair::gaussian::{gaussian_series, norm_sq_closed, GaussianSeed};
use fockpair::sampling;
use fockpair::symmetric_algebra::inner_product;

fn main() -> fockpair::Result<()> {
    let mut rng = sampling::rng(7);
    for m in 1..=3 {
        let seed = GaussianSeed::new(sampling::map_with_norm(&mut rng, m, 0.8));
        let series = gaussian_series(&seed, 120)?;
        let s = inner_product(&series, &series)?.re;
        let closed = norm_sq_closed(&seed)?;
        println!("m={m} takagi {:?}: series {s:.12} closed {closed:.12}", seed.takagi_values());
    }
    let sigma = GaussianSeed::new(AntilinearSymmetricMap::conjugation(2));
    println!("conjugation: {}", norm_sq_closed(&sigma).unwrap_err());
    Ok(())
}
