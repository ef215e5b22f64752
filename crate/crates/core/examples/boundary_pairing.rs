//! Gaussians of `σ` and `-σ`: the plain series diverges, the Abel limit and the
//! closed form agree on `2^{-m/2}`.

use fockpair::antilinear::AntilinearSymmetricMap;
use fockpair::gaussian::{gaussian_series, pair_closed, GaussianSeed};
use fockpair::pairing::{abel_pairing, pairing_1, RegularizationConfig};
use num_complex::Complex64;

fn main() -> fockpair::Result<()> {
    let cfg = RegularizationConfig::default();
    for m in [2usize, 3] {
        let sigma = AntilinearSymmetricMap::conjugation(m);
        let x = GaussianSeed::new(sigma.clone());
        let y = GaussianSeed::new(sigma.scaled(Complex64::new(-1.0, 0.0)));
        let (gx, gy) = (gaussian_series(&x, cfg.max_degree)?, gaussian_series(&y, cfg.max_degree)?);
        let series = pairing_1(&gx, &gy, &cfg)?;
        let abel = abel_pairing(&gx, &gy, &cfg)?;
        println!("m={m}");
        println!("  series: {:?} ({})", series.verdict, series.note);
        println!("  abel:   {:?} residual {:e}", abel.value, abel.extrapolation_residual);
        println!("  closed: {}", pair_closed(&x, &y, 1.0)?);
    }

    // one dimension, a = 1, b = -1: the series itself converges, slowly
    let one = |a: f64| AntilinearSymmetricMap::new(nalgebra::DMatrix::from_element(1, 1, Complex64::new(a, 0.0)));
    let (x, y) = (GaussianSeed::new(one(1.0)?), GaussianSeed::new(one(-1.0)?));
    let r = pairing_1(&gaussian_series(&x, 200)?, &gaussian_series(&y, 200)?, &cfg)?;
    println!("m=1: series {:?} via {}, closed {}", r.value, r.note, pair_closed(&x, &y, 1.0)?);
    Ok(())
}
