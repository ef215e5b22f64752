//! A unitary of S V that ignores the grading changes the Abel pairing:
//! 1/2 becomes 3/2.

use fockpair::pairing::{pair_swap, pairing_t, sequence_elements, sequence_noninvariance_demo, RegularizationConfig};

fn main() -> fockpair::Result<()> {
    let cfg = RegularizationConfig::default();
    let (lambda, mu) = sequence_elements(cfg.max_degree);
    let (ul, um) = (pair_swap(&lambda)?, pair_swap(&mu)?);
    for t in [0.5, 0.9, 0.99] {
        let a = pairing_t(&lambda, &mu, t, &cfg)?.value.unwrap().re;
        let b = pairing_t(&ul, &um, t, &cfg)?.value.unwrap().re;
        println!("t={t}: {a:.10} (1/(1+t²) = {:.10})  {b:.10} (1 + t²/(1+t²) = {:.10})",
            1.0 / (1.0 + t * t), 1.0 + t * t / (1.0 + t * t));
    }
    let demo = sequence_noninvariance_demo(&cfg)?;
    println!("abel: {:?} and {:?}", demo.plain.value, demo.swapped.value);
    Ok(())
}
