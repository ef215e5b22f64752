//! Degreewise unitaries, including symmetric powers of a unitary on V, leave
//! every scaled pairing unchanged.

use fockpair::combinatorics::basis_len;
use fockpair::pairing::{graded_unitary_apply, pairing_t, symmetric_power, RegularizationConfig};
use fockpair::sampling;

fn main() -> fockpair::Result<()> {
    let cfg = RegularizationConfig::default();
    let mut rng = sampling::rng(11);
    let (phi, psi) = (sampling::graded(&mut rng, 2, 24, 0.6), sampling::graded(&mut rng, 2, 24, 0.6));
    let random: Vec<_> = (0..=24).map(|d| sampling::unitary(&mut rng, basis_len(2, d))).collect();
    let w = sampling::unitary(&mut rng, 2);
    let lifted: Vec<_> = (0..=24).map(|d| symmetric_power(&w, d)).collect::<Result<_, _>>()?;
    for t in [0.3, 0.9] {
        let before = pairing_t(&phi, &psi, t, &cfg)?.value.unwrap();
        let a = pairing_t(&graded_unitary_apply(&random, &phi)?, &graded_unitary_apply(&random, &psi)?, t, &cfg)?;
        let b = pairing_t(&graded_unitary_apply(&lifted, &phi)?, &graded_unitary_apply(&lifted, &psi)?, t, &cfg)?;
        println!("t={t}: {before} | random blocks {} | lifted {}", a.value.unwrap(), b.value.unwrap());
    }
    Ok(())
}
