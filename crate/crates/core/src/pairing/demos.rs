use num_complex::Complex64;

use super::{abel_pairing, PairingReport, RegularizationConfig};
use crate::antilinear::AntilinearSymmetricMap;
use crate::error::{Error, Result};
use crate::gaussian::{gaussian_series, GaussianSeed};
use crate::symmetric_algebra::GradedElement;

/// Largest `d` for which [`divergence_demo`] reports the ratio at `d`.
pub const DIVERGENCE_DEMO_DEGREE: usize = 30;

/// The one-dimensional sequences `λ_d = 1` and `μ_d = (-1)^d` through `horizon`.
pub fn sequence_elements(horizon: usize) -> (GradedElement, GradedElement) {
    let one = Complex64::new(1.0, 0.0);
    let lambda = (0..=horizon).map(|_| vec![one]).collect();
    let mu = (0..=horizon)
        .map(|d| vec![if d % 2 == 0 { one } else { -one }])
        .collect();
    (
        GradedElement::from_components(1, lambda, true).expect("one coordinate per degree"),
        GradedElement::from_components(1, mu, true).expect("one coordinate per degree"),
    )
}

/// The unitary of `S V`, `dim V = 1`, fixing `v_0` and exchanging `v_{2n-1}`
/// with `v_{2n}`. It does not respect the grading, so on a truncated series
/// an odd top degree (whose partner is unknown) is dropped.
pub fn pair_swap(phi: &GradedElement) -> Result<GradedElement> {
    if phi.dim() != 1 {
        return Err(Error::InvalidInput(format!(
            "the pair swap acts on one-dimensional V, got dim {}",
            phi.dim()
        )));
    }
    let mut top = phi.max_degree();
    if top % 2 == 1 && phi.is_truncated() {
        top -= 1;
    }
    let zero = Complex64::new(0.0, 0.0);
    let coord = |d: usize| phi.component(d).map_or(zero, |c| c[0]);
    let top = if phi.is_truncated() { top } else { top + top % 2 };
    let components = (0..=top)
        .map(|d| {
            let partner = match d {
                0 => 0,
                d if d % 2 == 1 => d + 1,
                d => d - 1,
            };
            vec![coord(partner)]
        })
        .collect();
    GradedElement::from_components(1, components, phi.is_truncated())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SequenceDemo {
    pub plain: PairingReport,
    pub swapped: PairingReport,
}

/// Abel pairings `⟨λ : μ⟩` and `⟨Uλ : Uμ⟩` for the pair swap `U`.
pub fn sequence_noninvariance_demo(cfg: &RegularizationConfig) -> Result<SequenceDemo> {
    let (lambda, mu) = sequence_elements(cfg.max_degree);
    let plain = abel_pairing(&lambda, &mu, cfg)?;
    let swapped = abel_pairing(&pair_swap(&lambda)?, &pair_swap(&mu)?, cfg)?;
    Ok(SequenceDemo { plain, swapped })
}

/// Consecutive ratios `(‖ζ^{d+1}‖²/(d+1)!²) / (‖ζ^d‖²/d!²)` for `d ≤ 30`,
/// with `ζ` the quadratic of the conjugation `A = I` on `C^m`, computed
/// from the series itself.
pub fn divergence_demo(m: usize) -> Result<Vec<f64>> {
    if m == 0 {
        return Err(Error::InvalidInput("dimension must be positive".into()));
    }
    let seed = GaussianSeed::new(AntilinearSymmetricMap::conjugation(m));
    let series = gaussian_series(&seed, 2 * (DIVERGENCE_DEMO_DEGREE + 1))?;
    let norm_sq = |d: usize| series.component_norm(2 * d).powi(2);
    Ok((0..=DIVERGENCE_DEMO_DEGREE)
        .map(|d| norm_sq(d + 1) / norm_sq(d))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pairing::{pairing_t, Verdict};

    #[test]
    fn swap_is_an_involution() {
        let (lambda, _) = sequence_elements(9);
        let once = pair_swap(&lambda).unwrap();
        assert_eq!(once.max_degree(), 8);
        let (_, mu) = sequence_elements(8);
        let twice = pair_swap(&pair_swap(&mu).unwrap()).unwrap();
        assert_eq!(twice, mu);
    }

    #[test]
    fn swap_moves_signs() {
        let (_, mu) = sequence_elements(4);
        let s = pair_swap(&mu).unwrap();
        let coords: Vec<f64> = (0..=4).map(|d| s.component(d).unwrap()[0].re).collect();
        assert_eq!(coords, vec![1.0, 1.0, -1.0, 1.0, -1.0]);
    }

    #[test]
    fn intermediate_values_at_half() {
        let cfg = RegularizationConfig::default();
        let (lambda, mu) = sequence_elements(cfg.max_degree);
        let a = pairing_t(&lambda, &mu, 0.5, &cfg).unwrap().value.unwrap();
        assert!((a.re - 0.8).abs() < 1e-12);
        let b = pairing_t(&pair_swap(&lambda).unwrap(), &pair_swap(&mu).unwrap(), 0.5, &cfg)
            .unwrap()
            .value
            .unwrap();
        assert!((b.re - 1.2).abs() < 1e-12);
    }

    #[test]
    fn demo_reproduces_half_and_three_halves() {
        let demo = sequence_noninvariance_demo(&RegularizationConfig::default()).unwrap();
        assert_eq!(demo.plain.verdict, Verdict::Converged);
        assert!((demo.plain.value.unwrap().re - 0.5).abs() < 1e-6);
        assert!((demo.swapped.value.unwrap().re - 1.5).abs() < 1e-6);
    }

    #[test]
    fn ratios_follow_the_closed_form() {
        for m in [1usize, 2, 4] {
            let ratios = divergence_demo(m).unwrap();
            assert_eq!(ratios.len(), DIVERGENCE_DEMO_DEGREE + 1);
            for (d, r) in ratios.iter().enumerate() {
                let expected = (d as f64 + m as f64 / 2.0) / (d as f64 + 1.0);
                assert!((r - expected).abs() < 1e-9 * expected, "m={m} d={d}");
            }
        }
        assert!(divergence_demo(0).is_err());
    }
}
