//! The pairings `⟨Φ : Ψ⟩₁`, `⟨Φ : Ψ⟩_t` and the Abel limit `⟨Φ : Ψ⟩`, with
//! Hölder norms, number-operator powers, graded unitaries and the two
//! counterexamples.

mod demos;
mod hoelder;
pub mod series;
mod unitary;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetric_algebra::{component_inner, GradedElement};
use series::{classify, wynn_epsilon, Mode};

pub use demos::{
    divergence_demo, pair_swap, sequence_elements, sequence_noninvariance_demo, SequenceDemo,
    DIVERGENCE_DEMO_DEGREE,
};
pub use hoelder::{hoelder_norm, hoelder_pairing_check, HoelderExponent, HoelderNorms};
pub use unitary::{graded_unitary_apply, symmetric_power, UNITARY_TOL};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Converged,
    Divergent,
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PairingMethod {
    #[serde(rename = "series_1")]
    Series1,
    ScaledT,
    Abel,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Acceleration {
    None,
    #[default]
    EpsilonAlgorithm,
}

/// Outcome of a pairing computation. `value` is present exactly when
/// `converged` holds; tolerances are relative to `max(1, |value|)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairingReport {
    pub value: Option<Complex64>,
    pub verdict: Verdict,
    pub method: PairingMethod,
    pub truncation_degree: usize,
    pub tail_estimate: f64,
    pub t_grid: Vec<f64>,
    pub extrapolation_residual: f64,
    pub converged: bool,
    pub failing_t: Option<f64>,
    pub note: String,
}

/// Tolerance, degree cap, Abel grid `t_k = 1 - 2^{-k}` for `k` in
/// `grid_start..=grid_end`, and acceleration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegularizationConfig {
    pub tolerance: f64,
    pub max_degree: usize,
    pub grid_start: u32,
    pub grid_end: u32,
    pub acceleration: Acceleration,
}

impl Default for RegularizationConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-8,
            max_degree: 200,
            grid_start: 3,
            grid_end: 12,
            acceleration: Acceleration::EpsilonAlgorithm,
        }
    }
}

impl RegularizationConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::InvalidInput(format!(
                "tolerance must be positive, got {}",
                self.tolerance
            )));
        }
        if self.grid_start == 0 || self.grid_start > self.grid_end || self.grid_end > 52 {
            return Err(Error::InvalidInput(format!(
                "grid exponents must satisfy 1 <= start <= end <= 52, got {}..={}",
                self.grid_start, self.grid_end
            )));
        }
        Ok(())
    }

    pub fn t_grid(&self) -> Vec<f64> {
        (self.grid_start..=self.grid_end)
            .map(|k| 1.0 - 0.5f64.powi(k as i32))
            .collect()
    }
}

/// `⟨Φ_d | Ψ_d⟩` for `d = 0..=horizon`, and whether every later term vanishes.
///
/// A polynomial factor ends the series at its top degree, provided the other
/// factor is known that far; otherwise the horizon is the smaller known
/// degree, capped at `max_degree`.
pub fn degree_terms(
    phi: &GradedElement,
    psi: &GradedElement,
    max_degree: usize,
) -> Result<(Vec<Complex64>, bool)> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: psi.dim(),
        });
    }
    let known = |e: &GradedElement| e.known_through().unwrap_or(usize::MAX);
    let end = |e: &GradedElement| (!e.is_truncated()).then(|| e.support_degree().unwrap_or(0));
    let finite_end = [end(phi).filter(|&s| s <= known(psi)), end(psi).filter(|&s| s <= known(phi))]
        .into_iter()
        .flatten()
        .min();
    let (horizon, exact) = match finite_end {
        Some(s) => (s, true),
        None => (known(phi).min(known(psi)).min(max_degree), false),
    };
    let zero = Complex64::new(0.0, 0.0);
    let terms = (0..=horizon)
        .map(|d| match (phi.component(d), psi.component(d)) {
            (Some(a), Some(b)) => component_inner(a, b),
            _ => zero,
        })
        .collect();
    Ok((terms, exact))
}

fn report_from(summary: series::SeriesSummary, method: PairingMethod) -> PairingReport {
    PairingReport {
        converged: summary.verdict == Verdict::Converged,
        value: summary.value,
        verdict: summary.verdict,
        method,
        truncation_degree: summary.truncation_degree,
        tail_estimate: summary.tail_estimate,
        t_grid: Vec::new(),
        extrapolation_residual: 0.0,
        failing_t: None,
        note: summary.note,
    }
}

/// `⟨Φ : Ψ⟩₁ = Σ_d ⟨Φ_d | Ψ_d⟩`.
pub fn pairing_1(
    phi: &GradedElement,
    psi: &GradedElement,
    cfg: &RegularizationConfig,
) -> Result<PairingReport> {
    cfg.validate()?;
    let (terms, exact) = degree_terms(phi, psi, cfg.max_degree)?;
    let summary = classify(&terms, exact, cfg.tolerance, cfg.acceleration, Mode::Plain);
    Ok(report_from(summary, PairingMethod::Series1))
}

fn weighted(terms: &[Complex64], t: f64) -> Vec<Complex64> {
    let t2 = t * t;
    let mut w = 1.0f64;
    terms
        .iter()
        .map(|a| {
            let out = a * w;
            w *= t2;
            out
        })
        .collect()
}

fn scaled_summary(
    terms: &[Complex64],
    exact: bool,
    t: f64,
    cfg: &RegularizationConfig,
) -> series::SeriesSummary {
    let w = weighted(terms, t);
    classify(&w, exact, cfg.tolerance, cfg.acceleration, Mode::Regularized { raw: terms })
}

fn check_t(t: f64) -> Result<()> {
    if t > 0.0 && t < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!("t must lie in (0, 1), got {t}")))
    }
}

/// `⟨Φ : Ψ⟩_t = Σ_d ⟨Φ_d | Ψ_d⟩ t^{2d}` for `0 < t < 1`.
pub fn pairing_t(
    phi: &GradedElement,
    psi: &GradedElement,
    t: f64,
    cfg: &RegularizationConfig,
) -> Result<PairingReport> {
    cfg.validate()?;
    check_t(t)?;
    let (terms, exact) = degree_terms(phi, psi, cfg.max_degree)?;
    let mut report = report_from(scaled_summary(&terms, exact, t, cfg), PairingMethod::ScaledT);
    report.t_grid = vec![t];
    Ok(report)
}

/// `⟨Φ : Ψ⟩ = lim_{t↑1} ⟨Φ : Ψ⟩_t`, from the regularized values on the
/// configured grid followed by extrapolation to `t = 1`.
pub fn abel_pairing(
    phi: &GradedElement,
    psi: &GradedElement,
    cfg: &RegularizationConfig,
) -> Result<PairingReport> {
    cfg.validate()?;
    let (terms, exact) = degree_terms(phi, psi, cfg.max_degree)?;
    let horizon = terms.len().saturating_sub(1);
    let grid = cfg.t_grid();
    let mut base = PairingReport {
        value: None,
        verdict: Verdict::Undecided,
        method: PairingMethod::Abel,
        truncation_degree: horizon,
        tail_estimate: 0.0,
        t_grid: grid.clone(),
        extrapolation_residual: 0.0,
        converged: false,
        failing_t: None,
        note: String::new(),
    };
    if exact {
        // a finite sum is a polynomial in t and its limit is the plain sum
        base.value = Some(terms.iter().sum());
        base.verdict = Verdict::Converged;
        base.converged = true;
        base.note = "finite series".into();
        return Ok(base);
    }
    let mut values = Vec::with_capacity(grid.len());
    for &t in &grid {
        let s = scaled_summary(&terms, exact, t, cfg);
        base.tail_estimate = base.tail_estimate.max(s.tail_estimate);
        match s.value {
            Some(v) if s.verdict == Verdict::Converged => values.push(v),
            _ => {
                base.verdict = s.verdict;
                base.failing_t = Some(t);
                base.note = format!("regularized series at t = {t}: {}", s.note);
                return Ok(base);
            }
        }
    }

    let diffs: Vec<f64> = values.windows(2).map(|w| (w[1] - w[0]).norm()).collect();
    let last_value = *values.last().expect("grid is nonempty");
    let scale = last_value.norm().max(1.0);
    let tail = &diffs[diffs.len().saturating_sub(3)..];
    let settled = tail.iter().all(|&d| d <= cfg.tolerance * scale);
    let shrinking = tail.windows(2).all(|w| w[1] <= w[0] * (1.0 + 1e-9));
    if !settled && !shrinking {
        let growing = tail.windows(2).all(|w| w[1] > w[0] * 1.5);
        base.verdict = if growing { Verdict::Divergent } else { Verdict::Undecided };
        base.note = if growing {
            "regularized values grow as t approaches 1".into()
        } else {
            "regularized values do not settle as t approaches 1".into()
        };
        return Ok(base);
    }

    let (value, residual) = match cfg.acceleration {
        Acceleration::EpsilonAlgorithm => {
            wynn_epsilon(&values).unwrap_or((last_value, diffs.last().copied().unwrap_or(0.0)))
        }
        Acceleration::None => (last_value, diffs.last().copied().unwrap_or(0.0)),
    };
    base.extrapolation_residual = residual;
    if residual <= cfg.tolerance * value.norm().max(1.0) {
        base.value = Some(value);
        base.verdict = Verdict::Converged;
        base.converged = true;
        base.note = "extrapolated to t = 1".into();
    } else {
        base.note = format!("extrapolation residual {residual:e} exceeds tolerance");
    }
    Ok(base)
}

/// `𝒩^r Φ = Σ_d d^r Φ_d`, leaving the degree-0 component fixed for every `r`.
pub fn number_op_pow(phi: &GradedElement, r: f64) -> GradedElement {
    phi.map_degrees(|d| {
        if d == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new((d as f64).powf(r), 0.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antilinear::AntilinearSymmetricMap;
    use crate::gaussian::{gaussian_series, pair_closed, GaussianSeed};
    use crate::symmetric_algebra::{evaluate, inner_product};
    use nalgebra::DMatrix;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn seed(a: DMatrix<Complex64>) -> GaussianSeed {
        GaussianSeed::new(AntilinearSymmetricMap::new(a).unwrap())
    }

    fn scalar(a: f64) -> GaussianSeed {
        seed(DMatrix::from_element(1, 1, c(a, 0.0)))
    }

    #[test]
    fn config_defaults_and_grid() {
        let cfg = RegularizationConfig::default();
        let grid = cfg.t_grid();
        assert_eq!(grid.len(), 10);
        assert_eq!(grid[0], 0.875);
        assert!(grid.windows(2).all(|w| w[0] < w[1]) && *grid.last().unwrap() < 1.0);
        let bad = RegularizationConfig { tolerance: 0.0, ..cfg };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn polynomial_pairing_is_exact() {
        let phi = GradedElement::from_vector(&[c(1.0, 2.0), c(0.0, -1.0)]);
        let psi = gaussian_series(&seed(DMatrix::identity(2, 2) * c(0.3, 0.0)), 10).unwrap();
        let r = pairing_1(&phi, &psi, &RegularizationConfig::default()).unwrap();
        assert!(r.converged);
        assert_eq!(r.value.unwrap(), evaluate(&psi, &phi).unwrap());
        assert_eq!(r.truncation_degree, 1);
    }

    #[test]
    fn vacuum_pairs_to_one() {
        let v = GradedElement::vacuum(2);
        let cfg = RegularizationConfig::default();
        for t in [0.1, 0.5, 0.99] {
            assert_eq!(pairing_t(&v, &v, t, &cfg).unwrap().value, Some(c(1.0, 0.0)));
        }
        assert_eq!(abel_pairing(&v, &v, &cfg).unwrap().value, Some(c(1.0, 0.0)));
    }

    #[test]
    fn open_domain_gaussians_pair_in_closed_form() {
        let x = seed(DMatrix::from_row_slice(2, 2, &[c(0.3, 0.1), c(0.1, 0.0), c(0.1, 0.0), c(-0.2, 0.2)]));
        let y = seed(DMatrix::from_row_slice(2, 2, &[c(0.1, -0.3), c(0.0, 0.2), c(0.0, 0.2), c(0.4, 0.0)]));
        let cfg = RegularizationConfig::default();
        let (gx, gy) = (gaussian_series(&x, 120).unwrap(), gaussian_series(&y, 120).unwrap());
        let r = pairing_1(&gx, &gy, &cfg).unwrap();
        let closed = pair_closed(&x, &y, 1.0).unwrap();
        assert!(r.converged, "{}", r.note);
        assert!((r.value.unwrap() - closed).norm() < 1e-8);
        let a = abel_pairing(&gx, &gy, &cfg).unwrap();
        assert!(a.converged, "{}", a.note);
        assert!((a.value.unwrap() - closed).norm() < 1e-8);
    }

    #[test]
    fn one_dimensional_boundary_pair() {
        let (gx, gy) = (gaussian_series(&scalar(1.0), 200).unwrap(), gaussian_series(&scalar(-1.0), 200).unwrap());
        let r = pairing_1(&gx, &gy, &RegularizationConfig::default()).unwrap();
        assert!(r.converged, "{}", r.note);
        assert!((r.value.unwrap() - c(0.5f64.sqrt(), 0.0)).norm() < 1e-6);
    }

    #[test]
    fn conjugation_pair_diverges_but_is_abel_summable() {
        let cfg = RegularizationConfig::default();
        let sigma = AntilinearSymmetricMap::conjugation(2);
        let gx = gaussian_series(&GaussianSeed::new(sigma.clone()), 200).unwrap();
        let gy = gaussian_series(&GaussianSeed::new(sigma.scaled(c(-1.0, 0.0))), 200).unwrap();
        let s = pairing_1(&gx, &gy, &cfg).unwrap();
        assert_eq!(s.verdict, Verdict::Divergent);
        assert!(s.value.is_none() && !s.converged);
        let a = abel_pairing(&gx, &gy, &cfg).unwrap();
        assert!(a.converged, "{}", a.note);
        assert!((a.value.unwrap() - c(0.5, 0.0)).norm() < 1e-6);
        assert!(a.extrapolation_residual <= cfg.tolerance);
    }

    #[test]
    fn self_pairing_outside_domain_fails_per_t() {
        // conjugation self-pairing: regularized values (1 - t⁴)^{-1} blow up
        let g = gaussian_series(&GaussianSeed::new(AntilinearSymmetricMap::conjugation(2)), 200).unwrap();
        let cfg = RegularizationConfig::default();
        assert_eq!(pairing_1(&g, &g, &cfg).unwrap().verdict, Verdict::Divergent);
        let a = abel_pairing(&g, &g, &cfg).unwrap();
        assert!(!a.converged && a.value.is_none());
        assert!(a.failing_t.is_some() || a.verdict == Verdict::Divergent);
    }

    #[test]
    fn scaled_pairing_of_gaussians_uses_fourth_power_weights() {
        // degree-2d terms carry t^{4d}
        let x = scalar(0.7);
        let y = scalar(-0.9);
        let (gx, gy) = (gaussian_series(&x, 200).unwrap(), gaussian_series(&y, 200).unwrap());
        let t = 0.9;
        let r = pairing_t(&gx, &gy, t, &RegularizationConfig::default()).unwrap();
        let expected = pair_closed(&x, &y, t * t).unwrap();
        assert!((r.value.unwrap() - expected).norm() < 1e-10);
    }

    #[test]
    fn number_operator_identity() {
        let phi = GradedElement::from_components(
            1,
            (0..6).map(|d| vec![c(d as f64 + 1.0, 0.5)]).collect(),
            true,
        )
        .unwrap();
        let psi = GradedElement::from_components(
            1,
            (0..6).map(|d| vec![c(0.5, -(d as f64))]).collect(),
            true,
        )
        .unwrap();
        let lhs = inner_product(&phi, &psi).unwrap();
        for r in [-2.0, -1.0, 0.5, 1.0, 2.0] {
            let rhs = inner_product(&number_op_pow(&phi, -r), &number_op_pow(&psi, r)).unwrap();
            assert!((lhs - rhs).norm() < 1e-12);
        }
        assert_eq!(number_op_pow(&phi, 0.0), phi);
        assert_eq!(number_op_pow(&phi, 1.0).component(3).unwrap()[0], c(12.0, 1.5));
    }

    #[test]
    fn degree_terms_horizons() {
        let poly = GradedElement::from_vector(&[c(1.0, 0.0)]).resized(4);
        let long = gaussian_series(&scalar(0.5), 30).unwrap();
        let (t, exact) = degree_terms(&poly, &long, 200).unwrap();
        assert!(exact && t.len() == 2);
        let short = gaussian_series(&scalar(0.5), 3).unwrap();
        let (_, exact) = degree_terms(&GradedElement::from_vector(&[c(1.0, 0.0)]).resized(4).add(
            &GradedElement::homogeneous(1, 4, vec![c(1.0, 0.0)]).unwrap()).unwrap(), &short, 200).unwrap();
        assert!(!exact);
        let (t, exact) = degree_terms(&long, &long, 10).unwrap();
        assert!(!exact && t.len() == 11);
        assert!(degree_terms(&GradedElement::vacuum(1), &GradedElement::vacuum(2), 5).is_err());
    }
}
