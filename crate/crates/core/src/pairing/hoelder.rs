use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::symmetric_algebra::{component_inner, GradedElement};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HoelderExponent {
    Finite(f64),
    Infinity,
}

impl HoelderExponent {
    fn validate(self) -> Result<Self> {
        match self {
            Self::Finite(p) if p.is_nan() || p < 1.0 || p.is_infinite() => Err(Error::InvalidInput(format!(
                "Hölder exponent must be at least 1, got {p}"
            ))),
            other => Ok(other),
        }
    }

    fn reciprocal(self) -> f64 {
        match self {
            Self::Finite(p) => 1.0 / p,
            Self::Infinity => 0.0,
        }
    }
}

/// `(Σ_{d ≤ truncation} ‖Φ_d‖^p)^{1/p}` (or the max for `p = ∞`): a lower
/// bound for the full norm, which finite data cannot decide.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HoelderNorms {
    pub p: HoelderExponent,
    pub value: f64,
    pub truncation_degree: usize,
}

pub fn hoelder_norm(
    phi: &GradedElement,
    p: HoelderExponent,
    truncation: usize,
) -> Result<HoelderNorms> {
    let p = p.validate()?;
    let top = truncation.min(phi.max_degree());
    let norms = (0..=top).map(|d| phi.component_norm(d));
    let value = match p {
        HoelderExponent::Infinity => norms.fold(0.0, f64::max),
        HoelderExponent::Finite(p) => norms.map(|n| n.powf(p)).sum::<f64>().powf(1.0 / p),
    };
    Ok(HoelderNorms {
        p,
        value,
        truncation_degree: top,
    })
}

/// `‖Φ‖_p ‖Ψ‖_q - Σ_{d ≤ truncation} |⟨Φ_d | Ψ_d⟩|` for conjugate exponents,
/// nonnegative up to rounding.
pub fn hoelder_pairing_check(
    phi: &GradedElement,
    psi: &GradedElement,
    p: HoelderExponent,
    q: HoelderExponent,
    truncation: usize,
) -> Result<f64> {
    let (p, q) = (p.validate()?, q.validate()?);
    if (p.reciprocal() + q.reciprocal() - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidInput(format!(
            "exponents {p:?} and {q:?} are not conjugate"
        )));
    }
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            found: psi.dim(),
        });
    }
    let top = truncation.min(phi.max_degree()).min(psi.max_degree());
    let np = hoelder_norm(phi, p, top)?.value;
    let nq = hoelder_norm(psi, q, top)?.value;
    let sum: f64 = (0..=top)
        .map(|d| component_inner(phi.component(d).unwrap(), psi.component(d).unwrap()).norm())
        .sum();
    Ok(np * nq - sum)
}
