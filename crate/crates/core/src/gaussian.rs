//! Gaussians `e^Z = Σ_d ζ^d / d!` as truncated graded series, and their
//! closed-form norms and pairings.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::antilinear::{
    compose, in_closed_domain, operator_norm, quadratic_from_map, takagi, AntilinearSymmetricMap,
    Quadratic, BOUNDARY_TOL,
};
use crate::combinatorics::basis_len;
use crate::detsqrt::{det_sqrt, GvMatrix};
use crate::error::{Error, Result};
use crate::symmetric_algebra::{symmetric_product, GradedElement};

/// Default ceiling on the total number of stored coordinates of a series.
pub const DEFAULT_COORDINATE_BUDGET: usize = 50_000_000;

/// A symmetric antilinear map with its quadratic and Takagi values cached.
#[derive(Clone, Debug)]
pub struct GaussianSeed {
    map: AntilinearSymmetricMap,
    quadratic: Quadratic,
    takagi_values: Vec<f64>,
}

impl GaussianSeed {
    pub fn new(map: AntilinearSymmetricMap) -> Self {
        let quadratic = quadratic_from_map(&map);
        let takagi_values = takagi(&map).values;
        Self {
            map,
            quadratic,
            takagi_values,
        }
    }

    pub fn map(&self) -> &AntilinearSymmetricMap {
        &self.map
    }

    pub fn quadratic(&self) -> &Quadratic {
        &self.quadratic
    }

    pub fn takagi_values(&self) -> &[f64] {
        &self.takagi_values
    }

    pub fn dim(&self) -> usize {
        self.map.dim()
    }

    pub fn operator_norm(&self) -> f64 {
        self.takagi_values.first().copied().unwrap_or(0.0)
    }
}

/// Total coordinates stored for a series in `m` variables through degree `cap`.
pub fn coordinates_through(m: usize, cap: usize) -> usize {
    (0..=cap).map(|d| basis_len(m, d)).fold(0usize, usize::saturating_add)
}

/// `e^Z` through degree `cap`, with the default coordinate budget.
pub fn gaussian_series(seed: &GaussianSeed, cap: usize) -> Result<GradedElement> {
    gaussian_series_with_budget(seed, cap, DEFAULT_COORDINATE_BUDGET)
}

/// `e^Z` through degree `cap`: the degree-`2d` component is `ζ^d / d!`,
/// accumulated as `(ζ^{d-1}/(d-1)!)·ζ / d`; odd degrees vanish.
pub fn gaussian_series_with_budget(
    seed: &GaussianSeed,
    cap: usize,
    budget: usize,
) -> Result<GradedElement> {
    let m = seed.dim();
    let needed = coordinates_through(m, cap);
    if needed > budget {
        return Err(Error::BudgetExceeded {
            needed,
            limit: budget,
        });
    }
    let zeta = seed.quadratic().element();
    let mut series = GradedElement::zero(m, cap);
    series.component_mut(0)[0] = Complex64::new(1.0, 0.0);
    if zeta.support_degree().is_none() {
        return Ok(series);
    }
    let mut power = GradedElement::vacuum(m);
    let mut d = 1usize;
    while 2 * d <= cap {
        power = symmetric_product(&power, zeta, 2 * d)?.scale(Complex64::new(1.0 / d as f64, 0.0));
        let top = power.component(2 * d).expect("degree 2d is inside the product horizon");
        series.component_mut(2 * d).copy_from_slice(top);
        d += 1;
    }
    Ok(series.with_truncated(true))
}

/// `‖e^Z‖² = Det^{1/2}(I - Z²)^{-1} = Π_k (1 - λ_k²)^{-1/2}`, defined only for `‖Z‖ < 1`.
pub fn norm_sq_closed(seed: &GaussianSeed) -> Result<f64> {
    let norm = seed.operator_norm();
    if norm >= 1.0 - BOUNDARY_TOL {
        return Err(Error::DomainViolation(format!(
            "e^Z lies in Fock space only for ||Z|| < 1; here ||Z|| = {norm}"
        )));
    }
    Ok(seed
        .takagi_values()
        .iter()
        .map(|l| (1.0 - l * l).powf(-0.5))
        .product())
}

/// `I - t²·Y∘X`.
pub fn scaled_resolvent_argument(
    x: &AntilinearSymmetricMap,
    y: &AntilinearSymmetricMap,
    t: f64,
) -> Result<DMatrix<Complex64>> {
    let yx = compose(y, x)?;
    let n = yx.nrows();
    Ok(DMatrix::identity(n, n) - yx * Complex64::new(t * t, 0.0))
}

/// `Det^{1/2}(I - t² Y X)^{-1}`, the closed form of `⟨e^{tX} | e^{tY}⟩`.
///
/// For `t < 1` both maps must lie in the closed Siegel domain. At `t = 1` the
/// maps may be anywhere provided `I - YX` carries a `G(V)` certificate, which
/// on the closed domain is exactly invertibility.
pub fn pair_closed(x: &GaussianSeed, y: &GaussianSeed, t: f64) -> Result<Complex64> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(Error::InvalidInput(format!("t must lie in (0, 1], got {t}")));
    }
    if t < 1.0 {
        for (name, seed) in [("X", x), ("Y", y)] {
            if !in_closed_domain(seed.map()) {
                return Err(Error::DomainViolation(format!(
                    "{name} is outside the closed Siegel domain (||{name}|| = {})",
                    operator_norm(seed.map())
                )));
            }
        }
    }
    let arg = scaled_resolvent_argument(x.map(), y.map(), t)?;
    let certified = GvMatrix::new(arg).map_err(|e| match e {
        Error::DomainViolation(msg) => Error::DomainViolation(format!("I - t^2 YX: {msg}")),
        other => other,
    })?;
    Ok(Complex64::new(1.0, 0.0) / det_sqrt(&certified))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetric_algebra::inner_product;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn scalar(a: Complex64) -> GaussianSeed {
        GaussianSeed::new(AntilinearSymmetricMap::new(DMatrix::from_element(1, 1, a)).unwrap())
    }

    #[test]
    fn zero_map_gives_the_vacuum() {
        let seed = GaussianSeed::new(AntilinearSymmetricMap::zero(2));
        let g = gaussian_series(&seed, 10).unwrap();
        assert!(!g.is_truncated());
        assert_eq!(g.support_degree(), Some(0));
        assert_eq!(norm_sq_closed(&seed).unwrap(), 1.0);
    }

    #[test]
    fn degree_two_component_is_the_quadratic() {
        let a = DMatrix::from_row_slice(2, 2, &[c(0.2, 0.1), c(-0.3, 0.0), c(-0.3, 0.0), c(0.0, 0.4)]);
        let seed = GaussianSeed::new(AntilinearSymmetricMap::new(a).unwrap());
        let g = gaussian_series(&seed, 6).unwrap();
        assert_eq!(g.component(2).unwrap(), seed.quadratic().element().component(2).unwrap());
        assert!(g.component_norm(1) == 0.0 && g.component_norm(3) == 0.0);
    }

    #[test]
    fn one_dimensional_pairing_terms() {
        // ⟨ξ^d | η^d⟩ / d!² = binom(2d, d) (conj(a) b / 4)^d
        let (a, b) = (c(0.7, 0.2), c(-0.3, 0.9));
        let gx = gaussian_series(&scalar(a), 20).unwrap();
        let gy = gaussian_series(&scalar(b), 20).unwrap();
        let mut binom = 1.0f64;
        for d in 0..=10usize {
            if d > 0 {
                binom *= (2 * d * (2 * d - 1)) as f64 / (d * d) as f64;
            }
            let lhs: Complex64 = gx
                .component(2 * d)
                .unwrap()
                .iter()
                .zip(gy.component(2 * d).unwrap())
                .map(|(x, y)| x.conj() * y)
                .sum();
            let rhs = (a.conj() * b / 4.0).powu(d as u32) * binom;
            assert!((lhs - rhs).norm() < 1e-14 * (1.0 + rhs.norm()), "d={d}");
        }
    }

    #[test]
    fn closed_norm_from_takagi_values() {
        let a = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.3)]);
        let seed = GaussianSeed::new(AntilinearSymmetricMap::new(a).unwrap());
        let expected = (1.0 - 0.25f64).powf(-0.5) * (1.0 - 0.09f64).powf(-0.5);
        assert!((norm_sq_closed(&seed).unwrap() - expected).abs() < 1e-14);
        let series = gaussian_series(&seed, 80).unwrap();
        let series_norm = inner_product(&series, &series).unwrap().re;
        assert!((series_norm - expected).abs() < 1e-12);
    }

    #[test]
    fn closed_norm_refuses_the_boundary() {
        let seed = GaussianSeed::new(AntilinearSymmetricMap::conjugation(2));
        assert!(matches!(norm_sq_closed(&seed), Err(Error::DomainViolation(_))));
    }

    #[test]
    fn pair_closed_examples() {
        let z = scalar(c(0.3, 0.4));
        let n = norm_sq_closed(&z).unwrap();
        assert!((pair_closed(&z, &z, 1.0).unwrap() - c(n, 0.0)).norm() < 1e-14);

        let v = pair_closed(&scalar(c(1.0, 0.0)), &scalar(c(-1.0, 0.0)), 1.0).unwrap();
        assert!((v - c(0.5f64.sqrt(), 0.0)).norm() < 1e-15);

        for m in 1..=4 {
            let sigma = AntilinearSymmetricMap::conjugation(m);
            let x = GaussianSeed::new(sigma.clone());
            let y = GaussianSeed::new(sigma.scaled(c(-1.0, 0.0)));
            let v = pair_closed(&x, &y, 1.0).unwrap();
            assert!((v - c(2f64.powf(-(m as f64) / 2.0), 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn pair_closed_domain_errors() {
        let sigma = GaussianSeed::new(AntilinearSymmetricMap::conjugation(2));
        // I - σσ = 0 is singular
        assert!(matches!(pair_closed(&sigma, &sigma, 1.0), Err(Error::DomainViolation(_))));
        // below t = 1 the same pair is fine
        let v = pair_closed(&sigma, &sigma, 0.5).unwrap();
        assert!((v - c(1.0 / 0.75, 0.0)).norm() < 1e-14);
        let big = GaussianSeed::new(AntilinearSymmetricMap::conjugation(2).scaled(c(2.0, 0.0)));
        assert!(matches!(pair_closed(&big, &sigma, 0.5), Err(Error::DomainViolation(_))));
        assert!(pair_closed(&sigma, &sigma, 0.0).is_err());
        assert!(pair_closed(&sigma, &sigma, 1.5).is_err());
    }

    #[test]
    fn budget_is_enforced() {
        let seed = GaussianSeed::new(AntilinearSymmetricMap::conjugation(6));
        assert!(matches!(
            gaussian_series_with_budget(&seed, 200, 1_000_000),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn conjugation_quadratic_norms() {
        // ‖ζ‖² = m/2 for the standard conjugation
        for m in 1..=4 {
            let seed = GaussianSeed::new(AntilinearSymmetricMap::conjugation(m));
            let n2 = seed.quadratic().element().component_norm(2).powi(2);
            assert!((n2 - m as f64 / 2.0).abs() < 1e-14);
        }
    }
}
