//! The graded symmetric algebra `S(C^m)` in orthonormal coordinates.
//!
//! Elements are stored degree by degree in the unitary basis `{v^D}`, so the
//! canonical inner product is a plain conjugate dot product and all of the
//! combinatorics lives in the multiplication weights
//! `sqrt((D+E)! / (D! E!))`.
//!
//! Inner products are conjugate-linear in the first argument throughout.

mod element;
mod multi_index;
mod oracle;

use num_complex::Complex64;

pub use element::GradedElement;
pub use multi_index::{enumerate_basis, normalization, MultiIndex};
use multi_index::rank_of;
pub use oracle::{coproduct_oracle, permanent_inner_oracle, VectorList, ORACLE_DEGREE_GUARD};

use crate::combinatorics::{binomial, ln_binomial, EXACT_LIMIT};
use crate::error::{Error, Result};
use element::check_dims;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// `⟨Φ | Ψ⟩ = Σ_d ⟨Φ_d | Ψ_d⟩` over the degrees both elements store,
/// accumulated in ascending degree.
pub fn inner_product(phi: &GradedElement, psi: &GradedElement) -> Result<Complex64> {
    check_dims(phi, psi)?;
    let top = phi.max_degree().min(psi.max_degree());
    Ok((0..=top)
        .map(|d| component_inner(phi.component(d).unwrap(), psi.component(d).unwrap()))
        .sum())
}

pub(crate) fn component_inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

/// `sqrt(Π_i binom(d_i + e_i, d_i))`: the coefficient of `v^{D+E}` in `v^D · v^E`.
fn product_weight(d: &[u32], e: &[u32]) -> f64 {
    if d.iter().zip(e).all(|(a, b)| u64::from(a + b) <= EXACT_LIMIT) {
        d.iter()
            .zip(e)
            .map(|(&a, &b)| binomial(u64::from(a + b), u64::from(a)))
            .product::<f64>()
            .sqrt()
    } else {
        (0.5 * d
            .iter()
            .zip(e)
            .map(|(&a, &b)| ln_binomial(u64::from(a + b), u64::from(a)))
            .sum::<f64>())
        .exp()
    }
}

/// Highest degree at which a product of `phi` and `psi` is fully determined,
/// given a requested cap.
fn product_horizon(phi: &GradedElement, psi: &GradedElement, cap: usize) -> usize {
    let mut top = cap.min(phi.max_degree() + psi.max_degree());
    if let Some(h) = phi.known_through() {
        top = top.min(h);
    }
    if let Some(h) = psi.known_through() {
        top = top.min(h);
    }
    top
}

fn drops_nonzero(phi: &GradedElement, psi: &GradedElement, top: usize) -> bool {
    match (phi.support_degree(), psi.support_degree()) {
        (Some(a), Some(b)) => a + b > top,
        _ => false,
    }
}

struct BasisCache {
    dim: usize,
    degrees: Vec<Option<Vec<MultiIndex>>>,
}

impl BasisCache {
    fn new(dim: usize) -> Self {
        Self {
            dim,
            degrees: Vec::new(),
        }
    }

    fn ensure(&mut self, d: usize) {
        if self.degrees.len() <= d {
            self.degrees.resize(d + 1, None);
        }
        let dim = self.dim;
        self.degrees[d].get_or_insert_with(|| enumerate_basis(dim, d));
    }

    fn get(&self, d: usize) -> &[MultiIndex] {
        self.degrees[d].as_deref().expect("degree populated by ensure")
    }
}

/// Multiplication in `SV`: graded convolution of coordinates, keeping degrees
/// `<= cap`. The result is flagged truncated when a nonzero contribution was
/// dropped or when either factor is itself a truncated series.
pub fn symmetric_product(
    phi: &GradedElement,
    psi: &GradedElement,
    cap: usize,
) -> Result<GradedElement> {
    check_dims(phi, psi)?;
    let m = phi.dim();
    let top = product_horizon(phi, psi, cap);
    let mut out = GradedElement::zero(m, top);
    let nonzero = |e: &GradedElement, d: usize| e.component(d).unwrap().iter().any(|z| *z != ZERO);
    let a_degrees: Vec<usize> = (0..=phi.max_degree().min(top))
        .filter(|&d| nonzero(phi, d))
        .collect();
    let b_degrees: Vec<usize> = (0..=psi.max_degree().min(top))
        .filter(|&d| nonzero(psi, d))
        .collect();
    let mut cache = BasisCache::new(m);
    for &d in a_degrees.iter().chain(&b_degrees) {
        cache.ensure(d);
    }
    let mut scratch = vec![0u32; m];
    for &da in &a_degrees {
        let a_coords = phi.component(da).unwrap();
        let a_basis = cache.get(da);
        for &db in b_degrees.iter().filter(|&&db| da + db <= top) {
            let b_coords = psi.component(db).unwrap();
            let b_basis = cache.get(db);
            let target = out.component_mut(da + db);
            for (a, di) in a_coords.iter().zip(a_basis) {
                if *a == ZERO {
                    continue;
                }
                for (b, ei) in b_coords.iter().zip(b_basis) {
                    if *b == ZERO {
                        continue;
                    }
                    for (s, (x, y)) in scratch.iter_mut().zip(di.exponents().iter().zip(ei.exponents())) {
                        *s = x + y;
                    }
                    let w = product_weight(di.exponents(), ei.exponents());
                    target[rank_of(&scratch, da + db)] += a * b * w;
                }
            }
        }
    }
    let truncated = phi.is_truncated() || psi.is_truncated() || drops_nonzero(phi, psi, top);
    Ok(out.with_truncated(truncated))
}

/// Iterates over every `B <= F` entrywise.
fn sub_indices(f: &MultiIndex) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0u32; f.dim()];
    loop {
        out.push(MultiIndex::new(current.clone()));
        let mut slot = 0;
        loop {
            if slot == current.len() {
                return out;
            }
            if current[slot] < f.exponents()[slot] {
                current[slot] += 1;
                break;
            }
            current[slot] = 0;
            slot += 1;
        }
    }
}

/// Product of antifunctionals, `[ΦΨ](θ) = [Φ ⊗ Ψ](Δθ)`, computed on Riesz vectors.
///
/// For each target `v^F` the coproduct `Δ v^F = Σ_B sqrt(Π binom(f_i, b_i)) v^B ⊗ v^{F-B}`
/// is evaluated against `Φ ⊗ Ψ`, so the loop runs over targets and their
/// splittings rather than over pairs of factors.
pub fn antidual_product(
    phi: &GradedElement,
    psi: &GradedElement,
    cap: usize,
) -> Result<GradedElement> {
    check_dims(phi, psi)?;
    let m = phi.dim();
    let top = product_horizon(phi, psi, cap);
    let mut out = GradedElement::zero(m, top);
    for n in 0..=top {
        let targets = enumerate_basis(m, n);
        let coords = out.component_mut(n);
        for (slot, f) in coords.iter_mut().zip(&targets) {
            let mut acc = ZERO;
            for b in sub_indices(f) {
                let rest = f.checked_sub(&b).expect("b is dominated by f");
                let (pb, pr) = (phi.coordinate(&b), psi.coordinate(&rest));
                if pb == ZERO || pr == ZERO {
                    continue;
                }
                let w: f64 = f
                    .exponents()
                    .iter()
                    .zip(b.exponents())
                    .map(|(&fi, &bi)| ln_binomial(u64::from(fi), u64::from(bi)))
                    .sum();
                acc += pb * pr * (0.5 * w).exp();
            }
            *slot = acc;
        }
    }
    let truncated = phi.is_truncated() || psi.is_truncated() || drops_nonzero(phi, psi, top);
    Ok(out.with_truncated(truncated))
}

/// Coordinates of the product `x_1 ⋯ x_d` of vectors.
pub fn embed_product(vectors: &VectorList) -> GradedElement {
    let m = vectors.dim();
    let d = vectors.len();
    let mut acc = GradedElement::vacuum(m);
    for (k, x) in vectors.vectors().iter().enumerate() {
        acc = symmetric_product(&acc, &GradedElement::from_vector(x), k + 1)
            .expect("dimensions validated by VectorList");
    }
    acc.resized(d)
}

/// `Ψ(φ) = Σ_d ⟨φ_d | Ψ_d⟩` for a polynomial `φ`: the antilinear evaluation of `Ψ`.
pub fn evaluate(psi: &GradedElement, phi: &GradedElement) -> Result<Complex64> {
    check_dims(phi, psi)?;
    if phi.is_truncated() {
        return Err(Error::InvalidInput(
            "the evaluated argument must be a polynomial, not a truncated series".into(),
        ));
    }
    let Some(support) = phi.support_degree() else {
        return Ok(ZERO);
    };
    if psi.is_truncated() && support > psi.max_degree() {
        return Err(Error::InsufficientHorizon {
            needed: support,
            available: psi.max_degree(),
        });
    }
    Ok((0..=support.min(psi.max_degree()))
        .map(|d| component_inner(phi.component(d).unwrap(), psi.component(d).unwrap()))
        .sum())
}
