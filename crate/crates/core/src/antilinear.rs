//! Symmetric antilinear maps `Z(x) = A·conj(x)` and their quadratics.
//!
//! With the inner product conjugate-linear in its first slot,
//! `⟨y | Z x⟩ = ȳᵀ A x̄`, and `Z` is symmetric (`⟨y | Zx⟩ = ⟨x | Zy⟩`)
//! exactly when `A = Aᵀ`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::combinatorics::basis_len;
use crate::error::{Error, Result};
use crate::symmetric_algebra::{GradedElement, MultiIndex};

const SYMMETRY_TOL: f64 = 1e-12;

/// Clusters of singular values closer than this (relative to the largest)
/// are treated as one degenerate value during Takagi phase correction.
pub const CLUSTER_TOL: f64 = 1e-8;

/// Tolerance on `|λ_1 - 1|` for membership in the boundary of the Siegel domain.
pub const BOUNDARY_TOL: f64 = 1e-10;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// A symmetric antilinear map on `C^m`, stored as the symmetric matrix `A`.
#[derive(Clone, Debug, PartialEq)]
pub struct AntilinearSymmetricMap {
    matrix: DMatrix<Complex64>,
}

fn max_asymmetry(a: &DMatrix<Complex64>) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..a.nrows() {
        for j in 0..i {
            worst = worst.max((a[(i, j)] - a[(j, i)]).norm());
        }
    }
    worst
}

impl AntilinearSymmetricMap {
    /// Accepts `A` if it is square and symmetric to `1e-12` (relative to its
    /// largest entry when that exceeds one). The stored matrix is symmetrized.
    pub fn new(matrix: DMatrix<Complex64>) -> Result<Self> {
        Self::with_tolerance(matrix, SYMMETRY_TOL)
    }

    pub fn with_tolerance(matrix: DMatrix<Complex64>, tol: f64) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
            });
        }
        if matrix.nrows() == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        if matrix.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidInput("matrix entries must be finite".into()));
        }
        let scale = matrix.iter().map(|z| z.norm()).fold(1.0f64, f64::max);
        let deviation = max_asymmetry(&matrix);
        if deviation > tol * scale {
            return Err(Error::NotSymmetric { deviation });
        }
        let symmetric = (&matrix + matrix.transpose()) * Complex64::new(0.5, 0.0);
        Ok(Self { matrix: symmetric })
    }

    pub fn zero(m: usize) -> Self {
        Self {
            matrix: DMatrix::zeros(m, m),
        }
    }

    /// The standard conjugation `σ`: `A = I`, fixing every basis vector.
    pub fn conjugation(m: usize) -> Self {
        Self {
            matrix: DMatrix::identity(m, m),
        }
    }

    /// `c·Z` for complex `c` (still symmetric antilinear).
    pub fn scaled(&self, c: Complex64) -> Self {
        Self {
            matrix: &self.matrix * c,
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    /// `Z(x) = A·conj(x)`.
    pub fn apply(&self, x: &DVector<Complex64>) -> DVector<Complex64> {
        &self.matrix * x.map(|z| z.conj())
    }
}

/// `A = U·diag(values)·Uᵀ` with `U` unitary and `values` descending.
#[derive(Clone, Debug)]
pub struct TakagiFactorization {
    pub unitary: DMatrix<Complex64>,
    pub values: Vec<f64>,
}

impl TakagiFactorization {
    pub fn reconstruct(&self) -> DMatrix<Complex64> {
        let n = self.values.len();
        let lambda = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                Complex64::new(self.values[i], 0.0)
            } else {
                ZERO
            }
        });
        &self.unitary * lambda * self.unitary.transpose()
    }
}

/// Takagi factorization of a symmetric antilinear map.
///
/// Starts from an SVD `A = W Σ V^H`. For symmetric `A` the matrix
/// `B = W^H A W̄` is block diagonal over clusters of equal singular values,
/// each block being `σ` times a symmetric unitary `S`. Writing `S = Q Qᵀ`
/// with `Q` unitary gives `U = W Q` on that cluster.
pub fn takagi(map: &AntilinearSymmetricMap) -> TakagiFactorization {
    let a = map.matrix();
    let m = map.dim();
    let svd = a.clone().svd(true, false);
    let values: Vec<f64> = svd.singular_values.iter().copied().collect();
    let top = values.first().copied().unwrap_or(0.0);
    if top == 0.0 {
        return TakagiFactorization {
            unitary: DMatrix::identity(m, m),
            values,
        };
    }
    let w = svd.u.expect("left singular vectors requested");
    let b = w.adjoint() * a * w.map(|z| z.conj());

    let mut unitary = w.clone();
    let mut start = 0;
    while start < m {
        let mut end = start + 1;
        while end < m && values[end - 1] - values[end] <= CLUSTER_TOL * top {
            end += 1;
        }
        let sigma = values[start..end].iter().sum::<f64>() / (end - start) as f64;
        if sigma > 1e-14 * top {
            let block = b.view((start, start), (end - start, end - start)) / Complex64::new(sigma, 0.0);
            let q = symmetric_unitary_sqrt(&block.into_owned());
            let cols = w.columns(start, end - start) * q;
            unitary.columns_mut(start, end - start).copy_from(&cols);
        }
        start = end;
    }
    TakagiFactorization { unitary, values }
}

/// For a symmetric unitary `S`, a unitary `Q` with `S = Q Qᵀ`.
///
/// `S = X + iY` with `X`, `Y` real symmetric and commuting, so one real
/// orthogonal `O` diagonalizes both; then `S = O·diag(e^{iφ})·Oᵀ` and
/// `Q = O·diag(e^{iφ/2})`.
fn symmetric_unitary_sqrt(s: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let n = s.nrows();
    if n == 1 {
        return DMatrix::from_element(1, 1, s[(0, 0)].sqrt() / s[(0, 0)].norm().sqrt());
    }
    let re = s.map(|z| z.re);
    let im = s.map(|z| z.im);
    // generic combination separates joint eigenspaces
    let mix = &re + &im * 0.871_253;
    let eig = mix.symmetric_eigen();
    let o = eig.eigenvectors.map(|x| Complex64::new(x, 0.0));
    let diag = o.transpose() * s * &o;
    let mut q = o;
    for k in 0..n {
        let z = diag[(k, k)];
        let half = if z.norm() > 0.0 { (z / z.norm()).sqrt() } else { ONE };
        let mut col = q.column_mut(k);
        col *= half;
    }
    q
}

/// `‖Z‖`, the largest Takagi value (equivalently the largest singular value of `A`).
pub fn operator_norm(map: &AntilinearSymmetricMap) -> f64 {
    map.matrix()
        .clone()
        .singular_values()
        .iter()
        .copied()
        .fold(0.0, f64::max)
}

/// Position relative to the Siegel domain `{‖Z‖ < 1}` and its closure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SiegelMembership {
    Open,
    Boundary,
    Outside,
}

pub fn siegel_membership(map: &AntilinearSymmetricMap) -> SiegelMembership {
    let norm = operator_norm(map);
    if (norm - 1.0).abs() <= BOUNDARY_TOL {
        SiegelMembership::Boundary
    } else if norm < 1.0 {
        SiegelMembership::Open
    } else {
        SiegelMembership::Outside
    }
}

/// Whether the map lies in the closed Siegel domain `‖Z‖ <= 1` (within [`BOUNDARY_TOL`]).
pub fn in_closed_domain(map: &AntilinearSymmetricMap) -> bool {
    siegel_membership(map) != SiegelMembership::Outside
}

/// A quadratic `ζ ∈ S^2 V`, stored as a graded element concentrated in degree 2.
#[derive(Clone, Debug, PartialEq)]
pub struct Quadratic(GradedElement);

impl Quadratic {
    pub fn new(element: GradedElement) -> Result<Self> {
        if let Some(support) = element.support_degree() {
            if (0..=support).any(|d| d != 2 && element.component_norm(d) != 0.0) {
                return Err(Error::InvalidInput(
                    "a quadratic must vanish outside degree 2".into(),
                ));
            }
        }
        if element.is_truncated() {
            return Err(Error::InvalidInput("a quadratic is a polynomial".into()));
        }
        Ok(Self(element.resized(2)))
    }

    pub fn element(&self) -> &GradedElement {
        &self.0
    }

    pub fn into_element(self) -> GradedElement {
        self.0
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }
}

fn pair_index(m: usize, i: usize, j: usize) -> MultiIndex {
    let mut e = vec![0u32; m];
    e[i] += 1;
    e[j] += 1;
    MultiIndex::new(e)
}

/// The quadratic `ζ` with `⟨y | Z x⟩ = ⟨x y | ζ⟩` for all `x, y`.
///
/// In monomial coefficients `ζ = Σ_{i<j} A_ij v_i v_j + Σ_i (A_ii / 2) v_i^2`;
/// since `v_i v_j = v^{e_i+e_j}` and `v_i^2 = √2 v^{2e_i}`, the orthonormal
/// coordinates are `A_ij` off the diagonal and `A_ii / √2` on it.
pub fn quadratic_from_map(map: &AntilinearSymmetricMap) -> Quadratic {
    let m = map.dim();
    let a = map.matrix();
    let mut zeta = GradedElement::zero(m, 2);
    for i in 0..m {
        zeta.set_coordinate(
            &pair_index(m, i, i),
            a[(i, i)] * std::f64::consts::FRAC_1_SQRT_2,
        );
        for j in i + 1..m {
            zeta.set_coordinate(&pair_index(m, i, j), a[(i, j)]);
        }
    }
    Quadratic(zeta)
}

/// Inverse of [`quadratic_from_map`].
pub fn map_from_quadratic(zeta: &Quadratic) -> AntilinearSymmetricMap {
    let m = zeta.dim();
    debug_assert_eq!(zeta.element().component(2).map(<[_]>::len), Some(basis_len(m, 2)));
    let mut a = DMatrix::zeros(m, m);
    for i in 0..m {
        a[(i, i)] = zeta.element().coordinate(&pair_index(m, i, i)) * std::f64::consts::SQRT_2;
        for j in i + 1..m {
            let c = zeta.element().coordinate(&pair_index(m, i, j));
            a[(i, j)] = c;
            a[(j, i)] = c;
        }
    }
    AntilinearSymmetricMap { matrix: a }
}

/// Matrix of the complex-linear composite `Y∘X`: `B·conj(A)` for `X ↔ A`, `Y ↔ B`.
pub fn compose(
    y: &AntilinearSymmetricMap,
    x: &AntilinearSymmetricMap,
) -> Result<DMatrix<Complex64>> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: y.dim(),
            found: x.dim(),
        });
    }
    Ok(y.matrix() * x.matrix().map(|z| z.conj()))
}

/// `|LHS - RHS|` for
/// `2 Re⟨v | (I - YX) v⟩ = (‖v‖² - ‖Xv‖²) + (‖v‖² - ‖Yv‖²) + ‖Xv - Yv‖²`.
pub fn siegel_identity_residual(
    x: &AntilinearSymmetricMap,
    y: &AntilinearSymmetricMap,
    v: &DVector<Complex64>,
) -> Result<f64> {
    let yx = compose(y, x)?;
    if v.len() != x.dim() {
        return Err(Error::DimensionMismatch {
            expected: x.dim(),
            found: v.len(),
        });
    }
    let lhs = 2.0 * v.dotc(&(v - &yx * v)).re;
    let xv = x.apply(v);
    let yv = y.apply(v);
    let nv = v.norm_squared();
    let rhs = (nv - xv.norm_squared()) + (nv - yv.norm_squared()) + (&xv - &yv).norm_squared();
    Ok((lhs - rhs).abs())
}
