//! Convergence classification of degreewise term sequences, and Wynn's
//! epsilon algorithm.

use num_complex::Complex64;

use super::{Acceleration, Verdict};

/// Number of trailing nonzero terms inspected by the ratio test.
pub const RATIO_WINDOW: usize = 10;
/// Consecutive non-vanishing terms required for a divergence verdict.
pub const DIVERGENCE_RUN: usize = 20;
/// Degree beyond which the divergence run must lie.
pub const DIVERGENCE_ONSET: usize = 50;
/// Most partial sums handed to the epsilon algorithm.
pub const WYNN_MAX_SUMS: usize = 80;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// How a term sequence is to be read.
#[derive(Clone, Copy, Debug)]
pub enum Mode<'a> {
    /// `Σ a_d` as it stands.
    Plain,
    /// `Σ a_d t^{2d}` with the unweighted `a_d` supplied for growth estimates.
    Regularized { raw: &'a [Complex64] },
}

#[derive(Clone, Debug, PartialEq)]
pub struct SeriesSummary {
    pub value: Option<Complex64>,
    pub verdict: Verdict,
    pub truncation_degree: usize,
    pub tail_estimate: f64,
    pub note: String,
}

/// Classifies `Σ_{d ≤ horizon} terms[d]`.
///
/// `exact` means every term beyond the slice is known to vanish. Tolerances
/// are relative to `max(1, |partial sum|)`.
pub fn classify(
    terms: &[Complex64],
    exact: bool,
    tol: f64,
    acceleration: Acceleration,
    mode: Mode<'_>,
) -> SeriesSummary {
    let horizon = terms.len().saturating_sub(1);
    let partial: Complex64 = terms.iter().sum();
    if exact {
        return SeriesSummary {
            value: Some(partial),
            verdict: Verdict::Converged,
            truncation_degree: horizon,
            tail_estimate: 0.0,
            note: "finite series".into(),
        };
    }
    let nonzero: Vec<(usize, Complex64)> = terms
        .iter()
        .copied()
        .enumerate()
        .filter(|(_, a)| *a != ZERO)
        .collect();
    let last_mag = nonzero.last().map_or(0.0, |(_, a)| a.norm());
    let undecided = |note: &str| SeriesSummary {
        value: None,
        verdict: Verdict::Undecided,
        truncation_degree: horizon,
        tail_estimate: last_mag,
        note: note.into(),
    };
    if nonzero.len() < RATIO_WINDOW {
        return undecided("too few nonzero terms to judge convergence");
    }
    let scaled_tol = tol * partial.norm().max(1.0);

    if let Some(tail) = geometric_tail(&nonzero, scaled_tol) {
        return SeriesSummary {
            value: Some(partial),
            verdict: Verdict::Converged,
            truncation_degree: horizon,
            tail_estimate: tail,
            note: "geometric tail bound".into(),
        };
    }

    let accelerate = |note: &str| -> Option<SeriesSummary> {
        if acceleration != Acceleration::EpsilonAlgorithm {
            return None;
        }
        let sums = partial_sums(&nonzero);
        let (estimate, residual) = wynn_epsilon(&sums)?;
        Some(if residual <= tol * estimate.norm().max(1.0) {
            SeriesSummary {
                value: Some(estimate),
                verdict: Verdict::Converged,
                truncation_degree: horizon,
                tail_estimate: residual,
                note: format!("{note}; epsilon algorithm"),
            }
        } else {
            SeriesSummary {
                value: None,
                verdict: Verdict::Undecided,
                truncation_degree: horizon,
                tail_estimate: residual,
                note: format!("{note}; epsilon algorithm did not settle (residual {residual:e})"),
            }
        })
    };

    match mode {
        Mode::Plain => {
            if terms_do_not_vanish(&nonzero, scaled_tol) {
                return divergent(horizon, last_mag, "terms do not tend to zero");
            }
            if divergent_p_series(&nonzero) {
                return divergent(horizon, last_mag, "positive terms decay no faster than 1/d");
            }
            if dirichlet_like(&nonzero) {
                if let Some(summary) = accelerate("oscillating terms of decreasing size") {
                    return summary;
                }
            }
            undecided("no convergence test applies")
        }
        Mode::Regularized { raw } => {
            let raw_nonzero: Vec<(usize, Complex64)> = raw
                .iter()
                .copied()
                .enumerate()
                .take(terms.len())
                .filter(|(_, a)| *a != ZERO)
                .collect();
            if polynomially_bounded(&raw_nonzero) {
                if let Some(summary) = accelerate("polynomially bounded terms under t-weights") {
                    return summary;
                }
            }
            if terms_do_not_vanish(&nonzero, scaled_tol) {
                return divergent(horizon, last_mag, "weighted terms do not tend to zero");
            }
            undecided("no convergence test applies")
        }
    }
}

fn divergent(horizon: usize, last_mag: f64, note: &str) -> SeriesSummary {
    SeriesSummary {
        value: None,
        verdict: Verdict::Divergent,
        truncation_degree: horizon,
        tail_estimate: last_mag,
        note: note.into(),
    }
}

fn partial_sums(nonzero: &[(usize, Complex64)]) -> Vec<Complex64> {
    nonzero
        .iter()
        .scan(ZERO, |acc, (_, a)| {
            *acc += a;
            Some(*acc)
        })
        .collect()
}

/// Ratio test over the trailing nonzero terms. `ρ` is the per-term decay rate
/// between the maxima of the last two blocks of [`RATIO_WINDOW`] terms (or the
/// largest consecutive ratio when only one block exists). With `ρ < 1` and
/// every term of the last block at most `tol·(1 - ρ)`, the tail is bounded by
/// `M·ρ/(1 - ρ)` for `M` the last block maximum.
fn geometric_tail(nonzero: &[(usize, Complex64)], tol: f64) -> Option<f64> {
    let n = nonzero.len();
    let block_max = |b: &[(usize, Complex64)]| b.iter().map(|(_, a)| a.norm()).fold(0.0f64, f64::max);
    let window = &nonzero[n - RATIO_WINDOW..];
    let last = block_max(window);
    let rho = if n >= 2 * RATIO_WINDOW {
        let previous = block_max(&nonzero[n - 2 * RATIO_WINDOW..n - RATIO_WINDOW]);
        (last / previous).powf(1.0 / RATIO_WINDOW as f64)
    } else {
        window
            .windows(2)
            .map(|w| w[1].1.norm() / w[0].1.norm())
            .fold(0.0f64, f64::max)
    };
    (rho < 1.0 && last <= tol * (1.0 - rho)).then(|| last * rho / (1.0 - rho))
}

/// `DIVERGENCE_RUN` trailing nonzero terms beyond degree `DIVERGENCE_ONSET`,
/// each at least `tol` in size and none smaller than its predecessor.
fn terms_do_not_vanish(nonzero: &[(usize, Complex64)], tol: f64) -> bool {
    if nonzero.len() < DIVERGENCE_RUN {
        return false;
    }
    let run = &nonzero[nonzero.len() - DIVERGENCE_RUN..];
    run[0].0 > DIVERGENCE_ONSET
        && run.iter().all(|(_, b)| b.norm() >= tol)
        && run
            .windows(2)
            .all(|w| w[1].1.norm() >= w[0].1.norm() * (1.0 - 1e-9))
}

fn log_log_slope(a: (usize, Complex64), b: (usize, Complex64)) -> f64 {
    (b.1.norm() / a.1.norm()).ln() / (b.0 as f64 / a.0 as f64).ln()
}

/// Upper half of the nonzero terms split at its quarter points.
fn quarter_points(nonzero: &[(usize, Complex64)]) -> Option<[(usize, Complex64); 3]> {
    let n = nonzero.len();
    let (a, b, c) = (n / 2, (3 * n) / 4, n - 1);
    (n >= 8 && nonzero[a].0 > 0 && a < b && b < c).then(|| [nonzero[a], nonzero[b], nonzero[c]])
}

/// Same-phase terms whose size follows a fixed power `d^s` with `s ≥ -0.95`.
fn divergent_p_series(nonzero: &[(usize, Complex64)]) -> bool {
    let Some([a, b, c]) = quarter_points(nonzero) else {
        return false;
    };
    let upper = &nonzero[nonzero.len() / 2..];
    let same_phase = upper
        .windows(2)
        .all(|w| (w[1].1 / w[0].1).arg().abs() < 1e-6);
    let (early, late) = (log_log_slope(a, b), log_log_slope(b, c));
    same_phase && (early - late).abs() <= 0.02 && late >= -0.95
}

/// Decreasing sizes with a constant, nontrivial phase step: the shape for
/// which partial sums oscillate about the limit.
fn dirichlet_like(nonzero: &[(usize, Complex64)]) -> bool {
    let upper = &nonzero[nonzero.len() / 2..];
    if upper.len() < 3 {
        return false;
    }
    let decreasing = upper
        .windows(2)
        .all(|w| w[1].1.norm() <= w[0].1.norm() * (1.0 + 1e-12));
    let decay = upper[upper.len() - 1].1.norm() / upper[0].1.norm();
    let step = |w: &[(usize, Complex64)]| {
        let r = w[1].1 / w[0].1;
        r / r.norm()
    };
    let first = step(&upper[..2]);
    let constant_phase = upper.windows(2).all(|w| (step(w) - first).norm() <= 1e-6);
    decreasing && decay <= 0.95 && constant_phase && (first - 1.0).norm() >= 1e-3
}

/// Raw term sizes grow no faster than a power of the degree, judged by the
/// log-log slope not steepening across the upper half of the sequence.
fn polynomially_bounded(nonzero: &[(usize, Complex64)]) -> bool {
    let Some([a, b, c]) = quarter_points(nonzero) else {
        return false;
    };
    let (early, late) = (log_log_slope(a, b), log_log_slope(b, c));
    late <= early + 0.5 || late <= 0.0
}

/// Wynn's epsilon algorithm on a sequence of partial sums (at most the last
/// [`WYNN_MAX_SUMS`]).
///
/// The accelerants are the final entries of the even columns. Returns the
/// accelerant that differs least from its predecessor (the final entry of the
/// previous even column, the plain last sum for column 2), with that
/// difference as residual.
pub fn wynn_epsilon(sums: &[Complex64]) -> Option<(Complex64, f64)> {
    let sums = &sums[sums.len().saturating_sub(WYNN_MAX_SUMS)..];
    if sums.len() < 3 {
        return None;
    }
    // None stands for an infinite entry
    let mut prev: Vec<Option<Complex64>> = vec![Some(ZERO); sums.len() + 1];
    let mut cur: Vec<Option<Complex64>> = sums.iter().copied().map(Some).collect();
    let mut accelerants: Vec<Option<Complex64>> = Vec::new();
    let mut column = 0usize;
    while !cur.is_empty() {
        if column.is_multiple_of(2) {
            accelerants.push(*cur.last().expect("column is nonempty"));
        }
        let next: Vec<Option<Complex64>> = (0..cur.len().saturating_sub(1))
            .map(|n| {
                let inverse = match (cur[n], cur[n + 1]) {
                    (Some(a), Some(b)) if b == a => None,
                    (Some(a), Some(b)) => Some(Complex64::new(1.0, 0.0) / (b - a)),
                    _ => Some(ZERO),
                };
                match (prev[n + 1], inverse) {
                    (Some(p), Some(i)) => Some(p + i),
                    _ => None,
                }
            })
            .collect();
        prev = cur;
        cur = next;
        column += 1;
    }
    accelerants
        .windows(2)
        .filter_map(|w| match (w[0], w[1]) {
            (Some(a), Some(b)) if b.re.is_finite() && b.im.is_finite() => Some((b, (b - a).norm())),
            _ => None,
        })
        .filter(|(_, r)| r.is_finite())
        .min_by(|x, y| x.1.total_cmp(&y.1))
}
