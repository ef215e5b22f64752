//! Seeded property suites with a residual table per check.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::antilinear::{map_from_quadratic, quadratic_from_map, takagi, AntilinearSymmetricMap};
use crate::combinatorics::basis_len;
use crate::detsqrt::{det_sqrt, det_sqrt_along_segment, det_sqrt_by_continuation, GvMatrix};
use crate::error::{Error, Result};
use crate::gaussian::{gaussian_series, norm_sq_closed, pair_closed, GaussianSeed};
use crate::pairing::{
    abel_pairing, divergence_demo, graded_unitary_apply, hoelder_norm, hoelder_pairing_check,
    number_op_pow, pair_swap, pairing_1, pairing_t, sequence_elements, sequence_noninvariance_demo,
    symmetric_power, HoelderExponent, RegularizationConfig, Verdict,
};
use crate::sampling;
use crate::symmetric_algebra::{
    antidual_product, coproduct_oracle, embed_product, enumerate_basis, evaluate, inner_product,
    normalization, permanent_inner_oracle, GradedElement, VectorList,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Algebra,
    Gaussian,
    Hoelder,
    Invariance,
    Counterexamples,
    All,
}

/// One row of the residual table. `max_residual` is the worst observed
/// deviation (for slack checks, the most negative slack negated).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub cases: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub seed: u64,
    pub checks: Vec<Check>,
    pub passed: bool,
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm().max(1.0)
}

struct Table {
    suite: Suite,
    checks: Vec<Check>,
}

impl Table {
    fn new(suite: Suite) -> Self {
        Self {
            suite,
            checks: Vec::new(),
        }
    }

    fn residuals(&mut self, name: &str, tolerance: f64, residuals: impl IntoIterator<Item = f64>) {
        let mut cases = 0;
        let mut worst = 0.0f64;
        for r in residuals {
            cases += 1;
            // NaN counts as a failure and is reported as the largest float
            worst = if r.is_nan() { f64::MAX } else { worst.max(r.min(f64::MAX)) };
        }
        self.checks.push(Check {
            suite: self.suite,
            name: name.into(),
            cases,
            max_residual: worst,
            tolerance,
            passed: cases > 0 && worst <= tolerance,
        });
    }

    fn flags(&mut self, name: &str, flags: impl IntoIterator<Item = bool>) {
        self.residuals(name, 0.0, flags.into_iter().map(|ok| if ok { 0.0 } else { 1.0 }));
    }
}

pub fn run_suite(suite: Suite, seed: u64) -> Result<SuiteReport> {
    let suites: &[Suite] = match suite {
        Suite::All => &[
            Suite::Algebra,
            Suite::Gaussian,
            Suite::Hoelder,
            Suite::Invariance,
            Suite::Counterexamples,
        ],
        _ => std::slice::from_ref(&suite),
    };
    let mut checks = Vec::new();
    for &s in suites {
        let mut rng = sampling::rng(seed);
        let mut table = Table::new(s);
        match s {
            Suite::Algebra => algebra(&mut table, &mut rng)?,
            Suite::Gaussian => gaussian(&mut table, &mut rng)?,
            Suite::Hoelder => hoelder(&mut table, &mut rng)?,
            Suite::Invariance => invariance(&mut table, &mut rng)?,
            Suite::Counterexamples => counterexamples(&mut table)?,
            Suite::All => unreachable!("expanded above"),
        }
        checks.extend(table.checks);
    }
    let passed = checks.iter().all(|c| c.passed);
    Ok(SuiteReport {
        suite,
        seed,
        checks,
        passed,
    })
}

fn algebra(table: &mut Table, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut perm = Vec::new();
    for _ in 0..500 {
        let m = rng.random_range(1..=3);
        let d = rng.random_range(0..=5);
        let xs = VectorList::new(m, (0..d).map(|_| sampling::vector(rng, m)).collect())?;
        let ys = VectorList::new(m, (0..d).map(|_| sampling::vector(rng, m)).collect())?;
        let coords = inner_product(&embed_product(&xs), &embed_product(&ys))?;
        perm.push(rel(coords, permanent_inner_oracle(&xs, &ys)?));
    }
    table.residuals("permanent_vs_coordinate_inner_product", 1e-10, perm);

    let mut coproduct = Vec::new();
    for _ in 0..100 {
        let m = rng.random_range(1..=3);
        let (dp, dq) = (rng.random_range(0..=3), rng.random_range(0..=3));
        let phi = sampling::polynomial(rng, m, dp);
        let psi = sampling::polynomial(rng, m, dq);
        let product = antidual_product(&phi, &psi, 6)?;
        let mut worst = 0.0f64;
        for n in 0..=product.max_degree() {
            for f in enumerate_basis(m, n) {
                // [ΦΨ](u^F) = Σ w_B Φ(u^B) Ψ(u^{F-B}) on monomials u^F = sqrt(F!) v^F
                let mut acc = Complex64::new(0.0, 0.0);
                for (b, rest, w) in coproduct_oracle(&f)? {
                    acc += phi.coordinate(&b) * normalization(&b)? * psi.coordinate(&rest)
                        * normalization(&rest)?
                        * w as f64;
                }
                let expected = acc / normalization(&f)?;
                worst = worst.max(rel(product.coordinate(&f), expected));
            }
        }
        coproduct.push(worst);
    }
    table.residuals("coproduct_evaluation_identity", 1e-10, coproduct);

    let cfg = RegularizationConfig::default();
    let mut evaluation = Vec::new();
    for _ in 0..200 {
        let m = rng.random_range(1..=3);
        let deg = rng.random_range(0..=4);
        let phi = sampling::polynomial(rng, m, deg);
        let extra = rng.random_range(0..=3);
        let psi = sampling::graded(rng, m, deg + extra, 0.8);
        let report = pairing_1(&phi, &psi, &cfg)?;
        evaluation.push(match report.value {
            Some(v) => rel(v, evaluate(&psi, &phi)?),
            None => f64::INFINITY,
        });
    }
    table.residuals("polynomial_pairing_equals_evaluation", 1e-12, evaluation);

    let mut tak = Vec::new();
    let mut quad = Vec::new();
    for _ in 0..1000 {
        let m = rng.random_range(1..=6);
        let map = AntilinearSymmetricMap::new(sampling::symmetric_matrix(rng, m))?;
        let f = takagi(&map);
        let unitarity = (f.unitary.adjoint() * &f.unitary - DMatrix::<Complex64>::identity(m, m))
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        let recon = (f.reconstruct() - map.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        tak.push(recon.max(unitarity));
        let back = map_from_quadratic(&quadratic_from_map(&map));
        quad.push((back.matrix() - map.matrix()).iter().map(|z| z.norm()).fold(0.0, f64::max));
    }
    table.residuals("takagi_reconstruction", 1e-10, tak);
    table.residuals("quadratic_map_round_trip", 1e-14, quad);

    let mut square = Vec::new();
    let mut continuity = Vec::new();
    for _ in 0..200 {
        let m = rng.random_range(1..=6);
        let t = sampling::gv_member(rng, m);
        let g = GvMatrix::new(t.clone())?;
        let root = det_sqrt(&g);
        let det = t.clone().lu().determinant();
        square.push((root * root - det).norm() / det.norm());
        let along = det_sqrt_along_segment(&g, 256);
        let tracked = det_sqrt_by_continuation(&t, 256)?;
        continuity.push(
            along
                .iter()
                .zip(&tracked)
                .map(|(a, b)| (a - b).norm() / b.norm())
                .fold(0.0, f64::max),
        );
    }
    table.residuals("det_sqrt_square_identity", 1e-10, square);
    table.residuals("det_sqrt_segment_continuity", 1e-8, continuity);
    Ok(())
}

fn gaussian(table: &mut Table, rng: &mut ChaCha8Rng) -> Result<()> {
    let mut norms = Vec::new();
    for _ in 0..50 {
        let m = rng.random_range(1..=3);
        let norm = rng.random_range(0.0..=0.8);
        let seed = GaussianSeed::new(sampling::map_with_norm(rng, m, norm));
        let series = gaussian_series(&seed, 120)?;
        let s = inner_product(&series, &series)?.re;
        let closed = norm_sq_closed(&seed)?;
        norms.push((s - closed).abs() / closed);
    }
    table.residuals("norm_series_vs_closed_form", 1e-8, norms);

    let cfg = RegularizationConfig::default();
    let t = 0.9;
    let mut scaled = Vec::new();
    for _ in 0..50 {
        let m = rng.random_range(1..=3);
        let x = GaussianSeed::new(sampling::closed_domain_map(rng, m));
        let y = GaussianSeed::new(sampling::closed_domain_map(rng, m));
        let report = pairing_t(&gaussian_series(&x, 120)?, &gaussian_series(&y, 120)?, t, &cfg)?;
        // degree-2d terms carry t^{4d}: the closed form at t² matches
        let closed = pair_closed(&x, &y, t * t)?;
        scaled.push(report.value.map_or(f64::INFINITY, |v| rel(v, closed)));
    }
    table.residuals("scaled_pairing_vs_closed_form_at_t_squared", 1e-8, scaled);

    let mut hermitian = Vec::new();
    let mut cauchy_riemann = Vec::new();
    for _ in 0..50 {
        let m = rng.random_range(1..=3);
        let (nx, ny) = (rng.random_range(0.0..0.9), rng.random_range(0.0..0.9));
        let xm = sampling::map_with_norm(rng, m, nx);
        let ym = sampling::map_with_norm(rng, m, ny);
        let t = rng.random_range(0.1..1.0);
        let (x, y) = (GaussianSeed::new(xm.clone()), GaussianSeed::new(ym.clone()));
        hermitian.push(rel(pair_closed(&x, &y, t)?, pair_closed(&y, &x, t)?.conj()));

        let (i, j) = (rng.random_range(0..m), rng.random_range(0..m));
        let h = 1e-6;
        let perturb = |a: &AntilinearSymmetricMap, dz: Complex64| -> Result<GaussianSeed> {
            let mut mat = a.matrix().clone();
            mat[(i, j)] += dz;
            if i != j {
                mat[(j, i)] += dz;
            }
            Ok(GaussianSeed::new(AntilinearSymmetricMap::new(mat)?))
        };
        let diff = |dz: Complex64, in_y: bool| -> Result<Complex64> {
            let (plus, minus) = if in_y {
                (pair_closed(&x, &perturb(&ym, dz)?, t)?, pair_closed(&x, &perturb(&ym, -dz)?, t)?)
            } else {
                (pair_closed(&perturb(&xm, dz)?, &y, t)?, pair_closed(&perturb(&xm, -dz)?, &y, t)?)
            };
            Ok((plus - minus) / (2.0 * h))
        };
        let i_unit = Complex64::new(0.0, 1.0);
        let (dy_re, dy_im) = (diff(Complex64::new(h, 0.0), true)?, diff(Complex64::new(0.0, h), true)?);
        let (dx_re, dx_im) = (diff(Complex64::new(h, 0.0), false)?, diff(Complex64::new(0.0, h), false)?);
        // holomorphic in Y: ∂_im = i ∂_re; antiholomorphic in X: ∂_im = -i ∂_re
        let ry = rel(dy_im, i_unit * dy_re);
        let rx = rel(dx_im, -i_unit * dx_re);
        cauchy_riemann.push(ry.max(rx));
    }
    table.residuals("closed_pairing_hermitian_symmetry", 1e-12, hermitian);
    table.residuals("closed_pairing_cauchy_riemann", 1e-5, cauchy_riemann);

    let mut ratios = Vec::new();
    for m in [1usize, 2, 4] {
        for (d, r) in divergence_demo(m)?.into_iter().enumerate() {
            let expected = (d as f64 + m as f64 / 2.0) / (d as f64 + 1.0);
            ratios.push((r - expected).abs() / expected);
        }
    }
    table.residuals("conjugation_divergence_ratios", 1e-9, ratios);
    Ok(())
}

fn hoelder(table: &mut Table, rng: &mut ChaCha8Rng) -> Result<()> {
    use HoelderExponent::{Finite, Infinity};
    for (label, p, q) in [
        ("hoelder_slack_2_2", Finite(2.0), Finite(2.0)),
        ("hoelder_slack_3_3/2", Finite(3.0), Finite(1.5)),
        ("hoelder_slack_1_inf", Finite(1.0), Infinity),
        ("hoelder_slack_inf_1", Infinity, Finite(1.0)),
    ] {
        let mut slack = Vec::new();
        for _ in 0..200 {
            let m = rng.random_range(1..=3);
            let deg = rng.random_range(0..=6);
            let (dp, dq) = (rng.random_range(0.2..1.2), rng.random_range(0.2..1.2));
            let phi = sampling::graded(rng, m, deg, dp);
            let psi = sampling::graded(rng, m, deg, dq);
            slack.push(-hoelder_pairing_check(&phi, &psi, p, q, deg)?);
        }
        table.residuals(label, 1e-12, slack);
    }

    let mut equality = Vec::new();
    let mut monotone = Vec::new();
    let mut fock = Vec::new();
    for _ in 0..200 {
        let m = rng.random_range(1..=3);
        let deg = rng.random_range(0..=6);
        let phi = sampling::graded(rng, m, deg, 0.9);
        let two = Finite(2.0);
        equality.push(hoelder_pairing_check(&phi, &phi, two, two, deg)?.abs());
        let p = Finite(rng.random_range(1.0..5.0));
        let values: Vec<f64> = (0..=deg)
            .map(|k| hoelder_norm(&phi, p, k).map(|h| h.value))
            .collect::<Result<_>>()?;
        monotone.push(values.windows(2).map(|w| (w[0] - w[1]).max(0.0)).fold(0.0, f64::max));
        let poly = phi.with_truncated(false);
        let n2 = hoelder_norm(&poly, two, deg)?.value;
        fock.push((n2 * n2 - inner_product(&poly, &poly)?.re).abs() / (n2 * n2).max(1.0));
    }
    table.residuals("cauchy_schwarz_equality_on_diagonal", 1e-12, equality);
    table.residuals("hoelder_norm_nondecreasing_in_truncation", 0.0, monotone);
    table.residuals("hoelder_2_is_fock_norm", 1e-12, fock);

    let cfg = RegularizationConfig::default();
    let mut number = Vec::new();
    for _ in 0..200 {
        let m = rng.random_range(1..=3);
        let deg = rng.random_range(0..=6);
        let phi = sampling::polynomial(rng, m, deg);
        let psi = sampling::polynomial(rng, m, deg);
        let lhs = pairing_1(&phi, &psi, &cfg)?.value.expect("polynomial pairings are finite");
        for r in [-2.0, -1.0, 0.5, 1.0, 2.0] {
            let rhs = inner_product(&number_op_pow(&phi, -r), &number_op_pow(&psi, r))?;
            number.push(rel(rhs, lhs));
        }
    }
    table.residuals("number_operator_rebalancing", 1e-12, number);
    Ok(())
}

fn random_blocks(rng: &mut ChaCha8Rng, m: usize, top: usize) -> Vec<DMatrix<Complex64>> {
    (0..=top).map(|d| sampling::unitary(rng, basis_len(m, d))).collect()
}

fn invariance(table: &mut Table, rng: &mut ChaCha8Rng) -> Result<()> {
    let cfg = RegularizationConfig::default();
    let mut graded = Vec::new();
    for _ in 0..200 {
        let m = rng.random_range(1..=2);
        let top = 24;
        let phi = sampling::graded(rng, m, top, 0.6);
        let psi = sampling::graded(rng, m, top, 0.6);
        let blocks = random_blocks(rng, m, top);
        let t = rng.random_range(0.05..0.99);
        let before = pairing_t(&phi, &psi, t, &cfg)?;
        let after = pairing_t(
            &graded_unitary_apply(&blocks, &phi)?,
            &graded_unitary_apply(&blocks, &psi)?,
            t,
            &cfg,
        )?;
        graded.push(match (before.value, after.value) {
            (Some(a), Some(b)) if before.verdict == after.verdict => rel(b, a),
            _ => f64::INFINITY,
        });
    }
    table.residuals("graded_unitary_invariance_per_t", 1e-12, graded);

    let mut lifted = Vec::new();
    for _ in 0..50 {
        let m = rng.random_range(1..=3);
        let deg = rng.random_range(0..=4);
        let w = sampling::unitary(rng, m);
        let blocks: Vec<_> = (0..=deg).map(|d| symmetric_power(&w, d)).collect::<Result<_>>()?;
        let phi = sampling::polynomial(rng, m, deg);
        let psi = sampling::polynomial(rng, m, deg);
        let before = pairing_1(&phi, &psi, &cfg)?.value.expect("finite");
        let after = pairing_1(&graded_unitary_apply(&blocks, &phi)?, &graded_unitary_apply(&blocks, &psi)?, &cfg)?
            .value
            .expect("finite");
        lifted.push(rel(after, before));
    }
    table.residuals("functorial_lift_preserves_pairing", 1e-12, lifted);

    let mut symmetry = Vec::new();
    let mut sesqui = Vec::new();
    for _ in 0..200 {
        let m = rng.random_range(1..=2);
        let (phi, phi2, psi) = (
            sampling::graded(rng, m, 30, 0.5),
            sampling::graded(rng, m, 30, 0.5),
            sampling::graded(rng, m, 30, 0.5),
        );
        let t = rng.random_range(0.1..0.99);
        let value = |a: &GradedElement, b: &GradedElement| -> Result<Complex64> {
            pairing_t(a, b, t, &cfg)?
                .value
                .ok_or_else(|| Error::InvalidInput("random pairing failed to converge".into()))
        };
        symmetry.push(rel(value(&phi, &psi)?, value(&psi, &phi)?.conj()));
        let (a, b) = (sampling::complex(rng), sampling::complex(rng));
        let combo = phi.scale(a).add(&phi2.scale(b))?;
        let left = value(&combo, &psi)?;
        let expected = a.conj() * value(&phi, &psi)? + b.conj() * value(&phi2, &psi)?;
        let right = value(&psi, &combo)?;
        let expected_right = a * value(&psi, &phi)? + b * value(&psi, &phi2)?;
        sesqui.push(rel(left, expected).max(rel(right, expected_right)));
    }
    table.residuals("scaled_pairing_conjugate_symmetry", 1e-12, symmetry);
    table.residuals("scaled_pairing_sesquilinearity", 1e-12, sesqui);

    let mut consistency = Vec::new();
    let mut skipped = 0usize;
    while consistency.len() < 200 {
        let m = rng.random_range(1..=2);
        let decay = rng.random_range(0.3..0.75);
        let phi = sampling::graded(rng, m, 40, decay);
        let psi = sampling::graded(rng, m, 40, decay);
        let series = pairing_1(&phi, &psi, &cfg)?;
        let Some(s) = series.value else {
            skipped += 1;
            if skipped > 2000 {
                return Err(Error::InvalidInput("too few convergent random pairs".into()));
            }
            continue;
        };
        let abel = abel_pairing(&phi, &psi, &cfg)?;
        consistency.push(abel.value.map_or(f64::INFINITY, |a| (a - s).norm() / s.norm().max(1.0)));
    }
    table.residuals("abel_agrees_with_convergent_series", 10.0 * cfg.tolerance, consistency);

    // Pringsheim: for self-pairings with nonnegative terms, series and Abel
    // convergence go together
    let mut pringsheim = Vec::new();
    for k in 0..40 {
        let m = 1 + k % 2;
        let horizon = cfg.max_degree;
        let phi = if k % 4 < 2 {
            // the default grid certifies the limit when the regularized values
            // stay analytic well beyond t = 1
            let decay = rng.random_range(0.3..0.6);
            sampling::graded(rng, m, horizon.min(60), decay)
        } else {
            // ‖Φ_d‖ = 1 for every d: terms stay at 1
            let components = (0..=horizon.min(if m == 1 { 200 } else { 120 }))
                .map(|d| {
                    let n = basis_len(m, d);
                    vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n]
                })
                .collect();
            GradedElement::from_components(m, components, true)?
        };
        let series = pairing_1(&phi, &phi, &cfg)?;
        let abel = abel_pairing(&phi, &phi, &cfg)?;
        pringsheim.push(series.converged == abel.converged);
    }
    table.flags("pringsheim_self_pairing", pringsheim);
    Ok(())
}

fn counterexamples(table: &mut Table) -> Result<()> {
    let cfg = RegularizationConfig::default();
    let demo = sequence_noninvariance_demo(&cfg)?;
    let half = Complex64::new(0.5, 0.0);
    table.residuals(
        "sequence_abel_values_half_and_three_halves",
        1e-6,
        [
            demo.plain.value.map_or(f64::INFINITY, |v| (v - half).norm()),
            demo.swapped.value.map_or(f64::INFINITY, |v| (v - 3.0 * half).norm()),
        ],
    );
    let (lambda, mu) = sequence_elements(cfg.max_degree);
    let (ul, um) = (pair_swap(&lambda)?, pair_swap(&mu)?);
    let at_half = |a: &GradedElement, b: &GradedElement, target: f64| -> Result<f64> {
        Ok(pairing_t(a, b, 0.5, &cfg)?
            .value
            .map_or(f64::INFINITY, |v| (v - Complex64::new(target, 0.0)).norm()))
    };
    table.residuals(
        "sequence_values_at_t_half",
        1e-12,
        [at_half(&lambda, &mu, 0.8)?, at_half(&ul, &um, 1.2)?],
    );
    let (_, even) = sequence_elements(cfg.max_degree - cfg.max_degree % 2);
    table.flags("pair_swap_is_an_involution", [pair_swap(&pair_swap(&even)?)? == even]);

    let mut abel = Vec::new();
    let mut verdicts = Vec::new();
    let mut closed = Vec::new();
    for m in [2usize, 3] {
        let sigma = AntilinearSymmetricMap::conjugation(m);
        let x = GaussianSeed::new(sigma.clone());
        let y = GaussianSeed::new(sigma.scaled(Complex64::new(-1.0, 0.0)));
        let (gx, gy) = (gaussian_series(&x, cfg.max_degree)?, gaussian_series(&y, cfg.max_degree)?);
        let target = Complex64::new(2f64.powf(-(m as f64) / 2.0), 0.0);
        verdicts.push(pairing_1(&gx, &gy, &cfg)?.verdict == Verdict::Divergent);
        abel.push(abel_pairing(&gx, &gy, &cfg)?.value.map_or(f64::INFINITY, |v| (v - target).norm()));
        closed.push((pair_closed(&x, &y, 1.0)? - target).norm());
    }
    table.flags("conjugation_pair_series_diverges", verdicts);
    table.residuals("conjugation_pair_abel_value", 1e-4, abel);
    table.residuals("conjugation_pair_closed_form", 1e-15, closed);

    let one = |a: f64| GaussianSeed::new(AntilinearSymmetricMap::new(DMatrix::from_element(1, 1, Complex64::new(a, 0.0))).expect("1x1 is symmetric"));
    let r = pairing_1(&gaussian_series(&one(1.0), cfg.max_degree)?, &gaussian_series(&one(-1.0), cfg.max_degree)?, &cfg)?;
    table.residuals(
        "one_dimensional_boundary_series",
        1e-6,
        [r.value.map_or(f64::INFINITY, |v| (v - Complex64::new(0.5f64.sqrt(), 0.0)).norm())],
    );

    let sigma = GaussianSeed::new(AntilinearSymmetricMap::conjugation(2));
    let g = gaussian_series(&sigma, cfg.max_degree)?;
    table.flags(
        "conjugation_gaussian_has_no_norm",
        [
            matches!(norm_sq_closed(&sigma), Err(Error::DomainViolation(_))),
            pairing_1(&g, &g, &cfg)?.verdict == Verdict::Divergent,
        ],
    );
    Ok(())
}
