//! Monte-Carlo and per-instance checks of the sketching identities and
//! bounds. Each check returns a [`CheckResult`]; [`validate_suite`] runs
//! them all.

use std::fmt;

use crate::approx::{self, Algorithm, Approximation, RankKApprox};
use crate::kernels::{hermitian_eig, pinv_apply, svd, thin_qr, Field, Matrix, Scalar};
use crate::params::{f_factor, frobenius_error_bound};
use crate::randgen::{gaussian_matrix, srft_corange, srft_matrix, RngStream};
use crate::sketch::{ExtendedSketchState, SketchParams, SketchState};
use crate::zoo::{generate, psd_part, tail_energy, tail_energy_sq, MatrixKind, MatrixSpec};
use crate::{Complex64, Result};

type C = Complex64;

/// Outcome of one check. `value` and `limit` carry the measured
/// statistic and the threshold it was held to.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub value: f64,
    pub limit: f64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: impl Into<String>, passed: bool, value: f64, limit: f64, detail: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            passed,
            value,
            limit,
            detail: detail.into(),
        }
    }

    fn failed(name: impl Into<String>, err: &crate::Error) -> Self {
        CheckResult::new(name, false, f64::NAN, f64::NAN, format!("error: {err}"))
    }

    fn below(name: impl Into<String>, value: f64, limit: f64, detail: impl Into<String>) -> Self {
        CheckResult::new(name, value <= limit, value, limit, detail)
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {}: value={:.4e} limit={:.4e} {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            self.limit,
            self.detail
        )
    }
}

#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub checks: Vec<CheckResult>,
}

impl ValidationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        let failed = self.failures().count();
        write!(f, "{} checks, {} failed", self.checks.len(), failed)
    }
}

fn wrap(name: &str, r: Result<CheckResult>) -> CheckResult {
    r.unwrap_or_else(|e| CheckResult::failed(name, &e))
}

fn rel_dist<T: Scalar>(x: &Matrix<T>, y: &Matrix<T>) -> f64 {
    x.distance(y) / y.frobenius_norm().max(f64::MIN_POSITIVE)
}

fn gauss<T: Scalar>(stream: &mut RngStream, m: usize, n: usize) -> Matrix<T> {
    gaussian_matrix(stream, m, n)
}

fn sketch_with<T: Scalar>(a: &Matrix<T>, k: usize, l: usize, stream: &mut RngStream) -> Result<SketchState<T>> {
    SketchState::init(a, SketchParams::new(k, l), stream)
}

fn pinv_mean_generic<T: Scalar>(s: usize, t: usize, draws: usize, seed: u64) -> Result<f64> {
    let mut stream = RngStream::new(seed, 101);
    let mut total = 0.0;
    for _ in 0..draws {
        let g: Matrix<T> = gauss(&mut stream, t, s);
        total += svd(&g)?.sigma.iter().map(|x| 1.0 / (x * x)).sum::<f64>();
    }
    Ok(total / draws as f64)
}

/// Monte-Carlo mean of `‖G†‖²_F` for a `t × s` standard normal `G`.
pub fn gaussian_pinv_mean(field: Field, s: usize, t: usize, draws: usize, seed: u64) -> Result<f64> {
    match field {
        Field::Real => pinv_mean_generic::<f64>(s, t, draws, seed),
        Field::Complex => pinv_mean_generic::<C>(s, t, draws, seed),
    }
}

/// `E‖G†‖²_F = f(s, t)/β` within 5%.
pub fn gaussian_pinv_law(field: Field, s: usize, t: usize, draws: usize, seed: u64) -> CheckResult {
    let name = format!("gaussian pinv law ({}, s={s}, t={t})", field.tag());
    wrap(&name, (|| {
        let target = f_factor(s, t, field)? / field.beta();
        let mean = gaussian_pinv_mean(field, s, t, draws, seed)?;
        let dev = (mean - target).abs() / target;
        Ok(CheckResult::below(&name, dev, 0.05, format!("mean={mean:.5} target={target:.5} draws={draws}")))
    })())
}

fn product_law_generic<T: Scalar>(draws: usize, seed: u64) -> Result<(f64, f64)> {
    let mut stream = RngStream::new(seed, 102);
    let b: Matrix<T> = gauss(&mut stream, 3, 5);
    let c: Matrix<T> = gauss(&mut stream, 4, 6);
    let mut total = 0.0;
    for _ in 0..draws {
        let g: Matrix<T> = gauss(&mut stream, 5, 4);
        total += (&(&b * &g) * &c).frobenius_norm_sq();
    }
    let target = T::FIELD.beta() * b.frobenius_norm_sq() * c.frobenius_norm_sq();
    Ok((total / draws as f64, target))
}

/// `E‖BGC‖²_F = β‖B‖²_F‖C‖²_F` within 5% for fixed `B` (3×5), `C` (4×6).
pub fn gaussian_product_law(field: Field, draws: usize, seed: u64) -> CheckResult {
    let name = format!("gaussian product law ({})", field.tag());
    wrap(&name, (|| {
        let (mean, target) = match field {
            Field::Real => product_law_generic::<f64>(draws, seed)?,
            Field::Complex => product_law_generic::<C>(draws, seed)?,
        };
        let dev = (mean - target).abs() / target;
        Ok(CheckResult::below(&name, dev, 0.05, format!("mean={mean:.4} target={target:.4} draws={draws}")))
    })())
}

fn srft_generic<T: Scalar>(n: usize, seed: u64) -> Result<f64> {
    let mut stream = RngStream::new(seed, 103);
    let om: Matrix<T> = srft_matrix(&mut stream, n, n)?;
    let ps: Matrix<T> = srft_corange(&mut stream, n, n)?;
    let e1 = om.adjoint_matmul(&om)?.distance(&Matrix::identity(n));
    let e2 = ps.matmul_adjoint(&ps)?.distance(&Matrix::identity(n));
    Ok(e1.max(e2))
}

/// Full-size SRFTs are unitary.
pub fn srft_unitarity(field: Field, n: usize, seed: u64) -> CheckResult {
    let name = format!("srft unitary at k = n ({}, n={n})", field.tag());
    wrap(&name, (|| {
        let e = match field {
            Field::Real => srft_generic::<f64>(n, seed)?,
            Field::Complex => srft_generic::<C>(n, seed)?,
        };
        Ok(CheckResult::below(&name, e, 1e-12, "‖Ω*Ω - I‖_F"))
    })())
}

/// Per-instance worst relative gap in
/// `‖A - QX‖² = ‖A - QQ*A‖² + ‖X - Q*A‖²`.
pub fn pythagorean_identity(instances: usize, seed: u64) -> CheckResult {
    let name = "pythagorean decomposition";
    wrap(name, (|| {
        let mut stream = RngStream::new(seed, 104);
        let mut worst: f64 = 0.0;
        for _ in 0..instances {
            let a: Matrix<C> = gauss(&mut stream, 40, 32);
            let st = sketch_with(&a, 5, 12, &mut stream)?;
            let RankKApprox { q, x } = approx::low_rank(&st)?;
            let qta = q.adjoint_matmul(&a)?;
            let lhs = a.sub(&(&q * &x))?.frobenius_norm_sq();
            let rhs = a.sub(&(&q * &qta))?.frobenius_norm_sq() + x.sub(&qta)?.frobenius_norm_sq();
            worst = worst.max((lhs - rhs).abs() / lhs);
        }
        Ok(CheckResult::below(name, worst, 1e-8, format!("{instances} instances")))
    })())
}

/// `X - Q*A = Ψ₂†Ψ₁(P*A)` with `P` an orthonormal complement of `Q`.
pub fn second_factor_identity(instances: usize, seed: u64) -> CheckResult {
    let name = "second-factor identity";
    wrap(name, (|| {
        let mut stream = RngStream::new(seed, 105);
        let mut worst: f64 = 0.0;
        let (m, n, k, l) = (40, 32, 5, 12);
        for _ in 0..instances {
            let a: Matrix<C> = gauss(&mut stream, m, n);
            let omega: Matrix<C> = gauss(&mut stream, n, k);
            let psi: Matrix<C> = gauss(&mut stream, l, m);
            let st = SketchState::with_test_matrices(&a, omega, psi.clone(), Default::default())?;
            let RankKApprox { q, x } = approx::low_rank(&st)?;
            let extra: Matrix<C> = gauss(&mut stream, m, m - k);
            let full = thin_qr(&q.hcat(&extra)?)?.q;
            let p = full.columns(k, m);
            let psi1 = psi.matmul(&p)?;
            let psi2 = psi.matmul(&q)?;
            let rhs = pinv_apply(&psi2, &psi1.matmul(&p.adjoint_matmul(&a)?)?)?;
            let lhs = x.sub(&q.adjoint_matmul(&a)?)?;
            worst = worst.max(rel_dist(&lhs, &rhs));
        }
        Ok(CheckResult::below(name, worst, 1e-8, format!("{instances} instances")))
    })())
}

/// Algorithms 5, 6 and 7 against dense symmetrization, psd projection
/// and truncation of `QX`.
pub fn dense_oracle_agreement(instances: usize, seed: u64) -> Vec<CheckResult> {
    let names = ["alg5 vs dense symmetrization", "alg6 vs dense psd projection", "alg7 vs dense truncation"];
    let run = || -> Result<[f64; 3]> {
        let mut stream = RngStream::new(seed, 106);
        let mut worst = [0.0f64; 3];
        let (n, k, l, r) = (60, 6, 14, 4);
        for _ in 0..instances {
            let a: Matrix<C> = gauss::<C>(&mut stream, n, n).hermitian_part();
            let st = sketch_with(&a, k, l, &mut stream)?;
            let lr = approx::low_rank(&st)?;
            let qx = lr.to_dense();
            let sym_dense = qx.hermitian_part();
            worst[0] = worst[0].max(rel_dist(&approx::low_rank_sym(&st)?.to_dense(), &sym_dense));

            let e = hermitian_eig(&sym_dense)?;
            let d: Vec<f64> = e.values.iter().map(|v| v.max(0.0)).collect();
            let psd_dense = e.vectors.scale_columns(&d).matmul_adjoint(&e.vectors)?;
            worst[1] = worst[1].max(rel_dist(&approx::low_rank_psd(&st)?.to_dense(), &psd_dense));

            let s = svd(&qx)?;
            if s.sigma[r - 1] - s.sigma[r] > 1e-8 * s.sigma[0] {
                let trunc = s.u.columns(0, r).scale_columns(&s.sigma[..r]).matmul_adjoint(&s.v.columns(0, r))?;
                worst[2] = worst[2].max(rel_dist(&approx::fixed_rank(&st, r)?.to_dense(), &trunc));
            }
        }
        Ok(worst)
    };
    match run() {
        Ok(w) => names
            .iter()
            .zip(w)
            .map(|(n, v)| CheckResult::below(*n, v, 1e-8, format!("{instances} instances")))
            .collect(),
        Err(e) => names.iter().map(|n| CheckResult::failed(*n, &e)).collect(),
    }
}

/// Dense output of `alg` on a simple or three-part sketch of `a`.
pub fn reconstruct_dense<T: Scalar>(
    alg: Algorithm,
    a: &Matrix<T>,
    r: usize,
    k: usize,
    l: usize,
    s: usize,
    stream: &mut RngStream,
) -> Result<Matrix<T>> {
    if alg == Algorithm::Bwz {
        let est = ExtendedSketchState::init(a, r, k, s, stream)?;
        return Ok(approx::bwz_fixed(&est, r)?.to_dense());
    }
    let st = sketch_with(a, k, l, stream)?;
    Ok(match alg {
        Algorithm::Alg3 => approx::simple_low_rank(&st)?.to_dense(),
        Algorithm::Alg4 => approx::low_rank(&st)?.to_dense(),
        Algorithm::Alg5 => approx::low_rank_sym(&st)?.to_dense(),
        Algorithm::Alg6 => approx::low_rank_psd(&st)?.to_dense(),
        Algorithm::Alg7 => approx::fixed_rank(&st, r)?.to_dense(),
        Algorithm::Alg8 => approx::fixed_rank_sym(&st, r)?.to_dense(),
        Algorithm::Alg9 => approx::fixed_rank_psd(&st, r)?.to_dense(),
        Algorithm::Woo => approx::woodruff_fixed(&st, r)?.to_dense(),
        Algorithm::Cemmp => approx::cemmp_fixed(&st, r)?.to_dense(),
        Algorithm::Bwz => unreachable!(),
    })
}

/// Every reconstruction recovers a psd rank-3 60×60 input
/// (`k = 6`, `ℓ = 12`, `s = 12`). Value is the worst relative error;
/// detail counts successful instances.
pub fn exact_recovery(instances: usize, seed: u64) -> Vec<CheckResult> {
    let (n, r, k, l, s) = (60, 3, 6, 12, 12);
    Algorithm::ALL
        .iter()
        .map(|&alg| {
            let name = format!("exact recovery {alg}");
            let run = || -> Result<CheckResult> {
                let mut stream = RngStream::new(seed, 107);
                let mut worst: f64 = 0.0;
                let mut ok = 0;
                for _ in 0..instances {
                    let g: Matrix<C> = gauss(&mut stream, n, r);
                    let a = g.matmul_adjoint(&g)?;
                    let d = reconstruct_dense(alg, &a, r, k, l, s, &mut stream)?;
                    let e = rel_dist(&d, &a);
                    worst = worst.max(e);
                    if e < 1e-8 {
                        ok += 1;
                    }
                }
                Ok(CheckResult::new(&name, ok == instances, worst, 1e-8, format!("{ok}/{instances} recovered")))
            };
            wrap(&name, run())
        })
        .collect()
}

/// Summary of the unbiasedness experiment.
#[derive(Debug, Clone, Copy)]
pub struct UnbiasednessStats {
    pub entries: usize,
    pub within: usize,
    pub worst_z: f64,
}

/// Fixed `A`, `Ω`; the entrywise mean of `X` over `draws` fresh `Ψ` is
/// compared with `Q*A` in units of its standard error.
pub fn unbiasedness_stats(draws: usize, seed: u64) -> Result<UnbiasednessStats> {
    let (m, n, k, l) = (50, 50, 5, 12);
    let mut stream = RngStream::new(seed, 108);
    let a: Matrix<C> = gauss(&mut stream, m, n);
    let omega: Matrix<C> = gauss(&mut stream, n, k);
    let mut samples = Vec::with_capacity(draws);
    let mut target = None;
    for _ in 0..draws {
        let psi: Matrix<C> = gauss(&mut stream, l, m);
        let st = SketchState::with_test_matrices(&a, omega.clone(), psi, Default::default())?;
        let lr = approx::low_rank(&st)?;
        if target.is_none() {
            target = Some(lr.q.adjoint_matmul(&a)?);
        }
        samples.push(lr.x);
    }
    let target = target.expect("draws > 0");
    let nd = draws as f64;
    let mut within = 0;
    let mut worst_z: f64 = 0.0;
    let entries = k * n;
    for j in 0..n {
        for i in 0..k {
            let mean = samples.iter().fold(C::new(0.0, 0.0), |acc, x| acc + x[(i, j)]) / nd;
            let var = samples.iter().map(|x| (x[(i, j)] - mean).norm_sqr()).sum::<f64>() / (nd - 1.0);
            let se = (var / nd).sqrt();
            let z = (mean - target[(i, j)]).norm() / se;
            worst_z = worst_z.max(z);
            if z <= 5.0 {
                within += 1;
            }
        }
    }
    Ok(UnbiasednessStats { entries, within, worst_z })
}

/// At least 99% of entries within 5 standard errors.
pub fn unbiasedness(draws: usize, seed: u64) -> CheckResult {
    let name = "unbiasedness of X";
    wrap(name, (|| {
        let s = unbiasedness_stats(draws, seed)?;
        let frac = s.within as f64 / s.entries as f64;
        Ok(CheckResult::new(
            name,
            frac >= 0.99,
            frac,
            0.99,
            format!("{}/{} entries within 5 SE, max z={:.2}, {draws} draws", s.within, s.entries, s.worst_z),
        ))
    })())
}

/// Symmetric error ≤ unstructured error on the Hermitian medium-noise
/// exemplar, and psd error ≤ symmetric error on its psd part.
pub fn convex_structure(n: usize, trials: usize, seed: u64) -> Vec<CheckResult> {
    let names = ["sym <= low-rank (Hermitian input)", "psd <= sym (psd input)"];
    let run = || -> Result<Vec<CheckResult>> {
        let herm = generate::<C>(&MatrixSpec::new(MatrixKind::LowRankMedNoise, n, 10).with_seed(seed))?.matrix;
        let psd = psd_part(&herm)?.matrix;
        let (k, l) = (10, 20);
        let mut stream = RngStream::new(seed, 109);
        let (mut ok1, mut ok2) = (0, 0);
        let (mut gap1, mut gap2) = (f64::NEG_INFINITY, f64::NEG_INFINITY);
        for _ in 0..trials {
            let st = sketch_with(&herm, k, l, &mut stream)?;
            let e_lr = herm.distance(&approx::low_rank(&st)?.to_dense());
            let e_sym = herm.distance(&approx::low_rank_sym(&st)?.to_dense());
            gap1 = gap1.max(e_sym - e_lr);
            if e_sym <= e_lr + 1e-12 {
                ok1 += 1;
            }
            let st = sketch_with(&psd, k, l, &mut stream)?;
            let e_sym = psd.distance(&approx::low_rank_sym(&st)?.to_dense());
            let e_psd = psd.distance(&approx::low_rank_psd(&st)?.to_dense());
            gap2 = gap2.max(e_psd - e_sym);
            if e_psd <= e_sym + 1e-12 {
                ok2 += 1;
            }
        }
        Ok(vec![
            CheckResult::new(names[0], ok1 == trials, gap1, 1e-12, format!("{ok1}/{trials} trials, n={n}")),
            CheckResult::new(names[1], ok2 == trials, gap2, 1e-12, format!("{ok2}/{trials} trials, n={n}")),
        ])
    };
    run().unwrap_or_else(|e| names.iter().map(|nm| CheckResult::failed(*nm, &e)).collect())
}

fn decaying_input(stream: &mut RngStream, m: usize, n: usize, rate: f64) -> Result<Matrix<C>> {
    let p = m.min(n);
    let u = thin_qr(&gauss::<C>(stream, m, p))?.q;
    let v = thin_qr(&gauss::<C>(stream, n, p))?.q;
    let d: Vec<f64> = (0..p).map(|i| rate.powi(i as i32)).collect();
    u.scale_columns(&d).matmul_adjoint(&v)
}

/// `‖A - [[Â]]_r‖ ≤ τ_{r+1} + 2‖A - Â‖` per trial on random inputs.
pub fn fixed_rank_triangle(trials: usize, seed: u64) -> CheckResult {
    let name = "fixed-rank triangle bound";
    wrap(name, (|| {
        let mut stream = RngStream::new(seed, 110);
        let (m, n, r, k, l) = (60, 50, 5, 8, 17);
        let mut ok = 0;
        let mut slack = f64::INFINITY;
        for t in 0..trials {
            let rate = 0.6 + 0.35 * (t as f64 / trials as f64);
            let a = decaying_input(&mut stream, m, n, rate)?;
            let tau = tail_energy(&svd(&a)?.sigma, r + 1);
            let st = sketch_with(&a, k, l, &mut stream)?;
            let e = a.distance(&approx::low_rank(&st)?.to_dense());
            let ef = a.distance(&approx::fixed_rank(&st, r)?.to_dense());
            let bound = tau + 2.0 * e + 1e-8;
            slack = slack.min(bound - ef);
            if ef <= bound {
                ok += 1;
            }
        }
        Ok(CheckResult::new(name, ok == trials, slack, 0.0, format!("{ok}/{trials} trials; value is the smallest slack")))
    })())
}

/// `Q[[X]]_r = [[QX]]_r` whenever `σ_r(X) > σ_{r+1}(X)`.
pub fn truncation_commutes(instances: usize, seed: u64) -> CheckResult {
    let name = "truncation commutes with Q";
    wrap(name, (|| {
        let mut stream = RngStream::new(seed, 111);
        let (m, n, k, l, r) = (45, 38, 7, 15, 4);
        let mut worst: f64 = 0.0;
        let mut used = 0;
        for _ in 0..instances {
            let a: Matrix<C> = gauss(&mut stream, m, n);
            let st = sketch_with(&a, k, l, &mut stream)?;
            let lr = approx::low_rank(&st)?;
            let s = svd(&lr.x)?;
            if s.sigma[r - 1] - s.sigma[r] <= 1e-8 * s.sigma[0] {
                continue;
            }
            used += 1;
            let d = svd(&lr.to_dense())?;
            let oracle = d.u.columns(0, r).scale_columns(&d.sigma[..r]).matmul_adjoint(&d.v.columns(0, r))?;
            worst = worst.max(rel_dist(&approx::fixed_rank(&st, r)?.to_dense(), &oracle));
        }
        Ok(CheckResult::below(name, worst, 1e-8, format!("{used}/{instances} untied instances")))
    })())
}

fn exp_slow(n: usize) -> Result<(Matrix<C>, Vec<f64>)> {
    let t = generate::<C>(&MatrixSpec::new(MatrixKind::ExpDecaySlow, n, 10))?;
    Ok((t.matrix, t.sigma))
}

/// `E‖A - QQ*A‖² ≤ (1 + f(ρ, k))τ²_{ρ+1}` for every `ρ < k - α`, with
/// 10% slack. Value is the largest ratio of mean to bound.
pub fn range_finder_bound(n: usize, k: usize, trials: usize, seed: u64) -> CheckResult {
    let name = format!("range-finder bound (k={k}, n={n})");
    wrap(&name, (|| {
        let (a, sigma) = exp_slow(n)?;
        let mut stream = RngStream::new(seed, 112);
        let mut total = 0.0;
        for _ in 0..trials {
            let omega: Matrix<C> = gauss(&mut stream, n, k);
            let q = thin_qr(&a.matmul(&omega)?)?.q;
            total += a.sub(&(&q * &q.adjoint_matmul(&a)?))?.frobenius_norm_sq();
        }
        let mean = total / trials as f64;
        let mut worst: f64 = 0.0;
        for rho in 1..k {
            let bound = (1.0 + f_factor(rho, k, Field::Complex)?) * tail_energy_sq(&sigma, rho + 1);
            worst = worst.max(mean / bound);
        }
        Ok(CheckResult::below(&name, worst, 1.10, format!("mean={mean:.4e} over {trials} trials")))
    })())
}

/// Monte-Carlo mean of `‖A - QX‖²_F` on exp_decay_slow.
pub fn mean_low_rank_error_sq(n: usize, k: usize, l: usize, trials: usize, seed: u64) -> Result<f64> {
    let (a, _) = exp_slow(n)?;
    let mut stream = RngStream::new(seed, 113);
    let mut total = 0.0;
    for _ in 0..trials {
        let st = sketch_with(&a, k, l, &mut stream)?;
        total += a.distance(&approx::low_rank(&st)?.to_dense()).powi(2);
    }
    Ok(total / trials as f64)
}

/// Mean squared error within 10% of the a priori bound and, for
/// `k = 2r`, `ℓ = 2k` over ℂ, within 10% of `4τ²_{r+1}`.
pub fn error_bound_check(n: usize, r: usize, trials: usize, seed: u64) -> Vec<CheckResult> {
    let (k, l) = (2 * r, 4 * r);
    let names = [format!("error bound (k={k}, l={l})"), format!("error bound <= 4 tau_{}^2", r + 1)];
    let run = || -> Result<Vec<CheckResult>> {
        let (_, sigma) = exp_slow(n)?;
        let mean = mean_low_rank_error_sq(n, k, l, trials, seed)?;
        let bound = frobenius_error_bound(&sigma, k, l, Field::Complex)?;
        let four = 4.0 * tail_energy_sq(&sigma, r + 1);
        Ok(vec![
            CheckResult::below(&names[0], mean, 1.10 * bound, format!("bound={bound:.4e}, {trials} trials")),
            CheckResult::below(&names[1], mean, 1.10 * four, format!("4 tau^2={four:.4e}, {trials} trials")),
        ])
    };
    run().unwrap_or_else(|e| names.iter().map(|nm| CheckResult::failed(nm.clone(), &e)).collect())
}

/// Largest relative change of the three-part reconstruction when `Φ`
/// and `Ξ` are scaled by `c`.
pub fn bwz_scale_change(instances: usize, c: f64, seed: u64) -> Result<f64> {
    let mut stream = RngStream::new(seed, 114);
    let (m, n, r, k, s) = (40, 35, 3, 5, 12);
    let mut worst: f64 = 0.0;
    for _ in 0..instances {
        let a = decaying_input(&mut stream, m, n, 0.8)?;
        let psi: Matrix<C> = gauss(&mut stream, k, m);
        let omega: Matrix<C> = gauss(&mut stream, n, k);
        let phi: Matrix<C> = srft_corange(&mut stream, s, m)?;
        let xi: Matrix<C> = srft_matrix(&mut stream, n, s)?;
        let cs = C::new(c, 0.0);
        let base = ExtendedSketchState::with_test_matrices(&a, psi.clone(), omega.clone(), phi.clone(), xi.clone())?;
        let scaled = ExtendedSketchState::with_test_matrices(&a, psi, omega, phi.scale(cs), xi.scale(cs))?;
        let d0 = approx::bwz_fixed(&base, r)?.to_dense();
        let d1 = approx::bwz_fixed(&scaled, r)?.to_dense();
        worst = worst.max(rel_dist(&d1, &d0));
    }
    Ok(worst)
}

pub fn bwz_scale_invariance(instances: usize, seed: u64) -> CheckResult {
    let name = "three-part reconstruction invariant to SRFT scale";
    wrap(name, bwz_scale_change(instances, 1e3, seed).map(|w| CheckResult::below(name, w, 1e-10, format!("{instances} instances, scale 1e3"))))
}

/// Per-trial `‖A - alg8‖ ≤ ‖A - alg7‖ + 1e-12` on Hermitian zoo inputs.
pub fn structured_fixed_rank(n: usize, trials: usize, seed: u64) -> CheckResult {
    let name = "alg8 <= alg7 on Hermitian inputs";
    wrap(name, (|| {
        let mut stream = RngStream::new(seed, 115);
        let (r, k, l) = (5, 10, 20);
        let mut ok = 0;
        let mut total = 0;
        let mut gap = f64::NEG_INFINITY;
        for kind in MatrixKind::SYNTHETIC {
            let a = generate::<C>(&MatrixSpec::new(kind, n, 10).with_seed(seed))?.matrix;
            for _ in 0..trials {
                let st = sketch_with(&a, k, l, &mut stream)?;
                let e7 = a.distance(&approx::fixed_rank(&st, r)?.to_dense());
                let e8 = a.distance(&approx::fixed_rank_sym(&st, r)?.to_dense());
                gap = gap.max(e8 - e7);
                total += 1;
                if e8 <= e7 + 1e-12 {
                    ok += 1;
                }
            }
        }
        Ok(CheckResult::new(name, ok == total, gap, 1e-12, format!("{ok}/{total} trials; value is the largest excess")))
    })())
}

/// Runs every check at its default size.
pub fn validate_suite(seed: u64) -> ValidationReport {
    let mut checks = Vec::new();
    for field in [Field::Real, Field::Complex] {
        checks.push(gaussian_pinv_law(field, 4, 10, 2000, seed));
        checks.push(gaussian_product_law(field, 20000, seed));
        checks.push(srft_unitarity(field, 16, seed));
    }
    checks.push(pythagorean_identity(20, seed));
    checks.push(second_factor_identity(20, seed));
    checks.extend(dense_oracle_agreement(20, seed));
    checks.extend(exact_recovery(20, seed));
    checks.push(unbiasedness(500, seed));
    checks.extend(convex_structure(300, 100, seed));
    checks.push(fixed_rank_triangle(100, seed));
    checks.push(truncation_commutes(20, seed));
    checks.push(range_finder_bound(100, 10, 200, seed));
    checks.extend(error_bound_check(100, 5, 200, seed));
    checks.push(bwz_scale_invariance(20, seed));
    checks.push(structured_fixed_rank(100, 10, seed));
    ValidationReport { checks }
}
