//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`). The process fails when the
//! set of failing criteria differs from `KNOWN_FAILURES`, so a regression
//! or an unexpected fix both surface.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use sketchlr::approx::Algorithm;
use sketchlr::harness::validate::{
    bwz_scale_change, convex_structure, dense_oracle_agreement, exact_recovery, fixed_rank_triangle, gaussian_pinv_mean,
    mean_low_rank_error_sq, pythagorean_identity, second_factor_identity, unbiasedness_stats, CheckResult,
};
use sketchlr::harness::{mean_errors, oracle_sweep, run_trials, ExperimentConfig};
use sketchlr::params::{decay_split, flat_split, min_budget, rapid_split, SplitRule};
use sketchlr::zoo::{MatrixKind, MatrixSpec};
use sketchlr::Field;

const SEED: u64 = 20240611;

/// Criteria expected to fail, with the reason recorded in the README.
const KNOWN_FAILURES: &[u32] = &[9];

struct Outcome {
    id: u32,
    passed: bool,
    summary: String,
}

fn report(id: u32, title: &str, passed: bool, summary: String) -> Outcome {
    println!("{} criterion {id} ({title}): {summary}", if passed { "PASS" } else { "FAIL" });
    Outcome { id, passed, summary }
}

fn within_time(start: Instant, limit: Duration) -> (bool, String) {
    let el = start.elapsed();
    (el < limit, format!("{:.2}s of {}s", el.as_secs_f64(), limit.as_secs()))
}

fn checks_summary(checks: &[CheckResult]) -> (bool, String) {
    let ok = checks.iter().all(|c| c.passed && c.value <= c.limit);
    let parts: Vec<String> = checks.iter().map(|c| format!("{}={:.2e}", c.name, c.value)).collect();
    (ok, parts.join("; "))
}

fn error_bound_specialization() -> Outcome {
    let start = Instant::now();
    let (n, big_r, r) = (100, 10, 5);
    // exp_decay_slow: R ones, then 10^(-j/4).
    let tau_sq: f64 = (r + 1..=n)
        .map(|i| if i <= big_r { 1.0 } else { 10f64.powf(-0.5 * (i - big_r) as f64) })
        .sum();
    let limit = 4.0 * tau_sq * 1.10;
    let res = mean_low_rank_error_sq(n, 10, 20, 200, SEED);
    let (fast, time) = within_time(start, Duration::from_secs(30));
    match res {
        Ok(mean) => report(
            1,
            "error bound at k=2r, l=2k",
            mean <= limit && fast,
            format!("mean ‖A-Â‖²={mean:.4e} <= 4·τ₆²·1.1={limit:.4e}; {time}"),
        ),
        Err(e) => report(1, "error bound at k=2r, l=2k", false, format!("error: {e}")),
    }
}

fn pinv_expectation() -> Outcome {
    let start = Instant::now();
    let real = gaussian_pinv_mean(Field::Real, 4, 10, 2000, SEED);
    let complex = gaussian_pinv_mean(Field::Complex, 4, 10, 2000, SEED);
    let (fast, time) = within_time(start, Duration::from_secs(10));
    match (real, complex) {
        (Ok(re), Ok(co)) => {
            let ok_re = (re - 0.8).abs() <= 0.05 * 0.8;
            let ok_co = (co - 1.0 / 3.0).abs() <= 0.05 / 3.0;
            report(
                2,
                "gaussian pseudoinverse expectation",
                ok_re && ok_co && fast,
                format!("real mean={re:.5} (0.8 ± 5%), complex mean={co:.5} (1/3 ± 5%); {time}"),
            )
        }
        (Err(e), _) | (_, Err(e)) => report(2, "gaussian pseudoinverse expectation", false, format!("error: {e}")),
    }
}

fn exact_identities() -> Outcome {
    let mut checks = vec![pythagorean_identity(20, SEED), second_factor_identity(20, SEED)];
    checks.extend(dense_oracle_agreement(20, SEED));
    let (ok, s) = checks_summary(&checks);
    report(3, "exact identities, tolerance 1e-8", ok, s)
}

fn exact_recovery_all() -> Outcome {
    let checks = exact_recovery(20, SEED);
    let all_algs = checks.len() == Algorithm::ALL.len();
    let worst = checks.iter().map(|c| c.value).fold(0.0, f64::max);
    let failed: Vec<&str> = checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    report(
        4,
        "exact recovery",
        all_algs && failed.is_empty() && worst < 1e-8,
        format!("{} reconstructions, 20/20 each, worst relative error={worst:.2e}, failing={failed:?}", checks.len()),
    )
}

fn unbiasedness() -> Outcome {
    match unbiasedness_stats(500, SEED) {
        Ok(s) => {
            let frac = s.within as f64 / s.entries as f64;
            report(
                5,
                "unbiasedness",
                frac >= 0.99,
                format!("{}/{} entries within 5 SE ({:.1}%), max z={:.2}", s.within, s.entries, 100.0 * frac, s.worst_z),
            )
        }
        Err(e) => report(5, "unbiasedness", false, format!("error: {e}")),
    }
}

fn structure_improves() -> Outcome {
    let checks = convex_structure(300, 100, SEED);
    let ok = checks.len() == 2 && checks.iter().all(|c| c.passed);
    let parts: Vec<String> = checks.iter().map(|c| format!("{}: {}", c.name, c.detail)).collect();
    report(6, "structure improves error", ok, parts.join("; "))
}

fn triangle_bound() -> Outcome {
    let c = fixed_rank_triangle(100, SEED);
    report(7, "fixed-rank triangle bound", c.passed, format!("{}, smallest slack={:.3e}", c.detail, c.value))
}

fn split_regression() -> Outcome {
    let mut problems = Vec::new();
    let expect = [
        ("flat", flat_split(5, 48, Field::Complex), (12, 36)),
        ("decay", decay_split(5, 48, Field::Complex), (16, 32)),
        ("rapid", rapid_split(5, 48, Field::Complex), (23, 25)),
    ];
    for (name, got, want) in &expect {
        match got {
            Ok(c) if (c.k, c.l) == *want => {}
            other => problems.push(format!("{name}: {other:?}, want {want:?}")),
        }
    }
    let mut cases = 0;
    for field in [Field::Real, Field::Complex] {
        let alpha = field.alpha();
        for r in 1..=20 {
            for t in min_budget(r, field)..=300 {
                cases += 1;
                for (name, res) in [
                    ("flat", flat_split(r, t, field)),
                    ("decay", decay_split(r, t, field)),
                    ("rapid", rapid_split(r, t, field)),
                ] {
                    let c = match res {
                        Ok(c) => c,
                        Err(e) => {
                            problems.push(format!("{name} r={r} T={t} {}: {e}", field.tag()));
                            continue;
                        }
                    };
                    let gap_ok = c.l > c.k + alpha;
                    let floor = match name {
                        "flat" => r + 1,
                        "decay" => r + alpha + 1,
                        _ => 1,
                    };
                    if c.k + c.l != t || !gap_ok || c.k < floor {
                        problems.push(format!("{name} r={r} T={t} {}: ({}, {})", field.tag(), c.k, c.l));
                    }
                }
            }
        }
    }
    let head: Vec<&String> = problems.iter().take(3).collect();
    report(
        8,
        "parameter-formula regression",
        problems.is_empty(),
        format!("(12,36) (16,32) (23,25) checked; {cases} grid points per rule; {} violations {head:?}", problems.len()),
    )
}

fn figure_shape() -> Outcome {
    let start = Instant::now();
    let ts = vec![24, 48, 72];
    let mut cfg = ExperimentConfig::new(MatrixSpec::new(MatrixKind::ExpDecayFast, 1000, 10), 5, ts.clone(), vec![Algorithm::Alg7]);
    cfg.trials = 20;
    cfg.master_seed = SEED;
    cfg.timing = false;
    let oracle = match oracle_sweep(&cfg) {
        Ok(s) => s.minima,
        Err(e) => return report(9, "oracle and decay-split shape", false, format!("oracle error: {e}")),
    };
    cfg.sweep = SplitRule::Decay;
    let decay = match run_trials(&cfg) {
        Ok(recs) => mean_errors(&recs),
        Err(e) => return report(9, "oracle and decay-split shape", false, format!("decay error: {e}")),
    };
    let (fast, time) = within_time(start, Duration::from_secs(600));
    let at = |t: usize| oracle.iter().find(|m| m.t == t).map(|m| m.mean_error);
    let mut ok = fast;
    let mut parts = Vec::new();
    match (at(24), at(72)) {
        (Some(o24), Some(o72)) => {
            let drop = o72 <= o24 / 10.0;
            ok &= drop;
            parts.push(format!("oracle T=72 {o72:.3e} vs T=24 {o24:.3e} ({})", if drop { "≥10× lower" } else { "<10× lower" }));
        }
        _ => {
            ok = false;
            parts.push("oracle missing a budget".into());
        }
    }
    for &t in &ts {
        let d = decay.iter().find(|g| g.t == t);
        match (at(t), d) {
            (Some(o), Some(d)) => {
                let close = d.mean_error <= 2.0 * o;
                ok &= close;
                parts.push(format!(
                    "T={t} decay(k={},l={}) {:.3e} vs oracle {o:.3e} ({})",
                    d.k,
                    d.l_or_s,
                    d.mean_error,
                    if close { "within 2×" } else { "beyond 2×" }
                ));
            }
            _ => {
                ok = false;
                parts.push(format!("T={t} missing"));
            }
        }
    }
    parts.push(time);
    report(9, "oracle and decay-split shape", ok, parts.join("; "))
}

fn bwz_invariance() -> Outcome {
    match bwz_scale_change(20, 1e3, SEED) {
        Ok(w) => report(10, "three-part scale invariance", w < 1e-10, format!("largest relative change {w:.3e} < 1e-10 over 20 instances")),
        Err(e) => report(10, "three-part scale invariance", false, format!("error: {e}")),
    }
}

fn main() -> ExitCode {
    let outcomes = [
        error_bound_specialization(),
        pinv_expectation(),
        exact_identities(),
        exact_recovery_all(),
        unbiasedness(),
        structure_improves(),
        triangle_bound(),
        split_regression(),
        figure_shape(),
        bwz_invariance(),
    ];
    let failing: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    let passed = outcomes.len() - failing.len();
    println!("{passed}/{} criteria passed", outcomes.len());
    for o in outcomes.iter().filter(|o| !o.passed && KNOWN_FAILURES.contains(&o.id)) {
        println!("known failure {}: {}", o.id, o.summary);
    }
    if failing == KNOWN_FAILURES {
        ExitCode::SUCCESS
    } else {
        println!("failing set {failing:?} differs from known failures {KNOWN_FAILURES:?}");
        ExitCode::FAILURE
    }
}
