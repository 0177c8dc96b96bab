use super::*;
use crate::harness::{read_csv, write_csv};
use crate::zoo::{MatrixKind, MatrixSpec};

fn cfg(kind: MatrixKind, n: usize, t: Vec<usize>, algs: Vec<Algorithm>, sweep: SplitRule, trials: usize) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(MatrixSpec::new(kind, n, 10), 5, t, algs);
    c.sweep = sweep;
    c.trials = trials;
    c.timing = false;
    c
}

#[test]
fn smoke_single_trial() {
    let c = cfg(MatrixKind::ExpDecayFast, 100, vec![30], vec![Algorithm::Alg7], SplitRule::Decay, 1);
    let recs = run_trials(&c).unwrap();
    assert_eq!(recs.len(), 1);
    let r = &recs[0];
    assert!(r.relative_error.is_finite() && r.relative_error >= -1e-12);
    assert_eq!((r.t, r.k, r.l_or_s), (30, 10, 20));
}

#[test]
fn identical_seeds_give_identical_csv() {
    let algs = vec![Algorithm::Alg7, Algorithm::Alg8, Algorithm::Woo, Algorithm::Bwz];
    let c = cfg(MatrixKind::LowRankMedNoise, 60, vec![20, 26], algs, SplitRule::Oracle, 3);
    let mut a = Vec::new();
    let mut b = Vec::new();
    write_csv(&run_trials(&c).unwrap(), &mut a).unwrap();
    write_csv(&run_trials(&c).unwrap(), &mut b).unwrap();
    assert_eq!(a, b);
    let mut other = c.clone();
    other.master_seed = 1;
    let mut d = Vec::new();
    write_csv(&run_trials(&other).unwrap(), &mut d).unwrap();
    assert_ne!(a, d);
}

#[test]
fn exact_rank_input_flags_infinite_error() {
    let mut c = cfg(MatrixKind::LowRank, 40, vec![20], vec![Algorithm::Alg7], SplitRule::Decay, 2);
    c.matrix.big_r = 5;
    let recs = run_trials(&c).unwrap();
    assert_eq!(recs.len(), 2);
    assert!(recs.iter().all(|r| r.relative_error == f64::INFINITY));
}

#[test]
fn singleton_oracle_equals_trial_mean() {
    let c = cfg(MatrixKind::PolyDecaySlow, 50, vec![10], vec![Algorithm::Alg7], SplitRule::Oracle, 4);
    let sweep = oracle_sweep(&c).unwrap();
    assert_eq!(sweep.minima.len(), 1);
    let m = &sweep.minima[0];
    assert_eq!((m.k, m.l_or_s, m.candidates), (5, 5, 1));
    let mean: f64 = sweep.records.iter().map(|r| r.relative_error).sum::<f64>() / 4.0;
    assert!((m.mean_error - mean).abs() <= 1e-15 * mean);
}

#[test]
fn oracle_improves_with_budget() {
    let c = cfg(MatrixKind::ExpDecayFast, 100, vec![14, 30, 60], vec![Algorithm::Alg7], SplitRule::Oracle, 5);
    let sweep = oracle_sweep(&c).unwrap();
    let errs: Vec<f64> = sweep.minima.iter().map(|m| m.mean_error).collect();
    assert_eq!(errs.len(), 3);
    assert!(errs[2] < errs[0] * 0.1, "{errs:?}");
    for w in errs.windows(2) {
        assert!(w[1] <= w[0] * 1.1, "{errs:?}");
    }
}

#[test]
fn bwz_and_theory_splits() {
    let c = cfg(MatrixKind::ExpDecaySlow, 80, vec![24], vec![Algorithm::Bwz, Algorithm::Cemmp], SplitRule::Decay, 2);
    let recs = run_trials(&c).unwrap();
    let bwz: Vec<_> = recs.iter().filter(|r| r.algorithm == Algorithm::Bwz).collect();
    assert_eq!(bwz.len(), 2);
    let (k, s) = (bwz[0].k, bwz[0].l_or_s);
    assert_eq!(k, 8);
    assert!((2 * k + 1) * 160 + s * (s + 2) <= 24 * 160);
    assert!((2 * k + 1) * 160 + (s + 1) * (s + 3) > 24 * 160 || s == 80);

    let d = cfg(MatrixKind::ExpDecaySlow, 80, vec![], vec![Algorithm::Alg9], SplitRule::Default, 2);
    let recs = run_trials(&d).unwrap();
    assert!(recs.iter().all(|r| (r.k, r.l_or_s, r.t) == (10, 20, 30)));
}

#[test]
fn infeasible_splits_are_skipped() {
    let c = cfg(MatrixKind::ExpDecaySlow, 30, vec![200], vec![Algorithm::Alg7], SplitRule::Rapid, 1);
    assert!(run_trials(&c).unwrap().is_empty());
}

#[test]
fn csv_round_trip() {
    let mut empty = Vec::new();
    write_csv(&[], &mut empty).unwrap();
    assert_eq!(String::from_utf8(empty).unwrap(), "algorithm,matrix,n,r,T,k,l_or_s,trial,seed,relative_error,wall_time_ms\n");

    let mut c = cfg(MatrixKind::PolyDecayFast, 40, vec![16], vec![Algorithm::Alg7, Algorithm::Alg9], SplitRule::Oracle, 2);
    c.timing = true;
    let mut recs = run_trials(&c).unwrap();
    recs[0].relative_error = f64::INFINITY;
    let mut buf = Vec::new();
    write_csv(&recs, &mut buf).unwrap();
    let text = String::from_utf8(buf.clone()).unwrap();
    assert!(!text.contains('\r'));
    assert_eq!(read_csv(&buf[..]).unwrap(), recs);
}

#[test]
fn fixed_rank_errors_never_negative() {
    let c = cfg(MatrixKind::ExpDecayFast, 100, vec![40], vec![Algorithm::Alg7, Algorithm::Alg4], SplitRule::Rapid, 3);
    let recs = run_trials(&c).unwrap();
    assert!(recs.iter().filter(|r| r.algorithm == Algorithm::Alg7).all(|r| r.relative_error >= 0.0));
    assert!(recs.iter().any(|r| r.algorithm == Algorithm::Alg4 && r.relative_error < 0.0));
}
