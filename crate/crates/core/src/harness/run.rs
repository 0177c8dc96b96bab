use std::time::Instant;

use log::{debug, warn};
use rayon::prelude::*;

use super::{ExperimentConfig, ResultRecord};
use crate::approx::{self, Algorithm, Approximation};
use crate::kernels::{Field, Matrix, Scalar};
use crate::params::{bwz_budget_frontier, bwz_budget_pairs, oracle_pairs, theory_split, SplitRule};
use crate::randgen::RngStream;
use crate::sketch::{ExtendedSketchState, SketchParams, SketchState};
use crate::zoo::{generate, relative_error_auto, TestMatrix};
use crate::{Complex64, Error, Result};

#[derive(Debug, Clone, Copy)]
struct Job {
    t: usize,
    k: usize,
    l_or_s: usize,
    trial: usize,
    extended: bool,
}

fn score<T: Scalar, A: Approximation<T>>(a: &Matrix<T>, ap: Result<A>, tau: f64) -> Result<f64> {
    Ok(relative_error_auto(a, &ap?, tau)?.value)
}

fn reconstruct_and_score<T: Scalar>(alg: Algorithm, st: &SketchState<T>, r: usize, a: &Matrix<T>, tau: f64) -> Result<f64> {
    match alg {
        Algorithm::Alg3 => score(a, approx::simple_low_rank(st), tau),
        Algorithm::Alg4 => score(a, approx::low_rank(st), tau),
        Algorithm::Alg5 => score(a, approx::low_rank_sym(st), tau),
        Algorithm::Alg6 => score(a, approx::low_rank_psd(st), tau),
        Algorithm::Alg7 => score(a, approx::fixed_rank(st, r), tau),
        Algorithm::Alg8 => score(a, approx::fixed_rank_sym(st, r), tau),
        Algorithm::Alg9 => score(a, approx::fixed_rank_psd(st, r), tau),
        Algorithm::Woo => score(a, approx::woodruff_fixed(st, r), tau),
        Algorithm::Cemmp => score(a, approx::cemmp_fixed(st, r), tau),
        Algorithm::Bwz => Err(Error::arg("bwz reads the three-part sketch")),
    }
}

/// Largest `s ≥ k` for which the three-part sketch fits budget `T`.
fn bwz_s_for(k: usize, r: usize, t: usize, m: usize, n: usize) -> Option<usize> {
    bwz_budget_pairs(r, t, m, n)
        .into_iter()
        .filter(|&(kk, _)| kk == k)
        .map(|(_, s)| s)
        .max()
}

fn plan<T: Scalar>(cfg: &ExperimentConfig, dims: (usize, usize), simple: bool) -> Vec<Job> {
    let (m, n) = dims;
    let r = cfg.r;
    let budgets: Vec<Option<usize>> = if cfg.sweep == SplitRule::Default {
        vec![None]
    } else {
        cfg.t_values.iter().map(|&t| Some(t)).collect()
    };
    let mut splits: Vec<(usize, usize, usize)> = Vec::new();
    for budget in budgets {
        let pairs: Vec<(usize, usize, usize)> = match (cfg.sweep, budget) {
            (SplitRule::Oracle, Some(t)) => {
                let p = if simple { oracle_pairs(r, t, m, n) } else { bwz_budget_frontier(r, t, m, n) };
                p.into_iter().map(|(k, l)| (t, k, l)).collect()
            }
            (rule, t) => {
                let t_req = t.unwrap_or(0);
                match theory_split(rule, r, t_req, T::FIELD) {
                    Ok(c) => {
                        let t = c.k + c.l;
                        if simple {
                            vec![(t, c.k, c.l)]
                        } else {
                            match bwz_s_for(c.k, r, t, m, n) {
                                Some(s) => vec![(t, c.k, s)],
                                None => Vec::new(),
                            }
                        }
                    }
                    Err(e) => {
                        warn!("T={t_req}: {e}");
                        Vec::new()
                    }
                }
            }
        };
        if pairs.is_empty() {
            warn!(
                "no feasible {} split for T={:?}, r={r} on {m}x{n}; skipped",
                if simple { "simple" } else { "three-part" },
                budget
            );
        }
        splits.extend(pairs);
    }
    let mut jobs = Vec::new();
    for (t, k, l_or_s) in splits {
        if simple && SketchParams::new(k, l_or_s).validate(m, n).is_err() {
            warn!("split (k={k}, l={l_or_s}) infeasible on {m}x{n}; skipped");
            continue;
        }
        for trial in 0..cfg.trials {
            jobs.push(Job {
                t,
                k,
                l_or_s,
                trial,
                extended: !simple,
            });
        }
    }
    jobs
}

fn run_job<T: Scalar>(cfg: &ExperimentConfig, tm: &TestMatrix<T>, algs: &[Algorithm], job: Job) -> Vec<ResultRecord> {
    let a = &tm.matrix;
    let tau = tm.tail(cfg.r + 1);
    let mut stream = RngStream::new(cfg.master_seed, job.trial as u64);
    let record = |alg: Algorithm, err: f64, ms: f64| ResultRecord {
        algorithm: alg,
        matrix: cfg.matrix.kind.tag().to_string(),
        n: a.cols(),
        r: cfg.r,
        t: job.t,
        k: job.k,
        l_or_s: job.l_or_s,
        trial: job.trial,
        seed: cfg.master_seed,
        // Rank-r outputs never beat τ_{r+1}; anything below zero is rounding.
        relative_error: if alg.is_fixed_rank() { err.max(0.0) } else { err },
        wall_time_ms: if cfg.timing { ms } else { 0.0 },
    };
    let ms = |t0: Instant| t0.elapsed().as_secs_f64() * 1e3;
    let mut out = Vec::new();

    if job.extended {
        let t0 = Instant::now();
        let res = ExtendedSketchState::init(a, cfg.r, job.k, job.l_or_s, &mut stream)
            .and_then(|est| score(a, approx::bwz_fixed(&est, cfg.r), tau));
        match res {
            Ok(e) => out.push(record(Algorithm::Bwz, e, ms(t0))),
            Err(e) => warn!("bwz T={} k={} s={} trial {}: {e}; skipped", job.t, job.k, job.l_or_s, job.trial),
        }
        return out;
    }

    let t0 = Instant::now();
    let st = match SketchState::init(a, SketchParams::new(job.k, job.l_or_s), &mut stream) {
        Ok(st) => st,
        Err(e) => {
            warn!("sketch T={} k={} l={}: {e}; skipped", job.t, job.k, job.l_or_s);
            return out;
        }
    };
    let sketch_ms = ms(t0);
    for &alg in algs {
        let t1 = Instant::now();
        match reconstruct_and_score(alg, &st, cfg.r, a, tau) {
            Ok(e) => out.push(record(alg, e, sketch_ms + ms(t1))),
            Err(e) => warn!("{alg} T={} k={} l={} trial {}: {e}; skipped", job.t, job.k, job.l_or_s, job.trial),
        }
    }
    out
}

/// Runs every configured trial against a prepared input.
pub fn run_trials_on<T: Scalar>(cfg: &ExperimentConfig, tm: &TestMatrix<T>) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    let dims = tm.matrix.shape();
    let simple_algs: Vec<Algorithm> = cfg.algorithms.iter().copied().filter(|a| !a.uses_extended_sketch()).collect();
    let mut jobs = Vec::new();
    if !simple_algs.is_empty() {
        jobs.extend(plan::<T>(cfg, dims, true));
    }
    if cfg.algorithms.contains(&Algorithm::Bwz) {
        jobs.extend(plan::<T>(cfg, dims, false));
    }
    debug!("{} jobs on {}x{}", jobs.len(), dims.0, dims.1);
    let mut records: Vec<ResultRecord> = jobs
        .par_iter()
        .map(|&job| run_job(cfg, tm, &simple_algs, job))
        .collect::<Vec<_>>()
        .into_iter()
        .flatten()
        .collect();
    records.sort_by(|x, y| {
        (x.algorithm, x.t, x.k, x.l_or_s, x.trial).cmp(&(y.algorithm, y.t, y.k, y.l_or_s, y.trial))
    });
    Ok(records)
}

/// Generates the configured input and runs every trial.
pub fn run_trials(cfg: &ExperimentConfig) -> Result<Vec<ResultRecord>> {
    cfg.validate()?;
    match cfg.field {
        Field::Real => run_trials_on(cfg, &generate::<f64>(&cfg.matrix)?),
        Field::Complex => run_trials_on(cfg, &generate::<Complex64>(&cfg.matrix)?),
    }
}

/// Mean relative error of one (algorithm, T, split) over its trials.
#[derive(Debug, Clone, PartialEq)]
pub struct SplitMean {
    pub algorithm: Algorithm,
    pub t: usize,
    pub k: usize,
    pub l_or_s: usize,
    pub trials: usize,
    pub mean_error: f64,
}

/// Groups records by (algorithm, T, k, ℓ or s) and averages in trial
/// order.
pub fn mean_errors(records: &[ResultRecord]) -> Vec<SplitMean> {
    let mut sorted: Vec<&ResultRecord> = records.iter().collect();
    sorted.sort_by_key(|x| (x.algorithm, x.t, x.k, x.l_or_s, x.trial));
    let mut out: Vec<SplitMean> = Vec::new();
    for r in sorted {
        match out.last_mut() {
            Some(g) if (g.algorithm, g.t, g.k, g.l_or_s) == (r.algorithm, r.t, r.k, r.l_or_s) => {
                g.mean_error += r.relative_error;
                g.trials += 1;
            }
            _ => out.push(SplitMean {
                algorithm: r.algorithm,
                t: r.t,
                k: r.k,
                l_or_s: r.l_or_s,
                trials: 1,
                mean_error: r.relative_error,
            }),
        }
    }
    for g in &mut out {
        g.mean_error /= g.trials as f64;
    }
    out
}

/// Best split for one (algorithm, T).
#[derive(Debug, Clone, PartialEq)]
pub struct OracleMinimum {
    pub algorithm: Algorithm,
    pub t: usize,
    pub k: usize,
    pub l_or_s: usize,
    pub mean_error: f64,
    /// Number of splits scanned.
    pub candidates: usize,
}

#[derive(Debug, Clone)]
pub struct OracleSweep {
    pub records: Vec<ResultRecord>,
    pub minima: Vec<OracleMinimum>,
}

/// Scans every feasible split per budget and keeps the smallest mean
/// error. Ties go to the smaller `k`.
pub fn oracle_sweep_on<T: Scalar>(cfg: &ExperimentConfig, tm: &TestMatrix<T>) -> Result<OracleSweep> {
    if cfg.sweep != SplitRule::Oracle {
        return Err(Error::arg("oracle_sweep needs sweep = oracle"));
    }
    let records = run_trials_on(cfg, tm)?;
    let mut minima: Vec<OracleMinimum> = Vec::new();
    for g in mean_errors(&records) {
        match minima.last_mut() {
            Some(m) if (m.algorithm, m.t) == (g.algorithm, g.t) => {
                m.candidates += 1;
                if g.mean_error < m.mean_error {
                    m.k = g.k;
                    m.l_or_s = g.l_or_s;
                    m.mean_error = g.mean_error;
                }
            }
            _ => minima.push(OracleMinimum {
                algorithm: g.algorithm,
                t: g.t,
                k: g.k,
                l_or_s: g.l_or_s,
                mean_error: g.mean_error,
                candidates: 1,
            }),
        }
    }
    for &t in &cfg.t_values {
        for &alg in &cfg.algorithms {
            if !minima.iter().any(|m| m.algorithm == alg && m.t == t) {
                warn!("{alg}: no feasible split at T={t}");
            }
        }
    }
    Ok(OracleSweep { records, minima })
}

pub fn oracle_sweep(cfg: &ExperimentConfig) -> Result<OracleSweep> {
    cfg.validate()?;
    match cfg.field {
        Field::Real => oracle_sweep_on(cfg, &generate::<f64>(&cfg.matrix)?),
        Field::Complex => oracle_sweep_on(cfg, &generate::<Complex64>(&cfg.matrix)?),
    }
}

#[cfg(test)]
mod tests;
