//! Field constants and a priori rules for splitting a sketch budget.

use serde::{Deserialize, Serialize};

use crate::kernels::Field;
use crate::zoo::tail_energy_sq;
use crate::{Error, Result};

/// `α` and `β` for a scalar field.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldConstants {
    pub alpha: usize,
    pub beta: f64,
}

impl FieldConstants {
    pub fn of(field: Field) -> Self {
        FieldConstants {
            alpha: field.alpha(),
            beta: field.beta(),
        }
    }
}

/// `f(s, t) = s / (t - s - α)`, defined for `t > s + α`.
pub fn f_factor(s: usize, t: usize, field: Field) -> Result<f64> {
    let alpha = field.alpha();
    if t <= s + alpha {
        return Err(Error::arg(format!("f(s, t) needs t > s + alpha; got s={s} t={t} alpha={alpha}")));
    }
    Ok(s as f64 / (t - s - alpha) as f64)
}

/// How `(k, ℓ)` was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SplitRule {
    Default,
    Flat,
    Decay,
    Rapid,
    Oracle,
}

impl SplitRule {
    pub fn tag(self) -> &'static str {
        match self {
            SplitRule::Default => "default",
            SplitRule::Flat => "flat",
            SplitRule::Decay => "decay",
            SplitRule::Rapid => "rapid",
            SplitRule::Oracle => "oracle",
        }
    }
}

impl std::str::FromStr for SplitRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "default" => Ok(SplitRule::Default),
            "flat" => Ok(SplitRule::Flat),
            "decay" => Ok(SplitRule::Decay),
            "rapid" => Ok(SplitRule::Rapid),
            "oracle" => Ok(SplitRule::Oracle),
            other => Err(Error::arg(format!("unknown split rule `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitChoice {
    pub k: usize,
    pub l: usize,
    pub rule: SplitRule,
}

/// `k = 2r + α`, `ℓ = 2k + α`.
pub fn default_split(r: usize, field: Field) -> Result<SplitChoice> {
    if r == 0 {
        return Err(Error::arg("target rank must be positive"));
    }
    let a = field.alpha();
    let k = 2 * r + a;
    Ok(SplitChoice {
        k,
        l: 2 * k + a,
        rule: SplitRule::Default,
    })
}

/// Smallest budget the theory rules accept: `2r + 3α + 3`.
pub fn min_budget(r: usize, field: Field) -> usize {
    2 * r + 3 * field.alpha() + 3
}

fn check_budget(r: usize, t: usize, field: Field) -> Result<()> {
    if r == 0 {
        return Err(Error::arg("target rank must be positive"));
    }
    let min = min_budget(r, field);
    if t < min {
        return Err(Error::arg(format!("budget T={t} below 2r + 3alpha + 3 = {min}")));
    }
    Ok(())
}

fn split(k: usize, t: usize, rule: SplitRule) -> SplitChoice {
    SplitChoice { k, l: t - k, rule }
}

/// Split for a flat tail, tuned at `ρ = r`.
pub fn flat_split(r: usize, t: usize, field: Field) -> Result<SplitChoice> {
    check_budget(r, t, field)?;
    let (rf, tf) = (r as f64, t as f64);
    let k = match field {
        Field::Complex => {
            let v = tf * ((rf * (tf - rf)).sqrt() - rf) / (tf - 2.0 * rf);
            (r + 1).max(v.floor() as usize)
        }
        Field::Real => {
            let v = (tf - 1.0) * ((rf * (tf - rf - 2.0) * (1.0 - 2.0 / (tf - 1.0))).sqrt() - (rf - 1.0))
                / (tf - 2.0 * rf - 1.0);
            (r + 2).max(v.floor() as usize)
        }
    };
    Ok(split(k, t, SplitRule::Flat))
}

/// `k = max{r + α + 1, ⌊(T - α)/3⌋}`.
pub fn decay_split(r: usize, t: usize, field: Field) -> Result<SplitChoice> {
    check_budget(r, t, field)?;
    let a = field.alpha();
    let k = (r + a + 1).max((t - a) / 3);
    Ok(split(k, t, SplitRule::Decay))
}

/// `k = ⌊(T - α - 1)/2⌋`.
pub fn rapid_split(r: usize, t: usize, field: Field) -> Result<SplitChoice> {
    check_budget(r, t, field)?;
    let k = (t - field.alpha() - 1) / 2;
    Ok(split(k, t, SplitRule::Rapid))
}

/// Dispatches to one of the budgeted rules, or [`default_split`].
pub fn theory_split(rule: SplitRule, r: usize, t: usize, field: Field) -> Result<SplitChoice> {
    match rule {
        SplitRule::Default => default_split(r, field),
        SplitRule::Flat => flat_split(r, t, field),
        SplitRule::Decay => decay_split(r, t, field),
        SplitRule::Rapid => rapid_split(r, t, field),
        SplitRule::Oracle => Err(Error::arg("the oracle split is found by search, not by formula")),
    }
}

/// All `(k, ℓ)` with `k + ℓ = T`, `r ≤ k ≤ ℓ`, `k ≤ n`, `ℓ ≤ m`.
pub fn oracle_pairs(r: usize, t: usize, m: usize, n: usize) -> Vec<(usize, usize)> {
    (r.max(1)..=t / 2)
        .map(|k| (k, t - k))
        .filter(|&(k, l)| k <= n && l <= m)
        .collect()
}

/// Three-part sketch sizes `(k, s)` that fit in the budget of a simple
/// sketch with `k + ℓ = T`.
pub fn bwz_budget_pairs(r: usize, t: usize, m: usize, n: usize) -> Vec<(usize, usize)> {
    let budget = (t as u64) * ((m + n) as u64);
    let side = (m + n) as u64;
    let mut out = Vec::new();
    for k in r.max(1)..=m.min(n) {
        if (2 * k as u64 + 1) * side > budget {
            break;
        }
        for s in k..=m.min(n) {
            let cost = (2 * k as u64 + 1) * side + (s as u64) * (s as u64 + 2);
            if cost > budget {
                break;
            }
            out.push((k, s));
        }
    }
    out
}

/// The largest admissible `s` for each `k` in [`bwz_budget_pairs`].
pub fn bwz_budget_frontier(r: usize, t: usize, m: usize, n: usize) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for (k, s) in bwz_budget_pairs(r, t, m, n) {
        match out.last_mut() {
            Some(last) if last.0 == k => last.1 = s,
            _ => out.push((k, s)),
        }
    }
    out
}

/// A priori bound on `E‖A - QX‖²_F` for singular values `sigma`:
/// `(1 + f(k, ℓ)) · min_{1 ≤ ρ < k - α} (1 + f(ρ, k)) τ²_{ρ+1}`.
pub fn frobenius_error_bound(sigma: &[f64], k: usize, l: usize, field: Field) -> Result<f64> {
    let a = field.alpha();
    let outer = 1.0 + f_factor(k, l, field)?;
    if k <= a + 1 {
        return Err(Error::arg(format!("no admissible rho for k={k} alpha={a}")));
    }
    let mut best = f64::INFINITY;
    for rho in 1..k - a {
        let v = (1.0 + f_factor(rho, k, field)?) * tail_energy_sq(sigma, rho + 1);
        best = best.min(v);
    }
    Ok(outer * best)
}
