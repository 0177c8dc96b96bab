//! Reconstructions from a sketch.
//!
//! [`low_rank`] and its structured and fixed-rank descendants read a
//! [`SketchState`](crate::sketch::SketchState); [`woodruff_fixed`] and
//! [`cemmp_fixed`] read the same sketch; [`bwz_fixed`] reads the
//! three-part [`ExtendedSketchState`](crate::sketch::ExtendedSketchState).
//! Every result implements [`Approximation`], so error metrics can be
//! evaluated from factors.

mod basic;
mod competitors;
mod factors;

pub use basic::{fixed_rank, fixed_rank_psd, fixed_rank_sym, low_rank, low_rank_psd, low_rank_sym, simple_low_rank};
pub use competitors::{bwz_fixed, cemmp_fixed, woodruff_fixed};
pub use factors::{Approximation, EigApprox, FixedRankSvd, RankKApprox, SymApprox};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Reconstruction algorithm tags used by the harness and CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    /// [`simple_low_rank`]
    Alg3,
    /// [`low_rank`]
    Alg4,
    /// [`low_rank_sym`]
    Alg5,
    /// [`low_rank_psd`]
    Alg6,
    /// [`fixed_rank`]
    Alg7,
    /// [`fixed_rank_sym`]
    Alg8,
    /// [`fixed_rank_psd`]
    Alg9,
    /// [`woodruff_fixed`]
    Woo,
    /// [`cemmp_fixed`]
    Cemmp,
    /// [`bwz_fixed`]
    Bwz,
}

impl Algorithm {
    pub const ALL: [Algorithm; 10] = [
        Algorithm::Alg3,
        Algorithm::Alg4,
        Algorithm::Alg5,
        Algorithm::Alg6,
        Algorithm::Alg7,
        Algorithm::Alg8,
        Algorithm::Alg9,
        Algorithm::Woo,
        Algorithm::Cemmp,
        Algorithm::Bwz,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Algorithm::Alg3 => "alg3",
            Algorithm::Alg4 => "alg4",
            Algorithm::Alg5 => "alg5",
            Algorithm::Alg6 => "alg6",
            Algorithm::Alg7 => "alg7",
            Algorithm::Alg8 => "alg8",
            Algorithm::Alg9 => "alg9",
            Algorithm::Woo => "woo",
            Algorithm::Cemmp => "cemmp",
            Algorithm::Bwz => "bwz",
        }
    }

    /// True for outputs of rank at most the target rank.
    pub fn is_fixed_rank(self) -> bool {
        !matches!(self, Algorithm::Alg3 | Algorithm::Alg4 | Algorithm::Alg5 | Algorithm::Alg6)
    }

    /// True when the input must be square.
    pub fn needs_square(self) -> bool {
        matches!(self, Algorithm::Alg5 | Algorithm::Alg6 | Algorithm::Alg8 | Algorithm::Alg9)
    }

    pub fn uses_extended_sketch(self) -> bool {
        self == Algorithm::Bwz
    }
}

impl std::fmt::Display for Algorithm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.to_ascii_lowercase();
        Algorithm::ALL
            .iter()
            .copied()
            .find(|a| a.tag() == s)
            .ok_or_else(|| Error::arg(format!("unknown algorithm `{s}`")))
    }
}

fn check_rank(r: usize, max: usize, what: &str) -> Result<()> {
    if r == 0 {
        return Err(Error::arg("target rank must be positive"));
    }
    if r > max {
        return Err(Error::arg(format!("target rank r={r} exceeds {what}={max}")));
    }
    Ok(())
}
