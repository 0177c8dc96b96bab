use std::fmt::Debug;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Scalar field of a matrix: real or complex double precision.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl Field {
    /// `α(𝔽)`: 1 over the reals, 0 over the complex numbers.
    pub fn alpha(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 0,
        }
    }

    /// `β(𝔽)`: 1 over the reals, 2 over the complex numbers.
    pub fn beta(self) -> f64 {
        match self {
            Field::Real => 1.0,
            Field::Complex => 2.0,
        }
    }

    pub fn tag(self) -> &'static str {
        match self {
            Field::Real => "real",
            Field::Complex => "complex",
        }
    }
}

impl std::str::FromStr for Field {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        match s {
            "real" | "r" => Ok(Field::Real),
            "complex" | "c" => Ok(Field::Complex),
            other => Err(crate::Error::arg(format!("unknown field `{other}`"))),
        }
    }
}

/// Entry type of a [`Matrix`](super::Matrix).
///
/// Implemented for `f64` and `Complex64`. The nalgebra bound lets the
/// dense SVD and Hermitian eigensolvers run on either field.
pub trait Scalar:
    nalgebra::ComplexField<RealField = f64> + Copy + Send + Sync + Debug + 'static
{
    const FIELD: Field;

    /// Builds a scalar from real and imaginary parts. Real fields drop `im`.
    fn from_parts(re: f64, im: f64) -> Self;

    fn from_re(re: f64) -> Self {
        Self::from_parts(re, 0.0)
    }

    fn re(self) -> f64;

    fn im(self) -> f64;

    fn conj(self) -> Self;

    /// Squared modulus `|x|²`.
    fn abs_sq(self) -> f64;

    fn is_exact_zero(self) -> bool {
        self.re() == 0.0 && self.im() == 0.0
    }

    /// One draw from the standard normal distribution on this field.
    /// Complex draws are `g₁ + i g₂` with independent real parts, so
    /// `E|g|² = 2`.
    fn sample_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

impl Scalar for f64 {
    const FIELD: Field = Field::Real;

    #[inline]
    fn from_parts(re: f64, _im: f64) -> Self {
        re
    }

    #[inline]
    fn re(self) -> f64 {
        self
    }

    #[inline]
    fn im(self) -> f64 {
        0.0
    }

    #[inline]
    fn conj(self) -> Self {
        self
    }

    #[inline]
    fn abs_sq(self) -> f64 {
        self * self
    }

    fn sample_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
}

impl Scalar for Complex64 {
    const FIELD: Field = Field::Complex;

    #[inline]
    fn from_parts(re: f64, im: f64) -> Self {
        Complex64::new(re, im)
    }

    #[inline]
    fn re(self) -> f64 {
        self.re
    }

    #[inline]
    fn im(self) -> f64 {
        self.im
    }

    #[inline]
    fn conj(self) -> Self {
        Complex64::new(self.re, -self.im)
    }

    #[inline]
    fn abs_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    fn sample_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    }
}
