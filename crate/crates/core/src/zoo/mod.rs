//! Synthetic test inputs, tail energies and the relative-error metric.

mod file;

pub use file::{load_matrix_file, matrix_to_bytes, parse_matrix_bytes, write_matrix_file, MAGIC};

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::approx::Approximation;
use crate::kernels::{hermitian_eig, svd, Matrix, Scalar};
use crate::randgen::{gaussian_matrix, RngStream};
use crate::{Error, Result};

/// Families of input matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixKind {
    /// `I_R ⊕ 0`.
    LowRank,
    /// Low rank plus Hermitian Gaussian noise, `γ = 10⁻²`.
    LowRankMedNoise,
    /// Low rank plus Hermitian Gaussian noise, `γ = 1`.
    LowRankHiNoise,
    /// `diag(1, …, 1, 2⁻ᵖ, 3⁻ᵖ, …)` with `p = 1`.
    PolyDecaySlow,
    /// As above with `p = 2`.
    PolyDecayFast,
    /// `diag(1, …, 1, 10^(-q), 10^(-2q), …)` with `q = 0.25`.
    ExpDecaySlow,
    /// As above with `q = 1`.
    ExpDecayFast,
    /// Read from a matrix file.
    File,
}

impl MatrixKind {
    pub const SYNTHETIC: [MatrixKind; 7] = [
        MatrixKind::LowRank,
        MatrixKind::LowRankMedNoise,
        MatrixKind::LowRankHiNoise,
        MatrixKind::PolyDecaySlow,
        MatrixKind::PolyDecayFast,
        MatrixKind::ExpDecaySlow,
        MatrixKind::ExpDecayFast,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            MatrixKind::LowRank => "low_rank",
            MatrixKind::LowRankMedNoise => "low_rank_med_noise",
            MatrixKind::LowRankHiNoise => "low_rank_hi_noise",
            MatrixKind::PolyDecaySlow => "poly_decay_slow",
            MatrixKind::PolyDecayFast => "poly_decay_fast",
            MatrixKind::ExpDecaySlow => "exp_decay_slow",
            MatrixKind::ExpDecayFast => "exp_decay_fast",
            MatrixKind::File => "file",
        }
    }

    /// Noise level `γ` of the low-rank-plus-noise family.
    pub fn gamma(self) -> Option<f64> {
        match self {
            MatrixKind::LowRank => Some(0.0),
            MatrixKind::LowRankMedNoise => Some(1e-2),
            MatrixKind::LowRankHiNoise => Some(1.0),
            _ => None,
        }
    }

    /// Decay exponent `p` of the polynomial family.
    pub fn poly_exponent(self) -> Option<f64> {
        match self {
            MatrixKind::PolyDecaySlow => Some(1.0),
            MatrixKind::PolyDecayFast => Some(2.0),
            _ => None,
        }
    }

    /// Decay rate `q` of the exponential family.
    pub fn exp_rate(self) -> Option<f64> {
        match self {
            MatrixKind::ExpDecaySlow => Some(0.25),
            MatrixKind::ExpDecayFast => Some(1.0),
            _ => None,
        }
    }

    /// Synthetic kinds are all Hermitian.
    pub fn is_hermitian(self) -> bool {
        self != MatrixKind::File
    }

    /// Diagonal kinds and the noiseless low-rank kind are psd.
    pub fn is_psd(self) -> bool {
        self.is_hermitian() && !matches!(self, MatrixKind::LowRankMedNoise | MatrixKind::LowRankHiNoise)
    }
}

impl std::fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for MatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MatrixKind::SYNTHETIC
            .iter()
            .chain(std::iter::once(&MatrixKind::File))
            .copied()
            .find(|k| k.tag() == s)
            .ok_or_else(|| Error::arg(format!("unknown matrix kind `{s}`")))
    }
}

fn default_n() -> usize {
    1000
}

fn default_big_r() -> usize {
    10
}

/// Recipe for one input matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixSpec {
    pub kind: MatrixKind,
    #[serde(default = "default_n")]
    pub n: usize,
    /// Effective rank `R`.
    #[serde(default = "default_big_r")]
    pub big_r: usize,
    #[serde(default)]
    pub seed: u64,
    /// Source for [`MatrixKind::File`].
    #[serde(default)]
    pub path: Option<PathBuf>,
}

impl MatrixSpec {
    pub fn new(kind: MatrixKind, n: usize, big_r: usize) -> Self {
        MatrixSpec {
            kind,
            n,
            big_r,
            seed: 0,
            path: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }

    pub fn from_file(path: impl Into<PathBuf>) -> Self {
        MatrixSpec {
            kind: MatrixKind::File,
            n: 0,
            big_r: 0,
            seed: 0,
            path: Some(path.into()),
        }
    }
}

/// An input matrix with its singular values, non-increasing.
#[derive(Debug, Clone)]
pub struct TestMatrix<T: Scalar> {
    pub matrix: Matrix<T>,
    pub sigma: Vec<f64>,
}

impl<T: Scalar> TestMatrix<T> {
    /// Wraps a matrix, computing its singular values.
    pub fn from_matrix(matrix: Matrix<T>) -> Result<Self> {
        let sigma = spectrum(&matrix)?;
        Ok(TestMatrix { matrix, sigma })
    }

    /// `τ_j`.
    pub fn tail(&self, j: usize) -> f64 {
        tail_energy(&self.sigma, j)
    }
}

fn spectrum<T: Scalar>(a: &Matrix<T>) -> Result<Vec<f64>> {
    let (m, n) = a.shape();
    if m == n && a.hermitian_defect() == 0.0 {
        let mut s: Vec<f64> = hermitian_eig(a)?.values.iter().map(|v| v.abs()).collect();
        s.sort_by(|x, y| y.total_cmp(x));
        return Ok(s);
    }
    Ok(svd(a)?.sigma)
}

/// Diagonal of the poly or exp families.
pub fn analytic_spectrum(kind: MatrixKind, n: usize, big_r: usize) -> Option<Vec<f64>> {
    let tail = |i: usize| -> f64 {
        if let Some(p) = kind.poly_exponent() {
            ((i + 2) as f64).powf(-p)
        } else if let Some(q) = kind.exp_rate() {
            10f64.powf(-((i + 1) as f64) * q)
        } else {
            0.0
        }
    };
    if kind.poly_exponent().is_none() && kind.exp_rate().is_none() && kind != MatrixKind::LowRank {
        return None;
    }
    Some((0..n).map(|i| if i < big_r { 1.0 } else { tail(i - big_r) }).collect())
}

/// Builds the matrix described by `spec`.
pub fn generate<T: Scalar>(spec: &MatrixSpec) -> Result<TestMatrix<T>> {
    if spec.kind == MatrixKind::File {
        let path = spec
            .path
            .as_ref()
            .ok_or_else(|| Error::arg("file kind needs a path"))?;
        return TestMatrix::from_matrix(load_matrix_file(path)?);
    }
    let (n, big_r) = (spec.n, spec.big_r);
    if big_r == 0 || big_r > n {
        return Err(Error::arg(format!("need 1 <= R <= n, got R={big_r} n={n}")));
    }
    if let Some(sigma) = analytic_spectrum(spec.kind, n, big_r) {
        return Ok(TestMatrix {
            matrix: Matrix::from_real_diag(&sigma),
            sigma,
        });
    }
    let gamma = spec.kind.gamma().expect("noise kind");
    let mut stream = RngStream::new(spec.seed, u64::MAX);
    let g: Matrix<T> = gaussian_matrix(&mut stream, n, n);
    let scale = (gamma * big_r as f64 / (2.0 * (n * n) as f64)).sqrt();
    let mut a = g.add(&g.adjoint())?.scale(T::from_re(scale));
    for i in 0..big_r {
        a[(i, i)] += T::one();
    }
    TestMatrix::from_matrix(a)
}

/// Nearest psd matrix to a Hermitian `a`: negative eigenvalues zeroed.
pub fn psd_part<T: Scalar>(a: &Matrix<T>) -> Result<TestMatrix<T>> {
    let e = hermitian_eig(a)?;
    let d: Vec<f64> = e.values.iter().map(|v| v.max(0.0)).collect();
    let matrix = e.vectors.scale_columns(&d).matmul_adjoint(&e.vectors)?.hermitian_part();
    Ok(TestMatrix { matrix, sigma: d })
}

/// `τ²_j = Σ_{i ≥ j} σ_i²` (1-based `j`); zero past the end.
pub fn tail_energy_sq(sigma: &[f64], j: usize) -> f64 {
    let start = j.saturating_sub(1);
    sigma.iter().skip(start).rev().map(|s| s * s).sum()
}

/// `τ_j`, the error of the best rank-`(j-1)` approximation.
pub fn tail_energy(sigma: &[f64], j: usize) -> f64 {
    tail_energy_sq(sigma, j).sqrt()
}

/// `‖A - Â‖_F / τ_{r+1} - 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RelativeError {
    /// Infinite when `τ_{r+1} = 0`.
    pub value: f64,
    /// Absolute error `‖A - Â‖_F`.
    pub abs_error: f64,
    /// Set when `τ_{r+1} = 0` and the ratio is undefined.
    pub undefined: bool,
}

impl RelativeError {
    fn new(abs_error: f64, tau: f64) -> Self {
        if tau > 0.0 {
            RelativeError {
                value: abs_error / tau - 1.0,
                abs_error,
                undefined: false,
            }
        } else {
            RelativeError {
                value: f64::INFINITY,
                abs_error,
                undefined: true,
            }
        }
    }
}

/// Relative error from factors, via `‖A‖² − 2Re⟨A, Â⟩ + ‖Â‖²`.
pub fn relative_error<T: Scalar, A: Approximation<T> + ?Sized>(a: &Matrix<T>, approx: &A, tau: f64) -> Result<RelativeError> {
    let cross = approx.inner_with(a)?.re();
    let sq = (a.frobenius_norm_sq() - 2.0 * cross + approx.norm_sq()).max(0.0);
    Ok(RelativeError::new(sq.sqrt(), tau))
}

/// Relative error against a dense approximation.
pub fn relative_error_dense<T: Scalar>(a: &Matrix<T>, approx: &Matrix<T>, tau: f64) -> Result<RelativeError> {
    if a.shape() != approx.shape() {
        return Err(Error::DimensionMismatch {
            op: "relative_error",
            lhs: a.shape(),
            rhs: approx.shape(),
        });
    }
    Ok(RelativeError::new(a.distance(approx), tau))
}

/// Largest `m·n` for which [`relative_error_auto`] materializes `Â`.
pub const DENSE_ERROR_LIMIT: usize = 1 << 22;

/// Dense path for inputs up to [`DENSE_ERROR_LIMIT`] entries, factored
/// path beyond.
pub fn relative_error_auto<T: Scalar, A: Approximation<T> + ?Sized>(a: &Matrix<T>, approx: &A, tau: f64) -> Result<RelativeError> {
    if a.rows() * a.cols() <= DENSE_ERROR_LIMIT {
        relative_error_dense(a, &approx.to_dense(), tau)
    } else {
        relative_error(a, approx, tau)
    }
}
