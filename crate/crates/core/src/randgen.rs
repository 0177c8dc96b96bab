//! Seedable random streams and the test-matrix distributions.

use std::f64::consts::PI;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::kernels::{thin_qr, Field, Matrix, Scalar};
use crate::{Error, Result};

/// A reproducible random stream identified by `(seed, stream_id)`.
///
/// Streams with the same seed but different ids are independent ChaCha
/// streams, so parallel trials can each own one without coordination.
#[derive(Debug, Clone)]
pub struct RngStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha12Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha12Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        RngStream {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dst: &mut [u8]) {
        self.rng.fill_bytes(dst)
    }
}

/// Distribution of the sketch test matrices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TestMatrixKind {
    /// Standard normal entries.
    #[default]
    Gaussian,
    /// Standard normal, then orthonormalized.
    Orthonormal,
    /// Independent ±1 entries.
    Rademacher,
    /// Subsampled randomized trigonometric transform.
    Srft,
}

impl std::str::FromStr for TestMatrixKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Self::Gaussian),
            "orthonormal" => Ok(Self::Orthonormal),
            "rademacher" => Ok(Self::Rademacher),
            "srft" => Ok(Self::Srft),
            other => Err(Error::arg(format!("unknown test matrix kind `{other}`"))),
        }
    }
}

/// Standard normal matrix. Complex entries are `g₁ + i g₂`.
pub fn gaussian_matrix<T: Scalar>(stream: &mut RngStream, rows: usize, cols: usize) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| T::sample_normal(stream))
}

/// Matrix of independent ±1 entries (real-valued in either field).
pub fn rademacher_matrix<T: Scalar>(stream: &mut RngStream, rows: usize, cols: usize) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |_, _| T::from_re(rademacher(stream)))
}

fn rademacher(stream: &mut RngStream) -> f64 {
    if stream.random::<bool>() {
        1.0
    } else {
        -1.0
    }
}

/// Orthonormal basis for the range of a full-column-rank `m`.
pub fn orthonormalize_test<T: Scalar>(m: &Matrix<T>) -> Result<Matrix<T>> {
    if m.rows() < m.cols() {
        return Err(Error::arg(format!(
            "orthonormalize_test needs rows >= cols, got {:?}",
            m.shape()
        )));
    }
    let qr = thin_qr(m)?;
    let diag: Vec<f64> = (0..m.cols())
        .map(|i| qr.r_factor[(i, i)].abs_sq().sqrt())
        .collect();
    let max_d = diag.iter().copied().fold(0.0, f64::max);
    let min_d = diag.iter().copied().fold(f64::INFINITY, f64::min);
    if max_d == 0.0 || min_d <= 1e-12 * max_d {
        return Err(Error::arg("test matrix is rank deficient"));
    }
    Ok(qr.q)
}

/// Draws `k` distinct indices from `0..n` by a partial Fisher–Yates shuffle.
pub fn sample_without_replacement(stream: &mut RngStream, n: usize, k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = stream.random_range(i..n);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

/// Entry `(j, c)` of the unitary trigonometric transform of size `n`:
/// orthonormal DCT-II over the reals, unitary DFT over the complex numbers.
fn trig_entry<T: Scalar>(n: usize, j: usize, c: usize) -> T {
    let nf = n as f64;
    match T::FIELD {
        Field::Real => {
            let scale = if c == 0 { (1.0 / nf).sqrt() } else { (2.0 / nf).sqrt() };
            T::from_re(scale * (PI * (2 * j + 1) as f64 * c as f64 / (2.0 * nf)).cos())
        }
        Field::Complex => {
            // Reduce j·c mod n before scaling to keep the phase accurate.
            let phase = -2.0 * PI * ((j * c) % n) as f64 / nf;
            let s = 1.0 / nf.sqrt();
            T::from_parts(s * phase.cos(), s * phase.sin())
        }
    }
}

/// Materialized SRFT `Ω = D F P` of shape `n × k`.
///
/// `D` is a diagonal of random signs, `F` the unitary transform above and
/// `P` a restriction onto `k` coordinates drawn without replacement.
/// The co-range form is the adjoint; see [`srft_corange`].
pub fn srft_matrix<T: Scalar>(stream: &mut RngStream, n: usize, k: usize) -> Result<Matrix<T>> {
    if k == 0 || k > n {
        return Err(Error::arg(format!("srft needs 1 <= k <= n, got k={k}, n={n}")));
    }
    let signs: Vec<f64> = (0..n).map(|_| rademacher(stream)).collect();
    let coords = sample_without_replacement(stream, n, k);
    Ok(Matrix::from_fn(n, k, |j, p| {
        trig_entry::<T>(n, j, coords[p]) * T::from_re(signs[j])
    }))
}

/// `Ψ = P F* D` of shape `l × m`, the adjoint of an `m × l` SRFT.
pub fn srft_corange<T: Scalar>(stream: &mut RngStream, l: usize, m: usize) -> Result<Matrix<T>> {
    Ok(srft_matrix::<T>(stream, m, l)?.adjoint())
}

/// Draws an `n × k` range test matrix of the requested kind.
pub fn range_test_matrix<T: Scalar>(
    kind: TestMatrixKind,
    stream: &mut RngStream,
    n: usize,
    k: usize,
) -> Result<Matrix<T>> {
    match kind {
        TestMatrixKind::Gaussian => Ok(gaussian_matrix(stream, n, k)),
        TestMatrixKind::Orthonormal => orthonormalize_test(&gaussian_matrix(stream, n, k)),
        TestMatrixKind::Rademacher => Ok(rademacher_matrix(stream, n, k)),
        TestMatrixKind::Srft => srft_matrix(stream, n, k),
    }
}

/// Draws an `l × m` co-range test matrix of the requested kind.
pub fn corange_test_matrix<T: Scalar>(
    kind: TestMatrixKind,
    stream: &mut RngStream,
    l: usize,
    m: usize,
) -> Result<Matrix<T>> {
    match kind {
        TestMatrixKind::Gaussian => Ok(gaussian_matrix(stream, l, m)),
        TestMatrixKind::Orthonormal => {
            Ok(orthonormalize_test(&gaussian_matrix::<T>(stream, m, l))?.adjoint())
        }
        TestMatrixKind::Rademacher => Ok(rademacher_matrix(stream, l, m)),
        TestMatrixKind::Srft => srft_corange(stream, l, m),
    }
}
