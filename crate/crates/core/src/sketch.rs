//! The updatable sketch: test matrices plus their images of the input.

use serde::{Deserialize, Serialize};

use crate::kernels::{Matrix, Scalar};
use crate::randgen::{corange_test_matrix, range_test_matrix, srft_corange, srft_matrix, RngStream, TestMatrixKind};
use crate::{Error, Result};

/// Sketch size parameters and test-matrix distribution.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SketchParams {
    /// Columns of the range test matrix `Ω`.
    pub k: usize,
    /// Rows of the co-range test matrix `Ψ`.
    pub l: usize,
    #[serde(default)]
    pub kind: TestMatrixKind,
}

impl SketchParams {
    pub fn new(k: usize, l: usize) -> Self {
        SketchParams {
            k,
            l,
            kind: TestMatrixKind::Gaussian,
        }
    }

    pub fn with_kind(mut self, kind: TestMatrixKind) -> Self {
        self.kind = kind;
        self
    }

    /// Checks `1 ≤ k ≤ ℓ`, `k ≤ n` and `ℓ ≤ m` for an `m × n` input.
    pub fn validate(&self, m: usize, n: usize) -> Result<()> {
        if self.k == 0 || self.l == 0 {
            return Err(Error::arg("sketch sizes must be positive"));
        }
        if self.k > self.l {
            return Err(Error::arg(format!(
                "need k <= l, got k={} l={}",
                self.k, self.l
            )));
        }
        if self.k > n || self.l > m {
            return Err(Error::arg(format!(
                "sketch sizes (k={}, l={}) exceed input dimensions {m}x{n}",
                self.k, self.l
            )));
        }
        Ok(())
    }

    /// Scalars stored by the sketch and its test matrices.
    pub fn storage_cost(&self, m: usize, n: usize) -> Result<u64> {
        storage_cost(self.k, self.l, m, n)
    }
}

/// `(k + ℓ)(m + n)`: sketch `(Y, W)` plus test matrices `(Ω, Ψ)`.
pub fn storage_cost(k: usize, l: usize, m: usize, n: usize) -> Result<u64> {
    if k == 0 || l == 0 {
        return Err(Error::arg("sketch sizes must be positive"));
    }
    Ok(((k + l) as u64) * ((m + n) as u64))
}

/// `(2k + 1)(m + n) + s(s + 2)` for the three-part sketch.
pub fn extended_storage_cost(k: usize, s: usize, m: usize, n: usize) -> Result<u64> {
    if k == 0 || s == 0 {
        return Err(Error::arg("sketch sizes must be positive"));
    }
    let (k, s, m, n) = (k as u64, s as u64, m as u64, n as u64);
    Ok((2 * k + 1) * (m + n) + s * (s + 2))
}

fn check_update_shape<T: Scalar>(h: &Matrix<T>, dims: (usize, usize)) -> Result<()> {
    if h.shape() != dims {
        return Err(Error::DimensionMismatch {
            op: "linear_update",
            lhs: dims,
            rhs: h.shape(),
        });
    }
    Ok(())
}

/// Sketch `Y = AΩ`, `W = ΨA` of an `m × n` matrix.
///
/// The test matrices stay private to the crate; callers read
/// approximations through [`crate::approx`].
#[derive(Debug, Clone)]
pub struct SketchState<T: Scalar> {
    omega: Matrix<T>,
    psi: Matrix<T>,
    y: Matrix<T>,
    w: Matrix<T>,
    params: SketchParams,
}

impl<T: Scalar> SketchState<T> {
    /// Draws test matrices and sketches `a`.
    pub fn init(a: &Matrix<T>, params: SketchParams, stream: &mut RngStream) -> Result<Self> {
        let (m, n) = a.shape();
        params.validate(m, n)?;
        let omega = range_test_matrix(params.kind, stream, n, params.k)?;
        let psi = corange_test_matrix(params.kind, stream, params.l, m)?;
        Self::assemble(a, omega, psi, params)
    }

    /// Sketch of the `m × n` zero matrix, ready to absorb updates.
    pub fn empty(m: usize, n: usize, params: SketchParams, stream: &mut RngStream) -> Result<Self> {
        params.validate(m, n)?;
        let omega = range_test_matrix(params.kind, stream, n, params.k)?;
        let psi = corange_test_matrix(params.kind, stream, params.l, m)?;
        Ok(SketchState {
            y: Matrix::zeros(m, params.k),
            w: Matrix::zeros(params.l, n),
            omega,
            psi,
            params,
        })
    }

    /// Sketches `a` with caller-supplied test matrices `Ω` (`n × k`) and
    /// `Ψ` (`ℓ × m`). `kind` only labels the state.
    pub fn with_test_matrices(
        a: &Matrix<T>,
        omega: Matrix<T>,
        psi: Matrix<T>,
        kind: TestMatrixKind,
    ) -> Result<Self> {
        let (m, n) = a.shape();
        if omega.rows() != n || psi.cols() != m {
            return Err(Error::DimensionMismatch {
                op: "with_test_matrices",
                lhs: omega.shape(),
                rhs: psi.shape(),
            });
        }
        let params = SketchParams {
            k: omega.cols(),
            l: psi.rows(),
            kind,
        };
        params.validate(m, n)?;
        Self::assemble(a, omega, psi, params)
    }

    fn assemble(a: &Matrix<T>, omega: Matrix<T>, psi: Matrix<T>, params: SketchParams) -> Result<Self> {
        let y = a.matmul(&omega)?;
        let w = psi.matmul(a)?;
        Ok(SketchState {
            omega,
            psi,
            y,
            w,
            params,
        })
    }

    /// Applies `A ← θA + ηH` to the sketch.
    pub fn linear_update(&mut self, h: &Matrix<T>, theta: T, eta: T) -> Result<()> {
        check_update_shape(h, self.dims())?;
        let h_omega = h.matmul(&self.omega)?;
        let psi_h = self.psi.matmul(h)?;
        self.y = self.y.lin_comb(theta, &h_omega, eta)?;
        self.w = self.w.lin_comb(theta, &psi_h, eta)?;
        Ok(())
    }

    /// Applies the single-entry update `A[i, j] += value`.
    pub fn add_entry(&mut self, i: usize, j: usize, value: T) -> Result<()> {
        let (m, n) = self.dims();
        if i >= m || j >= n {
            return Err(Error::arg(format!("entry ({i}, {j}) outside {m}x{n}")));
        }
        for c in 0..self.params.k {
            let d = value * self.omega[(j, c)];
            self.y[(i, c)] += d;
        }
        for r in 0..self.params.l {
            let d = self.psi[(r, i)] * value;
            self.w[(r, j)] += d;
        }
        Ok(())
    }

    /// `(m, n)` of the sketched matrix.
    pub fn dims(&self) -> (usize, usize) {
        (self.y.rows(), self.w.cols())
    }

    pub fn params(&self) -> SketchParams {
        self.params
    }

    /// Range sketch `Y` (`m × k`).
    pub fn range_sketch(&self) -> &Matrix<T> {
        &self.y
    }

    /// Co-range sketch `W` (`ℓ × n`).
    pub fn corange_sketch(&self) -> &Matrix<T> {
        &self.w
    }

    pub fn storage_cost(&self) -> u64 {
        let (m, n) = self.dims();
        ((self.params.k + self.params.l) * (m + n)) as u64
    }

    #[cfg(test)]
    pub(crate) fn omega(&self) -> &Matrix<T> {
        &self.omega
    }

    pub(crate) fn psi(&self) -> &Matrix<T> {
        &self.psi
    }
}

/// Three-part sketch `W = ΨA`, `Y = AΩ`, `Z = ΦAΞ`.
///
/// `Ψ` (`k × m`) and `Ω` (`n × k`) are Gaussian; `Φ` (`s × m`) and
/// `Ξ` (`n × s`) are SRFTs.
#[derive(Debug, Clone)]
pub struct ExtendedSketchState<T: Scalar> {
    psi: Matrix<T>,
    omega: Matrix<T>,
    phi: Matrix<T>,
    xi: Matrix<T>,
    w: Matrix<T>,
    y: Matrix<T>,
    z: Matrix<T>,
    k: usize,
    s: usize,
}

impl<T: Scalar> ExtendedSketchState<T> {
    /// Draws the four test matrices and sketches `a`; requires
    /// `r ≤ k ≤ s ≤ min(m, n)`.
    pub fn init(a: &Matrix<T>, r: usize, k: usize, s: usize, stream: &mut RngStream) -> Result<Self> {
        let (m, n) = a.shape();
        if r == 0 || r > k || k > s || s > m.min(n) {
            return Err(Error::arg(format!(
                "need 1 <= r <= k <= s <= min(m, n); got r={r} k={k} s={s} on {m}x{n}"
            )));
        }
        let psi = crate::randgen::gaussian_matrix(stream, k, m);
        let omega = crate::randgen::gaussian_matrix(stream, n, k);
        let phi = srft_corange(stream, s, m)?;
        let xi = srft_matrix(stream, n, s)?;
        Self::with_test_matrices(a, psi, omega, phi, xi)
    }

    /// Sketches `a` with caller-supplied test matrices.
    pub fn with_test_matrices(
        a: &Matrix<T>,
        psi: Matrix<T>,
        omega: Matrix<T>,
        phi: Matrix<T>,
        xi: Matrix<T>,
    ) -> Result<Self> {
        let (m, n) = a.shape();
        let k = omega.cols();
        let s = xi.cols();
        let ok = psi.shape() == (k, m) && omega.rows() == n && phi.shape() == (s, m) && xi.rows() == n;
        if !ok {
            return Err(Error::arg(format!(
                "inconsistent test matrices for {m}x{n}: psi {:?} omega {:?} phi {:?} xi {:?}",
                psi.shape(),
                omega.shape(),
                phi.shape(),
                xi.shape()
            )));
        }
        if k == 0 || k > s || s > m.min(n) {
            return Err(Error::arg(format!("need 1 <= k <= s <= min(m, n); got k={k} s={s}")));
        }
        let w = psi.matmul(a)?;
        let y = a.matmul(&omega)?;
        let z = phi.matmul(&a.matmul(&xi)?)?;
        Ok(ExtendedSketchState {
            psi,
            omega,
            phi,
            xi,
            w,
            y,
            z,
            k,
            s,
        })
    }

    /// Applies `A ← θA + ηH` to all three parts.
    pub fn linear_update(&mut self, h: &Matrix<T>, theta: T, eta: T) -> Result<()> {
        check_update_shape(h, self.dims())?;
        let psi_h = self.psi.matmul(h)?;
        let h_omega = h.matmul(&self.omega)?;
        let phi_h_xi = self.phi.matmul(&h.matmul(&self.xi)?)?;
        self.w = self.w.lin_comb(theta, &psi_h, eta)?;
        self.y = self.y.lin_comb(theta, &h_omega, eta)?;
        self.z = self.z.lin_comb(theta, &phi_h_xi, eta)?;
        Ok(())
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.y.rows(), self.w.cols())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn storage_cost(&self) -> u64 {
        let (m, n) = self.dims();
        extended_storage_cost(self.k, self.s, m, n).expect("k, s positive")
    }

    pub(crate) fn parts(&self) -> (&Matrix<T>, &Matrix<T>, &Matrix<T>) {
        (&self.w, &self.y, &self.z)
    }

    #[cfg(test)]
    pub(crate) fn test_matrices(&self) -> (&Matrix<T>, &Matrix<T>) {
        (&self.psi, &self.omega)
    }

    pub(crate) fn srft_parts(&self) -> (&Matrix<T>, &Matrix<T>) {
        (&self.phi, &self.xi)
    }
}
