use crate::kernels::{svd, thin_qr, Matrix, Scalar};
use crate::Result;

/// A low-rank matrix held in factored form.
pub trait Approximation<T: Scalar> {
    fn dims(&self) -> (usize, usize);

    /// Materializes the `m × n` approximation.
    fn to_dense(&self) -> Matrix<T>;

    /// `⟨A, Â⟩ = tr(A*Â)` without forming `Â`.
    fn inner_with(&self, a: &Matrix<T>) -> Result<T>;

    /// `‖Â‖²_F`.
    fn norm_sq(&self) -> f64;

    /// Upper bound on the rank of `Â`.
    fn rank_bound(&self) -> usize;
}

/// `Â = QX` with orthonormal `Q`.
#[derive(Debug, Clone)]
pub struct RankKApprox<T: Scalar> {
    pub q: Matrix<T>,
    pub x: Matrix<T>,
}

/// `Â = USU*` with orthonormal `U` and Hermitian `S`.
#[derive(Debug, Clone)]
pub struct SymApprox<T: Scalar> {
    pub u: Matrix<T>,
    pub s: Matrix<T>,
}

/// `Â = U diag(d) U*` with orthonormal `U`.
#[derive(Debug, Clone)]
pub struct EigApprox<T: Scalar> {
    pub u: Matrix<T>,
    pub d: Vec<f64>,
}

/// `Â = Q diag(sigma) V*`, sigma non-increasing.
#[derive(Debug, Clone)]
pub struct FixedRankSvd<T: Scalar> {
    pub q: Matrix<T>,
    pub sigma: Vec<f64>,
    pub v: Matrix<T>,
}

/// `Σ_i w_i · conj(B_ii)` for `B = L*AR`.
fn weighted_diag_inner<T: Scalar>(l: &Matrix<T>, a: &Matrix<T>, r: &Matrix<T>, w: &[f64]) -> Result<T> {
    let b = l.adjoint_matmul(&a.matmul(r)?)?;
    let mut acc = T::zero();
    for (i, &wi) in w.iter().enumerate() {
        acc += b[(i, i)].conj() * T::from_re(wi);
    }
    Ok(acc)
}

impl<T: Scalar> Approximation<T> for RankKApprox<T> {
    fn dims(&self) -> (usize, usize) {
        (self.q.rows(), self.x.cols())
    }

    fn to_dense(&self) -> Matrix<T> {
        &self.q * &self.x
    }

    fn inner_with(&self, a: &Matrix<T>) -> Result<T> {
        self.q.adjoint_matmul(a)?.inner(&self.x)
    }

    fn norm_sq(&self) -> f64 {
        self.x.frobenius_norm_sq()
    }

    fn rank_bound(&self) -> usize {
        self.q.cols()
    }
}

impl<T: Scalar> Approximation<T> for SymApprox<T> {
    fn dims(&self) -> (usize, usize) {
        (self.u.rows(), self.u.rows())
    }

    fn to_dense(&self) -> Matrix<T> {
        (&self.u * &self.s).matmul_adjoint(&self.u).expect("conformal factors")
    }

    fn inner_with(&self, a: &Matrix<T>) -> Result<T> {
        self.u.adjoint_matmul(&a.matmul(&self.u)?)?.inner(&self.s)
    }

    fn norm_sq(&self) -> f64 {
        self.s.frobenius_norm_sq()
    }

    fn rank_bound(&self) -> usize {
        self.u.cols()
    }
}

impl<T: Scalar> Approximation<T> for EigApprox<T> {
    fn dims(&self) -> (usize, usize) {
        (self.u.rows(), self.u.rows())
    }

    fn to_dense(&self) -> Matrix<T> {
        self.u.scale_columns(&self.d).matmul_adjoint(&self.u).expect("conformal factors")
    }

    fn inner_with(&self, a: &Matrix<T>) -> Result<T> {
        weighted_diag_inner(&self.u, a, &self.u, &self.d)
    }

    fn norm_sq(&self) -> f64 {
        self.d.iter().map(|d| d * d).sum()
    }

    fn rank_bound(&self) -> usize {
        self.d.iter().filter(|&&d| d != 0.0).count()
    }
}

impl<T: Scalar> Approximation<T> for FixedRankSvd<T> {
    fn dims(&self) -> (usize, usize) {
        (self.q.rows(), self.v.rows())
    }

    fn to_dense(&self) -> Matrix<T> {
        self.q.scale_columns(&self.sigma).matmul_adjoint(&self.v).expect("conformal factors")
    }

    fn inner_with(&self, a: &Matrix<T>) -> Result<T> {
        weighted_diag_inner(&self.q, a, &self.v, &self.sigma)
    }

    fn norm_sq(&self) -> f64 {
        self.sigma.iter().map(|s| s * s).sum()
    }

    fn rank_bound(&self) -> usize {
        self.sigma.iter().filter(|&&s| s > 0.0).count()
    }
}

impl<T: Scalar> FixedRankSvd<T> {
    /// Brings `left · right*` into SVD form by a QR of each factor and an
    /// SVD of the small core.
    pub fn from_outer(left: &Matrix<T>, right: &Matrix<T>) -> Result<Self> {
        let l = thin_qr(left)?;
        let r = thin_qr(right)?;
        let core = l.r_factor.matmul_adjoint(&r.r_factor)?;
        let s = svd(&core)?;
        Ok(FixedRankSvd {
            q: &l.q * &s.u,
            sigma: s.sigma,
            v: &r.q * &s.v,
        })
    }
}

impl<T: Scalar, A: Approximation<T> + ?Sized> Approximation<T> for Box<A> {
    fn dims(&self) -> (usize, usize) {
        (**self).dims()
    }

    fn to_dense(&self) -> Matrix<T> {
        (**self).to_dense()
    }

    fn inner_with(&self, a: &Matrix<T>) -> Result<T> {
        (**self).inner_with(a)
    }

    fn norm_sq(&self) -> f64 {
        (**self).norm_sq()
    }

    fn rank_bound(&self) -> usize {
        (**self).rank_bound()
    }
}
