//! Dense matrix type and the deterministic factorizations used by the
//! sketching and reconstruction code.

mod decomp;
mod matrix;
mod qr;
mod scalar;

pub use decomp::{
    hermitian_eig, pinv_apply, svd, tri_pinv_apply, EigResult, SvdResult, HERMITIAN_TOL,
    PINV_RCOND,
};
pub use matrix::Matrix;
pub use qr::{thin_qr, QrThin};
pub use scalar::{Field, Scalar};

/// Checked product `a · b`.
pub fn matmul<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> crate::Result<Matrix<T>> {
    a.matmul(b)
}

/// Conjugate transpose.
pub fn adjoint<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    a.adjoint()
}

/// `‖q*q − I‖_F`.
pub fn orthonormality_defect<T: Scalar>(q: &Matrix<T>) -> f64 {
    let g = q.adjoint_matmul(q).expect("same row count");
    g.distance(&Matrix::identity(q.cols()))
}

#[cfg(test)]
mod tests;
