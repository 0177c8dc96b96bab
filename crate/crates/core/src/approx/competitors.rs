use super::check_rank;
use super::factors::FixedRankSvd;
use crate::kernels::{svd, thin_qr, tri_pinv_apply, Matrix, Scalar};
use crate::sketch::{ExtendedSketchState, SketchState};
use crate::Result;

/// `B T† [[U*W]]_r` with `(U, T) = qr(ΨB)`.
fn project_and_truncate<T: Scalar>(st: &SketchState<T>, basis: &Matrix<T>, r: usize) -> Result<FixedRankSvd<T>> {
    let ut = thin_qr(&st.psi().matmul(basis)?)?;
    let core = svd(&ut.q.adjoint_matmul(st.corange_sketch())?)?;
    let r = r.min(core.sigma.len());
    let left = core.u.columns(0, r).scale_columns(&core.sigma[..r]);
    let left = basis.matmul(&tri_pinv_apply(&ut.r_factor, &left)?)?;
    FixedRankSvd::from_outer(&left, &core.v.columns(0, r))
}

/// Truncates the least-squares core `U*W` before applying `QT†`.
pub fn woodruff_fixed<T: Scalar>(st: &SketchState<T>, r: usize) -> Result<FixedRankSvd<T>> {
    check_rank(r, st.params().k, "k")?;
    let q = thin_qr(st.range_sketch())?.q;
    project_and_truncate(st, &q, r)
}

/// Same as [`woodruff_fixed`] with `Q` replaced by the top `r` left
/// singular vectors of `Y`.
pub fn cemmp_fixed<T: Scalar>(st: &SketchState<T>, r: usize) -> Result<FixedRankSvd<T>> {
    check_rank(r, st.params().k, "k")?;
    let v = svd(st.range_sketch())?.u.columns(0, r);
    project_and_truncate(st, &v, r)
}

/// `Q₁T₁†[[U₁*ZU₂]]_r(T₂*)†Q₂*` from the three-part sketch.
pub fn bwz_fixed<T: Scalar>(est: &ExtendedSketchState<T>, r: usize) -> Result<FixedRankSvd<T>> {
    check_rank(r, est.k(), "k")?;
    let (w, y, z) = est.parts();
    let (phi, xi) = est.srft_parts();
    let q1 = thin_qr(y)?.q;
    let q2 = thin_qr(&w.adjoint())?.q;
    let ut1 = thin_qr(&phi.matmul(&q1)?)?;
    let ut2 = thin_qr(&xi.adjoint_matmul(&q2)?)?;
    let core = ut1.q.adjoint_matmul(&z.matmul(&ut2.q)?)?;
    let c = svd(&core)?;
    let left = c.u.columns(0, r).scale_columns(&c.sigma[..r]);
    let left = q1.matmul(&tri_pinv_apply(&ut1.r_factor, &left)?)?;
    let right = q2.matmul(&tri_pinv_apply(&ut2.r_factor, &c.v.columns(0, r))?)?;
    FixedRankSvd::from_outer(&left, &right)
}
