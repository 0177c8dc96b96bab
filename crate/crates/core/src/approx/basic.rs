use super::check_rank;
use super::factors::{EigApprox, FixedRankSvd, RankKApprox, SymApprox};
use crate::kernels::{hermitian_eig, pinv_apply, svd, thin_qr, tri_pinv_apply, Matrix, Scalar};
use crate::sketch::SketchState;
use crate::{Error, Result};

/// Rank-revealing orthonormal basis for `range(Y)` followed by a
/// least-squares solve for `X`. May return fewer than `k` columns.
pub fn simple_low_rank<T: Scalar>(st: &SketchState<T>) -> Result<RankKApprox<T>> {
    let y = st.range_sketch();
    let (m, k) = y.shape();
    let s = svd(y)?;
    let smax = s.sigma.first().copied().unwrap_or(0.0);
    let tol = (m.max(k) as f64) * f64::EPSILON * smax;
    let rank = s.sigma.iter().filter(|&&x| x > tol).count();
    let q = if rank == 0 { Matrix::eye(m, 1) } else { s.u.columns(0, rank) };
    let x = pinv_apply(&st.psi().matmul(&q)?, st.corange_sketch())?;
    Ok(RankKApprox { q, x })
}

/// `Q = qr(Y)`, `(U, T) = qr(ΨQ)`, `X = T†(U*W)`.
pub fn low_rank<T: Scalar>(st: &SketchState<T>) -> Result<RankKApprox<T>> {
    let q = thin_qr(st.range_sketch())?.q;
    let pq = thin_qr(&st.psi().matmul(&q)?)?;
    let x = tri_pinv_apply(&pq.r_factor, &pq.q.adjoint_matmul(st.corange_sketch())?)?;
    Ok(RankKApprox { q, x })
}

fn require_square<T: Scalar>(st: &SketchState<T>) -> Result<()> {
    let (m, n) = st.dims();
    if m != n {
        return Err(Error::arg(format!("structured reconstruction needs a square input, got {m}x{n}")));
    }
    Ok(())
}

/// Hermitian part of `QX`, as `USU*` with `U` from `qr([Q, X*])`.
pub fn low_rank_sym<T: Scalar>(st: &SketchState<T>) -> Result<SymApprox<T>> {
    require_square(st)?;
    let RankKApprox { q, x } = low_rank(st)?;
    let k = q.cols();
    let qr = thin_qr(&q.hcat(&x.adjoint())?)?;
    let t1 = qr.r_factor.columns(0, k);
    let t2 = qr.r_factor.columns(k, 2 * k);
    let s = t1.matmul_adjoint(&t2)?.hermitian_part();
    Ok(SymApprox { u: qr.q, s })
}

/// Eigendecomposition of the small core of `Â_sym`, rotated into `U`.
fn sym_eig<T: Scalar>(st: &SketchState<T>) -> Result<(Matrix<T>, Vec<f64>)> {
    let SymApprox { u, s } = low_rank_sym(st)?;
    let e = hermitian_eig(&s)?;
    Ok((u.matmul(&e.vectors)?, e.values))
}

/// Nearest psd matrix to `Â_sym`: negative eigenvalues of `S` set to zero.
pub fn low_rank_psd<T: Scalar>(st: &SketchState<T>) -> Result<EigApprox<T>> {
    let (u, d) = sym_eig(st)?;
    Ok(EigApprox {
        u,
        d: d.into_iter().map(|v| v.max(0.0)).collect(),
    })
}

/// `Q[[X]]_r`, the best rank-`r` approximation of `QX`.
pub fn fixed_rank<T: Scalar>(st: &SketchState<T>, r: usize) -> Result<FixedRankSvd<T>> {
    check_rank(r, st.params().k, "k")?;
    let RankKApprox { q, x } = low_rank(st)?;
    let s = svd(&x)?;
    Ok(FixedRankSvd {
        q: q.matmul(&s.u.columns(0, r))?,
        sigma: s.sigma[..r].to_vec(),
        v: s.v.columns(0, r),
    })
}

fn pick<T: Scalar>(u: &Matrix<T>, d: &[f64], idx: &[usize]) -> EigApprox<T> {
    EigApprox {
        u: Matrix::from_fn(u.rows(), idx.len(), |i, j| u[(i, idx[j])]),
        d: idx.iter().map(|&i| d[i]).collect(),
    }
}

/// Keeps the `r` eigenvalues of `S` largest in magnitude.
pub fn fixed_rank_sym<T: Scalar>(st: &SketchState<T>, r: usize) -> Result<EigApprox<T>> {
    require_square(st)?;
    check_rank(r, 2 * st.params().k, "2k")?;
    let (u, d) = sym_eig(st)?;
    let mut idx: Vec<usize> = (0..d.len()).collect();
    idx.sort_by(|&a, &b| d[b].abs().total_cmp(&d[a].abs()));
    idx.truncate(r);
    Ok(pick(&u, &d, &idx))
}

/// Keeps the `r` algebraically largest eigenvalues of `S`, then clamps
/// negatives to zero.
pub fn fixed_rank_psd<T: Scalar>(st: &SketchState<T>, r: usize) -> Result<EigApprox<T>> {
    require_square(st)?;
    check_rank(r, 2 * st.params().k, "2k")?;
    let (u, d) = sym_eig(st)?;
    let idx: Vec<usize> = (0..r).collect();
    let mut out = pick(&u, &d, &idx);
    for v in &mut out.d {
        *v = v.max(0.0);
    }
    Ok(out)
}
