use nalgebra::{DMatrix, SymmetricEigen};

use super::{thin_qr, Matrix, Scalar};
use crate::{Error, Result};

/// Relative tolerance on `‖s − s*‖_F` accepted by [`hermitian_eig`].
pub const HERMITIAN_TOL: f64 = 1e-8;

/// Relative threshold below which [`tri_pinv_apply`] treats a triangular
/// factor as singular.
pub const PINV_RCOND: f64 = 1e-12;

/// Thin singular value decomposition `a = u · diag(sigma) · v*`.
#[derive(Debug, Clone)]
pub struct SvdResult<T: Scalar> {
    pub u: Matrix<T>,
    /// Non-increasing.
    pub sigma: Vec<f64>,
    pub v: Matrix<T>,
}

/// Hermitian eigendecomposition `s = vectors · diag(values) · vectors*`.
#[derive(Debug, Clone)]
pub struct EigResult<T: Scalar> {
    pub vectors: Matrix<T>,
    /// Sorted by descending algebraic value.
    pub values: Vec<f64>,
}

fn to_na<T: Scalar>(a: &Matrix<T>) -> DMatrix<T> {
    DMatrix::from_column_slice(a.rows(), a.cols(), a.as_slice())
}

fn from_na<T: Scalar>(a: &DMatrix<T>) -> Matrix<T> {
    Matrix::from_column_major(a.nrows(), a.ncols(), a.as_slice().to_vec())
        .expect("nalgebra output has positive dimensions")
}

/// Permutation sorting `keys` in descending order; ties keep input order.
fn descending_order(keys: &[f64]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| keys[b].total_cmp(&keys[a]));
    idx
}

fn select_columns<T: Scalar>(a: &Matrix<T>, order: &[usize]) -> Matrix<T> {
    Matrix::from_fn(a.rows(), order.len(), |i, j| a[(i, order[j])])
}

/// Full thin SVD with singular values in non-increasing order.
///
/// Tall inputs are first reduced by a thin QR; wide inputs are handled
/// through their adjoint. The square core is factored by one-sided Jacobi
/// rotations, which keep small singular values accurate.
pub fn svd<T: Scalar>(a: &Matrix<T>) -> Result<SvdResult<T>> {
    let (m, n) = a.shape();
    if m < n {
        let s = svd(&a.adjoint())?;
        return Ok(SvdResult {
            u: s.v,
            sigma: s.sigma,
            v: s.u,
        });
    }
    if m > n {
        let qr = thin_qr(a)?;
        let s = square_svd(&qr.r_factor)?;
        return Ok(SvdResult {
            u: &qr.q * &s.u,
            sigma: s.sigma,
            v: s.v,
        });
    }
    square_svd(a)
}

/// One-sided Jacobi SVD of a square matrix.
fn square_svd<T: Scalar>(a: &Matrix<T>) -> Result<SvdResult<T>> {
    let n = a.cols();
    let mut w = a.clone();
    let mut v = Matrix::<T>::identity(n);
    let tol = (a.rows().max(1) as f64) * f64::EPSILON;
    let negligible = f64::EPSILON * a.frobenius_norm();
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                rotated |= jacobi_rotate(&mut w, &mut v, p, q, tol, negligible);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::Numerical("Jacobi SVD did not converge".into()));
    }

    let norms: Vec<f64> = (0..n)
        .map(|j| w.column(j).iter().map(|x| x.abs_sq()).sum::<f64>().sqrt())
        .collect();
    let order = descending_order(&norms);
    let sigma: Vec<f64> = order.iter().map(|&j| norms[j]).collect();
    let mut u = Matrix::<T>::zeros(a.rows(), n);
    let mut filled = Vec::with_capacity(n);
    for (c, &j) in order.iter().enumerate() {
        if norms[j] == 0.0 {
            continue;
        }
        let inv = T::from_re(1.0 / norms[j]);
        let cand: Vec<T> = w.column(j).iter().map(|&x| x * inv).collect();
        if accept_orthogonal(&mut u, &filled, c, cand) {
            filled.push(c);
        }
    }
    complete_orthonormal(&mut u, &filled);
    Ok(SvdResult {
        u,
        sigma,
        v: select_columns(&v, &order),
    })
}

const JACOBI_MAX_SWEEPS: usize = 80;

/// Orthogonalizes columns `p` and `q` of `w`, mirroring the rotation in
/// `v`. Returns false when `|a_p* a_q| ≤ tol · ‖a_p‖‖a_q‖`, the level at
/// which the computed inner product is dominated by rounding, or when
/// either column is below `negligible` in norm.
fn jacobi_rotate<T: Scalar>(w: &mut Matrix<T>, v: &mut Matrix<T>, p: usize, q: usize, tol: f64, negligible: f64) -> bool {
    let (mut alpha, mut beta, mut gamma) = (0.0, 0.0, T::zero());
    for (x, y) in w.column(p).iter().zip(w.column(q)) {
        alpha += x.abs_sq();
        beta += y.abs_sq();
        gamma += x.conj() * *y;
    }
    let g = gamma.abs_sq().sqrt();
    if g == 0.0 || g <= tol * (alpha * beta).sqrt() || alpha.min(beta).sqrt() <= negligible {
        return false;
    }
    let phase = gamma * T::from_re(1.0 / g);
    let zeta = (beta - alpha) / (2.0 * g);
    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = c * t;
    let (c, s) = (T::from_re(c), T::from_re(s));
    let rot = |m: &mut Matrix<T>| {
        for i in 0..m.rows() {
            let x = m[(i, p)];
            let y = m[(i, q)] * phase.conj();
            m[(i, p)] = c * x - s * y;
            m[(i, q)] = s * x + c * y;
        }
    };
    rot(w);
    rot(v);
    true
}

/// Orthogonalizes a unit vector against the `filled` columns of `u` (two
/// Gram-Schmidt passes) and stores it in column `c` if at least half of
/// its norm survives.
fn accept_orthogonal<T: Scalar>(u: &mut Matrix<T>, filled: &[usize], c: usize, mut cand: Vec<T>) -> bool {
    for _ in 0..2 {
        for &b in filled {
            let col = u.column(b);
            let proj = col.iter().zip(&cand).fold(T::zero(), |acc, (x, y)| acc + x.conj() * *y);
            for (dst, &x) in cand.iter_mut().zip(col) {
                *dst -= x * proj;
            }
        }
    }
    let norm = cand.iter().map(|x| x.abs_sq()).sum::<f64>().sqrt();
    if norm <= 0.5 {
        return false;
    }
    let inv = T::from_re(1.0 / norm);
    for (dst, x) in u.column_mut(c).iter_mut().zip(cand) {
        *dst = x * inv;
    }
    true
}

/// Fills the columns of `u` not listed in `filled` with coordinate
/// vectors orthogonalized against the rest.
fn complete_orthonormal<T: Scalar>(u: &mut Matrix<T>, filled: &[usize]) {
    let (m, n) = u.shape();
    let mut basis: Vec<usize> = filled.to_vec();
    let mut e = 0;
    for c in 0..n {
        if filled.contains(&c) {
            continue;
        }
        while e < m {
            let mut cand = vec![T::zero(); m];
            cand[e] = T::one();
            e += 1;
            if accept_orthogonal(u, &basis, c, cand) {
                basis.push(c);
                break;
            }
        }
    }
}

/// Eigendecomposition of a Hermitian matrix.
///
/// The input is symmetrized as `(s + s*)/2` before factoring; inputs whose
/// Hermitian defect exceeds [`HERMITIAN_TOL`]` · max(1, ‖s‖_F)` are
/// rejected.
pub fn hermitian_eig<T: Scalar>(s: &Matrix<T>) -> Result<EigResult<T>> {
    let (n, c) = s.shape();
    if n != c {
        return Err(Error::DimensionMismatch {
            op: "hermitian_eig",
            lhs: (n, c),
            rhs: (c, n),
        });
    }
    let defect = s.hermitian_defect();
    if defect > HERMITIAN_TOL * s.frobenius_norm().max(1.0) {
        return Err(Error::arg(format!(
            "matrix is not Hermitian (defect {defect:.3e})"
        )));
    }
    let sym = s.hermitian_part();
    let dec = SymmetricEigen::try_new(to_na(&sym), f64::EPSILON, 0)
        .ok_or_else(|| Error::Numerical("eigensolver did not converge".into()))?;
    let raw: Vec<f64> = dec.eigenvalues.iter().copied().collect();
    let vectors = from_na(&dec.eigenvectors);
    let order = descending_order(&raw);
    Ok(EigResult {
        vectors: select_columns(&vectors, &order),
        values: order.iter().map(|&i| raw[i]).collect(),
    })
}

/// Applies the pseudoinverse of an upper-triangular `t` to `b`.
///
/// Uses back-substitution when the diagonal is safely bounded away from
/// zero (smallest magnitude above [`PINV_RCOND`] times the largest);
/// otherwise falls back to an SVD pseudoinverse that discards singular
/// values below the same relative cutoff.
pub fn tri_pinv_apply<T: Scalar>(t: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    let k = t.rows();
    if t.cols() != k || b.rows() != k {
        return Err(Error::DimensionMismatch {
            op: "tri_pinv_apply",
            lhs: t.shape(),
            rhs: b.shape(),
        });
    }
    let diag: Vec<f64> = (0..k).map(|i| t[(i, i)].abs_sq().sqrt()).collect();
    let max_d = diag.iter().copied().fold(0.0, f64::max);
    let min_d = diag.iter().copied().fold(f64::INFINITY, f64::min);

    if max_d > 0.0 && min_d > PINV_RCOND * max_d {
        let mut x = b.clone();
        for c in 0..x.cols() {
            let col = x.column_mut(c);
            for i in (0..k).rev() {
                let mut acc = col[i];
                for j in i + 1..k {
                    acc -= t[(i, j)] * col[j];
                }
                col[i] = acc / t[(i, i)];
            }
        }
        return Ok(x);
    }
    pinv_apply(t, b)
}

/// `a† · b` through the SVD of `a`, zeroing singular values below
/// [`PINV_RCOND`]` · σ_max`.
pub fn pinv_apply<T: Scalar>(a: &Matrix<T>, b: &Matrix<T>) -> Result<Matrix<T>> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: "pinv_apply",
            lhs: a.shape(),
            rhs: b.shape(),
        });
    }
    let s = svd(a)?;
    let smax = s.sigma.first().copied().unwrap_or(0.0);
    let inv: Vec<f64> = s
        .sigma
        .iter()
        .map(|&x| if smax > 0.0 && x > PINV_RCOND * smax { 1.0 / x } else { 0.0 })
        .collect();
    let utb = s.u.adjoint_matmul(b)?;
    let mut scaled = utb;
    for (i, &w) in inv.iter().enumerate() {
        let w = T::from_re(w);
        for c in 0..scaled.cols() {
            scaled[(i, c)] *= w;
        }
    }
    s.v.matmul(&scaled)
}
