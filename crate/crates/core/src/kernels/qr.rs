use super::{Matrix, Scalar};
use crate::{Error, Result};

/// Economy QR factorization `a = q · r_factor`.
#[derive(Debug, Clone)]
pub struct QrThin<T: Scalar> {
    /// `m × k` with orthonormal columns.
    pub q: Matrix<T>,
    /// `k × k` upper triangular.
    pub r_factor: Matrix<T>,
}

/// Householder QR of an `m × k` matrix with `m ≥ k`.
///
/// Always returns exactly `k` orthonormal columns. A column whose trailing
/// part is exactly zero gets no reflector, leaving the matching diagonal
/// entry of `r_factor` at zero and the identity column in `q`; downstream
/// solves go through [`tri_pinv_apply`](super::tri_pinv_apply), which
/// handles that case.
pub fn thin_qr<T: Scalar>(a: &Matrix<T>) -> Result<QrThin<T>> {
    let (m, k) = a.shape();
    if m < k {
        return Err(Error::DimensionMismatch {
            op: "thin_qr (needs rows >= cols)",
            lhs: (m, k),
            rhs: (k, k),
        });
    }
    let mut work = a.clone();
    let mut reflectors: Vec<Option<Vec<T>>> = Vec::with_capacity(k);

    for j in 0..k {
        let x = &work.column(j)[j..];
        let norm = x.iter().map(|v| v.abs_sq()).sum::<f64>().sqrt();
        if norm == 0.0 {
            reflectors.push(None);
            continue;
        }
        let x0 = x[0];
        let x0_abs = x0.abs_sq().sqrt();
        let phase = if x0_abs == 0.0 {
            T::from_re(1.0)
        } else {
            x0 * T::from_re(1.0 / x0_abs)
        };
        let alpha = -(phase * T::from_re(norm));
        let mut v: Vec<T> = x.to_vec();
        v[0] -= alpha;
        let vnorm = v.iter().map(|z| z.abs_sq()).sum::<f64>().sqrt();
        if vnorm == 0.0 {
            reflectors.push(None);
            continue;
        }
        let inv = T::from_re(1.0 / vnorm);
        for z in v.iter_mut() {
            *z *= inv;
        }
        for c in j..k {
            apply_reflector(&v, &mut work.column_mut(c)[j..]);
        }
        reflectors.push(Some(v));
    }

    let r_factor = Matrix::from_fn(k, k, |i, c| {
        if i <= c {
            work[(i, c)]
        } else {
            T::from_re(0.0)
        }
    });

    let mut q = Matrix::eye(m, k);
    for (j, refl) in reflectors.iter().enumerate().rev() {
        if let Some(v) = refl {
            for c in j..k {
                apply_reflector(v, &mut q.column_mut(c)[j..]);
            }
        }
    }
    Ok(QrThin { q, r_factor })
}

/// `x ← (I − 2vv*) x` for a unit vector `v`.
#[inline]
fn apply_reflector<T: Scalar>(v: &[T], x: &mut [T]) {
    let mut s = T::from_re(0.0);
    for (vi, xi) in v.iter().zip(x.iter()) {
        s += vi.conj() * *xi;
    }
    let s2 = s * T::from_re(2.0);
    for (vi, xi) in v.iter().zip(x.iter_mut()) {
        *xi -= *vi * s2;
    }
}
