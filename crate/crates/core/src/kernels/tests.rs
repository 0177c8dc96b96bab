use num_complex::Complex64;
use proptest::prelude::*;

use super::*;
use crate::randgen::{gaussian_matrix, RngStream};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn rand_mat<T: Scalar>(seed: u64, rows: usize, cols: usize) -> Matrix<T> {
    gaussian_matrix(&mut RngStream::new(seed, 0), rows, cols)
}

#[test]
fn qr_of_identity() {
    let qr = thin_qr(&Matrix::<f64>::identity(3)).unwrap();
    for i in 0..3 {
        assert!((qr.r_factor[(i, i)].abs() - 1.0).abs() < 1e-15);
        for j in 0..3 {
            let expect = if i == j { 1.0 } else { 0.0 };
            assert!((qr.q[(i, j)].abs() - expect).abs() < 1e-15);
        }
    }
}

#[test]
fn qr_of_zero_matrix() {
    let qr = thin_qr(&Matrix::<Complex64>::zeros(4, 2)).unwrap();
    assert_eq!(qr.q.shape(), (4, 2));
    assert_eq!(qr.r_factor.frobenius_norm(), 0.0);
    assert!(orthonormality_defect(&qr.q) < 1e-15);
}

#[test]
fn qr_random_complex_reconstructs() {
    let a: Matrix<Complex64> = rand_mat(11, 50, 8);
    let qr = thin_qr(&a).unwrap();
    assert_eq!(qr.q.shape(), (50, 8));
    assert!(orthonormality_defect(&qr.q) < 1e-12);
    let back = &qr.q * &qr.r_factor;
    assert!(back.distance(&a) <= 1e-12 * a.frobenius_norm().max(1.0));
    for i in 0..8 {
        for j in 0..i {
            assert_eq!(qr.r_factor[(i, j)], c(0.0, 0.0));
        }
    }
}

#[test]
fn qr_rejects_wide_input() {
    assert!(matches!(
        thin_qr(&Matrix::<f64>::zeros(2, 3)),
        Err(crate::Error::DimensionMismatch { .. })
    ));
}

#[test]
fn qr_keeps_all_columns_for_rank_deficient_input() {
    let b: Matrix<f64> = rand_mat(12, 30, 2);
    let a = b.hcat(&b).unwrap();
    let qr = thin_qr(&a).unwrap();
    assert_eq!(qr.q.cols(), 4);
    assert!(orthonormality_defect(&qr.q) < 1e-12);
    assert!((&qr.q * &qr.r_factor).distance(&a) < 1e-12 * a.frobenius_norm());
}

#[test]
fn svd_of_diagonal_and_zero() {
    let s = svd(&Matrix::<f64>::from_real_diag(&[1.0, 3.0])).unwrap();
    assert!((s.sigma[0] - 3.0).abs() < 1e-14 && (s.sigma[1] - 1.0).abs() < 1e-14);
    let z = svd(&Matrix::<Complex64>::zeros(3, 5)).unwrap();
    assert!(z.sigma.iter().all(|&x| x == 0.0));
    assert_eq!(z.sigma.len(), 3);
}

#[test]
fn svd_matches_eigenvalues_of_gram() {
    let a: Matrix<Complex64> = rand_mat(13, 6, 9);
    let s = svd(&a).unwrap();
    let back = s.u.scale_columns(&s.sigma).matmul_adjoint(&s.v).unwrap();
    assert!(back.distance(&a) <= 1e-12 * a.frobenius_norm());
    assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));

    // Independent route: eigenvalues of a*a.
    let gram = a.adjoint_matmul(&a).unwrap();
    let e = hermitian_eig(&gram).unwrap();
    let scale = s.sigma[0] * s.sigma[0];
    for (i, &sig) in s.sigma.iter().enumerate() {
        assert!((sig * sig - e.values[i]).abs() < 1e-10 * scale);
    }
    for &lam in &e.values[6..] {
        assert!(lam.abs() < 1e-10 * scale);
    }
}

fn svd_residual<T: Scalar>(a: &Matrix<T>) -> f64 {
    let s = svd(a).unwrap();
    assert!(orthonormality_defect(&s.u) < 1e-12);
    assert!(orthonormality_defect(&s.v) < 1e-12);
    assert!(s.sigma.windows(2).all(|w| w[0] >= w[1]));
    let rec = s.u.scale_columns(&s.sigma).matmul_adjoint(&s.v).unwrap();
    rec.distance(a) / a.frobenius_norm().max(1.0)
}

#[test]
fn svd_is_accurate_on_rank_deficient_input() {
    for seed in 0..40 {
        let (m, n, r) = (20 + seed as usize, 3 + seed as usize % 9, 1 + seed as usize % 3);
        let a: Matrix<f64> = &rand_mat::<f64>(seed, m, r) * &rand_mat::<f64>(seed + 500, r, n);
        assert!(svd_residual(&a) < 1e-13, "real seed {seed}");
        let b: Matrix<Complex64> = &rand_mat::<Complex64>(seed, m, r) * &rand_mat::<Complex64>(seed + 500, r, n);
        assert!(svd_residual(&b) < 1e-13, "complex seed {seed}");
        assert!(svd_residual(&b.adjoint()) < 1e-13);
    }
    let z = Matrix::<Complex64>::zeros(5, 3);
    assert_eq!(svd_residual(&z), 0.0);
}

#[test]
fn hermitian_eig_small_cases() {
    let e = hermitian_eig(&Matrix::<f64>::from_real_diag(&[-1.0, 2.0])).unwrap();
    assert_eq!(e.values.len(), 2);
    assert!((e.values[0] - 2.0).abs() < 1e-15 && (e.values[1] + 1.0).abs() < 1e-15);
    let e = hermitian_eig(&Matrix::<Complex64>::identity(4)).unwrap();
    assert!(e.values.iter().all(|&v| (v - 1.0).abs() < 1e-15));
}

#[test]
fn hermitian_eig_trace_and_reconstruction() {
    let g: Matrix<Complex64> = rand_mat(14, 10, 10);
    let s = g.hermitian_part();
    let e = hermitian_eig(&s).unwrap();
    let trace: f64 = e.values.iter().sum();
    assert!((trace - s.trace().re).abs() < 1e-10);
    assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
    let back = e
        .vectors
        .scale_columns(&e.values)
        .matmul_adjoint(&e.vectors)
        .unwrap();
    assert!(back.distance(&s) < 1e-12 * s.frobenius_norm());
    assert!(orthonormality_defect(&e.vectors) < 1e-12);
}

/// Determinant by Gaussian elimination with partial pivoting.
fn det_oracle(a: &Matrix<f64>) -> f64 {
    let n = a.rows();
    let mut m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| a[(i, j)]).collect()).collect();
    let mut det = 1.0;
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&x, &y| m[x][col].abs().total_cmp(&m[y][col].abs()))
            .unwrap();
        if piv != col {
            m.swap(piv, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..n {
            let f = m[row][col] / m[col][col];
            for j in col..n {
                m[row][j] -= f * m[col][j];
            }
        }
    }
    det
}

#[test]
fn hermitian_eig_product_is_determinant() {
    for seed in 0..5 {
        let g: Matrix<f64> = rand_mat(100 + seed, 5, 5);
        let s = g.hermitian_part();
        let e = hermitian_eig(&s).unwrap();
        let prod: f64 = e.values.iter().product();
        let det = det_oracle(&s);
        assert!((prod - det).abs() <= 1e-8 * det.abs().max(1e-3), "{prod} vs {det}");
    }
}

#[test]
fn hermitian_eig_rejects_non_hermitian() {
    let a = Matrix::<f64>::from_row_major(2, 2, &[1.0, 2.0, 0.0, 1.0]).unwrap();
    assert!(matches!(hermitian_eig(&a), Err(crate::Error::Argument(_))));
}

#[test]
fn tri_pinv_identity_and_diagonal() {
    let b: Matrix<f64> = rand_mat(15, 3, 4);
    let x = tri_pinv_apply(&Matrix::identity(3), &b).unwrap();
    assert_eq!(x, b);
    let t = Matrix::<f64>::from_real_diag(&[2.0, 4.0]);
    let x = tri_pinv_apply(&t, &Matrix::identity(2)).unwrap();
    assert_eq!(x, Matrix::from_real_diag(&[0.5, 0.25]));
}

#[test]
fn tri_pinv_singular_falls_back_to_pseudoinverse() {
    let t = Matrix::<f64>::from_row_major(2, 2, &[1.0, 1.0, 0.0, 0.0]).unwrap();
    let x = tri_pinv_apply(&t, &Matrix::identity(2)).unwrap();
    // t = e₁(1, 1), so t† = (1, 1)ᵀ e₁ᵀ / 2.
    let expect = Matrix::from_row_major(2, 2, &[0.5, 0.0, 0.5, 0.0]).unwrap();
    assert!(x.distance(&expect) < 1e-14);
}

#[test]
fn tri_pinv_matches_dense_pinv_on_well_conditioned_input() {
    for seed in 0..10 {
        let g: Matrix<Complex64> = rand_mat(200 + seed, 7, 7);
        let t = Matrix::from_fn(7, 7, |i, j| {
            if i == j {
                g[(i, j)] + c(4.0, 0.0)
            } else if i < j {
                g[(i, j)]
            } else {
                c(0.0, 0.0)
            }
        });
        let b: Matrix<Complex64> = rand_mat(300 + seed, 7, 3);
        let fast = tri_pinv_apply(&t, &b).unwrap();
        let slow = pinv_apply(&t, &b).unwrap();
        assert!(fast.distance(&slow) <= 1e-8 * slow.frobenius_norm());
    }
}

#[test]
fn matmul_basics() {
    let a: Matrix<Complex64> = rand_mat(16, 3, 4);
    let b: Matrix<Complex64> = rand_mat(17, 4, 2);
    assert_eq!(matmul(&Matrix::identity(3), &a).unwrap(), a);
    let lhs = adjoint(&matmul(&a, &b).unwrap());
    let rhs = matmul(&adjoint(&b), &adjoint(&a)).unwrap();
    assert!(lhs.distance(&rhs) < 1e-14);
    assert_eq!(matmul(&a, &Matrix::zeros(4, 5)).unwrap(), Matrix::zeros(3, 5));
    assert!(matmul(&a, &a).is_err());
    assert_eq!(adjoint(&adjoint(&a)), a);
}

#[test]
fn sparse_left_operand_path_agrees() {
    let d = Matrix::<Complex64>::from_real_diag(&[1.0, 0.5, 0.0, 2.0, 3.0, 0.0]);
    let b: Matrix<Complex64> = rand_mat(18, 6, 4);
    let dense = Matrix::from_fn(6, 4, |i, j| d[(i, i)] * b[(i, j)]);
    assert!((&d * &b).distance(&dense) < 1e-15);
    let ab = d.adjoint_matmul(&b).unwrap();
    assert!(ab.distance(&dense) < 1e-15);
}

fn qr_property<T: Scalar>(m: usize, k: usize, seed: u64) -> std::result::Result<(), TestCaseError> {
    let a: Matrix<T> = rand_mat(seed, m, k);
    let qr = thin_qr(&a).unwrap();
    prop_assert!(orthonormality_defect(&qr.q) <= 1e-10);
    prop_assert!((&qr.q * &qr.r_factor).distance(&a) <= 1e-10 * a.frobenius_norm());
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn thin_qr_is_orthonormal_and_exact(k in 1usize..12, extra in 0usize..40, seed in any::<u64>(), complex in any::<bool>()) {
        if complex {
            qr_property::<Complex64>(k + extra, k, seed)?;
        } else {
            qr_property::<f64>(k + extra, k, seed)?;
        }
    }

    #[test]
    fn singular_values_invariant_under_adjoint(m in 1usize..10, n in 1usize..10, seed in any::<u64>()) {
        let a: Matrix<Complex64> = rand_mat(seed, m, n);
        let s1 = svd(&a).unwrap().sigma;
        let s2 = svd(&a.adjoint()).unwrap().sigma;
        for (x, y) in s1.iter().zip(&s2) {
            prop_assert!((x - y).abs() <= 1e-10 * s1[0].max(1.0));
        }
    }

    #[test]
    fn eig_trace_and_determinant(n in 1usize..6, seed in any::<u64>()) {
        let s = rand_mat::<f64>(seed, n, n).hermitian_part();
        let e = hermitian_eig(&s).unwrap();
        let tr: f64 = e.values.iter().sum();
        prop_assert!((tr - s.trace()).abs() <= 1e-8 * s.frobenius_norm().max(1.0));
        let prod: f64 = e.values.iter().product();
        let det = det_oracle(&s);
        let scale = s.frobenius_norm().max(1.0).powi(n as i32);
        prop_assert!((prod - det).abs() <= 1e-8 * scale);
    }
}
