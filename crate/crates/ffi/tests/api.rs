use std::ffi::CStr;
use std::ptr;

use sketchlr_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(sklr_last_error()) }.to_string_lossy().into_owned()
}

fn new_sketch(m: usize, n: usize, k: usize, l: usize, field: SklrField) -> *mut SklrSketch {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { sklr_sketch_new(m, n, k, l, field, 11, 0, &mut h) }, SklrStatus::Ok);
    assert!(!h.is_null());
    h
}

fn rank_two(m: usize, n: usize) -> Vec<f64> {
    (0..m * n)
        .map(|t| {
            let (i, j) = ((t / n) as f64, (t % n) as f64);
            (i + 1.0) * (j - 2.0) + 0.5 * (i * i - 3.0) * (j + 1.0).sqrt()
        })
        .collect()
}

#[test]
fn real_round_trip_recovers_rank_two() {
    let (m, n) = (12, 9);
    let s = new_sketch(m, n, 4, 9, SklrField::Real);
    let a = rank_two(m, n);
    assert_eq!(unsafe { sklr_sketch_update(s, a.as_ptr(), a.len(), 1.0, 0.0, 1.0, 0.0) }, SklrStatus::Ok);
    let mut out = vec![0.0; m * n];
    assert_eq!(unsafe { sklr_sketch_fixed_rank(s, 2, out.as_mut_ptr(), out.len()) }, SklrStatus::Ok);
    let err: f64 = a.iter().zip(&out).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt();
    let norm: f64 = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    assert!(err <= 1e-9 * norm, "{err}");
    assert_eq!(unsafe { sklr_sketch_low_rank(s, out.as_mut_ptr(), out.len()) }, SklrStatus::Ok);
    let (mut mm, mut nn) = (0, 0);
    assert_eq!(unsafe { sklr_sketch_dims(s, &mut mm, &mut nn) }, SklrStatus::Ok);
    assert_eq!((mm, nn), (m, n));
    unsafe { sklr_sketch_free(s) };
}

#[test]
fn complex_entries_and_scaling() {
    let (m, n) = (6, 5);
    let s = new_sketch(m, n, 2, 4, SklrField::Complex);
    assert_eq!(unsafe { sklr_sketch_add_entry(s, 1, 3, 2.0, -1.0) }, SklrStatus::Ok);
    let zeros = vec![0.0; 2 * m * n];
    assert_eq!(unsafe { sklr_sketch_update(s, zeros.as_ptr(), zeros.len(), 0.0, 2.0, 1.0, 0.0) }, SklrStatus::Ok);
    let mut out = vec![0.0; 2 * m * n];
    assert_eq!(unsafe { sklr_sketch_fixed_rank(s, 1, out.as_mut_ptr(), out.len()) }, SklrStatus::Ok);
    let at = 2 * (n + 3);
    // 2i · (2 - i) = 2 + 4i
    assert!((out[at] - 2.0).abs() < 1e-10 && (out[at + 1] - 4.0).abs() < 1e-10);
    let rest: f64 = out.iter().enumerate().filter(|(t, _)| *t != at && *t != at + 1).map(|(_, v)| v.abs()).sum();
    assert!(rest < 1e-10);
    unsafe { sklr_sketch_free(s) };
}

#[test]
fn errors_are_reported() {
    let mut h = ptr::null_mut();
    assert_eq!(unsafe { sklr_sketch_new(5, 5, 4, 2, SklrField::Real, 0, 0, &mut h) }, SklrStatus::InvalidArgument);
    assert!(h.is_null());
    assert!(!last_error().is_empty());
    assert_eq!(unsafe { sklr_sketch_new(5, 5, 2, 4, SklrField::Real, 0, 0, ptr::null_mut()) }, SklrStatus::NullPointer);

    let s = new_sketch(5, 5, 2, 4, SklrField::Real);
    assert!(last_error().is_empty());
    let short = [1.0; 7];
    assert_eq!(unsafe { sklr_sketch_update(s, short.as_ptr(), short.len(), 1.0, 0.0, 1.0, 0.0) }, SklrStatus::DimensionMismatch);
    assert!(last_error().contains("expected 25"), "{}", last_error());
    assert_eq!(unsafe { sklr_sketch_add_entry(s, 0, 0, 1.0, 1.0) }, SklrStatus::InvalidArgument);
    assert_eq!(unsafe { sklr_sketch_add_entry(s, 5, 0, 1.0, 0.0) }, SklrStatus::InvalidArgument);
    let mut out = [0.0; 25];
    assert_eq!(unsafe { sklr_sketch_fixed_rank(s, 3, out.as_mut_ptr(), out.len()) }, SklrStatus::InvalidArgument);
    assert_eq!(unsafe { sklr_sketch_fixed_rank(s, 1, out.as_mut_ptr(), 24) }, SklrStatus::DimensionMismatch);
    assert_eq!(unsafe { sklr_sketch_low_rank(ptr::null_mut(), out.as_mut_ptr(), 25) }, SklrStatus::NullPointer);
    unsafe { sklr_sketch_free(s) };
    unsafe { sklr_sketch_free(ptr::null_mut()) };
    let name = unsafe { CStr::from_ptr(sklr_status_str(SklrStatus::DimensionMismatch)) };
    assert_eq!(name.to_str().unwrap(), "dimension mismatch");
}

#[test]
fn parameter_helpers() {
    let (mut k, mut l) = (0, 0);
    let cases = [
        (SklrSplitRule::Flat, (12, 36)),
        (SklrSplitRule::Decay, (16, 32)),
        (SklrSplitRule::Rapid, (23, 25)),
        (SklrSplitRule::Default, (10, 20)),
    ];
    for (rule, want) in cases {
        assert_eq!(unsafe { sklr_split(rule, 5, 48, SklrField::Complex, &mut k, &mut l) }, SklrStatus::Ok);
        assert_eq!((k, l), want);
    }
    assert_eq!(unsafe { sklr_split(SklrSplitRule::Decay, 5, 10, SklrField::Complex, &mut k, &mut l) }, SklrStatus::InvalidArgument);
    let mut f = 0.0;
    assert_eq!(unsafe { sklr_f_factor(4, 10, SklrField::Real, &mut f) }, SklrStatus::Ok);
    assert!((f - 0.8).abs() < 1e-15);
    assert_eq!(unsafe { sklr_f_factor(4, 4, SklrField::Complex, &mut f) }, SklrStatus::InvalidArgument);
}
