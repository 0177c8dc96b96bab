//! C interface to `sketchlr`.
//!
//! Matrices cross the boundary as row-major `double` buffers. Complex
//! sketches use interleaved `(re, im)` pairs, so an `m × n` complex
//! matrix occupies `2mn` doubles. Every function returns an
//! [`SklrStatus`]; on failure [`sklr_last_error`] describes the cause.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};

use sketchlr::approx::{self, Approximation};
use sketchlr::params::{self, SplitRule};
use sketchlr::randgen::RngStream;
use sketchlr::sketch::{SketchParams, SketchState};
use sketchlr::{Complex64, Error, Field, Matrix, Scalar};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SklrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    DimensionMismatch = 3,
    Numerical = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SklrField {
    Real = 0,
    Complex = 1,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SklrSplitRule {
    Default = 0,
    Flat = 1,
    Decay = 2,
    Rapid = 3,
}

enum Inner {
    Real(SketchState<f64>),
    Complex(SketchState<Complex64>),
}

/// Opaque sketch handle. Create with [`sklr_sketch_new`], release with
/// [`sklr_sketch_free`].
pub struct SklrSketch {
    inner: Inner,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn fail(status: SklrStatus, msg: &str) -> SklrStatus {
    set_last_error(msg);
    status
}

fn from_error(err: Error) -> SklrStatus {
    let status = match err {
        Error::DimensionMismatch { .. } => SklrStatus::DimensionMismatch,
        Error::Numerical(_) => SklrStatus::Numerical,
        _ => SklrStatus::InvalidArgument,
    };
    fail(status, &err.to_string())
}

fn guard(f: impl FnOnce() -> SklrStatus) -> SklrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(s) => {
            if s == SklrStatus::Ok {
                set_last_error("");
            }
            s
        }
        Err(_) => fail(SklrStatus::Panic, "internal panic"),
    }
}

fn to_field(f: SklrField) -> Field {
    match f {
        SklrField::Real => Field::Real,
        SklrField::Complex => Field::Complex,
    }
}

fn doubles_per<T: Scalar>() -> usize {
    match T::FIELD {
        Field::Real => 1,
        Field::Complex => 2,
    }
}

fn scalar<T: Scalar>(re: f64, im: f64) -> Result<T, SklrStatus> {
    if T::FIELD == Field::Real && im != 0.0 {
        return Err(fail(SklrStatus::InvalidArgument, "imaginary part given for a real sketch"));
    }
    Ok(T::from_parts(re, im))
}

unsafe fn read_matrix<T: Scalar>(data: *const f64, len: usize, rows: usize, cols: usize) -> Result<Matrix<T>, SklrStatus> {
    if data.is_null() {
        return Err(fail(SklrStatus::NullPointer, "matrix buffer is null"));
    }
    let per = doubles_per::<T>();
    if len != rows * cols * per {
        return Err(fail(
            SklrStatus::DimensionMismatch,
            &format!("buffer holds {len} doubles, expected {}", rows * cols * per),
        ));
    }
    let raw = std::slice::from_raw_parts(data, len);
    let vals: Vec<T> = raw.chunks_exact(per).map(|c| T::from_parts(c[0], if per == 2 { c[1] } else { 0.0 })).collect();
    Matrix::from_row_major(rows, cols, &vals).map_err(from_error)
}

unsafe fn write_matrix<T: Scalar>(m: &Matrix<T>, out: *mut f64, len: usize) -> SklrStatus {
    if out.is_null() {
        return fail(SklrStatus::NullPointer, "output buffer is null");
    }
    let per = doubles_per::<T>();
    let (rows, cols) = m.shape();
    if len != rows * cols * per {
        return fail(
            SklrStatus::DimensionMismatch,
            &format!("output holds {len} doubles, expected {}", rows * cols * per),
        );
    }
    let dst = std::slice::from_raw_parts_mut(out, len);
    for i in 0..rows {
        for j in 0..cols {
            let x = m[(i, j)];
            let at = (i * cols + j) * per;
            dst[at] = x.re();
            if per == 2 {
                dst[at + 1] = x.im();
            }
        }
    }
    SklrStatus::Ok
}

unsafe fn handle<'a>(s: *mut SklrSketch) -> Result<&'a mut SklrSketch, SklrStatus> {
    s.as_mut().ok_or_else(|| fail(SklrStatus::NullPointer, "sketch handle is null"))
}

fn collapse(r: Result<SklrStatus, SklrStatus>) -> SklrStatus {
    r.unwrap_or_else(|s| s)
}

/// Creates a sketch of the `m × n` zero matrix with Gaussian test
/// matrices of sizes `k` and `l`, drawn from stream `(seed, stream)`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for one handle.
#[no_mangle]
pub unsafe extern "C" fn sklr_sketch_new(
    m: usize,
    n: usize,
    k: usize,
    l: usize,
    field: SklrField,
    seed: u64,
    stream: u64,
    out: *mut *mut SklrSketch,
) -> SklrStatus {
    guard(|| {
        if out.is_null() {
            return fail(SklrStatus::NullPointer, "output handle pointer is null");
        }
        let params = SketchParams::new(k, l);
        let mut rng = RngStream::new(seed, stream);
        let inner = match field {
            SklrField::Real => SketchState::empty(m, n, params, &mut rng).map(Inner::Real),
            SklrField::Complex => SketchState::empty(m, n, params, &mut rng).map(Inner::Complex),
        };
        match inner {
            Ok(inner) => {
                *out = Box::into_raw(Box::new(SklrSketch { inner }));
                SklrStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `s` must be null or a handle from [`sklr_sketch_new`] not yet freed.
#[no_mangle]
pub unsafe extern "C" fn sklr_sketch_free(s: *mut SklrSketch) {
    if !s.is_null() {
        drop(Box::from_raw(s));
    }
}

/// Writes the input dimensions.
///
/// # Safety
/// `s` must be a live handle; `m` and `n` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sklr_sketch_dims(s: *const SklrSketch, m: *mut usize, n: *mut usize) -> SklrStatus {
    guard(|| {
        let Some(s) = s.as_ref() else {
            return fail(SklrStatus::NullPointer, "sketch handle is null");
        };
        if m.is_null() || n.is_null() {
            return fail(SklrStatus::NullPointer, "dimension output is null");
        }
        let dims = match &s.inner {
            Inner::Real(st) => st.dims(),
            Inner::Complex(st) => st.dims(),
        };
        *m = dims.0;
        *n = dims.1;
        SklrStatus::Ok
    })
}

/// Applies `A ← θA + ηH` to the sketched matrix. `h` holds `H` row-major
/// with `len` doubles. Imaginary parts must be zero for real sketches.
///
/// # Safety
/// `s` must be a live handle and `h` must point to `len` readable doubles.
#[no_mangle]
pub unsafe extern "C" fn sklr_sketch_update(
    s: *mut SklrSketch,
    h: *const f64,
    len: usize,
    theta_re: f64,
    theta_im: f64,
    eta_re: f64,
    eta_im: f64,
) -> SklrStatus {
    unsafe fn apply<T: Scalar>(st: &mut SketchState<T>, h: *const f64, len: usize, th: (f64, f64), et: (f64, f64)) -> Result<SklrStatus, SklrStatus> {
        let (m, n) = st.dims();
        let hm = read_matrix::<T>(h, len, m, n)?;
        let (theta, eta) = (scalar::<T>(th.0, th.1)?, scalar::<T>(et.0, et.1)?);
        Ok(st.linear_update(&hm, theta, eta).map_or_else(from_error, |_| SklrStatus::Ok))
    }
    guard(|| {
        collapse(handle(s).and_then(|s| match &mut s.inner {
            Inner::Real(st) => apply(st, h, len, (theta_re, theta_im), (eta_re, eta_im)),
            Inner::Complex(st) => apply(st, h, len, (theta_re, theta_im), (eta_re, eta_im)),
        }))
    })
}

/// Adds `value` to entry `(i, j)` of the sketched matrix.
///
/// # Safety
/// `s` must be a live handle.
#[no_mangle]
pub unsafe extern "C" fn sklr_sketch_add_entry(s: *mut SklrSketch, i: usize, j: usize, re: f64, im: f64) -> SklrStatus {
    fn apply<T: Scalar>(st: &mut SketchState<T>, i: usize, j: usize, re: f64, im: f64) -> Result<SklrStatus, SklrStatus> {
        let v = scalar::<T>(re, im)?;
        Ok(st.add_entry(i, j, v).map_or_else(from_error, |_| SklrStatus::Ok))
    }
    guard(|| {
        collapse(handle(s).and_then(|s| match &mut s.inner {
            Inner::Real(st) => apply(st, i, j, re, im),
            Inner::Complex(st) => apply(st, i, j, re, im),
        }))
    })
}

unsafe fn reconstruct(s: *mut SklrSketch, rank: Option<usize>, out: *mut f64, len: usize) -> SklrStatus {
    unsafe fn apply<T: Scalar>(st: &SketchState<T>, rank: Option<usize>, out: *mut f64, len: usize) -> SklrStatus {
        let dense = match rank {
            Some(r) => approx::fixed_rank(st, r).map(|a| a.to_dense()),
            None => approx::low_rank(st).map(|a| a.to_dense()),
        };
        match dense {
            Ok(d) => write_matrix(&d, out, len),
            Err(e) => from_error(e),
        }
    }
    guard(|| {
        collapse(handle(s).map(|s| match &s.inner {
            Inner::Real(st) => apply(st, rank, out, len),
            Inner::Complex(st) => apply(st, rank, out, len),
        }))
    })
}

/// Writes the rank-k reconstruction `QX` row-major into `out`.
///
/// # Safety
/// `s` must be a live handle and `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sklr_sketch_low_rank(s: *mut SklrSketch, out: *mut f64, len: usize) -> SklrStatus {
    reconstruct(s, None, out, len)
}

/// Writes the rank-`r` truncation `Q[[X]]_r` row-major into `out`.
///
/// # Safety
/// `s` must be a live handle and `out` must point to `len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn sklr_sketch_fixed_rank(s: *mut SklrSketch, r: usize, out: *mut f64, len: usize) -> SklrStatus {
    reconstruct(s, Some(r), out, len)
}

/// Sketch sizes `(k, l)` for target rank `r` and budget `t = k + l`.
/// The default rule ignores `t`.
///
/// # Safety
/// `k` and `l` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sklr_split(rule: SklrSplitRule, r: usize, t: usize, field: SklrField, k: *mut usize, l: *mut usize) -> SklrStatus {
    guard(|| {
        if k.is_null() || l.is_null() {
            return fail(SklrStatus::NullPointer, "split output is null");
        }
        let field = to_field(field);
        let choice = match rule {
            SklrSplitRule::Default => params::default_split(r, field),
            SklrSplitRule::Flat => params::theory_split(SplitRule::Flat, r, t, field),
            SklrSplitRule::Decay => params::theory_split(SplitRule::Decay, r, t, field),
            SklrSplitRule::Rapid => params::theory_split(SplitRule::Rapid, r, t, field),
        };
        match choice {
            Ok(c) => {
                *k = c.k;
                *l = c.l;
                SklrStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// `f(s, t) = s / (t - s - α)`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sklr_f_factor(s: usize, t: usize, field: SklrField, out: *mut f64) -> SklrStatus {
    guard(|| {
        if out.is_null() {
            return fail(SklrStatus::NullPointer, "output is null");
        }
        match params::f_factor(s, t, to_field(field)) {
            Ok(v) => {
                *out = v;
                SklrStatus::Ok
            }
            Err(e) => from_error(e),
        }
    })
}

/// Message for the last failure on this thread, or an empty string.
/// Valid until the next call into the library from the same thread.
#[no_mangle]
pub extern "C" fn sklr_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn sklr_status_str(status: SklrStatus) -> *const c_char {
    let s: &'static std::ffi::CStr = match status {
        SklrStatus::Ok => c"ok",
        SklrStatus::NullPointer => c"null pointer",
        SklrStatus::InvalidArgument => c"invalid argument",
        SklrStatus::DimensionMismatch => c"dimension mismatch",
        SklrStatus::Numerical => c"numerical failure",
        SklrStatus::Panic => c"internal panic",
    };
    s.as_ptr()
}
