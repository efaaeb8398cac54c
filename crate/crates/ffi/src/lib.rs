//! C ABI for `torfilter`.
//!
//! Objects cross the boundary as opaque handles (`TfDilation`, `TfFilter`)
//! created by `*_new`/`*_from_*` and released with the matching `*_free`.
//! Every fallible call returns a `TfStatus`; on failure the message is
//! available from `tf_last_error_message` on the same thread. Results are
//! written through caller-provided pointers. Complex numbers are split into
//! separate real and imaginary arrays.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use torfilter::completion::householder_complete;
use torfilter::filters::validate_low_pass;
use torfilter::lattice::DilationMatrix;
use torfilter::obstruction::{check_identities, h0_value};
use torfilter::torus::TorusFunction;
use torfilter::{cascade, Complex64, Error};

/// Status code returned by every fallible function.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TfStatus {
    Ok = 0,
    NullPointer = 1,
    BufferTooSmall = 2,
    InvalidArgument = 3,
    Singular = 4,
    NotExpanding = 5,
    DimensionMismatch = 6,
    NotUnit = 7,
    NotNormalized = 8,
    BadDepth = 9,
    NoCoefficientForm = 10,
    PoleSingularity = 11,
    Failed = 12,
    Panic = 13,
}

impl From<&Error> for TfStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::Singular => TfStatus::Singular,
            Error::NotExpanding { .. } => TfStatus::NotExpanding,
            Error::NotSquare { .. } | Error::DimensionMismatch { .. } => TfStatus::DimensionMismatch,
            Error::NotUnit(_) => TfStatus::NotUnit,
            Error::NotNormalized(_) => TfStatus::NotNormalized,
            Error::BadDepth => TfStatus::BadDepth,
            Error::NoCoefficientForm => TfStatus::NoCoefficientForm,
            Error::PoleSingularity { .. } => TfStatus::PoleSingularity,
            Error::Parse(_) | Error::BadResolution(_) | Error::OffSphere(_) => TfStatus::InvalidArgument,
            _ => TfStatus::Failed,
        }
    }
}

/// An expanding integer dilation matrix.
pub struct TfDilation(DilationMatrix);

/// A trigonometric polynomial on the n-torus.
pub struct TfFilter(TorusFunction);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn fail(status: TfStatus, msg: impl Into<String>) -> TfStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> TfStatus {
    let status = TfStatus::from(&e);
    fail(status, e.to_string())
}

fn guard<F>(body: F) -> TfStatus
where
    F: FnOnce() -> Result<(), TfStatus>,
{
    clear_error();
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => TfStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(TfStatus::Panic, "internal panic"),
    }
}

macro_rules! non_null {
    ($($p:ident),+) => {
        $(if $p.is_null() {
            return Err(fail(TfStatus::NullPointer, concat!("`", stringify!($p), "` is null")));
        })+
    };
}

unsafe fn slice_or_empty<'a, T>(p: *const T, len: usize) -> &'a [T] {
    if len == 0 {
        &[]
    } else {
        slice::from_raw_parts(p, len)
    }
}

/// Message of the last failed call on this thread, or NULL. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn tf_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn tf_version() -> *const c_char {
    static VERSION: &CStr = match CStr::from_bytes_with_nul(concat!(env!("CARGO_PKG_VERSION"), "\0").as_bytes()) {
        Ok(v) => v,
        Err(_) => panic!("version string contains NUL"),
    };
    VERSION.as_ptr()
}

/// Builds a dilation matrix from `dim * dim` row-major entries.
///
/// # Safety
/// `entries` must point to `dim * dim` readable values and `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn tf_dilation_new(entries: *const i64, dim: usize, out: *mut *mut TfDilation) -> TfStatus {
    guard(|| {
        non_null!(entries, out);
        if dim == 0 {
            return Err(fail(TfStatus::InvalidArgument, "dimension must be positive"));
        }
        let flat = slice::from_raw_parts(entries, dim * dim);
        let rows: Vec<Vec<i64>> = flat.chunks(dim).map(<[i64]>::to_vec).collect();
        let a = DilationMatrix::from_rows(&rows).map_err(from_error)?;
        *out = Box::into_raw(Box::new(TfDilation(a)));
        Ok(())
    })
}

/// Releases a dilation handle. NULL is ignored.
///
/// # Safety
/// `a` must come from `tf_dilation_new` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tf_dilation_free(a: *mut TfDilation) {
    if !a.is_null() {
        drop(Box::from_raw(a));
    }
}

/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_dilation_dim(a: *const TfDilation, out: *mut usize) -> TfStatus {
    guard(|| {
        non_null!(a, out);
        *out = (*a).0.dim();
        Ok(())
    })
}

/// `q = |det A|`.
///
/// # Safety
/// `a` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_dilation_q(a: *const TfDilation, out: *mut u64) -> TfStatus {
    guard(|| {
        non_null!(a, out);
        *out = (*a).0.q();
        Ok(())
    })
}

/// Writes the `q` coset representatives of `Zⁿ/AZⁿ`, row-major `q × n`.
///
/// # Safety
/// `a` must be a live handle; `buf` must hold `len` writable values.
#[no_mangle]
pub unsafe extern "C" fn tf_dilation_coset_reps(a: *const TfDilation, buf: *mut i64, len: usize) -> TfStatus {
    guard(|| {
        non_null!(a, buf);
        let reps = (*a).0.coset_representatives();
        let flat: Vec<i64> = reps.iter().flatten().copied().collect();
        if len < flat.len() {
            return Err(fail(TfStatus::BufferTooSmall, format!("need {} values", flat.len())));
        }
        ptr::copy_nonoverlapping(flat.as_ptr(), buf, flat.len());
        Ok(())
    })
}

/// Writes the dual group `F` as exact fractions, row-major `q × n`: the
/// element `(i, j)` is `num[i*n + j] / den[i*n + j]` in `[0, 1)`.
///
/// # Safety
/// `a` must be a live handle; `num` and `den` must each hold `len` writable
/// values.
#[no_mangle]
pub unsafe extern "C" fn tf_dilation_dual_group(
    a: *const TfDilation,
    num: *mut i64,
    den: *mut i64,
    len: usize,
) -> TfStatus {
    guard(|| {
        non_null!(a, num, den);
        let dual = (*a).0.dual_group();
        let flat: Vec<_> = dual.elements().iter().flatten().collect();
        if len < flat.len() {
            return Err(fail(TfStatus::BufferTooSmall, format!("need {} values", flat.len())));
        }
        for (i, r) in flat.iter().enumerate() {
            *num.add(i) = *r.numer();
            *den.add(i) = *r.denom();
        }
        Ok(())
    })
}

/// Builds a trigonometric polynomial `Σ c_k e^{2πi k·x}` in dimension `dim`
/// from `count` terms: `ks` holds the frequencies row-major (`count × dim`),
/// `re`/`im` the coefficients. Repeated frequencies are summed.
///
/// # Safety
/// `ks` must hold `count * dim` values and `re`, `im` `count` values each;
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_filter_from_coeffs(
    dim: usize,
    ks: *const i64,
    re: *const f64,
    im: *const f64,
    count: usize,
    out: *mut *mut TfFilter,
) -> TfStatus {
    guard(|| {
        non_null!(out);
        if count > 0 {
            non_null!(ks, re, im);
        }
        if dim == 0 {
            return Err(fail(TfStatus::InvalidArgument, "dimension must be positive"));
        }
        let ks = slice_or_empty(ks, count * dim);
        let re = slice_or_empty(re, count);
        let im = slice_or_empty(im, count);
        let terms = (0..count).map(|i| (ks[i * dim..(i + 1) * dim].to_vec(), Complex64::new(re[i], im[i])));
        let f = TorusFunction::from_coeffs(dim, terms).map_err(from_error)?;
        *out = Box::into_raw(Box::new(TfFilter(f)));
        Ok(())
    })
}

/// Releases a filter handle. NULL is ignored.
///
/// # Safety
/// `f` must come from `tf_filter_from_coeffs` and not have been freed.
#[no_mangle]
pub unsafe extern "C" fn tf_filter_free(f: *mut TfFilter) {
    if !f.is_null() {
        drop(Box::from_raw(f));
    }
}

/// Evaluates the filter at `x` (`dim` coordinates).
///
/// # Safety
/// `f` must be a live handle, `x` must hold `dim` values, `re` and `im` must
/// be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_filter_eval(
    f: *const TfFilter,
    x: *const f64,
    dim: usize,
    re: *mut f64,
    im: *mut f64,
) -> TfStatus {
    guard(|| {
        non_null!(f, x, re, im);
        let v = (*f).0.evaluate(slice::from_raw_parts(x, dim)).map_err(from_error)?;
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// Checks the low-pass conditions `m₀(0) = q` and `⟨m₀, m₀⟩ = q` for a mask.
/// `residual` receives the larger of the two residuals and `pass` whether
/// both are below `tol`. A failed check still returns `TF_STATUS_OK`.
///
/// # Safety
/// `m0` and `a` must be live handles; `residual` and `pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_validate_low_pass(
    m0: *const TfFilter,
    a: *const TfDilation,
    tol: f64,
    residual: *mut f64,
    pass: *mut bool,
) -> TfStatus {
    guard(|| {
        non_null!(m0, a, residual, pass);
        let report = validate_low_pass(&(*m0).0, &(*a).0, tol).map_err(from_error)?;
        *residual = report.max_residual();
        *pass = report.pass();
        Ok(())
    })
}

/// Truncated scaling-function transform `Φ_N(x) = Π_{k=1}^{N} q⁻¹m₀(B⁻ᵏx)`.
///
/// # Safety
/// `m0` and `a` must be live handles, `x` must hold `dim` values, `re` and
/// `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_scaling_fourier(
    m0: *const TfFilter,
    a: *const TfDilation,
    x: *const f64,
    dim: usize,
    depth: usize,
    re: *mut f64,
    im: *mut f64,
) -> TfStatus {
    guard(|| {
        non_null!(m0, a, x, re, im);
        let x = slice::from_raw_parts(x, dim);
        let v = cascade::scaling_fourier(&(*m0).0, &(*a).0, x, depth).map_err(from_error)?;
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// Completes a unit row of length `q` to a `q × q` unitary whose first row
/// is the input. The result is written row-major to `out_re`/`out_im`.
///
/// # Safety
/// `re` and `im` must hold `q` values; `out_re` and `out_im` must hold
/// `q * q` writable values.
#[no_mangle]
pub unsafe extern "C" fn tf_householder_complete(
    re: *const f64,
    im: *const f64,
    q: usize,
    out_re: *mut f64,
    out_im: *mut f64,
) -> TfStatus {
    guard(|| {
        non_null!(re, im, out_re, out_im);
        let (re, im) = (slice::from_raw_parts(re, q), slice::from_raw_parts(im, q));
        let row: Vec<Complex64> = re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect();
        let m = householder_complete(&row).map_err(from_error)?;
        for i in 0..q {
            for j in 0..q {
                *out_re.add(i * q + j) = m[(i, j)].re;
                *out_im.add(i * q + j) = m[(i, j)].im;
            }
        }
        Ok(())
    })
}

/// The obstruction low-pass filter `h₀` at a point of the 5-torus.
///
/// # Safety
/// `x` must hold 5 values; `re` and `im` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_obstruction_h0(x: *const f64, calibrated: bool, re: *mut f64, im: *mut f64) -> TfStatus {
    guard(|| {
        non_null!(x, re, im);
        let v = h0_value(slice::from_raw_parts(x, 5), calibrated).map_err(from_error)?;
        *re = v.re;
        *im = v.im;
        Ok(())
    })
}

/// Runs the seeded identity suite on `samples` random points. `max_ratio`
/// receives the largest residual divided by its tolerance, `pass` whether
/// every identity holds.
///
/// # Safety
/// `max_ratio` and `pass` must be writable.
#[no_mangle]
pub unsafe extern "C" fn tf_obstruction_check_identities(
    samples: usize,
    seed: u64,
    max_ratio: *mut f64,
    pass: *mut bool,
) -> TfStatus {
    guard(|| {
        non_null!(max_ratio, pass);
        let report = check_identities(samples, seed).map_err(from_error)?;
        *max_ratio = report.checks.iter().map(|c| c.residual / c.tol).fold(0.0, f64::max);
        *pass = report.pass();
        Ok(())
    })
}
