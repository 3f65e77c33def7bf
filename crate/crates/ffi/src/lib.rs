//! C ABI over `numrange`.
//!
//! Matrices and polygons cross the boundary as opaque handles that the caller
//! releases with the matching `*_free` function. Every fallible call returns
//! an [`NrStatus`]; on failure `nr_last_error_message` describes the cause.
//! Complex arrays are passed as separate real and imaginary `double` arrays,
//! matrices in row-major order.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_complex::Complex64;
use numrange::linalg::CMatrix;
use numrange::numrange::{crouzeix_ratio, numerical_radius, numerical_range};
use numrange::shift::{numrange_via_dilations, poncelet_polygon, sb_matrix};
use numrange::{ConvexPolygon, Error, Polynomial};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NrStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidInput = 2,
    Numerical = 3,
    BufferTooSmall = 4,
    Panic = 5,
}

/// Opaque square complex matrix.
pub struct NrMatrix(CMatrix);

/// Opaque convex polygon with counter-clockwise vertices.
pub struct NrPolygon(ConvexPolygon);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn fail(status: NrStatus, msg: impl Into<String>) -> NrStatus {
    set_error(msg);
    status
}

fn from_error(e: Error) -> NrStatus {
    let status = if e.is_input_error() {
        NrStatus::InvalidInput
    } else {
        NrStatus::Numerical
    };
    fail(status, e.to_string())
}

/// Runs `f`, converting panics to `NrStatus::Panic`.
fn guard(f: impl FnOnce() -> Result<(), NrStatus>) -> NrStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => NrStatus::Ok,
        Ok(Err(status)) => status,
        Err(_) => fail(NrStatus::Panic, "internal panic"),
    }
}

fn check<T>(r: numrange::Result<T>) -> Result<T, NrStatus> {
    r.map_err(from_error)
}

fn non_null<T>(p: *const T, what: &str) -> Result<(), NrStatus> {
    if p.is_null() {
        Err(fail(NrStatus::NullPointer, format!("{what} is null")))
    } else {
        Ok(())
    }
}

/// # Safety
/// `re` and `im` must each point to `len` readable doubles (or be null when `len == 0`).
unsafe fn read_complex(re: *const f64, im: *const f64, len: usize) -> Result<Vec<Complex64>, NrStatus> {
    if len == 0 {
        return Ok(vec![]);
    }
    non_null(re, "real part")?;
    non_null(im, "imaginary part")?;
    let re = std::slice::from_raw_parts(re, len);
    let im = std::slice::from_raw_parts(im, len);
    Ok(re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)).collect())
}

fn into_handle<T>(value: T, out: *mut *mut T) {
    // SAFETY: callers check `out` for null before computing `value`.
    unsafe { *out = Box::into_raw(Box::new(value)) };
}

/// Message for the most recent failure on this thread, or null. The pointer
/// stays valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn nr_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Builds an `n×n` matrix from row-major real and imaginary parts.
///
/// # Safety
/// `re` and `im` must point to `n*n` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nr_matrix_new(n: usize, re: *const f64, im: *const f64, out: *mut *mut NrMatrix) -> NrStatus {
    guard(|| {
        non_null(out, "out")?;
        if n == 0 {
            return Err(fail(NrStatus::InvalidInput, "matrix dimension must be positive"));
        }
        let len = n.checked_mul(n).ok_or_else(|| fail(NrStatus::InvalidInput, "dimension overflow"))?;
        let data = read_complex(re, im, len)?;
        let m = CMatrix::from_fn(n, |i, j| data[i * n + j]);
        if !m.is_finite() {
            return Err(from_error(Error::NonFinite));
        }
        into_handle(NrMatrix(m), out);
        Ok(())
    })
}

/// # Safety
/// `m` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn nr_matrix_free(m: *mut NrMatrix) {
    if !m.is_null() {
        drop(Box::from_raw(m));
    }
}

/// Dimension of the matrix, 0 for a null handle.
///
/// # Safety
/// `m` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_matrix_dim(m: *const NrMatrix) -> usize {
    m.as_ref().map_or(0, |m| m.0.dim())
}

/// Copies the entries into row-major `re`/`im` buffers of `n*n` doubles.
///
/// # Safety
/// `m` must be a live handle; `re` and `im` must hold `n*n` doubles.
#[no_mangle]
pub unsafe extern "C" fn nr_matrix_entries(m: *const NrMatrix, re: *mut f64, im: *mut f64) -> NrStatus {
    guard(|| {
        non_null(m, "matrix")?;
        non_null(re, "re")?;
        non_null(im, "im")?;
        let data = (*m).0.as_slice();
        let re = std::slice::from_raw_parts_mut(re, data.len());
        let im = std::slice::from_raw_parts_mut(im, data.len());
        for (k, z) in data.iter().enumerate() {
            re[k] = z.re;
            im[k] = z.im;
        }
        Ok(())
    })
}

/// Inner and outer polygons of `W(A)` from `nsamples` support lines.
/// Either output pointer may be null if that polygon is not wanted.
///
/// # Safety
/// `m` must be a live handle; non-null outputs must be writable.
#[no_mangle]
pub unsafe extern "C" fn nr_numerical_range(
    m: *const NrMatrix,
    nsamples: usize,
    inner: *mut *mut NrPolygon,
    outer: *mut *mut NrPolygon,
) -> NrStatus {
    guard(|| {
        non_null(m, "matrix")?;
        let nr = check(numerical_range(&(*m).0, nsamples))?;
        if !inner.is_null() {
            into_handle(NrPolygon(nr.inner), inner);
        }
        if !outer.is_null() {
            into_handle(NrPolygon(nr.outer), outer);
        }
        Ok(())
    })
}

/// # Safety
/// `m` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nr_numerical_radius(m: *const NrMatrix, nsamples: usize, out: *mut f64) -> NrStatus {
    guard(|| {
        non_null(m, "matrix")?;
        non_null(out, "out")?;
        *out = check(numerical_radius(&(*m).0, nsamples))?;
        Ok(())
    })
}

/// `‖p(A)‖ / max |p|` over the outer polygon boundary; `p` has ascending coefficients.
///
/// # Safety
/// Coefficient arrays must hold `ncoeffs` doubles; `m` must be live; `out` writable.
#[no_mangle]
pub unsafe extern "C" fn nr_crouzeix_ratio(
    coeff_re: *const f64,
    coeff_im: *const f64,
    ncoeffs: usize,
    m: *const NrMatrix,
    nsamples: usize,
    out: *mut f64,
) -> NrStatus {
    guard(|| {
        non_null(m, "matrix")?;
        non_null(out, "out")?;
        if ncoeffs == 0 {
            return Err(fail(NrStatus::InvalidInput, "polynomial has no coefficients"));
        }
        let p = Polynomial::new(read_complex(coeff_re, coeff_im, ncoeffs)?);
        *out = check(crouzeix_ratio(&p, &(*m).0, nsamples))?;
        Ok(())
    })
}

/// Matrix of the compressed shift for the Blaschke product with the given zeros.
///
/// # Safety
/// Zero arrays must hold `nzeros` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nr_sb_matrix(
    zeros_re: *const f64,
    zeros_im: *const f64,
    nzeros: usize,
    out: *mut *mut NrMatrix,
) -> NrStatus {
    guard(|| {
        non_null(out, "out")?;
        let zeros = read_complex(zeros_re, zeros_im, nzeros)?;
        into_handle(NrMatrix(check(sb_matrix(&zeros))?), out);
        Ok(())
    })
}

/// Convex hull of the eigenvalues of the unitary 1-dilation at `λ`.
///
/// # Safety
/// Zero arrays must hold `nzeros` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nr_poncelet_polygon(
    zeros_re: *const f64,
    zeros_im: *const f64,
    nzeros: usize,
    lambda_re: f64,
    lambda_im: f64,
    out: *mut *mut NrPolygon,
) -> NrStatus {
    guard(|| {
        non_null(out, "out")?;
        let zeros = read_complex(zeros_re, zeros_im, nzeros)?;
        let p = check(poncelet_polygon(&zeros, Complex64::new(lambda_re, lambda_im)))?;
        into_handle(NrPolygon(p), out);
        Ok(())
    })
}

/// Intersection of the Poncelet polygons over `lambda_count` equally spaced `λ`.
///
/// # Safety
/// Zero arrays must hold `nzeros` doubles; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn nr_numrange_via_dilations(
    zeros_re: *const f64,
    zeros_im: *const f64,
    nzeros: usize,
    lambda_count: usize,
    out: *mut *mut NrPolygon,
) -> NrStatus {
    guard(|| {
        non_null(out, "out")?;
        let zeros = read_complex(zeros_re, zeros_im, nzeros)?;
        let p = check(numrange_via_dilations(&zeros, lambda_count))?;
        into_handle(NrPolygon(p), out);
        Ok(())
    })
}

/// Number of vertices, 0 for a null handle.
///
/// # Safety
/// `p` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn nr_polygon_len(p: *const NrPolygon) -> usize {
    p.as_ref().map_or(0, |p| p.0.len())
}

/// Copies the vertices into `xs`/`ys`, which hold `capacity` doubles each.
///
/// # Safety
/// `p` must be a live handle; `xs` and `ys` must hold `capacity` doubles.
#[no_mangle]
pub unsafe extern "C" fn nr_polygon_vertices(
    p: *const NrPolygon,
    xs: *mut f64,
    ys: *mut f64,
    capacity: usize,
) -> NrStatus {
    guard(|| {
        non_null(p, "polygon")?;
        let v = (*p).0.vertices();
        if v.len() > capacity {
            return Err(fail(
                NrStatus::BufferTooSmall,
                format!("polygon has {} vertices, buffer holds {capacity}", v.len()),
            ));
        }
        if v.is_empty() {
            return Ok(());
        }
        non_null(xs, "xs")?;
        non_null(ys, "ys")?;
        let xs = std::slice::from_raw_parts_mut(xs, v.len());
        let ys = std::slice::from_raw_parts_mut(ys, v.len());
        for (k, z) in v.iter().enumerate() {
            xs[k] = z.re;
            ys[k] = z.im;
        }
        Ok(())
    })
}

/// # Safety
/// `p` must be null or a handle from this library that has not been freed.
#[no_mangle]
pub unsafe extern "C" fn nr_polygon_free(p: *mut NrPolygon) {
    if !p.is_null() {
        drop(Box::from_raw(p));
    }
}
