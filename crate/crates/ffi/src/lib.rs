//! C ABI for `orbitcone`.
//!
//! Algebras and embeddings are opaque handles created from the same spec
//! strings the CLI accepts and released with the matching `_free` call.
//! Every fallible function returns an [`OcStatus`]; on failure a message is
//! kept per thread and can be read with [`oc_last_error`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use orbitcone::catalog::parse_representation;
use orbitcone::cone::{asymptotic_cone, AcConfig, NamedCone};
use orbitcone::induction::{parse_embedding, pullback_q, saturation_is_full, SubalgebraEmbedding, Verdict};
use orbitcone::lie::{classify_element, parse_algebra, ClassTag, Covector, MatrixLieAlgebra};
use orbitcone::tempered::{bk_weak_containment, BkVerdict};
use orbitcone::Error;

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OcStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    Parse = 3,
    Unsupported = 4,
    DimensionMismatch = 5,
    InvalidInput = 6,
    BufferTooSmall = 7,
    Numerical = 8,
    Panic = 9,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OcClass {
    Zero = 0,
    Elliptic = 1,
    Hyperbolic = 2,
    Nilpotent = 3,
    Mixed = 4,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OcVerdict {
    Yes = 0,
    No = 1,
    Unknown = 2,
}

/// Named cones of `sl(2,R)`; `OTHER` for anything without a name.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OcCone {
    Zero = 0,
    NilPlus = 1,
    NilMinus = 2,
    Nil = 3,
    HypClosure = 4,
    EllPlusClosure = 5,
    EllMinusClosure = 6,
    Full = 7,
    Other = 8,
}

/// Opaque Lie algebra.
pub struct OcAlgebra(MatrixLieAlgebra);

/// Opaque subalgebra embedding.
pub struct OcEmbedding(SubalgebraEmbedding);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

fn status_of(e: &Error) -> OcStatus {
    match e {
        Error::Parse(_) | Error::UnknownRepresentation(_) | Error::BadPartition(_) => OcStatus::Parse,
        Error::UnsupportedAlgebra(_) | Error::DimensionTooLarge { .. } | Error::UnsupportedCone(_) => {
            OcStatus::Unsupported
        }
        Error::DimensionMismatch { .. } => OcStatus::DimensionMismatch,
        Error::Numerical(_) | Error::NonCommuting(_) | Error::DegenerateForm(_) => OcStatus::Numerical,
        _ => OcStatus::InvalidInput,
    }
}

fn guard(f: impl FnOnce() -> Result<(), OcStatus>) -> OcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => OcStatus::Ok,
        Ok(Err(s)) => s,
        Err(_) => {
            set_error("internal panic".into());
            OcStatus::Panic
        }
    }
}

fn lib<T>(r: orbitcone::Result<T>) -> Result<T, OcStatus> {
    r.map_err(|e| {
        set_error(e.to_string());
        status_of(&e)
    })
}

unsafe fn read_str<'a>(s: *const c_char) -> Result<&'a str, OcStatus> {
    if s.is_null() {
        set_error("null string".into());
        return Err(OcStatus::NullPointer);
    }
    CStr::from_ptr(s).to_str().map_err(|_| {
        set_error("string is not valid UTF-8".into());
        OcStatus::InvalidUtf8
    })
}

unsafe fn read_vec(p: *const f64, len: usize) -> Result<Vec<f64>, OcStatus> {
    if p.is_null() && len > 0 {
        set_error("null coordinate buffer".into());
        return Err(OcStatus::NullPointer);
    }
    if len == 0 {
        return Ok(Vec::new());
    }
    Ok(std::slice::from_raw_parts(p, len).to_vec())
}

fn non_null<T>(p: *const T) -> Result<(), OcStatus> {
    if p.is_null() {
        set_error("null pointer argument".into());
        Err(OcStatus::NullPointer)
    } else {
        Ok(())
    }
}

fn check_dim(expected: usize, found: usize) -> Result<(), OcStatus> {
    if expected != found {
        set_error(format!("dimension mismatch: expected {expected}, found {found}"));
        return Err(OcStatus::DimensionMismatch);
    }
    Ok(())
}

/// Message of the last failure on this thread, or NULL. The pointer stays
/// valid until the next failing call on the same thread.
#[no_mangle]
pub extern "C" fn oc_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

/// Builds an algebra from a name such as `sl2R`, `su(2,1)` or `so(3,2)`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oc_algebra_new(spec: *const c_char, out: *mut *mut OcAlgebra) -> OcStatus {
    guard(|| {
        non_null(out)?;
        let s = read_str(spec)?;
        let l = lib(parse_algebra(s))?;
        *out = Box::into_raw(Box::new(OcAlgebra(l)));
        Ok(())
    })
}

/// # Safety
/// `alg` must come from [`oc_algebra_new`] and not be freed yet, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn oc_algebra_free(alg: *mut OcAlgebra) {
    if !alg.is_null() {
        drop(Box::from_raw(alg));
    }
}

/// Dimension of the algebra, 0 for NULL.
///
/// # Safety
/// `alg` must be a live handle or NULL.
#[no_mangle]
pub unsafe extern "C" fn oc_algebra_dim(alg: *const OcAlgebra) -> usize {
    alg.as_ref().map_or(0, |a| a.0.dim())
}

/// Classifies the covector with coordinates `coords[0..len]`.
///
/// # Safety
/// `alg` must be a live handle, `coords` must point to `len` doubles and
/// `out` must be valid.
#[no_mangle]
pub unsafe extern "C" fn oc_classify(
    alg: *const OcAlgebra,
    coords: *const f64,
    len: usize,
    out: *mut OcClass,
) -> OcStatus {
    guard(|| {
        non_null(alg)?;
        non_null(out)?;
        let l = &(*alg).0;
        let v = read_vec(coords, len)?;
        check_dim(l.dim(), v.len())?;
        let c = lib(classify_element(l, &Covector::new(v)))?;
        *out = match c.tag {
            ClassTag::Zero => OcClass::Zero,
            ClassTag::Elliptic => OcClass::Elliptic,
            ClassTag::Hyperbolic => OcClass::Hyperbolic,
            ClassTag::Nilpotent => OcClass::Nilpotent,
            ClassTag::Mixed => OcClass::Mixed,
        };
        Ok(())
    })
}

/// Builds an embedding from a pair spec such as `sl2R|a` or
/// `so(4,2)|blocks[(1,1),(3,1)]`.
///
/// # Safety
/// `spec` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oc_embedding_new(spec: *const c_char, out: *mut *mut OcEmbedding) -> OcStatus {
    guard(|| {
        non_null(out)?;
        let s = read_str(spec)?;
        let e = lib(parse_embedding(s))?;
        *out = Box::into_raw(Box::new(OcEmbedding(e)));
        Ok(())
    })
}

/// # Safety
/// `e` must come from [`oc_embedding_new`] and not be freed yet, or be NULL.
#[no_mangle]
pub unsafe extern "C" fn oc_embedding_free(e: *mut OcEmbedding) {
    if !e.is_null() {
        drop(Box::from_raw(e));
    }
}

/// Dimensions of the ambient algebra and the subalgebra.
///
/// # Safety
/// `e` must be a live handle; `ambient` and `sub` must be valid pointers.
#[no_mangle]
pub unsafe extern "C" fn oc_embedding_dims(e: *const OcEmbedding, ambient: *mut usize, sub: *mut usize) -> OcStatus {
    guard(|| {
        non_null(e)?;
        non_null(ambient)?;
        non_null(sub)?;
        *ambient = (*e).0.ambient().dim();
        *sub = (*e).0.sub().dim();
        Ok(())
    })
}

/// Writes `q(xi)` into `out[0..out_len]`; `out_len` must equal the
/// subalgebra dimension.
///
/// # Safety
/// `e` must be a live handle; `xi` must point to `len` doubles and `out` to
/// `out_len` writable doubles.
#[no_mangle]
pub unsafe extern "C" fn oc_pullback(
    e: *const OcEmbedding,
    xi: *const f64,
    len: usize,
    out: *mut f64,
    out_len: usize,
) -> OcStatus {
    guard(|| {
        non_null(e)?;
        let e = &(*e).0;
        let v = read_vec(xi, len)?;
        check_dim(e.ambient().dim(), v.len())?;
        let dh = e.sub().dim();
        if out_len < dh {
            set_error(format!("output buffer holds {out_len}, need {dh}"));
            return Err(OcStatus::BufferTooSmall);
        }
        if dh > 0 {
            non_null(out)?;
        }
        let q = lib(pullback_q(e, &Covector::new(v)))?;
        for (i, x) in q.coords().iter().enumerate() {
            *out.add(i) = *x;
        }
        Ok(())
    })
}

/// Whether `L2(G/H)` is weakly contained in `L2(G)`.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oc_bk_weak_containment(e: *const OcEmbedding, out: *mut OcVerdict) -> OcStatus {
    guard(|| {
        non_null(e)?;
        non_null(out)?;
        let c = lib(bk_weak_containment(&(*e).0))?;
        *out = match c.verdict {
            BkVerdict::Contained => OcVerdict::Yes,
            BkVerdict::Violated => OcVerdict::No,
            BkVerdict::Unknown => OcVerdict::Unknown,
        };
        Ok(())
    })
}

/// Whether the orthocomplement of the subalgebra meets every Cartan class.
///
/// # Safety
/// `e` must be a live handle and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oc_saturation(e: *const OcEmbedding, budget: usize, seed: u64, out: *mut OcVerdict) -> OcStatus {
    guard(|| {
        non_null(e)?;
        non_null(out)?;
        let c = lib(saturation_is_full(&(*e).0, budget, seed))?;
        *out = match c.verdict {
            Verdict::Full => OcVerdict::Yes,
            Verdict::NotFull => OcVerdict::No,
            Verdict::Unknown => OcVerdict::Unknown,
        };
        Ok(())
    })
}

/// Wave-front cone of a catalog representation such as `sigma_disc(3,+)`.
///
/// # Safety
/// `label` must be a NUL-terminated string and `out` a valid pointer.
#[no_mangle]
pub unsafe extern "C" fn oc_wavefront(label: *const c_char, out: *mut OcCone) -> OcStatus {
    guard(|| {
        non_null(out)?;
        let spec = lib(parse_representation(read_str(label)?))?;
        let c = lib(asymptotic_cone(&spec.orbital_support, &AcConfig::default()))?;
        *out = match c.as_named() {
            Some(NamedCone::Zero) => OcCone::Zero,
            Some(NamedCone::NilPlus) => OcCone::NilPlus,
            Some(NamedCone::NilMinus) => OcCone::NilMinus,
            Some(NamedCone::Nil) => OcCone::Nil,
            Some(NamedCone::HypClosure) => OcCone::HypClosure,
            Some(NamedCone::EllPlusClosure) => OcCone::EllPlusClosure,
            Some(NamedCone::EllMinusClosure) => OcCone::EllMinusClosure,
            Some(NamedCone::Full) => OcCone::Full,
            None => OcCone::Other,
        };
        Ok(())
    })
}
