use std::ffi::{CStr, CString};
use std::ptr;

use orbitcone_ffi::*;

fn algebra(spec: &str) -> *mut OcAlgebra {
    let s = CString::new(spec).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { oc_algebra_new(s.as_ptr(), &mut out) }, OcStatus::Ok);
    out
}

fn embedding(spec: &str) -> *mut OcEmbedding {
    let s = CString::new(spec).unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { oc_embedding_new(s.as_ptr(), &mut out) }, OcStatus::Ok);
    out
}

#[test]
fn classify_through_handle() {
    let a = algebra("sl2R");
    assert_eq!(unsafe { oc_algebra_dim(a) }, 3);
    let mut class = OcClass::Mixed;
    let nil = [1.0, 0.0, 1.0];
    assert_eq!(unsafe { oc_classify(a, nil.as_ptr(), 3, &mut class) }, OcStatus::Ok);
    assert_eq!(class, OcClass::Nilpotent);
    let short = [1.0, 0.0];
    assert_eq!(
        unsafe { oc_classify(a, short.as_ptr(), 2, &mut class) },
        OcStatus::DimensionMismatch
    );
    unsafe { oc_algebra_free(a) };
}

#[test]
fn errors_set_a_message() {
    let s = CString::new("sl(9,R)").unwrap();
    let mut out = ptr::null_mut();
    assert_eq!(unsafe { oc_algebra_new(s.as_ptr(), &mut out) }, OcStatus::Unsupported);
    assert!(out.is_null());
    let msg = unsafe { CStr::from_ptr(oc_last_error()) }.to_str().unwrap();
    assert!(msg.contains("sl(9,R)"), "{msg}");
    assert_eq!(unsafe { oc_algebra_new(ptr::null(), &mut out) }, OcStatus::NullPointer);
    unsafe { oc_algebra_free(ptr::null_mut()) };
}

#[test]
fn embedding_queries() {
    let e = embedding("diag(sl2R)");
    let (mut g, mut h) = (0, 0);
    assert_eq!(unsafe { oc_embedding_dims(e, &mut g, &mut h) }, OcStatus::Ok);
    assert_eq!((g, h), (6, 3));
    let xi = [1.0, 2.0, 3.0, 0.5, -1.0, 0.25];
    let mut q = [0.0; 3];
    assert_eq!(unsafe { oc_pullback(e, xi.as_ptr(), 6, q.as_mut_ptr(), 3) }, OcStatus::Ok);
    for i in 0..3 {
        assert!((q[i] - (xi[i] + xi[i + 3])).abs() < 1e-12);
    }
    assert_eq!(
        unsafe { oc_pullback(e, xi.as_ptr(), 6, q.as_mut_ptr(), 2) },
        OcStatus::BufferTooSmall
    );
    unsafe { oc_embedding_free(e) };

    let e = embedding("so(3,1)|blocks[(1,1),(2,0)]");
    let mut v = OcVerdict::Unknown;
    assert_eq!(unsafe { oc_bk_weak_containment(e, &mut v) }, OcStatus::Ok);
    assert_eq!(v, OcVerdict::Yes);
    unsafe { oc_embedding_free(e) };

    let e = embedding("sl2R|so(2)");
    assert_eq!(unsafe { oc_saturation(e, 2000, 1, &mut v) }, OcStatus::Ok);
    assert_eq!(v, OcVerdict::No);
    unsafe { oc_embedding_free(e) };
}

#[test]
fn wavefront_labels() {
    let mut c = OcCone::Other;
    for (label, want) in [
        ("sigma_disc(3,+)", OcCone::NilPlus),
        ("L2_GK", OcCone::HypClosure),
        ("L2_GA", OcCone::Full),
    ] {
        let s = CString::new(label).unwrap();
        assert_eq!(unsafe { oc_wavefront(s.as_ptr(), &mut c) }, OcStatus::Ok);
        assert_eq!(c, want, "{label}");
    }
    let s = CString::new("nope").unwrap();
    assert_eq!(unsafe { oc_wavefront(s.as_ptr(), &mut c) }, OcStatus::Parse);
}

#[test]
fn header_is_generated() {
    let h = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/orbitcone.h")).unwrap();
    for name in ["oc_algebra_new", "oc_classify", "oc_pullback", "OC_STATUS_OK", "OcEmbedding"] {
        assert!(h.contains(name), "{name} missing from header");
    }
}
