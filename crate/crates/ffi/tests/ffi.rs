use std::ffi::CStr;
use std::ptr;

use numrange_ffi::*;

fn last_error() -> String {
    let p = nr_last_error_message();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

fn matrix(n: usize, re: &[f64], im: &[f64]) -> *mut NrMatrix {
    let mut m = ptr::null_mut();
    assert_eq!(unsafe { nr_matrix_new(n, re.as_ptr(), im.as_ptr(), &mut m) }, NrStatus::Ok);
    m
}

fn vertices(p: *const NrPolygon) -> Vec<(f64, f64)> {
    let n = unsafe { nr_polygon_len(p) };
    let (mut xs, mut ys) = (vec![0.0; n], vec![0.0; n]);
    assert_eq!(
        unsafe { nr_polygon_vertices(p, xs.as_mut_ptr(), ys.as_mut_ptr(), n) },
        NrStatus::Ok
    );
    xs.into_iter().zip(ys).collect()
}

#[test]
fn jordan_radius_through_handles() {
    let m = matrix(2, &[0.0, 1.0, 0.0, 0.0], &[0.0; 4]);
    assert_eq!(unsafe { nr_matrix_dim(m) }, 2);
    let mut r = 0.0;
    assert_eq!(unsafe { nr_numerical_radius(m, 720, &mut r) }, NrStatus::Ok);
    assert!((r - 0.5).abs() < 1e-12);
    unsafe { nr_matrix_free(m) };
}

#[test]
fn inner_and_outer_polygons() {
    let m = matrix(2, &[1.0, 0.0, 0.0, 0.0], &[0.0, 0.0, 0.0, 1.0]);
    let (mut inner, mut outer) = (ptr::null_mut(), ptr::null_mut());
    assert_eq!(unsafe { nr_numerical_range(m, 64, &mut inner, &mut outer) }, NrStatus::Ok);
    // W(diag(1, i)) is the segment [1, i].
    for (x, y) in vertices(inner) {
        assert!((x + y - 1.0).abs() < 1e-12);
    }
    assert!(unsafe { nr_polygon_len(outer) } >= 2);
    let mut tiny = [0.0; 1];
    let mut tiny_y = [0.0; 1];
    assert_eq!(
        unsafe { nr_polygon_vertices(inner, tiny.as_mut_ptr(), tiny_y.as_mut_ptr(), 1) },
        NrStatus::BufferTooSmall
    );
    unsafe {
        nr_polygon_free(inner);
        nr_polygon_free(outer);
        nr_matrix_free(m);
    }
}

#[test]
fn null_and_invalid_inputs() {
    let mut out = 0.0;
    assert_eq!(unsafe { nr_numerical_radius(ptr::null(), 16, &mut out) }, NrStatus::NullPointer);
    assert!(last_error().contains("null"));

    let mut m = ptr::null_mut();
    let nan = [f64::NAN];
    assert_eq!(unsafe { nr_matrix_new(1, nan.as_ptr(), nan.as_ptr(), &mut m) }, NrStatus::InvalidInput);
    assert!(m.is_null());

    let zr = [1.5];
    let zi = [0.0];
    assert_eq!(unsafe { nr_sb_matrix(zr.as_ptr(), zi.as_ptr(), 1, &mut m) }, NrStatus::InvalidInput);
    assert!(last_error().contains("disk"));
    unsafe {
        nr_matrix_free(ptr::null_mut());
        nr_polygon_free(ptr::null_mut());
    }
}

#[test]
fn compressed_shift_and_poncelet() {
    let zr = [0.0, 0.0];
    let zi = [0.0, 0.0];
    let mut s = ptr::null_mut();
    assert_eq!(unsafe { nr_sb_matrix(zr.as_ptr(), zi.as_ptr(), 2, &mut s) }, NrStatus::Ok);
    let (mut re, mut im) = ([0.0; 4], [0.0; 4]);
    assert_eq!(unsafe { nr_matrix_entries(s, re.as_mut_ptr(), im.as_mut_ptr()) }, NrStatus::Ok);
    assert_eq!(re, [0.0, 1.0, 0.0, 0.0]);
    assert_eq!(im, [0.0; 4]);

    let mut tri = ptr::null_mut();
    assert_eq!(
        unsafe { nr_poncelet_polygon(zr.as_ptr(), zi.as_ptr(), 2, 1.0, 0.0, &mut tri) },
        NrStatus::Ok
    );
    let v = vertices(tri);
    assert_eq!(v.len(), 3);
    for (x, y) in v {
        assert!((x.hypot(y) - 1.0).abs() < 1e-12);
    }

    let mut w = ptr::null_mut();
    assert_eq!(
        unsafe { nr_numrange_via_dilations(zr.as_ptr(), zi.as_ptr(), 2, 360, &mut w) },
        NrStatus::Ok
    );
    for (x, y) in vertices(w) {
        let r = x.hypot(y);
        assert!(r > 0.5 - 1e-9 && r < 0.5 + 1e-3);
    }
    unsafe {
        nr_polygon_free(w);
        nr_polygon_free(tri);
        nr_matrix_free(s);
    }
}

#[test]
fn crouzeix_ratio_of_identity_polynomial() {
    let m = matrix(2, &[0.0, 1.0, 0.0, 0.0], &[0.0; 4]);
    let (cr, ci) = ([0.0, 1.0], [0.0, 0.0]);
    let mut r = 0.0;
    assert_eq!(
        unsafe { nr_crouzeix_ratio(cr.as_ptr(), ci.as_ptr(), 2, m, 2000, &mut r) },
        NrStatus::Ok
    );
    assert!(r > 1.99 && r <= 2.0);
    assert_eq!(
        unsafe { nr_crouzeix_ratio(cr.as_ptr(), ci.as_ptr(), 0, m, 16, &mut r) },
        NrStatus::InvalidInput
    );
    unsafe { nr_matrix_free(m) };
}

#[test]
fn header_declares_every_export() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/numrange.h")).unwrap();
    for name in [
        "nr_last_error_message",
        "nr_matrix_new",
        "nr_matrix_free",
        "nr_matrix_dim",
        "nr_matrix_entries",
        "nr_numerical_range",
        "nr_numerical_radius",
        "nr_crouzeix_ratio",
        "nr_sb_matrix",
        "nr_poncelet_polygon",
        "nr_numrange_via_dilations",
        "nr_polygon_len",
        "nr_polygon_vertices",
        "nr_polygon_free",
        "NR_STATUS_OK",
    ] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
