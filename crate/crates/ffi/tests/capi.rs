use std::ffi::{CStr, CString};
use std::ptr;

use hk_ffi::*;

fn graph(expr: &str) -> *mut HkGraph {
    let expr = CString::new(expr).unwrap();
    let mut g = ptr::null_mut();
    assert_eq!(unsafe { hk_graph_builder(expr.as_ptr(), &mut g) }, HkStatus::Ok);
    assert!(!g.is_null());
    g
}

fn last_error() -> String {
    let p = hk_last_error();
    assert!(!p.is_null());
    unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
}

#[test]
fn chain_monoid_round_trip() {
    let g = graph("chain(2)");
    unsafe {
        assert_eq!(hk_graph_vertex_count(g), 2);
        let mut m = ptr::null_mut();
        assert_eq!(hk_monoid_enumerate(g, 1000, &mut m), HkStatus::Ok);
        assert_eq!(hk_monoid_size(m), 5);
        let mut forms = Vec::new();
        for i in 0..5 {
            let mut s = ptr::null_mut();
            assert_eq!(hk_monoid_normal_form(m, i, &mut s), HkStatus::Ok);
            forms.push(CStr::from_ptr(s).to_str().unwrap().to_owned());
            hk_string_free(s);
        }
        assert_eq!(forms, ["-", "a", "b", "ab", "ba"]);
        let mut s = ptr::null_mut();
        assert_eq!(hk_monoid_normal_form(m, 5, &mut s), HkStatus::OutOfRange);
        assert!(last_error().contains("out of range"));
        let mut idem = 0;
        assert_eq!(hk_monoid_idempotent_count(m, &mut idem), HkStatus::Ok);
        assert_eq!(idem, 4);
        let mut eff = -1;
        assert_eq!(hk_monoid_check_effective(m, 1, &mut eff), HkStatus::Ok);
        assert_eq!(eff, 1);
        hk_monoid_free(m);
        hk_graph_free(g);
    }
}

#[test]
fn parse_text_graph() {
    let text = CString::new("n 3\ne 0 1\ne 2 1\n").unwrap();
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(hk_graph_parse(text.as_ptr(), &mut g), HkStatus::Ok);
        let mut m = ptr::null_mut();
        assert_eq!(hk_monoid_enumerate(g, 1000, &mut m), HkStatus::Ok);
        assert_eq!(hk_monoid_size(m), 13);
        hk_monoid_free(m);
        hk_graph_free(g);
    }
}

#[test]
fn errors_are_reported() {
    unsafe {
        let bad = CString::new("nope(3)").unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(hk_graph_builder(bad.as_ptr(), &mut g), HkStatus::ParseError);
        assert!(g.is_null());
        assert!(last_error().contains("nope"));

        assert_eq!(hk_graph_builder(ptr::null(), &mut g), HkStatus::NullPointer);

        let tri = graph("triangle");
        let mut m = ptr::null_mut();
        assert_eq!(hk_monoid_enumerate(tri, 100, &mut m), HkStatus::CapExceeded);
        assert!(m.is_null());
        assert_eq!(hk_monoid_enumerate(tri, 0, &mut m), HkStatus::InvalidInput);

        let un = graph("unoriented");
        assert_eq!(hk_monoid_enumerate(un, 100, &mut m), HkStatus::Ok);
        assert_eq!(hk_monoid_size(m), 6);
        let mut eff = -1;
        assert_eq!(hk_monoid_check_effective(m, 1, &mut eff), HkStatus::InvalidInput);
        hk_monoid_free(m);
        hk_graph_free(un);
        hk_graph_free(tri);

        assert_eq!(hk_graph_vertex_count(ptr::null()), 0);
        assert_eq!(hk_monoid_size(ptr::null()), 0);
        hk_graph_free(ptr::null_mut());
        hk_monoid_free(ptr::null_mut());
        hk_string_free(ptr::null_mut());
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/hk.h")).unwrap();
    for name in ["HK_STATUS_CAP_EXCEEDED", "hk_monoid_enumerate", "hk_last_error", "typedef struct HkGraph HkGraph"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}
