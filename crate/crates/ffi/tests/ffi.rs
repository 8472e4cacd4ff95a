use std::ffi::{CStr, CString};
use std::ptr;

use pickernel_ffi::*;

fn c(s: &str) -> CString {
    CString::new(s).unwrap()
}

fn last_error() -> String {
    unsafe { CStr::from_ptr(pk_last_error()).to_string_lossy().into_owned() }
}

unsafe fn render(a: *const PkAbelianGroup) -> String {
    let mut s = ptr::null_mut();
    assert_eq!(pk_abelian_to_string(a, &mut s), PkStatus::Ok);
    let out = CStr::from_ptr(s).to_string_lossy().into_owned();
    pk_string_free(s);
    out
}

#[test]
fn cohomology_through_handles() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(pk_group_new(c("C2").as_ptr(), &mut g), PkStatus::Ok);
        let mut m = ptr::null_mut();
        assert_eq!(pk_module_new(g, c("negation").as_ptr(), &mut m), PkStatus::Ok);
        assert_eq!(pk_module_rank(m), 1);
        let mut h = ptr::null_mut();
        assert_eq!(pk_cohomology(m, 1, &mut h), PkStatus::Ok);
        assert_eq!(render(h), "Z/2");
        pk_abelian_free(h);
        assert_eq!(pk_cohomology(m, 0, &mut h), PkStatus::Ok);
        assert_eq!((pk_abelian_free_rank(h), pk_abelian_num_factors(h)), (0, 0));
        pk_abelian_free(h);
        pk_module_free(m);
        pk_group_free(g);
    }
}

#[test]
fn status_codes_and_errors() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(pk_group_new(c("X7").as_ptr(), &mut g), PkStatus::InputError);
        assert!(last_error().contains("X7"));
        assert!(g.is_null());
        assert_eq!(pk_group_new(c(r#"{"order": 2, "table": [[0, 1], [1, 1]]}"#).as_ptr(), &mut g), PkStatus::Inconsistent);
        assert_eq!(pk_group_new(ptr::null(), &mut g), PkStatus::NullPointer);
        assert_eq!(pk_group_new(c("C2").as_ptr(), ptr::null_mut()), PkStatus::NullPointer);
        assert_eq!(pk_group_new(c("C2").as_ptr(), &mut g), PkStatus::Ok);
        let bad = c(r#"{"ambient_rank": 1, "relations": [], "action": {"1": [[2]]}}"#);
        let mut m = ptr::null_mut();
        assert_eq!(pk_module_new(g, bad.as_ptr(), &mut m), PkStatus::Inconsistent);
        assert!(last_error().contains("(1, 1)"));
        pk_group_free(g);
        let mut n = 0usize;
        assert_eq!(pk_inseparable_class_count(3, 2, &mut n), PkStatus::InputError);
        assert!(last_error().contains("q > 2 required"));
        assert_eq!(pk_inseparable_class_count(3, 27, &mut n), PkStatus::GuardExceeded);
        assert_eq!(pk_inseparable_class_count(5, 5, &mut n), PkStatus::Ok);
        assert_eq!(n, 5);
        assert_eq!(pk_group_order(ptr::null()), 0);
        pk_group_free(ptr::null_mut());
    }
}

#[test]
fn picard_entry_points() {
    unsafe {
        let mut k = ptr::null_mut();
        assert_eq!(pk_circle_descent_kernel(&mut k), PkStatus::Ok);
        assert_eq!(render(k), "Z/2");
        pk_abelian_free(k);
        let mut t = ptr::null_mut();
        assert_eq!(pk_conductor_torsion(c("node").as_ptr(), c("Z[1/2]").as_ptr(), 12, &mut t), PkStatus::Ok);
        let mut d = 0u64;
        assert_eq!(pk_abelian_factor(t, 0, &mut d), PkStatus::Ok);
        assert_eq!(d, 4);
        assert_eq!(pk_abelian_factor(t, 1, &mut d), PkStatus::InputError);
        pk_abelian_free(t);
        assert_eq!(pk_conductor_torsion(c("cusp").as_ptr(), c("F_9").as_ptr(), 3, &mut t), PkStatus::Ok);
        assert_eq!(render(t), "Z/3 ⊕ Z/3");
        pk_abelian_free(t);
        let mut g = ptr::null_mut();
        assert_eq!(pk_group_new(c("Q8").as_ptr(), &mut g), PkStatus::Ok);
        let (mut pic, mut ab, mut matches) = (ptr::null_mut(), ptr::null_mut(), false);
        assert_eq!(pk_group_ring_pic(g, &mut pic, &mut matches), PkStatus::Ok);
        assert_eq!(pk_group_abelianization(g, &mut ab), PkStatus::Ok);
        assert!(matches);
        assert_eq!(render(pic), render(ab));
        pk_abelian_free(pic);
        pk_abelian_free(ab);
        pk_group_free(g);
    }
}

#[test]
fn errors_are_per_thread() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(pk_group_new(c("nope").as_ptr(), &mut g), PkStatus::InputError);
    }
    let other = std::thread::spawn(|| pk_last_error().is_null()).join().unwrap();
    assert!(other);
    assert!(!pk_last_error().is_null());
}
