use std::ffi::{CStr, CString};
use std::ptr;

use polyval_ffi::*;

unsafe fn last_error() -> String {
    let p = pv_last_error();
    assert!(!p.is_null(), "an error message is set");
    CStr::from_ptr(p).to_string_lossy().into_owned()
}

unsafe fn take_string(p: *mut std::ffi::c_char) -> String {
    let s = CStr::from_ptr(p).to_string_lossy().into_owned();
    pv_string_free(p);
    s
}

#[test]
fn geometry_handles() {
    unsafe {
        let mut g = ptr::null_mut();
        assert_eq!(pv_geometry_pg2(2, &mut g), PvStatus::Ok);
        let (mut points, mut lines) = (0, 0);
        assert_eq!(pv_geometry_counts(g, &mut points, &mut lines), PvStatus::Ok);
        assert_eq!((points, lines), (7, 7));
        let mut pass = false;
        assert_eq!(pv_geometry_check_gp(g, 3, &mut pass), PvStatus::Ok);
        assert!(pass);
        assert_eq!(pv_geometry_check_gp(g, 4, &mut pass), PvStatus::Ok);
        assert!(!pass);
        let mut report = ptr::null_mut();
        assert_eq!(pv_geometry_check_valuation(g, 0, 100_000, &mut pass, &mut report), PvStatus::Ok);
        assert!(pass);
        let json: serde_json::Value = serde_json::from_str(&take_string(report)).unwrap();
        assert_eq!(json["pass"], true);
        pv_geometry_free(g);

        assert_eq!(pv_geometry_pg2(6, &mut g), PvStatus::InvalidArgument);
        assert!(!last_error().is_empty());
        assert_eq!(pv_geometry_w2(&mut g), PvStatus::Ok);
        assert_eq!(pv_geometry_check_gp(g, 4, &mut pass), PvStatus::Ok);
        assert!(pass);
        pv_geometry_free(g);
    }
}

#[test]
fn json_input_and_parse_errors() {
    unsafe {
        let src = CString::new(r#"{"n": 3, "points": [1, 2, 3], "lines": ["a", "b", "c"],
            "incidence": [[1, "a"], [2, "a"], [2, "b"], [3, "b"], [3, "c"], [1, "c"]]}"#)
        .unwrap();
        let mut g = ptr::null_mut();
        assert_eq!(pv_geometry_from_json(src.as_ptr(), &mut g), PvStatus::Ok);
        let mut pass = false;
        assert_eq!(pv_geometry_check_gp(g, 3, &mut pass), PvStatus::Ok);
        assert!(pass);
        pv_geometry_free(g);

        let bad = CString::new("{\"points\": [1,\n \"lines\"").unwrap();
        assert_eq!(pv_geometry_from_json(bad.as_ptr(), &mut g), PvStatus::ParseError);
        assert!(last_error().contains("line 2"), "{}", last_error());
    }
}

#[test]
fn null_pointers_are_reported() {
    unsafe {
        assert_eq!(pv_geometry_pg2(2, ptr::null_mut()), PvStatus::NullPointer);
        let mut pass = false;
        assert_eq!(pv_geometry_check_gp(ptr::null(), 3, &mut pass), PvStatus::NullPointer);
        assert!(last_error().contains("null"));
        assert_eq!(pv_geometry_from_json(ptr::null(), ptr::null_mut()), PvStatus::NullPointer);
        pv_geometry_free(ptr::null_mut());
        pv_string_free(ptr::null_mut());
    }
}

#[test]
fn cyclotomic_values() {
    unsafe {
        let (mut a, mut b, mut c) = (ptr::null_mut(), ptr::null_mut(), ptr::null_mut());
        assert_eq!(pv_cyclo_sin_pi_frac(1, 6, &mut a), PvStatus::Ok);
        assert_eq!(pv_cyclo_sin_pi_frac(5, 6, &mut b), PvStatus::Ok);
        let mut equal = false;
        assert_eq!(pv_cyclo_equal(a, b, &mut equal), PvStatus::Ok);
        assert!(equal);
        assert_eq!(pv_cyclo_add(a, b, &mut c), PvStatus::Ok);
        let mut s = ptr::null_mut();
        assert_eq!(pv_cyclo_to_string(c, &mut s), PvStatus::Ok);
        assert_eq!(take_string(s), "1");
        let mut f = 0.0;
        assert_eq!(pv_cyclo_to_f64(a, &mut f), PvStatus::Ok);
        assert!((f - 0.5).abs() < 1e-12);
        pv_cyclo_free(c);

        let mut d = ptr::null_mut();
        assert_eq!(pv_cyclo_sin_pi_frac(1, 4, &mut d), PvStatus::Ok);
        assert_eq!(pv_cyclo_mul(a, d, &mut c), PvStatus::InvalidArgument);
        let mut z = ptr::null_mut();
        assert_eq!(pv_cyclo_sin_pi_frac(0, 6, &mut z), PvStatus::Ok);
        assert_eq!(pv_cyclo_div(a, z, &mut c), PvStatus::InvalidArgument);
        for p in [a, b, d, z] {
            pv_cyclo_free(p);
        }
    }
}

#[test]
fn sequences() {
    unsafe {
        let y = [0i64, 1, 0, 1, 0, 1];
        let mut s = ptr::null_mut();
        assert_eq!(pv_sequence_new(y.as_ptr(), y.len(), &mut s), PvStatus::Ok);
        let (mut r, mut steps) = (ptr::null_mut(), 0);
        assert_eq!(pv_sequence_reduce(s, &mut r, &mut steps), PvStatus::Ok);
        let mut buf = [0i64; 8];
        let mut len = 0;
        assert_eq!(pv_sequence_values(r, buf.as_mut_ptr(), buf.len(), &mut len), PvStatus::Ok);
        assert_eq!(&buf[..len], &[0, 1, 2, 3, 2, 1]);
        assert_eq!(steps, 3);
        let (mut a, mut b) = (ptr::null_mut(), ptr::null_mut());
        assert_eq!(pv_sequence_slope(s, &mut a), PvStatus::Ok);
        assert_eq!(pv_sequence_slope(r, &mut b), PvStatus::Ok);
        let mut equal = false;
        assert_eq!(pv_cyclo_equal(a, b, &mut equal), PvStatus::Ok);
        assert!(equal);
        for p in [a, b] {
            pv_cyclo_free(p);
        }
        pv_sequence_free(s);
        pv_sequence_free(r);

        let bad = [0i64, 2, 1, 0];
        assert_eq!(pv_sequence_new(bad.as_ptr(), bad.len(), &mut s), PvStatus::InvalidArgument);
        assert!(last_error().contains("differ"));
    }
}

#[test]
fn in_process_command_line() {
    unsafe {
        let args: Vec<CString> = ["polyval", "reduce-seq", "--n", "3", "--seq", "0,1,0,1"]
            .iter()
            .map(|a| CString::new(*a).unwrap())
            .collect();
        let ptrs: Vec<_> = args.iter().map(|a| a.as_ptr()).collect();
        let (mut code, mut out) = (-1, ptr::null_mut());
        assert_eq!(pv_run(ptrs.len() as i32, ptrs.as_ptr(), &mut code, &mut out), PvStatus::Ok);
        assert_eq!(code, 0);
        assert!(take_string(out).contains("slope -√3/2"));
        let version = CStr::from_ptr(pv_version()).to_str().unwrap();
        assert_eq!(version, env!("CARGO_PKG_VERSION"));
    }
}
