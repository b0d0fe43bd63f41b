use std::f64::consts::PI;
use std::ptr;
use wkbchain_ffi::*;

fn ramp() -> *mut WkbChain {
    let mut chain = ptr::null_mut();
    let status = unsafe { wkb_chain_from_ramp(PI / 3.0, 2.0 * PI / 3.0, 20, 60, &mut chain) };
    assert_eq!(status, WkbStatus::Ok);
    assert!(!chain.is_null());
    chain
}

fn message() -> String {
    let mut buf = vec![0 as std::ffi::c_char; 256];
    let needed = unsafe { wkb_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(needed > 0);
    let bytes: Vec<u8> = buf
        .iter()
        .take_while(|&&c| c != 0)
        .map(|&c| c as u8)
        .collect();
    String::from_utf8(bytes).unwrap()
}

#[test]
fn ramp_scatter_conserves_flux() {
    let chain = ramp();
    assert_eq!(unsafe { wkb_chain_len(chain) }, 60);
    let (mut r, mut t) = (
        WkbComplex { re: 0.0, im: 0.0 },
        WkbComplex { re: 0.0, im: 0.0 },
    );
    let status = unsafe { wkb_chain_scatter(chain, WkbVariant::Exact as u32, &mut r, &mut t) };
    assert_eq!(status, WkbStatus::Ok);
    // (1 - |R|^2) sin(pi/3) = |T|^2 u_II sin(2 pi/3) with u_II = 1/3.
    let lhs = 1.0 - (r.re * r.re + r.im * r.im);
    let rhs = (t.re * t.re + t.im * t.im) / 3.0;
    assert!((lhs - rhs).abs() < 1e-10);
    unsafe { wkb_chain_free(chain) };
}

#[test]
fn wkb_variants_have_no_reflection() {
    let chain = ramp();
    for v in [WkbVariant::Riccati, WkbVariant::Direct] {
        let (mut r, mut t) = (
            WkbComplex { re: 1.0, im: 1.0 },
            WkbComplex { re: 0.0, im: 0.0 },
        );
        assert_eq!(
            unsafe { wkb_chain_scatter(chain, v as u32, &mut r, &mut t) },
            WkbStatus::Ok
        );
        assert_eq!((r.re, r.im), (0.0, 0.0));
        assert!(t.re.hypot(t.im) > 1.0);
    }
    unsafe { wkb_chain_free(chain) };
}

#[test]
fn profile_buffer_protocol() {
    let chain = ramp();
    let mut n = 0usize;
    let status = unsafe { wkb_chain_profile(chain, 0, ptr::null_mut(), 0, &mut n) };
    assert_eq!(status, WkbStatus::BufferTooSmall);
    assert_eq!(n, 60);
    let mut buf = vec![
        WkbComplex {
            re: f64::NAN,
            im: f64::NAN
        };
        n
    ];
    let status = unsafe { wkb_chain_profile(chain, 0, buf.as_mut_ptr(), buf.len(), &mut n) };
    assert_eq!(status, WkbStatus::Ok);
    assert!(buf.iter().all(|z| z.re.is_finite() && z.im.is_finite()));
    // Left plateau: incident wave of unit amplitude at cell 1 plus a tiny reflection.
    assert!((buf[0].re - 1.0).abs() < 1e-6 && buf[0].im.abs() < 1e-6);
    unsafe { wkb_chain_free(chain) };
}

#[test]
fn delta_p_tracks_the_phase_change() {
    let chain = ramp();
    let mut d = WkbComplex { re: 0.0, im: 0.0 };
    assert_eq!(unsafe { wkb_chain_delta_p(chain, &mut d) }, WkbStatus::Ok);
    assert!(d.re.abs() < 1e-12);
    assert!((d.im + PI / 6.0).abs() < 0.05);
    unsafe { wkb_chain_free(chain) };
}

#[test]
fn band_edge_coefficients_report_the_cell() {
    let f0 = [WkbComplex { re: 1.0, im: 0.0 }; 4];
    let mut f1 = [WkbComplex { re: 0.5, im: 0.0 }; 4];
    f1[2] = WkbComplex { re: -2.0, im: 0.0 };
    let mut chain = ptr::null_mut();
    let status =
        unsafe { wkb_chain_from_coefficients(10, f0.as_ptr(), f1.as_ptr(), 4, &mut chain) };
    assert_eq!(status, WkbStatus::Numerical);
    assert!(chain.is_null());
    let mut cell = 0i64;
    assert!(unsafe { wkb_last_error_cell(&mut cell) });
    assert_eq!(cell, 12);
    assert!(message().contains("cell 12"));
}

#[test]
fn invalid_arguments() {
    let mut chain = ptr::null_mut();
    assert_eq!(
        unsafe { wkb_chain_from_ramp(0.0, 1.0, 2, 10, &mut chain) },
        WkbStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { wkb_chain_from_ramp(1.0, 2.0, 5, 10, &mut chain) },
        WkbStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { wkb_chain_from_ramp(1.0, 2.0, 2, 10, ptr::null_mut()) },
        WkbStatus::NullPointer
    );
    assert!(message().contains("null"));
    let chain = ramp();
    let (mut r, mut t) = (
        WkbComplex { re: 0.0, im: 0.0 },
        WkbComplex { re: 0.0, im: 0.0 },
    );
    assert_eq!(
        unsafe { wkb_chain_scatter(chain, 7, &mut r, &mut t) },
        WkbStatus::InvalidArgument
    );
    assert_eq!(
        unsafe { wkb_chain_scatter(ptr::null(), 0, &mut r, &mut t) },
        WkbStatus::NullPointer
    );
    unsafe { wkb_chain_free(chain) };
    unsafe { wkb_chain_free(ptr::null_mut()) };
    assert_eq!(unsafe { wkb_chain_len(ptr::null()) }, 0);
}

#[test]
fn success_clears_the_error_state() {
    let mut chain = ptr::null_mut();
    assert_ne!(
        unsafe { wkb_chain_from_ramp(0.0, 1.0, 2, 10, &mut chain) },
        WkbStatus::Ok
    );
    let chain = ramp();
    assert_eq!(unsafe { wkb_last_error_message(ptr::null_mut(), 0) }, 0);
    let mut cell = 0;
    assert!(!unsafe { wkb_last_error_cell(&mut cell) });
    unsafe { wkb_chain_free(chain) };
}

#[test]
fn message_truncates_to_capacity() {
    let mut chain = ptr::null_mut();
    unsafe { wkb_chain_from_ramp(0.0, 1.0, 2, 10, &mut chain) };
    let mut buf = [1 as std::ffi::c_char; 8];
    let needed = unsafe { wkb_last_error_message(buf.as_mut_ptr(), buf.len()) };
    assert!(needed > 8);
    assert_eq!(buf[7], 0);
}
