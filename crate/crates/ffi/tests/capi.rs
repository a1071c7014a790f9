use std::ffi::{CStr, CString};
use std::f64::consts::FRAC_PI_2;
use std::ptr;

use spherical_convex_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(sph_last_error()) }.to_string_lossy().into_owned()
}

#[test]
fn octant_through_json() {
    let json = CString::new(
        r#"{"schema_version":1,"kind":"polygon","vertices":[[1,0,0],[0,1,0],[0,0,1]],
        "segments":[{"center":[0,0,1],"radius":1.5707963267948966,"from":[1,0,0],"to":[0,1,0]},
                    {"center":[1,0,0],"radius":1.5707963267948966,"from":[0,1,0],"to":[0,0,1]},
                    {"center":[0,1,0],"radius":1.5707963267948966,"from":[0,0,1],"to":[1,0,0]}]}"#,
    )
    .unwrap();
    unsafe {
        let mut body = ptr::null_mut();
        assert_eq!(sph_body_from_json(json.as_ptr(), &mut body), SphStatus::Ok, "{}", last_error());
        assert_eq!(sph_body_segment_count(body), 3);
        let (mut t, mut d) = (0.0, 0.0);
        assert_eq!(sph_body_thickness(body, 720, &mut t), SphStatus::Ok);
        assert_eq!(sph_body_diameter(body, 720, &mut d, ptr::null_mut(), ptr::null_mut()), SphStatus::Ok);
        assert!((t - FRAC_PI_2).abs() < 1e-9 && (d - FRAC_PI_2).abs() < 1e-9);
        let mut v = SphVerdict::default();
        assert_eq!(sph_body_check(body, SphProperty::ConstantWidth, 1e-6, 720, &mut v), SphStatus::Ok);
        assert!(v.pass);

        let mut text = ptr::null_mut();
        assert_eq!(sph_body_to_json(body, &mut text), SphStatus::Ok);
        let mut again = ptr::null_mut();
        assert_eq!(sph_body_from_json(text, &mut again), SphStatus::Ok);
        assert_eq!(sph_body_segment_count(again), 3);
        sph_string_free(text);
        sph_body_free(again);
        sph_body_free(body);
    }
}

#[test]
fn error_codes_and_messages() {
    unsafe {
        let mut body = ptr::null_mut();
        assert_eq!(sph_body_regular_odd_gon(4, 1.0, &mut body), SphStatus::InvalidArgument);
        assert!(body.is_null());
        assert!(last_error().contains('4'));
        let c = [0.0, 0.0, 1.0];
        assert_eq!(sph_body_cap(c.as_ptr(), 2.0, &mut body), SphStatus::InvalidArgument);
        assert_eq!(sph_body_cap(ptr::null(), 0.5, &mut body), SphStatus::NullPointer);
        assert_eq!(sph_body_thickness(ptr::null(), 720, &mut 0.0), SphStatus::NullPointer);
        let bad = CString::new(r#"{"schema_version":1,"extra":true}"#).unwrap();
        assert_eq!(sph_body_from_json(bad.as_ptr(), &mut body), SphStatus::Parse);
        sph_body_free(ptr::null_mut());
        sph_wulff_free(ptr::null_mut());
    }
}

#[test]
fn constant_diameter_triangle_is_constant_width() {
    let v = [0.3, 0.0, 1.0, -0.2, 0.25, 1.0, -0.1, -0.3, 1.0];
    unsafe {
        let mut body = ptr::null_mut();
        assert_eq!(sph_body_cd_triangle(v.as_ptr(), &mut body), SphStatus::Ok, "{}", last_error());
        assert_eq!(sph_body_segment_count(body), 6);
        for p in [SphProperty::ConstantWidth, SphProperty::ConstantDiameter, SphProperty::Reduced] {
            let mut verdict = SphVerdict::default();
            assert_eq!(sph_body_check(body, p, 1e-6, 720, &mut verdict), SphStatus::Ok);
            assert!(verdict.pass, "{p:?}");
        }
        sph_body_free(body);
    }
}

#[test]
fn wulff_square_round_trip() {
    let sq = [1.0, 1.0, -1.0, 1.0, -1.0, -1.0, 1.0, -1.0];
    unsafe {
        let mut w = ptr::null_mut();
        assert_eq!(sph_wulff_from_vertices(sq.as_ptr(), 4, &mut w), SphStatus::Ok);
        assert_eq!(sph_wulff_vertex_count(w), 4);
        let mut buf = [0.0; 8];
        assert_eq!(sph_wulff_vertices(w, buf.as_mut_ptr(), 4), SphStatus::BufferTooSmall);
        assert_eq!(sph_wulff_vertices(w, buf.as_mut_ptr(), 8), SphStatus::Ok);

        let (mut pass, mut gap) = (true, 0.0);
        assert_eq!(sph_wulff_self_dual(w, 1e-6, 720, &mut pass, &mut gap), SphStatus::Ok);
        assert!(!pass && gap > 0.1);

        let pole = [0.0, 0.0, 1.0];
        let mut body = ptr::null_mut();
        assert_eq!(sph_wulff_induce(w, pole.as_ptr(), &mut body), SphStatus::Ok);
        let mut back = ptr::null_mut();
        assert_eq!(sph_body_project(body, pole.as_ptr(), 720, &mut back), SphStatus::Ok);
        let mut out = [0.0; 8];
        assert_eq!(sph_wulff_vertices(back, out.as_mut_ptr(), 8), SphStatus::Ok);
        let mut a: Vec<[f64; 2]> = buf.chunks(2).map(|c| [c[0], c[1]]).collect();
        let mut b: Vec<[f64; 2]> = out.chunks(2).map(|c| [c[0], c[1]]).collect();
        a.sort_by(|x, y| x.partial_cmp(y).unwrap());
        b.sort_by(|x, y| x.partial_cmp(y).unwrap());
        for (x, y) in a.iter().zip(&b) {
            assert!((x[0] - y[0]).abs() < 1e-12 && (x[1] - y[1]).abs() < 1e-12);
        }

        let mut disk = ptr::null_mut();
        assert_eq!(sph_wulff_constant(1.0, 720, &mut disk), SphStatus::Ok);
        let mut dual = ptr::null_mut();
        assert_eq!(sph_wulff_dual(disk, 720, &mut dual), SphStatus::Ok);
        assert_eq!(sph_wulff_self_dual(disk, 1e-6, 720, &mut pass, &mut gap), SphStatus::Ok);
        assert!(pass);
        for h in [w, back, disk, dual] {
            sph_wulff_free(h);
        }
        sph_body_free(body);
    }
}

#[test]
fn header_is_generated() {
    let header = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/include/spherical_convex.h")).unwrap();
    for name in ["SphBody", "SphWulff", "SPH_STATUS_OK", "sph_body_cap", "sph_wulff_induce", "sph_last_error"] {
        assert!(header.contains(name), "{name} missing from header");
    }
}

#[test]
fn header_compiles_as_c() {
    let dir = tempfile_dir();
    let src = dir.join("use_header.c");
    std::fs::write(
        &src,
        "#include \"spherical_convex.h\"\nint main(void) { SphBody *b = 0; double c[3] = {0, 0, 1};\n\
         SphStatus s = sph_body_cap(c, 0.5, &b); sph_body_free(b); return s == SPH_STATUS_OK ? 0 : 1; }\n",
    )
    .unwrap();
    let status = match std::process::Command::new("cc")
        .args(["-std=c99", "-Wall", "-Werror", "-fsyntax-only", "-I"])
        .arg(concat!(env!("CARGO_MANIFEST_DIR"), "/include"))
        .arg(&src)
        .status()
    {
        Ok(s) => s,
        Err(_) => {
            eprintln!("no C compiler found; skipping");
            return;
        }
    };
    assert!(status.success());
}

fn tempfile_dir() -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("sph-ffi-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d
}
