//! C ABI over `spherical_convex`.
//!
//! Bodies and Wulff shapes are opaque heap handles released with their `_free`
//! function. Every fallible call returns an [`SphStatus`]; on failure the message is
//! available from [`sph_last_error`] until the next failing call on the same thread.
//! Results are written through out-pointers only on success.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use spherical_convex::body::SphericalBody;
use spherical_convex::constructors;
use spherical_convex::error::Error;
use spherical_convex::io::BodyDocument;
use spherical_convex::metrics;
use spherical_convex::sphere::UnitVec;
use spherical_convex::wulff::{self, GammaFn, ProjectionFrame, WulffShape};

/// Opaque spherical convex body.
pub struct SphBody(SphericalBody);

/// Opaque planar Wulff shape.
pub struct SphWulff(WulffShape);

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Degenerate = 3,
    Unreachable = 4,
    Projection = 5,
    Inconsistent = 6,
    Invariant = 7,
    Parse = 8,
    Io = 9,
    BufferTooSmall = 10,
    Panic = 11,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SphProperty {
    ConstantWidth = 0,
    ConstantDiameter = 1,
    Reduced = 2,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct SphVerdict {
    pub pass: bool,
    pub deviation: f64,
    pub tolerance: f64,
    pub value: f64,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn status_of(e: &Error) -> SphStatus {
    match e {
        Error::ZeroVector
        | Error::DegenerateArc
        | Error::DegenerateLune
        | Error::NoEnclosingHemisphere
        | Error::DegenerateHull(_)
        | Error::EmptyInterior => SphStatus::Degenerate,
        Error::NotSupporting(_) | Error::BadRadius(_) | Error::InvalidSpec(_) | Error::EvenN(_) => {
            SphStatus::InvalidArgument
        }
        Error::Unreachable(_) => SphStatus::Unreachable,
        Error::NotInHemisphere | Error::PoleNotInterior => SphStatus::Projection,
        Error::InconsistentVerdicts(_) => SphStatus::Inconsistent,
        Error::InvariantViolation(_) => SphStatus::Invariant,
        Error::Parse(_) => SphStatus::Parse,
        Error::Io(_) => SphStatus::Io,
    }
}

struct Fail(SphStatus, String);

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail(status_of(&e), e.to_string())
    }
}

fn null(what: &str) -> Fail {
    Fail(SphStatus::NullPointer, format!("{what} is null"))
}

/// Runs `f`, converting errors and panics into a status code.
fn guard(f: impl FnOnce() -> Result<(), Fail>) -> SphStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SphStatus::Ok,
        Ok(Err(Fail(s, m))) => {
            set_error(&m);
            s
        }
        Err(_) => {
            set_error("internal panic");
            SphStatus::Panic
        }
    }
}

unsafe fn vec3(p: *const f64) -> Result<UnitVec, Fail> {
    if p.is_null() {
        return Err(null("vector"));
    }
    let s = std::slice::from_raw_parts(p, 3);
    Ok(UnitVec::new(s[0], s[1], s[2])?)
}

unsafe fn body_ref<'a>(b: *const SphBody) -> Result<&'a SphericalBody, Fail> {
    b.as_ref().map(|b| &b.0).ok_or_else(|| null("body"))
}

unsafe fn wulff_ref<'a>(w: *const SphWulff) -> Result<&'a WulffShape, Fail> {
    w.as_ref().map(|w| &w.0).ok_or_else(|| null("wulff shape"))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_body(out: *mut *mut SphBody, b: SphericalBody) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(SphBody(b))));
    Ok(())
}

unsafe fn put_wulff(out: *mut *mut SphWulff, w: WulffShape) -> Result<(), Fail> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(Box::into_raw(Box::new(SphWulff(w))));
    Ok(())
}

/// Message of the last failing call on this thread; empty if none. Owned by the library.
#[no_mangle]
pub extern "C" fn sph_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

#[no_mangle]
pub unsafe extern "C" fn sph_body_cap(center: *const f64, rho: f64, out: *mut *mut SphBody) -> SphStatus {
    guard(|| put_body(out, constructors::cap(vec3(center)?, rho)?))
}

#[no_mangle]
pub unsafe extern "C" fn sph_body_regular_odd_gon(n: usize, thickness: f64, out: *mut *mut SphBody) -> SphStatus {
    guard(|| put_body(out, constructors::regular_odd_gon(n, thickness)?))
}

/// `vertices` holds 9 doubles: three xyz triples.
#[no_mangle]
pub unsafe extern "C" fn sph_body_cd_triangle(vertices: *const f64, out: *mut *mut SphBody) -> SphStatus {
    guard(|| {
        if vertices.is_null() {
            return Err(null("vertices"));
        }
        let (a, b, c) = (vec3(vertices)?, vec3(vertices.add(3))?, vec3(vertices.add(6))?);
        put_body(out, constructors::constant_diameter_triangle(a, b, c)?)
    })
}

/// `vertices` holds `3 * count` doubles.
#[no_mangle]
pub unsafe extern "C" fn sph_body_cd_odd_gon(vertices: *const f64, count: usize, out: *mut *mut SphBody) -> SphStatus {
    guard(|| {
        if vertices.is_null() {
            return Err(null("vertices"));
        }
        let vs = (0..count).map(|i| vec3(vertices.add(3 * i))).collect::<Result<Vec<_>, _>>()?;
        put_body(out, constructors::constant_diameter_odd_gon(&vs)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sph_body_random_polygon(
    seed: u64,
    n: usize,
    max_diam: f64,
    out: *mut *mut SphBody,
) -> SphStatus {
    guard(|| put_body(out, constructors::random_convex_polygon(seed, n, max_diam)?))
}

/// Parses and validates a body document.
#[no_mangle]
pub unsafe extern "C" fn sph_body_from_json(json: *const c_char, out: *mut *mut SphBody) -> SphStatus {
    guard(|| {
        if json.is_null() {
            return Err(null("json"));
        }
        let text = CStr::from_ptr(json)
            .to_str()
            .map_err(|_| Fail(SphStatus::Parse, "json is not UTF-8".into()))?;
        let doc: BodyDocument = spherical_convex::io::document::from_json(text)?;
        put_body(out, doc.to_body()?)
    })
}

/// Serializes a body; release the string with [`sph_string_free`].
#[no_mangle]
pub unsafe extern "C" fn sph_body_to_json(body: *const SphBody, out: *mut *mut c_char) -> SphStatus {
    guard(|| {
        let text = spherical_convex::io::document::to_json(&BodyDocument::from_body(body_ref(body)?))?;
        let c = CString::new(text).map_err(|_| Fail(SphStatus::Invariant, "interior NUL".into()))?;
        put(out, c.into_raw())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sph_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

#[no_mangle]
pub unsafe extern "C" fn sph_body_free(body: *mut SphBody) {
    if !body.is_null() {
        drop(Box::from_raw(body));
    }
}

/// Number of boundary segments, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn sph_body_segment_count(body: *const SphBody) -> usize {
    body.as_ref().map_or(0, |b| b.0.segments().len())
}

#[no_mangle]
pub unsafe extern "C" fn sph_body_thickness(body: *const SphBody, samples: usize, out: *mut f64) -> SphStatus {
    guard(|| put(out, metrics::thickness(body_ref(body)?, samples)?.value))
}

/// Writes the diameter to `out` and, if non-null, its endpoints to `p` and `q` (3 doubles each).
#[no_mangle]
pub unsafe extern "C" fn sph_body_diameter(
    body: *const SphBody,
    samples: usize,
    out: *mut f64,
    p: *mut f64,
    q: *mut f64,
) -> SphStatus {
    guard(|| {
        let d = metrics::diameter(body_ref(body)?, samples);
        put(out, d.value)?;
        for (dst, v) in [(p, d.p), (q, d.q)] {
            if !dst.is_null() {
                ptr::copy_nonoverlapping(v.to_array().as_ptr(), dst, 3);
            }
        }
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn sph_body_check(
    body: *const SphBody,
    property: SphProperty,
    tol: f64,
    samples: usize,
    out: *mut SphVerdict,
) -> SphStatus {
    guard(|| {
        let b = body_ref(body)?;
        let v = match property {
            SphProperty::ConstantWidth => metrics::is_constant_width(b, tol, samples)?,
            SphProperty::ConstantDiameter => metrics::is_constant_diameter(b, tol, samples),
            SphProperty::Reduced => metrics::reduced_check(b, tol, samples)?,
        };
        put(out, SphVerdict { pass: v.pass, deviation: v.deviation, tolerance: v.tolerance, value: v.value })
    })
}

/// Wulff shape of a constant surface energy over `directions` half-planes.
#[no_mangle]
pub unsafe extern "C" fn sph_wulff_constant(gamma: f64, directions: usize, out: *mut *mut SphWulff) -> SphStatus {
    guard(|| put_wulff(out, wulff::wulff_shape(&GammaFn::constant(gamma)?, directions)?))
}

/// Convex polygon from `2 * count` doubles (x, y pairs); the origin must be interior.
#[no_mangle]
pub unsafe extern "C" fn sph_wulff_from_vertices(xy: *const f64, count: usize, out: *mut *mut SphWulff) -> SphStatus {
    guard(|| {
        if xy.is_null() {
            return Err(null("xy"));
        }
        let s = std::slice::from_raw_parts(xy, 2 * count);
        let pts: Vec<[f64; 2]> = s.chunks_exact(2).map(|c| [c[0], c[1]]).collect();
        put_wulff(out, WulffShape::from_polygon(&pts)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sph_wulff_dual(shape: *const SphWulff, directions: usize, out: *mut *mut SphWulff) -> SphStatus {
    guard(|| put_wulff(out, wulff::dual_wulff(wulff_ref(shape)?, directions)?))
}

#[no_mangle]
pub unsafe extern "C" fn sph_wulff_self_dual(
    shape: *const SphWulff,
    tol: f64,
    directions: usize,
    pass: *mut bool,
    gap: *mut f64,
) -> SphStatus {
    guard(|| {
        let (ok, g) = wulff::is_self_dual(wulff_ref(shape)?, tol, directions)?;
        put(pass, ok)?;
        put(gap, g)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sph_wulff_vertex_count(shape: *const SphWulff) -> usize {
    shape.as_ref().map_or(0, |w| w.0.vertices().len())
}

/// Copies vertices as x, y pairs into `buf`, which must hold `2 * sph_wulff_vertex_count` doubles.
#[no_mangle]
pub unsafe extern "C" fn sph_wulff_vertices(shape: *const SphWulff, buf: *mut f64, capacity: usize) -> SphStatus {
    guard(|| {
        let vs = wulff_ref(shape)?.vertices();
        if buf.is_null() {
            return Err(null("buf"));
        }
        if capacity < 2 * vs.len() {
            return Err(Fail(SphStatus::BufferTooSmall, format!("need {} doubles", 2 * vs.len())));
        }
        ptr::copy_nonoverlapping(vs.as_ptr() as *const f64, buf, 2 * vs.len());
        Ok(())
    })
}

/// Lifts the shape to the sphere through the tangent plane at `pole`.
#[no_mangle]
pub unsafe extern "C" fn sph_wulff_induce(shape: *const SphWulff, pole: *const f64, out: *mut *mut SphBody) -> SphStatus {
    guard(|| {
        let frame = ProjectionFrame::new(vec3(pole)?);
        put_body(out, wulff::induce_spherical(wulff_ref(shape)?, &frame)?)
    })
}

/// Centrally projects a body; a null `pole` uses the body's enclosing center.
#[no_mangle]
pub unsafe extern "C" fn sph_body_project(
    body: *const SphBody,
    pole: *const f64,
    samples: usize,
    out: *mut *mut SphWulff,
) -> SphStatus {
    guard(|| {
        let b = body_ref(body)?;
        let pole = if pole.is_null() { b.enclosing_center() } else { vec3(pole)? };
        put_wulff(out, wulff::project_to_plane(b, &ProjectionFrame::new(pole), samples)?)
    })
}

#[no_mangle]
pub unsafe extern "C" fn sph_wulff_free(shape: *mut SphWulff) {
    if !shape.is_null() {
        drop(Box::from_raw(shape));
    }
}
