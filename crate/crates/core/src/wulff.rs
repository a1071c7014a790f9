//! Planar Wulff shapes, dual Wulff shapes and the central projection to the sphere.

use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use crate::body::{planar_hull_indices, SphericalBody};
use crate::error::{Error, Result};
use crate::metrics::{self, Verdict, VerdictKind, Witness};
use crate::sphere::UnitVec;

pub type Point2 = [f64; 2];

/// Default number of half-plane directions.
pub const DEFAULT_DIRECTIONS: usize = 720;

/// Positive periodic function of the direction angle, piecewise linear between samples.
#[derive(Debug, Clone, PartialEq)]
pub struct GammaFn {
    samples: Vec<(f64, f64)>,
}

impl GammaFn {
    pub fn new(samples: Vec<(f64, f64)>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::InvalidSpec("gamma needs at least one sample".into()));
        }
        for (i, &(a, g)) in samples.iter().enumerate() {
            if !(0.0..TAU).contains(&a) {
                return Err(Error::InvalidSpec(format!("gamma angle {a} outside [0, 2π)")));
            }
            if !(g > 0.0 && g.is_finite()) {
                return Err(Error::InvalidSpec(format!("gamma value {g} is not positive")));
            }
            if i > 0 && a <= samples[i - 1].0 {
                return Err(Error::InvalidSpec("gamma angles must increase strictly".into()));
            }
        }
        Ok(Self { samples })
    }

    pub fn constant(value: f64) -> Result<Self> {
        Self::new(vec![(0.0, value)])
    }

    /// Samples `f` at `n` equispaced angles.
    pub fn tabulate(n: usize, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new((0..n).map(|k| TAU * k as f64 / n as f64).map(|a| (a, f(a))).collect())
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let s = &self.samples;
        let n = s.len();
        if n == 1 {
            return s[0].1;
        }
        let t = (theta - s[0].0).rem_euclid(TAU) + s[0].0;
        let i = s.partition_point(|&(a, _)| a <= t) - 1;
        let (a0, g0) = s[i];
        let (a1, g1) = if i + 1 < n { s[i + 1] } else { (s[0].0 + TAU, s[0].1) };
        g0 + (g1 - g0) * (t - a0) / (a1 - a0)
    }
}

fn dir(theta: f64) -> Point2 {
    let (s, c) = theta.sin_cos();
    [c, s]
}

fn cross(o: Point2, a: Point2, b: Point2) -> f64 {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn hull(points: &[Point2]) -> Vec<Point2> {
    let pts: Vec<(f64, f64)> = points.iter().map(|p| (p[0], p[1])).collect();
    planar_hull_indices(&pts).into_iter().map(|i| points[i]).collect()
}

/// Convex polygon (counterclockwise) with the origin strictly inside.
#[derive(Debug, Clone, PartialEq)]
pub struct WulffShape {
    vertices: Vec<Point2>,
    gamma: GammaFn,
}

impl WulffShape {
    /// Shape from polygon vertices; `gamma` becomes the support function at the edge normals.
    pub fn from_polygon(vertices: &[Point2]) -> Result<Self> {
        let vs = hull(vertices);
        if vs.len() < 3 {
            return Err(Error::EmptyInterior);
        }
        let n = vs.len();
        let mut samples = Vec::with_capacity(n);
        for i in 0..n {
            let (a, b) = (vs[i], vs[(i + 1) % n]);
            let h = a[0] * b[1] - a[1] * b[0];
            let len = (b[0] - a[0]).hypot(b[1] - a[1]);
            if h <= 1e-15 * len {
                return Err(Error::InvariantViolation("origin strictly interior".into()));
            }
            let normal = (a[0] - b[0]).atan2(b[1] - a[1]).rem_euclid(TAU);
            samples.push((normal, h / len));
        }
        samples.sort_by(|x, y| x.0.total_cmp(&y.0));
        samples.dedup_by(|x, y| x.0 <= y.0);
        Ok(Self { vertices: vs, gamma: GammaFn::new(samples)? })
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn gamma(&self) -> &GammaFn {
        &self.gamma
    }

    fn edges(&self) -> impl Iterator<Item = (Point2, Point2)> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| (self.vertices[i], self.vertices[(i + 1) % n]))
    }

    pub fn contains(&self, p: Point2) -> bool {
        self.edges().all(|(a, b)| cross(a, b, p) >= -1e-15)
    }

    fn distance_to(&self, p: Point2) -> f64 {
        if self.contains(p) {
            return 0.0;
        }
        self.edges().map(|(a, b)| segment_distance(p, a, b)).fold(f64::INFINITY, f64::min)
    }

    /// Image under `x ↦ s·x`.
    pub fn scaled(&self, s: f64) -> Result<Self> {
        let vs: Vec<Point2> = self.vertices.iter().map(|v| [v[0] * s, v[1] * s]).collect();
        Self::from_polygon(&vs)
    }
}

fn segment_distance(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = [b[0] - a[0], b[1] - a[1]];
    let ap = [p[0] - a[0], p[1] - a[1]];
    let t = ((ap[0] * ab[0] + ap[1] * ab[1]) / (ab[0] * ab[0] + ab[1] * ab[1])).clamp(0.0, 1.0);
    (ap[0] - t * ab[0]).hypot(ap[1] - t * ab[1])
}

/// Intersection of the half-planes `x·θ ≤ γ(θ)` over `n` equispaced directions and all
/// sample angles of `gamma`.
pub fn wulff_shape(gamma: &GammaFn, n: usize) -> Result<WulffShape> {
    if n < 3 {
        return Err(Error::InvalidSpec(format!("{n} directions; need at least 3")));
    }
    let mut angles: Vec<f64> = (0..n).map(|k| TAU * k as f64 / n as f64).collect();
    angles.extend(gamma.samples().iter().map(|s| s.0));
    angles.sort_by(f64::total_cmp);
    angles.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    // x·θ ≤ γ  ⇔  x·(θ/γ) ≤ 1: the intersection is the polar of the hull of the θ/γ
    let duals: Vec<Point2> = angles
        .iter()
        .map(|&a| {
            let g = gamma.eval(a);
            let d = dir(a);
            [d[0] / g, d[1] / g]
        })
        .collect();
    let h = hull(&duals);
    if h.len() < 3 {
        return Err(Error::EmptyInterior);
    }
    let m = h.len();
    let mut vs = Vec::with_capacity(m);
    for i in 0..m {
        let (a, b) = (h[i], h[(i + 1) % m]);
        let det = a[0] * b[1] - a[1] * b[0];
        if det <= 0.0 {
            // origin not strictly inside the dual hull: the intersection is unbounded
            return Err(Error::EmptyInterior);
        }
        vs.push([(b[1] - a[1]) / det, (a[0] - b[0]) / det]);
    }
    let mut shape = WulffShape::from_polygon(&vs)?;
    shape.gamma = gamma.clone();
    Ok(shape)
}

/// Distance from the origin to the boundary along direction `theta`.
pub fn radial_w(shape: &WulffShape, theta: f64) -> f64 {
    let d = dir(theta);
    let mut best = f64::INFINITY;
    for (a, b) in shape.edges() {
        // outward normal (unnormalized) and its offset
        let nrm = [b[1] - a[1], a[0] - b[0]];
        let nd = nrm[0] * d[0] + nrm[1] * d[1];
        if nd > 0.0 {
            best = best.min((nrm[0] * a[0] + nrm[1] * a[1]) / nd);
        }
    }
    best
}

/// Samples of `θ ↦ 1 / w(θ + π)` at `n` equispaced angles.
pub fn dual_gamma(shape: &WulffShape, n: usize) -> Result<GammaFn> {
    GammaFn::tabulate(n, |a| 1.0 / radial_w(shape, a + PI))
}

/// Wulff shape of `γ̄(θ) = 1 / w(θ + π)`.
pub fn dual_wulff(shape: &WulffShape, n: usize) -> Result<WulffShape> {
    wulff_shape(&dual_gamma(shape, n)?, n)
}

/// Exact Hausdorff distance between two convex polygons.
pub fn hausdorff(a: &WulffShape, b: &WulffShape) -> f64 {
    let directed =
        |x: &WulffShape, y: &WulffShape| x.vertices.iter().map(|&p| y.distance_to(p)).fold(0.0, f64::max);
    directed(a, b).max(directed(b, a))
}

/// `(gap ≤ tol, gap)` with `gap` the Hausdorff distance to the dual shape.
pub fn is_self_dual(shape: &WulffShape, tol: f64, n: usize) -> Result<(bool, f64)> {
    let gap = hausdorff(shape, &dual_wulff(shape, n)?);
    Ok((gap <= tol, gap))
}

/// Hausdorff distance between the shape and its double dual.
pub fn dual_involution_gap(shape: &WulffShape, n: usize) -> Result<f64> {
    Ok(hausdorff(shape, &dual_wulff(&dual_wulff(shape, n)?, n)?))
}

/// Pole `N` and an orthonormal tangent basis `(u, v)` with `u × v = N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProjectionFrame {
    pole: UnitVec,
    u: UnitVec,
    v: UnitVec,
}

impl ProjectionFrame {
    pub fn new(pole: UnitVec) -> Self {
        let (u, v) = pole.tangent_basis();
        Self { pole, u, v }
    }

    pub fn with_basis(pole: UnitVec, u: UnitVec) -> Result<Self> {
        if pole.dot(&u).abs() > 1e-12 {
            return Err(Error::InvariantViolation("frame basis orthogonal to pole".into()));
        }
        let v = pole.cross(&u).normalize()?;
        Ok(Self { pole, u, v })
    }

    pub fn pole(&self) -> UnitVec {
        self.pole
    }

    pub fn basis(&self) -> (UnitVec, UnitVec) {
        (self.u, self.v)
    }

    /// Central projection of a point of the open hemisphere around the pole.
    pub fn project(&self, p: &UnitVec) -> Point2 {
        let w = p.dot(&self.pole);
        [p.dot(&self.u) / w, p.dot(&self.v) / w]
    }

    pub fn lift(&self, x: Point2) -> UnitVec {
        (self.pole.vec() + self.u.vec() * x[0] + self.v.vec() * x[1])
            .normalize()
            .expect("lift of a finite point")
    }
}

/// Central projection of a body's boundary into the tangent plane at the pole.
pub fn project_to_plane(body: &SphericalBody, frame: &ProjectionFrame, n: usize) -> Result<WulffShape> {
    if body.min_dot(&frame.pole) <= 1e-6 {
        return Err(Error::NotInHemisphere);
    }
    if !body.contains(&frame.pole) || body.boundary_distance(&frame.pole) <= 1e-9 {
        return Err(Error::PoleNotInterior);
    }
    let pts: Vec<Point2> = body.boundary_sample(n).iter().map(|p| frame.project(p)).collect();
    WulffShape::from_polygon(&pts)
}

/// Spherical polygon whose vertices are the lifted vertices of the shape.
pub fn induce_spherical(shape: &WulffShape, frame: &ProjectionFrame) -> Result<SphericalBody> {
    let vs: Vec<UnitVec> = shape.vertices.iter().map(|&x| frame.lift(x)).collect();
    SphericalBody::polygon(&vs)
}

pub use metrics::CONDITION_NAMES;

#[derive(Debug, Clone, PartialEq)]
pub struct DualityReport {
    pub self_dual: bool,
    pub hausdorff_gap: f64,
    pub self_dual_verdict: Verdict,
    /// Keyed by [`CONDITION_NAMES`].
    pub four_conditions: BTreeMap<String, Verdict>,
    pub thickness: f64,
    pub diameter: f64,
}

impl DualityReport {
    /// The five booleans in the order self-dual, then [`CONDITION_NAMES`].
    pub fn booleans(&self) -> [bool; 5] {
        let c = |k: &str| self.four_conditions[k].pass;
        [self.self_dual, c(CONDITION_NAMES[0]), c(CONDITION_NAMES[1]), c(CONDITION_NAMES[2]), c(CONDITION_NAMES[3])]
    }

    pub fn all_agree(&self) -> bool {
        let b = self.booleans();
        b.iter().all(|x| *x == b[0])
    }
}

/// The self-duality test of `shape` next to the four conditions on its induced body.
///
/// A verdict with deviation at most `tol` counts as a clear pass and one above `2·tol`
/// as a clear fail; a clear pass next to a clear fail is an `InconsistentVerdicts` error.
///
/// `n` is the sample count for the spherical verdicts and `directions` the half-plane
/// count for the dual shape. The dual's error is first order in the direction step
/// near sharp corners, so `directions` usually needs to exceed `n`.
pub fn self_dual_equivalence_report(
    shape: &WulffShape,
    frame: &ProjectionFrame,
    tol: f64,
    n: usize,
    directions: usize,
) -> Result<DualityReport> {
    let body = induce_spherical(shape, frame)?;
    let (self_dual, gap) = is_self_dual(shape, tol, directions)?;
    let self_dual_verdict = Verdict {
        kind: VerdictKind::SelfDualAux,
        pass: self_dual,
        deviation: gap,
        tolerance: tol,
        value: gap,
        witness: Witness { label: "Hausdorff gap to the dual shape".into(), points: vec![], values: vec![gap] },
    };
    let cond = metrics::right_angle_conditions(&body, tol, n)?;
    let devs: Vec<(&str, f64)> = std::iter::once(("self_dual", gap))
        .chain(cond.verdicts.iter().map(|(k, v)| (k.as_str(), v.deviation)))
        .collect();
    metrics::check_consistency(&devs, tol)?;
    Ok(DualityReport {
        self_dual,
        hausdorff_gap: gap,
        self_dual_verdict,
        four_conditions: cond.verdicts,
        thickness: cond.thickness,
        diameter: cond.diameter,
    })
}
