//! Convex bodies on S² bounded by a cyclic sequence of circular arcs.
//!
//! Every boundary piece is an arc of a circle (great or small) traversed
//! counterclockwise as seen from outside the sphere above its center, with
//! the body on its left. A body also carries an interior point whose open
//! hemisphere contains the whole body; membership queries are radial from it.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use crate::error::{Error, Result};
use crate::sphere::{antipode, dist, Hemisphere, Lune, UnitVec, Vec3};

/// Radii at or above this are treated as great circles.
const GREAT_EPS: f64 = 1e-12;
/// Boundary pieces shorter than this (in radians of arc) are dropped.
const ELIDE_LEN: f64 = 1e-13;
/// Tangent-direction tolerance separating corners from smooth junctions.
pub const CORNER_TOL: f64 = 1e-8;

fn wrap_tau(a: f64) -> f64 {
    let r = a.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

/// One circular arc of a body boundary.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundarySegment {
    center: UnitVec,
    radius: f64,
    start: UnitVec,
    end: UnitVec,
    cos_r: f64,
    sin_r: f64,
    e1: UnitVec,
    e2: UnitVec,
    sweep: f64,
}

impl BoundarySegment {
    /// Arc of the circle `(center, radius)` from `start` counterclockwise to `end`.
    ///
    /// Coincident endpoints denote the full circle.
    pub fn new(center: UnitVec, radius: f64, start: UnitVec, end: UnitVec) -> Result<Self> {
        let mut seg = Self::with_sweep(center, radius, start, TAU)?;
        if (dist(&center, &end) - radius).abs() > 1e-10 {
            return Err(Error::InvariantViolation(format!(
                "segment end at distance {} from center, radius {}",
                dist(&center, &end),
                radius
            )));
        }
        let mut sweep = wrap_tau(seg.azimuth(&end));
        if sweep < 1e-12 || sweep > TAU - 1e-12 {
            sweep = TAU;
        }
        seg.sweep = sweep;
        seg.end = end;
        Ok(seg)
    }

    /// Arc with an explicit counterclockwise sweep in `(0, 2π]`.
    pub fn with_sweep(center: UnitVec, radius: f64, start: UnitVec, sweep: f64) -> Result<Self> {
        if !(radius > 0.0 && radius <= FRAC_PI_2 + GREAT_EPS) {
            return Err(Error::BadRadius(radius));
        }
        if !(sweep > 0.0 && sweep <= TAU + 1e-12) {
            return Err(Error::InvariantViolation(format!("segment sweep {sweep}")));
        }
        if (dist(&center, &start) - radius).abs() > 1e-10 {
            return Err(Error::InvariantViolation(format!(
                "segment start at distance {} from center, radius {}",
                dist(&center, &start),
                radius
            )));
        }
        let great = radius >= FRAC_PI_2 - GREAT_EPS;
        let (sin_r, cos_r) = if great { (1.0, 0.0) } else { radius.sin_cos() };
        let radius = if great { FRAC_PI_2 } else { radius };
        let e1 = center
            .direction_to(&start)
            .ok_or_else(|| Error::InvariantViolation("segment start coincides with center".into()))?;
        let e2 = center.cross(&e1).normalize()?;
        let mut seg = Self {
            center,
            radius,
            start,
            end: start,
            cos_r,
            sin_r,
            e1,
            e2,
            sweep: sweep.min(TAU),
        };
        seg.end = if sweep >= TAU { start } else { seg.point_at_angle(sweep) };
        Ok(seg)
    }

    /// Great-circle edge from `a` to `b` (shorter arc).
    pub fn great(a: UnitVec, b: UnitVec) -> Result<Self> {
        let pole = a.cross(&b).normalize().map_err(|_| Error::DegenerateArc)?;
        let sweep = dist(&a, &b);
        if sweep < 1e-12 || sweep > PI - 1e-9 {
            return Err(Error::DegenerateArc);
        }
        let mut seg = Self::with_sweep(pole, FRAC_PI_2, a, sweep)?;
        seg.end = b;
        Ok(seg)
    }

    pub fn center(&self) -> UnitVec {
        self.center
    }
    pub fn radius(&self) -> f64 {
        self.radius
    }
    pub fn start(&self) -> UnitVec {
        self.start
    }
    pub fn end(&self) -> UnitVec {
        self.end
    }
    pub fn sweep(&self) -> f64 {
        self.sweep
    }
    pub fn is_great(&self) -> bool {
        self.cos_r == 0.0
    }
    pub fn is_full_circle(&self) -> bool {
        self.sweep >= TAU
    }

    /// Arc length on the unit sphere.
    pub fn length(&self) -> f64 {
        self.sin_r * self.sweep
    }

    /// Sample-allocation weight: arc length plus geodesic turning.
    fn weight(&self) -> f64 {
        self.sweep * (self.sin_r + self.cos_r)
    }

    #[inline]
    fn radial(&self, phi: f64) -> Vec3 {
        let (s, c) = phi.sin_cos();
        self.e1.vec() * c + self.e2.vec() * s
    }

    /// Point at azimuth `phi` measured counterclockwise from `start` around the center.
    pub fn point_at_angle(&self, phi: f64) -> UnitVec {
        let v = self.center.vec() * self.cos_r + self.radial(phi) * self.sin_r;
        v.normalize().expect("circle point")
    }

    /// Point at fraction `t ∈ [0, 1]` of the sweep.
    pub fn point_at(&self, t: f64) -> UnitVec {
        if t <= 0.0 {
            self.start
        } else if t >= 1.0 {
            self.end
        } else {
            self.point_at_angle(t * self.sweep)
        }
    }

    /// Unit tangent in the traversal direction at azimuth `phi`.
    pub fn tangent_at_angle(&self, phi: f64) -> UnitVec {
        let (s, c) = phi.sin_cos();
        (self.e2.vec() * c - self.e1.vec() * s).normalize().expect("tangent")
    }

    /// Inward unit normal at azimuth `phi`: the center of the hemisphere supporting
    /// the arc there.
    pub fn inward_normal_at_angle(&self, phi: f64) -> UnitVec {
        let v = self.center.vec() * self.sin_r - self.radial(phi) * self.cos_r;
        v.normalize().expect("normal")
    }

    /// Azimuth of the projection of `p` around the center, in `(-π, π]`.
    pub fn azimuth(&self, p: &UnitVec) -> f64 {
        p.dot(&self.e2).atan2(p.dot(&self.e1))
    }

    fn in_sweep(&self, phi: f64) -> Option<f64> {
        let w = wrap_tau(phi);
        if w <= self.sweep {
            Some(w)
        } else {
            None
        }
    }

    /// Point of the arc with the smallest dot product with `p` (the farthest point).
    pub fn farthest_point(&self, p: &UnitVec) -> UnitVec {
        let a = p.dot(&self.e1);
        let b = p.dot(&self.e2);
        let mut best = self.start;
        let mut best_dot = self.start.dot(p);
        let e = self.end;
        if e.dot(p) < best_dot {
            best = e;
            best_dot = e.dot(p);
        }
        if a.hypot(b) > 0.0 {
            if let Some(phi) = self.in_sweep(b.atan2(a) + PI) {
                let q = self.point_at_angle(phi);
                if q.dot(p) < best_dot {
                    best = q;
                }
            }
        }
        best
    }

    /// Point of the arc with the largest dot product with `p` (the nearest point).
    pub fn nearest_point(&self, p: &UnitVec) -> UnitVec {
        let a = p.dot(&self.e1);
        let b = p.dot(&self.e2);
        let mut best = self.start;
        let mut best_dot = self.start.dot(p);
        let e = self.end;
        if e.dot(p) > best_dot {
            best = e;
            best_dot = e.dot(p);
        }
        if a.hypot(b) > 0.0 {
            if let Some(phi) = self.in_sweep(b.atan2(a)) {
                let q = self.point_at_angle(phi);
                if q.dot(p) > best_dot {
                    best = q;
                }
            }
        }
        best
    }

    /// Minimum of `x·p` over the arc.
    #[inline]
    pub fn min_dot(&self, p: &UnitVec) -> f64 {
        self.farthest_point(p).dot(p)
    }

    /// Sub-intervals of `[0, sweep]` (as azimuth pairs) where `x·u ≥ 0`.
    fn positive_intervals(&self, u: &UnitVec) -> Vec<(f64, f64)> {
        let k = self.cos_r * self.center.dot(u);
        let a = self.sin_r * self.e1.dot(u);
        let b = self.sin_r * self.e2.dot(u);
        let r = a.hypot(b);
        if r <= 1e-15 || k.abs() >= r {
            return if k >= 0.0 { vec![(0.0, self.sweep)] } else { vec![] };
        }
        let psi = b.atan2(a);
        let half = (-k / r).acos();
        // positive on the open window (psi - half, psi + half) modulo 2π
        let lo = wrap_tau(psi - half);
        let hi = lo + 2.0 * half;
        let mut out = Vec::new();
        for shift in [-TAU, 0.0, TAU] {
            let (l, h) = (lo + shift, hi + shift);
            let l2 = l.max(0.0);
            let h2 = h.min(self.sweep);
            if h2 > l2 {
                out.push((l2, h2));
            }
        }
        out.sort_by(|x, y| x.0.total_cmp(&y.0));
        out
    }

    fn sub_arc(&self, from: f64, to: f64) -> Result<Self> {
        let mut s = Self::with_sweep(self.center, self.radius, self.point_at_angle(from), to - from)?;
        if to > self.sweep {
            s.end = self.point_at_angle(to - self.sweep);
        } else if to >= self.sweep {
            s.end = self.end;
        }
        if from <= 0.0 {
            s.start = self.start;
        }
        Ok(s)
    }
}

/// Extreme points of a body: corner junctions plus every point of a strictly curved arc.
#[derive(Debug, Clone, PartialEq)]
pub struct ExtremeSet {
    pub isolated: Vec<UnitVec>,
    pub strict_arcs: Vec<usize>,
}

/// A convex body on S² with a circular-arc boundary.
#[derive(Debug, Clone)]
pub struct SphericalBody {
    segments: Vec<BoundarySegment>,
    center: UnitVec,
    frame: (UnitVec, UnitVec),
    start_az: Vec<f64>,
}

impl PartialEq for SphericalBody {
    fn eq(&self, other: &Self) -> bool {
        self.segments == other.segments && self.center == other.center
    }
}

/// A boundary sample together with its boundary parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryPoint {
    pub point: UnitVec,
    /// Segment index plus fraction along the segment.
    pub param: f64,
}

impl SphericalBody {
    /// Body from a closed boundary and an interior point whose open hemisphere holds the body.
    pub fn new(segments: Vec<BoundarySegment>, enclosing_center: UnitVec) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvariantViolation("closed boundary: no segments".into()));
        }
        let body = Self::assemble(segments, enclosing_center);
        body.validate()?;
        Ok(body)
    }

    /// Body from a closed boundary; the interior point is computed.
    pub fn from_segments(segments: Vec<BoundarySegment>) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::InvariantViolation("closed boundary: no segments".into()));
        }
        let probe = Self::assemble(segments.clone(), segments[0].start);
        probe.validate_closure()?;
        let center = probe.find_center()?;
        Self::new(segments, center)
    }

    /// Convex spherical polygon with the given vertices in cyclic order (either orientation).
    pub fn polygon(vertices: &[UnitVec]) -> Result<Self> {
        let mut vs: Vec<UnitVec> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if vs.last().is_none_or(|w| dist(w, v) > 1e-12) {
                vs.push(*v);
            }
        }
        while vs.len() > 1 && dist(&vs[0], vs.last().unwrap()) <= 1e-12 {
            vs.pop();
        }
        if vs.len() < 3 {
            return Err(Error::DegenerateHull("fewer than 3 distinct vertices"));
        }
        let mean = vs.iter().fold(Vec3::default(), |acc, v| acc + v.vec());
        let mean = mean.normalize().map_err(|_| Error::NoEnclosingHemisphere)?;
        let n = vs.len();
        let orient: f64 = (0..n).map(|i| vs[i].cross(&vs[(i + 1) % n]).dot(mean.vec())).sum();
        if orient < 0.0 {
            vs.reverse();
        }
        let segs = (0..vs.len())
            .map(|i| BoundarySegment::great(vs[i], vs[(i + 1) % vs.len()]))
            .collect::<Result<Vec<_>>>()?;
        Self::from_segments(segs)
    }

    fn assemble(segments: Vec<BoundarySegment>, center: UnitVec) -> Self {
        let frame = center.tangent_basis();
        let mut body = Self { segments, center, frame, start_az: Vec::new() };
        let mut az = Vec::with_capacity(body.segments.len() + 1);
        let mut prev = body.azimuth_from_center(&body.segments[0].start);
        az.push(prev);
        for seg in &body.segments[1..] {
            let a = body.azimuth_from_center(&seg.start);
            let mut d = wrap_tau(a - prev);
            if d > TAU - 1e-12 {
                d = 0.0;
            }
            prev += d;
            az.push(prev);
        }
        body.start_az = az;
        body
    }

    pub fn segments(&self) -> &[BoundarySegment] {
        &self.segments
    }

    pub fn enclosing_center(&self) -> UnitVec {
        self.center
    }

    /// True when every boundary piece is a great-circle edge.
    pub fn is_polygon(&self) -> bool {
        self.segments.iter().all(|s| s.is_great())
    }

    /// Segment start points; for a polygon these are its vertices.
    pub fn vertices(&self) -> Vec<UnitVec> {
        self.segments.iter().map(|s| s.start).collect()
    }

    fn azimuth_from_center(&self, p: &UnitVec) -> f64 {
        p.dot(&self.frame.1).atan2(p.dot(&self.frame.0))
    }

    fn validate_closure(&self) -> Result<()> {
        let n = self.segments.len();
        for i in 0..n {
            let a = self.segments[i].end;
            let b = self.segments[(i + 1) % n].start;
            if dist(&a, &b) > 1e-10 {
                return Err(Error::InvariantViolation(format!(
                    "closed boundary: gap {:e} after segment {i}",
                    dist(&a, &b)
                )));
            }
        }
        if n == 1 && !self.segments[0].is_full_circle() {
            return Err(Error::InvariantViolation("closed boundary: single open arc".into()));
        }
        Ok(())
    }

    /// Structural checks: closure, no reflex junctions, open hemisphere, interior center, simple boundary.
    pub fn validate(&self) -> Result<()> {
        self.validate_closure()?;
        for i in 0..self.segments.len() {
            let t = self.junction_turn(i);
            if t < -1e-9 || t > PI - 1e-9 {
                return Err(Error::InvariantViolation(format!(
                    "convexity: reflex or cusp junction {i} (turn {t})"
                )));
            }
        }
        let md = self.min_dot(&self.center);
        if !(md > 1e-6) {
            return Err(Error::InvariantViolation(format!(
                "open hemisphere: min dot with enclosing center {md:e}"
            )));
        }
        let inner = self.boundary_distance(&self.center);
        if !(inner > 1e-9) {
            return Err(Error::InvariantViolation(format!(
                "nonempty interior: enclosing center {inner:e} from boundary"
            )));
        }
        // boundary must wind exactly once, monotonically, around the center
        let mut total = 0.0;
        for seg in &self.segments {
            let k = 4usize;
            let mut prev = self.azimuth_from_center(&seg.start);
            for j in 1..=k {
                let p = seg.point_at(j as f64 / k as f64);
                let a = self.azimuth_from_center(&p);
                let mut d = a - prev;
                if d > PI {
                    d -= TAU;
                } else if d < -PI {
                    d += TAU;
                }
                if d < -1e-12 {
                    return Err(Error::InvariantViolation("simple boundary: azimuth reverses".into()));
                }
                total += d;
                prev = a;
            }
        }
        if (total - TAU).abs() > 1e-6 {
            return Err(Error::InvariantViolation(format!(
                "simple boundary: winding angle {total}"
            )));
        }
        Ok(())
    }

    /// Sampled convexity check: arcs between random boundary sample pairs stay inside.
    pub fn check_convexity(&self, pairs: usize, seed: u64) -> Result<()> {
        use rand::{Rng, SeedableRng};
        let samples = self.boundary_sample(256.max(self.segments.len()));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..pairs {
            let a = samples[rng.random_range(0..samples.len())];
            let b = samples[rng.random_range(0..samples.len())];
            if dist(&a, &b) < 1e-9 {
                continue;
            }
            for t in [0.25, 0.5, 0.75] {
                let p = crate::sphere::geodesic_point(&a, &b, t)?;
                if !self.contains(&p) {
                    return Err(Error::InvariantViolation(
                        "convexity: chord between boundary points leaves the body".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Signed turning angle at the start of segment `i` (positive = left, convex).
    pub fn junction_turn(&self, i: usize) -> f64 {
        let n = self.segments.len();
        let prev = &self.segments[(i + n - 1) % n];
        let cur = &self.segments[i];
        let x = cur.start;
        let t_in = prev.tangent_at_angle(prev.sweep);
        let t_out = cur.tangent_at_angle(0.0);
        t_in.cross(&t_out).dot(x.vec()).atan2(t_in.dot(&t_out))
    }

    fn find_center(&self) -> Result<UnitVec> {
        let samples = self.boundary_sample(256.max(self.segments.len()));
        let mean = samples.iter().fold(Vec3::default(), |acc, v| acc + v.vec());
        let mean = mean.normalize().map_err(|_| Error::NoEnclosingHemisphere)?;
        if self.min_dot(&mean) > 1e-6 {
            return Ok(mean);
        }
        let cheb = max_min_dot_center(&samples).ok_or(Error::NoEnclosingHemisphere)?;
        let mut t = 0.5;
        for _ in 0..60 {
            let o = (cheb.vec() * (1.0 - t) + mean.vec() * t).normalize()?;
            if self.min_dot(&o) > 1e-6 && self.boundary_distance(&o) > 1e-9 {
                return Ok(o);
            }
            t *= 0.5;
        }
        Err(Error::NoEnclosingHemisphere)
    }

    /// Minimum of `x·p` over the body (attained on the boundary).
    pub fn min_dot(&self, p: &UnitVec) -> f64 {
        self.segments.iter().map(|s| s.min_dot(p)).fold(f64::INFINITY, f64::min)
    }

    /// Farthest body point from `p` and its distance.
    pub fn farthest(&self, p: &UnitVec) -> (UnitVec, f64) {
        let mut best = self.segments[0].start;
        let mut best_dot = f64::INFINITY;
        for s in &self.segments {
            let q = s.farthest_point(p);
            let d = q.dot(p);
            if d < best_dot {
                best_dot = d;
                best = q;
            }
        }
        (best, dist(&best, p))
    }

    /// Distance from `p` to the nearest boundary point.
    pub fn boundary_distance(&self, p: &UnitVec) -> f64 {
        self.segments
            .iter()
            .map(|s| dist(&s.nearest_point(p), p))
            .fold(f64::INFINITY, f64::min)
    }

    /// Spherical distance from the enclosing center to the boundary along azimuth `phi`.
    pub fn radial_distance(&self, phi: f64) -> f64 {
        let (e1, e2) = self.frame;
        let d = (e1.vec() * phi.cos() + e2.vec() * phi.sin()).normalize().expect("direction");
        let n = self.segments.len();
        let base = self.start_az[0];
        let rel = wrap_tau(phi - base) + base;
        // last segment whose start azimuth is ≤ rel
        let idx = match self.start_az[..n].partition_point(|&a| a <= rel) {
            0 => n - 1,
            k => k - 1,
        };
        let seg = &self.segments[idx];
        let oc = self.center.dot(&seg.center);
        let dc = d.dot(&seg.center);
        let amp = oc.hypot(dc);
        let phi0 = dc.atan2(oc);
        let ratio = (seg.cos_r / amp).clamp(-1.0, 1.0);
        wrap_tau(phi0 + ratio.acos())
    }

    /// Distance from the enclosing center to `p` minus the radial extent in `p`'s direction.
    /// Negative inside, positive outside.
    pub fn radial_excess(&self, p: &UnitVec) -> f64 {
        let r = dist(&self.center, p);
        if r < 1e-15 {
            return -self.radial_distance(0.0);
        }
        r - self.radial_distance(self.azimuth_from_center(p))
    }

    /// Closed-body membership with angular tolerance 1e-9.
    pub fn contains(&self, p: &UnitVec) -> bool {
        let r = dist(&self.center, p);
        if r < 1e-15 {
            return true;
        }
        if p.dot(&self.center) <= 0.0 {
            return false;
        }
        let phi = self.azimuth_from_center(p);
        r <= self.radial_distance(phi) + 1e-9
    }

    /// Point at boundary parameter `s` (segment index + fraction), wrapping cyclically.
    pub fn point_at_param(&self, s: f64) -> UnitVec {
        let n = self.segments.len() as f64;
        let s = s.rem_euclid(n);
        let i = (s.floor() as usize).min(self.segments.len() - 1);
        self.segments[i].point_at(s - i as f64)
    }

    /// Supporting-hemisphere center (inward normal) at boundary parameter `s`.
    ///
    /// At a corner this is the normal of the outgoing segment.
    pub fn normal_at_param(&self, s: f64) -> UnitVec {
        let n = self.segments.len() as f64;
        let s = s.rem_euclid(n);
        let i = (s.floor() as usize).min(self.segments.len() - 1);
        let seg = &self.segments[i];
        seg.inward_normal_at_angle((s - i as f64) * seg.sweep)
    }

    fn sample_counts(&self, n: usize) -> Vec<usize> {
        let m = self.segments.len();
        let n = n.max(m);
        let weights: Vec<f64> = self.segments.iter().map(|s| s.weight()).collect();
        let total: f64 = weights.iter().sum();
        let extra = (n - m) as f64;
        let mut counts = vec![1usize; m];
        let mut rema: Vec<(f64, usize)> = Vec::with_capacity(m);
        let mut used = m;
        for (i, w) in weights.iter().enumerate() {
            let share = extra * w / total;
            let k = share.floor() as usize;
            counts[i] += k;
            used += k;
            rema.push((share - k as f64, i));
        }
        rema.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        for &(_, i) in rema.iter().take(n - used) {
            counts[i] += 1;
        }
        counts
    }

    /// `n` boundary points in order, equidistributed per segment, including every junction.
    ///
    /// `n` is raised to the segment count when smaller.
    pub fn boundary_points(&self, n: usize) -> Vec<BoundaryPoint> {
        let counts = self.sample_counts(n);
        let mut out = Vec::with_capacity(counts.iter().sum());
        for (i, (seg, &k)) in self.segments.iter().zip(&counts).enumerate() {
            for j in 0..k {
                let t = j as f64 / k as f64;
                out.push(BoundaryPoint { point: seg.point_at(t), param: i as f64 + t });
            }
        }
        out
    }

    pub fn boundary_sample(&self, n: usize) -> Vec<UnitVec> {
        self.boundary_points(n).into_iter().map(|b| b.point).collect()
    }

    /// Corner junctions and strictly curved arcs.
    pub fn extreme_points(&self) -> ExtremeSet {
        let mut isolated = Vec::new();
        for i in 0..self.segments.len() {
            if self.junction_turn(i) > CORNER_TOL {
                isolated.push(self.segments[i].start);
            }
        }
        let strict_arcs = (0..self.segments.len()).filter(|&i| !self.segments[i].is_great()).collect();
        ExtremeSet { isolated, strict_arcs }
    }

    /// No corner junctions (numerical proxy for smoothness).
    pub fn is_smooth(&self) -> bool {
        (0..self.segments.len()).all(|i| self.junction_turn(i) <= CORNER_TOL)
    }

    /// The polar body `C° = { c : x·c ≥ 0 for all x ∈ C }`, constructed exactly.
    ///
    /// A small-circle arc `(c, ρ)` maps to the arc `(c, π/2 − ρ)` of equal sweep, a
    /// corner `v` maps to the great-circle edge `{u : u·v = 0}` between the adjacent
    /// normals, and great-circle edges collapse to vertices.
    pub fn polar_dual(&self) -> Result<SphericalBody> {
        let n = self.segments.len();
        let mut out = Vec::with_capacity(2 * n);
        for i in 0..n {
            let prev = &self.segments[(i + n - 1) % n];
            let cur = &self.segments[i];
            let turn = self.junction_turn(i);
            if turn > ELIDE_LEN {
                let from = prev.inward_normal_at_angle(prev.sweep);
                out.push(BoundarySegment::with_sweep(cur.start, FRAC_PI_2, from, turn)?);
            }
            if !cur.is_great() {
                let r = FRAC_PI_2 - cur.radius;
                if r * cur.sweep > ELIDE_LEN {
                    let from = cur.inward_normal_at_angle(0.0);
                    out.push(BoundarySegment::with_sweep(cur.center, r, from, cur.sweep)?);
                }
            }
        }
        if out.is_empty() {
            return Err(Error::InvariantViolation("polar dual is degenerate".into()));
        }
        // stitch rounding gaps so the next start is exactly the previous end
        let m = out.len();
        for i in 0..m {
            let end = out[i].end;
            let nx = &mut out[(i + 1) % m];
            if m > 1 {
                nx.start = end;
            }
        }
        match SphericalBody::new(out.clone(), self.center) {
            Ok(b) => Ok(b),
            Err(_) => SphericalBody::from_segments(out),
        }
    }

    /// Centers of `n` supporting hemispheres, in order around the polar body boundary.
    pub fn supporting_hemisphere_centers(&self, n: usize) -> Result<Vec<UnitVec>> {
        Ok(self.polar_dual()?.boundary_sample(n))
    }

    /// `C ∩ H(u)`.
    pub fn clip(&self, u: &UnitVec) -> Result<SphericalBody> {
        let n = self.segments.len();
        // kept pieces in boundary order: (segment, from, to)
        let mut pieces: Vec<(usize, f64, f64)> = Vec::new();
        for (i, seg) in self.segments.iter().enumerate() {
            for (a, b) in seg.positive_intervals(u) {
                if (b - a) * seg.sin_r > ELIDE_LEN {
                    pieces.push((i, a, b));
                }
            }
        }
        if pieces.is_empty() {
            return Err(Error::InvariantViolation("nonempty interior: clip removes the body".into()));
        }
        if pieces.len() == n
            && pieces.iter().all(|&(i, a, b)| a == 0.0 && b >= self.segments[i].sweep)
        {
            return Ok(self.clone());
        }
        let connects = |p: &(usize, f64, f64), q: &(usize, f64, f64)| {
            let sp = &self.segments[p.0];
            p.2 >= sp.sweep - 1e-15 && q.1 <= 1e-15 && q.0 == (p.0 + 1) % n
        };
        // rotate so the first piece starts right after the cut
        let k = pieces.len();
        let first = (0..k).find(|&j| !connects(&pieces[(j + k - 1) % k], &pieces[j])).unwrap_or(0);
        pieces.rotate_left(first);
        // a full circle split at its seam comes back as two connected pieces
        if k >= 2 && connects(&pieces[0], &pieces[1]) && pieces[0].0 == pieces[1].0 {
            let sweep = self.segments[pieces[0].0].sweep;
            let (i, a, _) = pieces[0];
            let b = pieces[1].2 + sweep;
            pieces.splice(0..2, [(i, a, b)]);
        }
        let k = pieces.len();
        let mut segs = Vec::with_capacity(k + 1);
        for j in 0..k {
            let (i, a, b) = pieces[j];
            segs.push(self.segments[i].sub_arc(a, b)?);
            let next = &pieces[(j + 1) % k];
            if !connects(&pieces[j], next) {
                let from = segs.last().unwrap().end;
                let to = self.segments[next.0].point_at_angle(next.1);
                let mut cut = BoundarySegment::new(*u, FRAC_PI_2, from, to)?;
                cut.end = to;
                if cut.length() > ELIDE_LEN && cut.sweep < PI {
                    segs.push(cut);
                }
            }
        }
        let m = segs.len();
        for i in 0..m {
            let end = segs[i].end;
            if m > 1 {
                segs[(i + 1) % m].start = end;
            }
        }
        SphericalBody::from_segments(segs)
    }

    /// Points where the boundary leaves and re-enters `H(u)`, with the inward normals
    /// there: `(exit, exit normal, entry, entry normal)`.
    pub fn cut_crossings(&self, u: &UnitVec) -> Option<(UnitVec, UnitVec, UnitVec, UnitVec)> {
        let n = self.segments.len();
        let ints: Vec<Vec<(f64, f64)>> = self.segments.iter().map(|s| s.positive_intervals(u)).collect();
        let starts_kept = |i: usize| ints[i].first().is_some_and(|iv| iv.0 <= 1e-15);
        let ends_kept = |i: usize| ints[i].last().is_some_and(|iv| iv.1 >= self.segments[i].sweep - 1e-15);
        let (mut exit, mut entry) = (None, None);
        for (i, seg) in self.segments.iter().enumerate() {
            for (j, &(a, b)) in ints[i].iter().enumerate() {
                let ends_inside = b < seg.sweep - 1e-15 || !starts_kept((i + 1) % n);
                let begins_inside = a > 1e-15 || !ends_kept((i + n - 1) % n);
                // a full circle reports its seam as a split; skip the seam
                let seam = seg.is_full_circle() && ints[i].len() == 2;
                if ends_inside && exit.is_none() && !(seam && j == 1) {
                    exit = Some((seg.point_at_angle(b), seg.inward_normal_at_angle(b)));
                }
                if begins_inside && entry.is_none() && !(seam && j == 0) {
                    entry = Some((seg.point_at_angle(a), seg.inward_normal_at_angle(a)));
                }
            }
        }
        let ((c1, n1), (c2, n2)) = (exit?, entry?);
        Some((c1, n1, c2, n2))
    }

    /// True when `H(g) ∩ H(h)` contains the body (tolerance 1e-10).
    pub fn inside_lune(&self, lune: &Lune) -> bool {
        self.min_dot(&lune.g.center) >= -1e-10 && self.min_dot(&lune.h.center) >= -1e-10
    }

    /// True when the hemisphere contains the body (tolerance 1e-10).
    pub fn inside_hemisphere(&self, h: &Hemisphere) -> bool {
        self.min_dot(&h.center) >= -1e-10
    }
}

/// `lune_contains`: every point of the body lies in both hemispheres of the lune.
pub fn lune_contains(lune: &Lune, body: &SphericalBody) -> bool {
    body.inside_lune(lune)
}

/// Center maximizing the minimum dot product with `points` (projected subgradient ascent).
fn max_min_dot_center(points: &[UnitVec]) -> Option<UnitVec> {
    let mean = points.iter().fold(Vec3::default(), |acc, v| acc + v.vec());
    let mut c = mean.normalize().unwrap_or(points[0]);
    let score = |c: &UnitVec| points.iter().map(|p| p.dot(c)).fold(f64::INFINITY, f64::min);
    let mut best = c;
    let mut best_score = score(&c);
    for k in 0..4000 {
        let worst = points
            .iter()
            .min_by(|a, b| a.dot(&c).total_cmp(&b.dot(&c)))
            .copied()
            .unwrap();
        let step = 1.0 / (k as f64 + 2.0);
        c = (c.vec() + worst.vec() * step).normalize().ok()?;
        let s = score(&c);
        if s > best_score {
            best_score = s;
            best = c;
        }
    }
    Some(best).filter(|_| best_score > 1e-6)
}

/// Finds a point whose open hemisphere contains all `points` with margin 1e-6.
pub fn enclosing_center(points: &[UnitVec]) -> Result<UnitVec> {
    if points.is_empty() {
        return Err(Error::DegenerateHull("no points"));
    }
    let mean = points.iter().fold(Vec3::default(), |acc, v| acc + v.vec());
    if let Ok(m) = mean.normalize() {
        if points.iter().all(|p| p.dot(&m) > 1e-6) {
            return Ok(m);
        }
    }
    max_min_dot_center(points).ok_or(Error::NoEnclosingHemisphere)
}

fn cross2(o: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
}

/// Indices of the strict convex hull (counterclockwise) of planar points, monotone chain.
pub(crate) fn planar_hull_indices(pts: &[(f64, f64)]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..pts.len()).collect();
    idx.sort_by(|&a, &b| pts[a].0.total_cmp(&pts[b].0).then(pts[a].1.total_cmp(&pts[b].1)));
    idx.dedup_by(|a, b| {
        (pts[*a].0 - pts[*b].0).abs() <= 1e-15 && (pts[*a].1 - pts[*b].1).abs() <= 1e-15
    });
    if idx.len() < 3 {
        return idx;
    }
    let scale = pts.iter().map(|p| p.0.abs().max(p.1.abs())).fold(1.0, f64::max);
    let eps = 1e-14 * scale * scale;
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> =
            if pass == 0 { Box::new(idx.iter()) } else { Box::new(idx.iter().rev()) };
        for &i in iter {
            while hull.len() >= start + 2
                && cross2(pts[hull[hull.len() - 2]], pts[hull[hull.len() - 1]], pts[i]) <= eps
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// Spherical convex hull by gnomonic projection at an enclosing center.
pub fn hull_from_points(points: &[UnitVec]) -> Result<SphericalBody> {
    let mut distinct: Vec<UnitVec> = Vec::new();
    for p in points {
        if distinct.iter().all(|q| dist(p, q) > 1e-12) {
            distinct.push(*p);
        }
    }
    if distinct.len() < 3 {
        return Err(Error::DegenerateHull("fewer than 3 distinct points"));
    }
    for (i, p) in distinct.iter().enumerate() {
        if distinct[i + 1..].iter().any(|q| (p.vec() + q.vec()).norm() <= 1e-12) {
            return Err(Error::NoEnclosingHemisphere);
        }
    }
    let c = enclosing_center(&distinct)?;
    let (e1, e2) = c.tangent_basis();
    let planar: Vec<(f64, f64)> = distinct
        .iter()
        .map(|p| {
            let w = p.dot(&c);
            (p.dot(&e1) / w, p.dot(&e2) / w)
        })
        .collect();
    let hull = planar_hull_indices(&planar);
    if hull.len() < 3 {
        return Err(Error::DegenerateHull("points lie on one great circle"));
    }
    let verts: Vec<UnitVec> = hull.iter().map(|&i| distinct[i]).collect();
    SphericalBody::polygon(&verts)
}

/// Symmetric Hausdorff distance between two boundaries, sampling `n` points on each.
pub fn boundary_hausdorff(a: &SphericalBody, b: &SphericalBody, n: usize) -> f64 {
    let directed = |x: &SphericalBody, y: &SphericalBody| {
        x.boundary_sample(n).iter().map(|p| y.boundary_distance(p)).fold(0.0, f64::max)
    };
    directed(a, b).max(directed(b, a))
}

/// Antipode of the enclosing center, useful as a guaranteed exterior point.
pub fn exterior_point(body: &SphericalBody) -> UnitVec {
    antipode(&body.center)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::lune_make;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn octant() -> SphericalBody {
        SphericalBody::polygon(&[UnitVec::E1, UnitVec::E2, UnitVec::E3]).unwrap()
    }

    fn cap(rho: f64) -> SphericalBody {
        let start = UnitVec::from_polar(rho, 0.0);
        let seg = BoundarySegment::new(UnitVec::E3, rho, start, start).unwrap();
        SphericalBody::new(vec![seg], UnitVec::E3).unwrap()
    }

    #[test]
    fn octant_structure() {
        let o = octant();
        assert_eq!(o.segments().len(), 3);
        assert!(o.is_polygon());
        let s = o.boundary_sample(3);
        assert_eq!(s, vec![UnitVec::E1, UnitVec::E2, UnitVec::E3]);
        let ext = o.extreme_points();
        assert_eq!(ext.isolated.len(), 3);
        assert!(ext.strict_arcs.is_empty());
    }

    #[test]
    fn contains_basics() {
        for body in [octant(), cap(0.7)] {
            assert!(body.contains(&body.enclosing_center()));
            assert!(!body.contains(&exterior_point(&body)));
            for p in body.boundary_sample(500) {
                assert!(body.contains(&p));
            }
        }
        let c = cap(0.7);
        assert!(c.contains(&UnitVec::from_polar(0.7 - 1e-6, 1.0)));
        assert!(!c.contains(&UnitVec::from_polar(0.7 + 1e-6, 1.0)));
        let o = octant();
        assert!(!o.contains(&UnitVec::new(1.0, 1.0, -1e-6).unwrap()));
        assert!(o.contains(&UnitVec::new(1.0, 1.0, 1e-6).unwrap()));
    }

    #[test]
    fn cap_sampling_is_equidistributed() {
        let rho = 0.6;
        let c = cap(rho);
        let s = c.boundary_sample(360);
        assert_eq!(s.len(), 360);
        for w in s.windows(2) {
            assert!((dist(&w[0], &UnitVec::E3) - rho).abs() < 1e-12);
            let a0 = w[0].y().atan2(w[0].x());
            let a1 = w[1].y().atan2(w[1].x());
            assert!((wrap_tau(a1 - a0) - TAU / 360.0).abs() < 1e-9);
        }
        let ext = c.extreme_points();
        assert!(ext.isolated.is_empty());
        assert_eq!(ext.strict_arcs, vec![0]);
    }

    #[test]
    fn hull_examples() {
        let h = hull_from_points(&[UnitVec::E1, UnitVec::E2, UnitVec::E3]).unwrap();
        assert_eq!(h.vertices().len(), 3);
        let mid = UnitVec::new(1.0, 1.0, 1.0).unwrap();
        let h2 = hull_from_points(&[UnitVec::E1, mid, UnitVec::E2, UnitVec::E3]).unwrap();
        assert_eq!(h2.vertices().len(), 3);
        for v in h2.vertices() {
            assert!([UnitVec::E1, UnitVec::E2, UnitVec::E3].contains(&v));
        }
        assert!(h2.contains(&mid));
        let p = UnitVec::E1;
        assert_eq!(
            hull_from_points(&[p, antipode(&p), UnitVec::E2]).unwrap_err(),
            Error::NoEnclosingHemisphere
        );
        // co-circular on a great circle
        let pts: Vec<UnitVec> = (0..5).map(|k| UnitVec::from_polar(FRAC_PI_2, 0.2 * k as f64)).collect();
        assert!(matches!(hull_from_points(&pts), Err(Error::DegenerateHull(_))));
        assert!(matches!(
            hull_from_points(&[UnitVec::E1, UnitVec::E2]),
            Err(Error::DegenerateHull(_))
        ));
    }

    #[test]
    fn supporting_centers_cap_and_octant() {
        let rho = 0.5;
        let c = cap(rho);
        for k in c.supporting_hemisphere_centers(64).unwrap() {
            assert!((dist(&k, &UnitVec::E3) - (FRAC_PI_2 - rho)).abs() < 1e-12);
            assert!(c.min_dot(&k).abs() < 1e-10);
        }
        let o = octant();
        let ks = o.supporting_hemisphere_centers(30).unwrap();
        for e in [UnitVec::E1, UnitVec::E2, UnitVec::E3] {
            assert!(ks.iter().any(|k| dist(k, &e) < 1e-12));
            assert!(o.min_dot(&e).abs() < 1e-15);
        }
        for k in ks {
            assert!(o.min_dot(&k).abs() < 1e-10);
        }
    }

    #[test]
    fn polar_dual_examples() {
        let c = cap(0.4);
        let d = c.polar_dual().unwrap();
        assert_eq!(d.segments().len(), 1);
        assert!((d.segments()[0].radius() - (FRAC_PI_2 - 0.4)).abs() < 1e-15);
        let dd = d.polar_dual().unwrap();
        assert!(boundary_hausdorff(&c, &dd, 200) < 1e-12);

        let o = octant();
        let od = o.polar_dual().unwrap();
        assert!(boundary_hausdorff(&o, &od, 300) < 1e-12);
    }

    #[test]
    fn clip_removes_vertex() {
        let o = octant();
        let u = UnitVec::new(-0.1, 1.0, 1.0).unwrap();
        let c = o.clip(&u).unwrap();
        assert_eq!(c.segments().len(), 4);
        assert!(!c.contains(&UnitVec::E1));
        assert!(c.contains(&UnitVec::E2));
        assert!(c.min_dot(&u) > -1e-12);
        // clipping by a hemisphere that holds everything is the identity
        let same = o.clip(&UnitVec::new(1.0, 1.0, 1.0).unwrap()).unwrap();
        assert_eq!(same, o);
        // clipping a cap through its center halves it
        let half = cap(0.5).clip(&UnitVec::E1).unwrap();
        assert_eq!(half.segments().len(), 2);
        assert!(half.contains(&UnitVec::from_polar(0.3, 0.0)));
        assert!(!half.contains(&UnitVec::from_polar(0.3, PI)));
    }

    #[test]
    fn lune_contains_examples() {
        let o = octant();
        // the octant sits in H(e1 + small tilt) ∩ H(e3)
        let l = lune_make(Hemisphere::new(UnitVec::E3), Hemisphere::new(UnitVec::E1)).unwrap();
        assert!(lune_contains(&l, &o));
        for p in o.boundary_sample(300) {
            assert!(p.dot(&UnitVec::E3) >= -1e-10 && p.dot(&UnitVec::E1) >= -1e-10);
        }
        let tilted = UnitVec::new(1.0, -0.01, 0.0).unwrap();
        let l2 = lune_make(Hemisphere::new(UnitVec::E3), Hemisphere::new(tilted)).unwrap();
        assert!(!lune_contains(&l2, &o));
        // two of its own supporting hemispheres
        let ks = o.supporting_hemisphere_centers(17).unwrap();
        let l3 = lune_make(Hemisphere::new(ks[2]), Hemisphere::new(ks[11])).unwrap();
        assert!(lune_contains(&l3, &o));
    }

    #[test]
    fn closure_and_hemisphere_violations() {
        let a = BoundarySegment::great(UnitVec::E1, UnitVec::E2).unwrap();
        let b = BoundarySegment::great(UnitVec::E2, UnitVec::E3).unwrap();
        let err = SphericalBody::from_segments(vec![a, b]).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(m) if m.contains("closed boundary")));
        let start = UnitVec::from_polar(FRAC_PI_2, 0.0);
        let hemi = BoundarySegment::new(UnitVec::E3, FRAC_PI_2, start, start).unwrap();
        assert!(SphericalBody::new(vec![hemi], UnitVec::E3).is_err());
    }

    #[test]
    fn random_hull_convexity_and_membership() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let pts: Vec<UnitVec> = (0..12)
                .map(|_| UnitVec::from_polar(rng.random_range(0.0..1.0), rng.random_range(0.0..TAU)))
                .collect();
            let h = hull_from_points(&pts).unwrap();
            h.check_convexity(300, 1).unwrap();
            for p in &pts {
                assert!(h.contains(p));
            }
        }
    }
}
