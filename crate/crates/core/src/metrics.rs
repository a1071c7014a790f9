//! Width, thickness and diameter of spherical convex bodies, and verdicts built on them.
//!
//! Widths are evaluated over the closed curve of supporting-hemisphere centers,
//! which is the boundary of the polar body. Every optimization is a coarse scan
//! over `n` boundary samples followed by golden-section refinement between the
//! neighbours of the best sample. Scans run in index order, so results are
//! deterministic for a fixed `n`.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use crate::body::{BoundaryPoint, SphericalBody};
use crate::error::{Error, Result};
use crate::optimize::{golden_section_min, refine_max, refine_min};
use crate::sphere::{dist, geodesic_point, lune_make, Hemisphere, UnitVec};

/// Default number of boundary samples for scans.
pub const DEFAULT_SAMPLES: usize = 720;
/// Default verdict tolerance in radians.
pub const DEFAULT_TOL: f64 = 1e-6;
/// Supporting-hemisphere precondition of [`width_at`].
pub const SUPPORT_TOL: f64 = 1e-8;

/// `width_K(C)` for one supporting hemisphere `K`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WidthSample {
    pub support_center: UnitVec,
    /// Thickness of the narrowest lune `K ∩ K'`, from the semicircle-center definition.
    pub width: f64,
    pub opposing_center: UnitVec,
    /// `π` minus the largest distance from `K`'s center to the polar body.
    pub dual_form_width: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThicknessResult {
    pub value: f64,
    pub witness: WidthSample,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiameterResult {
    pub value: f64,
    pub p: UnitVec,
    pub q: UnitVec,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VerdictKind {
    ConstantWidth,
    ConstantDiameter,
    ReducedNecessary,
    SelfDualAux,
}

impl VerdictKind {
    pub fn name(&self) -> &'static str {
        match self {
            VerdictKind::ConstantWidth => "constant_width",
            VerdictKind::ConstantDiameter => "constant_diameter",
            VerdictKind::ReducedNecessary => "reduced_necessary",
            VerdictKind::SelfDualAux => "self_dual_aux",
        }
    }
}

/// Points and values backing a verdict.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Witness {
    pub label: String,
    pub points: Vec<UnitVec>,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub pass: bool,
    pub deviation: f64,
    pub tolerance: f64,
    /// The measured quantity: common width, diameter, or thickness.
    pub value: f64,
    pub witness: Witness,
}

impl Verdict {
    fn new(kind: VerdictKind, deviation: f64, tolerance: f64, value: f64, witness: Witness) -> Self {
        Self { kind, pass: deviation <= tolerance, deviation, tolerance, value, witness }
    }
}

/// Thickness of the lune `H(a) ∩ H(b)` from its semicircle centers; degenerate pairs
/// map to the limiting values `π` (equal) and `0` (opposite).
fn lune_thickness(a: &UnitVec, b: &UnitVec) -> f64 {
    match lune_make(Hemisphere::new(*a), Hemisphere::new(*b)) {
        Ok(l) => l.thickness,
        Err(_) if a.dot(b) > 0.0 => PI,
        Err(_) => 0.0,
    }
}

fn neighbour_bracket(pts: &[BoundaryPoint], period: f64, j: usize) -> (f64, f64) {
    let m = pts.len();
    let lo = if j == 0 { pts[m - 1].param - period } else { pts[j - 1].param };
    let hi = if j + 1 == m { pts[0].param + period } else { pts[j + 1].param };
    (lo, hi)
}

/// Closed curve of supporting-hemisphere centers, sampled.
struct SupportCurve {
    dual: SphericalBody,
    pts: Vec<BoundaryPoint>,
    period: f64,
}

impl SupportCurve {
    fn new(body: &SphericalBody, n: usize) -> Result<Self> {
        let dual = body.polar_dual()?;
        let pts = dual.boundary_points(n);
        let period = dual.segments().len() as f64;
        Ok(Self { dual, pts, period })
    }

    /// Narrowest lune `H(k) ∩ H(k')` over supporting `k'`: (width, k').
    fn width_from(&self, k: &UnitVec) -> (f64, UnitVec) {
        // coarse pick by center separation, then refine the lune thickness itself
        let mut jbest = 0;
        let mut dbest = f64::INFINITY;
        for (j, bp) in self.pts.iter().enumerate() {
            let d = bp.point.dot(k);
            if d < dbest {
                dbest = d;
                jbest = j;
            }
        }
        let s0 = self.pts[jbest].param;
        let f0 = lune_thickness(k, &self.pts[jbest].point);
        let (lo, hi) = neighbour_bracket(&self.pts, self.period, jbest);
        let (s, w) = refine_min(|s| lune_thickness(k, &self.dual.point_at_param(s)), lo, hi, s0, f0);
        (w, self.dual.point_at_param(s))
    }

    fn sample(&self, k: UnitVec) -> WidthSample {
        let (width, opposing) = self.width_from(&k);
        WidthSample {
            support_center: k,
            width,
            opposing_center: opposing,
            dual_form_width: PI - self.dual.farthest(&k).1,
        }
    }

    /// Refined widths at every sample.
    fn profile(&self) -> Vec<WidthSample> {
        self.pts.iter().map(|bp| self.sample(bp.point)).collect()
    }

    /// Golden-section refinement of the width profile around sample `i`.
    fn refine(&self, i: usize, w0: f64, maximize: bool) -> WidthSample {
        let (lo, hi) = neighbour_bracket(&self.pts, self.period, i);
        let s0 = self.pts[i].param;
        let f = |s: f64| self.width_from(&self.dual.point_at_param(s)).0;
        let (s, _) = if maximize { refine_max(f, lo, hi, s0, w0) } else { refine_min(f, lo, hi, s0, w0) };
        self.sample(self.dual.point_at_param(s))
    }
}

/// `width_K(C)` for `K = H(support_center)`.
pub fn width_at(body: &SphericalBody, support_center: &UnitVec, n: usize) -> Result<WidthSample> {
    let md = body.min_dot(support_center);
    if md.abs() > SUPPORT_TOL {
        return Err(Error::NotSupporting(md));
    }
    Ok(SupportCurve::new(body, n)?.sample(*support_center))
}

/// Widths at `n` supporting hemispheres in order around the polar body.
pub fn width_profile(body: &SphericalBody, n: usize) -> Result<Vec<WidthSample>> {
    Ok(SupportCurve::new(body, n)?.profile())
}

fn argmin_by<T>(xs: &[T], key: impl Fn(&T) -> f64) -> usize {
    let mut best = 0;
    for i in 1..xs.len() {
        if key(&xs[i]) < key(&xs[best]) {
            best = i;
        }
    }
    best
}

/// `Δ(C)`: minimum width over all supporting hemispheres.
pub fn thickness(body: &SphericalBody, n: usize) -> Result<ThicknessResult> {
    let curve = SupportCurve::new(body, n)?;
    let profile = curve.profile();
    let i = argmin_by(&profile, |w| w.width);
    let refined = curve.refine(i, profile[i].width, false);
    let witness = if refined.width < profile[i].width { refined } else { profile[i] };
    Ok(ThicknessResult { value: witness.width, witness })
}

/// `diam(C)` with a realizing pair.
pub fn diameter(body: &SphericalBody, n: usize) -> DiameterResult {
    let pts = body.boundary_points(n);
    let m = pts.len();
    let (mut bi, mut bj, mut bd) = (0, 0, f64::INFINITY);
    for i in 0..m {
        let p = pts[i].point;
        for (j, q) in pts.iter().enumerate().skip(i + 1) {
            let d = p.dot(&q.point);
            if d < bd {
                bd = d;
                bi = i;
                bj = j;
            }
        }
    }
    let period = body.segments().len() as f64;
    let far = |s: f64| body.farthest(&body.point_at_param(s)).1;
    let mut best = DiameterResult { value: dist(&pts[bi].point, &pts[bj].point), p: pts[bi].point, q: pts[bj].point };
    for k in [bi, bj] {
        let (lo, hi) = neighbour_bracket(&pts, period, k);
        let s0 = pts[k].param;
        let (s, v) = refine_max(far, lo, hi, s0, far(s0));
        if v > best.value {
            let p = body.point_at_param(s);
            let (q, v) = body.farthest(&p);
            best = DiameterResult { value: v, p, q };
        }
    }
    if body.is_polygon() {
        let vs = body.vertices();
        for (i, a) in vs.iter().enumerate() {
            for b in &vs[i + 1..] {
                let d = dist(a, b);
                if d > best.value {
                    best = DiameterResult { value: d, p: *a, q: *b };
                }
            }
        }
    }
    best
}

/// Largest distance between two vertices of a polygon body (`None` for curved bodies).
pub fn vertex_diameter(body: &SphericalBody) -> Option<f64> {
    if !body.is_polygon() {
        return None;
    }
    let vs = body.vertices();
    let mut best: f64 = 0.0;
    for (i, a) in vs.iter().enumerate() {
        for b in &vs[i + 1..] {
            best = best.max(dist(a, b));
        }
    }
    Some(best)
}

/// Constant width: `max − min` of the refined width profile is at most `tol`.
pub fn is_constant_width(body: &SphericalBody, tol: f64, n: usize) -> Result<Verdict> {
    let curve = SupportCurve::new(body, n)?;
    let profile = curve.profile();
    let imin = argmin_by(&profile, |w| w.width);
    let imax = argmin_by(&profile, |w| -w.width);
    let mut lo = curve.refine(imin, profile[imin].width, false);
    if lo.width > profile[imin].width {
        lo = profile[imin];
    }
    let mut hi = curve.refine(imax, profile[imax].width, true);
    if hi.width < profile[imax].width {
        hi = profile[imax];
    }
    let deviation = hi.width - lo.width;
    let witness = Witness {
        label: "narrowest and widest supporting hemispheres".into(),
        points: vec![lo.support_center, hi.support_center],
        values: vec![lo.width, hi.width],
    };
    Ok(Verdict::new(VerdictKind::ConstantWidth, deviation, tol, 0.5 * (lo.width + hi.width), witness))
}

/// Constant diameter: every boundary point has a boundary partner at distance `diam(C)`.
pub fn is_constant_diameter(body: &SphericalBody, tol: f64, n: usize) -> Verdict {
    let d = diameter(body, n);
    let mut worst = 0.0;
    let mut wp = d.p;
    let mut wq = d.q;
    for p in body.boundary_sample(n) {
        let (q, far) = body.farthest(&p);
        let short = d.value - far;
        if short > worst {
            worst = short;
            wp = p;
            wq = q;
        }
    }
    let witness = Witness {
        label: "boundary point with the shortest farthest partner".into(),
        points: vec![wp, wq],
        values: vec![d.value - worst],
    };
    Verdict::new(VerdictKind::ConstantDiameter, worst, tol, d.value, witness)
}

/// Outcome of the lune search at one corner, and of the cut probe there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CornerProbe {
    pub corner: UnitVec,
    /// Radial excess of the best opposing center outside the polar body; 0 when a lune
    /// of thickness `Δ` through the corner contains the body.
    pub lune_violation: f64,
    /// Thickness lost by cutting the corner off at depth `10·tol`.
    pub thickness_drop: f64,
    /// Center of the cutting hemisphere.
    pub cut_center: UnitVec,
}

fn inward_bisector(body: &SphericalBody, i: usize) -> Result<UnitVec> {
    let segs = body.segments();
    let n = segs.len();
    let prev = &segs[(i + n - 1) % n];
    let cur = &segs[i];
    let t_in = prev.tangent_at_angle(prev.sweep());
    let t_out = cur.tangent_at_angle(0.0);
    (t_out.vec() - t_in.vec()).normalize()
}

fn probe_corner(
    body: &SphericalBody,
    dual: &SphericalBody,
    i: usize,
    delta: f64,
    tol: f64,
) -> Result<CornerProbe> {
    let segs = body.segments();
    let m = segs.len();
    let e = segs[i].start();
    let prev = &segs[(i + m - 1) % m];
    let turn = body.junction_turn(i);
    let n_prev = prev.inward_normal_at_angle(prev.sweep());

    // (a) a lune H(a) ∩ H(b) of thickness Δ with e the center of its H(a) semicircle:
    // a supports the body at e, and b sits at angle π − Δ from a, beyond e.
    let (sa, ca) = (PI - delta).sin_cos();
    let opposing = |phi: f64| {
        let a = n_prev.rotate_about(&e, phi);
        (a.vec() * ca + e.vec() * sa).normalize().expect("unit combination")
    };
    let excess = |phi: f64| dual.radial_excess(&opposing(phi)).max(0.0);
    let k = 8;
    let mut best_phi = 0.0;
    let mut best = f64::INFINITY;
    for j in 0..=k {
        let phi = turn * j as f64 / k as f64;
        let v = excess(phi);
        if v < best {
            best = v;
            best_phi = phi;
        }
    }
    if best > 0.0 {
        let h = turn / k as f64;
        let (lo, hi) = ((best_phi - h).max(0.0), (best_phi + h).min(turn));
        let (_, v) = golden_section_min(excess, lo, hi, 1e-14, 120);
        best = best.min(v);
    }

    // (b) cut the corner off: boundary of H(u) at distance `depth` from e across the bisector
    let depth = 10.0 * tol;
    let bis = inward_bisector(body, i)?;
    let (sd, cd) = depth.sin_cos();
    let u = (bis.vec() * cd - e.vec() * sd).normalize()?;
    // The polar of C ∩ H(u) is C° plus u and two great arcs from u to the normals at the
    // crossings. New lunes pair a point of those arcs with the farthest point of C°.
    let (_, n1, _, n2) = body
        .cut_crossings(&u)
        .ok_or_else(|| Error::InvariantViolation("cut misses the boundary".into()))?;
    let far = |x: &UnitVec| dual.farthest(x).1.max(dist(x, &u));
    let threshold = PI - delta;
    let mut f_max = far(&u);
    if f_max - threshold <= tol {
        for end in [n1, n2] {
            if dist(&end, &u) < 1e-15 {
                continue;
            }
            let g = |t: f64| geodesic_point(&end, &u, t).map(|x| -far(&x)).unwrap_or(0.0);
            let k = 8;
            let mut best = (1.0, -f_max);
            for j in 0..k {
                let t = j as f64 / k as f64;
                let v = g(t);
                if v < best.1 {
                    best = (t, v);
                }
            }
            let h = 1.0 / k as f64;
            let (_, v) = golden_section_min(g, (best.0 - h).max(0.0), (best.0 + h).min(1.0), 1e-12, 100);
            f_max = f_max.max(-best.1).max(-v);
        }
    }
    let w_u = PI - f_max;
    let drop = (delta - w_u.min(delta)).max(0.0);
    Ok(CornerProbe { corner: e, lune_violation: best, thickness_drop: drop, cut_center: u })
}

/// Per-corner probes used by [`reduced_check`].
pub fn corner_probes(body: &SphericalBody, tol: f64, n: usize) -> Result<(f64, Vec<CornerProbe>)> {
    let delta = thickness(body, n)?.value;
    let dual = body.polar_dual()?;
    let mut out = Vec::new();
    for i in 0..body.segments().len() {
        if body.junction_turn(i) > crate::body::CORNER_TOL {
            out.push(probe_corner(body, &dual, i, delta, tol)?);
        }
    }
    Ok((delta, out))
}

/// Necessary-condition heuristic for reducedness (not a decision procedure).
///
/// (a) every corner is the center of a bounding semicircle of some lune of thickness
/// `Δ` containing the body; (b) cutting any corner off at depth `10·tol` lowers the
/// thickness by more than `tol`. Smooth bodies pass vacuously.
pub fn reduced_check(body: &SphericalBody, tol: f64, n: usize) -> Result<Verdict> {
    let (delta, probes) = corner_probes(body, tol, n)?;
    let depth = 10.0 * tol;
    let mut deviation: f64 = 0.0;
    let mut witness = Witness { label: "no corner fails".into(), points: vec![], values: vec![] };
    for p in &probes {
        let dev_a = p.lune_violation;
        // scaled so that a drop of exactly tol maps to deviation tol
        let dev_b = (tol * (depth - p.thickness_drop) / (depth - tol)).max(0.0);
        let dev = dev_a.max(dev_b);
        if dev > deviation {
            deviation = dev;
            let label = if dev_a >= dev_b {
                "no lune of thickness Δ through this corner contains the body"
            } else {
                "cutting this corner leaves the thickness unchanged"
            };
            witness = Witness {
                label: label.into(),
                points: vec![p.corner],
                values: vec![p.lune_violation, p.thickness_drop],
            };
        }
    }
    Ok(Verdict::new(VerdictKind::ReducedNecessary, deviation, tol, delta, witness))
}

/// Thickness, diameter, the three verdicts and the applicable relations between them.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub thickness: ThicknessResult,
    pub diameter: DiameterResult,
    pub constant_width: Verdict,
    pub constant_diameter: Verdict,
    pub reduced: Verdict,
    /// `Δ ≤ diam + tol`; always applicable.
    pub claim2_leq: bool,
    /// For reduced bodies: `Δ − π/2` and `diam − π/2` have the same sign (within tol).
    pub thm3_sign_agreement: Option<bool>,
    /// For reduced bodies with `Δ ≥ π/2 − tol`: `Δ = diam ± tol`.
    pub prop1_equality: Option<bool>,
    /// For reduced bodies with `diam ≥ π/2 − tol`: the constant-width verdict passes.
    pub cor2_constant_width: Option<bool>,
}

fn sign_with_slack(x: f64, tol: f64) -> i8 {
    if x > tol {
        1
    } else if x < -tol {
        -1
    } else {
        0
    }
}

pub fn classify(body: &SphericalBody, tol: f64, n: usize) -> Result<Classification> {
    let thickness = thickness(body, n)?;
    let diameter = diameter(body, n);
    let constant_width = is_constant_width(body, tol, n)?;
    let constant_diameter = is_constant_diameter(body, tol, n);
    let reduced = reduced_check(body, tol, n)?;
    let (d, w) = (thickness.value, diameter.value);
    let claim2_leq = d <= w + tol;
    let (mut thm3, mut prop1, mut cor2) = (None, None, None);
    if reduced.pass {
        let sd = sign_with_slack(d - FRAC_PI_2, tol);
        let sw = sign_with_slack(w - FRAC_PI_2, tol);
        thm3 = Some(sd == sw || sd == 0 || sw == 0);
        if d >= FRAC_PI_2 - tol {
            prop1 = Some((d - w).abs() <= tol);
        }
        if w >= FRAC_PI_2 - tol {
            cor2 = Some(constant_width.pass);
        }
    }
    Ok(Classification {
        thickness,
        diameter,
        constant_width,
        constant_diameter,
        reduced,
        claim2_leq,
        thm3_sign_agreement: thm3,
        prop1_equality: prop1,
        cor2_constant_width: cor2,
    })
}

/// The four conditions that each single out constant width π/2.
pub const CONDITION_NAMES: [&str; 4] =
    ["constant_width_pi2", "reduced_thickness_pi2", "reduced_diameter_pi2", "constant_diameter_pi2"];

/// Verdicts for [`CONDITION_NAMES`] together with the thickness and diameter behind them.
#[derive(Debug, Clone, PartialEq)]
pub struct RightAngleConditions {
    pub verdicts: BTreeMap<String, Verdict>,
    pub thickness: f64,
    pub diameter: f64,
}

fn off_target(kind: VerdictKind, base: &Verdict, value: f64, tol: f64, label: &str) -> Verdict {
    let miss = (value - FRAC_PI_2).abs();
    let deviation = base.deviation.max(miss);
    let mut witness = base.witness.clone();
    if miss > base.deviation {
        witness = Witness { label: label.into(), points: witness.points, values: vec![value] };
    }
    Verdict { kind, pass: deviation <= tol, deviation, tolerance: tol, value, witness }
}

/// Each condition's deviation is the larger of its verdict's deviation and the miss from π/2.
pub fn right_angle_conditions(body: &SphericalBody, tol: f64, n: usize) -> Result<RightAngleConditions> {
    let t = thickness(body, n)?.value;
    let d = diameter(body, n).value;
    let cw = is_constant_width(body, tol, n)?;
    let cd = is_constant_diameter(body, tol, n);
    let red = reduced_check(body, tol, n)?;
    let mut verdicts = BTreeMap::new();
    let entries = [
        (VerdictKind::ConstantWidth, &cw, cw.value, "width differs from π/2"),
        (VerdictKind::ReducedNecessary, &red, t, "thickness differs from π/2"),
        (VerdictKind::ReducedNecessary, &red, d, "diameter differs from π/2"),
        (VerdictKind::ConstantDiameter, &cd, cd.value, "diameter differs from π/2"),
    ];
    for (name, (kind, base, value, label)) in CONDITION_NAMES.iter().zip(entries) {
        verdicts.insert(name.to_string(), off_target(kind, base, value, tol, label));
    }
    Ok(RightAngleConditions { verdicts, thickness: t, diameter: d })
}

/// Fails when one check passes clearly (deviation ≤ tol) while another fails clearly (> 2·tol).
pub fn check_consistency(deviations: &[(&str, f64)], tol: f64) -> Result<()> {
    let clear_pass = deviations.iter().find(|d| d.1 <= tol);
    let clear_fail = deviations.iter().find(|d| d.1 > 2.0 * tol);
    if let (Some(p), Some(f)) = (clear_pass, clear_fail) {
        return Err(Error::InconsistentVerdicts(format!(
            "{} passes (deviation {:e}) but {} fails (deviation {:e})",
            p.0, p.1, f.0, f.1
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{cap, constant_diameter_triangle, random_convex_polygon, regular_odd_gon};
    use crate::sphere::Vec3;

    fn octant() -> SphericalBody {
        SphericalBody::polygon(&[UnitVec::E1, UnitVec::E2, UnitVec::E3]).unwrap()
    }

    #[test]
    fn cap_widths() {
        let c = cap(UnitVec::E3, 0.6).unwrap();
        let k = c.normal_at_param(0.3);
        let w = width_at(&c, &k, 360).unwrap();
        assert!((w.width - 1.2).abs() < 1e-9, "{}", w.width);
        assert!((w.width - w.dual_form_width).abs() < 1e-8);
        assert!((thickness(&c, 360).unwrap().value - 1.2).abs() < 1e-9);
        assert!((diameter(&c, 360).value - 1.2).abs() < 1e-9);
    }

    #[test]
    fn octant_metrics() {
        let o = octant();
        let w = width_at(&o, &UnitVec::E1, 720).unwrap();
        assert!((w.width - FRAC_PI_2).abs() < 1e-10);
        assert!((thickness(&o, 720).unwrap().value - FRAC_PI_2).abs() < 1e-10);
        let d = diameter(&o, 720);
        assert!((d.value - FRAC_PI_2).abs() < 1e-12);
        assert!(is_constant_width(&o, 1e-6, 720).unwrap().pass);
        assert!(is_constant_diameter(&o, 1e-6, 720).pass);
        assert!(reduced_check(&o, 1e-6, 720).unwrap().pass);
    }

    #[test]
    fn non_supporting_rejected() {
        let o = octant();
        let k = Vec3::new(1.0, 1.0, 1.0).normalize().unwrap();
        assert!(matches!(width_at(&o, &k, 90), Err(Error::NotSupporting(_))));
    }

    #[test]
    fn square_is_not_reduced() {
        let vs: Vec<UnitVec> = (0..4).map(|k| UnitVec::from_polar(0.6, FRAC_PI_2 * k as f64)).collect();
        let sq = SphericalBody::polygon(&vs).unwrap();
        let v = reduced_check(&sq, 1e-6, 720).unwrap();
        assert!(!v.pass);
        assert!(!v.witness.points.is_empty());
    }

    #[test]
    fn cut_shortcut_matches_clipped_body() {
        for seed in 0..5 {
            let b = random_convex_polygon(seed, 7, 1.3).unwrap();
            let tol = 1e-4;
            let (delta, probes) = corner_probes(&b, tol, 720).unwrap();
            for p in probes {
                let cut = b.clip(&p.cut_center).unwrap();
                let direct = thickness(&cut, 720).unwrap().value;
                assert!((delta - p.thickness_drop - direct).abs() < 1e-9, "seed {seed}: {delta} {} {direct}", p.thickness_drop);
            }
        }
    }

    #[test]
    fn regular_pentagon_is_reduced() {
        let p = regular_odd_gon(5, 1.2).unwrap();
        assert!((thickness(&p, 720).unwrap().value - 1.2).abs() < 1e-8);
        assert!(reduced_check(&p, 1e-6, 720).unwrap().pass);
        let c = cap(UnitVec::E3, 0.4).unwrap();
        assert!(reduced_check(&c, 1e-6, 720).unwrap().pass);
    }

    #[test]
    fn random_polygon_is_not_constant_width() {
        let b = random_convex_polygon(7, 9, 1.2).unwrap();
        let t = thickness(&b, 720).unwrap().value;
        let d = diameter(&b, 720).value;
        assert!(t < d - 1e-3);
        let v = is_constant_width(&b, 1e-6, 720).unwrap();
        assert!(!v.pass && v.deviation > 0.0);
    }

    #[test]
    fn vertex_diameter_matches_sampled() {
        for seed in 0..10 {
            let b = random_convex_polygon(seed, 8, 1.5).unwrap();
            let d = diameter(&b, 720).value;
            let vd = vertex_diameter(&b).unwrap();
            assert!((d - vd).abs() < 1e-9, "seed {seed}: {d} vs {vd}");
        }
    }

    #[test]
    fn long_diameter_can_end_inside_an_edge() {
        let b = random_convex_polygon(3, 8, 2.0).unwrap();
        let d = diameter(&b, 720);
        let vd = vertex_diameter(&b).unwrap();
        assert!(d.value > vd + 1e-6);
        assert!((dist(&d.p, &d.q) - d.value).abs() < 1e-12);
    }

    #[test]
    fn classify_cap_prop1() {
        let c = cap(UnitVec::E3, 1.0).unwrap();
        let r = classify(&c, 1e-6, 360).unwrap();
        assert!(r.reduced.pass);
        assert_eq!(r.prop1_equality, Some(true));
        assert!((r.diameter.value - 2.0).abs() < 1e-9);
        assert_eq!(r.thm3_sign_agreement, Some(true));
    }

    #[test]
    fn cd_triangle_constant_width() {
        let v1 = UnitVec::from_polar(0.3, 0.0);
        let v2 = UnitVec::from_polar(0.4, 2.0);
        let v3 = UnitVec::from_polar(0.35, 4.1);
        let b = constant_diameter_triangle(v1, v2, v3).unwrap();
        let cw = is_constant_width(&b, 1e-6, 720).unwrap();
        assert!(cw.pass, "{cw:?}");
        assert!((cw.value - FRAC_PI_2).abs() < 1e-6);
        let cd = is_constant_diameter(&b, 1e-6, 360);
        assert!(cd.pass && (cd.value - FRAC_PI_2).abs() < 1e-6, "{cd:?}");
        assert!(reduced_check(&b, 1e-6, 720).unwrap().pass);
    }
}
