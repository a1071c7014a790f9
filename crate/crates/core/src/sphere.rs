//! Points, arcs, hemispheres and lunes of the unit sphere S² ⊂ E³.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Minimum angle between hemisphere centers for a lune to be well defined.
pub const LUNE_DEGENERACY: f64 = 1e-9;

/// Plain Euclidean 3-vector used for intermediate arithmetic.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    #[inline]
    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    #[inline]
    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn normalize(self) -> Result<UnitVec> {
        UnitVec::new(self.x, self.y, self.z)
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

/// A point of S². The norm is 1 to within 1e-12 after every constructor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitVec(Vec3);

impl UnitVec {
    pub const E1: UnitVec = UnitVec(Vec3::new(1.0, 0.0, 0.0));
    pub const E2: UnitVec = UnitVec(Vec3::new(0.0, 1.0, 0.0));
    pub const E3: UnitVec = UnitVec(Vec3::new(0.0, 0.0, 1.0));

    /// Normalizes `(x, y, z)`.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        let n = v.norm();
        if !(n.is_finite() && n > 1e-300) {
            return Err(Error::ZeroVector);
        }
        let mut u = v * (1.0 / n);
        // second pass pulls the norm to within an ulp or two of 1
        let n2 = u.norm();
        u = u * (1.0 / n2);
        Ok(UnitVec(u))
    }

    /// Wraps coordinates that are already unit length; fails if the norm is off by more than 1e-12.
    pub fn from_unit(x: f64, y: f64, z: f64) -> Result<Self> {
        let v = Vec3::new(x, y, z);
        if !((v.norm() - 1.0).abs() <= 1e-12) {
            return Err(Error::InvariantViolation("unit norm".into()));
        }
        Ok(UnitVec(v))
    }

    /// Spherical coordinates: colatitude from +z and longitude.
    pub fn from_polar(colatitude: f64, longitude: f64) -> Self {
        let (st, ct) = colatitude.sin_cos();
        let (sp, cp) = longitude.sin_cos();
        // sin²+cos² rounding stays below 1e-15
        UnitVec(Vec3::new(st * cp, st * sp, ct))
    }

    #[inline]
    pub fn x(&self) -> f64 {
        self.0.x
    }
    #[inline]
    pub fn y(&self) -> f64 {
        self.0.y
    }
    #[inline]
    pub fn z(&self) -> f64 {
        self.0.z
    }

    #[inline]
    pub fn vec(&self) -> Vec3 {
        self.0
    }

    pub fn to_array(&self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }

    #[inline]
    pub fn dot(&self, o: &UnitVec) -> f64 {
        self.0.dot(o.0)
    }

    #[inline]
    pub fn cross(&self, o: &UnitVec) -> Vec3 {
        self.0.cross(o.0)
    }

    /// Rotation by `angle` about `axis`, counterclockwise when seen from the tip of `axis`.
    pub fn rotate_about(&self, axis: &UnitVec, angle: f64) -> UnitVec {
        let (s, c) = angle.sin_cos();
        let k = axis.0;
        let v = self.0;
        let r = v * c + k.cross(v) * s + k * (k.dot(v) * (1.0 - c));
        r.normalize().unwrap_or(*self)
    }

    /// An orthonormal pair `(e1, e2)` tangent at `self` with `e1 × e2 = self`.
    pub fn tangent_basis(&self) -> (UnitVec, UnitVec) {
        let c = self.0;
        let helper = if c.x.abs() < 0.6 {
            Vec3::new(1.0, 0.0, 0.0)
        } else if c.y.abs() < 0.6 {
            Vec3::new(0.0, 1.0, 0.0)
        } else {
            Vec3::new(0.0, 0.0, 1.0)
        };
        let e1 = (helper - c * helper.dot(c)).normalize().expect("helper is not parallel");
        let e2 = c.cross(e1.0).normalize().expect("orthonormal");
        (e1, e2)
    }

    /// Unit tangent at `self` pointing along the great circle toward `target`.
    pub fn direction_to(&self, target: &UnitVec) -> Option<UnitVec> {
        let t = target.0 - self.0 * self.dot(target);
        if t.norm() < 1e-15 {
            return None;
        }
        // second pass removes the radial residue left by cancellation for close points
        let t = t.normalize().ok()?.0;
        (t - self.0 * self.0.dot(t)).normalize().ok()
    }

    /// Point at spherical distance `d` from `self` in the unit tangent direction `dir`.
    pub fn offset(&self, dir: &UnitVec, d: f64) -> UnitVec {
        let (s, c) = d.sin_cos();
        (self.0 * c + dir.0 * s).normalize().unwrap_or(*self)
    }
}

/// Spherical distance in `[0, π]`, computed with the two-argument arctangent.
#[inline]
pub fn dist(a: &UnitVec, b: &UnitVec) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// The antipodal point `-a`.
#[inline]
pub fn antipode(a: &UnitVec) -> UnitVec {
    UnitVec(-a.0)
}

fn arc_is_degenerate(a: &UnitVec, b: &UnitVec) -> bool {
    (a.0 - b.0).norm() <= 1e-9 || (a.0 + b.0).norm() <= 1e-9
}

/// Point on the arc `ab` at fraction `t` of its length.
pub fn geodesic_point(a: &UnitVec, b: &UnitVec, t: f64) -> Result<UnitVec> {
    if arc_is_degenerate(a, b) {
        return Err(Error::DegenerateArc);
    }
    let dir = a.direction_to(b).ok_or(Error::DegenerateArc)?;
    Ok(a.offset(&dir, t * dist(a, b)))
}

/// Shortest arc between two points that are neither equal nor antipodal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GreatArc {
    a: UnitVec,
    b: UnitVec,
}

impl GreatArc {
    pub fn new(a: UnitVec, b: UnitVec) -> Result<Self> {
        if arc_is_degenerate(&a, &b) {
            return Err(Error::DegenerateArc);
        }
        Ok(Self { a, b })
    }

    pub fn start(&self) -> UnitVec {
        self.a
    }

    pub fn end(&self) -> UnitVec {
        self.b
    }

    pub fn length(&self) -> f64 {
        dist(&self.a, &self.b)
    }

    pub fn point_at(&self, t: f64) -> UnitVec {
        geodesic_point(&self.a, &self.b, t).expect("validated at construction")
    }
}

/// Closed hemisphere `H(c) = { p : p·c ≥ 0 }`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hemisphere {
    pub center: UnitVec,
}

impl Hemisphere {
    pub fn new(center: UnitVec) -> Self {
        Self { center }
    }

    pub fn contains(&self, p: &UnitVec) -> bool {
        p.dot(&self.center) >= -1e-12
    }

    pub fn opposite(&self) -> Hemisphere {
        Hemisphere::new(antipode(&self.center))
    }
}

/// Intersection `G ∩ H` of two hemispheres that are neither equal nor opposite.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Lune {
    pub g: Hemisphere,
    pub h: Hemisphere,
    /// The two corners, antipodal to each other.
    pub corners: [UnitVec; 2],
    /// Center of the semicircle bounding `G` inside `H`.
    pub mg: UnitVec,
    /// Center of the semicircle bounding `H` inside `G`.
    pub mh: UnitVec,
    /// Spherical distance between `mg` and `mh`.
    pub thickness: f64,
}

/// Builds the lune `G ∩ H` with its corners, semicircle centers and thickness.
pub fn lune_make(g: Hemisphere, h: Hemisphere) -> Result<Lune> {
    let (gc, hc) = (g.center, h.center);
    let angle = dist(&gc, &hc);
    if !(angle > LUNE_DEGENERACY && angle < PI - LUNE_DEGENERACY) {
        return Err(Error::DegenerateLune);
    }
    let gh = gc.dot(&hc);
    let corner = gc.cross(&hc).normalize().map_err(|_| Error::DegenerateLune)?;
    let mg = (hc.vec() - gc.vec() * gh).normalize().map_err(|_| Error::DegenerateLune)?;
    let mh = (gc.vec() - hc.vec() * gh).normalize().map_err(|_| Error::DegenerateLune)?;
    Ok(Lune {
        g,
        h,
        corners: [corner, antipode(&corner)],
        mg,
        mh,
        thickness: dist(&mg, &mh),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_2;

    fn random_unit(rng: &mut ChaCha8Rng) -> UnitVec {
        loop {
            let v = Vec3::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            );
            let n = v.norm();
            if n > 0.1 && n <= 1.0 {
                return v.normalize().unwrap();
            }
        }
    }

    #[test]
    fn dist_basic_values() {
        assert_eq!(dist(&UnitVec::E1, &UnitVec::E1), 0.0);
        assert!((dist(&UnitVec::E1, &antipode(&UnitVec::E1)) - PI).abs() < 1e-15);
        assert!((dist(&UnitVec::E1, &UnitVec::E2) - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn unit_norm_after_construction() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let u = UnitVec::new(
                rng.random_range(-1e3..1e3),
                rng.random_range(-1e-3..1e-3),
                rng.random_range(-5.0..5.0),
            )
            .unwrap();
            assert!((u.vec().norm() - 1.0).abs() < 1e-12);
        }
        assert_eq!(UnitVec::new(0.0, 0.0, 0.0), Err(Error::ZeroVector));
    }

    #[test]
    fn antipode_is_involution() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        assert_eq!(antipode(&UnitVec::E3).to_array(), [-0.0, -0.0, -1.0]);
        for _ in 0..100 {
            let a = random_unit(&mut rng);
            assert_eq!(antipode(&antipode(&a)), a);
            assert!((dist(&a, &antipode(&a)) - PI).abs() < 1e-12);
        }
    }

    #[test]
    fn geodesic_point_examples() {
        let a = UnitVec::E1;
        let b = UnitVec::E2;
        let p0 = geodesic_point(&a, &b, 0.0).unwrap();
        assert!(dist(&p0, &a) < 1e-15);
        let p1 = geodesic_point(&a, &b, 1.0).unwrap();
        assert!(dist(&p1, &b) < 1e-15);
        let m = geodesic_point(&a, &b, 0.5).unwrap();
        let h = 0.5f64.sqrt();
        assert!((m.x() - h).abs() < 1e-15 && (m.y() - h).abs() < 1e-15 && m.z().abs() < 1e-15);
        assert_eq!(geodesic_point(&a, &a, 0.3), Err(Error::DegenerateArc));
        assert_eq!(geodesic_point(&a, &antipode(&a), 0.3), Err(Error::DegenerateArc));

        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..1000 {
            let a = random_unit(&mut rng);
            let b = random_unit(&mut rng);
            let t: f64 = rng.random_range(0.0..1.0);
            let p = geodesic_point(&a, &b, t).unwrap();
            assert!((dist(&a, &p) - t * dist(&a, &b)).abs() < 1e-12);
            assert!((dist(&a, &p) + dist(&p, &b) - dist(&a, &b)).abs() < 1e-12);
        }
    }

    #[test]
    fn great_arc_rejects_degenerate() {
        assert!(GreatArc::new(UnitVec::E1, UnitVec::E1).is_err());
        let arc = GreatArc::new(UnitVec::E1, UnitVec::E3).unwrap();
        assert!((arc.length() - FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn lune_examples() {
        let l = lune_make(Hemisphere::new(UnitVec::E3), Hemisphere::new(UnitVec::E2)).unwrap();
        assert!((l.thickness - FRAC_PI_2).abs() < 1e-15);
        // corners are ±e1
        assert!((l.corners[0].x().abs() - 1.0).abs() < 1e-15);

        // centers at 2π/3: the semicircle centers are π/3 apart
        let g = UnitVec::E3;
        let h = UnitVec::from_polar(2.0 * PI / 3.0, 0.4);
        let l = lune_make(Hemisphere::new(g), Hemisphere::new(h)).unwrap();
        assert!((l.thickness - PI / 3.0).abs() < 1e-12);

        assert_eq!(
            lune_make(Hemisphere::new(g), Hemisphere::new(g)),
            Err(Error::DegenerateLune)
        );
        assert_eq!(
            lune_make(Hemisphere::new(g), Hemisphere::new(antipode(&g))),
            Err(Error::DegenerateLune)
        );
    }

    #[test]
    fn lune_structure() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..1000 {
            let g = Hemisphere::new(random_unit(&mut rng));
            let h = Hemisphere::new(random_unit(&mut rng));
            let l = lune_make(g, h).unwrap();
            let [c0, c1] = l.corners;
            assert!((c0.vec() + c1.vec()).norm() < 1e-10);
            for c in [c0, c1] {
                assert!(c.dot(&g.center).abs() < 1e-10 && c.dot(&h.center).abs() < 1e-10);
            }
            // mg lies on bd(G) ∩ H and maximizes the dot with h
            assert!(l.mg.dot(&g.center).abs() < 1e-12);
            assert!(h.contains(&l.mg) && g.contains(&l.mh));
            for k in 0..32 {
                let q = l.corners[0].rotate_about(&g.center, PI * k as f64 / 32.0);
                assert!(q.dot(&h.center) <= l.mg.dot(&h.center) + 1e-12);
            }
            assert!(l.thickness > 0.0 && l.thickness < PI);
        }
    }

    #[test]
    fn rotation_and_basis() {
        let (e1, e2) = UnitVec::E3.tangent_basis();
        assert!((e1.cross(&e2) - UnitVec::E3.vec()).norm() < 1e-15);
        let r = UnitVec::E1.rotate_about(&UnitVec::E3, FRAC_PI_2);
        assert!(dist(&r, &UnitVec::E2) < 1e-15);
    }
}
