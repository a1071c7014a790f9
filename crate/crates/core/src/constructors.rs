//! Example bodies: caps, regular odd-gons, constant-diameter bodies, random polygons.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::body::{hull_from_points, BoundarySegment, SphericalBody};
use crate::error::{Error, Result};
use crate::metrics;
use crate::sphere::{dist, UnitVec};

/// Caps this close to a hemisphere are rejected.
pub const CAP_MARGIN: f64 = 1e-6;
/// Samples for the numeric check of a regular odd-gon's thickness.
const CHECK_SAMPLES: usize = 128;
const SIGMA_FLOOR: f64 = -1e-12;

/// Spherical disk of radius `rho` around `center`.
pub fn cap(center: UnitVec, rho: f64) -> Result<SphericalBody> {
    if !(rho > 0.0 && rho < FRAC_PI_2 - CAP_MARGIN) {
        return Err(Error::BadRadius(rho));
    }
    let (e1, _) = center.tangent_basis();
    let start = center.offset(&e1, rho);
    let seg = BoundarySegment::new(center, rho, start, start)?;
    SphericalBody::new(vec![seg], center)
}

fn regular_polygon(n: usize, circumradius: f64) -> Result<SphericalBody> {
    let vs: Vec<UnitVec> =
        (0..n).map(|k| UnitVec::from_polar(circumradius, TAU * k as f64 / n as f64)).collect();
    SphericalBody::polygon(&vs)
}

fn check_odd(n: usize) -> Result<()> {
    if n < 3 || n % 2 == 0 {
        return Err(Error::EvenN(n));
    }
    Ok(())
}

/// Regular `n`-gon around the north pole whose thickness is `target`.
///
/// Below the peak the thickness is the distance `r + a` from a vertex through the
/// center to the opposite side, with apothem `tan a = tan r · cos(π/n)`. That sum
/// increases with `r`, so it is bisected, and the result is checked numerically.
pub fn regular_odd_gon(n: usize, target: f64) -> Result<SphericalBody> {
    check_odd(n)?;
    if !(target > 0.0 && target <= FRAC_PI_2) {
        return Err(Error::InvalidSpec(format!("target thickness {target} outside (0, π/2]")));
    }
    let c = (PI / n as f64).cos();
    let height = |r: f64| r + (r.tan() * c).atan();
    let (mut lo, mut hi) = (0.0, FRAC_PI_2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if height(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let r = if (height(lo) - target).abs() <= (height(hi) - target).abs() { lo } else { hi };
    let body = regular_polygon(n, r)?;
    let measured = metrics::thickness(&body, CHECK_SAMPLES)?.value;
    if (measured - target).abs() > 1e-8 {
        return Err(Error::Unreachable(target));
    }
    Ok(body)
}

/// Vertices and radii of a constant-diameter triangle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TriangleSpec {
    pub v: [UnitVec; 3],
    /// `[κ12, κ23, κ31]`
    pub kappa: [f64; 3],
    pub sigma: [f64; 3],
}

impl TriangleSpec {
    pub fn new(v1: UnitVec, v2: UnitVec, v3: UnitVec) -> Result<Self> {
        let k12 = dist(&v1, &v2);
        let k23 = dist(&v2, &v3);
        let k31 = dist(&v3, &v1);
        let sigma = [
            FRAC_PI_4 - k12 / 2.0 + k23 / 2.0 - k31 / 2.0,
            FRAC_PI_4 - k23 / 2.0 + k31 / 2.0 - k12 / 2.0,
            FRAC_PI_4 - k31 / 2.0 + k12 / 2.0 - k23 / 2.0,
        ];
        let spec = Self { v: [v1, v2, v3], kappa: [k12, k23, k31], sigma };
        let dmax = k12.max(k23).max(k31);
        if dmax > FRAC_PI_2 + 1e-12 {
            return Err(Error::InvalidSpec(format!("vertex diameter {dmax} exceeds π/2")));
        }
        if let Some(s) = sigma.iter().find(|s| **s < SIGMA_FLOOR) {
            return Err(Error::InvalidSpec(format!("negative radius σ = {s}")));
        }
        // two shortest sides sum to at most the longest plus π/2
        let mut k = spec.kappa;
        k.sort_by(f64::total_cmp);
        if k[0] + k[1] > k[2] + FRAC_PI_2 + 1e-12 {
            return Err(Error::InvalidSpec("side condition fails".into()));
        }
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            let r = sigma[i] + spec.kappa[i] + sigma[j] - FRAC_PI_2;
            if r.abs() > 1e-12 {
                return Err(Error::InvariantViolation(format!("balance residual {r:e}")));
            }
        }
        Ok(spec)
    }
}

/// Vertices, diagonals `κ_i = |v_i v_{i+m}|` (m = (n−1)/2) and radii of a constant-diameter odd-gon.
#[derive(Debug, Clone, PartialEq)]
pub struct OddGonSpec {
    pub vertices: Vec<UnitVec>,
    pub kappa: Vec<f64>,
    pub sigma: Vec<f64>,
}

/// Solves `σ_i + σ_{i+m} = b_i` on the cycle `i ↦ i+m` by alternating sums.
pub fn solve_cyclic_sigma(b: &[f64]) -> Result<Vec<f64>> {
    let n = b.len();
    check_odd(n)?;
    let m = (n - 1) / 2;
    let mut sigma = vec![0.0; n];
    for (i, s) in sigma.iter_mut().enumerate() {
        let mut acc = 0.0;
        let mut j = i;
        for k in 0..n {
            if k % 2 == 0 {
                acc += b[j];
            } else {
                acc -= b[j];
            }
            j = (j + m) % n;
        }
        *s = 0.5 * acc;
    }
    Ok(sigma)
}

fn orientation(a: &UnitVec, b: &UnitVec, c: &UnitVec) -> f64 {
    a.cross(b).dot(c.vec())
}

impl OddGonSpec {
    /// `vertices` must be in cyclic order around a convex odd-gon; clockwise input is reversed.
    pub fn new(vertices: &[UnitVec]) -> Result<Self> {
        let n = vertices.len();
        check_odd(n)?;
        let mut vs = vertices.to_vec();
        let signs: Vec<f64> =
            (0..n).map(|i| orientation(&vs[i], &vs[(i + 1) % n], &vs[(i + 2) % n])).collect();
        if signs.iter().all(|s| *s < 0.0) {
            vs.reverse();
        } else if !signs.iter().all(|s| *s > 0.0) {
            return Err(Error::InvalidSpec("vertices are not a convex polygon in cyclic order".into()));
        }
        if hull_from_points(&vs)?.vertices().len() != n {
            return Err(Error::InvalidSpec("vertices are not in convex position".into()));
        }
        for i in 0..n {
            for j in i + 1..n {
                let d = dist(&vs[i], &vs[j]);
                if d > FRAC_PI_2 + 1e-12 {
                    return Err(Error::InvalidSpec(format!("vertex diameter {d} exceeds π/2")));
                }
            }
        }
        let m = (n - 1) / 2;
        let kappa: Vec<f64> = (0..n).map(|i| dist(&vs[i], &vs[(i + m) % n])).collect();
        let b: Vec<f64> = kappa.iter().map(|k| FRAC_PI_2 - k).collect();
        let sigma = solve_cyclic_sigma(&b)?;
        if let Some(s) = sigma.iter().find(|s| **s < SIGMA_FLOOR) {
            return Err(Error::InvalidSpec(format!("negative radius σ = {s}")));
        }
        Ok(Self { vertices: vs, kappa, sigma })
    }

    /// Largest `|σ_i + σ_{i+m} + κ_i − π/2|`.
    pub fn residual(&self) -> f64 {
        let n = self.vertices.len();
        let m = (n - 1) / 2;
        (0..n)
            .map(|i| (self.sigma[i] + self.sigma[(i + m) % n] + self.kappa[i] - FRAC_PI_2).abs())
            .fold(0.0, f64::max)
    }

    pub fn build(&self) -> Result<SphericalBody> {
        build_constant_diameter(&self.vertices, &self.sigma)
    }
}

/// Point beyond `v` on the great circle from `from` through `v`, at distance `s` past `v`.
fn prolong(from: &UnitVec, v: &UnitVec, s: f64) -> Result<UnitVec> {
    let dir = from.direction_to(v).ok_or(Error::DegenerateArc)?;
    Ok(from.offset(&dir, dist(from, v) + s))
}

/// Boundary: around each `v_i` an arc of radius `σ_i`, then an arc of radius `π/2 − σ_j`
/// about the vertex `v_j` opposite the side `v_i v_{i+1}`.
fn build_constant_diameter(vs: &[UnitVec], sigma: &[f64]) -> Result<SphericalBody> {
    let n = vs.len();
    let m = (n - 1) / 2;
    let sig = |i: usize| sigma[i % n].max(0.0);
    // a[i]: beyond v_i away from v_{i+m}; b[i]: beyond v_i away from v_{i+m+1}
    let mut a = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for i in 0..n {
        a.push(prolong(&vs[(i + m) % n], &vs[i], sig(i))?);
        b.push(prolong(&vs[(i + m + 1) % n], &vs[i], sig(i))?);
    }
    let mut segs = Vec::with_capacity(2 * n);
    for i in 0..n {
        if sig(i) > 1e-12 {
            segs.push(BoundarySegment::new(vs[i], sig(i), a[i], b[i])?);
        }
        let j = (i + m + 1) % n;
        let far = FRAC_PI_2 - sig(j);
        let next = (i + 1) % n;
        segs.push(if far >= FRAC_PI_2 - 1e-12 {
            BoundarySegment::great(b[i], a[next])?
        } else {
            BoundarySegment::new(vs[j], far, b[i], a[next])?
        });
    }
    SphericalBody::from_segments(segs)
}

/// Constant-diameter body over a triangle with `σ_i` from the closed form.
pub fn constant_diameter_triangle(v1: UnitVec, v2: UnitVec, v3: UnitVec) -> Result<SphericalBody> {
    let spec = TriangleSpec::new(v1, v2, v3)?;
    let mut vs = spec.v.to_vec();
    let mut sigma = spec.sigma.to_vec();
    if orientation(&vs[0], &vs[1], &vs[2]) < 0.0 {
        vs.reverse();
        sigma.reverse();
    }
    build_constant_diameter(&vs, &sigma)
}

/// Constant-diameter body over a convex odd-gon.
pub fn constant_diameter_odd_gon(vertices: &[UnitVec]) -> Result<SphericalBody> {
    OddGonSpec::new(vertices)?.build()
}

/// Uniform point in the cap of radius `r` around `center`.
pub fn random_in_cap(rng: &mut impl Rng, center: &UnitVec, r: f64) -> UnitVec {
    let (e1, e2) = center.tangent_basis();
    let z = rng.random_range(r.cos()..=1.0);
    let theta = z.clamp(-1.0, 1.0).acos();
    let phi = rng.random_range(0.0..TAU);
    let dir = (e1.vec() * phi.cos() + e2.vec() * phi.sin()).normalize().expect("tangent");
    center.offset(&dir, theta)
}

/// Uniform point on the sphere.
pub fn random_unit(rng: &mut impl Rng) -> UnitVec {
    let z: f64 = rng.random_range(-1.0..=1.0);
    let phi = rng.random_range(0.0..TAU);
    let s = (1.0 - z * z).max(0.0).sqrt();
    UnitVec::new(s * phi.cos(), s * phi.sin(), z).expect("nonzero")
}

/// Hull of `n` uniform points in a random cap of radius `max_diam / 2`; deterministic per seed.
pub fn random_convex_polygon(seed: u64, n: usize, max_diam: f64) -> Result<SphericalBody> {
    if n < 3 || !(max_diam > 0.0 && max_diam <= PI - 0.1) {
        return Err(Error::InvalidSpec(format!("n = {n}, max_diam = {max_diam}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let center = random_unit(&mut rng);
    loop {
        let pts: Vec<UnitVec> = (0..n).map(|_| random_in_cap(&mut rng, &center, max_diam / 2.0)).collect();
        if let Ok(body) = hull_from_points(&pts) {
            if body.vertices().len() >= 3 {
                return Ok(body);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::body::boundary_hausdorff;

    fn octant() -> SphericalBody {
        SphericalBody::polygon(&[UnitVec::E1, UnitVec::E2, UnitVec::E3]).unwrap()
    }

    #[test]
    fn cap_contract() {
        let c = cap(UnitVec::E3, 0.7).unwrap();
        assert!(c.contains(&UnitVec::E3));
        assert!(!c.contains(&UnitVec::new(0.0, 0.0, -1.0).unwrap()));
        assert!(matches!(cap(UnitVec::E3, FRAC_PI_2 + 0.1), Err(Error::BadRadius(_))));
        assert!(matches!(cap(UnitVec::E3, 0.0), Err(Error::BadRadius(_))));
    }

    #[test]
    fn regular_triangle_at_right_angle_is_octant_like() {
        let t = regular_odd_gon(3, FRAC_PI_2).unwrap();
        let vs = t.vertices();
        assert_eq!(vs.len(), 3);
        for i in 0..3 {
            assert!(vs[i].dot(&vs[(i + 1) % 3]).abs() < 1e-8);
        }
    }

    #[test]
    fn regular_odd_gon_round_trip() {
        let p = regular_odd_gon(5, 1.0).unwrap();
        assert!((metrics::thickness(&p, 720).unwrap().value - 1.0).abs() < 1e-8);
        assert!(matches!(regular_odd_gon(4, 1.0), Err(Error::EvenN(4))));
        assert!(regular_odd_gon(5, 1.7).is_err());
    }

    #[test]
    fn equilateral_sigma() {
        let vs: Vec<UnitVec> = (0..3).map(|k| UnitVec::from_polar(0.4, TAU * k as f64 / 3.0)).collect();
        let spec = TriangleSpec::new(vs[0], vs[1], vs[2]).unwrap();
        for i in 0..3 {
            assert!((spec.sigma[i] - (FRAC_PI_4 - spec.kappa[0] / 2.0)).abs() < 1e-15);
        }
    }

    #[test]
    fn orthogonal_triangle_gives_octant() {
        let spec = TriangleSpec::new(UnitVec::E1, UnitVec::E2, UnitVec::E3).unwrap();
        assert!(spec.sigma.iter().all(|s| s.abs() < 1e-15));
        let b = constant_diameter_triangle(UnitVec::E1, UnitVec::E2, UnitVec::E3).unwrap();
        assert_eq!(b.segments().len(), 3);
        assert!(boundary_hausdorff(&b, &octant(), 720) < 1e-9);
    }

    #[test]
    fn tiny_triangle_approaches_quarter_cap() {
        let v1 = UnitVec::from_polar(0.5, 0.3);
        let (e1, e2) = v1.tangent_basis();
        let v2 = v1.offset(&e1, 1e-6);
        let v3 = v1.offset(&e2, 1e-6);
        let b = constant_diameter_triangle(v1, v2, v3).unwrap();
        let c = cap(v1, FRAC_PI_4).unwrap();
        assert!(boundary_hausdorff(&b, &c, 720) < 1e-4);
    }

    #[test]
    fn six_arcs_and_prolongation() {
        let v1 = UnitVec::from_polar(0.3, 0.0);
        let v2 = UnitVec::from_polar(0.4, 2.0);
        let v3 = UnitVec::from_polar(0.35, 4.1);
        let spec = TriangleSpec::new(v1, v2, v3).unwrap();
        let b = constant_diameter_triangle(v1, v2, v3).unwrap();
        assert_eq!(b.segments().len(), 6);
        assert!(b.extreme_points().isolated.is_empty());
        let w12 = prolong(&v2, &v1, spec.sigma[0]).unwrap();
        let w21 = prolong(&v1, &v2, spec.sigma[1]).unwrap();
        assert!((dist(&w12, &w21) - FRAC_PI_2).abs() < 1e-10);
    }

    #[test]
    fn odd_gon_specializes_to_triangle() {
        let v1 = UnitVec::from_polar(0.3, 0.0);
        let v2 = UnitVec::from_polar(0.4, 2.0);
        let v3 = UnitVec::from_polar(0.35, 4.1);
        let t = TriangleSpec::new(v1, v2, v3).unwrap();
        let o = OddGonSpec::new(&[v1, v2, v3]).unwrap();
        assert!(o.residual() < 1e-12);
        for i in 0..3 {
            assert!((t.sigma[i] - o.sigma[i]).abs() < 1e-12);
        }
        let a = constant_diameter_triangle(v1, v2, v3).unwrap();
        let b = o.build().unwrap();
        assert!(boundary_hausdorff(&a, &b, 720) < 1e-10);
    }

    #[test]
    fn regular_pentagon_sigma() {
        let vs: Vec<UnitVec> = (0..5).map(|k| UnitVec::from_polar(0.5, TAU * k as f64 / 5.0)).collect();
        let o = OddGonSpec::new(&vs).unwrap();
        for i in 0..5 {
            assert!((o.sigma[i] - (FRAC_PI_2 - o.kappa[0]) / 2.0).abs() < 1e-14);
        }
        let b = o.build().unwrap();
        assert_eq!(b.segments().len(), 10);
        assert!((metrics::diameter(&b, 720).value - FRAC_PI_2).abs() < 1e-9);
        // clockwise input yields the same body
        let mut rev = vs.clone();
        rev.reverse();
        let r = constant_diameter_odd_gon(&rev).unwrap();
        assert!(boundary_hausdorff(&b, &r, 720) < 1e-12);
    }

    #[test]
    fn odd_gon_rejections() {
        let vs: Vec<UnitVec> = (0..4).map(|k| UnitVec::from_polar(0.5, FRAC_PI_2 * k as f64)).collect();
        assert!(matches!(constant_diameter_odd_gon(&vs), Err(Error::EvenN(4))));
        let wide: Vec<UnitVec> = (0..3).map(|k| UnitVec::from_polar(1.2, TAU * k as f64 / 3.0)).collect();
        assert!(matches!(constant_diameter_triangle(wide[0], wide[1], wide[2]), Err(Error::InvalidSpec(_))));
        let mut scrambled: Vec<UnitVec> = (0..5).map(|k| UnitVec::from_polar(0.5, TAU * k as f64 / 5.0)).collect();
        scrambled.swap(1, 2);
        assert!(matches!(constant_diameter_odd_gon(&scrambled), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn sigma_solver_residual() {
        let b = [0.3, 0.5, 0.2, 0.9, 0.4, 0.1, 0.7];
        let s = solve_cyclic_sigma(&b).unwrap();
        for i in 0..7 {
            assert!((s[i] + s[(i + 3) % 7] - b[i]).abs() < 1e-15);
        }
    }

    #[test]
    fn random_polygon_determinism() {
        let a = random_convex_polygon(11, 12, 1.0).unwrap();
        let b = random_convex_polygon(11, 12, 1.0).unwrap();
        assert_eq!(a.vertices(), b.vertices());
        assert!(metrics::diameter(&a, 720).value <= 1.0 + 1e-9);
        a.check_convexity(1000, 1).unwrap();
    }
}
