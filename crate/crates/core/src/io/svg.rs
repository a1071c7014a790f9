use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::body::{BoundarySegment, SphericalBody};
use crate::error::Result;
use crate::sphere::{Lune, UnitVec};
use crate::wulff::WulffShape;

const SIZE: f64 = 400.0;
const HALF: f64 = SIZE / 2.0;
const RADIUS: f64 = 180.0;
/// Angular step between polyline samples along an arc.
const STEP: f64 = 0.01;

pub enum Figure<'a> {
    Body(&'a SphericalBody),
    Wulff(&'a WulffShape),
}

#[derive(Default, Clone, Copy)]
pub struct Overlays {
    pub lune: Option<Lune>,
    pub diameter: Option<(UnitVec, UnitVec)>,
}

struct View {
    dir: UnitVec,
    e1: UnitVec,
    e2: UnitVec,
}

impl View {
    fn screen(&self, p: &UnitVec) -> (f64, f64) {
        (HALF + RADIUS * p.dot(&self.e1), HALF - RADIUS * p.dot(&self.e2))
    }

    fn visible(&self, p: &UnitVec) -> bool {
        p.dot(&self.dir) >= 0.0
    }

    /// Splits a polyline into visible and hidden path data.
    fn polyline(&self, pts: &[UnitVec]) -> (String, String) {
        let (mut front, mut back) = (String::new(), String::new());
        let mut prev: Option<bool> = None;
        for (i, p) in pts.iter().enumerate() {
            let vis = self.visible(p);
            let (x, y) = self.screen(p);
            let out = if vis { &mut front } else { &mut back };
            let cmd = if prev == Some(vis) { 'L' } else { 'M' };
            // A run that switches sides restarts at the previous point so the curve stays joined.
            if cmd == 'M' && i > 0 {
                let (px, py) = self.screen(&pts[i - 1]);
                let _ = write!(out, "M{px:.3},{py:.3} L{x:.3},{y:.3} ");
            } else {
                let _ = write!(out, "{cmd}{x:.3},{y:.3} ");
            }
            prev = Some(vis);
        }
        (front.trim_end().to_string(), back.trim_end().to_string())
    }
}

fn arc_points(seg: &BoundarySegment) -> Vec<UnitVec> {
    let k = ((seg.length() / STEP).ceil() as usize).max(8);
    (0..=k).map(|i| seg.point_at(i as f64 / k as f64)).collect()
}

fn semicircle(a: &UnitVec, m: &UnitVec) -> Vec<UnitVec> {
    let k = (std::f64::consts::PI / STEP).ceil() as usize;
    (0..=k)
        .map(|i| {
            let t = std::f64::consts::PI * i as f64 / k as f64;
            (a.vec() * t.cos() + m.vec() * t.sin()).normalize().expect("semicircle point")
        })
        .collect()
}

fn great_arc(a: &UnitVec, b: &UnitVec) -> Vec<UnitVec> {
    match BoundarySegment::great(*a, *b) {
        Ok(s) => arc_points(&s),
        Err(_) => vec![*a, *b],
    }
}

fn path(out: &mut String, class: &str, d: &str, style: &str) {
    let _ = writeln!(out, r#"  <path class="{class}" d="{d}" {style}/>"#);
}

fn draw(out: &mut String, view: &View, pts: &[UnitVec], class: &str, stroke: &str) {
    let (front, back) = view.polyline(pts);
    path(out, class, &front, &format!(r#"fill="none" stroke="{stroke}" stroke-width="2""#));
    if !back.is_empty() {
        path(
            out,
            &format!("{class}-hidden"),
            &back,
            &format!(r#"fill="none" stroke="{stroke}" stroke-width="1" stroke-dasharray="4 3""#),
        );
    }
}

fn header(out: &mut String) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
}

fn body_svg(body: &SphericalBody, view: &View, overlays: &Overlays) -> String {
    let mut out = String::new();
    header(&mut out);
    let _ = writeln!(
        out,
        r#"  <circle class="sphere" cx="{HALF}" cy="{HALF}" r="{RADIUS}" fill="none" stroke="gray"/>"#
    );
    for seg in body.segments() {
        draw(&mut out, view, &arc_points(seg), "boundary", "black");
    }
    if let Some(l) = overlays.lune {
        draw(&mut out, view, &semicircle(&l.corners[0], &l.mg), "lune", "steelblue");
        draw(&mut out, view, &semicircle(&l.corners[0], &l.mh), "lune", "steelblue");
    }
    if let Some((p, q)) = overlays.diameter {
        draw(&mut out, view, &great_arc(&p, &q), "diameter", "firebrick");
    }
    out.push_str("</svg>\n");
    out
}

fn wulff_svg(shape: &WulffShape) -> String {
    let vs = shape.vertices();
    let reach = vs.iter().map(|v| v[0].abs().max(v[1].abs())).fold(0.0, f64::max);
    let scale = RADIUS / reach;
    let mut out = String::new();
    header(&mut out);
    let _ = writeln!(out, r#"  <circle class="origin" cx="{HALF}" cy="{HALF}" r="2" fill="gray"/>"#);
    for i in 0..vs.len() {
        let (a, b) = (vs[i], vs[(i + 1) % vs.len()]);
        let d = format!(
            "M{:.3},{:.3} L{:.3},{:.3}",
            HALF + scale * a[0],
            HALF - scale * a[1],
            HALF + scale * b[0],
            HALF - scale * b[1]
        );
        path(&mut out, "boundary", &d, r#"fill="none" stroke="black" stroke-width="2""#);
    }
    out.push_str("</svg>\n");
    out
}

/// Orthographic view along `view` (pointing at the viewer); Wulff shapes ignore it.
pub fn svg_string(figure: &Figure, view: &UnitVec, overlays: &Overlays) -> String {
    match figure {
        Figure::Body(b) => {
            let (e1, e2) = view.tangent_basis();
            body_svg(b, &View { dir: *view, e1, e2 }, overlays)
        }
        Figure::Wulff(w) => wulff_svg(w),
    }
}

pub fn render_svg(figure: &Figure, view: &UnitVec, overlays: &Overlays, path: &Path) -> Result<()> {
    fs::write(path, svg_string(figure, view, overlays))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn count(svg: &str) -> usize {
        svg.matches(r#"class="boundary""#).count()
    }

    #[test]
    fn octant_has_three_boundary_paths() {
        let o = SphericalBody::polygon(&[UnitVec::E1, UnitVec::E2, UnitVec::E3]).unwrap();
        let view = UnitVec::new(1.0, 1.0, 1.0).unwrap();
        let s = svg_string(&Figure::Body(&o), &view, &Overlays::default());
        assert_eq!(count(&s), 3);
        assert!(!s.contains("boundary-hidden"));
        assert_eq!(s, svg_string(&Figure::Body(&o), &view, &Overlays::default()));
    }

    #[test]
    fn far_side_is_dashed() {
        let o = SphericalBody::polygon(&[UnitVec::E1, UnitVec::E2, UnitVec::E3]).unwrap();
        let view = UnitVec::new(-1.0, -1.0, -0.2).unwrap();
        let s = svg_string(&Figure::Body(&o), &view, &Overlays::default());
        assert!(s.contains("boundary-hidden"));
        assert!(s.contains("stroke-dasharray"));
    }
}
