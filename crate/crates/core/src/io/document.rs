use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::body::{BoundarySegment, SphericalBody};
use crate::error::{Error, Result};
use crate::metrics::{Classification, Verdict, WidthSample};
use crate::sphere::{dist, UnitVec};
use crate::wulff::{GammaFn, Point2, WulffShape};

pub const SCHEMA_VERSION: u32 = 1;

/// Number of random chord checks run when a body is loaded.
const LOAD_CONVEXITY_PAIRS: usize = 500;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BodyKind {
    Polygon,
    ArcBoundary,
    Cap,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentRecord {
    pub center: [f64; 3],
    pub radius: f64,
    pub from: [f64; 3],
    pub to: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BodyDocument {
    pub schema_version: u32,
    pub kind: BodyKind,
    /// Segment junctions in boundary order (empty for a cap).
    pub vertices: Vec<[f64; 3]>,
    pub segments: Vec<SegmentRecord>,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

fn kind_of(body: &SphericalBody) -> BodyKind {
    let segs = body.segments();
    if segs.len() == 1 && segs[0].is_full_circle() {
        BodyKind::Cap
    } else if body.is_polygon() {
        BodyKind::Polygon
    } else {
        BodyKind::ArcBoundary
    }
}

fn unit(a: [f64; 3]) -> Result<UnitVec> {
    UnitVec::from_unit(a[0], a[1], a[2]).map_err(|_| Error::InvariantViolation("unit norm".into()))
}

impl BodyDocument {
    pub fn from_body(body: &SphericalBody) -> Self {
        let kind = kind_of(body);
        let vertices = if kind == BodyKind::Cap {
            Vec::new()
        } else {
            body.segments().iter().map(|s| s.start().to_array()).collect()
        };
        let segments = body
            .segments()
            .iter()
            .map(|s| SegmentRecord {
                center: s.center().to_array(),
                radius: s.radius(),
                from: s.start().to_array(),
                to: s.end().to_array(),
            })
            .collect();
        Self { schema_version: SCHEMA_VERSION, kind, vertices, segments, metadata: BTreeMap::new() }
    }

    pub fn with_metadata(mut self, key: &str, value: serde_json::Value) -> Self {
        self.metadata.insert(key.to_string(), value);
        self
    }

    /// Rebuilds the body and checks every invariant, naming the first one violated.
    pub fn to_body(&self) -> Result<SphericalBody> {
        check_version(self.schema_version)?;
        if self.segments.is_empty() {
            return Err(Error::InvariantViolation("nonempty boundary".into()));
        }
        let mut segs = Vec::with_capacity(self.segments.len());
        for r in &self.segments {
            let (c, a, b) = (unit(r.center)?, unit(r.from)?, unit(r.to)?);
            if !r.radius.is_finite() {
                return Err(Error::InvariantViolation("finite radius".into()));
            }
            segs.push(BoundarySegment::new(c, r.radius, a, b)?);
        }
        let n = segs.len();
        for i in 0..n {
            if dist(&segs[i].end(), &segs[(i + 1) % n].start()) > 1e-10 {
                return Err(Error::InvariantViolation("closed boundary".into()));
            }
        }
        if self.kind != BodyKind::Cap && self.vertices.len() != n {
            return Err(Error::InvariantViolation("one vertex per segment".into()));
        }
        for (v, s) in self.vertices.iter().zip(&segs) {
            if dist(&unit(*v)?, &s.start()) > 1e-10 {
                return Err(Error::InvariantViolation("vertices match segment starts".into()));
            }
        }
        let body = SphericalBody::from_segments(segs)?;
        if kind_of(&body) != self.kind {
            return Err(Error::InvariantViolation(format!("kind {:?}", self.kind)));
        }
        body.check_convexity(LOAD_CONVEXITY_PAIRS, 0)?;
        Ok(body)
    }
}

/// Verdict as stored in a report.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerdictRecord {
    pub pass: bool,
    pub deviation: f64,
    pub tolerance: f64,
    pub value: f64,
    pub witness: WitnessRecord,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessRecord {
    pub label: String,
    pub points: Vec<[f64; 3]>,
    pub values: Vec<f64>,
}

impl From<&Verdict> for VerdictRecord {
    fn from(v: &Verdict) -> Self {
        Self {
            pass: v.pass,
            deviation: v.deviation,
            tolerance: v.tolerance,
            value: v.value,
            witness: WitnessRecord {
                label: v.witness.label.clone(),
                points: v.witness.points.iter().map(|p| p.to_array()).collect(),
                values: v.witness.values.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WidthRecord {
    pub support_center: [f64; 3],
    pub width: f64,
    pub dual_form_width: f64,
}

impl From<&WidthSample> for WidthRecord {
    fn from(w: &WidthSample) -> Self {
        Self { support_center: w.support_center.to_array(), width: w.width, dual_form_width: w.dual_form_width }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub samples: usize,
    pub thickness: f64,
    pub diameter: f64,
    pub verdicts: BTreeMap<String, VerdictRecord>,
    pub theorem_checks: BTreeMap<String, bool>,
    pub width_profile: Vec<WidthRecord>,
}

impl ReportDocument {
    pub fn new(c: &Classification, profile: &[WidthSample], samples: usize) -> Result<Self> {
        let mut verdicts = BTreeMap::new();
        for v in [&c.constant_width, &c.constant_diameter, &c.reduced] {
            verdicts.insert(v.kind.name().to_string(), VerdictRecord::from(v));
        }
        let mut theorem_checks = BTreeMap::new();
        theorem_checks.insert("claim2_leq".to_string(), c.claim2_leq);
        for (k, v) in [
            ("thm3_sign_agreement", c.thm3_sign_agreement),
            ("prop1_equality", c.prop1_equality),
            ("cor2_constant_width", c.cor2_constant_width),
        ] {
            if let Some(b) = v {
                theorem_checks.insert(k.to_string(), b);
            }
        }
        let doc = Self {
            schema_version: SCHEMA_VERSION,
            samples,
            thickness: c.thickness.value,
            diameter: c.diameter.value,
            verdicts,
            theorem_checks,
            width_profile: profile.iter().map(WidthRecord::from).collect(),
        };
        doc.check_finite()?;
        Ok(doc)
    }

    fn check_finite(&self) -> Result<()> {
        let mut nums = vec![self.thickness, self.diameter];
        for v in self.verdicts.values() {
            nums.extend([v.deviation, v.tolerance, v.value]);
            nums.extend(&v.witness.values);
            nums.extend(v.witness.points.iter().flatten());
        }
        for w in &self.width_profile {
            nums.extend([w.width, w.dual_form_width]);
            nums.extend(w.support_center);
        }
        if nums.iter().all(|x| x.is_finite()) {
            Ok(())
        } else {
            Err(Error::InvariantViolation("finite numbers".into()))
        }
    }
}

/// Samples of a surface-energy function as `[angle, value]` pairs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GammaDocument {
    pub schema_version: u32,
    pub samples: Vec<[f64; 2]>,
    #[serde(default)]
    pub metadata: BTreeMap<String, serde_json::Value>,
}

impl GammaDocument {
    pub fn from_gamma(g: &GammaFn) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            samples: g.samples().iter().map(|&(a, v)| [a, v]).collect(),
            metadata: BTreeMap::new(),
        }
    }

    pub fn to_gamma(&self) -> Result<GammaFn> {
        check_version(self.schema_version)?;
        GammaFn::new(self.samples.iter().map(|s| (s[0], s[1])).collect())
    }
}

/// A Wulff shape: polygon vertices plus the gamma samples it came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WulffDocument {
    pub schema_version: u32,
    pub vertices: Vec<Point2>,
    pub gamma: Vec<[f64; 2]>,
}

impl WulffDocument {
    pub fn from_shape(w: &WulffShape) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            vertices: w.vertices().to_vec(),
            gamma: w.gamma().samples().iter().map(|&(a, v)| [a, v]).collect(),
        }
    }

    /// Rebuilds the polygon; the stored gamma is validated but provenance is recomputed.
    pub fn to_shape(&self) -> Result<WulffShape> {
        check_version(self.schema_version)?;
        GammaFn::new(self.gamma.iter().map(|s| (s[0], s[1])).collect())?;
        let shape = WulffShape::from_polygon(&self.vertices)?;
        if shape.vertices().len() != self.vertices.len() {
            return Err(Error::InvariantViolation("strictly convex vertex list".into()));
        }
        Ok(shape)
    }
}

fn check_version(v: u32) -> Result<()> {
    if v != SCHEMA_VERSION {
        return Err(Error::Parse(format!("schema_version {v} is not supported (expected {SCHEMA_VERSION})")));
    }
    Ok(())
}

pub fn to_json<T: Serialize>(doc: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(doc)?;
    s.push('\n');
    Ok(s)
}

pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn write_json<T: Serialize>(path: &Path, doc: &T) -> Result<()> {
    fs::write(path, to_json(doc)?)?;
    Ok(())
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    from_json(&fs::read_to_string(path)?)
}

pub fn save_body(path: &Path, body: &SphericalBody) -> Result<()> {
    write_json(path, &BodyDocument::from_body(body))
}

pub fn load_body(path: &Path) -> Result<SphericalBody> {
    read_json::<BodyDocument>(path)?.to_body()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructors::{cap, constant_diameter_triangle};

    fn octant() -> SphericalBody {
        SphericalBody::polygon(&[UnitVec::E1, UnitVec::E2, UnitVec::E3]).unwrap()
    }

    #[test]
    fn octant_round_trip() {
        let o = octant();
        let text = to_json(&BodyDocument::from_body(&o)).unwrap();
        let doc: BodyDocument = from_json(&text).unwrap();
        let back = doc.to_body().unwrap();
        assert_eq!(back.vertices(), o.vertices());
        assert_eq!(to_json(&BodyDocument::from_body(&back)).unwrap(), text);
    }

    #[test]
    fn curved_round_trip_is_bit_identical() {
        let b = constant_diameter_triangle(
            UnitVec::from_polar(0.3, 0.0),
            UnitVec::from_polar(0.4, 2.0),
            UnitVec::from_polar(0.35, 4.1),
        )
        .unwrap();
        let doc = BodyDocument::from_body(&b);
        assert_eq!(doc.kind, BodyKind::ArcBoundary);
        let again = BodyDocument::from_body(&doc.to_body().unwrap());
        assert_eq!(again, doc);
        let c = BodyDocument::from_body(&cap(UnitVec::E3, 0.5).unwrap());
        assert_eq!(c.kind, BodyKind::Cap);
        assert_eq!(BodyDocument::from_body(&c.to_body().unwrap()), c);
    }

    #[test]
    fn non_unit_vertex_rejected() {
        let mut doc = BodyDocument::from_body(&octant());
        doc.segments[0].from = [1.001, 0.0, 0.0];
        assert_eq!(doc.to_body().unwrap_err(), Error::InvariantViolation("unit norm".into()));
    }

    #[test]
    fn gap_rejected() {
        let mut doc = BodyDocument::from_body(&octant());
        // stop the first edge short of the second edge's start
        doc.segments[0].to = UnitVec::from_polar(std::f64::consts::FRAC_PI_2, 1.2).to_array();
        assert_eq!(doc.to_body().unwrap_err(), Error::InvariantViolation("closed boundary".into()));
    }

    #[test]
    fn strict_schema() {
        let text = to_json(&BodyDocument::from_body(&octant())).unwrap();
        let extra = text.replacen("{", "{\n  \"unexpected\": 1,", 1);
        assert!(matches!(from_json::<BodyDocument>(&extra), Err(Error::Parse(_))));
        let mut doc = BodyDocument::from_body(&octant());
        doc.schema_version = 2;
        assert!(matches!(doc.to_body(), Err(Error::Parse(_))));
    }
}
