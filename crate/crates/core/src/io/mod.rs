//! JSON documents and SVG figures.

pub mod document;
pub mod svg;

pub use document::{
    load_body, read_json, save_body, write_json, BodyDocument, BodyKind, GammaDocument, ReportDocument,
    WulffDocument, SCHEMA_VERSION,
};
pub use svg::{render_svg, svg_string, Figure, Overlays};
