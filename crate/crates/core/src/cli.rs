//! `sphconv` command-line front end.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::body::SphericalBody;
use crate::constructors;
use crate::error::{Error, Result};
use crate::io::{self, BodyDocument, Figure, GammaDocument, Overlays, ReportDocument, WulffDocument};
use crate::metrics::{self, Verdict, DEFAULT_SAMPLES, DEFAULT_TOL};
use crate::sphere::{lune_make, Hemisphere, UnitVec};
use crate::wulff::{self, GammaFn, ProjectionFrame, WulffShape};

#[derive(Parser, Debug)]
#[command(name = "sphconv", version, about = "Convex bodies on the unit sphere: width, thickness, diameter, Wulff duality")]
pub struct Cli {
    /// Boundary samples and directions used by scans.
    #[arg(long, global = true, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Verdict tolerance in radians.
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,
    /// Seed for randomized construction and checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a body and write it as JSON.
    #[command(subcommand)]
    Construct(Construct),
    /// Thickness, diameter, width profile and verdicts of a body.
    Analyze {
        body: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run one verdict; exit 0 on pass, 1 on fail.
    Check { property: Property, body: PathBuf },
    #[command(subcommand)]
    Wulff(WulffCmd),
    /// Project a body to the plane and run the self-duality report on the result.
    Roundtrip {
        body: PathBuf,
        /// Projection pole; defaults to the body's enclosing center.
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
        pole: Option<UnitVec>,
        /// Half-plane directions for the dual shape.
        #[arg(long, default_value_t = 4096)]
        directions: usize,
    },
    /// Write an SVG figure of a body or Wulff document.
    Render {
        doc: PathBuf,
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true, default_value = "1,1,1")]
        view: UnitVec,
        /// Overlay the thinnest lune and a diameter chord.
        #[arg(long)]
        witness: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Construct {
    Cap {
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true, default_value = "0,0,1")]
        center: UnitVec,
        #[arg(long)]
        rho: f64,
        #[command(flatten)]
        out: Out,
    },
    /// Regular odd-gon with the given thickness.
    Oddgon {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        thickness: f64,
        #[command(flatten)]
        out: Out,
    },
    /// Constant-diameter body around a triangle.
    CdTriangle {
        /// Repeat three times.
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true, required = true)]
        vertex: Vec<UnitVec>,
        #[command(flatten)]
        out: Out,
    },
    /// Constant-diameter body around an odd convex polygon.
    CdOddgon {
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true, required = true)]
        vertex: Vec<UnitVec>,
        #[command(flatten)]
        out: Out,
    },
    /// Random convex polygon (uses --seed).
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1.2)]
        max_diam: f64,
        #[command(flatten)]
        out: Out,
    },
}

#[derive(Args, Debug)]
struct Out {
    #[arg(short, long)]
    output: PathBuf,
}

#[derive(Subcommand, Debug)]
enum WulffCmd {
    /// Wulff shape of a gamma document, or of a constant gamma.
    Build {
        #[arg(long, conflicts_with = "constant", required_unless_present = "constant")]
        gamma: Option<PathBuf>,
        #[arg(long)]
        constant: Option<f64>,
        #[arg(short, long)]
        output: PathBuf,
    },
    Dual {
        wulff: PathBuf,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Exit 0 if the shape (or the shape of a gamma document) is self-dual.
    SelfDual { doc: PathBuf },
    /// Lift a Wulff shape to a spherical polygon.
    Induce {
        wulff: PathBuf,
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true, default_value = "0,0,1")]
        pole: UnitVec,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Centrally project a body to the tangent plane at the pole.
    Project {
        body: PathBuf,
        #[arg(long, value_parser = parse_vec, allow_hyphen_values = true)]
        pole: Option<UnitVec>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Property {
    ConstantWidth,
    ConstantDiameter,
    Reduced,
}

fn parse_vec(s: &str) -> std::result::Result<UnitVec, String> {
    let parts: Vec<f64> = s
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{p:?}: {e}")))
        .collect::<std::result::Result<_, _>>()?;
    match parts.as_slice() {
        [x, y, z] => UnitVec::new(*x, *y, *z).map_err(|e| e.to_string()),
        _ => Err(format!("expected x,y,z, got {s:?}")),
    }
}

/// Parses `args` (including the program name) and runs the command. Returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    if !(cli.tol > 0.0 && cli.tol.is_finite()) || cli.samples < 8 {
        eprintln!("error: --tol must be positive and --samples at least 8");
        return 2;
    }
    match execute(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

fn write_body(path: &Path, body: &SphericalBody, how: serde_json::Value) -> Result<i32> {
    io::write_json(path, &BodyDocument::from_body(body).with_metadata("construction", how))?;
    Ok(0)
}

fn verdict_line(v: &Verdict) -> String {
    format!(
        "{}: {} (deviation {:.3e}, tolerance {:.1e}, value {:.12})",
        v.kind.name(),
        if v.pass { "PASS" } else { "FAIL" },
        v.deviation,
        v.tolerance,
        v.value
    )
}

fn load_wulff(path: &Path) -> Result<WulffShape> {
    io::read_json::<WulffDocument>(path)?.to_shape()
}

fn default_frame(body: &SphericalBody, pole: Option<UnitVec>) -> ProjectionFrame {
    ProjectionFrame::new(pole.unwrap_or_else(|| body.enclosing_center()))
}

fn execute(cli: &Cli) -> Result<i32> {
    let (n, tol) = (cli.samples, cli.tol);
    match &cli.command {
        Command::Construct(c) => construct(c, cli.seed),
        Command::Analyze { body, output } => {
            let b = io::load_body(body)?;
            let class = metrics::classify(&b, tol, n)?;
            let profile = metrics::width_profile(&b, n)?;
            let doc = ReportDocument::new(&class, &profile, n)?;
            match output {
                Some(p) => io::write_json(p, &doc)?,
                None => print!("{}", io::document::to_json(&doc)?),
            }
            Ok(0)
        }
        Command::Check { property, body } => {
            let b = io::load_body(body)?;
            let v = match property {
                Property::ConstantWidth => metrics::is_constant_width(&b, tol, n)?,
                Property::ConstantDiameter => metrics::is_constant_diameter(&b, tol, n),
                Property::Reduced => metrics::reduced_check(&b, tol, n)?,
            };
            println!("{}", verdict_line(&v));
            Ok(if v.pass { 0 } else { 1 })
        }
        Command::Wulff(w) => wulff_cmd(w, tol, n),
        Command::Roundtrip { body, pole, directions } => {
            let b = io::load_body(body)?;
            let frame = default_frame(&b, *pole);
            let shape = wulff::project_to_plane(&b, &frame, n)?;
            let report = wulff::self_dual_equivalence_report(&shape, &frame, tol, n, *directions)?;
            let mut conditions = serde_json::Map::new();
            for (k, v) in &report.four_conditions {
                conditions.insert(k.clone(), json!({"pass": v.pass, "deviation": v.deviation}));
            }
            let out = json!({
                "self_dual": report.self_dual,
                "hausdorff_gap": report.hausdorff_gap,
                "thickness": report.thickness,
                "diameter": report.diameter,
                "conditions": conditions,
            });
            println!("{}", serde_json::to_string_pretty(&out)?);
            Ok(if report.self_dual { 0 } else { 1 })
        }
        Command::Render { doc, view, witness, output } => {
            let text = std::fs::read_to_string(doc)?;
            if let Ok(bd) = io::document::from_json::<BodyDocument>(&text) {
                let b = bd.to_body()?;
                let mut ov = Overlays::default();
                if *witness {
                    let t = metrics::thickness(&b, n)?;
                    let w = t.witness;
                    ov.lune = lune_make(Hemisphere::new(w.support_center), Hemisphere::new(w.opposing_center)).ok();
                    let d = metrics::diameter(&b, n);
                    ov.diameter = Some((d.p, d.q));
                }
                io::render_svg(&Figure::Body(&b), view, &ov, output)?;
            } else {
                let shape = io::document::from_json::<WulffDocument>(&text)
                    .map_err(|_| Error::Parse("expected a body or Wulff document".into()))?
                    .to_shape()?;
                io::render_svg(&Figure::Wulff(&shape), view, &Overlays::default(), output)?;
            }
            Ok(0)
        }
    }
}

fn construct(c: &Construct, seed: u64) -> Result<i32> {
    match c {
        Construct::Cap { center, rho, out } => write_body(
            &out.output,
            &constructors::cap(*center, *rho)?,
            json!({"type": "cap", "center": center.to_array(), "rho": rho}),
        ),
        Construct::Oddgon { n, thickness, out } => write_body(
            &out.output,
            &constructors::regular_odd_gon(*n, *thickness)?,
            json!({"type": "oddgon", "n": n, "thickness": thickness}),
        ),
        Construct::CdTriangle { vertex, .. } if vertex.len() != 3 => {
            Err(Error::InvalidSpec(format!("cd-triangle needs 3 vertices, got {}", vertex.len())))
        }
        Construct::CdTriangle { vertex, out } => write_body(
            &out.output,
            &constructors::constant_diameter_triangle(vertex[0], vertex[1], vertex[2])?,
            json!({"type": "cd-triangle"}),
        ),
        Construct::CdOddgon { vertex, out } => write_body(
            &out.output,
            &constructors::constant_diameter_odd_gon(vertex)?,
            json!({"type": "cd-oddgon"}),
        ),
        Construct::Random { n, max_diam, out } => write_body(
            &out.output,
            &constructors::random_convex_polygon(seed, *n, *max_diam)?,
            json!({"type": "random", "n": n, "max_diam": max_diam, "seed": seed}),
        ),
    }
}

fn wulff_cmd(w: &WulffCmd, tol: f64, n: usize) -> Result<i32> {
    match w {
        WulffCmd::Build { gamma, constant, output } => {
            let g = match (gamma, constant) {
                (Some(p), _) => io::read_json::<GammaDocument>(p)?.to_gamma()?,
                (None, Some(v)) => GammaFn::constant(*v)?,
                (None, None) => return Err(Error::InvalidSpec("need --gamma or --constant".into())),
            };
            io::write_json(output, &WulffDocument::from_shape(&wulff::wulff_shape(&g, n)?))?;
            Ok(0)
        }
        WulffCmd::Dual { wulff: p, output } => {
            let dual = wulff::dual_wulff(&load_wulff(p)?, n)?;
            io::write_json(output, &WulffDocument::from_shape(&dual))?;
            Ok(0)
        }
        WulffCmd::SelfDual { doc } => {
            let text = std::fs::read_to_string(doc)?;
            let shape = match io::document::from_json::<WulffDocument>(&text) {
                Ok(d) => d.to_shape()?,
                Err(_) => {
                    let g = io::document::from_json::<GammaDocument>(&text)?.to_gamma()?;
                    wulff::wulff_shape(&g, n)?
                }
            };
            let (pass, gap) = wulff::is_self_dual(&shape, tol, n)?;
            println!("self_dual: {} (hausdorff gap {gap:.3e}, tolerance {tol:.1e})", if pass { "PASS" } else { "FAIL" });
            Ok(if pass { 0 } else { 1 })
        }
        WulffCmd::Induce { wulff: p, pole, output } => {
            let body = wulff::induce_spherical(&load_wulff(p)?, &ProjectionFrame::new(*pole))?;
            write_body(output, &body, json!({"type": "induced", "pole": pole.to_array()}))
        }
        WulffCmd::Project { body, pole, output } => {
            let b = io::load_body(body)?;
            let shape = wulff::project_to_plane(&b, &default_frame(&b, *pole), n)?;
            io::write_json(output, &WulffDocument::from_shape(&shape))?;
            Ok(0)
        }
    }
}
