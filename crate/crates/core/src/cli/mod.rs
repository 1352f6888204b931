//! Command-line front end.
//!
//! [`run`] parses arguments, dispatches to a subcommand over the requested
//! scalar backend and writes the result as text, JSON, CSV or SVG. Exit
//! codes: 0 success, 1 usage, parse or I/O error, 2 non-generic input,
//! 3 a verification check failed.

pub mod emit;
mod parse;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

pub use emit::{Mark, Scene, Table};
pub use parse::{parse_point, parse_poly, parse_quaternion};

use crate::algebra::{Approx, Exact, Scalar, Signature};
use crate::error::{Error, Result};
use crate::factorization::all_factorizations;
use crate::geometry::{midpoints, quadrance, ProjPoint};
use crate::linkage::{
    build_linkage, construct_equal_quadrilateral, coupler_conic, default_samples, sample_motion,
    verify_linkage_at, CouplerConic, FourBar,
};
use crate::polynomials::QuatPoly;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_NON_GENERIC: i32 = 2;
pub const EXIT_CHECK_FAILED: i32 = 3;

const DEFAULT_RANGE: (i64, i64) = (-3, 6);
const DEFAULT_STEPS: usize = 61;
const CONIC_SAMPLES: usize = 360;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algebra {
    Hamilton,
    Split,
}

impl From<Algebra> for Signature {
    fn from(a: Algebra) -> Self {
        match a {
            Algebra::Hamilton => Signature::Hamiltonian,
            Algebra::Split => Signature::Split,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Backend {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Parser)]
#[command(name = "splitquat", version, about = "Quadratic quaternion polynomials and their four-bar linkages")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[arg(long, global = true, value_enum, default_value_t = Algebra::Split)]
    pub algebra: Algebra,

    #[arg(long, global = true, value_enum, default_value_t = Backend::Exact)]
    pub backend: Backend,

    /// Comparison tolerance of the float backend.
    #[arg(long, global = true)]
    pub tol: Option<f64>,

    /// Number of parameter samples for `verify` and `simulate`.
    #[arg(long, global = true)]
    pub samples: Option<usize>,

    /// Parameter interval `a:b`, endpoints integers or fractions.
    #[arg(long = "t-range", global = true, allow_hyphen_values = true)]
    pub t_range: Option<String>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Point carried along by `simulate`, e.g. `i+3j+k` or `1,3,1`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub tracer: Vec<String>,

    /// Write the result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// All factorizations with labels and complementary pairing.
    Factor {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Norm polynomial and its roots.
    Norm {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Joints, quadrances, coupler conics and focal points.
    Linkage {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Check the joint identities at sample parameters.
    Verify {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Trajectory table of the joints, coupler point and tracers.
    Simulate {
        #[arg(allow_hyphen_values = true)]
        poly: String,
    },
    /// Midpoints of two points.
    Midpoints {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    /// Completions `B12` of an equal-quadrance quadrilateral.
    Quad {
        #[arg(allow_hyphen_values = true)]
        a12: String,
        #[arg(allow_hyphen_values = true)]
        a34: String,
        #[arg(allow_hyphen_values = true)]
        b34: String,
    },
}

/// Result of a subcommand in every output form it supports.
#[derive(Clone, Debug)]
pub struct Output {
    pub text: String,
    pub json: Value,
    pub table: Option<Table>,
    pub scene: Option<Scene>,
    /// False when a verification check failed.
    pub ok: bool,
}

impl Output {
    fn new(text: String, json: Value) -> Self {
        Output { text, json, table: None, scene: None, ok: true }
    }

    pub fn render(&self, format: Format) -> Result<Vec<u8>> {
        match format {
            Format::Text => Ok(self.text.clone().into_bytes()),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json).expect("json value");
                s.push('\n');
                Ok(s.into_bytes())
            }
            Format::Csv => self
                .table
                .as_ref()
                .map(Table::to_csv)
                .ok_or_else(|| Error::Unsupported("no CSV form for this command".into())),
            Format::Svg => self
                .scene
                .as_ref()
                .map(|s| s.to_svg().into_bytes())
                .ok_or_else(|| Error::Unsupported("no SVG form for this command".into())),
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::NonGeneric(_) => EXIT_NON_GENERIC,
        _ => EXIT_ERROR,
    }
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::SignatureMismatch => "SignatureMismatch",
        Error::NonInvertible => "NonInvertible",
        Error::NonGeneric(_) => "NonGeneric",
        Error::Unsupported(_) => "Unsupported",
        Error::Degenerate(_) => "Degenerate",
        Error::NullPoint => "NullPoint",
        Error::NotVectorial => "NotVectorial",
        Error::Inexact(_) => "Inexact",
        Error::Parse { .. } => "Parse",
        Error::Io(_) => "Io",
    }
}

/// Parses `args` (program name first) and runs the command. Returns the
/// exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = stdout.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = stderr.write_all(text.as_bytes());
                    EXIT_ERROR
                }
            };
        }
    };
    let result = execute(&cli, stderr).and_then(|out| {
        let bytes = out.render(cli.format)?;
        match &cli.out {
            Some(path) => std::fs::write(path, &bytes).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?,
            None => stdout.write_all(&bytes).map_err(|e| Error::Io(e.to_string()))?,
        }
        Ok(out.ok)
    });
    match result {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_CHECK_FAILED,
        Err(e) => {
            let code = exit_code(&e);
            let msg = if cli.format == Format::Json {
                let mut v = json!({"error": error_kind(&e), "message": e.to_string(), "exit_code": code});
                if let Error::Parse { pos, .. } = &e {
                    v["position"] = json!(pos);
                }
                format!("{v}\n")
            } else {
                format!("error: {e}\n")
            };
            let _ = stderr.write_all(msg.as_bytes());
            code
        }
    }
}

/// Runs the parsed command, falling back to floats when the exact backend
/// cannot represent an intermediate value.
pub fn execute(cli: &Cli, stderr: &mut dyn Write) -> Result<Output> {
    if let Some(tol) = cli.tol {
        crate::algebra::set_tolerance(tol)?;
    }
    let input = Input::parse(cli)?;
    match cli.backend {
        Backend::Float => dispatch::<Approx>(cli, &input),
        Backend::Exact => match dispatch::<Exact>(cli, &input) {
            Err(Error::Inexact(msg)) => {
                let warning = if cli.format == Format::Json {
                    json!({"warning": "Inexact", "message": msg, "fallback": "float"}).to_string()
                } else {
                    format!("warning: {msg}; continuing with the float backend")
                };
                let _ = writeln!(stderr, "{warning}");
                dispatch::<Approx>(cli, &input)
            }
            r => r,
        },
    }
}

/// Command arguments parsed once with exact coefficients.
struct Input {
    sig: Signature,
    poly: Option<QuatPoly<Exact>>,
    points: Vec<ProjPoint<Exact>>,
    tracers: Vec<ProjPoint<Exact>>,
    range: Option<(Exact, Exact)>,
}

impl Input {
    fn parse(cli: &Cli) -> Result<Self> {
        let sig = Signature::from(cli.algebra);
        let (poly, points) = match &cli.command {
            Command::Factor { poly }
            | Command::Norm { poly }
            | Command::Linkage { poly }
            | Command::Verify { poly }
            | Command::Simulate { poly } => (Some(parse_poly(poly, sig)?), Vec::new()),
            Command::Midpoints { a, b } => (None, vec![parse_point(a, sig)?, parse_point(b, sig)?]),
            Command::Quad { a12, a34, b34 } => (
                None,
                vec![parse_point(a12, sig)?, parse_point(a34, sig)?, parse_point(b34, sig)?],
            ),
        };
        let tracers = cli.tracer.iter().map(|t| parse_point(t, sig)).collect::<Result<_>>()?;
        let range = cli.t_range.as_deref().map(parse_range).transpose()?;
        Ok(Input { sig, poly, points, tracers, range })
    }
}

fn parse_range(text: &str) -> Result<(Exact, Exact)> {
    let (a, b) = text
        .split_once(':')
        .ok_or_else(|| Error::parse(0, "expected a range a:b"))?;
    let bound = |s: &str, offset: usize| -> Result<Exact> {
        s.parse::<Exact>()
            .ok()
            .filter(Exact::is_rational)
            .ok_or_else(|| Error::parse(offset, format!("bad range endpoint {s:?}")))
    };
    let (lo, hi) = (bound(a, 0)?, bound(b, a.len() + 1)?);
    if lo >= hi {
        return Err(Error::parse(0, "empty parameter range"));
    }
    Ok((lo, hi))
}

fn lift<S: Scalar>(x: &Exact) -> S {
    S::from_exact(x)
}

fn dispatch<S: Scalar>(cli: &Cli, input: &Input) -> Result<Output> {
    let poly = input.poly.as_ref().map(|p| p.map(lift::<S>));
    let points: Vec<ProjPoint<S>> = input.points.iter().map(|p| p.map(lift::<S>)).collect();
    let mut out = match &cli.command {
        Command::Factor { .. } => factor(poly.as_ref().expect("polynomial")),
        Command::Norm { .. } => norm(poly.as_ref().expect("polynomial")),
        Command::Linkage { .. } => linkage(poly.as_ref().expect("polynomial")),
        Command::Verify { .. } => {
            let samples = match (cli.samples, &input.range) {
                (None, None) => default_samples(),
                (n, range) => grid(range.as_ref(), n.unwrap_or(default_samples::<S>().len()))?,
            };
            verify(poly.as_ref().expect("polynomial"), &samples)
        }
        Command::Simulate { .. } => {
            let (lo, hi) = bounds::<S>(input.range.as_ref());
            let tracers: Vec<ProjPoint<S>> = input.tracers.iter().map(|p| p.map(lift::<S>)).collect();
            simulate(poly.as_ref().expect("polynomial"), &lo, &hi, cli.samples.unwrap_or(DEFAULT_STEPS), &tracers)
        }
        Command::Midpoints { .. } => midpoint_pair(&points[0], &points[1]),
        Command::Quad { .. } => quad(&points[0], &points[1], &points[2]),
    }?;
    if let Value::Object(m) = &mut out.json {
        let mut head = serde_json::Map::new();
        head.insert("algebra".into(), json!(input.sig.name()));
        head.insert("backend".into(), json!(if S::EXACT { "exact" } else { "float" }));
        head.append(m);
        out.json = Value::Object(head);
    }
    Ok(out)
}

fn bounds<S: Scalar>(range: Option<&(Exact, Exact)>) -> (S, S) {
    match range {
        Some((a, b)) => (lift(a), lift(b)),
        None => (S::from_i64(DEFAULT_RANGE.0), S::from_i64(DEFAULT_RANGE.1)),
    }
}

/// Midpoints of `n` equal subintervals, so the endpoints are never hit.
fn grid<S: Scalar>(range: Option<&(Exact, Exact)>, n: usize) -> Result<Vec<S>> {
    if n == 0 {
        return Err(Error::Unsupported("zero samples".into()));
    }
    let (lo, hi) = bounds::<S>(range);
    let width = hi - lo.clone();
    Ok((0..n)
        .map(|k| {
            let f = Exact::rational(BigRational::new((2 * k as i64 + 1).into(), (2 * n as i64).into()));
            lo.clone() + width.clone() * S::from_exact(&f)
        })
        .collect())
}

fn leg_name(label: Option<crate::factorization::Label>, i: usize) -> String {
    label.map_or_else(|| format!("L{}", i + 1), |l| l.to_string())
}

fn quadrance_json<S: Scalar>(a: &ProjPoint<S>, b: &ProjPoint<S>) -> Value {
    quadrance(a, b).map_or(Value::Null, |q| q.to_json())
}

fn quadrance_text<S: Scalar>(a: &ProjPoint<S>, b: &ProjPoint<S>) -> String {
    quadrance(a, b).map_or_else(|e| format!("undefined ({e})"), |q| q.to_string())
}

fn factor<S: Scalar>(c: &QuatPoly<S>) -> Result<Output> {
    let fs = all_factorizations(c)?;
    let norm = c.norm_polynomial();
    let complement: Vec<Option<usize>> = (0..fs.len())
        .map(|i| (0..fs.len()).find(|&j| j != i && fs[i].is_complementary_to(&fs[j], &norm)))
        .collect();
    let mut text = format!("C = {c}\nC C~ = {norm}\n");
    let mut table = Table {
        header: ["index", "label", "h1", "h2", "divisor", "complement"].map(String::from).to_vec(),
        rows: Vec::new(),
    };
    let mut items = Vec::new();
    for (i, f) in fs.iter().enumerate() {
        let name = leg_name(f.label, i);
        let comp = complement[i].map(|j| j + 1);
        text.push_str(&format!(
            "{}. (t - ({}))(t - ({}))  label {name}  divisor {}  complement {}\n",
            i + 1,
            f.h1,
            f.h2,
            f.divisor,
            comp.map_or("-".into(), |j| j.to_string())
        ));
        table.rows.push(vec![
            (i + 1).to_string(),
            f.label.map(|l| l.to_string()).unwrap_or_default(),
            f.h1.to_string(),
            f.h2.to_string(),
            f.divisor.to_string(),
            comp.map(|j| j.to_string()).unwrap_or_default(),
        ]);
        items.push(json!({
            "index": i + 1,
            "label": f.label.map(|l| l.to_string()),
            "h1": emit::quaternion(&f.h1),
            "h2": emit::quaternion(&f.h2),
            "divisor": emit::real_poly(&f.divisor),
            "complement": comp,
        }));
    }
    let json = json!({
        "command": "factor",
        "polynomial": c.to_string(),
        "coefficients": c.coeffs().iter().map(emit::quaternion).collect::<Vec<_>>(),
        "norm": emit::real_poly(&norm),
        "factorizations": items,
    });
    Ok(Output { table: Some(table), ..Output::new(text, json) })
}

fn norm<S: Scalar>(c: &QuatPoly<S>) -> Result<Output> {
    let n = c.norm_polynomial();
    let roots = n.real_roots()?;
    let list = |v: &[S]| v.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(", ");
    let polys = |v: &[crate::polynomials::RealPoly<S>]| v.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ");
    let mut text = format!("C C~ = {n}\nreal roots: {}\n", list(&roots.real));
    if !roots.complex.is_empty() {
        text.push_str(&format!("complex factors: {}\n", polys(&roots.complex)));
    }
    if !roots.unresolved.is_empty() {
        text.push_str(&format!("unresolved factors: {}\n", polys(&roots.unresolved)));
    }
    text.push_str(&format!("square-free: {}\n", roots.is_square_free()));
    let mut table = Table { header: vec!["kind".into(), "value".into()], rows: Vec::new() };
    table.rows.extend(roots.real.iter().map(|r| vec!["root".into(), r.to_string()]));
    table.rows.extend(roots.complex.iter().map(|p| vec!["complex".into(), p.to_string()]));
    table.rows.extend(roots.unresolved.iter().map(|p| vec!["unresolved".into(), p.to_string()]));
    let json = json!({
        "command": "norm",
        "polynomial": c.to_string(),
        "norm": emit::real_poly(&n),
        "real_roots": roots.real.iter().map(emit::scalar).collect::<Vec<_>>(),
        "complex_factors": roots.complex.iter().map(emit::real_poly).collect::<Vec<_>>(),
        "unresolved_factors": roots.unresolved.iter().map(emit::real_poly).collect::<Vec<_>>(),
        "square_free": roots.is_square_free(),
    });
    Ok(Output { table: Some(table), ..Output::new(text, json) })
}

/// Homogeneous samples of the conic over the whole projective parameter
/// line, `t = tan θ`.
fn conic_curve<S: Scalar>(conic: &CouplerConic<S>) -> Vec<[f64; 3]> {
    let g: Vec<[f64; 3]> = (0..3)
        .map(|d| {
            let v = conic.reduced.coeff(d).vector_coords();
            [v[0].to_f64(), v[1].to_f64(), v[2].to_f64()]
        })
        .collect();
    (0..=CONIC_SAMPLES)
        .map(|k| {
            let th = std::f64::consts::PI * k as f64 / CONIC_SAMPLES as f64;
            let (s, c) = th.sin_cos();
            std::array::from_fn(|i| g[2][i] * s * s + g[1][i] * s * c + g[0][i] * c * c)
        })
        .collect()
}

fn linkage<S: Scalar>(c: &QuatPoly<S>) -> Result<Output> {
    let fb = build_linkage(c)?;
    let names: Vec<String> = fb.legs.iter().enumerate().map(|(i, l)| leg_name(l.label, i)).collect();
    let mut text = format!("C = {c}\n{} legs\n", fb.legs.len());
    let mut table = Table {
        header: ["leg", "h1", "h2", "A_x1", "A_x2", "A_x3", "B_x1", "B_x2", "B_x3", "quadrance"]
            .map(String::from)
            .to_vec(),
        rows: Vec::new(),
    };
    let mut legs = Vec::new();
    let mut scene = Scene::new(c.signature(), format!("four-bar linkages of {c}"));
    for (leg, name) in fb.legs.iter().zip(&names) {
        let (a, b) = (&leg.fixed_joint, &leg.moving_joint_initial);
        text.push_str(&format!(
            "leg {name}: {}  A = {a}  B = {b}  q(A,B) = {}\n",
            leg.factorization,
            quadrance_text(a, b)
        ));
        let mut row = vec![name.clone(), leg.factorization.h1.to_string(), leg.factorization.h2.to_string()];
        row.extend(a.coords().iter().chain(b.coords().iter()).map(|x| x.to_string()));
        row.push(quadrance(a, b).map(|q| q.to_string()).unwrap_or_default());
        table.rows.push(row);
        legs.push(json!({
            "leg": name,
            "label": leg.label.map(|l| l.to_string()),
            "h1": emit::quaternion(&leg.factorization.h1),
            "h2": emit::quaternion(&leg.factorization.h2),
            "fixed_joint": emit::point(a),
            "moving_joint": emit::point(b),
            "quadrance": quadrance_json(a, b),
        }));
        scene.point(Mark::Fixed, format!("A{name}"), a);
        scene.point(Mark::Moving, format!("B{name}"), b);
    }
    let mut pairs = Vec::new();
    for (k, &(i, j)) in fb.complementary_pairs().iter().enumerate() {
        let (a, b) = (&fb.legs[i], &fb.legs[j]);
        let conic = coupler_conic(a, b)?;
        let (ni, nj) = (&names[i], &names[j]);
        text.push_str(&format!(
            "pair {ni}/{nj}: q(A{ni},A{nj}) = {}  q(B{ni},B{nj}) = {}\n  conic G(t) = {}\n  null tangents at t = {}\n  focal points: {}\n",
            quadrance_text(&a.fixed_joint, &b.fixed_joint),
            quadrance_text(&a.moving_joint_initial, &b.moving_joint_initial),
            conic.reduced,
            conic.null_tangent_params.iter().map(|t| t.to_string()).collect::<Vec<_>>().join(", "),
            conic.focal_points.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" "),
        ));
        pairs.push(json!({
            "legs": [ni, nj],
            "fixed_quadrance": quadrance_json(&a.fixed_joint, &b.fixed_joint),
            "moving_quadrance": quadrance_json(&a.moving_joint_initial, &b.moving_joint_initial),
            "conic": {
                "parametrization": conic.reduced.coeffs().iter().map(emit::quaternion).collect::<Vec<_>>(),
                "null_tangent_quartic": emit::real_poly(&conic.null_tangent_quartic),
                "null_tangent_params": conic.null_tangent_params.iter().map(emit::scalar).collect::<Vec<_>>(),
                "null_tangents": conic.null_tangent_lines().iter().map(emit::line).collect::<Vec<_>>(),
                "focal_points": conic.focal_points.iter().map(emit::point).collect::<Vec<_>>(),
            },
        }));
        if k == 0 {
            scene.curves.push(("conic", conic_curve(&conic)));
            for (t, l) in conic.null_tangent_params.iter().zip(conic.null_tangent_lines()) {
                scene.line("null-tangent", format!("t={t}"), &l);
            }
            let fixed = fb.fixed_joints();
            for (n, f) in conic.focal_points.iter().enumerate() {
                if !fixed.contains(f) {
                    scene.point(Mark::Focal, format!("F{}", n + 1), f);
                }
            }
        }
    }
    let json = json!({
        "command": "linkage",
        "polynomial": c.to_string(),
        "legs": legs,
        "complementary_pairs": pairs,
    });
    Ok(Output { table: Some(table), scene: Some(scene), ..Output::new(text, json) })
}

fn verify<S: Scalar>(c: &QuatPoly<S>, samples: &[S]) -> Result<Output> {
    let fb: FourBar<S> = build_linkage(c)?;
    let report = verify_linkage_at(&fb, samples)?;
    let passed = report.passed();
    let text = format!(
        "{report}{}\n",
        if passed { "all checks passed" } else { "verification FAILED" }
    );
    let table = Table {
        header: ["id", "name", "status", "evaluated", "max_residual"].map(String::from).to_vec(),
        rows: report
            .checks
            .iter()
            .map(|c| vec![c.id.to_string(), c.name.into(), c.status.as_str().into(), c.evaluated.to_string(), format!("{:e}", c.max_residual)])
            .collect(),
    };
    let json = json!({
        "command": "verify",
        "polynomial": c.to_string(),
        "samples": samples.iter().map(emit::scalar).collect::<Vec<_>>(),
        "passed": passed,
        "checks": report.checks.iter().map(|c| json!({
            "id": c.id,
            "name": c.name,
            "status": c.status.as_str(),
            "evaluated": c.evaluated,
            "max_residual": c.max_residual,
            "failures": c.failures,
            "note": c.note,
        })).collect::<Vec<_>>(),
    });
    Ok(Output { table: Some(table), ok: passed, ..Output::new(text, json) })
}

fn coords_or_blank<S: Scalar>(p: &Option<ProjPoint<S>>) -> Vec<String> {
    match p {
        Some(p) => p.coords().iter().map(|x| x.to_string()).collect(),
        None => vec![String::new(); 3],
    }
}

fn homogeneous<S: Scalar>(p: &Option<ProjPoint<S>>) -> [f64; 3] {
    p.as_ref().map_or([0.0; 3], |p| {
        let c = p.coords();
        [c[0].to_f64(), c[1].to_f64(), c[2].to_f64()]
    })
}

fn simulate<S: Scalar>(c: &QuatPoly<S>, lo: &S, hi: &S, n: usize, tracers: &[ProjPoint<S>]) -> Result<Output> {
    let traj = sample_motion(c, lo, hi, n, tracers)?;
    let mut header = vec!["t".to_string(), "null".to_string()];
    let xyz = |prefix: String| (1..=3).map(move |i| format!("{prefix}_x{i}"));
    for name in &traj.leg_names {
        header.extend(xyz(format!("B{name}")));
    }
    header.extend(xyz("S".into()));
    for k in 1..=tracers.len() {
        header.extend(xyz(format!("P{k}")));
    }
    header.push("degenerate".into());
    let mut table = Table { header, rows: Vec::new() };
    let mut rows = Vec::new();
    for r in &traj.rows {
        let mut row = vec![r.t.to_string(), r.null_position.to_string()];
        for p in r.moving_joints.iter().chain(std::iter::once(&r.coupler)).chain(&r.tracers) {
            row.extend(coords_or_blank(p));
        }
        row.push(r.degenerate().to_string());
        table.rows.push(row);
        let pts = |v: &[Option<ProjPoint<S>>]| v.iter().map(|p| p.as_ref().map_or(Value::Null, emit::point)).collect::<Vec<_>>();
        rows.push(json!({
            "t": emit::scalar(&r.t),
            "null": r.null_position,
            "moving_joints": pts(&r.moving_joints),
            "coupler": r.coupler.as_ref().map_or(Value::Null, emit::point),
            "tracers": pts(&r.tracers),
            "degenerate": r.degenerate(),
        }));
    }
    let mut scene = Scene::new(c.signature(), format!("motion of {c} for t in [{lo}, {hi}]"));
    for (leg, name) in traj.linkage.legs.iter().zip(&traj.leg_names) {
        scene.point(Mark::Fixed, format!("A{name}"), &leg.fixed_joint);
    }
    for i in 0..traj.leg_names.len() {
        scene.curves.push(("path moving", traj.rows.iter().map(|r| homogeneous(&r.moving_joints[i])).collect()));
    }
    scene.curves.push(("path coupler", traj.rows.iter().map(|r| homogeneous(&r.coupler)).collect()));
    for (k, x) in tracers.iter().enumerate() {
        scene.point(Mark::Tracer, format!("P{}", k + 1), x);
        scene.curves.push(("path tracer", traj.rows.iter().map(|r| homogeneous(&r.tracers[k])).collect()));
    }
    let text = String::from_utf8(table.to_csv()).expect("utf-8 table");
    let json = json!({
        "command": "simulate",
        "polynomial": c.to_string(),
        "legs": traj.leg_names,
        "tracers": tracers.iter().map(emit::point).collect::<Vec<_>>(),
        "rows": rows,
    });
    Ok(Output { table: Some(table), scene: Some(scene), ..Output::new(text, json) })
}

fn midpoint_pair<S: Scalar>(a: &ProjPoint<S>, b: &ProjPoint<S>) -> Result<Output> {
    let ms = midpoints(a, b)?;
    let mut text = format!("{} midpoints of {a} and {b}\n", ms.len());
    let mut scene = Scene::new(a.signature(), format!("midpoints of {a} and {b}"));
    scene.point(Mark::Point, "a", a);
    scene.point(Mark::Point, "b", b);
    let mut table = Table {
        header: ["x1", "x2", "x3", "q_a", "q_b"].map(String::from).to_vec(),
        rows: Vec::new(),
    };
    let mut items = Vec::new();
    for (n, m) in ms.iter().enumerate() {
        text.push_str(&format!("{m}  q(a,m) = {}  q(m,b) = {}\n", quadrance_text(a, m), quadrance_text(m, b)));
        let mut row: Vec<String> = m.coords().iter().map(|x| x.to_string()).collect();
        row.push(quadrance(a, m).map(|q| q.to_string()).unwrap_or_default());
        row.push(quadrance(m, b).map(|q| q.to_string()).unwrap_or_default());
        table.rows.push(row);
        items.push(json!({"point": emit::point(m), "quadrance_a": quadrance_json(a, m), "quadrance_b": quadrance_json(m, b)}));
        scene.point(Mark::Point, format!("m{}", n + 1), m);
    }
    let json = json!({
        "command": "midpoints",
        "a": emit::point(a),
        "b": emit::point(b),
        "midpoints": items,
    });
    Ok(Output { table: Some(table), scene: Some(scene), ..Output::new(text, json) })
}

fn quad<S: Scalar>(a12: &ProjPoint<S>, a34: &ProjPoint<S>, b34: &ProjPoint<S>) -> Result<Output> {
    let cands = construct_equal_quadrilateral(a12, a34, b34)?;
    let mut text = format!("{} completions for A12 = {a12}, A34 = {a34}, B34 = {b34}\n", cands.len());
    let mut scene = Scene::new(a12.signature(), "equal-quadrance quadrilateral");
    scene.point(Mark::Fixed, "A12", a12);
    scene.point(Mark::Fixed, "A34", a34);
    scene.point(Mark::Moving, "B34", b34);
    let mut table = Table {
        header: ["x1", "x2", "x3", "q_A12_A34", "q_B12_B34", "q_A12_B12", "q_A34_B34"].map(String::from).to_vec(),
        rows: Vec::new(),
    };
    let mut items = Vec::new();
    for (n, b12) in cands.iter().enumerate() {
        let qs = [(a12, a34), (b12, b34), (a12, b12), (a34, b34)];
        text.push_str(&format!(
            "B12 = {b12}  q(A12,A34) = {}  q(B12,B34) = {}  q(A12,B12) = {}  q(A34,B34) = {}\n",
            quadrance_text(qs[0].0, qs[0].1),
            quadrance_text(qs[1].0, qs[1].1),
            quadrance_text(qs[2].0, qs[2].1),
            quadrance_text(qs[3].0, qs[3].1),
        ));
        let mut row: Vec<String> = b12.coords().iter().map(|x| x.to_string()).collect();
        row.extend(qs.iter().map(|(x, y)| quadrance(x, y).map(|q| q.to_string()).unwrap_or_default()));
        table.rows.push(row);
        items.push(json!({
            "b12": emit::point(b12),
            "quadrances": qs.iter().map(|(x, y)| quadrance_json(x, y)).collect::<Vec<_>>(),
        }));
        scene.point(Mark::Moving, format!("B12 ({})", n + 1), b12);
    }
    let json = json!({
        "command": "quad",
        "a12": emit::point(a12),
        "a34": emit::point(a34),
        "b34": emit::point(b34),
        "completions": items,
    });
    Ok(Output { table: Some(table), scene: Some(scene), ..Output::new(text, json) })
}

/// `C` as quaternions over the float backend.
pub fn to_float(c: &QuatPoly<Exact>) -> QuatPoly<Approx> {
    c.map(Approx::from_exact)
}
