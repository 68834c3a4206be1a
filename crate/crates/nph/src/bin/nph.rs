//! Command-line driver: verify index-sum identities, tabulate local indices,
//! evaluate circle-map degrees, build branched resolutions, and generate the
//! shipped example families.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use nph::complex::SurfaceComplex;
use nph::cover::{resolve, verify_resolution};
use nph::field::NField;
use nph::gen;
use nph::index::{verify_circle, verify_theorem, Mode};
use nph::io::{self, Mesh};
use nph::svg::emit_svg;

#[derive(Parser)]
#[command(name = "nph", version, about = "Exact index sums for n-valued fields on surfaces and circles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Integer,
    Mod2,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Integer => Mode::Integer,
            ModeArg::Mod2 => Mode::Mod2,
        }
    }
}

#[derive(clap::Args)]
struct FieldInputs {
    /// Mesh JSON (surface or circle).
    #[arg(long)]
    mesh: PathBuf,
    /// Bundle cocycle JSON (line cocycle JSON for circle meshes).
    #[arg(long)]
    bundle: PathBuf,
    /// Field JSON.
    #[arg(long)]
    field: PathBuf,
    /// Which index-sum identity to check.
    #[arg(long, value_enum, default_value = "integer")]
    mode: ModeArg,
    /// Report output path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Optional SVG picture of the field and its indices.
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check the index-sum identity and write the verification report.
    Verify(FieldInputs),
    /// Compute the per-vertex local index table.
    Index(FieldInputs),
    /// Evaluate the degree of a structured circle map.
    Degree {
        /// Degree input JSON: explicit components or a lens family.
        #[arg(long)]
        field: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the resolving branched cover and replay the identity upstairs.
    Resolve(FieldInputs),
    /// Generate a shipped example as a mesh/bundle/field JSON triple.
    Gen {
        /// Generator name: sphere-line-field | quotient-n | scaled-sections |
        /// lens-circle | random-nfield | tangent-like.
        name: String,
        /// Generator parameters as key=value (base=, n=, d=, target=, vertex=).
        params: Vec<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output directory for the generated files.
        #[arg(long)]
        out: PathBuf,
        /// Optional SVG picture of the generated field.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

/// A failure with its process exit code: 1 for input/usage problems, 2 when a
/// mathematical check fails.
struct Failure {
    code: u8,
    error: &'static str,
    detail: String,
}

impl Failure {
    fn input(error: &'static str, detail: impl ToString) -> Failure {
        Failure { code: 1, error, detail: detail.to_string() }
    }

    fn math(error: &'static str, detail: impl ToString) -> Failure {
        Failure { code: 2, error, detail: detail.to_string() }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input("io", format!("{}: {}", path.display(), e)))
}

fn write_out(out: &Option<PathBuf>, body: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, body)
            .map_err(|e| Failure::input("io", format!("{}: {}", path.display(), e))),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

enum LoadedField {
    Surface(NField),
    Circle(nph::field::CircleNField),
}

fn load_field(inputs: &FieldInputs) -> Result<LoadedField, Failure> {
    let mesh = io::parse_mesh(&read(&inputs.mesh)?)
        .map_err(|e| Failure::input("schema", e))?;
    match mesh {
        Mesh::Surface(base) => {
            let bundle = io::parse_bundle(&read(&inputs.bundle)?, &base)
                .map_err(|e| Failure::input("schema", e))?;
            let field = io::parse_field(&read(&inputs.field)?, bundle)
                .map_err(|e| Failure::input("schema", e))?;
            Ok(LoadedField::Surface(field))
        }
        Mesh::Circle(c) => {
            let line = io::parse_line(&read(&inputs.bundle)?, c)
                .map_err(|e| Failure::input("schema", e))?;
            let field = io::parse_circle_field(&read(&inputs.field)?, line)
                .map_err(|e| Failure::input("schema", e))?;
            Ok(LoadedField::Circle(field))
        }
    }
}

fn maybe_svg(
    svg: &Option<PathBuf>,
    field: &NField,
    verdict: &nph::index::VerificationVerdict,
) -> Result<(), Failure> {
    if let Some(path) = svg {
        let doc = emit_svg(field, verdict).map_err(|e| Failure::input("svg", e))?;
        fs::write(path, doc)
            .map_err(|e| Failure::input("io", format!("{}: {}", path.display(), e)))?;
    }
    Ok(())
}

/// `verify` demands a passing identity (exit 2 otherwise); `index` only
/// tabulates and always exits 0 when the computation succeeds.
fn cmd_verify(inputs: &FieldInputs, demand_pass: bool) -> Result<(), Failure> {
    let mode = Mode::from(inputs.mode);
    let verdict = match load_field(inputs)? {
        LoadedField::Surface(field) => {
            let verdict =
                verify_theorem(&field, mode).map_err(|e| Failure::math("index", e))?;
            maybe_svg(&inputs.svg, &field, &verdict)?;
            verdict
        }
        LoadedField::Circle(field) => {
            if inputs.svg.is_some() {
                return Err(Failure::input("usage", "--svg applies to surface meshes only"));
            }
            verify_circle(&field, mode).map_err(|e| Failure::math("index", e))?
        }
    };
    write_out(&inputs.out, &io::verdict_to_json(&verdict))?;
    if demand_pass && !verdict.pass {
        return Err(Failure::math(
            "theorem",
            format!("index sum {} differs from expected {}", verdict.lhs, verdict.rhs),
        ));
    }
    Ok(())
}

fn cmd_degree(path: &PathBuf, out: &Option<PathBuf>) -> Result<(), Failure> {
    let map = io::parse_degree_input(&read(path)?)
        .map_err(|e| Failure::input("schema", e))?;
    let report = io::degree_report(&map).map_err(|e| Failure::math("degree", e))?;
    write_out(out, &report)
}

fn cmd_resolve(inputs: &FieldInputs) -> Result<(), Failure> {
    let field = match load_field(inputs)? {
        LoadedField::Surface(field) => field,
        LoadedField::Circle(_) => {
            return Err(Failure::input("usage", "resolve expects a surface mesh"));
        }
    };
    let resolution = resolve(&field);
    let report = verify_resolution(&field, &resolution);
    write_out(&inputs.out, &io::resolution_to_json(&resolution))?;
    if let Some(path) = &inputs.svg {
        let mode =
            if field.bundle().has_reflections() { Mode::Mod2 } else { Mode::Integer };
        let verdict = verify_theorem(&field, mode).map_err(|e| Failure::math("index", e))?;
        maybe_svg(&Some(path.clone()), &field, &verdict)?;
    }
    if !report.pass {
        return Err(Failure::math("resolution", report.witnesses.join("; ")));
    }
    Ok(())
}

fn param<'a>(params: &'a [String], key: &str) -> Option<&'a str> {
    params.iter().rev().find_map(|p| p.strip_prefix(key)?.strip_prefix('='))
}

fn parsed<T: std::str::FromStr>(
    params: &[String],
    key: &str,
    default: T,
) -> Result<T, Failure> {
    match param(params, key) {
        None => Ok(default),
        Some(raw) => raw
            .parse()
            .map_err(|_| Failure::input("params", format!("invalid value for {key}: {raw}"))),
    }
}

fn gen_base(params: &[String], default: &str) -> Result<Arc<SurfaceComplex>, Failure> {
    let name = param(params, "base").unwrap_or(default);
    gen::base_by_name(name).map_err(|e| Failure::input("params", e))
}

fn cmd_gen(
    name: &str,
    params: &[String],
    seed: u64,
    out: &PathBuf,
    svg: &Option<PathBuf>,
) -> Result<(), Failure> {
    for p in params {
        let known = ["base", "n", "d", "target", "vertex"];
        if !known.iter().any(|k| param(std::slice::from_ref(p), k).is_some()) {
            return Err(Failure::input("params", format!("unrecognized parameter: {p}")));
        }
    }
    fs::create_dir_all(out)
        .map_err(|e| Failure::input("io", format!("{}: {}", out.display(), e)))?;

    if name == "lens-circle" {
        let n: usize = parsed(params, "n", 2)?;
        let d: i64 = parsed(params, "d", 1)?;
        if n == 0 {
            return Err(Failure::input("params", "n must be positive"));
        }
        let map = gen::lens_circle(n, d);
        fs::write(out.join("degree.json"), io::degree_input_to_json(&map))
            .map_err(|e| Failure::input("io", e))?;
        return Ok(());
    }

    let field = match name {
        "sphere-line-field" => gen::sphere_line_field(),
        "tangent-like" => gen::tangent_like_field(&gen_base(params, "octahedron")?),
        "quotient-n" => {
            let base = gen_base(params, "octahedron")?;
            let n: usize = parsed(params, "n", 2)?;
            gen::quotient_field(&base, n).map_err(|e| Failure::input("params", e))?
        }
        "scaled-sections" => {
            let base = gen_base(params, "torus")?;
            let n: usize = parsed(params, "n", 3)?;
            let target: i64 = parsed(params, "target", 0)?;
            let vertex: usize = parsed(params, "vertex", 0)?;
            gen::scaled_sections_field(&base, n, target, vertex)
                .map_err(|e| Failure::input("params", e))?
        }
        "random-nfield" => {
            let base = gen_base(params, "octahedron")?;
            let n: usize = parsed(params, "n", 2)?;
            if n == 0 {
                return Err(Failure::input("params", "n must be positive"));
            }
            gen::random_nfield(&base, n, seed)
        }
        _ => {
            return Err(Failure::input(
                "unknown-generator",
                format!("no generator named {name}"),
            ))
        }
    };

    fs::write(out.join("mesh.json"), io::surface_to_json(field.bundle().base()))
        .map_err(|e| Failure::input("io", e))?;
    fs::write(out.join("bundle.json"), io::bundle_to_json(field.bundle()))
        .map_err(|e| Failure::input("io", e))?;
    fs::write(out.join("field.json"), io::field_to_json(&field))
        .map_err(|e| Failure::input("io", e))?;

    if svg.is_some() {
        let mode =
            if field.bundle().has_reflections() { Mode::Mod2 } else { Mode::Integer };
        let verdict = verify_theorem(&field, mode).map_err(|e| Failure::math("index", e))?;
        maybe_svg(svg, &field, &verdict)?;
    }
    Ok(())
}

fn validate_threads() -> Result<(), Failure> {
    // NPH_THREADS caps parallelism; 0 means auto. The driver currently runs
    // single-threaded, so the value is validated but otherwise unused.
    if let Ok(raw) = std::env::var("NPH_THREADS") {
        raw.parse::<u32>()
            .map_err(|_| Failure::input("usage", format!("invalid NPH_THREADS: {raw}")))?;
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), Failure> {
    validate_threads()?;
    match &cli.command {
        Command::Verify(inputs) => cmd_verify(inputs, true),
        Command::Index(inputs) => cmd_verify(inputs, false),
        Command::Degree { field, out } => cmd_degree(field, out),
        Command::Resolve(inputs) => cmd_resolve(inputs),
        Command::Gen { name, params, seed, out, svg } => cmd_gen(name, params, *seed, out, svg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", json!({ "error": f.error, "detail": f.detail }));
            ExitCode::from(f.code)
        }
    }
}
