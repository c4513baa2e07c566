//! Command-line front end. Each subcommand calls one library operation and
//! wraps its result in a JSON envelope
//! `{"command", "inputs", "result", "diagnostics": {"tolerance", "residuals"}}`.
//! Failures produce `{"command", "inputs", "error": {"kind", "message"}}`.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use samejulia::{
    admissible_degrees, boettcher_series, classify, commutes, green, green_heatmap, is_minimal,
    minimal_root, render_filled, same_julia_representatives, same_julia_set, set_distance,
    symmetry_group, Classification, Complex, Error, NumericContext, Poly, RasterGrid,
};
use serde::Serialize;
use serde_json::{json, Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "samejulia", version, about = "Decide whether polynomials share a Julia set")]
pub struct Cli {
    #[command(flatten)]
    pub options: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Relative tolerance of the zero test.
    #[arg(long, global = true, default_value_t = 1e-9)]
    pub tolerance: f64,
    /// Boettcher series order K.
    #[arg(long = "series-order", global = true, default_value_t = 16)]
    pub series_order: usize,
    /// Raster resolution in pixels per side.
    #[arg(long, global = true, default_value_t = 512)]
    pub resolution: usize,
    /// Escape-time iteration budget.
    #[arg(long = "max-iter", global = true, default_value_t = 256)]
    pub max_iter: u32,
    /// Half width of the square window; defaults to 2 + coefficient scale.
    #[arg(long = "half-width", global = true)]
    pub half_width: Option<f64>,
    /// Image output path.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

/// Polynomials are a JSON array of `[re, im]` pairs indexed by power, given
/// inline or as a path to a file holding one.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Conjugate to the centered form.
    Center { poly: String },
    /// Rotational symmetry group of a centered polynomial.
    Symmetry { poly: String },
    /// Circle, interval or general case.
    Classify { poly: String },
    /// Whether two polynomials have the same Julia set.
    SameJulia { f: String, g: String },
    /// Whether f∘g = g∘f.
    Commutes { f: String, g: String },
    /// Decomposition f = ε R^q with the largest q.
    Decompose { poly: String },
    /// Whether f is minimal.
    Minimal { poly: String },
    /// The polynomials σ f^i, σ in the symmetry group.
    Representatives {
        poly: String,
        #[arg(long, default_value_t = 1)]
        iterate: u32,
    },
    /// Degrees up to a bound admitting a polynomial with the same Julia set.
    Degrees {
        poly: String,
        #[arg(long = "max-degree", default_value_t = 64)]
        max_degree: u64,
    },
    /// Boettcher series coefficients.
    Boettcher { poly: String },
    /// Green function at one or more points, each `[re, im]` or `re,im`.
    Green {
        poly: String,
        #[arg(long = "point", required = true, num_args = 1)]
        points: Vec<String>,
    },
    /// Filled Julia set mask (P4), or a Green heat map (P6) with --heatmap.
    Render {
        poly: String,
        #[arg(long)]
        heatmap: bool,
    },
    /// Boundary Hausdorff distance in pixels between two rendered masks.
    CompareRender { f: String, g: String },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Center { .. } => "center",
            Command::Symmetry { .. } => "symmetry",
            Command::Classify { .. } => "classify",
            Command::SameJulia { .. } => "same-julia",
            Command::Commutes { .. } => "commutes",
            Command::Decompose { .. } => "decompose",
            Command::Minimal { .. } => "minimal",
            Command::Representatives { .. } => "representatives",
            Command::Degrees { .. } => "degrees",
            Command::Boettcher { .. } => "boettcher",
            Command::Green { .. } => "green",
            Command::Render { .. } => "render",
            Command::CompareRender { .. } => "compare-render",
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("malformed polynomial {input}: {source}")]
    Parse { input: String, source: serde_json::Error },
    #[error("malformed point {0}; expected [re, im] or re,im")]
    Point(String),
    #[error("{0}")]
    Library(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Library(e) if e.is_numeric() => EXIT_NUMERIC,
            _ => EXIT_INPUT,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Point(_) => "parse",
            CliError::Library(e) => e.kind(),
        }
    }
}

/// Exit code and the JSON document to print.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub document: Value,
}

fn to_value<T: Serialize>(value: &T) -> Value {
    serde_json::to_value(value).expect("library types serialize to JSON")
}

/// Inline JSON when the argument starts with `[`, otherwise a file path.
pub fn load_poly(arg: &str) -> Result<Poly, CliError> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('[') {
        trimmed.to_string()
    } else {
        fs::read_to_string(arg).map_err(|source| CliError::Io {
            path: arg.to_string(),
            source,
        })?
    };
    serde_json::from_str(&text).map_err(|source| CliError::Parse {
        input: arg.to_string(),
        source,
    })
}

pub fn parse_point(arg: &str) -> Result<Complex, CliError> {
    let trimmed = arg.trim();
    let text = if trimmed.starts_with('[') {
        trimmed.to_string()
    } else {
        format!("[{trimmed}]")
    };
    serde_json::from_str(&text).map_err(|_| CliError::Point(arg.to_string()))
}

fn grid_for(f: &Poly, options: &Options, half_width: f64) -> RasterGrid {
    RasterGrid {
        max_iter: options.max_iter,
        ..RasterGrid::square(f, half_width, options.resolution)
    }
}

struct Response {
    inputs: Map<String, Value>,
    result: Value,
    residuals: Map<String, Value>,
}

impl Response {
    fn new() -> Self {
        Self {
            inputs: Map::new(),
            result: Value::Null,
            residuals: Map::new(),
        }
    }

    fn input(&mut self, key: &str, value: Value) {
        self.inputs.insert(key.to_string(), value);
    }

    fn residual(&mut self, key: &str, value: f64) {
        self.residuals.insert(key.to_string(), json!(value));
    }
}

fn poly_input(response: &mut Response, key: &str, arg: &str) -> Result<Poly, CliError> {
    let p = load_poly(arg)?;
    response.input(key, to_value(&p));
    Ok(p)
}

fn execute(command: &Command, options: &Options, ctx: &NumericContext, response: &mut Response) -> Result<(), CliError> {
    match command {
        Command::Center { poly } => {
            let p = poly_input(response, "poly", poly)?;
            let (centered, map) = p.center(ctx)?;
            response.residual("conjugation", p.conjugate(&map).max_coeff_diff(&centered));
            response.result = json!({ "centered": centered, "map": map });
        }
        Command::Symmetry { poly } => {
            let p = poly_input(response, "poly", poly)?;
            response.result = to_value(&symmetry_group(&p, ctx)?);
        }
        Command::Classify { poly } => {
            let p = poly_input(response, "poly", poly)?;
            let classification = classify(&p, ctx)?;
            let residual = match &classification {
                Classification::Circle { conjugacy, sigma, .. } => p
                    .conjugate(conjugacy)
                    .max_coeff_diff(&Poly::monomial(*sigma, p.degree())),
                Classification::Interval { conjugacy, sign } => p
                    .conjugate(conjugacy)
                    .max_coeff_diff(&samejulia::tchebycheff(p.degree())?.scale(Complex::new(*sign, 0.0))),
                Classification::General { centering, decomposition } => {
                    decomposition.reconstruct().max_coeff_diff(&p.conjugate(centering))
                }
            };
            response.residual("conjugacy", residual);
            response.result = to_value(&classification);
        }
        Command::SameJulia { f, g } => {
            let f = poly_input(response, "f", f)?;
            let g = poly_input(response, "g", g)?;
            let verdict = same_julia_set(&f, &g, ctx)?;
            if let Some(sigma) = verdict.witness_sigma {
                let (fc, _) = f.center(ctx)?;
                let (gc, _) = g.center(ctx)?;
                response.residual("witness", gc.compose(&fc).max_coeff_diff(&fc.compose(&gc).scale(sigma)));
            }
            response.result = to_value(&verdict);
        }
        Command::Commutes { f, g } => {
            let f = poly_input(response, "f", f)?;
            let g = poly_input(response, "g", g)?;
            response.residual("commutator", f.compose(&g).max_coeff_diff(&g.compose(&f)));
            response.result = json!({ "commutes": commutes(&f, &g, ctx) });
        }
        Command::Decompose { poly } => {
            let p = poly_input(response, "poly", poly)?;
            let d = minimal_root(&p, ctx)?;
            response.residual("reconstruction", d.reconstruct().max_coeff_diff(&p));
            response.result = to_value(&d);
        }
        Command::Minimal { poly } => {
            let p = poly_input(response, "poly", poly)?;
            response.result = json!({ "minimal": is_minimal(&p, ctx)? });
        }
        Command::Representatives { poly, iterate } => {
            let p = poly_input(response, "poly", poly)?;
            response.input("iterate", json!(iterate));
            response.result = to_value(&same_julia_representatives(&p, *iterate, ctx)?);
        }
        Command::Degrees { poly, max_degree } => {
            let p = poly_input(response, "poly", poly)?;
            response.input("max_degree", json!(max_degree));
            response.result = to_value(&admissible_degrees(&p, *max_degree, ctx)?);
        }
        Command::Boettcher { poly } => {
            let p = poly_input(response, "poly", poly)?;
            response.input("series_order", json!(options.series_order));
            let series = boettcher_series(&p, options.series_order, ctx)?;
            response.residual("functional_equation", series.residual);
            response.result = to_value(&series);
        }
        Command::Green { poly, points } => {
            let p = poly_input(response, "poly", poly)?;
            let points = points.iter().map(|s| parse_point(s)).collect::<Result<Vec<_>, _>>()?;
            response.input("points", to_value(&points));
            let values = points
                .iter()
                .map(|&z| green(&p, z).map(|g| to_value(&g)))
                .collect::<Result<Vec<_>, _>>()?;
            response.result = Value::Array(values);
        }
        Command::Render { poly, heatmap } => {
            let p = poly_input(response, "poly", poly)?;
            let half_width = options.half_width.unwrap_or(2.0 + p.coefficient_scale());
            let grid = grid_for(&p, options, half_width);
            response.input("grid", to_value(&grid));
            let mask = render_filled(&p, &grid)?;
            if let Some(path) = &options.out {
                let bytes = if *heatmap { green_heatmap(&p, &grid)? } else { mask.to_pbm() };
                write_image(path, &bytes)?;
            }
            response.result = json!({
                "width": mask.width,
                "height": mask.height,
                "filled_pixels": mask.count(),
                "boundary_pixels": mask.boundary().count(),
                "format": if *heatmap { "P6" } else { "P4" },
                "out": options.out.as_ref().map(|p| p.display().to_string()),
            });
        }
        Command::CompareRender { f, g } => {
            let f = poly_input(response, "f", f)?;
            let g = poly_input(response, "g", g)?;
            let half_width = options
                .half_width
                .unwrap_or(2.0 + f.coefficient_scale().max(g.coefficient_scale()));
            let (grid_f, grid_g) = (grid_for(&f, options, half_width), grid_for(&g, options, half_width));
            response.input("grid", json!({
                "center": grid_f.center,
                "half_width": half_width,
                "resolution": grid_f.resolution,
                "max_iter": grid_f.max_iter,
            }));
            let distance = set_distance(&render_filled(&f, &grid_f)?, &render_filled(&g, &grid_g)?)?;
            response.result = json!({ "distance_pixels": distance });
        }
    }
    Ok(())
}

fn write_image(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn run(cli: &Cli) -> Outcome {
    let command = cli.command.name();
    let mut response = Response::new();
    let ctx = NumericContext::default().with_eps_rel(cli.options.tolerance);
    let outcome = ctx
        .map_err(CliError::from)
        .and_then(|ctx| execute(&cli.command, &cli.options, &ctx, &mut response).map(|_| ctx));
    match outcome {
        Ok(ctx) => Outcome {
            code: EXIT_OK,
            document: json!({
                "command": command,
                "inputs": response.inputs,
                "result": response.result,
                "diagnostics": {
                    "tolerance": { "eps_rel": ctx.eps_rel, "eps_abs": ctx.eps_abs },
                    "residuals": response.residuals,
                },
            }),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            document: json!({
                "command": command,
                "inputs": response.inputs,
                "error": { "kind": e.kind(), "message": e.to_string() },
            }),
        },
    }
}
