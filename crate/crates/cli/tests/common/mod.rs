#![allow(dead_code)]

use std::path::PathBuf;
use std::process::Command;

use samejulia::*;
use samejulia_cli::load_poly;
use serde::Serialize;
use serde_json::{json, Value};

pub fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

pub fn poly(name: &str) -> Poly {
    load_poly(&fixture(name)).unwrap()
}

/// Runs the binary and returns its exit code and parsed stdout.
pub fn run(args: &[String]) -> (i32, Value) {
    let output = Command::new(env!("CARGO_BIN_EXE_samejulia"))
        .args(args)
        .output()
        .expect("binary runs");
    let stdout = String::from_utf8(output.stdout).expect("utf-8 output");
    let document = serde_json::from_str(&stdout)
        .unwrap_or_else(|e| panic!("stdout is not JSON ({e}): {stdout}"));
    (output.status.code().expect("exit code"), document)
}

fn value<T: Serialize>(x: T) -> Value {
    serde_json::to_value(x).unwrap()
}

pub struct Request {
    pub args: Vec<String>,
    /// The library's answer for the same inputs.
    pub expected: Value,
}

fn request(args: &[&str], expected: Value) -> Request {
    let args = args
        .iter()
        .map(|a| if a.ends_with(".json") { fixture(a) } else { a.to_string() })
        .collect();
    Request { args, expected }
}

/// Twenty requests covering every subcommand.
pub fn corpus() -> Vec<Request> {
    let ctx = NumericContext::default();
    let grid = |f: &Poly, half_width: f64, resolution: usize| RasterGrid::square(f, half_width, resolution);
    let basilica = poly("basilica.json");
    let z2 = poly("z2.json");
    let z3 = poly("z3.json");
    let mask = render_filled(&basilica, &grid(&basilica, 2.0 + basilica.coefficient_scale(), 64)).unwrap();
    let distance = set_distance(
        &render_filled(&z2, &grid(&z2, 3.0, 64)).unwrap(),
        &render_filled(&z3, &grid(&z3, 3.0, 64)).unwrap(),
    )
    .unwrap();
    let (centered, map) = poly("shifted.json").center(&ctx).unwrap();
    vec![
        request(&["center", "shifted.json"], json!({ "centered": centered, "map": map })),
        request(&["symmetry", "quintic.json"], value(symmetry_group(&poly("quintic.json"), &ctx).unwrap())),
        request(&["symmetry", "basilica.json"], value(symmetry_group(&basilica, &ctx).unwrap())),
        request(&["classify", "t5.json"], value(classify(&poly("t5.json"), &ctx).unwrap())),
        request(&["classify", "scaled_quartic.json"], value(classify(&poly("scaled_quartic.json"), &ctx).unwrap())),
        request(&["classify", "basilica.json"], value(classify(&basilica, &ctx).unwrap())),
        request(
            &["same-julia", "quintic_rotated_square.json", "quintic.json"],
            value(same_julia_set(&poly("quintic_rotated_square.json"), &poly("quintic.json"), &ctx).unwrap()),
        ),
        request(
            &["same-julia", "basilica.json", "z2_plus_1.json"],
            value(same_julia_set(&basilica, &poly("z2_plus_1.json"), &ctx).unwrap()),
        ),
        request(
            &["same-julia", "t2.json", "t3.json"],
            value(same_julia_set(&poly("t2.json"), &poly("t3.json"), &ctx).unwrap()),
        ),
        request(
            &["commutes", "t2.json", "t3.json"],
            json!({ "commutes": commutes(&poly("t2.json"), &poly("t3.json"), &ctx) }),
        ),
        request(
            &["commutes", "quintic.json", "quintic_rotated_square.json"],
            json!({ "commutes": commutes(&poly("quintic.json"), &poly("quintic_rotated_square.json"), &ctx) }),
        ),
        request(
            &["decompose", "quintic_rotated_square.json"],
            value(minimal_root(&poly("quintic_rotated_square.json"), &ctx).unwrap()),
        ),
        request(&["minimal", "basilica.json"], json!({ "minimal": is_minimal(&basilica, &ctx).unwrap() })),
        request(
            &["minimal", "basilica_square.json"],
            json!({ "minimal": is_minimal(&poly("basilica_square.json"), &ctx).unwrap() }),
        ),
        request(
            &["representatives", "quintic.json", "--iterate", "2"],
            value(same_julia_representatives(&poly("quintic.json"), 2, &ctx).unwrap()),
        ),
        request(
            &["degrees", "basilica.json", "--max-degree", "20"],
            value(admissible_degrees(&basilica, 20, &ctx).unwrap()),
        ),
        request(
            &["boettcher", "z2_minus_2.json", "--series-order", "12"],
            value(boettcher_series(&poly("z2_minus_2.json"), 12, &ctx).unwrap()),
        ),
        request(
            &["green", "z2.json", "--point", "1.5,0", "--point", "[0,3]"],
            json!([
                green(&z2, Complex::new(1.5, 0.0)).unwrap(),
                green(&z2, Complex::new(0.0, 3.0)).unwrap(),
            ]),
        ),
        request(
            &["render", "basilica.json", "--resolution", "64"],
            json!({
                "width": 64,
                "height": 64,
                "filled_pixels": mask.count(),
                "boundary_pixels": mask.boundary().count(),
                "format": "P4",
                "out": null,
            }),
        ),
        request(
            &["compare-render", "z2.json", "z3.json", "--resolution", "64", "--half-width", "3"],
            json!({ "distance_pixels": distance }),
        ),
    ]
}
