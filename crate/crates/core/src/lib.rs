//! Polynomials sharing a Julia set: symmetry groups, Böttcher coordinates,
//! compositional roots, classification and escape-time rendering.

pub mod boettcher;
pub mod classify;
pub mod decompose;
pub mod error;
pub mod laurent;
pub mod poly;
pub mod powers;
pub mod render;
pub mod symmetry;

pub use boettcher::{
    boettcher_series, escape_time, green, green_agreement, green_with, BoettcherSeries,
    EscapeParams, GreenEstimate, OrbitStatus,
};
pub use classify::{
    admissible_degrees, classify, commutes, forced_sigma, same_julia_representatives,
    same_julia_set, tchebycheff, Classification, SameJuliaReason, SameJuliaVerdict,
};
pub use decompose::{compositional_root, is_minimal, minimal_root, CompositionalRoot, DecompositionResult};
pub use error::{Error, Hypothesis, Result};
pub use laurent::LaurentTail;
pub use poly::{nth_roots, poly_equal, AffineMap, Complex, NumericContext, Poly};
pub use powers::{perfect_power_pairs, primitive_base};
pub use render::{green_heatmap, render_filled, render_mask, set_distance, BinaryImage, RasterGrid};
pub use symmetry::{hat_transform, is_symmetry, root_of_unity, symmetry_group, HatData, SymmetryGroup};
