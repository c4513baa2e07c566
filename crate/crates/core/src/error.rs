use thiserror::Error;

/// Why a query was refused: the input does not satisfy the
/// hypotheses under which the answer is meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
pub enum Hypothesis {
    #[error("the Julia set is a circle")]
    CircleCase,
    #[error("the Julia set is an interval")]
    IntervalCase,
    #[error("the polynomial is not minimal")]
    NotMinimal,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite coefficient at power {0}")]
    NonFinite(usize),
    #[error("degenerate affine map: |A| = {0:e}")]
    DegenerateAffine(f64),
    #[error("degree {found} is below the required minimum {required}")]
    DegreeTooLow { required: usize, found: usize },
    #[error("polynomial is not centered: |c_(d-1)| = {0:e}")]
    NotCentered(f64),
    #[error("zero iterate requested")]
    ZeroIterate,
    #[error("rotation must have unit modulus, got |sigma| = {0}")]
    NotUnitModulus(f64),
    #[error("symmetry group is the full circle; a finite group is required")]
    FullCircleSymmetry,
    #[error("monomial input; the circle case is handled by classification")]
    Monomial,
    #[error("root exponent must be at least {required}, got {found}")]
    InvalidExponent { required: u32, found: u32 },
    #[error("series order {requested} outside 1..={max}")]
    SeriesOrder { requested: usize, max: usize },
    #[error("ill-conditioned series solve at order {order}: multiplier {multiplier:e}")]
    IllConditioned { order: usize, multiplier: f64 },
    #[error("functional-equation residual {residual:e} exceeds tolerance {tolerance:e}")]
    ResidualTooLarge { residual: f64, tolerance: f64 },
    #[error("image dimensions differ: {0:?} vs {1:?}")]
    DimensionMismatch((usize, usize), (usize, usize)),
    #[error("invalid raster grid: {0}")]
    InvalidGrid(String),
    #[error("invalid numeric context: {0}")]
    InvalidContext(String),
    #[error("hypothesis not satisfied: {0}")]
    Hypothesis(Hypothesis),
}

impl Error {
    /// Stable snake_case name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NonFinite(_) => "non_finite",
            Error::DegenerateAffine(_) => "degenerate_affine",
            Error::DegreeTooLow { .. } => "degree_too_low",
            Error::NotCentered(_) => "not_centered",
            Error::ZeroIterate => "zero_iterate",
            Error::NotUnitModulus(_) => "not_unit_modulus",
            Error::FullCircleSymmetry => "full_circle_symmetry",
            Error::Monomial => "monomial",
            Error::InvalidExponent { .. } => "invalid_exponent",
            Error::SeriesOrder { .. } => "series_order",
            Error::IllConditioned { .. } => "ill_conditioned",
            Error::ResidualTooLarge { .. } => "residual_too_large",
            Error::DimensionMismatch(..) => "dimension_mismatch",
            Error::InvalidGrid(_) => "invalid_grid",
            Error::InvalidContext(_) => "invalid_context",
            Error::Hypothesis(_) => "hypothesis",
        }
    }

    /// Numeric failures are tolerance or conditioning breaches, as opposed
    /// to inputs that violate a precondition.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::IllConditioned { .. } | Error::ResidualTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
