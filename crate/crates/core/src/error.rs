use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor {conductor} does not divide {target}")]
    ConductorMismatch { conductor: u64, target: u64 },

    #[error("conductor {needed} exceeds the conductor cap {cap}")]
    ConductorCap { needed: u64, cap: u64 },

    #[error("quadratic fields differ: sqrt({0}) vs sqrt({1})")]
    QuadFieldMismatch(u64, u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("weight component {index} is not strictly positive")]
    NonPositiveWeight { index: usize },

    #[error("weight vector is not injective: exponents {a} and {b} have equal weight")]
    WeightNotInjective { a: String, b: String },

    #[error("series have different weight vectors")]
    OmegaMismatch,

    #[error("{0} of the zero series is undefined")]
    ZeroSeries(&'static str),

    #[error("not a unit: {0}")]
    NotAUnit(String),

    #[error("exponent denominators do not divide k = {k}")]
    LatticeMismatch { k: u64 },

    #[error("comparison bound {bound} exceeds a truncation bound {trunc}")]
    BoundAboveTrunc { bound: String, trunc: String },

    #[error("insufficient precision: {0}")]
    Precision(String),

    #[error("root requires extension beyond supported cyclotomic tower: {0}")]
    Tower(String),

    #[error("expansion depth exceeded the cap {0}")]
    DepthCap(usize),

    #[error("exponent denominator {needed} exceeds the cap {cap}")]
    DenominatorCap { needed: u64, cap: u64 },

    #[error("orbit size {needed} exceeds the cap {cap}")]
    OrbitCap { needed: u64, cap: u64 },

    #[error("unsupported subring: {0}")]
    Subring(String),

    #[error("polynomial is not monic: {0}")]
    NotMonic(String),

    #[error("value undetermined at this truncation")]
    Undetermined,

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("invalid input: {0}")]
    Invalid(String),
}

impl Error {
    /// Stable machine-readable code.
    pub fn code(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::ConductorMismatch { .. } => "conductor_mismatch",
            Error::ConductorCap { .. } => "conductor_cap",
            Error::QuadFieldMismatch(..) => "quad_field_mismatch",
            Error::Dimension { .. } => "dimension",
            Error::NonPositiveWeight { .. } => "non_positive_weight",
            Error::WeightNotInjective { .. } => "weight_not_injective",
            Error::OmegaMismatch => "omega_mismatch",
            Error::ZeroSeries(_) => "zero_series",
            Error::NotAUnit(_) => "not_a_unit",
            Error::LatticeMismatch { .. } => "lattice_mismatch",
            Error::BoundAboveTrunc { .. } => "bound_above_trunc",
            Error::Precision(_) => "precision",
            Error::Tower(_) => "tower",
            Error::DepthCap(_) => "depth_cap",
            Error::DenominatorCap { .. } => "denominator_cap",
            Error::OrbitCap { .. } => "orbit_cap",
            Error::Subring(_) => "subring",
            Error::NotMonic(_) => "not_monic",
            Error::Undetermined => "undetermined",
            Error::Parse { .. } => "parse",
            Error::Invalid(_) => "invalid",
        }
    }

    /// Whether the error stems from malformed input rather than a failed computation.
    pub fn is_usage(&self) -> bool {
        matches!(
            self,
            Error::Parse { .. }
                | Error::Invalid(_)
                | Error::Dimension { .. }
                | Error::NonPositiveWeight { .. }
                | Error::NotMonic(_)
                | Error::QuadFieldMismatch(..)
        )
    }
}
