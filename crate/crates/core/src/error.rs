use thiserror::Error;

use crate::algebra::Field;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("mixed-field arithmetic: {left} vs {right}")]
    FieldMismatch { left: Field, right: Field },

    #[error("division by zero")]
    DivisionByZero,

    #[error("{0} is not a supported prime modulus")]
    InvalidModulus(u64),

    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,

    #[error("polygon is not two-dimensional (dimension {0})")]
    NotTwoDimensional(i8),

    #[error("not a face of the Newton polygon: {0}")]
    NotAFace(String),

    #[error("hyperelliptic input: interior hull is one-dimensional (genus {genus})")]
    Hyperelliptic { genus: usize },

    #[error("genus {genus} is below 3: interior hull has dimension {dimension}")]
    GenusTooSmall { genus: usize, dimension: i8 },

    #[error("degenerate polynomial: {0}")]
    Degenerate(String),

    #[error("non-degeneracy is inconclusive: {0}")]
    Inconclusive(String),

    #[error("no decomposition of {target} into {count} lattice points of the interior hull")]
    DecompositionFailed { target: String, count: usize },

    #[error("cubic search failed for polygon {0}")]
    CubicSearchFailed(String),

    #[error("degree {0} is outside the supported range")]
    DegreeOutOfRange(usize),

    #[error("modulus {modulus} divides a coefficient denominator or kills a vertex coefficient")]
    BadReduction { modulus: u64 },

    #[error("point is not on the curve torus part: {0}")]
    NotOnCurve(String),

    #[error("invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    /// Parse error without positional context; callers that know the
    /// location use [`Error::at_line`].
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }

    /// Re-anchor a parse error at the given input line.
    pub fn at_line(self, line: usize) -> Self {
        match self {
            Error::Parse {
                column, message, ..
            } => Error::Parse {
                line,
                column,
                message,
            },
            other => other,
        }
    }

    /// True for refusals that stem from the input rather than from a bug.
    pub fn is_refusal(&self) -> bool {
        !matches!(
            self,
            Error::Invariant(_) | Error::DecompositionFailed { .. } | Error::CubicSearchFailed(_)
        )
    }

    /// Short machine-readable reason code.
    pub fn reason_code(&self) -> &'static str {
        match self {
            Error::Parse { .. } => "parse_error",
            Error::FieldMismatch { .. } => "field_mismatch",
            Error::DivisionByZero => "division_by_zero",
            Error::InvalidModulus(_) => "invalid_modulus",
            Error::ZeroPolynomial => "zero_polynomial",
            Error::NotTwoDimensional(_) => "not_two_dimensional",
            Error::NotAFace(_) => "not_a_face",
            Error::Hyperelliptic { .. } => "hyperelliptic",
            Error::GenusTooSmall { .. } => "genus_below_3",
            Error::Degenerate(_) => "degenerate",
            Error::Inconclusive(_) => "inconclusive",
            Error::DecompositionFailed { .. } => "decomposition_failed",
            Error::CubicSearchFailed(_) => "cubic_search_failed",
            Error::DegreeOutOfRange(_) => "degree_out_of_range",
            Error::BadReduction { .. } => "bad_reduction",
            Error::NotOnCurve(_) => "not_on_curve",
            Error::Invariant(_) => "invariant_violation",
        }
    }
}
