use thiserror::Error;

/// Errors raised by the kernel.
///
/// Every variant names the violated precondition; [`Error::kind`] groups them
/// for front ends that map errors onto exit codes.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("DegenerateAmbient: grading rank n must be at least 1 (and at most {max})")]
    DegenerateAmbient { max: usize },

    #[error("DimensionMismatch: expected ambient n={expected}, got n={found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("AlgebraMismatch: operands live in different Grassmann algebras")]
    AlgebraMismatch,

    #[error("ParityViolation: generator {generator} has odd self-pairing but exponent {exponent}")]
    ParityViolation { generator: String, exponent: u32 },

    #[error("DegreeViolation: {0}")]
    DegreeViolation(String),

    #[error("ShapeMismatch: {0}")]
    ShapeMismatch(String),

    #[error("NonHomogeneous: {0}")]
    NonHomogeneous(String),

    #[error("NonInvertible: element has zero body")]
    NonInvertible,

    #[error("NotInvertible: {0}")]
    NotInvertible(String),

    #[error("WrongDegreeComponent: coordinate {slot} must have degree {expected}")]
    WrongDegreeComponent { slot: usize, expected: String },

    #[error("CapTooSmall: morphism cap {morphism} is below algebra cap {algebra}")]
    CapTooSmall { morphism: u32, algebra: u32 },

    #[error("CapMismatch: {0}")]
    CapMismatch(String),

    #[error("InvalidMorphism: {0}")]
    InvalidMorphism(String),

    #[error("NotNatural: {0}")]
    NotNatural(String),

    #[error("NotLinear: {0}")]
    NotLinear(String),

    #[error("SyntaxError at {line}:{column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("{inner} (at {line}:{column})")]
    AtLocation {
        line: usize,
        column: usize,
        inner: Box<Error>,
    },

    #[error("InvariantFailure: {0}")]
    Invariant(String),
}

/// Coarse classification of an [`Error`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    /// Malformed or ill-typed input text.
    Parse,
    /// A mathematical precondition failed (singular matrix, bad degree, ...).
    Domain,
    /// A self-check of the kernel failed.
    Internal,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::Syntax { .. } | Error::AtLocation { .. } | Error::ParityViolation { .. } => {
                ErrorKind::Parse
            }
            Error::Invariant(_) => ErrorKind::Internal,
            _ => ErrorKind::Domain,
        }
    }

    /// Short variant name, e.g. `NotInvertible`.
    pub fn name(&self) -> &'static str {
        match self {
            Error::DegenerateAmbient { .. } => "DegenerateAmbient",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::AlgebraMismatch => "AlgebraMismatch",
            Error::ParityViolation { .. } => "ParityViolation",
            Error::DegreeViolation(_) => "DegreeViolation",
            Error::ShapeMismatch(_) => "ShapeMismatch",
            Error::NonHomogeneous(_) => "NonHomogeneous",
            Error::NonInvertible => "NonInvertible",
            Error::NotInvertible(_) => "NotInvertible",
            Error::WrongDegreeComponent { .. } => "WrongDegreeComponent",
            Error::CapTooSmall { .. } => "CapTooSmall",
            Error::CapMismatch(_) => "CapMismatch",
            Error::InvalidMorphism(_) => "InvalidMorphism",
            Error::NotNatural(_) => "NotNatural",
            Error::NotLinear(_) => "NotLinear",
            Error::Syntax { .. } => "SyntaxError",
            Error::AtLocation { inner, .. } => inner.name(),
            Error::Invariant(_) => "InvariantFailure",
        }
    }

    /// Strips location wrappers added by the parser.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLocation { inner, .. } => inner.root(),
            e => e,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
