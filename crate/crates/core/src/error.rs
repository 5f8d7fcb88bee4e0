use thiserror::Error;

/// Coarse classification used by callers that map failures to exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input violates a documented precondition.
    Validation,
    /// The computation broke down on an input that passed validation.
    Numerical,
    /// The request itself is malformed or unsupported.
    Usage,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty input: at least one value is required")]
    EmptyInput,
    #[error("leading eigenvalue must be positive, got {value}")]
    NonPositiveLead { value: String },
    #[error("signs do not alternate at position {index}: expected sign {expected:+} for {value}")]
    NotAlternating {
        index: usize,
        expected: i8,
        value: String,
    },
    #[error("moduli not strictly decreasing at positions {index},{next}: |{left}| <= |{right}|")]
    NotStrictlyDecreasingModulus {
        index: usize,
        next: usize,
        left: String,
        right: String,
    },
    #[error("values not strictly decreasing at positions {index},{next}")]
    NotDecreasing { index: usize, next: usize },
    #[error("value at position {index} must be positive, got {value}")]
    NonPositive { index: usize, value: String },
    #[error("coefficient a_{index} must be positive, got {value}")]
    NonPositiveEntry { index: usize, value: String },
    #[error("roots at positions {first} and {second} are not separated")]
    DuplicateRoots { first: usize, second: usize },
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("invalid index set: {reason}")]
    InvalidIndexSet { reason: String },
    #[error("size mismatch: {0}")]
    SizeMismatch(String),
    #[error("bracket ({lo}, {hi}) does not straddle a sign change")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("operation `{operation}` requires the float64 backend")]
    BackendUnsupported { operation: &'static str },
    #[error("structural entry ({row},{col}) is zero")]
    StructuralZero { row: usize, col: usize },
    #[error("entry ({row},{col}) lies outside the anti-bidiagonal pattern")]
    PatternViolation { row: usize, col: usize },
    #[error("matrix is not symmetric tridiagonal: entry ({row},{col})")]
    NotTridiagonal { row: usize, col: usize },
    #[error("minor enumeration too large: {count} minors exceeds the limit {limit}")]
    TooLarge { count: u128, limit: u128 },
    #[error("at least {required} values required, got {got}")]
    TooSmall { required: usize, got: usize },
    #[error("reconstructed a_{index}^2 = {value} is not positive")]
    NonPositiveA { index: usize, value: String },
    #[error("terminal consistency check failed: {0}")]
    TerminalMismatch(String),
    #[error("interlacing fails between degrees {outer} and {inner}: {detail}")]
    InterlaceViolation {
        outer: usize,
        inner: usize,
        detail: String,
    },
    #[error("invalid tolerance policy: {0}")]
    InvalidTolerance(String),
    #[error("cannot parse `{0}` as a number")]
    Parse(String),
}

impl Error {
    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            EmptyInput
            | NonPositiveLead { .. }
            | NotAlternating { .. }
            | NotStrictlyDecreasingModulus { .. }
            | NotDecreasing { .. }
            | NonPositive { .. }
            | NonPositiveEntry { .. }
            | DuplicateRoots { .. }
            | StructuralZero { .. }
            | PatternViolation { .. }
            | NotTridiagonal { .. }
            | TooSmall { .. }
            | Parse(_) => ErrorClass::Validation,
            NoSignChange { .. }
            | NonPositiveA { .. }
            | TerminalMismatch(_)
            | InterlaceViolation { .. } => ErrorClass::Numerical,
            IndexOutOfRange { .. }
            | InvalidIndexSet { .. }
            | SizeMismatch(_)
            | BackendUnsupported { .. }
            | TooLarge { .. }
            | InvalidTolerance(_) => ErrorClass::Usage,
        }
    }

    /// Stable variant name, used in machine-readable diagnostics.
    pub fn name(&self) -> &'static str {
        use Error::*;
        match self {
            EmptyInput => "EmptyInput",
            NonPositiveLead { .. } => "NonPositiveLead",
            NotAlternating { .. } => "NotAlternating",
            NotStrictlyDecreasingModulus { .. } => "NotStrictlyDecreasingModulus",
            NotDecreasing { .. } => "NotDecreasing",
            NonPositive { .. } => "NonPositive",
            NonPositiveEntry { .. } => "NonPositiveEntry",
            DuplicateRoots { .. } => "DuplicateRoots",
            IndexOutOfRange { .. } => "IndexOutOfRange",
            InvalidIndexSet { .. } => "InvalidIndexSet",
            SizeMismatch(_) => "SizeMismatch",
            NoSignChange { .. } => "NoSignChange",
            BackendUnsupported { .. } => "BackendUnsupported",
            StructuralZero { .. } => "StructuralZero",
            PatternViolation { .. } => "PatternViolation",
            NotTridiagonal { .. } => "NotTridiagonal",
            TooLarge { .. } => "TooLarge",
            TooSmall { .. } => "TooSmall",
            NonPositiveA { .. } => "NonPositiveA",
            TerminalMismatch(_) => "TerminalMismatch",
            InterlaceViolation { .. } => "InterlaceViolation",
            InvalidTolerance(_) => "InvalidTolerance",
            Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
