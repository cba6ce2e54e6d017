use thiserror::Error;

/// Errors raised by constructions that cannot proceed on their input.
///
/// Validation problems that are expected to be reported rather than raised
/// (broken category laws, failed axioms) live in the respective report types.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown {kind} id `{id}`")]
    UnknownId { kind: &'static str, id: String },

    #[error("duplicate {kind} id `{id}`")]
    DuplicateId { kind: &'static str, id: String },

    #[error("conflicting composite for ({first}, {second}): `{existing}` vs `{new}`")]
    ConflictingComposite {
        first: String,
        second: String,
        existing: String,
        new: String,
    },

    #[error("`{first}` (target {first_tgt}) and `{second}` (source {second_src}) are not composable")]
    NotComposable {
        first: String,
        second: String,
        first_tgt: String,
        second_src: String,
    },

    #[error("composition table has no entry for ({first}, {second})")]
    MissingComposite { first: String, second: String },

    #[error("congruence relates non-parallel arrows {a} and {b}")]
    NotParallel { a: usize, b: usize },

    #[error("`{0}` is not a denominator")]
    NotADenominator(String),

    #[error("not a uni-fractionable category: {0}")]
    NotUniFractionable(String),

    #[error("invalid category: {0}")]
    InvalidCategory(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("malformed instance file: {0}")]
    Parse(#[from] serde_json::Error),

    #[error("malformed 3-arrow `{0}`: expected `b,f,a`")]
    MalformedArrow(String),

    #[error("unknown instance name `{0}`")]
    UnknownInstance(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
