use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid subshift specification: {0}")]
    InvalidSpec(String),

    #[error("empty subshift: trimming removed every block")]
    EmptySubshift,

    #[error("substitution is not primitive: no power of the incidence matrix is positive")]
    NonPrimitiveSubstitution,

    #[error("length {n} exceeds the explicit language bound {max}")]
    ExplicitLengthExceeded { n: usize, max: usize },

    #[error("invalid explicit language: {0}")]
    InvalidExplicitLanguage(String),

    #[error("alphabet mismatch between codes")]
    AlphabetMismatch,

    #[error("block code rule is undefined on window {window:?}")]
    InadmissibleWindow { window: Vec<u8> },

    #[error("projection length {m} exceeds core length {n}")]
    ProjectionTooLong { m: usize, n: usize },

    #[error("pads ({left},{right}) do not cover the code memory ({need_left},{need_right})")]
    InsufficientPads {
        left: usize,
        right: usize,
        need_left: usize,
        need_right: usize,
    },

    #[error("measures have different word lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("code acts as the identity on admissible words")]
    IdentityCode,

    #[error("the identity automorphism is missing from the tested set")]
    MissingIdentity,

    #[error("operation is not supported for this shift class: {0}")]
    UnsupportedSpec(String),

    #[error("parse error: {0}")]
    Parse(String),
}
