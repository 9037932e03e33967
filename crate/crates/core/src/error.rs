use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("invalid language: {0}")]
    InvalidLanguage(String),

    #[error("invalid world `{0}`")]
    InvalidWorld(String),

    #[error("invalid total preorder: {0}")]
    InvalidTpo(String),

    /// Revision by an inconsistent input. `culprit` holds the indices of a
    /// minimal inconsistent subset of the input set.
    #[error("inconsistent revision input (minimal inconsistent subset: {culprit:?})")]
    InconsistentInput { culprit: Vec<usize> },

    #[error("unknown operator `{0}`")]
    UnknownOperator(String),

    #[error("unknown strategy `{0}`")]
    UnknownStrategy(String),

    #[error("unknown postulate `{0}`")]
    UnknownPostulate(String),

    #[error("size guard: {0}")]
    SizeGuard(String),

    #[error("unsatisfiable conditional set")]
    Unsatisfiable,

    #[error("incompatible configuration: {0}")]
    IncompatibleConfig(String),

    #[error("scenario error: {0}")]
    Scenario(String),

    /// A scenario step failed; `index` is 1-based.
    #[error("step {index}: {source}")]
    Step { index: usize, source: Box<Error> },
}
