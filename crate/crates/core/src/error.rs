use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Failure modes shared by every analysis in the crate.
///
/// The variants split into two families: malformed input (dimension and
/// index errors) and violated analysis preconditions. The CLI maps the
/// second family to its own exit status, see [`Error::is_precondition`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: {detail}")]
    Dimension { context: &'static str, detail: String },

    #[error("{what} index {index} is out of range 1..={bound}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        bound: usize,
    },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("precondition violated: the state pattern is not generically diagonalizable")]
    NotDiagonalizable,

    #[error("precondition violated: grank C = {grank} is smaller than the number of outputs p = {p}")]
    RankDeficientOutput { grank: usize, p: usize },

    #[error("precondition violated: the functional pattern F has no nonzero column")]
    EmptyFunctionalSet,

    #[error("precondition violated: the triple (A, C, F) is not structurally functionally observable")]
    NotSfo,

    #[error("precondition violated: the system has no outputs (p = 0)")]
    NoOutputs,

    #[error("precondition violated: added edge from x{state} leaves the functional state set")]
    EdgeOutsideFunctionalSet { state: usize },

    #[error("exhaustive search refused: n = {n} exceeds the cap {cap}")]
    CapExceeded { n: usize, cap: usize },
}

impl Error {
    /// True for errors that reject a well-formed input because an analysis
    /// assumption does not hold.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotDiagonalizable
                | Error::RankDeficientOutput { .. }
                | Error::EmptyFunctionalSet
                | Error::NotSfo
                | Error::NoOutputs
                | Error::EdgeOutsideFunctionalSet { .. }
                | Error::CapExceeded { .. }
        )
    }

    pub(crate) fn dim(context: &'static str, detail: impl Into<String>) -> Self {
        Error::Dimension {
            context,
            detail: detail.into(),
        }
    }
}
