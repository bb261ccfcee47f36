use thiserror::Error;

/// Errors shared by all modules of the crate.
#[derive(Debug, Error)]
pub enum Error {
    /// A length or index does not match the object it is paired with.
    #[error("dimension error: {0}")]
    Dimension(String),

    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A named parameter constraint is violated.
    #[error("parameter error: {0}")]
    Parameter(String),

    /// The instance exceeds a configured size cap.
    #[error("resource error: {0}")]
    Resource(String),

    /// A coloring or other certificate failed validation.
    #[error("validation error: {0}")]
    Validation(String),

    /// A proper coloring admits no rainbow transversal; `hall_set` is a
    /// subset of host vertices whose cliques jointly use fewer colors
    /// than the subset size.
    #[error("no rainbow transversal: cliques {hall_set:?} use fewer colors than their count")]
    NoRainbow { hall_set: Vec<usize> },

    /// An exhaustive search ran out of budget before finding anything
    /// feasible; proves the optimum exceeds `budget`.
    #[error("budget exhausted: no feasible {family} profile on {n} vertices with total <= {budget}")]
    BudgetExhausted {
        family: String,
        n: usize,
        budget: u64,
    },

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),

    /// An internal consistency check failed; indicates a bug.
    #[error("internal error: {0}")]
    Internal(String),

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
