use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("variable {0} is not assigned")]
    Unassigned(usize),

    #[error("value {value} is not in the domain of variable {var}")]
    NotInDomain { var: usize, value: i64 },

    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("vertex {0} has already been eliminated")]
    AlreadyEliminated(usize),

    #[error("ordering is not a permutation of 0..{n}: {reason}")]
    InvalidOrdering { n: usize, reason: String },

    #[error("invalid instance: {0}")]
    InvalidInstance(String),

    #[error("integer overflow while {0}")]
    Overflow(&'static str),

    #[error("instance has {cells} assignments, over the oracle bound of {bound}")]
    OracleBound { cells: u128, bound: u128 },

    #[error("eliminating variable {vertex} needs {cells} cells, over the budget of {budget}")]
    WidthExceeded { vertex: usize, cells: u128, budget: u64 },

    #[error("invalid generator parameters: {0}")]
    Generator(String),

    #[error("unknown ordering heuristic `{0}`")]
    UnknownHeuristic(String),

    #[error("benchmark: {0}")]
    Bench(String),

    #[error("{0}")]
    Unsupported(String),
}
