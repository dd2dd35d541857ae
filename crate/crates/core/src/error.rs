use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("unknown edge {0} -- {1}")]
    UnknownEdge(String, String),

    #[error("invalid vertex name `{0}`")]
    InvalidName(String),

    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),

    #[error("vertex `{vertex}` lists `{neighbor}` more than once")]
    DuplicateNeighbor { vertex: String, neighbor: String },

    #[error("vertex `{0}` appears in its own preference list")]
    SelfPreference(String),

    #[error("asymmetric adjacency: `{0}` lists `{1}` but `{1}` does not list `{0}`")]
    Asymmetric(String, String),

    #[error("swap ({a},{b};{v}) is not admissible")]
    NotAdmissible { a: String, b: String, v: String },

    #[error("no admissible order consumes all swaps; {} left over", .remaining.len())]
    StuckSwaps { remaining: Vec<(String, String, String)> },

    #[error("preferences must be strict")]
    NotStrict,

    #[error("instance is not consistent with the master list")]
    NotConsistent,

    #[error("deleting the modulator does not yield an instance admitting a master list")]
    ModulatorInvalid,

    #[error("instance too large: {0}")]
    TooLarge(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
