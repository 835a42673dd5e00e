use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Edge-list parse failures. Each malformed input maps to its own variant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("empty input: missing \"p q\" header")]
    MissingHeader,
    #[error("line {line}: malformed header {text:?}, expected \"p q\"")]
    MalformedHeader { line: usize, text: String },
    #[error("line {line}: malformed edge {text:?}, expected \"i j\"")]
    MalformedEdge { line: usize, text: String },
    #[error("line {line}: vertex {vertex} out of range for p = {p}")]
    VertexOutOfRange {
        line: usize,
        vertex: usize,
        p: usize,
    },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge ({u}, {v})")]
    DuplicateEdge { line: usize, u: usize, v: usize },
    #[error("header declares {declared} edges but {found} were listed")]
    EdgeCountMismatch { declared: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("graph with {requested} vertices exceeds the cap of {cap}")]
    SizeCap { requested: usize, cap: usize },
    #[error("matrix dimension {n} outside supported range 1..={cap}")]
    Dimension { n: usize, cap: usize },
    #[error("eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NotConverged { sweeps: usize, off_norm: f64 },
    #[error("root refinement did not converge after {iterations} iterations")]
    RootNotConverged { iterations: usize },
    #[error("alpha {0} outside [0, 1]")]
    AlphaOutOfRange(f64),
    #[error("energy is undefined at alpha = 1")]
    AlphaOneEnergy,
    #[error("malformed alpha {0:?}")]
    MalformedAlpha(String),
    #[error("exact computation needs a rational alpha")]
    AlphaNotRational,
    #[error("closed form needs a regular base graph")]
    NotRegular,
    #[error("closed form needs a connected base graph")]
    Disconnected,
    #[error("closed form precondition failed: {0}")]
    ClosedForm(String),
    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("unknown operation {0:?}")]
    UnknownOperation(String),
    #[error("io error on {path}: {message}")]
    Io { path: String, message: String },
}
