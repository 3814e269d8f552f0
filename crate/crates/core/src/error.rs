use thiserror::Error;

/// Errors raised by constructors, counting routines, samplers and readers.
#[derive(Debug, Error)]
pub enum Error {
    #[error("uniformity must be at least 2, got {0}")]
    InvalidUniformity(usize),
    #[error("vertex count {n} is smaller than uniformity {r}")]
    TooFewVertices { n: usize, r: usize },
    #[error("edge {edge}: expected {expected} vertices, found {found}")]
    EdgeSize {
        edge: usize,
        expected: usize,
        found: usize,
    },
    #[error("edge {edge}: vertex {vertex} appears more than once")]
    RepeatedVertex { edge: usize, vertex: u32 },
    #[error("edge {edge}: vertex {vertex} is out of range for {n} vertices")]
    VertexOutOfRange { edge: usize, vertex: u32, n: usize },
    #[error("edge {edge} duplicates an earlier edge")]
    DuplicateEdge { edge: usize },
    #[error("vertex counts differ: {left} vs {right}")]
    VertexCountMismatch { left: usize, right: usize },
    #[error("uniformities differ: {left} vs {right}")]
    UniformityMismatch { left: usize, right: usize },
    #[error("intersection size {t} outside [{min}, {max}]")]
    IntersectionOutOfRange { t: usize, min: usize, max: usize },
    #[error("subset size {t} outside [1, {r}]")]
    SubsetSize { t: usize, r: usize },
    #[error("coloring has {found} entries but the hypergraph has {expected} vertices")]
    ColoringLength { expected: usize, found: usize },
    #[error("vertex {index}: color {color} outside [1, {c}]")]
    ColorOutOfRange { index: usize, color: u32, c: u32 },
    #[error("number of colors must be at least 1")]
    NoColors,
    #[error("edge {edge}: weight {weight} outside [1, {bound}]")]
    WeightOutOfRange {
        edge: usize,
        weight: u32,
        bound: u32,
    },
    #[error("{weights} weights supplied for {edges} edges")]
    WeightCount { weights: usize, edges: usize },
    #[error("a multiplex needs at least one layer")]
    EmptyMultiplex,
    #[error("edge tuple is empty")]
    EmptyTuple,
    #[error("edge tuple does not form a connected hypergraph")]
    Disconnected,
    #[error("no ordering can place an intersection in [2, r-1] when r = {0}")]
    UniformityTooSmall(usize),
    #[error("pattern has {found} vertices, policy allows at most {limit}")]
    PatternTooLarge { found: usize, limit: usize },
    #[error("pattern needs at least one edge")]
    EmptyPattern,
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("{what} requires {required} units, bound is {limit}")]
    ResourceBound {
        what: &'static str,
        required: u128,
        limit: u128,
    },
    #[error("{path}: {message}")]
    Format { path: String, message: String },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }

    /// Process exit code used by the command-line runner.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::ResourceBound { .. } => 3,
            Error::Io(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
