use thiserror::Error;

/// Reasons a defining graph is rejected at load time.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no vertices")]
    Empty,
    #[error("duplicate vertex name `{0}`")]
    DuplicateVertex(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(String, String),
    #[error("graph contains the triangle {0}-{1}-{2}")]
    Triangle(String, String, String),
    #[error("graph contains the square {0}-{1}-{2}-{3}")]
    Square(String, String, String, String),
    #[error("vertex `{0}` is an isolated point")]
    IsolatedVertex(String),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph has {0} vertices, at least 3 are required")]
    TooFewVertices(usize),
    #[error("malformed graph file: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("words belong to different defining graphs")]
    MixedGraphs,
    #[error("resource cap exceeded: {what} (cap {cap})")]
    ResourceCap { what: &'static str, cap: usize },
    #[error("element `{element}` lies outside the domain {domain}")]
    Domain { element: String, domain: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("chart invariant violated: {0}")]
    ChartInvariant(String),
    #[error("not a simplex of the blowup ball")]
    NotASimplex,
    #[error("no rho between orthogonal domains")]
    Orthogonal,
    #[error("vertex outside the computed ball: {0}")]
    OutsideBall(String),
}

pub type Result<T> = std::result::Result<T, Error>;
