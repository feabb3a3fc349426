use thiserror::Error;

use crate::map::VertexId;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("map has no vertices")]
    EmptyMap,
    #[error("inconsistent adjacency: {0}")]
    InconsistentAdjacency(String),
    #[error("vertex {0} has degree {1}; terminal vertices are not allowed")]
    TerminalVertex(VertexId, usize),
    #[error("edge {0}-{1} lies on a single face")]
    EdgeOnOneFace(VertexId, VertexId),
    #[error("rotation system is not planar: V - E + F = {0}, expected 2")]
    NonPlanar(i64),
    #[error("graph is disconnected: vertex {0} is unreachable")]
    DisconnectedGraph(VertexId),
    #[error("invalid truncation: {0}")]
    Validation(String),

    #[error("vertex {0} is not interior")]
    CenterOnBoundary(VertexId),
    #[error("vertex {0} is not interior")]
    BoundaryVertex(VertexId),
    #[error("subset contains non-interior vertex {0}")]
    SubsetTouchesBoundary(VertexId),
    #[error("induced subgraph of the subset is disconnected")]
    SubsetDisconnected,
    #[error("subset is empty")]
    EmptySubset,
    #[error("enumeration exceeded the budget of {0} subsets")]
    CapTooLargeForBudget(u64),
    #[error("truncation has no interior vertices")]
    NoInteriorVertices,

    #[error("1/{p} + 1/{q} > 1/2: parameters describe a spherical tessellation")]
    SphericalParameters { p: u32, q: u32 },
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
    #[error("vertex budget of {budget} exceeded (needs at least {needed})")]
    BudgetExceeded { budget: usize, needed: usize },
    #[error("tessellation growth failed: {0}")]
    Construction(String),

    #[error("face bound q = {q} is smaller than a face of degree {found}")]
    QSmallerThanFaceDegree { q: String, found: String },
    #[error("({p},{q}) is not hyperbolic")]
    NotHyperbolic { p: u32, q: u32 },
    #[error("polygon completion reaches the truncation boundary at vertex {0}")]
    CompletionLeavesInterior(VertexId),
    #[error("truncation has no outer region to complete against")]
    NoOuterRegion,

    #[error("no trusted radii: sphere sizes cannot be certified")]
    NoTrustedRadii,
    #[error("face degree {0} is not one of 3, 4, 6")]
    UnsupportedQ(u32),
    #[error("tau = {0} < 1")]
    InvalidTau(f64),
    #[error("curvature constant a = {0} must be positive")]
    NonpositiveA(String),
    #[error("degree bound violated: {0}")]
    DegreeBoundViolated(String),
    #[error("missing input: {0}")]
    MissingInput(String),

    #[error("index set contains non-interior vertex {0}")]
    IndexSetTouchesBoundary(VertexId),
    #[error("eigensolver did not converge (residual {residual:e} after {iterations} iterations)")]
    NoConvergence { residual: f64, iterations: usize },
    #[error("closed neighbourhood of the region contains non-interior vertex {0}")]
    RegionTouchesBoundary(VertexId),
    #[error("certificate support touches non-interior vertex {0}")]
    SupportTouchesBoundary(VertexId),

    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl From<serde_json::Error> for Error {
    fn from(err: serde_json::Error) -> Self {
        Error::Parse(err.to_string())
    }
}

impl Error {
    /// Input problems (malformed or invalid files) as opposed to failed checks.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::EmptyMap
                | Error::InconsistentAdjacency(_)
                | Error::TerminalVertex(..)
                | Error::EdgeOnOneFace(..)
                | Error::NonPlanar(_)
                | Error::DisconnectedGraph(_)
                | Error::Validation(_)
                | Error::Parse(_)
                | Error::Io(_)
        )
    }
}
