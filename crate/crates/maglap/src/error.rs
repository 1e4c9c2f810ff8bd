use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("loop edge ({0}, {0}) is not allowed")]
    LoopEdge(usize),

    #[error("duplicate directed edge ({0}, {1})")]
    DuplicateEdge(usize, usize),

    #[error("vertex id {id} out of range for n = {n}")]
    VertexOutOfRange { id: usize, n: usize },

    #[error("graph is disconnected; apply the operation per connected component")]
    Disconnected,

    #[error("graph contains an anti-parallel edge pair ({0}, {1}); a simple orientation is required here")]
    NotSimpleOrientation(usize, usize),

    #[error("edge ({0}, {1}) is not contained in the host graph")]
    NotSubgraph(usize, usize),

    #[error("graph is not an orientation of the complete graph on {0} vertices")]
    NotCompleteOrientation(usize),

    #[error("target degree {d} is infeasible: {reason}")]
    InfeasibleDegree { d: usize, reason: String },

    #[error("no {d}-regular supergraph found after {tried} search steps")]
    NoRegularSupergraph { d: usize, tried: usize },

    #[error("host graph is not regular: vertex {vertex} has degree {got}, expected {expected}")]
    HostNotRegular {
        vertex: usize,
        got: usize,
        expected: usize,
    },

    #[error("{required} edges exceed the enumeration budget of {budget}; raise it with --budget or MAGLAP_BUDGET")]
    BudgetExceeded { required: usize, budget: usize },

    #[error("evaluation count {required} exceeds the scan budget of {budget}")]
    ScanBudgetExceeded { required: u128, budget: u128 },

    #[error("retries exhausted while generating a connected random graph")]
    RetriesExhausted,

    #[error("matrix shape mismatch: expected {expected}, got {got}")]
    ShapeMismatch { expected: String, got: String },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFiniteEntry { row: usize, col: usize },

    #[error("matrix is not Hermitian: max deviation {deviation:.3e} exceeds tolerance {tolerance:.3e}")]
    NotHermitian { deviation: f64, tolerance: f64 },

    #[error("eigensolver did not converge within {sweeps} sweeps; off-diagonal residual {residual:.3e}")]
    EighNoConvergence { sweeps: usize, residual: f64 },

    #[error("vectors are not orthonormal: max Gram deviation {deviation:.3e}")]
    NotOrthonormal { deviation: f64 },

    #[error("phase function is not unimodular at vertex {vertex}: |value| = {magnitude}")]
    NotUnimodular { vertex: usize, magnitude: f64 },

    #[error("theta has {got} angles but the graph has {expected} edges")]
    ThetaKeyMismatch { expected: usize, got: usize },

    #[error("theta antisymmetry violated on anti-parallel pair ({u}, {v}): {forward} vs {backward}")]
    AntisymmetryViolated {
        u: usize,
        v: usize,
        forward: f64,
        backward: f64,
    },

    #[error("angle {0} is outside [-pi, pi]")]
    AngleOutOfRange(f64),

    #[error("walk is not closed: starts at {start}, ends at {end}")]
    OpenWalk { start: usize, end: usize },

    #[error("walk step ({from}, {to}) is not an edge of the underlying undirected graph")]
    NonAdjacentStep { from: usize, to: usize },

    #[error("vector has length {got}, expected {expected}")]
    VectorLength { expected: usize, got: usize },

    #[error("internal consistency failure: spectral route gives lambda_min = {lambda_min:.3e} but max basis flux is {max_flux:.3e}")]
    RouteDisagreement { lambda_min: f64, max_flux: f64 },

    #[error("constructed gauge fails to conjugate edge {edge}: deviation {deviation:.3e}")]
    GaugeVerificationFailed { edge: usize, deviation: f64 },

    #[error("inequality violated: lhs = {lhs:.12e} > rhs = {rhs:.12e} (tolerance {tolerance:.3e}); this indicates a bug")]
    InequalityViolated { lhs: f64, rhs: f64, tolerance: f64 },

    #[error("null vector does not round to a valid coloring: residual {residual:.3e}")]
    WitnessExtraction { residual: f64 },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("index {index} out of range ({limit})")]
    IndexOutOfRange { index: usize, limit: usize },

    #[error("invalid parameter {name}: {message}")]
    InvalidParameter {
        name: &'static str,
        message: String,
    },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
