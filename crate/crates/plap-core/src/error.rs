use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("cannot read `{0}`: {1}")]
    Io(String, String),
    #[error("parse error at line {0}: {1}")]
    Parse(usize, String),
    #[error("duplicate edge {0}")]
    DuplicateEdge(String),
    #[error("nonpositive omega on edge {0}")]
    NonpositiveOmega(String),
    #[error("nonpositive measure on node {0}")]
    NonpositiveMeasure(String),
    #[error("graph has no interior node")]
    NoInterior,
    #[error("unknown node id `{0}`")]
    UnknownNode(String),
    #[error("function value given for boundary node `{0}`")]
    BoundaryValue(String),
    #[error("missing function value for interior node `{0}`")]
    MissingValue(String),
}

#[derive(Debug, Error)]
pub enum OpError {
    #[error("function is identically zero")]
    ZeroFunction,
    #[error("operation requires p > 1, got {0}")]
    PNotSmooth(String),
    #[error("operation requires a connected graph")]
    Disconnected,
    #[error("eigen residual {0:.3e} exceeds tolerance {1:.3e}")]
    ResidualTooLarge(f64, f64),
    #[error("weighted eigenproblem is singular: {0}")]
    SingularPencil(String),
    #[error("eigenvalue {0} not found in the weighted linear spectrum")]
    ValueNotInSpectrum(f64),
    #[error("both weight vectors are identically zero")]
    ZeroWeights,
    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("flow did not converge within {0} iterations (best residual {1:.3e})")]
    NoConvergence(usize, f64),
    #[error("{0}")]
    Precondition(String),
}

#[derive(Debug, Error)]
pub enum GeomError {
    #[error("exact search cap exceeded: {0} interior nodes > cap {1}")]
    CapExceeded(usize, usize),
    #[error("{0}")]
    Precondition(String),
}
