use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid shape: {0}")]
    InvalidShape(String),
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("quiver has a directed cycle through vertex {0}")]
    CyclicQuiver(usize),
    #[error("invalid quiver: {0}")]
    InvalidQuiver(String),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("morphism does not commute at arrow {0}")]
    NotAMorphism(String),
    #[error("chain is not composable at position {0}")]
    InvalidChain(usize),
    #[error("generator is not exceptional: dim Ext^1(X, X) = {ext_dim}")]
    NotExceptional { ext_dim: usize },
    #[error("route disagreement on {0}")]
    RouteDisagreement(String),
    #[error("verification failed: {0}")]
    VerificationFailed(String),
    #[error("sigma characterization disagrees with perpendicular membership: {0}")]
    EquivalenceViolation(String),
    #[error("probe not in declared class: {0}")]
    ProbeNotInClass(String),
    #[error("probe not in ideal: {0}")]
    ProbeNotInIdeal(String),
    #[error("not a complex: the differentials leaving degree {0} compose to a nonzero map")]
    NotAComplex(i32),
    #[error("isomorphism search inconclusive: {0}")]
    IsoInconclusive(String),
    #[error("parse error: {0}")]
    Parse(String),
}
