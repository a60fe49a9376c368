use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid group table: {0}")]
    TableInvalid(String),
    #[error("malformed group spec: {0}")]
    SpecMalformed(String),
    #[error("group order {order} exceeds the configured cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),
    #[error("not a 2-cocycle: {0}")]
    NotACocycle(String),
    #[error("cocycles live on different domains")]
    DomainMismatch,
    #[error("cyclotomic fields differ (Q(zeta_{0}) vs Q(zeta_{1}))")]
    FieldMismatch(u64, u64),
    #[error("division by zero")]
    DivisionByZero,
    #[error("no exact {0}-th root of the cocycle exists at this modulus")]
    NoExactRoot(u64),
    #[error("elements belong to different algebras: {0}")]
    AlgebraMismatch(String),
    #[error("element is not homogeneous")]
    NotHomogeneous,
    #[error("element is zero")]
    ZeroElement,
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("tuple length {got} does not match k = {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("algebras are graded by different ambient groups")]
    AmbientMismatch,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("chain is not central: {0}")]
    ChainNotCentral(String),
    #[error("cocycle extension failed: {0}")]
    ExtensionFailed(String),
    #[error("witness construction failed: {0}")]
    WitnessConstructionFailed(String),
    #[error("degree {got} exceeds the configured cap {cap}")]
    DegreeCapExceeded { got: usize, cap: usize },
    #[error("substitution degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation error: {0}")]
    Validation(String),
}
