use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime below 2^31")]
    InvalidModulus(u64),
    #[error("inversion of zero")]
    InversionOfZero,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("duplicate evaluation point {0}")]
    DuplicatePoint(u64),
    #[error("zero evaluation point")]
    ZeroPoint,
    #[error("duplicate exponent {0}")]
    DuplicateExponent(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("parameter out of range: {0}")]
    ParamOutOfRange(String),
    #[error("no solution for y in x*Tbar + y*K* = 0 mod {q}")]
    NoSolution { q: u64 },
    #[error("side condition violated: {0}")]
    SideConditionViolated(String),
    #[error("generator is not symplectic self-orthogonal")]
    NotSso,
    #[error("stacked matrix [G H] is singular")]
    SingularStack,
    #[error("field F_{p} has {available} nonzero elements, {needed} points needed")]
    FieldTooSmall {
        p: u64,
        needed: usize,
        available: u64,
    },
    #[error("no valid evaluation frame after {0} attempts")]
    ResampleExhausted(usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("generator matrix on the support is singular")]
    SingularGenerator,
    #[error("plan is not feasible for the quantum extension (run {run} < {needed})")]
    NotFeasible { run: usize, needed: usize },
    #[error("plan record parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
