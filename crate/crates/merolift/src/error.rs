use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid point: {0}")]
    InvalidPoint(String),
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),
    #[error("argument out of domain: {0}")]
    Domain(String),
    #[error("congruence condition fails: D = {d} is not a square of {beta} mod {modulus}")]
    Congruence { d: i64, beta: i64, modulus: i64 },
    #[error("point lies within the pole guard of a CM point (cosh d - 1 = {0:e})")]
    SingularPoint(f64),
    #[error("no convergence: {0}")]
    NonConvergent(String),
    #[error("contour coefficients disagree between radii (max gap {0:e})")]
    AliasingDetected(f64),
    #[error("B_m argument left Re T > 1 on the contour")]
    DomainViolation,
    #[error("configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error("oracle runs at eps and eps/2 differ by {gap:e}, budget {budget:e}")]
    EpsilonInconsistent { gap: f64, budget: f64 },
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

pub type Result<T> = std::result::Result<T, Error>;
