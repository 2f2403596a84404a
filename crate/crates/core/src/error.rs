use thiserror::Error;

/// Errors raised by the algebraic operations of this crate.
///
/// Weight-bearing variants report the lowest weight at which the problem was
/// detected so that callers can tell truncation artefacts from real failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series live over different alphabets")]
    AlphabetMismatch,
    #[error("constant term must vanish")]
    NonzeroConstantTerm,
    #[error("constant term must be 1")]
    ConstantTermNotOne,
    #[error("constant term must be invertible")]
    NonInvertible,
    #[error("weight {weight} is outside 0..={cutoff}")]
    WeightOutOfRange { weight: usize, cutoff: usize },
    #[error("series is not primitive")]
    NotPrimitive,
    #[error("series is not group-like")]
    NotGroupLike,
    #[error("linear equation has no solution (first inconsistent weight {weight})")]
    NoSolution { weight: usize },
    #[error("hypothesis fails: trace with power {power} is nonzero in weight {weight}")]
    HypothesisFails { power: usize, weight: usize },
    #[error("traces of exponentials differ in weight {weight}")]
    TracesDiffer { weight: usize },
    #[error("degree-by-degree solve failed in weight {weight}")]
    SolveFailure { weight: usize },
    #[error("elements are not conjugate: traces differ in weight {weight}")]
    NotConjugate { weight: usize },
    #[error("no tangential correction exists in weight {weight}")]
    NoSolutionAtWeight { weight: usize },
    #[error("derivation is not tangential at boundary {index} (weight {weight})")]
    NotTangential { index: usize, weight: usize },
    #[error("contraction pattern has arity {expected} but a word has length {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
