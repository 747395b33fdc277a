use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RootError {
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("invalid root e{i}-e{j} for n = {n}")]
    InvalidRoot { n: usize, i: usize, j: usize },
    #[error("vector {0:?} is not weakly decreasing")]
    NotDominant(Vec<i64>),
    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WeylError {
    #[error("rank must be at least 2, got {0}")]
    RankTooSmall(usize),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("not a permutation of 1..{n}: {perm:?}")]
    BadPermutation { n: usize, perm: Vec<usize> },
    #[error("translation {0:?} does not sum to zero")]
    BadTranslation(Vec<i64>),
    #[error("simple reflection index {i} out of range for n = {n}")]
    BadSimpleIndex { n: usize, i: usize },
    #[error("{0} is not a minimal coset representative")]
    NotMinimal(String),
    #[error("cannot parse element '{0}'")]
    Parse(String),
    #[error("longest element of the fundamental box is not unique for n = {0}")]
    LongestNotUnique(usize),
    #[error("length-additive factorization fails for {0}")]
    FactorizationFails(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("variable A_{0}_{1} missing from assignment")]
    MissingVariable(usize, usize),
    #[error("requested t-window up to {requested} but only {available} is determined")]
    PrecisionUnderflow { requested: i64, available: i64 },
    #[error("exponent {0} outside window [{1}, {2}]")]
    OutOfWindow(i64, i64, i64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("matrix is not square ({0}x{1})")]
    NotSquare(usize, usize),
    #[error("polynomial division is not exact")]
    InexactDivision,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpringerError {
    #[error("spectral parameters are not pairwise distinct")]
    NotRegular,
    #[error("expected {expected} spectral parameters, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("{0} is not a minimal coset representative")]
    NotMinimal(String),
    #[error("conjugation check failed at entry ({j},{i}): {detail}")]
    Conjugation { j: usize, i: usize, detail: String },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("{0} is not in the fundamental box")]
    NotInBox(String),
    #[error("{0} is not a minimal coset representative")]
    NotMinimal(String),
    #[error("vertex index {i} out of range for n = {n}")]
    BadVertex { n: usize, i: usize },
    #[error("y is not below x at vertex {0}")]
    NotComparable(usize),
    #[error("greedy chain from column {col} cannot reach row {row}")]
    Infeasible { row: usize, col: usize },
    #[error(transparent)]
    Springer(#[from] SpringerError),
    #[error(transparent)]
    Weyl(#[from] WeylError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("verdict changed when the window was enlarged past {0}")]
    Unstable(usize),
    #[error("window {have} too small, need at least {needed}")]
    Precision { needed: i64, have: i64 },
    #[error("{0} is not in the fundamental box")]
    NotInBox(String),
    #[error(transparent)]
    Springer(#[from] SpringerError),
}
