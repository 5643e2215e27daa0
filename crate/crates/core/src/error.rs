use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("zero polynomial has no factorization")]
    ZeroPolynomial,
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("Frobenius matrix is singular")]
    SingularFrobenius,
    #[error("q must be at least 2, got {0}")]
    BadQ(i64),
    #[error("factor {factor} is not pure of any integer weight: {reason}")]
    NotPure { factor: String, reason: String },
    #[error("weight {weight} outside [0, {max}]")]
    WeightOutOfRange { weight: i64, max: i64 },
    #[error("lattice generator matrix is rank-deficient")]
    RankDeficient,
    #[error("cell width must be positive")]
    NonPositiveWidth,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("width {alpha} does not divide the lattice; no hypercube model exists")]
    ModelDoesNotExist { alpha: String },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("invalid residue {index} (modulus {modulus})")]
    InvalidResidue { index: i64, modulus: i64 },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("sigma matrix must be integral")]
    NonIntegralSigma,
    #[error("induced bilinear form is not symmetric")]
    AsymmetricForm,
    #[error(
        "no p-power refinement of {alpha} works for p = {p}; denominators carry coprime factors {factors:?} (choose a finer base width)"
    )]
    NoPLevel { alpha: String, p: u64, factors: Vec<String> },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
