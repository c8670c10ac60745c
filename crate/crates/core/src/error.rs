use num_bigint::BigUint;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime modulus in the supported range 2..=65535")]
    NotPrime(u64),
    #[error("entry {value} is not a residue modulo {p}")]
    BadEntry { value: u64, p: u32 },
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("modulus mismatch: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("matrix is singular")]
    Singular,

    #[error("digit '{digit}' is not a residue modulo {p}")]
    BadDigit { digit: String, p: u32 },
    #[error("expected {expected} digits, found {found}")]
    BadLength { expected: usize, found: usize },
    #[error("rows are defined over different fields")]
    MixedSpecs,
    #[error("rows have different lengths")]
    RaggedRows,
    #[error("matrix width {cols} is not a multiple of the extension degree {e}")]
    BadWidth { cols: usize, e: usize },

    #[error("matrix is not invertible, so it does not define a duality")]
    NotInvertible,
    #[error("operands are defined over different fields")]
    SpecMismatch,
    #[error("vector lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("unknown duality name '{0}'")]
    UnknownName(String),
    #[error("{what} has size {size}, above the configured bound {bound}")]
    TooLarge { what: &'static str, size: BigUint, bound: u64 },
    #[error("no invertible skew-symmetric matrix has odd order {0}")]
    OddDimension(usize),

    #[error("code length must be positive")]
    EmptyLength,
    #[error("minimum distance of the zero code is undefined")]
    ZeroCode,
    #[error("codes have different shapes")]
    ShapeMismatch,

    #[error("element must be nonzero")]
    ZeroElement,
    #[error("no F_p-independent orthogonal pair exists for this duality")]
    NoSuchPair,
    #[error("template violation: {0}")]
    TemplateViolation(String),
    #[error("duality is not in the skew-symmetric class (some element is not self-orthogonal)")]
    NotClassA,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("no quaternary construction for n={n}, k={k}")]
    UnsupportedK { n: usize, k: usize },

    #[error("search space has {needed} candidates, above the budget {budget}")]
    BudgetExceeded { needed: BigUint, budget: u64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
