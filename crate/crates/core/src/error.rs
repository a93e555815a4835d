use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("polynomial of degree {degree} exceeds rank {rank}")]
    DegreeExceedsRank { degree: usize, rank: usize },

    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,

    #[error("malformed matroid description: {0}")]
    MalformedSpec(String),

    #[error("bases do not define a matroid: {0}")]
    NotAMatroid(String),

    #[error("ground set of size {size} exceeds the configured limit {limit}")]
    GroundSetTooLarge { size: usize, limit: usize },

    #[error("flats {0} and {1} are not comparable")]
    NotComparable(usize, usize),

    #[error("incidence functions live on different lattices")]
    LatticeMismatch,

    #[error("diagonal entry at flat {0} is not a unit")]
    NotInvertible(usize),

    #[error("function is not a kernel of its lattice")]
    NotAKernel,

    #[error("interval equation on [{0}, {1}] has no solution within the degree bound")]
    InconsistentKernel(usize, usize),

    #[error("closed form produced a non-integral coefficient at t^{0}")]
    NonIntegralCoefficient(usize),

    #[error("{quantity} disagrees between methods: {detail}")]
    MethodDisagreement { quantity: String, detail: String },

    #[error("{0} requires a matroid of positive rank")]
    RankZero(&'static str),

    #[error("family limit too large: {0}")]
    LimitTooLarge(String),

    #[error("closed form requires {0}")]
    ClosedFormDomain(&'static str),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
