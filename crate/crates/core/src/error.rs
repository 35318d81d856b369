use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("generator `{0}` is not weighted-homogeneous")]
    NonHomogeneous(String),

    #[error("variable `{0}` has weight 0; graded pieces are infinite-dimensional")]
    ZeroWeight(String),

    #[error("singularity at the origin is not isolated (ideal J_{index} has infinite local colength)")]
    NonIsolated { index: usize },

    #[error("wrong codimension: {0}")]
    WrongCodimension(String),

    #[error("wrong structure: {0}")]
    WrongStructure(String),

    #[error("bracket matrix is not skew-symmetric: {0}")]
    NotSkew(String),

    #[error("vector field #{index} is not tangent to the variety")]
    NotTangent { index: usize },

    #[error("minor size {size} out of range for a {rows}x{cols} matrix")]
    MinorSize { size: usize, rows: usize, cols: usize },

    #[error("polynomial has a negative coefficient {0}")]
    NegativeCoefficient(String),

    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    #[error("series is not a polynomial (infinite-dimensional quotient)")]
    InfiniteSeries,

    #[error("coefficient overflow in series arithmetic")]
    Overflow,
}

impl Error {
    /// True for failures caused by the mathematics of a well-formed input
    /// (non-isolated, non-homogeneous, ...), as opposed to malformed input.
    pub fn is_domain(&self) -> bool {
        !matches!(
            self,
            Error::Syntax { .. }
                | Error::UnknownVariable(_)
                | Error::InvalidRing(_)
                | Error::RingMismatch
                | Error::NotSkew(_)
                | Error::MinorSize { .. }
        )
    }
}
