use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid cycle: {0}")]
    InvalidCycle(String),

    #[error("permutation {0} is not a single cycle")]
    NotACycle(String),

    #[error("invalid anchor {point}: {reason}")]
    InvalidAnchor { point: usize, reason: &'static str },

    #[error("cycles {lower} and {upper} cannot be augmented with respect to the given conjugator")]
    NotAugmentable { lower: String, upper: String },

    #[error("bad index pair ({i}, {j}) for a tuple of length {len}")]
    BadIndex { i: usize, j: usize, len: usize },

    #[error("sum of orders minus number of branch points is odd ({0})")]
    ParityError(i64),

    #[error("ramification order {order} outside 2..={degree}")]
    InvalidOrder { order: usize, degree: usize },

    #[error("out of scope: {0}")]
    OutOfScope(String),

    #[error("construction not applicable: {0}")]
    NotApplicable(String),

    #[error("orders {orders:?} are not admissible in degree {degree}")]
    NotAdmissible { degree: usize, orders: Vec<usize> },

    #[error("Riemann-Hurwitz genus is negative ({0})")]
    NegativeGenus(i64),

    #[error("a single branch point never carries a connected cover of degree >= 2")]
    Vacuous,

    #[error("construction produced an invalid tuple: {0}")]
    ConstructionBug(String),

    #[error("search too large: {0}")]
    TooLarge(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("partition {parts} sums to {sum}, expected {degree}")]
    SumError {
        parts: String,
        sum: usize,
        degree: usize,
    },
}
