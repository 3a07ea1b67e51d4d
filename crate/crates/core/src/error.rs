use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("strand count {0} out of range (3..={max})", max = crate::MAX_STRANDS)]
    StrandCount(usize),

    #[error("image is not a permutation of 1..={0}")]
    NotAPermutation(usize),

    #[error("generator index {index} out of range for {n} strands")]
    GeneratorIndex { index: usize, n: usize },

    #[error("bad half-twist bounds ({i}, {j}) for {n} strands")]
    HalfTwistBounds { i: usize, j: usize, n: usize },

    #[error("strand counts differ: {0} vs {1}")]
    StrandMismatch(usize, usize),

    #[error("round curve [{lo},{hi}] is degenerate for {n} strands")]
    DegenerateCurve { lo: usize, hi: usize, n: usize },

    #[error("operation needs positive canonical length")]
    EmptyNormalForm,

    #[error("braid is not rigid")]
    NotRigid,

    #[error("factor sequence violates the normal form: {0}")]
    InvalidNormalForm(String),

    #[error("normal form construction check failed: {0}")]
    Convention(String),

    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("pattern is not a path of the left-weighting graph")]
    NotAPath,

    #[error("lifted graph would have {requested} vertices, cap is {cap}")]
    LiftCap { requested: u128, cap: usize },

    #[error("search space guard: {0}")]
    SizeGuard(String),

    #[error("{0}")]
    Invalid(String),
}
