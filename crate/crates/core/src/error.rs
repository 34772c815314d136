use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("generator `{0}` is not nilpotent modulo the ideal")]
    NotWeil(String),
    #[error("relation monomial {0} is constant")]
    ConstantRelation(String),
    #[error("exponent vector of length {found}, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
    #[error("element {0} is not nilpotent")]
    NotNilpotent(String),
    #[error("relation {relation} is violated: it maps to {image}")]
    RelationViolated { relation: String, image: String },
    #[error("image of generator `{0}` has a nonzero constant term")]
    NonzeroConstantTerm(String),
    #[error("{0}")]
    NotIncluded(String),
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("microcube of dimension {dimension} cannot be summed into D_{order}")]
    DimensionTooLarge { dimension: usize, order: usize },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("not a permutation: {0:?}")]
    BadPermutation(Vec<usize>),
    #[error("scalar {0} is not nilpotent of the required order")]
    ScalarNotNilpotent(String),
    #[error("simple polynomial has dimension {found}, expected {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("restrictions differ at {0}")]
    RestrictionMismatch(String),
    #[error("base points differ: {0} vs {1}")]
    BaseMismatch(String, String),
    #[error("point mismatch: {0}")]
    PointMismatch(String),
    #[error("point {0} is not on the graph of the section")]
    NotOnGraph(String),
    #[error("bad order: {0}")]
    BadOrder(String),
    #[error("order mismatch: {0} vs {1}")]
    OrderMismatch(usize, usize),
    #[error("projections differ: {0}")]
    ProjectionMismatch(String),
    #[error("characterization failed: {0}")]
    CharacterizationFailed(String),
    #[error("free symbols present: {0}")]
    SymbolicScalars(String),
    #[error("{0}")]
    InvalidSuite(String),
    #[error("invalid morphism: {0}")]
    InvalidMorphism(String),
}

pub type Result<T> = std::result::Result<T, Error>;
