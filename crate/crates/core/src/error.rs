use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("zero element has no valuation")]
    ZeroElement,
    #[error("independence undecided: {0}")]
    Undecided(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("Kummer generator needs a primitive p-th root of unity in the base field")]
    MissingRootOfUnity,
    #[error("wrong characteristic for this generator kind")]
    WrongCharacteristic,
    #[error("elements belong to different towers")]
    TowerMismatch,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("not a field: {0}")]
    NotAField(String),
    #[error("no image given for generator {0}")]
    MissingImage(String),
    #[error("automorphism does not preserve the relation of generator {0}")]
    RelationNotPreserved(String),
    #[error("order exceeds cap {0}")]
    OverCap(u64),
    #[error("group exceeds cap {0}")]
    CapExceeded(usize),
    #[error("map is not well defined: {0}")]
    NotWellDefined(String),
    #[error("map is not bijective: {0}")]
    NotBijective(String),
    #[error("bad matrix index ({0}, {1})")]
    BadIndex(usize, usize),
    #[error("automorphism order does not match")]
    OrderMismatch,
    #[error("norm mismatch: {0}")]
    NormMismatch(String),
    #[error("norm is not one")]
    NormNotOne,
    #[error("resolvent basis exhausted")]
    ResolventExhausted,
    #[error("identity violated: {0}")]
    IdentityViolated(String),
    #[error("identity failed: {0}")]
    IdentityFailed(String),
    #[error("not in the base field: {0}")]
    NotInBaseField(String),
    #[error("compatibility condition failed")]
    CompatibilityFailed,
    #[error("relation failed: {0}")]
    RelationFailed(String),
    #[error("dimension deficient: {0}")]
    DimensionDeficient(String),
    #[error("search exhausted")]
    SearchExhausted,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("primitive p-th root of unity already in the base field")]
    XiAlreadyPresent,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("Albert condition failed for {0}")]
    AlbertConditionFailed(String),
    #[error("automorphisms do not commute: {0}")]
    NotCommuting(String),
    #[error("projector degenerate")]
    ProjectorDegenerate,
    #[error("group mismatch")]
    GroupMismatch,
    #[error("not a cocycle")]
    NotACocycle,
    #[error("invalid defining system: {0}")]
    InvalidDefiningSystem(String),
    #[error("sign table broken: {0}")]
    SignTableBroken(String),
    #[error("representation not surjective: image has {0} elements")]
    NotSurjective(usize),
    #[error("serialization: {0}")]
    Serde(String),
}

pub type Result<T> = std::result::Result<T, Error>;
