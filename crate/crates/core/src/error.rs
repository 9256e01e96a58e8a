use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("no feasible sets")]
    EmptyFamily,
    #[error("ground set has {0} elements, limit is 64")]
    GroundTooLarge(usize),
    #[error("element labels must be nonempty")]
    EmptyLabel,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("mask has bits outside the ground set")]
    InvalidMask,
    #[error("symmetric exchange fails for X={x}, Y={y} at element `{element}`")]
    AxiomViolation { x: String, y: String, element: String },
    #[error("contract and delete sets overlap")]
    OverlappingMinor,
    #[error("ground sets share label `{0}`")]
    LabelCollision(String),
    #[error("set {0} is not feasible")]
    NotFeasible(String),
    #[error("feasible sets are not equicardinal; not a matroid")]
    NotAMatroid,
    #[error("element `{0}` is in the given basis")]
    ElementInBasis(String),
    #[error("operation needs two distinct elements")]
    SamePoint,
    #[error("ground set must be nonempty")]
    EmptyGround,
    #[error("{what} supports at most {limit} elements, got {got}")]
    CapExceeded {
        what: &'static str,
        limit: usize,
        got: usize,
    },
    #[error("order must be a permutation of the ground set")]
    BadOrder,
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("variable lists differ")]
    VarMismatch,
    #[error("non-integral exponent for `{0}`")]
    NonIntegralExponent(String),
    #[error("sign raised to a non-integral power")]
    FractionalSign,
    #[error("negative shift exponent")]
    NegativeShiftExponent,
    #[error("zero base with negative exponent")]
    ZeroToNegative,
    #[error("negative base with half-integral exponent")]
    NegativeBaseHalfPower,
    #[error("negative power of a polynomial")]
    NegativePower,
    #[error("method `{0}` is not supported by this polynomial")]
    UnsupportedMethod(String),
    #[error("unknown relation `{0}`")]
    UnknownRelation(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("ribbon graph is disconnected")]
    DisconnectedRibbon,
    #[error("edge `{0}` must have exactly two placed ends")]
    EndCount(String),
    #[error("expected a single-vertex ribbon graph")]
    MultiVertex,
    #[error("exhaustive enumeration supports 1..=4 elements, got {0}")]
    EnumSize(usize),
}
