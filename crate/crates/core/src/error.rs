use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by space construction, parsing and the analysis routines.
///
/// Sets inside error payloads are pre-rendered with their ground labels.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ground set has {0} elements, the limit is {max}", max = crate::set::MAX_ELEMENTS)]
    TooManyElements(usize),
    #[error("family has {0} closed sets, the limit is {max}", max = crate::space::MAX_CLOSED_SETS)]
    TooManyClosedSets(usize),
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("invalid element label `{0}`")]
    InvalidLabel(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("label `{0}` already exists in the ground set")]
    LabelCollision(String),
    #[error("set is not over the ground set of this space")]
    GroundMismatch,
    #[error("family does not contain the full ground set")]
    MissingTop,
    #[error("family is not closed under intersection: {first} ∩ {second} is missing")]
    NotIntersectionClosed { first: String, second: String },
    #[error("closure space is not standard: cl({element}) \\ {{{element}}} is not closed")]
    NotStandard { element: String },
    #[error("{0} is not a closed set")]
    NotClosed(String),
    #[error("{low} is not included in {high}")]
    NotComparable { low: String, high: String },
    #[error("element {element} does not belong to {set}")]
    ElementNotInSet { element: String, set: String },
    #[error("lattice is not join-semidistributive")]
    NotJoinSemidistributive,
    #[error("lattice is not geometric")]
    NotGeometric,
    #[error("circuit axiom violated: {0}")]
    CircuitAxiom(String),
    #[error("precondition not met: {0}")]
    Precondition(String),
    #[error("the empty set cannot be lifted")]
    LiftEmptySet,
    #[error("map is not total: {0}")]
    MapNotTotal(String),
    #[error("line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    /// Two computations that must agree did not. Always a bug.
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

impl Error {
    pub fn is_invariant(&self) -> bool {
        matches!(self, Error::Invariant(_))
    }
}
