use thiserror::Error;

use crate::complex::Face;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input")]
    EmptyInput,
    #[error("vertex {0} out of range 1..={1}")]
    VertexOutOfRange(usize, usize),
    #[error("dimension {0} out of range")]
    DimensionOutOfRange(i64),
    #[error("complex is not pure")]
    NotPure,
    #[error("face {0} is not in the complex")]
    FaceNotInComplex(Face),
    #[error("vertex sets are not disjoint")]
    VertexClash,
    #[error("complex is not orientable")]
    NonOrientable,
    #[error("dual graph is disconnected")]
    DisconnectedDualGraph,
    #[error("ridge lies in more than two facets")]
    NotPseudomanifold,
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("invalid bistellar move")]
    InvalidMove,
    #[error("move budget exhausted")]
    BudgetExhausted,
    #[error("division by the zero polynomial")]
    DivisionByZeroPoly,
    #[error("wrong characteristic {0}; characteristic 2 required")]
    WrongCharacteristic(u64),
    #[error("denominator vanishes at the specialization point")]
    DenominatorVanishes,
    #[error("variable missing from the assignment")]
    UnassignedVariable,
    #[error("matrix dimensions do not match the complex")]
    DimensionMismatch,
    #[error("no facet available to pin the identity block")]
    NoPinningFacet,
    #[error("move faces are not labeled as required: {0}")]
    BadLabeling(String),
    #[error("complex is not a cone or suspension over the expected apex")]
    NotACone,
    #[error("bad index: {0}")]
    BadIndex(String),
    #[error("degree {0} out of range")]
    DegreeOutOfRange(usize),
    #[error("support {0} is not a face")]
    SupportNotAFace(Face),
    #[error("monomial has degree {got}, expected {expected}")]
    WrongDegree { got: usize, expected: usize },
    #[error("a required minor vanishes identically")]
    MinorVanishes,
    #[error("no independence witness found within the retry budget")]
    WitnessSearchFailed,
    #[error("the oracle is limited to at most {0} vertices")]
    CostGuard(usize),
    #[error("not a homology sphere")]
    NotHomologySphere,
    #[error("not a homology ball")]
    NotHomologyBall,
    #[error("not an l.s.o.p. for the complex")]
    NotLsop,
    #[error("parse error: {0}")]
    Parse(String),
}
