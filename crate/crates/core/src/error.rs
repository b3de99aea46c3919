use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Pauli mnemonic {0:?}: expected optional '-' followed by three of I, X, Y, Z")]
    Mnemonic(String),

    #[error("matrix is not a signed three-qubit Pauli tensor")]
    NotPauli,

    #[error("gate matrix must be 8x8, orthogonal, with entries in -1, 0, 1")]
    NotGate,

    #[error("invalid permutation {0:?}")]
    Permutation(String),

    #[error("matrix is not antisymmetric")]
    NotAntisymmetric,

    #[error("expected a {expected}x{expected} matrix, got {found}x{found}")]
    Dimension { expected: usize, found: usize },

    #[error("group closure exceeded the element budget of {0}")]
    ElementBudget(usize),

    #[error("search exceeded the node budget of {0}")]
    NodeBudget(usize),

    #[error("unknown table id {0}, expected 1 or 2")]
    UnknownTable(u8),

    #[error("hexagon line {0} is not a commuting triple closed under products")]
    LineClosure(String),

    #[error("dual Fano line {0} has no consistent orientation")]
    Orientation(String),

    #[error("projector for sign pattern {pattern:?} has rank {rank}, expected 1")]
    ProjectorRank { pattern: [i8; 3], rank: usize },

    #[error("commuting set {0} does not contain three independent generators")]
    DependentGenerators(String),

    #[error("unknown charge label {0:?}")]
    ChargeLabel(String),

    #[error("charge configuration has support outside the a-letter slots")]
    NotTruncation,
}
