use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("group of order {order} exceeds the bound {bound} for {what}")]
    GroupTooLarge { order: usize, bound: usize, what: &'static str },
    #[error("no character table construction for {0}")]
    NoTable(String),
    #[error("subgroup table unavailable: {0}")]
    SubgroupTableUnavailable(String),
    #[error("not a virtual character: {0}")]
    NotVirtualCharacter(String),
    #[error("inexact division: {0}")]
    InexactDivision(String),
    #[error("characters live over different tables")]
    TableMismatch,
    #[error("expected an actual character, found negative coefficients")]
    NegativeCoefficients,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("lattice containment violated: {0}")]
    NotContained(String),
    #[error("map does not preserve the lattices: {0}")]
    NotPreserving(String),
    #[error("element is not in filtration degree {0}")]
    NotInFiltration(usize),
    #[error("index {0} is not prime")]
    IndexNotPrime(usize),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("element is not invertible for the vee product")]
    NotInvertible,
    #[error("Sylow {p}-subgroup is not abelian")]
    NonAbelianSylow { p: u64 },
    #[error("size bound {bound} exceeded ({what})")]
    SizeBound { bound: usize, what: String },
    #[error("map is not equivariant: {0}")]
    NotEquivariant(String),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
