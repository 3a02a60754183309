use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("infinite index: sublattice rank {sub} differs from lattice rank {sup}")]
    InfiniteIndex { sub: usize, sup: usize },
    #[error("not a sublattice")]
    NotSublattice,
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("not a permutation: {0}")]
    NotPermutation(String),
    #[error("group too large: order exceeds bound {bound}")]
    GroupTooLarge { bound: usize },
    #[error("invalid group: {0}")]
    InvalidGroup(String),
    #[error("not a subgroup")]
    NotSubgroup,
    #[error("kernel must have index 2, found index {0}")]
    IndexNotTwo(usize),
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid pairing: {0}")]
    InvalidPairing(String),
    #[error("not rationally isomorphic")]
    NotRationallyIsomorphic,
    #[error("no full-rank equivariant map found after {0} attempts")]
    RetryBudgetExhausted(usize),
    #[error("not a Brauer relation")]
    NotBrauerRelation,
    #[error("map is not equivariant")]
    NotEquivariant,
    #[error("map is not well defined on the presentation")]
    IllDefinedMap,
    #[error("map has infinite cokernel")]
    InfiniteCokernel,
    #[error("map has infinite kernel")]
    InfiniteKernel,
    #[error("invalid place model: {0}")]
    InvalidPlaceModel(String),
    #[error("factor equivalence routes disagree on relation {relation}")]
    RouteDisagreement { relation: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}
