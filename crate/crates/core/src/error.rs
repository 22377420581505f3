use alloc::string::String;

use crate::setsystem::Mask;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("mask {mask:#x} uses bits outside the {n}-element ground set")]
    MaskOutOfRange { mask: Mask, n: usize },
    #[error("ground set of {0} elements exceeds the supported maximum")]
    TooManyElements(usize),
    #[error("the set system has no feasible sets")]
    Improper,
    #[error("deleted set {deleted:#x} and contracted set {contracted:#x} overlap")]
    OverlappingMinor { deleted: Mask, contracted: Mask },
    #[error("no feasible set contains {contracted:#x} while avoiding {deleted:#x}")]
    InvalidMinor { deleted: Mask, contracted: Mask },
    #[error("the set system is not a delta-matroid")]
    NotDeltaMatroid,
    #[error("the set system is not a matroid")]
    NotMatroid,
    #[error("the set system is not even")]
    NotEven,
    #[error("ground sets differ")]
    GroundSetMismatch,
    #[error("the first matroid is not a quotient of the second")]
    NotQuotient,
    #[error("{n} elements exceeds the permutation cap of {cap}")]
    PermutationCap { n: usize, cap: usize },
    #[error("index {index} lies outside 0..={k}")]
    IndexOutOfRange { index: usize, k: usize },
    #[error("indices {0} and {1} are both missing from the index set")]
    ConsecutiveGap(usize, usize),
    #[error("the index set is empty")]
    EmptyIndexSet,
    #[error("index set was built for k = {found}, but the pair has k = {expected}")]
    IndexSetMismatch { expected: usize, found: usize },
    #[error("unknown catalog name `{0}`")]
    UnknownName(String),
    #[error("malformed twist expression `{0}`")]
    MalformedTwist(String),
    #[error("hypothesis not met: {0}")]
    Hypothesis(String),
    #[error("invalid region: {0}")]
    InvalidRegion(String),
    #[error("path enumeration exceeded the cap of {0} paths")]
    PathCap(usize),
    #[error("lattice path structure check failed: {0}")]
    LatticeStructure(String),
    #[error("matrix shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("infeasible parameters: {0}")]
    InfeasibleParameters(String),
    #[error("exhaustive census on {0} elements is out of range for this mode")]
    CensusCapacity(usize),
    #[error("unknown theorem id `{0}`")]
    UnknownTheorem(String),
}
