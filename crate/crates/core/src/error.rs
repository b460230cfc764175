use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not a group: {0}")]
    NotAGroup(String),

    #[error("group order {order} exceeds the order cap {cap}")]
    OrderCapExceeded { order: usize, cap: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("action is not a homomorphism: {0}")]
    ActionNotHomomorphism(String),

    #[error("action image is not an automorphism: {0}")]
    ActionNotAutomorphism(String),

    #[error("the normal factor of a semidirect product must be abelian")]
    NotAbelianNormalFactor,

    #[error("subgroup lattice exceeds the lattice cap {cap} ({found} subgroups found, {processed} expanded)")]
    LatticeCapExceeded {
        cap: usize,
        found: usize,
        processed: usize,
    },

    #[error("dimension of a socle subgroup depends on the decomposition order ({0})")]
    DimensionInconsistency(String),

    #[error("subgroup {0} is not of codimension one")]
    NotCodimOne(usize),

    #[error("subgroup has codimension {0}, need at least 2")]
    CodimTooSmall(usize),

    #[error("group is not socle friendly")]
    NotSocleFriendly,

    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),

    #[error("branching exceeds the cap {cap} ({found} choices)")]
    BranchCapExceeded { cap: usize, found: usize },

    #[error("oracle input has {classes} conjugacy classes, above the cap {cap}")]
    OracleCapExceeded { classes: usize, cap: usize },

    #[error("parse error at position {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    #[error("unsupported parameter: {0}")]
    UnsupportedParameter(String),

    #[error("expected {expected} tables, found {found}")]
    MissingTables { expected: usize, found: usize },

    #[error("{n} and {p} are not coprime")]
    NonCoprime { n: u64, p: u64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            pos,
            msg: msg.into(),
        }
    }

    /// True for failures caused by a configured resource cap.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::OrderCapExceeded { .. }
                | Error::LatticeCapExceeded { .. }
                | Error::BranchCapExceeded { .. }
                | Error::OracleCapExceeded { .. }
        )
    }
}
