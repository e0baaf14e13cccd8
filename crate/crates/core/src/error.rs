use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("degree {degree} exceeds the configured limit of {limit} points")]
    DegreeLimit { degree: usize, limit: usize },

    #[error("cannot parse permutation {text:?}: {reason}")]
    ParsePermutation { text: String, reason: String },

    #[error("group order exceeds cap of {cap} elements (too large for desk-scale enumeration)")]
    OrderCap { cap: usize },

    #[error("subgroup lattice exceeds cap of {cap} subgroups")]
    LatticeCap { cap: usize },

    #[error("subset is not closed under multiplication")]
    NotClosed,

    #[error("subgroup {0} is not normal")]
    NotNormal(usize),

    #[error("subgroup {bottom} is not contained in subgroup {top}")]
    NotNested { bottom: usize, top: usize },

    #[error("group is not soluble")]
    NonSoluble,

    #[error("subgroup is not elementary abelian")]
    NotElementaryAbelian,

    #[error("element does not normalize the subgroup")]
    NotNormalizing,

    #[error("the identity cannot be used as a replacement element")]
    IdentityReplacement,

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{path}:{line}: {message}")]
    GroupFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("invalid group spec {spec:?}: {message}")]
    GroupSpec { spec: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for errors caused by a size cap rather than malformed input.
    pub fn is_cap(&self) -> bool {
        matches!(
            self,
            Error::OrderCap { .. } | Error::LatticeCap { .. } | Error::DegreeLimit { .. }
        )
    }

    pub fn is_parse(&self) -> bool {
        matches!(
            self,
            Error::ParsePermutation { .. }
                | Error::GroupFile { .. }
                | Error::GroupSpec { .. }
                | Error::InvalidParameter(_)
                | Error::DegreeMismatch { .. }
                | Error::Io(_)
        )
    }
}
