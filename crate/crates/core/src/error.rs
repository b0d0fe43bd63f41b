use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Numerical and domain failures. Variants that concern one cell carry its index.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("degenerate characteristic roots at cell {k} (band edge)")]
    DegenerateRoots { k: i64 },
    #[error("coefficient f0 vanishes at cell {k}")]
    VanishingCoefficient { k: i64 },
    #[error("non-finite value at cell {k}")]
    NonFinite { k: i64 },
    #[error("index window mismatch: {0}")]
    WindowMismatch(String),
    #[error("gauge sequences coincide at cell {k}")]
    GaugeCollision { k: i64 },
    #[error("transfer matrix at cell {k} has T22 = 0 and no scattering form")]
    NonInvertibleCell { k: i64 },
    #[error("cascade pole at cell {k}")]
    CascadePole { k: i64 },
    #[error("S12 vanishes at cell {k}; profile cannot be reconstructed")]
    ProfileSingular { k: i64 },
    #[error("boundary-value system is singular at row {row}")]
    SingularSystem { row: usize },
    #[error("window of {len} cells is too small")]
    WindowTooSmall { len: usize },
    #[error("lead at cell {k} is not homogeneous with the requested phase")]
    LeadMismatch { k: i64 },
    #[error("square-root branch cut crossed at cell {k}")]
    BranchCutCrossing { k: i64 },
    #[error("zero amplitude at cell {k}")]
    ZeroAmplitude { k: i64 },
    #[error("invalid window: {0}")]
    BadWindow(String),
    #[error("invalid phase profile at cell {k}: {reason}")]
    BadProfile { k: i64, reason: String },
    #[error("invalid geometry at cell {k}: {reason}")]
    BadGeometry { k: i64, reason: String },
    #[error("comparison requires the exact method as baseline")]
    MissingBaseline,
}

impl Error {
    /// Cell index attached to the failure, if any.
    pub fn cell(&self) -> Option<i64> {
        match *self {
            Error::DegenerateRoots { k }
            | Error::VanishingCoefficient { k }
            | Error::NonFinite { k }
            | Error::GaugeCollision { k }
            | Error::NonInvertibleCell { k }
            | Error::CascadePole { k }
            | Error::ProfileSingular { k }
            | Error::LeadMismatch { k }
            | Error::BranchCutCrossing { k }
            | Error::ZeroAmplitude { k }
            | Error::BadProfile { k, .. }
            | Error::BadGeometry { k, .. } => Some(k),
            _ => None,
        }
    }
}
