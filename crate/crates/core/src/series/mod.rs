//! Truncated Taylor expansion of explicit Runge-Kutta steps for the scalar
//! equation y' = f(x, y).

mod expand;
mod symbols;
mod truncated;

use thiserror::Error;

pub use expand::{collect_difference, combine, expand_stages, taylor_target, total_derivatives, StageTemplate};
pub use symbols::{DerivSymbol, DiffMonomial, DiffPoly};
pub use truncated::{SeriesKey, TruncatedSeries};

use crate::algebra::AlgebraError;

/// Whether f may depend on x.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    General,
    Autonomous,
}

impl std::fmt::Display for Mode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Mode::General => "general",
            Mode::Autonomous => "autonomous",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("unsupported method structure: {0}")]
    UnsupportedStructure(String),
    #[error("stage offsets must vanish at h = 0")]
    OffsetHasConstantTerm,
    #[error("series truncated at different orders ({left} and {right})")]
    CutoffMismatch { left: u32, right: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}
