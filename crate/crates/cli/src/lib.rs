//! The `mfcat` front end: JSON job specs in, reports out.

pub mod load;
pub mod run;
pub mod schema;
pub mod suite;
pub mod table;

use thiserror::Error;

use mfcat_cohomology::CohomologyError;
use mfcat_homotopycat::HomotopyError;
use mfcat_hypersurface::HypersurfaceError;
use mfcat_mfcore::MfError;

pub use run::{run, Report};
pub use schema::JobSpec;
pub use suite::generate_suite;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INCONCLUSIVE: i32 = 2;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Input { path: String, message: String },
    #[error("invalid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error(transparent)]
    Compute(#[from] ComputeError),
    /// A threshold found by scanning needs `--threshold` or `--acknowledge-scanned`.
    #[error("the vanishing threshold of a non-polynomial ring is only scanned ({0}); pass --threshold or --acknowledge-scanned")]
    Unacknowledged(String),
}

#[derive(Debug, Error)]
pub enum ComputeError {
    #[error(transparent)]
    Mf(#[from] MfError),
    #[error(transparent)]
    Cohomology(#[from] CohomologyError),
    #[error(transparent)]
    Hypersurface(#[from] HypersurfaceError),
    #[error(transparent)]
    Homotopy(#[from] HomotopyError),
}

macro_rules! compute_from {
    ($($t:ty),*) => {$(
        impl From<$t> for CliError {
            fn from(e: $t) -> Self {
                CliError::Compute(e.into())
            }
        }
    )*};
}

compute_from!(MfError, CohomologyError, HypersurfaceError, HomotopyError);
