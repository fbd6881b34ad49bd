use std::path::PathBuf;

/// Errors produced by the numerical routines and the command-line layer.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("argument outside the domain of {function}: {detail}")]
    Domain {
        function: &'static str,
        detail: String,
    },

    #[error("invalid parameter `{field}`: {reason}")]
    InvalidParameter { field: &'static str, reason: String },

    #[error("{what} did not converge after {iterations} iterations")]
    NonConvergence { what: &'static str, iterations: usize },

    #[error("detuning grid too narrow: edge amplitude is {edge_ratio:.3e} of the peak (limit {limit:.1e})")]
    GridTooNarrow { edge_ratio: f64, limit: f64 },

    #[error("grid has {count} points; a power of two is required for the transform")]
    NonPowerOfTwo { count: usize },

    #[error("profile does not cross half maximum on the {side} side within the grid")]
    NoCrossing { side: &'static str },

    #[error("spectra are sampled on different grids")]
    GridMismatch,

    #[error("fit failed: {0}")]
    Fit(String),

    #[error("{}: field `{field}`: {message}", location(.path, *.line))]
    Config {
        path: PathBuf,
        line: usize,
        field: String,
        message: String,
    },

    #[error("{path}: row {row}, column `{column}`: {message}")]
    Schema {
        path: PathBuf,
        row: usize,
        column: String,
        message: String,
    },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn invalid(field: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            field,
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(function: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            function,
            detail: detail.into(),
        }
    }
}

/// `path:line`, or just `path` when the line is unknown (0).
fn location(path: &std::path::Path, line: usize) -> String {
    match line {
        0 => path.display().to_string(),
        n => format!("{}:{n}", path.display()),
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
