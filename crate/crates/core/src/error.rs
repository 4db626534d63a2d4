//! Crate-wide error type.

use std::path::PathBuf;

use thiserror::Error;

/// Why a separation statistic or a projection has no meaningful value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Degeneracy {
    /// `u = 0`: the two sets cannot be told apart by the profile.
    IdenticalProfiles,
    /// `σ_A² = 0`: the separation variable is deterministic.
    ZeroVariance,
    /// Every entry of the covariance matrix is zero.
    ZeroCovariance,
}

impl Degeneracy {
    pub fn reason(self) -> &'static str {
        match self {
            Degeneracy::IdenticalProfiles => "identical-profiles",
            Degeneracy::ZeroVariance => "zero-variance",
            Degeneracy::ZeroCovariance => "zero-covariance",
        }
    }
}

impl std::fmt::Display for Degeneracy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.reason())
    }
}

#[derive(Debug, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid letter {letter:?} at position {position}")]
    InvalidLetter { letter: char, position: usize },

    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid function class: {0}")]
    InvalidSpec(String),

    #[error("code is in the error class: {0}")]
    ErrorClass(String),

    #[error("code is not a member of the function class")]
    NotMember,

    #[error("measure {name} failed: {reason}")]
    Measure { name: String, reason: String },

    #[error("profile could not be built: {}", .0.iter().map(|e| e.to_string()).collect::<Vec<_>>().join("; "))]
    Profile(Vec<Error>),

    #[error("degenerate input: {0}")]
    Degenerate(Degeneracy),

    #[error("undefined: {0}")]
    Undefined(String),

    #[error("{path}:{line}:{column}: {message}")]
    Parse {
        path: String,
        line: usize,
        column: usize,
        message: String,
    },

    #[error("configuration error: {0}")]
    Config(String),

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: {source}", path.display())]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
