use std::io;
use std::path::PathBuf;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{0}")]
    Config(String),
    #[error("{path}:{line}: {message}")]
    ConfigFile {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error(transparent)]
    Model(#[from] timelocal_core::Error),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}: {message}")]
    Parse { path: PathBuf, message: String },
    #[error("{0}")]
    Tolerance(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// 1 for invalid configuration, 2 for everything that fails at run time.
    pub fn exit_code(&self) -> i32 {
        use timelocal_core::Error as Core;
        match self {
            Error::Config(_) | Error::ConfigFile { .. } => 1,
            Error::Model(
                Core::Config(_) | Core::CouplingExceedsRabi { .. } | Core::InvalidGrid(_),
            ) => 1,
            _ => 2,
        }
    }
}
