use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Graph(#[from] dso_core::Error),
    #[error("build failed: {0}")]
    Build(dso_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("oracle file: {0}")]
    Blob(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code: 3 for build failures, 2 for everything the user
    /// can fix by changing the input.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::Build(_) => 3,
            _ => 2,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    /// Classifies an error from [`dso_core::FullDso::build`]: bad
    /// configuration and too-small graphs are input errors, the rest are
    /// build failures.
    pub fn from_build(e: dso_core::Error) -> Self {
        match e {
            dso_core::Error::Config(_) | dso_core::Error::TooFewVertices { .. } => Error::Graph(e),
            e => Error::Build(e),
        }
    }
}
