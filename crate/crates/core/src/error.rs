use std::path::PathBuf;

use thiserror::Error;

/// Everything that can go wrong in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("graphml: {0}")]
    GraphMl(String),

    #[error("graph is empty (at least one vertex is required)")]
    EmptyGraph,

    #[error("invalid edge ({u}, {v}) for a graph with {n} vertices")]
    InvalidEdge { u: usize, v: usize, n: usize },

    #[error("degenerate graph: {0}")]
    DegenerateGraph(String),

    #[error("degenerate layout: {0}")]
    DegenerateLayout(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("numeric failure: {0}")]
    Numeric(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("csv: {0}")]
    Csv(#[from] csv::Error),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// Process exit code used by the command-line front end.
    ///
    /// 1 is usage, 2 is IO or parse, 3 is a numeric failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            Error::InvalidParameter(_) => 1,
            Error::Parse { .. }
            | Error::GraphMl(_)
            | Error::EmptyGraph
            | Error::InvalidEdge { .. }
            | Error::Io { .. }
            | Error::Csv(_)
            | Error::Json(_) => 2,
            Error::DegenerateGraph(_) | Error::DegenerateLayout(_) | Error::Numeric(_) => 3,
        }
    }
}
