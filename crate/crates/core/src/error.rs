use thiserror::Error;

/// Errors raised by the codec, the solvers and the simulation harness.
#[derive(Debug, Error)]
pub enum Error {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("invalid input: {0}")]
    Input(String),
    #[error("infeasible cost matrix: no finite perfect assignment exists")]
    Infeasible,
    #[error("refused: {0}")]
    Refused(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
