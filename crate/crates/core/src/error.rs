use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Coarse classification used by the command line to pick an exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
  Parse,
  Precondition,
  Internal,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
  #[error("parse error at line {line}, column {column}: {message}")]
  Parse { line: usize, column: usize, message: String },

  #[error("unknown {kind} `{name}`")]
  UnknownName { kind: &'static str, name: String },

  #[error("duplicate {kind} `{name}`")]
  DuplicateName { kind: &'static str, name: String },

  #[error("dimension mismatch: {0}")]
  DimensionMismatch(String),

  #[error("invalid complex at degree {degree}: {reason}")]
  InvalidComplex { degree: usize, reason: String },

  #[error("not a cocycle in degree {degree}: coboundary entry {entry} is nonzero")]
  NotACocycle { degree: usize, entry: usize },

  #[error("not a cochain map: commutation fails at source degree {degree}")]
  NotAChainMap { degree: usize },

  #[error("degree {degree} out of range (valid 0..={max})")]
  DegreeOutOfRange { degree: i64, max: i64 },

  #[error("class cannot be realized by the declared cup structure: {0}")]
  Unrealizable(String),

  #[error("obstruction [ê⌣e] ≠ 0: dual flux equation has no integral solution")]
  Obstruction,

  #[error("unsupported: {0}")]
  Unsupported(String),

  #[error("bad parameters: {0}")]
  BadParams(String),

  #[error("internal invariant violated: {0}")]
  Invariant(String),
}

impl Error {
  pub fn class(&self) -> ErrorClass {
    match self {
      Error::Parse { .. } | Error::UnknownName { .. } | Error::DuplicateName { .. } => ErrorClass::Parse,
      Error::Invariant(_) => ErrorClass::Internal,
      _ => ErrorClass::Precondition,
    }
  }
}
