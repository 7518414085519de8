//! Error and validation-report types shared by every module.

use serde::Serialize;
use std::fmt;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found} ({context})")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        context: String,
    },
    #[error("degenerate form: {context}")]
    Degenerate { context: String },
    #[error("division by zero")]
    DivisionByZero,
    #[error("singular matrix: {context}")]
    Singular { context: String },
    #[error("parse error: {message}")]
    Parse { message: String },
    #[error("validation failed:\n{0}")]
    Validation(ValidationReport),
    #[error("precondition violated: {message}")]
    Precondition { message: String },
    #[error("eigenvalue outside the Gaussian rationals; characteristic polynomial {char_poly}")]
    EigenvalueOutsideField { char_poly: String },
    #[error("internal assertion failed: {what} (witness: {witness})")]
    Internal { what: String, witness: String },
    #[error("unsupported: {message}")]
    Unsupported { message: String },
}

impl Error {
    pub fn internal(what: impl Into<String>, witness: impl Into<String>) -> Self {
        Error::Internal {
            what: what.into(),
            witness: witness.into(),
        }
    }

    pub fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition {
            message: message.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// One violated identity, with the indices it was checked at and both sides'
/// values rendered canonically.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub rule: String,
    pub indices: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {:?}: lhs = {}, rhs = {}",
            self.rule, self.indices, self.lhs, self.rhs
        )
    }
}

/// Collected violations; empty iff the checked object is valid.
#[derive(Debug, Clone, Default, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(
        &mut self,
        rule: impl Into<String>,
        indices: Vec<usize>,
        lhs: impl fmt::Display,
        rhs: impl fmt::Display,
    ) {
        self.violations.push(Violation {
            rule: rule.into(),
            indices,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
    }

    pub fn merge(&mut self, other: ValidationReport) {
        self.violations.extend(other.violations);
    }

    /// Turn the report into an error when it is non-empty.
    pub fn into_result(self) -> Result<()> {
        if self.is_valid() {
            Ok(())
        } else {
            Err(Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.violations.is_empty() {
            return write!(f, "valid");
        }
        for v in &self.violations {
            writeln!(f, "  {v}")?;
        }
        Ok(())
    }
}
