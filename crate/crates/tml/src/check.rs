//! The error shared by all proof checkers.

use thiserror::Error;

/// The first node that fails to check. `path` lists premise indices from the root.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("node {path:?} ({rule}): {message}")]
pub struct CheckError {
    pub path: Vec<usize>,
    pub rule: String,
    pub message: String,
}

impl CheckError {
    pub(crate) fn new(path: &[usize], rule: impl Into<String>, message: impl Into<String>) -> CheckError {
        CheckError { path: path.to_vec(), rule: rule.into(), message: message.into() }
    }
}
