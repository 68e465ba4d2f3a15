use thiserror::Error;
use usalg_core::AlgError;

use crate::ast::Span;
use crate::parse::ParseError;

#[derive(Debug, Clone, Error)]
pub enum CliError {
    #[error("syntax error at {0}")]
    Parse(#[from] ParseError),
    /// Name resolution and type errors found while building the environment.
    #[error("line {}, column {}: {message}", span.line, span.col)]
    Elaborate { span: Span, message: String },
    #[error("line {}, column {}: {source}", span.line, span.col)]
    Algebra { span: Span, source: AlgError },
    /// A library call made by a command failed.
    #[error("{0}")]
    Command(#[from] AlgError),
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Io(String),
}

impl CliError {
    pub fn elaborate(span: Span, message: impl Into<String>) -> Self {
        CliError::Elaborate {
            span,
            message: message.into(),
        }
    }

    pub fn is_budget(&self) -> bool {
        matches!(
            self,
            CliError::Algebra { source: AlgError::Budget { .. }, .. } | CliError::Command(AlgError::Budget { .. })
        )
    }

    /// 3 for budget exhaustion, 2 for every other input problem.
    pub fn exit_code(&self) -> i32 {
        if self.is_budget() {
            3
        } else {
            2
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
