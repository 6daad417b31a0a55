use thiserror::Error;

use crate::ast::Kind;
use crate::lexer::Pos;

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum DslError {
    #[error("{pos}: syntax error: found {found}, expected {}", expected.join(" or "))]
    Syntax { pos: Pos, found: String, expected: Vec<String> },
    #[error("{pos}: {message}")]
    Lex { pos: Pos, message: String },
    #[error("{pos}: unknown {kind} `{name}`")]
    Unresolved { pos: Pos, kind: Kind, name: String },
    #[error("{pos}: {kind} `{name}` is declared twice")]
    Duplicate { pos: Pos, kind: Kind, name: String },
    #[error("{pos}: invalid {kind} `{name}`: {message}")]
    Invalid { pos: Pos, kind: Kind, name: String, message: String },
    #[error("{file}:{inner}")]
    InFile { file: String, inner: Box<DslError> },
}

impl DslError {
    pub fn in_file(self, file: &str) -> Self {
        match self {
            e @ DslError::InFile { .. } => e,
            e => DslError::InFile { file: file.to_string(), inner: Box::new(e) },
        }
    }

    /// The error without its file wrapper.
    pub fn root(&self) -> &DslError {
        match self {
            DslError::InFile { inner, .. } => inner.root(),
            e => e,
        }
    }

    pub fn pos(&self) -> Pos {
        match self.root() {
            DslError::Syntax { pos, .. }
            | DslError::Lex { pos, .. }
            | DslError::Unresolved { pos, .. }
            | DslError::Duplicate { pos, .. }
            | DslError::Invalid { pos, .. } => *pos,
            DslError::InFile { .. } => unreachable!("root strips file wrappers"),
        }
    }
}
