use std::fmt;

/// A 1-based line and column in a session file.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum SessionError {
    #[error("{pos}: expected {expected}, found {found}")]
    Syntax { pos: Pos, expected: String, found: String },
    #[error("{pos}: unresolved reference `{name}`")]
    Unresolved { pos: Pos, name: String },
    #[error("{pos}: `{name}` is already declared")]
    Duplicate { pos: Pos, name: String },
    #[error("{pos}: {message}")]
    Invalid { pos: Pos, message: String },
    #[error("unknown example `{0}`")]
    UnknownExample(String),
    #[error("{0}")]
    Io(String),
}

impl SessionError {
    pub fn syntax(pos: Pos, expected: &str, found: &str) -> SessionError {
        SessionError::Syntax {
            pos,
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }

    pub fn invalid(pos: Pos, message: impl Into<String>) -> SessionError {
        SessionError::Invalid { pos, message: message.into() }
    }
}
