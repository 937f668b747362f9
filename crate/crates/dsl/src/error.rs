use std::fmt;

/// A 1-based source location.
///
/// Positions never take part in structural equality, so ASTs parsed from
/// differently formatted sources compare equal when their content agrees.
#[derive(Clone, Copy, Debug, Default, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

impl PartialEq for Pos {
    fn eq(&self, _: &Self) -> bool {
        true
    }
}

impl Pos {
    pub fn new(line: u32, col: u32) -> Self {
        Self { line, col }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorKind {
    Lexical,
    Syntax,
    Semantic,
    /// Problems with command arguments or with the requested computation;
    /// these carry no source position.
    Command,
}

impl ErrorKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorKind::Lexical => "lexical",
            ErrorKind::Syntax => "syntax",
            ErrorKind::Semantic => "semantic",
            ErrorKind::Command => "command",
        }
    }
}

#[derive(Clone, Debug)]
pub struct DslError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pos.line > 0 {
            write!(f, "{}: ", self.pos)?;
        }
        write!(f, "{} error: {}", self.kind.as_str(), self.message)
    }
}

impl std::error::Error for DslError {}

impl DslError {
    pub fn command(message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Command, pos: Pos::default(), message: message.into() }
    }

    pub fn lexical(pos: Pos, message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Lexical, pos, message: message.into() }
    }

    pub fn syntax(pos: Pos, message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Syntax, pos, message: message.into() }
    }

    pub fn semantic(pos: Pos, message: impl Into<String>) -> Self {
        Self { kind: ErrorKind::Semantic, pos, message: message.into() }
    }
}

pub type Result<T> = std::result::Result<T, DslError>;
