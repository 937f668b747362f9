//! Tokens of the structure language. `#` starts a comment running to the end
//! of the line.

use std::fmt;

use crate::error::{DslError, Pos, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Nat(String),
    LBrace,
    RBrace,
    LBrack,
    RBrack,
    LParen,
    RParen,
    Comma,
    Semi,
    Colon,
    Eq,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Arrow,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) | Tok::Nat(s) => return write!(f, "'{s}'"),
            Tok::LBrace => "'{'",
            Tok::RBrace => "'}'",
            Tok::LBrack => "'['",
            Tok::RBrack => "']'",
            Tok::LParen => "'('",
            Tok::RParen => "')'",
            Tok::Comma => "','",
            Tok::Semi => "';'",
            Tok::Colon => "':'",
            Tok::Eq => "'='",
            Tok::Plus => "'+'",
            Tok::Minus => "'-'",
            Tok::Star => "'*'",
            Tok::Slash => "'/'",
            Tok::Caret => "'^'",
            Tok::Arrow => "'->'",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn tokenize(src: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let (mut line, mut col) = (1u32, 1u32);
    while let Some(&c) = chars.peek() {
        let pos = Pos::new(line, col);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
            }
            c
        };
        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                s.push(bump(&mut chars).unwrap());
            }
            Tok::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(char::is_ascii_digit) {
                s.push(bump(&mut chars).unwrap());
            }
            Tok::Nat(s)
        } else {
            bump(&mut chars);
            match c {
                '{' => Tok::LBrace,
                '}' => Tok::RBrace,
                '[' => Tok::LBrack,
                ']' => Tok::RBrack,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                ';' => Tok::Semi,
                ':' => Tok::Colon,
                '=' => Tok::Eq,
                '+' => Tok::Plus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '-' if chars.peek() == Some(&'>') => {
                    bump(&mut chars);
                    Tok::Arrow
                }
                '-' => Tok::Minus,
                other => return Err(DslError::lexical(pos, format!("unexpected character '{other}'"))),
            }
        };
        out.push(Token { tok, pos });
    }
    out.push(Token { tok: Tok::Eof, pos: Pos::new(line, col) });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_and_arrow() {
        let t = tokenize("a -> b\n  x-1").unwrap();
        let toks: Vec<_> = t.iter().map(|t| t.tok.clone()).collect();
        assert_eq!(
            toks,
            vec![
                Tok::Ident("a".into()),
                Tok::Arrow,
                Tok::Ident("b".into()),
                Tok::Ident("x".into()),
                Tok::Minus,
                Tok::Nat("1".into()),
                Tok::Eof
            ]
        );
        assert_eq!((t[3].pos.line, t[3].pos.col), (2, 3));
    }

    #[test]
    fn comments_are_skipped() {
        assert_eq!(tokenize("# nothing\n").unwrap().len(), 1);
    }

    #[test]
    fn stray_character() {
        let e = tokenize("x = $").unwrap_err();
        assert_eq!(e.to_string(), "1:5: lexical error: unexpected character '$'");
    }
}
