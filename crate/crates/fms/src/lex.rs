//! Tokenizer shared by the surface parser and the Core reader.

use crate::ir::Loc;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    Str(String),
    ColonColon, // ::
    Assign,     // :=
    Dot,        // .
    DotDot,     // ..
    Comma,
    Semi,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Backslash,
    Arrow,     // ->
    LeftArrow, // <-
    Bars,      // ||
    Bang,      // !
    Question,  // ?
    Eq,        // =
    Neq,       // ~=
    Lt,
    Le,
    Gt,
    Ge,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Amp,
    Pipe,
    FatArrow, // =>
    IffArrow, // <=>
    Underscore,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(s) => return write!(f, "identifier `{s}`"),
            Tok::Int(n) => return write!(f, "integer `{n}`"),
            Tok::Str(s) => return write!(f, "string {s:?}"),
            Tok::ColonColon => "::",
            Tok::Assign => ":=",
            Tok::Dot => ".",
            Tok::DotDot => "..",
            Tok::Comma => ",",
            Tok::Semi => ";",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::LBracket => "[",
            Tok::RBracket => "]",
            Tok::Backslash => "\\",
            Tok::Arrow => "->",
            Tok::LeftArrow => "<-",
            Tok::Bars => "||",
            Tok::Bang => "!",
            Tok::Question => "?",
            Tok::Eq => "=",
            Tok::Neq => "~=",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Percent => "%",
            Tok::Amp => "&",
            Tok::Pipe => "|",
            Tok::FatArrow => "=>",
            Tok::IffArrow => "<=>",
            Tok::Underscore => "_",
            Tok::Eof => "end of input",
        };
        write!(f, "`{s}`")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub loc: Loc,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LexError {
    #[error("{loc}: unexpected character `{ch}`")]
    UnexpectedChar { ch: char, loc: Loc },
    #[error("{loc}: unterminated string literal")]
    UnterminatedString { loc: Loc },
    #[error("{loc}: integer literal out of range")]
    IntOutOfRange { loc: Loc },
}

/// Identifiers reserved as keywords; they can never be variable names.
pub const KEYWORDS: &[&str] = &["if", "then", "else", "case", "of", "not", "let", "in"];

pub fn tokenize(src: &str) -> Result<Vec<Token>, LexError> {
    let mut out = Vec::new();
    let mut chars = src.chars().peekable();
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! bump {
        () => {{
            let c = chars.next();
            if let Some(c) = c {
                if c == '\n' {
                    line += 1;
                    col = 1;
                } else {
                    col += 1;
                }
            }
            c
        }};
    }

    loop {
        let loc = Loc::new(line, col);
        let Some(&c) = chars.peek() else {
            out.push(Token { tok: Tok::Eof, loc });
            break;
        };
        match c {
            ' ' | '\t' | '\r' | '\n' => {
                bump!();
            }
            '/' => {
                bump!();
                if chars.peek() == Some(&'/') {
                    while let Some(&c) = chars.peek() {
                        if c == '\n' {
                            break;
                        }
                        bump!();
                    }
                } else {
                    out.push(Token { tok: Tok::Slash, loc });
                }
            }
            '"' => {
                bump!();
                let mut s = String::new();
                loop {
                    match bump!() {
                        None => return Err(LexError::UnterminatedString { loc }),
                        Some('"') => break,
                        Some('\\') => match bump!() {
                            Some('n') => s.push('\n'),
                            Some('t') => s.push('\t'),
                            Some('"') => s.push('"'),
                            Some('\\') => s.push('\\'),
                            Some(other) => {
                                return Err(LexError::UnexpectedChar { ch: other, loc })
                            }
                            None => return Err(LexError::UnterminatedString { loc }),
                        },
                        Some(other) => s.push(other),
                    }
                }
                out.push(Token { tok: Tok::Str(s), loc });
            }
            '0'..='9' => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        s.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                let n: i64 = s.parse().map_err(|_| LexError::IntOutOfRange { loc })?;
                out.push(Token { tok: Tok::Int(n), loc });
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        s.push(c);
                        bump!();
                    } else {
                        break;
                    }
                }
                out.push(Token { tok: Tok::Ident(s), loc });
            }
            '_' => {
                bump!();
                out.push(Token { tok: Tok::Underscore, loc });
            }
            ':' => {
                bump!();
                match chars.peek() {
                    Some(':') => {
                        bump!();
                        out.push(Token { tok: Tok::ColonColon, loc });
                    }
                    Some('=') => {
                        bump!();
                        out.push(Token { tok: Tok::Assign, loc });
                    }
                    _ => return Err(LexError::UnexpectedChar { ch: ':', loc }),
                }
            }
            '.' => {
                bump!();
                if chars.peek() == Some(&'.') {
                    bump!();
                    out.push(Token { tok: Tok::DotDot, loc });
                } else {
                    out.push(Token { tok: Tok::Dot, loc });
                }
            }
            ',' => {
                bump!();
                out.push(Token { tok: Tok::Comma, loc });
            }
            ';' => {
                bump!();
                out.push(Token { tok: Tok::Semi, loc });
            }
            '(' => {
                bump!();
                out.push(Token { tok: Tok::LParen, loc });
            }
            ')' => {
                bump!();
                out.push(Token { tok: Tok::RParen, loc });
            }
            '{' => {
                bump!();
                out.push(Token { tok: Tok::LBrace, loc });
            }
            '}' => {
                bump!();
                out.push(Token { tok: Tok::RBrace, loc });
            }
            '[' => {
                bump!();
                out.push(Token { tok: Tok::LBracket, loc });
            }
            ']' => {
                bump!();
                out.push(Token { tok: Tok::RBracket, loc });
            }
            '\\' => {
                bump!();
                out.push(Token { tok: Tok::Backslash, loc });
            }
            '-' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    out.push(Token { tok: Tok::Arrow, loc });
                } else {
                    out.push(Token { tok: Tok::Minus, loc });
                }
            }
            '|' => {
                bump!();
                if chars.peek() == Some(&'|') {
                    bump!();
                    out.push(Token { tok: Tok::Bars, loc });
                } else {
                    out.push(Token { tok: Tok::Pipe, loc });
                }
            }
            '!' => {
                bump!();
                out.push(Token { tok: Tok::Bang, loc });
            }
            '?' => {
                bump!();
                out.push(Token { tok: Tok::Question, loc });
            }
            '=' => {
                bump!();
                if chars.peek() == Some(&'>') {
                    bump!();
                    out.push(Token { tok: Tok::FatArrow, loc });
                } else {
                    out.push(Token { tok: Tok::Eq, loc });
                }
            }
            '~' => {
                bump!();
                if chars.peek() == Some(&'=') {
                    bump!();
                    out.push(Token { tok: Tok::Neq, loc });
                } else {
                    return Err(LexError::UnexpectedChar { ch: '~', loc });
                }
            }
            '<' => {
                bump!();
                match chars.peek() {
                    Some('=') => {
                        bump!();
                        if chars.peek() == Some(&'>') {
                            bump!();
                            out.push(Token { tok: Tok::IffArrow, loc });
                        } else {
                            out.push(Token { tok: Tok::Le, loc });
                        }
                    }
                    Some('-') => {
                        bump!();
                        out.push(Token { tok: Tok::LeftArrow, loc });
                    }
                    _ => out.push(Token { tok: Tok::Lt, loc }),
                }
            }
            '>' => {
                bump!();
                if chars.peek() == Some(&'=') {
                    bump!();
                    out.push(Token { tok: Tok::Ge, loc });
                } else {
                    out.push(Token { tok: Tok::Gt, loc });
                }
            }
            '+' => {
                bump!();
                out.push(Token { tok: Tok::Plus, loc });
            }
            '*' => {
                bump!();
                out.push(Token { tok: Tok::Star, loc });
            }
            '%' => {
                bump!();
                out.push(Token { tok: Tok::Percent, loc });
            }
            '&' => {
                bump!();
                out.push(Token { tok: Tok::Amp, loc });
            }
            other => {
                return Err(LexError::UnexpectedChar { ch: other, loc });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lexes_symbols_and_comments() {
        let toks = tokenize("a := {1..3}. // comment\nb <=> c").unwrap();
        let kinds: Vec<_> = toks.into_iter().map(|t| t.tok).collect();
        assert_eq!(
            kinds,
            vec![
                Tok::Ident("a".into()),
                Tok::Assign,
                Tok::LBrace,
                Tok::Int(1),
                Tok::DotDot,
                Tok::Int(3),
                Tok::RBrace,
                Tok::Dot,
                Tok::Ident("b".into()),
                Tok::IffArrow,
                Tok::Ident("c".into()),
                Tok::Eof,
            ]
        );
    }

    #[test]
    fn tracks_locations() {
        let toks = tokenize("a\n  b").unwrap();
        assert_eq!(toks[0].loc, Loc::new(1, 1));
        assert_eq!(toks[1].loc, Loc::new(2, 3));
    }

    #[test]
    fn rejects_bad_chars() {
        assert!(matches!(
            tokenize("a # b"),
            Err(LexError::UnexpectedChar { ch: '#', .. })
        ));
    }
}
