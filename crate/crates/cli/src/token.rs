//! Tokenizer for relation-spec documents.
//!
//! The token stream is whitespace-insensitive; `#` starts a comment that
//! runs to the end of the line. Identifiers may contain `-` (as in
//! `thm21-e` or `collapse-map`), with one carve-out so arrows survive:
//! a `-` only continues an identifier when the next character could
//! itself continue one, so `R->S` lexes as `R`, `->`, `S`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    /// Bare word: keywords and user names are distinguished by the parser.
    Ident(String),
    /// Unsigned decimal number.
    Num(u64),
    /// `--name` flag.
    Flag(String),
    /// `->`
    Arrow,
    Eq,
    Colon,
    Comma,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(s) => write!(f, "'{s}'"),
            TokenKind::Num(n) => write!(f, "number {n}"),
            TokenKind::Flag(s) => write!(f, "'--{s}'"),
            TokenKind::Arrow => write!(f, "'->'"),
            TokenKind::Eq => write!(f, "'='"),
            TokenKind::Colon => write!(f, "':'"),
            TokenKind::Comma => write!(f, "','"),
            TokenKind::LBrace => write!(f, "'{{'"),
            TokenKind::RBrace => write!(f, "'}}'"),
            TokenKind::LBracket => write!(f, "'['"),
            TokenKind::RBracket => write!(f, "']'"),
            TokenKind::LParen => write!(f, "'('"),
            TokenKind::RParen => write!(f, "')'"),
            TokenKind::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: u32,
    pub col: u32,
}

/// A syntax or validation diagnostic anchored to a source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: u32,
    pub col: u32,
    pub message: String,
}

impl ParseError {
    pub fn new(line: u32, col: u32, message: impl Into<String>) -> Self {
        ParseError {
            line,
            col,
            message: message.into(),
        }
    }

    pub fn at(token: &Token, message: impl Into<String>) -> Self {
        ParseError::new(token.line, token.col, message)
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, col {}: {}", self.line, self.col, self.message)
    }
}

impl std::error::Error for ParseError {}

fn is_ident_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_ident_continue(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_'
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    let mut line: u32 = 1;
    let mut col: u32 = 1;
    while i < chars.len() {
        let c = chars[i];
        let (tok_line, tok_col) = (line, col);
        let advance = |i: &mut usize, line: &mut u32, col: &mut u32| {
            if chars[*i] == '\n' {
                *line += 1;
                *col = 1;
            } else {
                *col += 1;
            }
            *i += 1;
        };
        if c.is_whitespace() {
            advance(&mut i, &mut line, &mut col);
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                advance(&mut i, &mut line, &mut col);
            }
            continue;
        }
        let kind = match c {
            '=' => {
                advance(&mut i, &mut line, &mut col);
                TokenKind::Eq
            }
            ':' => {
                advance(&mut i, &mut line, &mut col);
                TokenKind::Colon
            }
            ',' => {
                advance(&mut i, &mut line, &mut col);
                TokenKind::Comma
            }
            '{' => {
                advance(&mut i, &mut line, &mut col);
                TokenKind::LBrace
            }
            '}' => {
                advance(&mut i, &mut line, &mut col);
                TokenKind::RBrace
            }
            '[' => {
                advance(&mut i, &mut line, &mut col);
                TokenKind::LBracket
            }
            ']' => {
                advance(&mut i, &mut line, &mut col);
                TokenKind::RBracket
            }
            '(' => {
                advance(&mut i, &mut line, &mut col);
                TokenKind::LParen
            }
            ')' => {
                advance(&mut i, &mut line, &mut col);
                TokenKind::RParen
            }
            '-' => {
                if i + 1 < chars.len() && chars[i + 1] == '>' {
                    advance(&mut i, &mut line, &mut col);
                    advance(&mut i, &mut line, &mut col);
                    TokenKind::Arrow
                } else if i + 1 < chars.len() && chars[i + 1] == '-' {
                    advance(&mut i, &mut line, &mut col);
                    advance(&mut i, &mut line, &mut col);
                    if i >= chars.len() || !is_ident_start(chars[i]) {
                        return Err(ParseError::new(
                            tok_line,
                            tok_col,
                            "expected a flag name after '--'",
                        ));
                    }
                    let mut name = String::new();
                    while i < chars.len()
                        && (is_ident_continue(chars[i])
                            || (chars[i] == '-'
                                && i + 1 < chars.len()
                                && is_ident_continue(chars[i + 1])))
                    {
                        name.push(chars[i]);
                        advance(&mut i, &mut line, &mut col);
                    }
                    TokenKind::Flag(name)
                } else {
                    return Err(ParseError::new(
                        tok_line,
                        tok_col,
                        "unexpected character '-' (expected '->' or '--flag')",
                    ));
                }
            }
            _ if c.is_ascii_digit() => {
                let mut value: u64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i] as u64 - '0' as u64))
                        .ok_or_else(|| {
                            ParseError::new(tok_line, tok_col, "number does not fit in 64 bits")
                        })?;
                    advance(&mut i, &mut line, &mut col);
                }
                TokenKind::Num(value)
            }
            _ if is_ident_start(c) => {
                let mut name = String::new();
                while i < chars.len()
                    && (is_ident_continue(chars[i])
                        || (chars[i] == '-'
                            && i + 1 < chars.len()
                            && is_ident_continue(chars[i + 1])))
                {
                    name.push(chars[i]);
                    advance(&mut i, &mut line, &mut col);
                }
                TokenKind::Ident(name)
            }
            other => {
                return Err(ParseError::new(
                    tok_line,
                    tok_col,
                    format!("unexpected character '{other}'"),
                ));
            }
        };
        tokens.push(Token {
            kind,
            line: tok_line,
            col: tok_col,
        });
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        line,
        col,
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<TokenKind> {
        tokenize(text).unwrap().into_iter().map(|t| t.kind).collect()
    }

    #[test]
    fn arrows_terminate_identifiers() {
        assert_eq!(
            kinds("R->S"),
            vec![
                TokenKind::Ident("R".into()),
                TokenKind::Arrow,
                TokenKind::Ident("S".into()),
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn dashed_identifiers_and_flags() {
        assert_eq!(
            kinds("collapse-map thm21-e --image-bound 4"),
            vec![
                TokenKind::Ident("collapse-map".into()),
                TokenKind::Ident("thm21-e".into()),
                TokenKind::Flag("image-bound".into()),
                TokenKind::Num(4),
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn comments_and_whitespace_are_skipped() {
        assert_eq!(
            kinds("rel R = idn 3 # trailing note\n# full line\n  classes R"),
            kinds("rel R=idn 3 classes R")
        );
    }

    #[test]
    fn positions_point_at_token_starts() {
        let toks = tokenize("rel R\n  = idn 0").unwrap();
        let eq = toks.iter().find(|t| t.kind == TokenKind::Eq).unwrap();
        assert_eq!((eq.line, eq.col), (2, 3));
    }

    #[test]
    fn stray_characters_are_rejected_with_position() {
        let err = tokenize("rel R = idn 3;").unwrap_err();
        assert_eq!((err.line, err.col), (1, 14));
        assert!(err.message.contains("';'"));
    }
}
