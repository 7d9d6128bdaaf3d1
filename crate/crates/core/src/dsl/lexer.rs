//! Tokenizer for the modeling language.
//!
//! Keywords are contextual: everything word-like lexes as an identifier and
//! the parser decides what it means, so message ids like `s` or `min` stay
//! usable. `#` starts a comment that runs to end of line. LF and CRLF are
//! both accepted.

use crate::decimal::Decimal;
use crate::diag::{Diagnostic, DiagnosticCode as Code, Location, SourceSpan};
use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Str(String),
    Number(Decimal),
    LBrace,
    RBrace,
    LParen,
    RParen,
    Colon,
    Semi,
    Comma,
    Arrow,
    DotDot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Str(_) => write!(f, "string literal"),
            Tok::Number(n) => write!(f, "`{n}`"),
            Tok::LBrace => write!(f, "`{{`"),
            Tok::RBrace => write!(f, "`}}`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
            Tok::Colon => write!(f, "`:`"),
            Tok::Semi => write!(f, "`;`"),
            Tok::Comma => write!(f, "`,`"),
            Tok::Arrow => write!(f, "`->`"),
            Tok::DotDot => write!(f, "`..`"),
            Tok::Eof => write!(f, "end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub tok: Tok,
    pub span: SourceSpan,
}

pub struct Lexer<'a> {
    src: &'a [u8],
    file: String,
    pos: usize,
    line: u32,
    col: u32,
    pub diagnostics: Vec<Diagnostic>,
}

impl<'a> Lexer<'a> {
    pub fn new(src: &'a str, file: &str) -> Self {
        Self {
            src: src.as_bytes(),
            file: file.to_string(),
            pos: 0,
            line: 1,
            col: 1,
            diagnostics: Vec::new(),
        }
    }

    /// Tokenizes the whole input. Illegal characters are reported and
    /// skipped so the stream always ends with `Eof`.
    pub fn tokenize(mut self) -> (Vec<Token>, Vec<Diagnostic>) {
        let mut tokens = Vec::new();
        loop {
            self.skip_trivia();
            let start = self.mark();
            let Some(byte) = self.peek() else {
                tokens.push(self.token(Tok::Eof, start));
                break;
            };
            let tok = match byte {
                b'{' => self.single(Tok::LBrace),
                b'}' => self.single(Tok::RBrace),
                b'(' => self.single(Tok::LParen),
                b')' => self.single(Tok::RParen),
                b':' => self.single(Tok::Colon),
                b';' => self.single(Tok::Semi),
                b',' => self.single(Tok::Comma),
                b'-' => {
                    if self.peek_at(1) == Some(b'>') {
                        self.bump();
                        self.bump();
                        Some(Tok::Arrow)
                    } else if self.peek_at(1).is_some_and(|b| b.is_ascii_digit()) {
                        self.lex_number()
                    } else {
                        self.bump();
                        self.illegal(start, '-');
                        None
                    }
                }
                b'.' => {
                    if self.peek_at(1) == Some(b'.') {
                        self.bump();
                        self.bump();
                        Some(Tok::DotDot)
                    } else {
                        self.bump();
                        self.illegal(start, '.');
                        None
                    }
                }
                b'"' => self.lex_string(start),
                b if b.is_ascii_digit() => self.lex_number(),
                b if b.is_ascii_alphabetic() => Some(self.lex_ident()),
                _ => {
                    let ch = self.bump_char();
                    self.illegal(start, ch);
                    None
                }
            };
            if let Some(tok) = tok {
                tokens.push(self.token(tok, start));
            }
        }
        (tokens, self.diagnostics)
    }

    fn skip_trivia(&mut self) {
        while let Some(b) = self.peek() {
            match b {
                b' ' | b'\t' | b'\r' | b'\n' => {
                    self.bump();
                }
                b'#' => {
                    while let Some(b) = self.peek() {
                        if b == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => break,
            }
        }
    }

    fn lex_ident(&mut self) -> Tok {
        let start = self.pos;
        while let Some(b) = self.peek() {
            if b.is_ascii_alphanumeric() || b == b'_' {
                self.bump();
            } else {
                break;
            }
        }
        Tok::Ident(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn lex_number(&mut self) -> Option<Tok> {
        let start = self.pos;
        let mark = self.mark();
        if self.peek() == Some(b'-') {
            self.bump();
        }
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.bump();
        }
        // A dot only continues the number if followed by a digit; `0..7`
        // must leave the `..` alone.
        if self.peek() == Some(b'.') && self.peek_at(1).is_some_and(|b| b.is_ascii_digit()) {
            self.bump();
            while self.peek().is_some_and(|b| b.is_ascii_digit()) {
                self.bump();
            }
        }
        let text = String::from_utf8_lossy(&self.src[start..self.pos]).into_owned();
        match text.parse::<Decimal>() {
            Ok(d) => Some(Tok::Number(d)),
            Err(_) => {
                let span = self.span_from(mark);
                self.diagnostics.push(Diagnostic::error(
                    Code::MalformedNumber,
                    Location::Span(span),
                    format!("malformed number `{text}`"),
                ));
                None
            }
        }
    }

    fn lex_string(&mut self, start: (u32, u32)) -> Option<Tok> {
        self.bump(); // opening quote
        let mut value = String::new();
        loop {
            match self.peek() {
                None | Some(b'\n') => {
                    let span = self.span_from(start);
                    self.diagnostics.push(Diagnostic::error(
                        Code::UnterminatedString,
                        Location::Span(span),
                        "string literal is not terminated before end of line",
                    ));
                    return None;
                }
                Some(b'"') => {
                    self.bump();
                    return Some(Tok::Str(value));
                }
                Some(b'\\') => {
                    self.bump();
                    match self.peek() {
                        Some(b'"') => {
                            value.push('"');
                            self.bump();
                        }
                        Some(b'\\') => {
                            value.push('\\');
                            self.bump();
                        }
                        _ => value.push('\\'),
                    }
                }
                Some(_) => {
                    value.push(self.bump_char());
                }
            }
        }
    }

    fn illegal(&mut self, start: (u32, u32), ch: char) {
        let span = self.span_from(start);
        self.diagnostics.push(Diagnostic::error(
            Code::IllegalCharacter,
            Location::Span(span),
            format!("illegal character `{}`", ch.escape_default()),
        ));
    }

    fn single(&mut self, tok: Tok) -> Option<Tok> {
        self.bump();
        Some(tok)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<u8> {
        self.src.get(self.pos + offset).copied()
    }

    /// Advances one byte, maintaining the line/column counters.
    fn bump(&mut self) {
        if let Some(b) = self.peek() {
            self.pos += 1;
            if b == b'\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
        }
    }

    /// Advances one full character (for diagnostics on non-ASCII input).
    fn bump_char(&mut self) -> char {
        let rest = String::from_utf8_lossy(&self.src[self.pos..]);
        let ch = rest.chars().next().unwrap_or('\u{fffd}');
        for _ in 0..ch.len_utf8().max(1) {
            self.bump();
        }
        ch
    }

    fn mark(&self) -> (u32, u32) {
        (self.line, self.col)
    }

    fn span_from(&self, start: (u32, u32)) -> SourceSpan {
        SourceSpan::new(self.file.clone(), start, (self.line, self.col))
    }

    fn token(&self, tok: Tok, start: (u32, u32)) -> Token {
        Token {
            tok,
            span: self.span_from(start),
        }
    }
}
