use std::fmt;
use std::str::FromStr;

use rust_decimal::Decimal;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{Emotion, Formula};
use crate::Name;

/// Where and why the input could not be read. Lines and columns start at 1.
#[derive(Debug, Clone, PartialEq, Eq, Error, Serialize, Deserialize)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub expected: Vec<String>,
    pub found: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: ", self.line, self.column)?;
        match self.expected.as_slice() {
            [] => {}
            [one] => write!(f, "expected {one}, ")?,
            many => write!(f, "expected one of {}, ", many.join(", "))?,
        }
        write!(f, "found {}", self.found)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaSyntaxError {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
    #[error("negative degree `{literal}` at {line}:{column}")]
    NegativeDegree {
        line: usize,
        column: usize,
        literal: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Tok<'a> {
    Ident(&'a str),
    Number(&'a str),
    Bang,
    Arrow,
    Iff,
    Amp,
    Bar,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Semi,
    Eof,
}

impl Tok<'_> {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("`{s}`"),
            Tok::Number(s) => format!("`{s}`"),
            Tok::Bang => "`!`".into(),
            Tok::Arrow => "`->`".into(),
            Tok::Iff => "`<->`".into(),
            Tok::Amp => "`&`".into(),
            Tok::Bar => "`|`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBracket => "`[`".into(),
            Tok::RBracket => "`]`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Spanned<'a> {
    tok: Tok<'a>,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned<'_>>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    let (mut line, mut col) = (1, 1);
    let bytes = text.as_bytes();
    while let Some(&(i, c)) = chars.peek() {
        let start = (line, col);
        let mut advance = |n: usize, chars: &mut std::iter::Peekable<std::str::CharIndices>| {
            for _ in 0..n {
                chars.next();
            }
            col += n;
        };
        let single = match c {
            '!' => Some(Tok::Bang),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Bar),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            ';' => Some(Tok::Semi),
            _ => None,
        };
        if let Some(tok) = single {
            advance(1, &mut chars);
            out.push(Spanned { tok, line: start.0, column: start.1 });
            continue;
        }
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            advance(1, &mut chars);
            continue;
        }
        if text[i..].starts_with("->") {
            advance(2, &mut chars);
            out.push(Spanned { tok: Tok::Arrow, line: start.0, column: start.1 });
            continue;
        }
        if text[i..].starts_with("<->") {
            advance(3, &mut chars);
            out.push(Spanned { tok: Tok::Iff, line: start.0, column: start.1 });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut j = i;
            while j < bytes.len() && (bytes[j].is_ascii_alphanumeric() || bytes[j] == b'_') {
                j += 1;
            }
            advance(j - i, &mut chars);
            out.push(Spanned {
                tok: Tok::Ident(&text[i..j]),
                line: start.0,
                column: start.1,
            });
            continue;
        }
        if c.is_ascii_digit() || c == '-' || c == '.' {
            let mut j = i + 1;
            while j < bytes.len() && (bytes[j].is_ascii_digit() || bytes[j] == b'.') {
                j += 1;
            }
            advance(j - i, &mut chars);
            out.push(Spanned {
                tok: Tok::Number(&text[i..j]),
                line: start.0,
                column: start.1,
            });
            continue;
        }
        return Err(ParseError {
            line: start.0,
            column: start.1,
            expected: vec!["a formula token".into()],
            found: format!("`{c}`"),
        });
    }
    out.push(Spanned { tok: Tok::Eof, line, column: col });
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned<'a>>,
    pos: usize,
}

const UNARY_START: &[&str] = &["`!`", "`N`", "`Nbar`", "`K[`", "`H[`", "`S[`", "variable", "`(`"];

impl<'a> Parser<'a> {
    fn peek(&self) -> Tok<'a> {
        self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> Tok<'a> {
        self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Spanned<'a> {
        let t = self.toks[self.pos];
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> FormulaSyntaxError {
        let t = &self.toks[self.pos];
        FormulaSyntaxError::Parse(ParseError {
            line: t.line,
            column: t.column,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: t.tok.describe(),
        })
    }

    fn expect(&mut self, tok: Tok<'a>, what: &str) -> Result<(), FormulaSyntaxError> {
        if self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.error(&[what]))
        }
    }

    fn formula(&mut self) -> Result<Formula, FormulaSyntaxError> {
        let mut f = self.imp()?;
        while self.peek() == Tok::Iff {
            self.bump();
            let g = self.imp()?;
            f = Formula::iff(f, g);
        }
        Ok(f)
    }

    fn imp(&mut self) -> Result<Formula, FormulaSyntaxError> {
        let f = self.or()?;
        if self.peek() == Tok::Arrow {
            self.bump();
            let g = self.imp()?;
            return Ok(Formula::implies(f, g));
        }
        Ok(f)
    }

    fn or(&mut self) -> Result<Formula, FormulaSyntaxError> {
        let mut f = self.and()?;
        while self.peek() == Tok::Bar {
            self.bump();
            let g = self.and()?;
            f = Formula::or(f, g);
        }
        Ok(f)
    }

    fn and(&mut self) -> Result<Formula, FormulaSyntaxError> {
        let mut f = self.unary()?;
        while self.peek() == Tok::Amp {
            self.bump();
            let g = self.unary()?;
            f = Formula::and(f, g);
        }
        Ok(f)
    }

    fn ident(&mut self, what: &str) -> Result<Name, FormulaSyntaxError> {
        match self.peek() {
            Tok::Ident(s) if s != "N" && s != "Nbar" => {
                self.bump();
                Ok(Name::from(s))
            }
            _ => Err(self.error(&[what])),
        }
    }

    fn degree(&mut self) -> Result<Decimal, FormulaSyntaxError> {
        let t = self.toks[self.pos];
        let Tok::Number(lit) = &t.tok else {
            return Err(self.error(&["degree"]));
        };
        let d = Decimal::from_str(lit).map_err(|_| self.error(&["decimal degree"]))?;
        if d.is_sign_negative() && !d.is_zero() {
            return Err(FormulaSyntaxError::NegativeDegree {
                line: t.line,
                column: t.column,
                literal: lit.to_string(),
            });
        }
        self.bump();
        Ok(d)
    }

    fn unary(&mut self) -> Result<Formula, FormulaSyntaxError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(s) if s == "N" => {
                self.bump();
                Ok(Formula::nec(self.unary()?))
            }
            Tok::Ident(s) if s == "Nbar" => {
                self.bump();
                Ok(Formula::nbar(self.unary()?))
            }
            Tok::Ident(s) if matches!(s, "K" | "H" | "S") && self.peek_at(1) == Tok::LBracket => {
                self.bump();
                self.bump();
                let agent = self.ident("agent")?;
                let degree = if s != "K" && self.peek() == Tok::Semi {
                    self.bump();
                    Some(self.degree()?)
                } else {
                    None
                };
                self.expect(Tok::RBracket, if s == "K" { "`]`" } else { "`]` or `;`" })?;
                let body = self.unary()?;
                let e = if s == "H" { Emotion::H } else { Emotion::S };
                Ok(match (s, degree) {
                    ("K", _) => Formula::knows(agent, body),
                    (_, None) => Formula::emotion(e, agent, body),
                    (_, Some(d)) => Formula::emotion_deg(e, agent, d, body)
                        .expect("degree sign already checked"),
                })
            }
            Tok::Ident(_) => Ok(Formula::var(self.ident("variable")?)),
            Tok::LParen => {
                self.bump();
                let f = self.formula()?;
                self.expect(Tok::RParen, "`)`")?;
                Ok(f)
            }
            _ => Err(self.error(UNARY_START)),
        }
    }
}

/// Parses the ASCII formula syntax. Sugar (`&`, `|`, `<->`, `Nbar`) is
/// expanded into primitives.
pub fn parse_formula(text: &str) -> Result<Formula, FormulaSyntaxError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.formula()?;
    if p.peek() != Tok::Eof {
        return Err(p.error(&["`->`", "`<->`", "`&`", "`|`", "end of input"]));
    }
    Ok(f)
}
