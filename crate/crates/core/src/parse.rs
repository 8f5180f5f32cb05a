//! Recursive-descent parser for the formula language.
//!
//! Precedence, lowest first: `|`, `&`, the until family (`U`, `U{d}`,
//! `O{d,z}`, right associative), then the prefix operators `!`, `X`, `F`,
//! `G`, `F{d}`, `G{d}` and `scale{λ}`. Whitespace is insignificant and `#`
//! starts a comment that runs to the end of the line.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::discount::Discount;
use crate::formula::Formula;
use crate::rational::{in_unit_interval, one, parse_rational, Rational};
use crate::ParseError;

const KEYWORDS: &[&str] = &["true", "false", "X", "F", "G", "U", "O", "scale", "exp", "recip"];

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Keyword(&'static str),
    Number(String),
    Sym(char),
    End,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, column);
        if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        }
        if c == '#' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let tok = if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                word.push(chars[i]);
                i += 1;
            }
            column += word.len();
            match KEYWORDS.iter().find(|k| **k == word) {
                Some(k) => Tok::Keyword(k),
                None => Tok::Ident(word),
            }
        } else if c.is_ascii_digit() {
            let mut digits = String::new();
            while i < chars.len() && chars[i].is_ascii_digit() {
                digits.push(chars[i]);
                i += 1;
            }
            column += digits.len();
            Tok::Number(digits)
        } else if "!|&(){},/".contains(c) {
            i += 1;
            column += 1;
            Tok::Sym(c)
        } else {
            return Err(ParseError { line, column, message: format!("unexpected character `{c}`") });
        };
        out.push(Token { tok, line: start.0, column: start.1 });
    }
    out.push(Token { tok: Tok::End, line, column });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error_here(&self, message: impl Into<String>) -> ParseError {
        let t = &self.tokens[self.pos];
        ParseError { line: t.line, column: t.column, message: message.into() }
    }

    fn describe(&self) -> String {
        match self.peek() {
            Tok::Ident(s) | Tok::Number(s) => format!("`{s}`"),
            Tok::Keyword(k) => format!("`{k}`"),
            Tok::Sym(c) => format!("`{c}`"),
            Tok::End => "end of input".to_string(),
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<(), ParseError> {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.error_here(format!("expected `{c}`, found {}", self.describe())))
        }
    }

    fn eat_sym(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat_sym('|') {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.until()?;
        while self.eat_sym('&') {
            let rhs = self.until()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn until(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.unary()?;
        match self.peek() {
            Tok::Keyword("U") => {
                self.bump();
                if self.eat_sym('{') {
                    let d = self.discount()?;
                    self.expect_sym('}')?;
                    let rhs = self.until()?;
                    Ok(Formula::disc_until(lhs, d, rhs))
                } else {
                    let rhs = self.until()?;
                    Ok(Formula::until(lhs, rhs))
                }
            }
            Tok::Keyword("O") => {
                self.bump();
                self.expect_sym('{')?;
                let d = self.discount()?;
                self.expect_sym(',')?;
                let z = self.rational()?;
                if !in_unit_interval(&z) {
                    return Err(self.error_here(format!("tendency limit {z} out of range [0,1]")));
                }
                self.expect_sym('}')?;
                let rhs = self.until()?;
                Ok(Formula::tend(lhs, d, z, rhs))
            }
            _ => Ok(lhs),
        }
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Sym('!') => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Keyword("X") => {
                self.bump();
                Ok(Formula::next(self.unary()?))
            }
            Tok::Keyword(k @ ("F" | "G")) => {
                self.bump();
                let disc = if self.eat_sym('{') {
                    let d = self.discount()?;
                    self.expect_sym('}')?;
                    Some(d)
                } else {
                    None
                };
                let body = self.unary()?;
                Ok(match (k, disc) {
                    ("F", None) => Formula::eventually(body),
                    ("F", Some(d)) => Formula::disc_eventually(d, body),
                    (_, None) => Formula::always(body),
                    (_, Some(d)) => Formula::disc_always(d, body),
                })
            }
            Tok::Keyword("scale") => {
                self.bump();
                self.expect_sym('{')?;
                let l = self.rational()?;
                if l.is_zero() || l >= one() {
                    return Err(self.error_here(format!("scale factor {l} out of range (0,1)")));
                }
                self.expect_sym('}')?;
                Ok(Formula::scale(l, self.unary()?))
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Tok::Keyword("true") => {
                self.bump();
                Ok(Formula::True)
            }
            Tok::Keyword("false") => {
                self.bump();
                Ok(Formula::False)
            }
            Tok::Ident(name) => {
                self.bump();
                Ok(Formula::Atom(name))
            }
            Tok::Sym('(') => {
                self.bump();
                let f = self.or()?;
                self.expect_sym(')')?;
                Ok(f)
            }
            _ => Err(self.error_here(format!("expected a formula, found {}", self.describe()))),
        }
    }

    fn discount(&mut self) -> Result<Discount, ParseError> {
        match self.peek() {
            Tok::Keyword("exp") => {
                self.bump();
                self.expect_sym('(')?;
                let l = self.rational()?;
                let at = self.error_here("");
                self.expect_sym(')')?;
                Discount::exponential(l.clone())
                    .map_err(|_| ParseError { message: format!("discount factor {l} out of range (0,1)"), ..at })
            }
            Tok::Keyword("recip") => {
                self.bump();
                Ok(Discount::reciprocal())
            }
            _ => Err(self.error_here(format!("expected a discount (`exp(λ)` or `recip`), found {}", self.describe()))),
        }
    }

    fn rational(&mut self) -> Result<Rational, ParseError> {
        let Tok::Number(num) = self.peek().clone() else {
            return Err(self.error_here(format!("expected a rational, found {}", self.describe())));
        };
        let at = self.error_here("");
        self.bump();
        let mut text = num;
        if self.eat_sym('/') {
            let Tok::Number(den) = self.peek().clone() else {
                return Err(self.error_here(format!("expected a denominator, found {}", self.describe())));
            };
            self.bump();
            text = format!("{text}/{den}");
        }
        parse_rational(&text).ok_or(ParseError { message: format!("invalid rational `{text}`"), ..at })
    }
}

/// Parses and desugars a formula.
pub fn parse_formula(text: &str) -> Result<Formula, ParseError> {
    let mut p = Parser { tokens: lex(text)?, pos: 0 };
    let f = p.or()?;
    if *p.peek() != Tok::End {
        return Err(p.error_here(format!("unexpected {}", p.describe())));
    }
    Ok(f)
}
