//! Recursive-descent parser for both surface dialects.
//!
//! ```text
//! formula := quant | impl
//! quant   := ("forall" | "exists") var+ ( "(" formula ")" | quant )
//! impl    := disj [ "->" impl ]
//! disj    := conj { "|" conj }
//! conj    := atom { "&" atom }
//! atom    := "!" atom | "(" formula ")" | term "=" term | term "!=" term
//!
//! multiplicative:
//!   term   := factor { "*" factor }
//!   factor := base { "^" int | "^-" int }
//!   base   := ident | "1" | "(" term ")"
//!
//! additive:
//!   term    := [ "-" ] summand { ("+" | "-") summand }
//!   summand := int [ "·" ] primary | "0" | primary
//!   primary := ident | "(" term ")"
//! ```
//!
//! Identifiers bound by an enclosing quantifier are variables; otherwise a
//! declared parameter name becomes a parameter constant, and anything else
//! is a free variable (or an error when the free variables are declared).

use std::collections::BTreeSet;

use thiserror::Error;

use super::ast::{Formula, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dialect {
    Multiplicative,
    Additive,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("unknown constant {name:?} at {position}")]
    UnknownConstant { name: String, position: usize },
}

impl ParseError {
    fn position(&self) -> usize {
        match self {
            ParseError::Syntax { position, .. } | ParseError::UnknownConstant { position, .. } => *position,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(i64),
    Forall,
    Exists,
    LParen,
    RParen,
    Eq,
    Ne,
    Bang,
    Amp,
    Pipe,
    Arrow,
    Star,
    Caret,
    Plus,
    Minus,
    Dot,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        if c.is_ascii_digit() {
            let mut end = pos;
            while let Some(&(p, d)) = chars.peek() {
                if !d.is_ascii_digit() {
                    break;
                }
                end = p + d.len_utf8();
                chars.next();
            }
            let value = text[pos..end].parse::<i64>().map_err(|_| ParseError::Syntax {
                position: pos,
                message: "integer literal out of range".into(),
            })?;
            out.push((Tok::Int(value), pos));
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let mut end = pos;
            while let Some(&(p, d)) = chars.peek() {
                if !(d.is_alphanumeric() || d == '_') {
                    break;
                }
                end = p + d.len_utf8();
                chars.next();
            }
            let word = &text[pos..end];
            let tok = match word {
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => Tok::Ident(word.to_string()),
            };
            out.push((tok, pos));
            continue;
        }
        chars.next();
        let next = chars.peek().map(|&(_, d)| d);
        let tok = match (c, next) {
            ('!', Some('=')) => {
                chars.next();
                Tok::Ne
            }
            ('-', Some('>')) => {
                chars.next();
                Tok::Arrow
            }
            ('!', _) | ('¬', _) => Tok::Bang,
            ('(', _) => Tok::LParen,
            (')', _) => Tok::RParen,
            ('=', _) => Tok::Eq,
            ('≠', _) => Tok::Ne,
            ('&', _) | ('∧', _) => Tok::Amp,
            ('|', _) | ('∨', _) => Tok::Pipe,
            ('→', _) | ('⇒', _) => Tok::Arrow,
            ('*', _) => Tok::Star,
            ('^', _) => Tok::Caret,
            ('+', _) => Tok::Plus,
            ('-', _) => Tok::Minus,
            ('·', _) | ('⋅', _) => Tok::Dot,
            ('∀', _) => Tok::Forall,
            ('∃', _) => Tok::Exists,
            _ => {
                return Err(ParseError::Syntax { position: pos, message: format!("unexpected character {c:?}") })
            }
        };
        out.push((tok, pos));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

/// Parser configuration: dialect, declared parameter names and, optionally,
/// the complete list of allowed free variables.
#[derive(Debug, Clone)]
pub struct FormulaParser {
    dialect: Dialect,
    params: BTreeSet<String>,
    free_vars: Option<BTreeSet<String>>,
}

impl FormulaParser {
    pub fn new(dialect: Dialect) -> Self {
        FormulaParser { dialect, params: BTreeSet::new(), free_vars: None }
    }

    pub fn params<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.params = names.into_iter().map(Into::into).collect();
        self
    }

    /// Restricts free variables to `names`; any other unbound identifier
    /// that is not a parameter is reported as an unknown constant.
    pub fn free_vars<S: Into<String>>(mut self, names: impl IntoIterator<Item = S>) -> Self {
        self.free_vars = Some(names.into_iter().map(Into::into).collect());
        self
    }

    pub fn parse(&self, text: &str) -> Result<Formula, ParseError> {
        let tokens = lex(text)?;
        let mut p = Parser { cfg: self, tokens, pos: 0, bound: Vec::new() };
        let f = p.formula()?;
        p.expect(Tok::End, "end of input")?;
        Ok(f)
    }

    pub fn parse_term(&self, text: &str) -> Result<Term, ParseError> {
        let tokens = lex(text)?;
        let mut p = Parser { cfg: self, tokens, pos: 0, bound: Vec::new() };
        let t = p.term()?;
        p.expect(Tok::End, "end of input")?;
        Ok(t)
    }
}

/// Parses `text` in `dialect`, treating `params` as parameter constants.
pub fn parse_formula(text: &str, dialect: Dialect, params: &[&str]) -> Result<Formula, ParseError> {
    FormulaParser::new(dialect).params(params.iter().copied()).parse(text)
}

struct Parser<'c> {
    cfg: &'c FormulaParser,
    tokens: Vec<(Tok, usize)>,
    pos: usize,
    bound: Vec<String>,
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].0
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].0
    }

    fn position(&self) -> usize {
        self.tokens[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.pos].0.clone();
        if t != Tok::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self.peek() == tok {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError::Syntax { position: self.position(), message: message.into() }
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        if self.eat(&tok) {
            Ok(())
        } else {
            Err(self.error(format!("expected {what}, found {:?}", self.peek())))
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Forall | Tok::Exists => self.quant(),
            _ => self.implication(),
        }
    }

    fn quant(&mut self) -> Result<Formula, ParseError> {
        let universal = matches!(self.bump(), Tok::Forall);
        let mut vars = Vec::new();
        while let Tok::Ident(name) = self.peek().clone() {
            self.bump();
            vars.push(name);
        }
        if vars.is_empty() {
            return Err(self.error("expected a variable after quantifier"));
        }
        let depth = self.bound.len();
        self.bound.extend(vars.iter().cloned());
        let body = match self.peek() {
            Tok::Forall | Tok::Exists => self.quant(),
            Tok::LParen => {
                self.bump();
                let f = self.formula();
                f.and_then(|f| self.expect(Tok::RParen, "')'").map(|_| f))
            }
            other => Err(self.error(format!("expected '(' after quantified variables, found {other:?}"))),
        };
        self.bound.truncate(depth);
        let body = Box::new(body?);
        Ok(if universal { Formula::ForAll(vars, body) } else { Formula::Exists(vars, body) })
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.disjunction()?;
        if self.eat(&Tok::Arrow) {
            let rhs = self.implication()?;
            Ok(Formula::Implies(Box::new(lhs), Box::new(rhs)))
        } else {
            Ok(lhs)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.conjunction()?];
        while self.eat(&Tok::Pipe) {
            parts.push(self.conjunction()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::Or(parts) })
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut parts = vec![self.atom()?];
        while self.eat(&Tok::Amp) {
            parts.push(self.atom()?);
        }
        Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Formula::And(parts) })
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(self.atom()?.negate())
            }
            Tok::LParen => {
                let start = self.pos;
                self.bump();
                let grouped = self.formula().and_then(|f| self.expect(Tok::RParen, "')'").map(|_| f));
                if grouped.is_ok() && !self.continues_term() {
                    return grouped;
                }
                self.pos = start;
                match self.comparison() {
                    Ok(f) => Ok(f),
                    Err(e) => match grouped {
                        Err(g) if g.position() > e.position() => Err(g),
                        _ => Err(e),
                    },
                }
            }
            _ => self.comparison(),
        }
    }

    /// True if the next token can only continue a term, so a parenthesised
    /// group just read must have been a term.
    fn continues_term(&self) -> bool {
        matches!(
            self.peek(),
            Tok::Eq | Tok::Ne | Tok::Star | Tok::Caret | Tok::Plus | Tok::Minus | Tok::Dot
        )
    }

    fn comparison(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.term()?;
        if self.eat(&Tok::Eq) {
            Ok(Formula::Eq(lhs, self.term()?))
        } else if self.eat(&Tok::Ne) {
            Ok(Formula::ne(lhs, self.term()?))
        } else {
            Err(self.error(format!("expected '=' or '!=', found {:?}", self.peek())))
        }
    }

    fn term(&mut self) -> Result<Term, ParseError> {
        match self.cfg.dialect {
            Dialect::Multiplicative => self.mul_term(),
            Dialect::Additive => self.add_term(),
        }
    }

    fn resolve(&self, name: String, position: usize) -> Result<Term, ParseError> {
        if self.bound.contains(&name) {
            return Ok(Term::Var(name));
        }
        if self.cfg.params.contains(&name) {
            return Ok(Term::Param(name));
        }
        match &self.cfg.free_vars {
            Some(allowed) if !allowed.contains(&name) => Err(ParseError::UnknownConstant { name, position }),
            _ => Ok(Term::Var(name)),
        }
    }

    fn mul_term(&mut self) -> Result<Term, ParseError> {
        let mut acc = self.mul_factor()?;
        while matches!(self.peek(), Tok::Star | Tok::Dot) {
            self.bump();
            acc = acc.mul(self.mul_factor()?);
        }
        Ok(acc)
    }

    fn mul_factor(&mut self) -> Result<Term, ParseError> {
        let position = self.position();
        let mut base = match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                self.resolve(name, position)?
            }
            Tok::Int(1) => {
                self.bump();
                Term::Identity
            }
            Tok::LParen => {
                self.bump();
                let t = self.mul_term()?;
                self.expect(Tok::RParen, "')'")?;
                t
            }
            other => return Err(self.error(format!("expected a term, found {other:?}"))),
        };
        while self.eat(&Tok::Caret) {
            let negative = self.eat(&Tok::Minus);
            let k = match *self.peek() {
                Tok::Int(k) => {
                    self.bump();
                    k
                }
                ref other => return Err(self.error(format!("expected an exponent, found {other:?}"))),
            };
            base = match (negative, k) {
                (true, 1) => base.inverse(),
                (true, k) => base.pow(-k),
                (false, k) => base.pow(k),
            };
        }
        Ok(base)
    }

    fn add_term(&mut self) -> Result<Term, ParseError> {
        let mut acc = if self.eat(&Tok::Minus) { self.summand()?.inverse() } else { self.summand()? };
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.mul(self.summand()?);
            } else if self.eat(&Tok::Minus) {
                acc = acc.mul(self.summand()?.inverse());
            } else {
                return Ok(acc);
            }
        }
    }

    fn summand(&mut self) -> Result<Term, ParseError> {
        if let Tok::Int(k) = *self.peek() {
            let scaled = matches!(self.peek_at(1), Tok::Ident(_) | Tok::LParen | Tok::Dot);
            if scaled {
                self.bump();
                self.eat(&Tok::Dot);
                return Ok(self.primary()?.pow(k));
            }
            if k == 0 {
                self.bump();
                return Ok(Term::Identity);
            }
            return Err(self.error(format!("bare integer {k} is not a term")));
        }
        self.primary()
    }

    fn primary(&mut self) -> Result<Term, ParseError> {
        let position = self.position();
        match self.peek().clone() {
            Tok::Ident(name) => {
                self.bump();
                self.resolve(name, position)
            }
            Tok::LParen => {
                self.bump();
                let t = self.add_term()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(t)
            }
            other => Err(self.error(format!("expected a term, found {other:?}"))),
        }
    }
}
