//! Text formats: a recursive-descent parser for polynomial expressions and
//! a reader for the `Dx^k` operator syntax.
//!
//! Grammar (whitespace insignificant, implicit multiplication rejected):
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ['-'] factor ('*' factor)*
//! factor := primary ('^' nonneg-int)*
//! primary := coefficient | variable | '(' expr ')'
//! coefficient := optionally signed decimal integer
//! variable := letter (letter | digit | '_')*
//! ```

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::BigInt;

use divpow_core::{DividedPowerOp, Polynomial, VarTable};

/// A parse failure, carrying a 1-based character column.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub column: usize,
    pub message: String,
}

impl ParseError {
    fn new(column: usize, message: impl Into<String>) -> ParseError {
        ParseError { column, message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "column {}: {}", self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::Ident(s) => write!(f, "identifier `{s}`"),
            Tok::Plus => write!(f, "`+`"),
            Tok::Minus => write!(f, "`-`"),
            Tok::Star => write!(f, "`*`"),
            Tok::Caret => write!(f, "`^`"),
            Tok::LParen => write!(f, "`(`"),
            Tok::RParen => write!(f, "`)`"),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(Tok, usize)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let col = i + 1;
        let c = chars[i];
        match c {
            c if c.is_whitespace() => i += 1,
            '+' => { out.push((Tok::Plus, col)); i += 1; }
            '-' => { out.push((Tok::Minus, col)); i += 1; }
            '*' => { out.push((Tok::Star, col)); i += 1; }
            '^' => { out.push((Tok::Caret, col)); i += 1; }
            '(' => { out.push((Tok::LParen, col)); i += 1; }
            ')' => { out.push((Tok::RParen, col)); i += 1; }
            c if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                let n = BigInt::from_str(&digits)
                    .map_err(|e| ParseError::new(col, format!("bad integer: {e}")))?;
                out.push((Tok::Int(n), col));
            }
            c if c.is_alphabetic() => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_alphanumeric() || chars[i] == '_')
                {
                    i += 1;
                }
                out.push((Tok::Ident(chars[start..i].iter().collect()), col));
            }
            other => {
                return Err(ParseError::new(col, format!("unexpected character `{other}`")));
            }
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    vars: &'a Arc<VarTable>,
    end_column: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn here(&self) -> usize {
        self.toks
            .get(self.pos)
            .map(|(_, c)| *c)
            .unwrap_or(self.end_column)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn eat(&mut self, want: &Tok) -> bool {
        if self.peek() == Some(want) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.term()?;
        loop {
            if self.eat(&Tok::Plus) {
                acc = acc.try_add(&self.term()?).expect("one table");
            } else if self.eat(&Tok::Minus) {
                acc = acc.try_sub(&self.term()?).expect("one table");
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let negate = self.eat(&Tok::Minus);
        let mut acc = self.factor()?;
        while self.eat(&Tok::Star) {
            acc = acc.try_mul(&self.factor()?).expect("one table");
        }
        if negate {
            acc = acc.negate();
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.primary()?;
        while self.eat(&Tok::Caret) {
            let col = self.here();
            match self.bump() {
                Some(Tok::Int(n)) => {
                    let e = u32::try_from(&n).map_err(|_| {
                        ParseError::new(col, format!("exponent {n} out of range"))
                    })?;
                    acc = acc.pow(e);
                }
                Some(t) => {
                    return Err(ParseError::new(
                        col,
                        format!("expected a nonnegative integer exponent, found {t}"),
                    ));
                }
                None => {
                    return Err(ParseError::new(col, "expected an exponent after `^`"));
                }
            }
        }
        Ok(acc)
    }

    fn primary(&mut self) -> Result<Polynomial, ParseError> {
        let col = self.here();
        match self.bump() {
            Some(Tok::Int(n)) => Ok(Polynomial::constant(self.vars, n)),
            Some(Tok::Minus) => {
                // a signed coefficient; `-x` spells the sign at term level
                let col = self.here();
                match self.bump() {
                    Some(Tok::Int(n)) => Ok(Polynomial::constant(self.vars, -n)),
                    Some(t) => Err(ParseError::new(
                        col,
                        format!("expected an integer after the sign, found {t}"),
                    )),
                    None => Err(ParseError::new(col, "expected an integer after the sign")),
                }
            }
            Some(Tok::Ident(name)) => match self.vars.index_of(&name) {
                Some(i) => Ok(Polynomial::variable(self.vars, i)),
                None => Err(ParseError::new(col, format!("unknown variable `{name}`"))),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                if self.eat(&Tok::RParen) {
                    Ok(inner)
                } else {
                    Err(ParseError::new(self.here(), "expected `)`"))
                }
            }
            Some(t) => Err(ParseError::new(col, format!("expected a factor, found {t}"))),
            None => Err(ParseError::new(col, "expected a factor")),
        }
    }
}

/// Parses an expression against the declared variables. The inverse of
/// rendering: `parse(render(p)) == p` for canonical `p`.
pub fn parse_poly(src: &str, vars: &Arc<VarTable>) -> Result<Polynomial, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks,
        pos: 0,
        vars,
        end_column: src.chars().count() + 1,
    };
    let poly = p.expr()?;
    match p.peek() {
        None => Ok(poly),
        Some(t) => Err(ParseError::new(
            p.here(),
            format!("expected `+`, `-` or `*`, found {t}"),
        )),
    }
}

/// Renders the canonical form; alias for the `Display` implementation.
pub fn render_poly(p: &Polynomial) -> String {
    p.to_string()
}

/// Parses operator syntax like `Du^2 Dy^2 Dz^2`: whitespace-separated
/// `D<var>[^<order>]` tokens, composed left to right (so a repeated
/// variable picks up the composition scalar).
pub fn parse_operator(src: &str, vars: &Arc<VarTable>) -> Result<DividedPowerOp, ParseError> {
    let mut op = DividedPowerOp::identity(vars);
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        if chars[i].is_whitespace() {
            i += 1;
            continue;
        }
        let start = i;
        while i < chars.len() && !chars[i].is_whitespace() {
            i += 1;
        }
        let raw: String = chars[start..i].iter().collect();
        let col = start + 1;
        let body = raw.strip_prefix('D').ok_or_else(|| {
            ParseError::new(col, format!("expected `D<var>[^k]`, found `{raw}`"))
        })?;
        let (name, order) = match body.split_once('^') {
            None => (body, 1u32),
            Some((name, digits)) => {
                let k = digits.parse::<u32>().map_err(|_| {
                    ParseError::new(col, format!("bad operator order `{digits}`"))
                })?;
                (name, k)
            }
        };
        let var = vars
            .index_of(name)
            .ok_or_else(|| ParseError::new(col, format!("unknown variable `{name}`")))?;
        op = op.compose(&DividedPowerOp::partial(vars, var, order));
    }
    Ok(op)
}
