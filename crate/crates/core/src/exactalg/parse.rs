//! Recursive-descent parser for the polynomial text grammar.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*
//! factor := '-' factor | atom ['^' uint]
//! atom   := uint | ident | '(' expr ')'
//! ```
//! Division is allowed only by nonzero constants. `λ` is accepted as an alias of `lambda`.

use num_bigint::BigInt;
use num_rational::BigRational;

use super::poly::MultiPoly;
use super::vars::LAMBDA;
use super::AlgError;

pub fn parse_poly(input: &str) -> Result<MultiPoly, AlgError> {
    let tokens = tokenize(input)?;
    let mut p = Parser { tokens, pos: 0, src: input };
    let e = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(p.error("trailing input"));
    }
    Ok(e)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>, AlgError> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            out.push(Tok::Num(text.parse().expect("digits")));
        } else if c == 'λ' {
            out.push(Tok::Ident(LAMBDA.to_string()));
            i += 1;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else if c == '−' {
            out.push(Tok::Op('-'));
            i += 1;
        } else {
            return Err(AlgError::Parse {
                input: s.to_string(),
                message: format!("unexpected character '{c}'"),
            });
        }
    }
    Ok(out)
}

struct Parser<'a> {
    tokens: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> AlgError {
        AlgError::Parse {
            input: self.src.to_string(),
            message: format!("{msg} at token {}", self.pos),
        }
    }

    fn peek_op(&self) -> Option<char> {
        match self.tokens.get(self.pos) {
            Some(Tok::Op(c)) => Some(*c),
            _ => None,
        }
    }

    fn expr(&mut self) -> Result<MultiPoly, AlgError> {
        let mut acc = match self.peek_op() {
            Some('-') => {
                self.pos += 1;
                -self.term()?
            }
            Some('+') => {
                self.pos += 1;
                self.term()?
            }
            _ => self.term()?,
        };
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.term()?;
            acc = if op == '+' { &acc + &rhs } else { &acc - &rhs };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<MultiPoly, AlgError> {
        let mut acc = self.factor()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            self.pos += 1;
            let rhs = self.factor()?;
            if op == '*' {
                acc = &acc * &rhs;
            } else {
                if !rhs.is_constant() || rhs.is_zero() {
                    return Err(self.error("division by a non-constant or zero"));
                }
                acc = acc.scale(&(BigRational::from_integer(1.into()) / rhs.constant_value()));
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<MultiPoly, AlgError> {
        if self.peek_op() == Some('-') {
            self.pos += 1;
            return Ok(-self.factor()?);
        }
        let base = self.atom()?;
        if self.peek_op() == Some('^') {
            self.pos += 1;
            match self.tokens.get(self.pos) {
                Some(Tok::Num(n)) => {
                    let e: u32 = n
                        .try_into()
                        .map_err(|_| self.error("exponent out of range"))?;
                    self.pos += 1;
                    return Ok(base.pow(e));
                }
                _ => return Err(self.error("expected integer exponent")),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<MultiPoly, AlgError> {
        match self.tokens.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MultiPoly::constant(BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(MultiPoly::var(&name))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if self.peek_op() != Some(')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(e)
            }
            _ => Err(self.error("unexpected token")),
        }
    }
}

/// Parses a rational literal such as `-3/8`, `0`, `9/8`.
pub fn parse_rational(s: &str) -> Result<BigRational, AlgError> {
    let p = parse_poly(s)?;
    if !p.is_constant() {
        return Err(AlgError::Parse {
            input: s.to_string(),
            message: "expected a rational constant".into(),
        });
    }
    Ok(p.constant_value())
}
