//! Recursive-descent parser for polynomial expressions:
//!
//! ```text
//! expr        := term (('+' | '-') term)*
//! term        := factor ('*' factor)*
//! factor      := coefficient | variable ('^' nat)? | '(' expr ')'
//! coefficient := integer ('/' positive-integer)?
//! variable    := ('x' | 'y' | 'z') nat | 'x' nat '_' nat
//! ```
//!
//! A leading `-` is accepted before a term. The input is expanded first and
//! checked for multihomogeneity afterwards.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::polynomial::MultihomogPolynomial;
use super::Ambient;
use crate::error::{HeightError, Result};

type Terms = BTreeMap<Vec<u32>, BigRational>;

pub fn parse_polynomial(text: &str, ambient: &Ambient) -> Result<MultihomogPolynomial> {
    let mut parser = Parser {
        src: text.as_bytes(),
        pos: 0,
        ambient,
    };
    let terms = parser.expr()?;
    parser.skip_ws();
    if parser.pos < parser.src.len() {
        return Err(parser.error("unexpected trailing input"));
    }
    MultihomogPolynomial::from_terms(ambient, terms, ambient.zero_degree())
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    ambient: &'a Ambient,
}

impl Parser<'_> {
    fn error(&self, message: &str) -> HeightError {
        HeightError::Syntax {
            offset: self.pos,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn constant(&self, c: BigRational) -> Terms {
        let mut t = Terms::new();
        if !c.is_zero() {
            t.insert(vec![0; self.ambient.num_coords()], c);
        }
        t
    }

    fn expr(&mut self) -> Result<Terms> {
        let negate_first = self.eat(b'-');
        let mut acc = self.term()?;
        if negate_first {
            acc = scale(&acc, &-BigRational::one());
        }
        loop {
            if self.eat(b'+') {
                let t = self.term()?;
                acc = add(&acc, &t);
            } else if self.eat(b'-') {
                let t = self.term()?;
                acc = add(&acc, &scale(&t, &-BigRational::one()));
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Terms> {
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            let f = self.factor()?;
            acc = mul(&acc, &f);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Terms> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.error("expected `)`"));
                }
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let num = self.nat()?;
                let value = if self.eat(b'/') {
                    self.skip_ws();
                    let den = self.nat()?;
                    if den.is_zero() {
                        return Err(self.error("zero denominator"));
                    }
                    BigRational::new(num, den)
                } else {
                    BigRational::from_integer(num)
                };
                Ok(self.constant(value))
            }
            Some(b'x' | b'y' | b'z') => {
                let index = self.variable()?;
                let exp = if self.eat(b'^') {
                    self.skip_ws();
                    let e = self.nat()?;
                    u32::try_from(e).map_err(|_| self.error("exponent too large"))?
                } else {
                    1
                };
                let mut exps = vec![0; self.ambient.num_coords()];
                exps[index] = exp;
                let mut t = Terms::new();
                t.insert(exps, BigRational::one());
                Ok(t)
            }
            Some(_) => Err(self.error("expected a coefficient, variable or `(`")),
            None => Err(self.error("unexpected end of input")),
        }
    }

    fn digits(&mut self) -> Option<&str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn nat(&mut self) -> Result<BigInt> {
        match self.digits() {
            Some(s) => Ok(s.parse().expect("ascii digits")),
            None => Err(self.error("expected a natural number")),
        }
    }

    /// Flat coordinate index of the variable starting at the cursor.
    fn variable(&mut self) -> Result<usize> {
        let start = self.pos;
        let letter = self.src[self.pos];
        self.pos += 1;
        let first: usize = match self.digits() {
            Some(s) => s.parse().map_err(|_| self.error("index too large"))?,
            None => return Err(self.error("expected a variable index")),
        };
        let (block, index) = if letter == b'x' && self.src.get(self.pos) == Some(&b'_') {
            self.pos += 1;
            let second: usize = match self.digits() {
                Some(s) => s.parse().map_err(|_| self.error("index too large"))?,
                None => return Err(self.error("expected a coordinate index after `_`")),
            };
            (first, second)
        } else {
            let block = match letter {
                b'x' => 0,
                b'y' => 1,
                _ => 2,
            };
            (block, first)
        };
        let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap().to_string();
        let blocks = self.ambient.blocks();
        let aliased = letter != b'x' || !name.contains('_');
        if block >= blocks.len() || index >= blocks[block] || (aliased && block > 0 && blocks.len() > 3) {
            return Err(HeightError::UnknownVariable(name));
        }
        Ok(self.ambient.offset(block) + index)
    }
}

fn add(a: &Terms, b: &Terms) -> Terms {
    let mut out = a.clone();
    for (e, c) in b {
        let slot = out.entry(e.clone()).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            out.remove(e);
        }
    }
    out
}

fn scale(a: &Terms, c: &BigRational) -> Terms {
    a.iter().map(|(e, k)| (e.clone(), k * c)).collect()
}

fn mul(a: &Terms, b: &Terms) -> Terms {
    let mut out = Terms::new();
    for (e1, c1) in a {
        for (e2, c2) in b {
            let e: Vec<u32> = e1.iter().zip(e2).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigRational::zero) += c1 * c2;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}
