//! Text grammar for polynomials.
//!
//! ```text
//! expr  := ['+' | '-'] term (('+' | '-') term)*
//! term  := power (('*' power) | ('/' integer))*
//! power := atom ['^' integer]
//! atom  := integer | variable | '(' expr ')'
//! ```
//!
//! Variables are single letters chosen by the caller; `−` is accepted for `-`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BiPoly, UPoly};
use crate::arith::Rational;
use crate::error::{Error, Result};

/// Sparse multivariate polynomial: exponent vector to coefficient.
pub type Sparse = BTreeMap<Vec<usize>, Rational>;

fn err(msg: String) -> Error {
    Error::Parse { line: 1, msg }
}

struct Parser<'a> {
    s: Vec<char>,
    pos: usize,
    vars: &'a [char],
}

impl Parser<'_> {
    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.s.get(self.pos).map(|&c| if c == '−' { '-' } else { c })
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn integer(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(err(format!("expected an integer at column {}", start + 1)));
        }
        let text: String = self.s[start..self.pos].iter().collect();
        text.parse().map_err(|_| err(format!("bad integer {text}")))
    }

    fn constant(&self, c: Rational) -> Sparse {
        let mut m = Sparse::new();
        if !c.is_zero() {
            m.insert(vec![0; self.vars.len()], c);
        }
        m
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut neg = false;
        match self.peek() {
            Some('-') => {
                neg = true;
                self.bump();
            }
            Some('+') => self.bump(),
            _ => {}
        }
        let mut acc = self.term()?;
        if neg {
            acc = scale(&acc, &-Rational::one());
        }
        loop {
            match self.peek() {
                Some('+') => {
                    self.bump();
                    let t = self.term()?;
                    acc = add(&acc, &t);
                }
                Some('-') => {
                    self.bump();
                    let t = self.term()?;
                    acc = add(&acc, &scale(&t, &-Rational::one()));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some('*') => {
                    self.bump();
                    let f = self.power()?;
                    acc = mul(&acc, &f);
                }
                Some('/') => {
                    self.bump();
                    let d = self.integer()?;
                    if d.is_zero() {
                        return Err(Error::DivisionByZero);
                    }
                    acc = scale(&acc, &Rational::new(BigInt::one(), d));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() == Some('^') {
            self.bump();
            let e: u32 = self.integer()?.try_into().map_err(|_| err(String::from("exponent too large")))?;
            let mut acc = self.constant(Rational::one());
            for _ in 0..e {
                acc = mul(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some('(') => {
                self.bump();
                let e = self.expr()?;
                if self.peek() != Some(')') {
                    return Err(err(format!("expected ')' at column {}", self.pos + 1)));
                }
                self.bump();
                Ok(e)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.integer()?;
                Ok(self.constant(Rational::from_integer(n)))
            }
            Some(c) => match self.vars.iter().position(|&v| v == c) {
                Some(i) => {
                    self.bump();
                    let mut e = vec![0; self.vars.len()];
                    e[i] = 1;
                    let mut m = Sparse::new();
                    m.insert(e, Rational::one());
                    Ok(m)
                }
                None => Err(err(format!("unexpected {c:?} at column {}", self.pos + 1))),
            },
            None => Err(err(String::from("unexpected end of input"))),
        }
    }
}

fn add(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = a.clone();
    for (k, v) in b {
        let e = out.entry(k.clone()).or_insert_with(Rational::zero);
        *e += v;
        if e.is_zero() {
            out.remove(k);
        }
    }
    out
}

fn scale(a: &Sparse, c: &Rational) -> Sparse {
    if c.is_zero() {
        return Sparse::new();
    }
    a.iter().map(|(k, v)| (k.clone(), v * c)).collect()
}

fn mul(a: &Sparse, b: &Sparse) -> Sparse {
    let mut out = Sparse::new();
    for (ka, va) in a {
        for (kb, vb) in b {
            let k: Vec<usize> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
            let e = out.entry(k).or_insert_with(Rational::zero);
            *e += va * vb;
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Parses a polynomial in the given variables.
pub fn parse_sparse(s: &str, vars: &[char]) -> Result<Sparse> {
    let mut p = Parser { s: s.chars().collect(), pos: 0, vars };
    let e = p.expr()?;
    if p.peek().is_some() {
        return Err(err(format!("trailing input at column {}", p.pos + 1)));
    }
    Ok(e)
}

pub fn parse_univariate(s: &str, var: char) -> Result<UPoly<Rational>> {
    let m = parse_sparse(s, &[var])?;
    let n = m.keys().map(|k| k[0] + 1).max().unwrap_or(0);
    let mut c = vec![Rational::zero(); n];
    for (k, v) in m {
        c[k[0]] = v;
    }
    Ok(UPoly::new(c))
}

pub fn parse_bivariate_q(s: &str, outer: char, inner: char) -> Result<BiPoly<Rational>> {
    let m = parse_sparse(s, &[outer, inner])?;
    let terms: Vec<(usize, usize, Rational)> = m.into_iter().map(|(k, v)| (k[0], k[1], v)).collect();
    Ok(BiPoly::from_terms(&terms))
}

/// Parses a bivariate polynomial with integer coefficients.
pub fn parse_bivariate(s: &str, outer: char, inner: char) -> Result<BiPoly<BigInt>> {
    let q = parse_bivariate_q(s, outer, inner)?;
    let mut terms = Vec::new();
    for (i, j, c) in q.terms() {
        if !c.is_integer() {
            return Err(err(format!("non-integer coefficient {c}")));
        }
        terms.push((i, j, c.to_integer()));
    }
    Ok(BiPoly::from_terms(&terms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn grammar() {
        let f = parse_bivariate("a^2 + 4*a*b^3 − 6*a*b^2 - 3*b^4 + 4*b^3", 'a', 'b').unwrap();
        assert_eq!(f.bidegree(), Some((2, 4)));
        assert_eq!(f.terms().len(), 5);
        let g = parse_univariate("(-t^3 - 5*t)/2", 't').unwrap();
        assert_eq!(g.coeff(1), rat(-5, 2));
        assert_eq!(g.coeff(3), rat(-1, 2));
        let h = parse_bivariate("(a - b)^2", 'a', 'b').unwrap();
        assert_eq!(h, parse_bivariate("a^2 - 2*a*b + b^2", 'a', 'b').unwrap());
    }

    #[test]
    fn errors() {
        assert!(matches!(parse_bivariate("a + c", 'a', 'b'), Err(Error::Parse { .. })));
        assert!(matches!(parse_bivariate("a/2", 'a', 'b'), Err(Error::Parse { .. })));
        assert!(parse_bivariate("a +", 'a', 'b').is_err());
        assert!(parse_bivariate("(a", 'a', 'b').is_err());
    }
}
