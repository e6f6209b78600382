//! Dense polynomials over exact rings.
//!
//! [`UPoly`] stores coefficients lowest degree first with no trailing zeros,
//! so the zero polynomial is the empty vector. A [`BiPoly`] is a univariate
//! polynomial whose coefficients are univariate polynomials; the outer
//! variable comes first in every bivariate signature (`λ` over `x`, `a` over
//! `b`).

mod bi;
pub mod parse;
mod roots;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ring::{ExactDiv, Field, Ring, RingOps};

pub use bi::{divides, reduce_mod_2k, squarefree_bivariate, BiPoly};
pub use roots::rational_roots;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UPoly<R> {
    c: Vec<R>,
}

impl<R: Ring> Default for UPoly<R> {
    fn default() -> Self {
        UPoly { c: Vec::new() }
    }
}

impl<R: Ring> UPoly<R> {
    pub fn new(mut c: Vec<R>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn constant(a: R) -> Self {
        UPoly::new(vec![a])
    }

    /// The polynomial `X`.
    pub fn var() -> Self {
        UPoly { c: vec![R::zero(), R::one()] }
    }

    pub fn monomial(a: R, k: usize) -> Self {
        if a.is_zero() {
            return UPoly::default();
        }
        let mut c = vec![R::zero(); k + 1];
        c[k] = a;
        UPoly { c }
    }

    /// `X - a`.
    pub fn linear_root(a: &R) -> Self {
        UPoly::new(vec![a.negated(), R::one()])
    }

    pub fn from_ints(c: &[i64]) -> Self {
        UPoly::new(c.iter().map(|&n| R::from_i64(n)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.c
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }

    pub fn coeff(&self, k: usize) -> R {
        self.c.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with `-1` for the zero polynomial.
    pub fn deg_i(&self) -> i64 {
        self.c.len() as i64 - 1
    }

    pub fn lead(&self) -> Option<&R> {
        self.c.last()
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn neg(&self) -> Self {
        UPoly { c: self.c.iter().map(|x| x.negated()).collect() }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a.plus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::new(c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for k in 0..n {
            c.push(match (self.c.get(k), o.c.get(k)) {
                (Some(a), Some(b)) => a.minus(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.negated(),
                (None, None) => unreachable!(),
            });
        }
        UPoly::new(c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.c.is_empty() || o.c.is_empty() {
            return UPoly::default();
        }
        let mut c = vec![R::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j].add_prod(a, b);
            }
        }
        UPoly::new(c)
    }

    pub fn scale(&self, a: &R) -> Self {
        UPoly::new(self.c.iter().map(|x| x.times(a)).collect())
    }

    /// Multiplication by `X^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.c.is_empty() {
            return self.clone();
        }
        let mut c = vec![R::zero(); k];
        c.extend(self.c.iter().cloned());
        UPoly { c }
    }

    pub fn pow(&self, e: u64) -> Self {
        RingOps::power(self, e)
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for a in self.c.iter().rev() {
            acc = acc.times(x).plus(a);
        }
        acc
    }

    /// Horner evaluation at `x` in a ring `S` receiving the coefficients through `f`.
    pub fn eval_map<S: RingOps>(&self, x: &S, f: impl Fn(&R) -> S) -> S {
        let mut acc = x.int_like(0);
        for a in self.c.iter().rev() {
            acc = acc.times(x).plus(&f(a));
        }
        acc
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> UPoly<S> {
        UPoly::new(self.c.iter().map(f).collect())
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(self.c.iter().enumerate().skip(1).map(|(k, a)| a.times(&R::from_i64(k as i64))).collect())
    }

    /// Substitutes `X ↦ q`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = UPoly::default();
        for a in self.c.iter().rev() {
            acc = acc.mul(q).add(&UPoly::constant(a.clone()));
        }
        acc
    }

    /// Number of leading zero coefficients, i.e. the multiplicity of the root 0.
    pub fn low_order(&self) -> usize {
        self.c.iter().take_while(|x| x.is_zero()).count()
    }

    pub fn fmt_var(&self, var: &str) -> String
    where
        R: fmt::Display,
    {
        fmt_terms(self.c.iter().enumerate().rev().map(|(k, a)| (a, mono(var, k))))
    }
}

fn mono(var: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => String::from(var),
        _ => alloc::format!("{var}^{k}"),
    }
}

/// Renders `Σ c·m`, omitting unit coefficients and zero terms.
pub(crate) fn fmt_terms<'a, R: Ring + fmt::Display + 'a>(terms: impl Iterator<Item = (&'a R, String)>) -> String {
    let mut out = String::new();
    for (a, m) in terms {
        if a.is_zero() {
            continue;
        }
        let s = alloc::format!("{a}");
        let (neg, body) = match s.strip_prefix('-') {
            Some(b) => (true, String::from(b)),
            None => (false, s),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let body = if body.contains(['+', '-', ' ']) { alloc::format!("({body})") } else { body };
        if m.is_empty() {
            out.push_str(&body);
        } else if body == "1" {
            out.push_str(&m);
        } else {
            out.push_str(&body);
            out.push('*');
            out.push_str(&m);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl<R: Ring + fmt::Display> fmt::Display for UPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_var("t"))
    }
}

impl<R: Ring> RingOps for UPoly<R> {
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn minus(&self, o: &Self) -> Self {
        self.sub(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negated(&self) -> Self {
        self.neg()
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn int_like(&self, n: i64) -> Self {
        UPoly::constant(R::from_i64(n))
    }
    fn add_prod(&mut self, a: &Self, b: &Self) {
        if a.c.is_empty() || b.c.is_empty() {
            return;
        }
        let need = a.c.len() + b.c.len() - 1;
        if self.c.len() < need {
            self.c.resize(need, R::zero());
        }
        for (i, x) in a.c.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.c.iter().enumerate() {
                self.c[i + j].add_prod(x, y);
            }
        }
        while self.c.last().is_some_and(|x| x.is_zero()) {
            self.c.pop();
        }
    }
}

impl<R: Ring> Ring for UPoly<R> {
    fn zero() -> Self {
        UPoly::default()
    }
    fn one() -> Self {
        UPoly::constant(R::one())
    }
    fn from_i64(n: i64) -> Self {
        UPoly::constant(R::from_i64(n))
    }
}

impl<R: Field> UPoly<R> {
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        let inv = d.c[dd].try_inv()?;
        if self.c.len() <= dd {
            return Ok((UPoly::default(), self.clone()));
        }
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let t = r[k].times(&inv);
            for j in 0..dd {
                let s = t.times(&d.c[j]);
                r[k - dd + j] = r[k - dd + j].minus(&s);
            }
            r[k] = R::zero();
            q[k - dd] = t;
        }
        r.truncate(dd);
        Ok((UPoly::new(q), UPoly::new(r)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        Ok(self.divrem(d)?.1)
    }

    /// Quotient when `d` divides `self`, [`Error::InexactDivision`] otherwise.
    pub fn divide_exact(&self, d: &Self) -> Result<Self> {
        let (q, r) = self.divrem(d)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::InexactDivision)
        }
    }

    pub fn monic(&self) -> Result<Self> {
        match self.lead() {
            None => Ok(self.clone()),
            Some(l) => Ok(self.scale(&l.try_inv()?)),
        }
    }

    /// Monic greatest common divisor by the Euclidean algorithm; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Result<Self> {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r.monic()?;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s·self + t·o = g` and `g` monic.
    pub fn ext_gcd(&self, o: &Self) -> Result<(Self, Self, Self)> {
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (UPoly::one(), UPoly::default());
        let (mut t0, mut t1) = (UPoly::default(), UPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1)?;
            let s = s0.sub(&q.mul(&s1));
            let t = t0.sub(&q.mul(&t1));
            r0 = core::mem::replace(&mut r1, r);
            s0 = core::mem::replace(&mut s1, s);
            t0 = core::mem::replace(&mut t1, t);
        }
        match r0.lead().cloned() {
            None => Ok((r0, s0, t0)),
            Some(l) => {
                let inv = l.try_inv()?;
                Ok((r0.scale(&inv), s0.scale(&inv), t0.scale(&inv)))
            }
        }
    }

    /// `self / gcd(self, self')`, monic.
    pub fn squarefree_part(&self) -> Result<Self> {
        let g = self.gcd(&self.derivative())?;
        self.divide_exact(&g)?.monic()
    }

    /// Multiplicity of `(X - r)` as a factor; `self` must be nonzero.
    pub fn root_multiplicity(&self, r: &R) -> Result<usize> {
        let lin = UPoly::linear_root(r);
        let mut p = self.clone();
        let mut m = 0;
        while !p.is_zero() {
            let (q, rem) = p.divrem(&lin)?;
            if !rem.is_zero() {
                break;
            }
            p = q;
            m += 1;
        }
        Ok(m)
    }
}

impl<R: ExactDiv> UPoly<R> {
    pub fn div_exact_scalar(&self, d: &R) -> Option<Self> {
        let mut c = Vec::with_capacity(self.c.len());
        for x in &self.c {
            c.push(x.div_exact(d)?);
        }
        Some(UPoly { c })
    }

    /// `lc(d)^(deg self - deg d + 1) · self mod d`.
    pub fn pseudo_rem(&self, d: &Self) -> Result<Self> {
        let dd = d.degree().ok_or(Error::DivisionByZero)?;
        if self.c.len() <= dd {
            return Ok(self.clone());
        }
        let lc = &d.c[dd];
        let mut e = self.c.len() - dd;
        let mut r = self.clone();
        while r.c.len() > dd {
            let k = r.c.len() - 1;
            let t = r.c[k].clone();
            let mut c = r.c;
            for x in c.iter_mut() {
                *x = x.times(lc);
            }
            for j in 0..=dd {
                let s = t.times(&d.c[j]);
                c[k - dd + j] = c[k - dd + j].minus(&s);
            }
            r = UPoly::new(c);
            e -= 1;
        }
        if e > 0 {
            let f = lc.power(e as u64);
            r = r.scale(&f);
        }
        Ok(r)
    }

    /// Resultant by the subresultant PRS; every division in the chain is exact.
    pub fn resultant(&self, o: &Self) -> Result<R> {
        let (mut a, mut b) = (self.clone(), o.clone());
        if a.is_zero() || b.is_zero() {
            return Ok(R::zero());
        }
        let mut s = R::one();
        if a.c.len() < b.c.len() {
            core::mem::swap(&mut a, &mut b);
            if (a.c.len() - 1) % 2 == 1 && (b.c.len() - 1) % 2 == 1 {
                s = s.negated();
            }
        }
        let mut g = R::one();
        let mut h = R::one();
        while b.c.len() > 1 {
            let da = a.c.len() - 1;
            let db = b.c.len() - 1;
            let delta = (da - db) as u64;
            if da % 2 == 1 && db % 2 == 1 {
                s = s.negated();
            }
            let r = a.pseudo_rem(&b)?;
            a = b;
            let den = g.times(&h.power(delta));
            b = r.div_exact_scalar(&den).ok_or(Error::InexactDivision)?;
            g = a.c[a.c.len() - 1].clone();
            if delta > 0 {
                h = g.power(delta).div_exact(&h.power(delta - 1)).ok_or(Error::InexactDivision)?;
            }
            if b.is_zero() {
                return Ok(R::zero());
            }
        }
        let da = (a.c.len() - 1) as u64;
        let lb = b.c[0].clone();
        if da == 0 {
            return Ok(s);
        }
        let h = lb.power(da).div_exact(&h.power(da - 1)).ok_or(Error::InexactDivision)?;
        Ok(s.times(&h))
    }
}

impl<R: ExactDiv> ExactDiv for UPoly<R> {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        let dd = d.degree()?;
        if self.c.len() <= dd {
            return self.is_zero().then(UPoly::default);
        }
        let lc = &d.c[dd];
        let mut r = self.c.clone();
        let mut q = vec![R::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let t = r[k].div_exact(lc)?;
            for j in 0..dd {
                let s = t.times(&d.c[j]);
                r[k - dd + j] = r[k - dd + j].minus(&s);
            }
            r[k] = R::zero();
            q[k - dd] = t;
        }
        r[..dd].iter().all(|x| x.is_zero()).then(|| UPoly::new(q))
    }
}

impl UPoly<BigInt> {
    /// Nonnegative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.c.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }

    /// Divides out the content and makes the leading coefficient positive.
    pub fn primitive_part(&self) -> Self {
        let mut g = self.content();
        if g.is_zero() {
            return self.clone();
        }
        if self.lead().is_some_and(|l| l.is_negative()) {
            g = -g;
        }
        UPoly { c: self.c.iter().map(|x| x / &g).collect() }
    }

    pub fn to_rational(&self) -> UPoly<Rational> {
        self.map(|x| Rational::from_integer(x.clone()))
    }

    /// Greatest common divisor by the subresultant PRS, primitive with positive leading coefficient.
    pub fn subresultant_gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        if a.c.len() < b.c.len() {
            core::mem::swap(&mut a, &mut b);
        }
        if b.is_zero() {
            return a.primitive_part();
        }
        a = a.primitive_part();
        b = b.primitive_part();
        let mut g = BigInt::one();
        let mut h = BigInt::one();
        loop {
            let delta = (a.c.len() - b.c.len()) as u32;
            let r = a.pseudo_rem(&b).expect("nonzero divisor");
            if r.is_zero() {
                break;
            }
            if r.c.len() == 1 {
                b = UPoly::one();
                break;
            }
            a = b;
            let den = &g * h.pow(delta);
            b = UPoly { c: r.c.iter().map(|x| x / &den).collect() };
            g = a.c[a.c.len() - 1].clone();
            h = if delta == 0 { h } else { g.pow(delta) / h.pow(delta - 1) };
        }
        b.primitive_part()
    }
}

impl UPoly<Rational> {
    /// Clears denominators: returns the primitive integer polynomial with positive leading coefficient.
    pub fn to_primitive_int(&self) -> UPoly<BigInt> {
        let l = self.c.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
        UPoly::new(self.c.iter().map(|x| (x * Rational::from_integer(l.clone())).to_integer()).collect()).primitive_part()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use alloc::string::ToString;

    fn zp(c: &[i64]) -> UPoly<BigInt> {
        UPoly::from_ints(c)
    }

    fn qp(c: &[i64]) -> UPoly<Rational> {
        UPoly::from_ints(c)
    }

    #[test]
    fn arithmetic_and_display() {
        let p = qp(&[1, 2, 0, -3]);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.to_string(), "-3*t^3 + 2*t + 1");
        assert_eq!(p.add(&p.neg()), UPoly::default());
        assert_eq!(qp(&[1, 1]).mul(&qp(&[-1, 1])), qp(&[-1, 0, 1]));
        assert_eq!(qp(&[0, 0, 1]).compose(&qp(&[1, 1])), qp(&[1, 2, 1]));
    }

    #[test]
    fn division_and_gcd() {
        let a = qp(&[-1, 0, 1]);
        let b = qp(&[1, 1]);
        let (q, r) = a.divrem(&b).unwrap();
        assert_eq!(q, qp(&[-1, 1]));
        assert!(r.is_zero());
        assert_eq!(a.gcd(&qp(&[-2, 1, 1])).unwrap(), qp(&[-1, 1]));
        assert_eq!(qp(&[3, 1]).divide_exact(&qp(&[1, 1])), Err(Error::InexactDivision));
        let (g, s, t) = qp(&[1, 0, 1]).ext_gcd(&qp(&[0, 1])).unwrap();
        assert!(g.is_one());
        assert_eq!(s.mul(&qp(&[1, 0, 1])).add(&t.mul(&qp(&[0, 1]))), UPoly::one());
    }

    #[test]
    fn resultants_small() {
        // Res(x^2 - 2, x - 1) = (1 - 2) = -1 up to the standard sign convention.
        assert_eq!(zp(&[-2, 0, 1]).resultant(&zp(&[-1, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(zp(&[-1, 1]).resultant(&zp(&[-2, 0, 1])).unwrap(), BigInt::from(-1));
        assert_eq!(zp(&[-1, 0, 1]).resultant(&zp(&[1, 1])).unwrap(), BigInt::zero());
        assert_eq!(zp(&[5]).resultant(&zp(&[0, 0, 1])).unwrap(), BigInt::from(25));
    }

    #[test]
    fn subresultant_gcd_matches_euclid() {
        let f = zp(&[-1, 1]).mul(&zp(&[2, 0, 3])).mul(&zp(&[7, 1]));
        let g = zp(&[-1, 1]).mul(&zp(&[2, 0, 3])).mul(&zp(&[5, 0, 0, 2]));
        assert_eq!(f.subresultant_gcd(&g), zp(&[-1, 1]).mul(&zp(&[2, 0, 3])));
    }

    #[test]
    fn primitive_conversion() {
        let p = UPoly::new(vec![rat(1, 2), rat(-3, 4), int(0)]);
        assert_eq!(p.to_primitive_int(), zp(&[-2, 3]));
    }
}
