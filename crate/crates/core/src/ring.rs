//! Ring traits shared by polynomials, the division-polynomial recurrence and
//! the modular and numeric evaluators.
//!
//! [`RingOps`] is the bare minimum the recurrence engine needs and carries no
//! static constants, so that rings whose elements hold runtime context (a
//! prime, a precision, a modulus) can implement it. [`Ring`] adds `zero` and
//! `one` for coefficient rings of polynomials.

use core::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::arith::Rational;
use crate::error::{Error, Result};

pub trait RingOps: Clone + Debug {
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negated(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// The integer `n` in the same ring as `self`.
    fn int_like(&self, n: i64) -> Self;

    fn square(&self) -> Self {
        self.times(self)
    }

    fn cube(&self) -> Self {
        self.square().times(self)
    }

    fn power(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.int_like(1);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.times(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.square();
            }
        }
        acc
    }

    fn scaled(&self, n: i64) -> Self {
        self.times(&self.int_like(n))
    }

    /// `self += a * b`, in place where the representation allows it.
    fn add_prod(&mut self, a: &Self, b: &Self) {
        *self = self.plus(&a.times(b));
    }
}

pub trait Ring: RingOps + PartialEq {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_i64(n: i64) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
}

pub trait Field: Ring {
    fn try_inv(&self) -> Result<Self>;

    fn try_div(&self, d: &Self) -> Result<Self> {
        Ok(self.times(&d.try_inv()?))
    }
}

/// Integral domains with a partial exact quotient.
pub trait ExactDiv: Ring {
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

impl RingOps for BigInt {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn int_like(&self, n: i64) -> Self {
        BigInt::from(n)
    }
    fn add_prod(&mut self, a: &Self, b: &Self) {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *self += a * b;
        }
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        BigInt::from(n)
    }
}

impl ExactDiv for BigInt {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = self.div_rem(d);
        Zero::is_zero(&r).then_some(q)
    }
}

impl RingOps for Rational {
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn int_like(&self, n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(BigInt::from(n))
    }
}

impl Field for Rational {
    fn try_inv(&self) -> Result<Self> {
        if Zero::is_zero(self) {
            Err(Error::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

impl ExactDiv for Rational {
    fn div_exact(&self, d: &Self) -> Option<Self> {
        (!Zero::is_zero(d)).then(|| self / d)
    }
}

/// Residues modulo an odd prime `p < 2^63`, carrying the prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn from_int(n: &BigInt, p: u64) -> Self {
        let r = n.mod_floor(&BigInt::from(p));
        Fp { v: r.try_into().unwrap_or(0), p }
    }

    /// Image of a rational, `None` when `p` divides the denominator.
    pub fn from_rational(q: &Rational, p: u64) -> Option<Self> {
        let d = Fp::from_int(q.denom(), p);
        if d.v == 0 {
            return None;
        }
        Some(Fp::from_int(q.numer(), p).times(&d.inv()?))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        Some(Fp { v: pow_mod(self.v, self.p - 2, self.p), p: self.p })
    }
}

impl RingOps for Fp {
    fn plus(&self, o: &Self) -> Self {
        let s = self.v + o.v;
        Fp { v: if s >= self.p { s - self.p } else { s }, p: self.p }
    }
    fn minus(&self, o: &Self) -> Self {
        Fp { v: if self.v >= o.v { self.v - o.v } else { self.v + self.p - o.v }, p: self.p }
    }
    fn times(&self, o: &Self) -> Self {
        Fp { v: mul_mod(self.v, o.v, self.p), p: self.p }
    }
    fn negated(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn int_like(&self, n: i64) -> Self {
        let p = self.p as i128;
        Fp { v: (n as i128).rem_euclid(p) as u64, p: self.p }
    }
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

