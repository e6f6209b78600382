//! Rationals, 2-adic data and heights.

use alloc::format;
use alloc::string::ToString;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{domain, Error, Result};

/// Exact rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinity,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinity => None,
        }
    }
}

/// Image of a rational in `P^1(F_2) = {0, 1, ∞}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Residue {
    Zero,
    One,
    Infinity,
}

impl core::fmt::Display for Residue {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            Residue::Zero => "0",
            Residue::One => "1",
            Residue::Infinity => "inf",
        })
    }
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p`, `-p` or `p/q`, surrounding whitespace allowed.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let err = || Error::Parse { line: 1, msg: format!("not a rational: {s:?}") };
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.strip_prefix('+').unwrap_or(n).parse().map_err(|_| err())?;
    let d: BigInt = d.parse().map_err(|_| err())?;
    if d.is_zero() {
        return Err(Error::DivisionByZero);
    }
    Ok(Rational::new(n, d))
}

pub fn v2_int(n: &BigInt) -> Valuation {
    match n.trailing_zeros() {
        Some(t) => Valuation::Finite(t as i64),
        None => Valuation::Infinity,
    }
}

pub fn v2(x: &Rational) -> Valuation {
    match v2_int(x.numer()) {
        Valuation::Infinity => Valuation::Infinity,
        Valuation::Finite(a) => Valuation::Finite(a - x.denom().trailing_zeros().unwrap_or(0) as i64),
    }
}

pub fn rho(x: &Rational) -> Residue {
    match v2(x) {
        Valuation::Infinity => Residue::Zero,
        Valuation::Finite(v) if v > 0 => Residue::Zero,
        Valuation::Finite(0) => Residue::One,
        Valuation::Finite(_) => Residue::Infinity,
    }
}

/// Class of a 2-integral rational modulo 4.
pub fn mod4_class(x: &Rational) -> Result<u8> {
    if x.denom().is_even() {
        return Err(Error::NotTwoIntegral(x.clone()));
    }
    let four = BigInt::from(4);
    let n = x.numer().mod_floor(&four).to_u8().unwrap_or(0);
    // Odd denominators are ±1 mod 4 and self-inverse.
    let d = x.denom().mod_floor(&four).to_u8().unwrap_or(1);
    Ok((n * d) % 4)
}

pub fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 64 {
        return libm::log(n.to_u64().unwrap_or(0) as f64);
    }
    let shift = bits - 64;
    let top = (n >> shift).to_u64().unwrap_or(0) as f64;
    libm::log(top) + shift as f64 * core::f64::consts::LN_2
}

pub fn ln_abs_bigint(n: &BigInt) -> f64 {
    ln_biguint(n.magnitude())
}

/// Absolute logarithmic Weil height `log max(|num|, den)`.
pub fn log_height(x: &Rational) -> f64 {
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    ln_biguint(if num > den { num } else { den })
}

/// Height averaged over the orbit `{x, 1 - x, 1 - 1/x}`.
pub fn hbar(x: &Rational) -> Result<f64> {
    if x.is_zero() || x.is_one() {
        return Err(domain(format!("hbar undefined at {x}")));
    }
    let one = Rational::one();
    let y = &one - x;
    let z = &one - x.recip();
    Ok((log_height(x) + log_height(&y) + log_height(&z)) / 3.0)
}

pub fn is_integer(x: &Rational) -> bool {
    x.denom().is_one()
}

pub fn sign(x: &Rational) -> i8 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// Best rational approximation with denominator at most `max_den`, by continued fractions.
pub fn best_approximation(num: &BigInt, den: &BigInt, max_den: &BigInt) -> Rational {
    let (mut a, mut b) = (num.clone(), den.clone());
    if b.is_negative() {
        a = -a;
        b = -b;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (BigInt::zero(), BigInt::one(), BigInt::one(), BigInt::zero());
    while !b.is_zero() {
        let (q, r) = a.div_mod_floor(&b);
        let q2 = &q * &q1 + &q0;
        if &q2 > max_den {
            break;
        }
        let p2 = &q * &p1 + &p0;
        p0 = core::mem::replace(&mut p1, p2);
        q0 = core::mem::replace(&mut q1, q2);
        a = b;
        b = r;
    }
    if q1.is_zero() {
        return Rational::from_integer(num.div_floor(den));
    }
    Rational::new(p1, q1)
}

pub fn display(x: &Rational) -> alloc::string::String {
    x.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn valuations() {
        assert_eq!(v2(&rat(-9, 16)), Valuation::Finite(-4));
        assert_eq!(v2(&rat(12, 5)), Valuation::Finite(2));
        assert_eq!(v2(&int(0)), Valuation::Infinity);
        assert_eq!(rho(&rat(3, 8)), Residue::Infinity);
        assert_eq!(rho(&int(6)), Residue::Zero);
        assert_eq!(rho(&rat(7, 3)), Residue::One);
    }

    #[test]
    fn classes_mod_4() {
        assert_eq!(mod4_class(&int(-3)).unwrap(), 1);
        assert_eq!(mod4_class(&int(3)).unwrap(), 3);
        assert_eq!(mod4_class(&rat(1, 3)).unwrap(), 3);
        assert_eq!(mod4_class(&rat(2, 5)).unwrap(), 2);
        assert!(matches!(mod4_class(&rat(1, 2)), Err(Error::NotTwoIntegral(_))));
    }

    #[test]
    fn heights() {
        assert!((log_height(&rat(-9, 16)) - libm::log(16.0)).abs() < 1e-12);
        assert!((hbar(&int(2)).unwrap() - 2.0 * libm::log(2.0) / 3.0).abs() < 1e-12);
        assert!(hbar(&int(1)).is_err());
        assert!(hbar(&int(0)).is_err());
        let big = BigInt::from(3).pow(500u32);
        let x = Rational::from_integer(big);
        assert!((log_height(&x) - 500.0 * libm::log(3.0)).abs() < 1e-9);
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational(" -9/16 ").unwrap(), rat(-9, 16));
        assert_eq!(parse_rational("+4/6").unwrap(), rat(2, 3));
        assert_eq!(parse_rational("-9/16").unwrap().to_string(), "-9/16");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn continued_fractions() {
        let n = BigInt::from(314_159_265_358_979i64);
        let d = BigInt::from(100_000_000_000_000i64);
        assert_eq!(best_approximation(&n, &d, &BigInt::from(120)), rat(355, 113));
    }
}
