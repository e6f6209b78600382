//! Dense polynomials over `F_p` for a word-sized prime, used as cheap
//! certificates: a coprimality or squarefreeness witness modulo `p`, with
//! degrees preserved, lifts to characteristic zero.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::arith::Rational;
use crate::poly::{BiPoly, UPoly};
use crate::ring::{is_prime_u64, mul_mod, pow_mod, Fp};

/// Coefficients lowest degree first, no trailing zeros.
pub type PolyP = Vec<u64>;

pub fn trim(mut a: PolyP) -> PolyP {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

pub fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

pub fn from_int_poly(a: &UPoly<BigInt>, p: u64) -> PolyP {
    trim(a.coeffs().iter().map(|c| Fp::from_int(c, p).v).collect())
}

pub fn from_rational_poly(a: &UPoly<Rational>, p: u64) -> Option<PolyP> {
    let mut out = Vec::with_capacity(a.coeffs().len());
    for c in a.coeffs() {
        out.push(Fp::from_rational(c, p)?.v);
    }
    Some(trim(out))
}

pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
    a.iter().rev().fold(0, |acc, &c| (mul_mod(acc, x, p) + c) % p)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let n = a.len().max(b.len());
    let mut c = vec![0; n];
    for (k, slot) in c.iter_mut().enumerate() {
        let x = a.get(k).copied().unwrap_or(0);
        let y = b.get(k).copied().unwrap_or(0);
        *slot = (x + p - y) % p;
    }
    trim(c)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> PolyP {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + mul_mod(x, y, p)) % p;
        }
    }
    trim(c)
}

pub fn rem(a: &[u64], d: &[u64], p: u64) -> PolyP {
    let dd = d.len() - 1;
    let li = inv(d[dd], p);
    let mut r = a.to_vec();
    while r.len() > dd && !r.is_empty() {
        let k = r.len() - 1;
        let t = mul_mod(r[k], li, p);
        if t != 0 {
            for j in 0..=dd {
                let s = mul_mod(t, d[j], p);
                r[k - dd + j] = (r[k - dd + j] + p - s) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    r
}

pub fn monic(a: PolyP, p: u64) -> PolyP {
    match a.last() {
        None => a,
        Some(&l) => {
            let li = inv(l, p);
            a.into_iter().map(|c| mul_mod(c, li, p)).collect()
        }
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> PolyP {
    let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    monic(a, p)
}

pub fn derivative(a: &[u64], p: u64) -> PolyP {
    trim(a.iter().enumerate().skip(1).map(|(k, &c)| mul_mod(c, k as u64 % p, p)).collect())
}

/// `deg gcd(a, b)` when both reductions kept their degree; `None` otherwise.
pub fn gcd_degree_certified(a: &[u64], deg_a: usize, b: &[u64], deg_b: usize, p: u64) -> Option<usize> {
    if a.len() != deg_a + 1 || b.len() != deg_b + 1 {
        return None;
    }
    Some(gcd(a, b, p).len() - 1)
}

/// Specializes the inner variable of an integer bivariate polynomial at `x` modulo `p`.
pub fn eval_inner(f: &BiPoly<BigInt>, x: u64, p: u64) -> PolyP {
    trim(f.coeffs().iter().map(|c| eval(&from_int_poly(c, p), x, p)).collect())
}

/// Specializes the outer variable of an integer bivariate polynomial at `x` modulo `p`.
pub fn eval_outer(f: &BiPoly<BigInt>, x: u64, p: u64) -> PolyP {
    let mut acc: PolyP = Vec::new();
    for c in f.coeffs().iter().rev() {
        acc = mul(&acc, &[x % p], p);
        let cp = from_int_poly(c, p);
        let n = acc.len().max(cp.len());
        let mut s = vec![0; n];
        for (k, slot) in s.iter_mut().enumerate() {
            *slot = (acc.get(k).copied().unwrap_or(0) + cp.get(k).copied().unwrap_or(0)) % p;
        }
        acc = trim(s);
    }
    acc
}

/// Primes below `start`, descending.
pub fn primes_below(start: u64) -> impl Iterator<Item = u64> {
    (3..start).rev().filter(|&n| n % 2 == 1 && is_prime_u64(n))
}

/// Large primes used for certificates.
pub const CERT_PRIMES: [u64; 4] = [2305843009213693951, 2305843009213693921, 2305843009213693907, 2305843009213693669];

/// A root of `m` modulo `p` by exhaustive search; only sensible for small `p`.
pub fn find_root(m: &[u64], p: u64) -> Option<u64> {
    (0..p).find(|&r| eval(m, r, p) == 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_mod_p() {
        let p = 101;
        let a = mul(&[100, 1], &[2, 0, 1], p);
        let b = mul(&[100, 1], &[3, 1], p);
        assert_eq!(gcd(&a, &b, p), vec![100, 1]);
        assert_eq!(rem(&a, &[100, 1], p), Vec::<u64>::new());
    }

    #[test]
    fn certificate_primes_are_prime() {
        for p in CERT_PRIMES {
            assert!(is_prime_u64(p));
        }
        assert_eq!(primes_below(12).collect::<Vec<_>>(), vec![11, 7, 5, 3]);
    }
}
