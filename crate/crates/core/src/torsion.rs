//! Orders of `P_α(λ) = (α, ·)` on `E_λ : y^2 = x(x-1)(x-λ)`.

use alloc::vec::Vec;

use crate::arith::Rational;
use crate::divpoly::legendre_system;
use crate::error::{domain, Error, Result};
use crate::ring::{is_prime_u64, mul_mod, pow_mod, Field, Fp, RingOps};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TorsionResult {
    OrderTwo,
    Order(u64),
    ExceedsBound(u64),
}

impl TorsionResult {
    /// The order when it is known.
    pub fn order(&self) -> Option<u64> {
        match self {
            TorsionResult::OrderTwo => Some(2),
            TorsionResult::Order(n) => Some(*n),
            TorsionResult::ExceedsBound(_) => None,
        }
    }
}

fn check_domain<K: RingOps>(lambda: &K, alpha: &K) -> Result<()> {
    let one = lambda.int_like(1);
    if lambda.is_zero() || lambda.minus(&one).is_zero() {
        return Err(domain("λ must avoid 0 and 1"));
    }
    if alpha.is_zero() || alpha.minus(&one).is_zero() {
        return Err(domain("α must avoid 0 and 1"));
    }
    Ok(())
}

/// Exact order of `P_α(λ)` if it is at most `max`.
///
/// The least `n ≥ 3` with `ψ_n(λ, α) = 0` is the order, since the roots of
/// `ψ_n` are the x-coordinates of points of order dividing `n` and above 2.
pub fn order_bounded<K: Field>(lambda: &K, alpha: &K, max: u64) -> Result<TorsionResult> {
    check_domain(lambda, alpha)?;
    if max < 2 {
        return Err(domain("bound must be at least 2"));
    }
    if alpha == lambda {
        return Ok(TorsionResult::OrderTwo);
    }
    let mut sys = legendre_system(lambda, alpha).with_cap(max.max(4));
    for n in 3..=max {
        if sys.h(n)?.is_zero() {
            return Ok(TorsionResult::Order(n));
        }
    }
    Ok(TorsionResult::ExceedsBound(max))
}

/// `p + 1 + ⌈2√p⌉`.
pub fn hasse_bound(p: u64) -> u64 {
    let mut s = (p as f64).sqrt() as u64;
    while s * s < 4 * p {
        s += 1;
    }
    while s > 0 && (s - 1) * (s - 1) >= 4 * p {
        s -= 1;
    }
    p + 1 + s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ModpProbe {
    pub p: u64,
    pub lambda: u64,
    pub alpha: u64,
    /// `None` marks bad reduction.
    pub order: Option<u64>,
}

fn reduce(lambda: &Rational, alpha: &Rational, p: u64) -> Result<(Fp, Fp)> {
    if p < 3 || !is_prime_u64(p) {
        return Err(domain("p must be an odd prime"));
    }
    let l = Fp::from_rational(lambda, p).ok_or(Error::BadReduction(p))?;
    let a = Fp::from_rational(alpha, p).ok_or(Error::BadReduction(p))?;
    if l.v == 0 || l.v == 1 {
        return Err(Error::BadReduction(p));
    }
    Ok((l, a))
}

/// Order of the reduction of `P_α(λ)` modulo `p`.
///
/// For `α ∈ F_p` the point lies on `E_λ` or on its quadratic twist over
/// `F_p`, so its order is at most the Hasse bound.
pub fn order_modp(lambda: &Rational, alpha: &Rational, p: u64) -> Result<u64> {
    let (l, a) = reduce(lambda, alpha, p)?;
    if a.v == 0 || a.v == 1 || a == l {
        return Ok(2);
    }
    let bound = hasse_bound(p);
    let mut sys = legendre_system(&l, &a).with_cap(bound);
    for n in 3..=bound {
        if sys.h(n)?.is_zero() {
            return Ok(n);
        }
    }
    Err(Error::VerificationFailed(alloc::format!("no order found below the Hasse bound for p = {p}")))
}

pub fn probe(lambda: &Rational, alpha: &Rational, p: u64) -> Result<ModpProbe> {
    match order_modp(lambda, alpha, p) {
        Ok(n) => {
            let (l, a) = reduce(lambda, alpha, p)?;
            Ok(ModpProbe { p, lambda: l.v, alpha: a.v, order: Some(n) })
        }
        Err(Error::BadReduction(_)) => {
            let l = Fp::from_rational(lambda, p).map_or(0, |x| x.v);
            let a = Fp::from_rational(alpha, p).map_or(0, |x| x.v);
            Ok(ModpProbe { p, lambda: l, alpha: a, order: None })
        }
        Err(e) => Err(e),
    }
}

pub const DEFAULT_PRIME_BUDGET: usize = 6;

/// The first `budget` odd primes of good reduction for `(λ, α)`.
pub fn good_primes(lambda: &Rational, alpha: &Rational, budget: usize) -> Vec<u64> {
    (3u64..)
        .filter(|&p| is_prime_u64(p))
        .filter(|&p| reduce(lambda, alpha, p).is_ok())
        .take(budget)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// Two primes of good reduction where the reductions have different orders.
    Certified { first: ModpProbe, second: ModpProbe },
    Inconclusive { probes: Vec<ModpProbe> },
}

impl Certificate {
    pub fn is_certified(&self) -> bool {
        matches!(self, Certificate::Certified { .. })
    }
}

/// A torsion point keeps its order under reduction at every odd prime of
/// good reduction, so two different orders prove infinite order.
pub fn nontorsion_certificate(lambda: &Rational, alpha: &Rational, primes: &[u64]) -> Result<Certificate> {
    check_domain(lambda, alpha)?;
    let mut probes: Vec<ModpProbe> = Vec::new();
    for &p in primes {
        let pr = probe(lambda, alpha, p)?;
        if let Some(n) = pr.order {
            if let Some(prev) = probes.iter().find(|q| q.order.is_some_and(|m| m != n)) {
                return Ok(Certificate::Certified { first: *prev, second: pr });
            }
        }
        probes.push(pr);
    }
    Ok(Certificate::Inconclusive { probes })
}

/// `nontorsion_certificate` over the default prime budget.
pub fn nontorsion_default(lambda: &Rational, alpha: &Rational) -> Result<Certificate> {
    nontorsion_certificate(lambda, alpha, &good_primes(lambda, alpha, DEFAULT_PRIME_BUDGET))
}

/// `a + b s` in `F_p[s]/(s^2 - r)` for a fixed nonresidue `r`, i.e. `F_{p^2}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Fp2 {
    a: u64,
    b: u64,
}

struct Fp2Ctx {
    p: u64,
    r: u64,
}

impl Fp2Ctx {
    fn c(&self, a: u64) -> Fp2 {
        Fp2 { a: a % self.p, b: 0 }
    }
    fn add(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + y.a) % self.p, b: (x.b + y.b) % self.p }
    }
    fn sub(&self, x: Fp2, y: Fp2) -> Fp2 {
        Fp2 { a: (x.a + self.p - y.a) % self.p, b: (x.b + self.p - y.b) % self.p }
    }
    fn mul(&self, x: Fp2, y: Fp2) -> Fp2 {
        let p = self.p;
        let a = (mul_mod(x.a, y.a, p) + mul_mod(mul_mod(x.b, y.b, p), self.r, p)) % p;
        let b = (mul_mod(x.a, y.b, p) + mul_mod(x.b, y.a, p)) % p;
        Fp2 { a, b }
    }
    fn inv(&self, x: Fp2) -> Option<Fp2> {
        // (a + bs)^(-1) = (a - bs) / (a^2 - r b^2)
        let p = self.p;
        let n = (mul_mod(x.a, x.a, p) + p - mul_mod(self.r, mul_mod(x.b, x.b, p), p)) % p;
        if n == 0 {
            return None;
        }
        let ni = pow_mod(n, p - 2, p);
        Some(Fp2 { a: mul_mod(x.a, ni, p), b: mul_mod((p - x.b) % p, ni, p) })
    }
}

fn is_residue(x: u64, p: u64) -> bool {
    x == 0 || pow_mod(x, (p - 1) / 2, p) == 1
}

/// Order of `(α, y)` on `y^2 = x(x-1)(x-λ)` over `F_p` or `F_{p^2}`, by repeated chord-and-tangent addition.
pub fn grouplaw_order_oracle(p: u64, lambda: u64, alpha: u64) -> Result<u64> {
    if p < 3 || !is_prime_u64(p) {
        return Err(domain("p must be an odd prime"));
    }
    let (l, a) = (lambda % p, alpha % p);
    if l == 0 || l == 1 {
        return Err(Error::BadReduction(p));
    }
    let rhs = mul_mod(mul_mod(a, (a + p - 1) % p, p), (a + p - l) % p, p);
    if rhs == 0 {
        return Ok(2);
    }
    let r = (2..p).find(|&r| !is_residue(r, p)).ok_or_else(|| domain("no nonresidue"))?;
    let ctx = Fp2Ctx { p, r };
    let y = if is_residue(rhs, p) {
        let s = (1..p).find(|&s| mul_mod(s, s, p) == rhs).ok_or_else(|| domain("no square root"))?;
        ctx.c(s)
    } else {
        // rhs = r t^2 for t = sqrt(rhs / r), so y = t s.
        let q = mul_mod(rhs, pow_mod(r, p - 2, p), p);
        let t = (1..p).find(|&t| mul_mod(t, t, p) == q).ok_or_else(|| domain("no square root"))?;
        Fp2 { a: 0, b: t }
    };
    let a2 = ctx.sub(ctx.c(0), ctx.c(l + 1));
    let a4 = ctx.c(l);
    let base = (ctx.c(a), y);
    let add = |pt: Option<(Fp2, Fp2)>, q: (Fp2, Fp2)| -> Option<(Fp2, Fp2)> {
        let (x1, y1) = pt?;
        let (x2, y2) = q;
        let m = if x1 == x2 {
            if ctx.add(y1, y2) == ctx.c(0) {
                return None;
            }
            let num = ctx.add(ctx.add(ctx.mul(ctx.c(3), ctx.mul(x1, x1)), ctx.mul(ctx.mul(ctx.c(2), a2), x1)), a4);
            ctx.mul(num, ctx.inv(ctx.add(y1, y1))?)
        } else {
            ctx.mul(ctx.sub(y2, y1), ctx.inv(ctx.sub(x2, x1))?)
        };
        let x3 = ctx.sub(ctx.sub(ctx.sub(ctx.mul(m, m), a2), x1), x2);
        let y3 = ctx.sub(ctx.mul(m, ctx.sub(x1, x3)), y1);
        Some((x3, y3))
    };
    let limit = (p + 1) * (p + 1) + 2 * p;
    let mut acc = Some(base);
    for n in 2..=limit {
        acc = add(acc, base);
        if acc.is_none() {
            return Ok(n);
        }
    }
    Err(Error::VerificationFailed(alloc::format!("group law order exceeded {limit}")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::quotring::fixtures;

    #[test]
    fn exact_orders() {
        assert_eq!(order_bounded(&int(9), &int(3), 12).unwrap(), TorsionResult::Order(4));
        assert_eq!(order_bounded(&int(-3), &int(-3), 12).unwrap(), TorsionResult::OrderTwo);
        assert_eq!(order_bounded(&int(5), &int(2), 12).unwrap(), TorsionResult::ExceedsBound(12));
        assert!(order_bounded(&int(1), &int(2), 12).is_err());
        assert!(order_bounded(&int(5), &int(0), 12).is_err());
        let k = fixtures::cyclotomic(3).unwrap();
        let w = k.get("zeta");
        assert_eq!(order_bounded(&w.times(&w), &w, 12).unwrap(), TorsionResult::Order(4));
        assert_eq!(order_bounded(&w, &w.times(&w), 12).unwrap(), TorsionResult::Order(4));
        assert_eq!(order_bounded(&w, &w, 12).unwrap(), TorsionResult::OrderTwo);
    }

    #[test]
    fn modp_orders() {
        assert_eq!(order_modp(&int(-3), &int(3), 5).unwrap(), 4);
        assert_eq!(order_modp(&int(9), &int(-3), 7).unwrap(), 4);
        assert_eq!(order_modp(&int(5), &int(2), 5), Err(Error::BadReduction(5)));
        assert_eq!(order_modp(&rat(1, 3), &int(2), 3), Err(Error::BadReduction(3)));
        assert_eq!(hasse_bound(5), 11);
        assert_eq!(hasse_bound(4 * 4), 25);
    }

    #[test]
    fn certificates() {
        assert!(nontorsion_certificate(&int(5), &int(2), &[3, 7, 11, 13]).unwrap().is_certified());
        assert!(!nontorsion_certificate(&int(9), &int(3), &[5, 7, 11, 13, 17, 19]).unwrap().is_certified());
        assert!(!nontorsion_default(&int(-3), &int(3)).unwrap().is_certified());
        assert_eq!(good_primes(&int(5), &int(2), 3), alloc::vec![3, 7, 11]);
    }

    #[test]
    fn group_law_oracle() {
        assert_eq!(grouplaw_order_oracle(5, 2, 2).unwrap(), 2);
        assert_eq!(grouplaw_order_oracle(7, 4, 3).unwrap(), 4);
        assert_eq!(grouplaw_order_oracle(11, 9, 3).unwrap(), 4);
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23] {
            for l in 2..p {
                for a in 0..p {
                    let want = order_modp(&int(l as i64), &int(a as i64), p).unwrap();
                    assert_eq!(grouplaw_order_oracle(p, l, a).unwrap(), want, "p={p} λ={l} α={a}");
                }
            }
        }
    }
}
