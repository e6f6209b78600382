//! Bounded simultaneous torsion sets `T_N(α, β)`.
//!
//! A parameter `λ ∉ {0, 1, α, β}` lies in `T_N(α, β)` exactly when it is a
//! common root of `∏ ψ̃_n(λ, α)` and `∏ ψ̃_m(λ, β)` over `3 ≤ n, m ≤ N`. When the
//! factors within each product are pairwise coprime, the gcd of the products
//! is the product of the pairwise gcds `G_{n,m}`, and the roots of `G_{n,m}`
//! are the members with orders `(n, m)`. The endpoints `λ = α` and `λ = β`
//! are checked separately.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Display;

use crate::arith::Rational;
use crate::divpoly::{legendre_system, proper_divisors};
use crate::error::{domain, Error, Result};
use crate::modp::{self, primes_below};
use crate::poly::{rational_roots, UPoly};
use crate::quotring::{reconstruct_roots, FieldElem, QuotRing};
use crate::ring::{Field, Fp, Ring};
use crate::torsion::{order_bounded, TorsionResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TsetOptions {
    /// Working precision in bits for numeric root isolation.
    pub prec: u32,
    /// Cap on embedding-root combinations tried per polynomial.
    pub max_combinations: usize,
}

impl Default for TsetOptions {
    fn default() -> Self {
        TsetOptions { prec: 200, max_combinations: 4096 }
    }
}

/// A ring map `K → F_p`, given by a prime and the image of the generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Reducer {
    pub p: u64,
    pub t: u64,
}

/// Fields the T-set search can work over.
pub trait RootField: Field + Display {
    /// Distinct roots in the field of `hints`, each verified exactly; roots that cannot be found are omitted.
    fn roots(p: &UPoly<Self>, hints: &[&Self], opts: &TsetOptions) -> Result<Vec<Self>>;

    /// The `k`-th reduction map available for the field of `hints`.
    fn reducer(hints: &[&Self], k: usize) -> Option<Reducer>;

    /// Image under `r`, `None` when the element is not integral at `r.p`.
    fn reduce(&self, r: &Reducer) -> Option<u64>;
}

impl RootField for Rational {
    fn roots(p: &UPoly<Self>, _: &[&Self], opts: &TsetOptions) -> Result<Vec<Self>> {
        Ok(rational_roots(p, opts.prec)?.into_iter().map(|(r, _)| r).collect())
    }

    fn reducer(_: &[&Self], k: usize) -> Option<Reducer> {
        primes_below(1 << 31).nth(k).map(|p| Reducer { p, t: 0 })
    }

    fn reduce(&self, r: &Reducer) -> Option<u64> {
        Fp::from_rational(self, r.p).map(|x| x.v)
    }
}

fn ring_of(hints: &[&FieldElem]) -> Option<Arc<QuotRing>> {
    hints.iter().find_map(|h| h.ring().cloned())
}

impl RootField for FieldElem {
    fn roots(p: &UPoly<Self>, hints: &[&Self], opts: &TsetOptions) -> Result<Vec<Self>> {
        let ring = ring_of(hints).or_else(|| p.coeffs().iter().find_map(|c| c.ring().cloned()));
        match ring {
            Some(k) => reconstruct_roots(p, &k, opts.prec, opts.max_combinations),
            None => {
                let q: Option<Vec<Rational>> = p.coeffs().iter().map(|c| c.as_rational()).collect();
                let q = q.ok_or_else(|| domain("coefficients outside ℚ without a field"))?;
                Ok(rational_roots(&UPoly::new(q), opts.prec)?.into_iter().map(|(r, _)| FieldElem::rational(r)).collect())
            }
        }
    }

    fn reducer(hints: &[&Self], k: usize) -> Option<Reducer> {
        let Some(ring) = ring_of(hints) else {
            return primes_below(1 << 31).nth(k).map(|p| Reducer { p, t: 0 });
        };
        primes_below(1 << 20)
            .filter_map(|p| {
                let m = modp::from_rational_poly(ring.modulus(), p)?;
                if m.len() != ring.degree() + 1 {
                    return None;
                }
                modp::find_root(&m, p).map(|t| Reducer { p, t })
            })
            .nth(k)
    }

    fn reduce(&self, r: &Reducer) -> Option<u64> {
        let c = modp::from_rational_poly(self.rep(), r.p)?;
        Some(modp::eval(&c, r.t, r.p))
    }
}

/// Whether `a` and `b` are certainly coprime, judged modulo `r`.
///
/// When every coefficient reduces and both degrees survive, a constant gcd
/// modulo `p` means the resultant has a nonzero image, so it is nonzero.
fn coprime_mod<K: RootField>(a: &UPoly<K>, b: &UPoly<K>, r: &Reducer) -> bool {
    let red = |f: &UPoly<K>| -> Option<Vec<u64>> { f.coeffs().iter().map(|c| c.reduce(r)).collect() };
    match (red(a), red(b)) {
        (Some(x), Some(y)) => {
            let (x, y) = (modp::trim(x), modp::trim(y));
            modp::gcd_degree_certified(&x, a.deg_i().max(0) as usize, &y, b.deg_i().max(0) as usize, r.p) == Some(0)
        }
        _ => false,
    }
}

fn gcd_filtered<K: RootField>(a: &UPoly<K>, b: &UPoly<K>, r: Option<&Reducer>) -> Result<UPoly<K>> {
    if r.is_some_and(|r| coprime_mod(a, b, r)) {
        return Ok(UPoly::one());
    }
    a.gcd(b)
}

/// `ψ_n(λ, α) ∈ K[λ]` for `1 ≤ n ≤ max`.
pub fn psi_in_lambda<K: Field>(alpha: &K, max: u64) -> Result<Vec<UPoly<K>>> {
    let lambda = UPoly::<K>::var();
    let x = UPoly::constant(alpha.clone());
    let mut sys = legendre_system(&lambda, &x).with_cap(max.max(4));
    (1..=max).map(|n| sys.h(n)).collect()
}

/// `ψ̃_n(λ, α) ∈ K[λ]` for `3 ≤ n ≤ max`, keyed by `n`.
pub fn psi_tilde_in_lambda<K: Field>(alpha: &K, max: u64) -> Result<BTreeMap<u64, UPoly<K>>> {
    let psi = psi_in_lambda(alpha, max)?;
    let mut out: BTreeMap<u64, UPoly<K>> = BTreeMap::new();
    for n in 3..=max {
        let mut q = psi[(n - 1) as usize].clone();
        for m in proper_divisors(n) {
            q = q.divide_exact(&out[&m])?;
        }
        out.insert(n, q);
    }
    Ok(out)
}

fn check_pair<K: Field>(alpha: &K, beta: &K) -> Result<()> {
    let one = alpha.int_like(1);
    for v in [alpha, beta] {
        if v.is_zero() || v.minus(&one).is_zero() {
            return Err(domain("α and β must avoid 0 and 1"));
        }
    }
    if alpha == beta {
        return Err(domain("α and β must differ"));
    }
    Ok(())
}

fn pairwise_coprime<K: RootField>(fs: &BTreeMap<u64, UPoly<K>>, r: Option<&Reducer>) -> Result<bool> {
    let v: Vec<&UPoly<K>> = fs.values().collect();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            if !gcd_filtered(v[i], v[j], r)?.is_constant() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The common-root polynomial split by order pairs, or `None` when the
/// pairwise gcds do not multiply to the full gcd.
fn split_gcds<K: RootField>(ta: &BTreeMap<u64, UPoly<K>>, tb: &BTreeMap<u64, UPoly<K>>, r: Option<&Reducer>) -> Result<Option<Vec<((u64, u64), UPoly<K>)>>> {
    if !pairwise_coprime(ta, r)? || !pairwise_coprime(tb, r)? {
        return Ok(None);
    }
    let mut out = Vec::new();
    for (&n, a) in ta {
        for (&m, b) in tb {
            let g = gcd_filtered(a, b, r)?;
            if !g.is_constant() {
                out.push(((n, m), g));
            }
        }
    }
    Ok(Some(out))
}

fn product<K: Field>(fs: impl Iterator<Item = UPoly<K>>) -> UPoly<K> {
    fs.fold(UPoly::one(), |acc, f| acc.mul(&f))
}

/// Monic gcd of `∏_{n=3}^{N} ψ̃_n(λ, α)` and `∏_{n=3}^{N} ψ̃_n(λ, β)`.
pub fn common_root_poly<K: RootField>(alpha: &K, beta: &K, max: u64) -> Result<UPoly<K>> {
    check_pair(alpha, beta)?;
    let ta = psi_tilde_in_lambda(alpha, max)?;
    let tb = psi_tilde_in_lambda(beta, max)?;
    let r = K::reducer(&[alpha, beta], 0);
    match split_gcds(&ta, &tb, r.as_ref())? {
        Some(parts) => product(parts.into_iter().map(|(_, g)| g)).monic(),
        None => product(ta.into_values()).gcd(&product(tb.into_values())),
    }
}

pub fn orders_at<K: Field>(lambda: &K, alpha: &K, beta: &K, max: u64) -> Result<(TorsionResult, TorsionResult)> {
    Ok((order_bounded(lambda, alpha, max)?, order_bounded(lambda, beta, max)?))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Member<K> {
    pub lambda: K,
    pub order_alpha: u64,
    pub order_beta: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TsetReport<K> {
    pub members: Vec<Member<K>>,
    /// Roots of the common-root polynomial at the degenerate parameters `0` and `1`.
    pub degenerate: Vec<K>,
    /// Product of the factors whose roots were not all found.
    pub residual: UPoly<K>,
    pub complete: bool,
}

/// Removes every copy of the root `r` from `p`; returns the multiplicity.
fn split_root<K: Field>(p: &mut UPoly<K>, r: &K) -> Result<usize> {
    let lin = UPoly::linear_root(r);
    let mut k = 0;
    while !p.is_constant() && p.eval(r).is_zero() {
        *p = p.divide_exact(&lin)?;
        k += 1;
    }
    Ok(k)
}

/// `T_N(α, β)` with completeness accounting.
///
/// Caller-supplied candidates are tried first; the remaining roots come
/// from [`RootField::roots`]. Every member is confirmed with
/// [`order_bounded`] on both points.
pub fn t_set_bounded<K: RootField>(alpha: &K, beta: &K, max: u64, candidates: &[K], opts: &TsetOptions) -> Result<TsetReport<K>> {
    check_pair(alpha, beta)?;
    let ta = psi_tilde_in_lambda(alpha, max)?;
    let tb = psi_tilde_in_lambda(beta, max)?;
    let r = K::reducer(&[alpha, beta], 0);
    let parts = match split_gcds(&ta, &tb, r.as_ref())? {
        Some(p) => p,
        None => alloc::vec![((0, 0), product(ta.into_values()).gcd(&product(tb.into_values()))?)],
    };
    let zero = alpha.int_like(0);
    let one = alpha.int_like(1);
    let mut members: Vec<Member<K>> = Vec::new();
    let mut degenerate: Vec<K> = Vec::new();
    let mut residual = UPoly::<K>::one();
    for (_, g) in parts {
        let mut g = g.monic()?;
        for r in [&zero, &one] {
            if split_root(&mut g, r)? > 0 && !degenerate.contains(r) {
                degenerate.push(r.clone());
            }
        }
        let mut found: Vec<K> = candidates.iter().filter(|c| !g.is_constant() && g.eval(c).is_zero()).cloned().collect();
        for r in &found.clone() {
            split_root(&mut g, r)?;
        }
        if !g.is_constant() {
            let more = K::roots(&g, &[alpha, beta], opts)?;
            for r in more {
                if split_root(&mut g, &r)? > 0 {
                    found.push(r);
                }
            }
        }
        for r in found {
            let (oa, ob) = orders_at(&r, alpha, beta, max)?;
            match (oa.order(), ob.order()) {
                (Some(a), Some(b)) => {
                    if !members.iter().any(|m| m.lambda == r) {
                        members.push(Member { lambda: r, order_alpha: a, order_beta: b });
                    }
                }
                _ => return Err(Error::VerificationFailed(alloc::format!("common root {r} is not torsion of order at most {max} for both points"))),
            }
        }
        residual = residual.mul(&g);
    }
    for (end, other) in [(alpha, beta), (beta, alpha)] {
        if let Some(n) = order_bounded(end, other, max)?.order() {
            let (a, b) = if end == alpha { (2, n) } else { (n, 2) };
            members.push(Member { lambda: end.clone(), order_alpha: a, order_beta: b });
        }
    }
    let complete = residual.is_constant();
    Ok(TsetReport { members, degenerate, residual, complete })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use crate::ring::RingOps;
    use alloc::vec;

    fn sorted(r: &TsetReport<Rational>) -> Vec<(Rational, u64, u64)> {
        let mut v: Vec<_> = r.members.iter().map(|m| (m.lambda.clone(), m.order_alpha, m.order_beta)).collect();
        v.sort();
        v
    }

    #[test]
    fn common_roots() {
        assert!(common_root_poly(&int(2), &int(3), 8).unwrap().is_constant());
        let g = common_root_poly(&int(3), &int(-3), 6).unwrap();
        assert!(g.eval(&int(9)).is_zero());
        let k = QuotRing::parse("t^2+1").unwrap();
        let i = k.gen();
        let g = common_root_poly(&i, &i.negated(), 4).unwrap();
        assert!(g.eval(&k.from_rational(&int(-1))).is_zero());
    }

    #[test]
    fn rational_examples() {
        let o = TsetOptions::default();
        let r = t_set_bounded(&int(2), &int(3), 8, &[], &o).unwrap();
        assert!(r.members.is_empty() && r.complete);
        let r = t_set_bounded(&int(2), &int(4), 8, &[], &o).unwrap();
        assert_eq!(sorted(&r), vec![(int(4), 4, 2)]);
        assert!(r.complete);
        let r = t_set_bounded(&int(3), &int(-3), 8, &[], &o).unwrap();
        assert_eq!(sorted(&r), vec![(int(-3), 4, 2), (int(9), 4, 4)]);
        assert!(r.complete);
    }

    #[test]
    fn orders_at_examples() {
        assert_eq!(orders_at(&int(9), &int(3), &int(-3), 8).unwrap(), (TorsionResult::Order(4), TorsionResult::Order(4)));
        assert_eq!(orders_at(&int(-3), &int(3), &int(-3), 8).unwrap(), (TorsionResult::Order(4), TorsionResult::OrderTwo));
    }

    #[test]
    fn candidates_are_used() {
        let o = TsetOptions::default();
        let r = t_set_bounded(&rat(3, 8), &rat(-9, 16), 8, &[rat(81, 256)], &o).unwrap();
        assert!(r.members.iter().any(|m| m.lambda == rat(81, 256) && (m.order_alpha, m.order_beta) == (8, 4)));
    }
}
