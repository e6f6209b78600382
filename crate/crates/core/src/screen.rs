//! 2-adic screens that confine `T(α, β)` to finitely many candidates, plus
//! the roots-of-unity case and the Weierstrass candidate screen.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::One;

use crate::arith::{mod4_class, rho, v2, Rational, Residue, Valuation};
use crate::divpoly::weierstrass_system;
use crate::error::{domain, Result};
use crate::quotring::{fixtures, FieldElem};
use crate::ring::{Field, RingOps};
use crate::torsion::{nontorsion_default, order_bounded, TorsionResult};

/// Which screening rule produced a verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Clause {
    /// The rational mod-4 rules, numbered 1 to 4.
    CorRat(u8),
    /// The `R(α) ∩ R(β) = ∅` rules, numbered 1 to 5.
    RDisjoint(u8),
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Clause::CorRat(k) => write!(f, "Cor-rat-{k}"),
            Clause::RDisjoint(k) => write!(f, "R-disjoint-{k}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScreenVerdict {
    Empty { clause: Clause },
    SubsetOf { candidates: Vec<Rational>, clause: Clause },
    Inconclusive,
}

impl ScreenVerdict {
    pub fn clause(&self) -> Option<Clause> {
        match self {
            ScreenVerdict::Empty { clause } | ScreenVerdict::SubsetOf { clause, .. } => Some(*clause),
            ScreenVerdict::Inconclusive => None,
        }
    }

    pub fn candidates(&self) -> Option<&[Rational]> {
        match self {
            ScreenVerdict::Empty { .. } => Some(&[]),
            ScreenVerdict::SubsetOf { candidates, .. } => Some(candidates),
            ScreenVerdict::Inconclusive => None,
        }
    }
}

fn push_unique<K: PartialEq>(v: &mut Vec<K>, x: K) {
    if !v.contains(&x) {
        v.push(x);
    }
}

/// `{α, α², α(2-α), α²/(2α-1)}` without the values `0`, `1` and the pole at `2α = 1`.
pub fn s_set<K: Field>(alpha: &K) -> Vec<K> {
    let one = alpha.int_like(1);
    let two = alpha.int_like(2);
    let a2 = alpha.square();
    let mut vals = vec![alpha.clone(), a2.clone(), alpha.times(&two.minus(alpha))];
    if let Ok(v) = a2.try_div(&alpha.scaled(2).minus(&one)) {
        vals.push(v);
    }
    let mut out = Vec::new();
    for v in vals {
        if !v.is_zero() && !v.minus(&one).is_zero() {
            push_unique(&mut out, v);
        }
    }
    out
}

fn v(x: &Rational) -> Valuation {
    v2(x)
}

fn fin(x: &Rational) -> i64 {
    v(x).finite().unwrap_or(i64::MAX)
}

/// Whether `R(α) ∩ R(β) = ∅` follows from one of the five valuation rules, and which one.
///
/// Rule 2 concerns residues outside `{0, 1, ∞}` and never applies to rationals.
pub fn r_disjoint(alpha: &Rational, beta: &Rational) -> Option<u8> {
    let (ra, rb) = (rho(alpha), rho(beta));
    if ra != rb {
        return Some(1);
    }
    let diff = fin(&(alpha - beta));
    match ra {
        Residue::One => {
            let e = fin(&(alpha - Rational::one()));
            (0 < e && e <= 1 && diff == e).then_some(3)
        }
        Residue::Zero => {
            let e = fin(alpha);
            (e <= 1 && diff == e).then_some(4)
        }
        Residue::Infinity => (fin(alpha) >= -1 && diff == fin(beta)).then_some(5),
    }
}

/// Whether `s ∈ R(β)`, decided exactly over ℚ.
pub fn in_r_set(s: &Rational, beta: &Rational) -> bool {
    let one = Rational::one();
    if s.is_zero() {
        return false;
    }
    if fin(beta) >= 0 {
        // s = β² + 2uβ(1-β) with u 2-integral and ρ(u²) = ρ(β).
        let den = beta * (&one - beta) * Rational::from_integer(2.into());
        if den.is_zero() {
            return false;
        }
        let u = (s - beta * beta) / den;
        fin(&u) >= 0 && rho(&(&u * &u)) == rho(beta)
    } else {
        // s = β²/(1 + 2(β-1)u) with v(u) > 0.
        let u = (beta * beta / s - &one) / ((beta - &one) * Rational::from_integer(2.into()));
        fin(&u) > 0
    }
}

fn mod4(x: &Rational) -> Option<u8> {
    mod4_class(x).ok()
}

fn permissible(v: Vec<Rational>) -> Vec<Rational> {
    let mut out = Vec::new();
    for x in v {
        if !x.is_zero() && !x.is_one() {
            push_unique(&mut out, x);
        }
    }
    out.sort();
    out
}

fn check_pair(alpha: &Rational, beta: &Rational) -> Result<()> {
    for x in [alpha, beta] {
        if x.is_zero() || x.is_one() {
            return Err(domain("α and β must avoid 0 and 1"));
        }
    }
    if alpha == beta {
        return Err(domain("α and β must differ"));
    }
    Ok(())
}

/// Finite candidate set for `T(α, β)` from the rational mod-4 rules, then the `R`-disjointness rules.
pub fn screen_rational(alpha: &Rational, beta: &Rational) -> Result<ScreenVerdict> {
    check_pair(alpha, beta)?;
    if rho(alpha) != rho(beta) {
        return Ok(ScreenVerdict::Empty { clause: Clause::CorRat(1) });
    }
    for (a, b) in [(alpha, beta), (beta, alpha)] {
        let pick = match (mod4(a), mod4(b)) {
            (Some(3), Some(1)) => Some((2, a * a)),
            (Some(2), Some(0)) => Some((3, a * (Rational::from_integer(2.into()) - a))),
            _ => None,
        };
        let pick = pick.or_else(|| {
            let (va, vb) = (v(a).finite()?, v(b).finite()?);
            (va == -1 && vb <= -2).then(|| (4, a * a / (a * Rational::from_integer(2.into()) - Rational::one())))
        });
        if let Some((k, c)) = pick {
            return Ok(ScreenVerdict::SubsetOf { candidates: permissible(vec![c, b.clone()]), clause: Clause::CorRat(k) });
        }
    }
    if let Some(k) = r_disjoint(alpha, beta) {
        let (sa, sb) = (s_set(alpha), s_set(beta));
        let mut cands = Vec::new();
        for s in &sa {
            if sb.contains(s) || in_r_set(s, beta) {
                cands.push(s.clone());
            }
        }
        for s in &sb {
            if in_r_set(s, alpha) {
                cands.push(s.clone());
            }
        }
        return Ok(ScreenVerdict::SubsetOf { candidates: permissible(cands), clause: Clause::RDisjoint(k) });
    }
    Ok(ScreenVerdict::Inconclusive)
}

pub const DEFAULT_VERIFY_BOUND: u64 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    Exact { members: Vec<(Rational, u64, u64)>, clause: Clause },
    Inconclusive { reason: String },
}

/// `T(α, β)` exactly, when a screen applies and every candidate is settled.
///
/// A candidate is a member when both orders are at most `max`; it is rejected
/// only when one of the points is certified to have infinite order.
pub fn decide_t_rational(alpha: &Rational, beta: &Rational, max: u64) -> Result<Decision> {
    let verdict = screen_rational(alpha, beta)?;
    let (cands, clause) = match &verdict {
        ScreenVerdict::Inconclusive => return Ok(Decision::Inconclusive { reason: String::from("no screen applies") }),
        v => (v.candidates().unwrap_or(&[]).to_vec(), v.clause().expect("screen clause")),
    };
    let mut members = Vec::new();
    for l in cands {
        let (oa, ob) = (order_bounded(&l, alpha, max)?, order_bounded(&l, beta, max)?);
        if let (Some(a), Some(b)) = (oa.order(), ob.order()) {
            members.push((l, a, b));
            continue;
        }
        let mut rejected = false;
        for (o, x) in [(oa, alpha), (ob, beta)] {
            if o.order().is_none() && nontorsion_default(&l, x)?.is_certified() {
                rejected = true;
            }
        }
        if !rejected {
            return Ok(Decision::Inconclusive { reason: alloc::format!("candidate {l} is neither confirmed nor excluded") });
        }
    }
    Ok(Decision::Exact { members, clause })
}

/// A member of `T(ζ) ∩ μ` written as `sign · ζ^power`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct UnityMember {
    pub sign: i8,
    pub power: u32,
}

impl fmt::Display for UnityMember {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = if self.sign < 0 { "-" } else { "" };
        match self.power {
            1 => write!(f, "{s}a"),
            p => write!(f, "{s}a^{p}"),
        }
    }
}

/// `T(α) ∩ μ` for a primitive `k`-th root of unity `α`: `{α}` for `k = 2`,
/// `{α, α², -α²}` for `k ∈ {3, 6, 12}` and `{α, α²}` otherwise.
pub fn roots_of_unity_t(k: u64) -> Result<Vec<UnityMember>> {
    Ok(match k {
        0 | 1 => return Err(domain("order must be at least 2")),
        2 => vec![UnityMember { sign: 1, power: 1 }],
        3 | 6 | 12 => vec![UnityMember { sign: 1, power: 1 }, UnityMember { sign: 1, power: 2 }, UnityMember { sign: -1, power: 2 }],
        _ => vec![UnityMember { sign: 1, power: 1 }, UnityMember { sign: 1, power: 2 }],
    })
}

/// Confirms each asserted member in `ℚ[t]/Φ_k` with `α = t`; returns the order of `P_α(λ)` per member.
pub fn verify_roots_of_unity(k: u64, max: u64) -> Result<Vec<(UnityMember, FieldElem, TorsionResult)>> {
    let fx = fixtures::cyclotomic(k)?;
    let z = fx.get("zeta");
    let mut out = Vec::new();
    for m in roots_of_unity_t(k)? {
        let mut l = z.power(m.power as u64);
        if m.sign < 0 {
            l = l.negated();
        }
        let o = order_bounded(&l, &z, max)?;
        out.push((m, l, o));
    }
    Ok(out)
}

/// `(-(a² + ab + b²), ab(a + b))`: the curve `y² = x³ + Ax + B` with `(a, 0)` and `(b, 0)` of order 2.
pub fn cw_pair<K: RingOps>(a: &K, b: &K) -> (K, K) {
    (a.square().plus(&a.times(b)).plus(&b.square()).negated(), a.times(b).times(&a.plus(b)))
}

/// The three pairs for `(α, β)`, `(α, γ)`, `(β, γ)`.
pub fn cw_candidates<K: RingOps>(alpha: &K, beta: &K, gamma: &K) -> Result<[(K, K); 3]> {
    if alpha.minus(beta).is_zero() || alpha.minus(gamma).is_zero() || beta.minus(gamma).is_zero() {
        return Err(domain("the three x-coordinates must be distinct"));
    }
    Ok([cw_pair(alpha, beta), cw_pair(alpha, gamma), cw_pair(beta, gamma)])
}

#[derive(Clone, Debug, PartialEq)]
pub struct CwCandidate {
    pub a: Rational,
    pub b: Rational,
    /// Orders of the points with x-coordinates `α`, `β`, `γ`.
    pub orders: [TorsionResult; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct CwReport {
    pub candidates: Vec<CwCandidate>,
    /// Singular pairs with `4A³ + 27B² = 0`.
    pub dropped: Vec<(Rational, Rational)>,
}

/// Order of the point with x-coordinate `x` on `y² = x³ + Ax + B`, if at most `max`.
pub fn weierstrass_order(a: &Rational, b: &Rational, x: &Rational, max: u64) -> Result<TorsionResult> {
    if (x * x * x + a * x + b).is_zero() {
        return Ok(TorsionResult::OrderTwo);
    }
    let mut sys = weierstrass_system(a, b, x).with_cap(max.max(4));
    for n in 3..=max {
        if sys.h(n)?.is_zero() {
            return Ok(TorsionResult::Order(n));
        }
    }
    Ok(TorsionResult::ExceedsBound(max))
}

pub fn cw_verify(alpha: &Rational, beta: &Rational, gamma: &Rational, max: u64) -> Result<CwReport> {
    let mut report = CwReport { candidates: Vec::new(), dropped: Vec::new() };
    for (a, b) in cw_candidates(alpha, beta, gamma)? {
        let disc = Rational::from_integer(4.into()) * &a * &a * &a + Rational::from_integer(27.into()) * &b * &b;
        if disc.is_zero() {
            report.dropped.push((a, b));
            continue;
        }
        let orders = [weierstrass_order(&a, &b, alpha, max)?, weierstrass_order(&a, &b, beta, max)?, weierstrass_order(&a, &b, gamma, max)?];
        report.candidates.push(CwCandidate { a, b, orders });
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;
    use crate::arith::{int, rat};

    #[test]
    fn s_sets() {
        assert_eq!(s_set(&int(2)), vec![int(2), int(4), rat(4, 3)]);
        assert_eq!(s_set(&int(3)), vec![int(3), int(9), int(-3), rat(9, 5)]);
        assert_eq!(s_set(&int(-1)), vec![int(-1), int(-3), rat(-1, 3)]);
        assert_eq!(s_set(&rat(1, 2)), vec![rat(1, 2), rat(1, 4), rat(3, 4)]);
    }

    #[test]
    fn disjointness_rules() {
        assert_eq!(r_disjoint(&int(2), &int(3)), Some(1));
        assert_eq!(r_disjoint(&int(2), &int(4)), Some(4));
        assert_eq!(r_disjoint(&int(4), &int(8)), None);
        assert_eq!(r_disjoint(&int(3), &int(5)), Some(3));
        assert_eq!(r_disjoint(&rat(1, 2), &rat(3, 4)), Some(5));
    }

    #[test]
    fn r_set_membership() {
        // α = 3: α² + 2uα(1-α) = 9 - 12u with u odd.
        assert!(in_r_set(&int(-3), &int(3)));
        assert!(!in_r_set(&int(9), &int(3)));
        assert!(!in_r_set(&int(7), &int(3)));
    }

    #[test]
    fn screens() {
        assert_eq!(screen_rational(&int(2), &int(3)).unwrap(), ScreenVerdict::Empty { clause: Clause::CorRat(1) });
        assert_eq!(screen_rational(&int(3), &int(-3)).unwrap(), ScreenVerdict::SubsetOf { candidates: vec![int(-3), int(9)], clause: Clause::CorRat(2) });
        assert_eq!(screen_rational(&int(-3), &int(3)).unwrap().candidates(), Some(&[int(-3), int(9)][..]));
        assert_eq!(screen_rational(&int(2), &int(4)).unwrap(), ScreenVerdict::SubsetOf { candidates: vec![int(4)], clause: Clause::CorRat(3) });
        assert_eq!(Clause::CorRat(2).to_string(), "Cor-rat-2");
    }

    #[test]
    fn decisions() {
        let d = |a, b| decide_t_rational(&int(a), &int(b), DEFAULT_VERIFY_BOUND).unwrap();
        assert_eq!(d(2, 3), Decision::Exact { members: vec![], clause: Clause::CorRat(1) });
        assert_eq!(d(2, 4), Decision::Exact { members: vec![(int(4), 4, 2)], clause: Clause::CorRat(3) });
        assert_eq!(d(3, -3), Decision::Exact { members: vec![(int(-3), 4, 2), (int(9), 4, 4)], clause: Clause::CorRat(2) });
    }

    #[test]
    fn unity() {
        assert_eq!(roots_of_unity_t(2).unwrap().len(), 1);
        assert_eq!(roots_of_unity_t(12).unwrap().len(), 3);
        for k in [2, 3, 4, 5, 6, 8, 12] {
            for (m, _, o) in verify_roots_of_unity(k, 16).unwrap() {
                assert!(o.order().is_some(), "k={k} {m}");
            }
        }
    }

    #[test]
    fn weierstrass_candidates() {
        let r = cw_verify(&int(1), &int(2), &int(3), 12).unwrap();
        let pairs: Vec<_> = r.candidates.iter().map(|c| (c.a.clone(), c.b.clone())).collect();
        assert_eq!(pairs, vec![(int(-7), int(6)), (int(-13), int(12)), (int(-19), int(30))]);
        assert_eq!(&r.candidates[0].orders[..2], &[TorsionResult::OrderTwo; 2]);
        assert_ne!(r.candidates[0].orders[2], TorsionResult::OrderTwo);
        let s = cw_candidates(&int(2), &int(1), &int(3)).unwrap();
        assert_eq!(s[0], (int(-7), int(6)));
        // b = -2a makes the cubic x³ - 3x + 2 = (x - 1)²(x + 2) singular.
        let r = cw_verify(&int(1), &int(-2), &int(5), 8).unwrap();
        assert_eq!(r.dropped, vec![(int(-3), int(2))]);
        assert_eq!(r.candidates.len(), 2);
    }
}
