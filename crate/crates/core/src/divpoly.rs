//! Division polynomials through one generic recurrence.
//!
//! A [`RecurrenceSystem`] holds `4f`, `h_3`, `h_4` in some ring and produces
//! `h_n` on demand:
//!
//! ```text
//! h_1 = h_2 = 1
//! h_{2m}   = h_m (h_{m+2} h_{m-1}^2 - h_{m-2} h_{m+1}^2)   m ≥ 3
//! h_{4m+1} = 4f h_{2m+2} h_{2m}^3 - h_{2m-1} h_{2m+1}^3    m ≥ 1
//! h_{4m-1} = h_{2m+1} h_{2m-1}^3 - 4f h_{2m-2} h_{2m}^3    m ≥ 2
//! ```
//!
//! The same engine runs symbolically over `ℤ[λ][x]`, modulo `2^k`, on degree
//! bounds, over `ℚ`, number fields, prime fields and complex numbers. The
//! Legendre family uses `4f = 16x^2(x-1)^2(x-λ)^2`, the short Weierstrass
//! family `4f = 16(x^3 + Ax + B)^2`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{domain, Error, Result};
use crate::ntt::Dense2k;
use crate::poly::{BiPoly, UPoly};
use crate::ring::{ExactDiv, Field, Ring, RingOps};

pub const DEFAULT_CAP: u64 = 256;

/// `⌊(n^2 - 1)/4⌋`.
pub fn d(n: u64) -> u64 {
    (n * n).saturating_sub(1) / 4
}

/// `max(0, v_2(n) - 1)`.
pub fn e(n: u64) -> u32 {
    n.trailing_zeros().saturating_sub(1)
}

/// `a_{2m+1} = (-1)^m`, `a_{2m} = (-1)^(m-1) m`.
pub fn a_n(n: u64) -> i64 {
    let m = (n / 2) as i64;
    if n % 2 == 1 {
        if m % 2 == 0 {
            1
        } else {
            -1
        }
    } else if m % 2 == 1 {
        m
    } else {
        -m
    }
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// λ-degree of a bicyclotomic factor of exact order `n ≥ 3`.
pub fn delta(n: u64) -> u64 {
    assert!(n >= 3, "delta needs n >= 3");
    // n^2 ∏ (1 - 1/p^2) = ∏ p^(2k-2) (p^2 - 1)
    let mut num = n * n;
    for p in prime_factors(n) {
        num = num / (p * p) * (p * p - 1);
    }
    if n % 2 == 1 {
        num / 4
    } else {
        num / 12
    }
}

/// λ-degree of `ψ̃_n`: one bicyclotomic factor for odd `n`, three for even `n`.
pub fn deg_lambda_tilde(n: u64) -> u64 {
    match n {
        1 | 2 => 0,
        _ if n % 2 == 1 => delta(n),
        _ => 3 * delta(n),
    }
}

/// Proper divisors `3 ≤ m < n` of `n`.
pub fn proper_divisors(n: u64) -> Vec<u64> {
    (3..n).filter(|m| n % m == 0).collect()
}

#[derive(Clone, Debug)]
pub struct RecurrenceSystem<R> {
    four_f: R,
    memo: BTreeMap<u64, R>,
    cap: u64,
}

impl<R: RingOps> RecurrenceSystem<R> {
    pub fn new(four_f: R, h3: R, h4: R) -> Self {
        let one = h3.int_like(1);
        let mut memo = BTreeMap::new();
        memo.insert(1, one.clone());
        memo.insert(2, one);
        memo.insert(3, h3);
        memo.insert(4, h4);
        RecurrenceSystem { four_f, memo, cap: DEFAULT_CAP }
    }

    pub fn with_cap(mut self, cap: u64) -> Self {
        self.cap = cap;
        self
    }

    pub fn four_f(&self) -> &R {
        &self.four_f
    }

    pub fn h(&mut self, n: u64) -> Result<R> {
        if n == 0 {
            return Err(domain("h_n needs n >= 1"));
        }
        if let Some(v) = self.memo.get(&n) {
            return Ok(v.clone());
        }
        if n > self.cap {
            return Err(Error::CapExceeded { n: n as usize, cap: self.cap as usize });
        }
        let v = if n % 2 == 0 {
            let m = n / 2;
            let (a, b, c, dd, ee) = (self.h(m)?, self.h(m + 2)?, self.h(m - 1)?, self.h(m - 2)?, self.h(m + 1)?);
            a.times(&b.times(&c.square()).minus(&dd.times(&ee.square())))
        } else if n % 4 == 1 {
            let m = (n - 1) / 4;
            let (a, b, c, dd) = (self.h(2 * m + 2)?, self.h(2 * m)?, self.h(2 * m - 1)?, self.h(2 * m + 1)?);
            self.four_f.times(&a).times(&b.cube()).minus(&c.times(&dd.cube()))
        } else {
            let m = (n + 1) / 4;
            let (a, b, c, dd) = (self.h(2 * m + 1)?, self.h(2 * m - 1)?, self.h(2 * m - 2)?, self.h(2 * m)?);
            a.times(&b.cube()).minus(&self.four_f.times(&c).times(&dd.cube()))
        };
        self.memo.insert(n, v.clone());
        Ok(v)
    }
}

/// `(4f, ψ_3, ψ_4)` of the Legendre curve at `(λ, x)`.
pub fn legendre_seeds<R: RingOps>(lambda: &R, x: &R) -> (R, R, R) {
    let c = |n: i64| x.int_like(n);
    let x2 = x.square();
    let xm1 = x.minus(&c(1));
    let xml = x.minus(lambda);
    let four_f = x.times(&xm1).times(&xml).square().scaled(16);
    let h3 = x2
        .square()
        .scaled(3)
        .minus(&lambda.plus(&c(1)).times(&x2.times(x)).scaled(4))
        .plus(&lambda.times(&x2).scaled(6))
        .minus(&lambda.square());
    let h4 = x2
        .minus(lambda)
        .times(&x2.minus(&x.scaled(2)).plus(lambda))
        .times(&x2.minus(&lambda.times(x).scaled(2)).plus(lambda))
        .scaled(2);
    (four_f, h3, h4)
}

pub fn legendre_system<R: RingOps>(lambda: &R, x: &R) -> RecurrenceSystem<R> {
    let (f, h3, h4) = legendre_seeds(lambda, x);
    RecurrenceSystem::new(f, h3, h4)
}

/// `(4f, Ψ_3, Ψ_4)` of `y^2 = x^3 + Ax + B`.
pub fn weierstrass_seeds<R: RingOps>(a: &R, b: &R, x: &R) -> (R, R, R) {
    let x2 = x.square();
    let x3 = x2.times(x);
    let cubic = x3.plus(&a.times(x)).plus(b);
    let four_f = cubic.square().scaled(16);
    let h3 = x2.square().scaled(3).plus(&a.times(&x2).scaled(6)).plus(&b.times(x).scaled(12)).minus(&a.square());
    let inner = x3
        .square()
        .plus(&a.times(&x2.square()).scaled(5))
        .plus(&b.times(&x3).scaled(20))
        .minus(&a.square().times(&x2).scaled(5))
        .minus(&a.times(b).times(x).scaled(4))
        .minus(&b.square().scaled(8))
        .minus(&a.cube());
    (four_f, h3, inner.scaled(2))
}

pub fn weierstrass_system<R: RingOps>(a: &R, b: &R, x: &R) -> RecurrenceSystem<R> {
    let (f, h3, h4) = weierstrass_seeds(a, b, x);
    RecurrenceSystem::new(f, h3, h4)
}

/// `ψ_n(λ, x)` evaluated by running the recurrence on ring elements.
pub fn legendre_psi_eval<R: RingOps>(n: u64, lambda: &R, x: &R) -> Result<R> {
    legendre_system(lambda, x).with_cap(n.max(4)).h(n)
}

/// `Ψ_n(A, B, x)` evaluated in the ring of its arguments.
pub fn weierstrass_psi_eval<R: RingOps>(n: u64, a: &R, b: &R, x: &R) -> Result<R> {
    weierstrass_system(a, b, x).with_cap(n.max(4)).h(n)
}

/// `ψ̃_n` from `ψ_n` and the `ψ̃_m` of proper divisors `m ≥ 3`, via an exact divider.
pub fn tilde_from<R: Clone>(n: u64, psi_n: R, tilde: impl Fn(u64) -> Result<R>, div: impl Fn(&R, &R) -> Option<R>) -> Result<R> {
    let mut q = psi_n;
    for m in proper_divisors(n) {
        q = div(&q, &tilde(m)?).ok_or(Error::InexactDivision)?;
    }
    Ok(q)
}

/// Symbolic Legendre division polynomials in `ℤ[λ][x]`, λ outer.
#[derive(Clone, Debug)]
pub struct Legendre {
    sys: RecurrenceSystem<BiPoly<BigInt>>,
    tilde: BTreeMap<u64, BiPoly<BigInt>>,
}

impl Default for Legendre {
    fn default() -> Self {
        Legendre::new()
    }
}

impl Legendre {
    pub fn new() -> Self {
        let lambda = BiPoly::<BigInt>::outer_var();
        let x = BiPoly::<BigInt>::inner_var();
        Legendre { sys: legendre_system(&lambda, &x), tilde: BTreeMap::new() }
    }

    pub fn psi(&mut self, n: u64) -> Result<BiPoly<BigInt>> {
        self.sys.h(n)
    }

    pub fn psi_tilde(&mut self, n: u64) -> Result<BiPoly<BigInt>> {
        if n <= 2 {
            return Ok(BiPoly::one());
        }
        if let Some(t) = self.tilde.get(&n) {
            return Ok(t.clone());
        }
        let mut q = self.psi(n)?;
        for m in proper_divisors(n) {
            let t = self.psi_tilde(m)?;
            q = q.div_exact(&t).ok_or(Error::InexactDivision)?;
        }
        self.tilde.insert(n, q.clone());
        Ok(q)
    }
}

pub fn legendre_psi(n: u64) -> Result<BiPoly<BigInt>> {
    Legendre::new().psi(n)
}

pub fn psi_tilde(n: u64) -> Result<BiPoly<BigInt>> {
    Legendre::new().psi_tilde(n)
}

/// Upper bounds for `(deg_λ, deg_x, total degree)`; `None` is the zero polynomial.
///
/// Sums bound products and maxima bound sums and differences, so every value
/// the recurrence produces is an upper bound for the true degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegBound(pub Option<[i64; 3]>);

impl DegBound {
    pub const LAMBDA: DegBound = DegBound(Some([1, 0, 1]));
    pub const X: DegBound = DegBound(Some([0, 1, 1]));
}

impl RingOps for DegBound {
    fn plus(&self, o: &Self) -> Self {
        match (self.0, o.0) {
            (None, _) => *o,
            (_, None) => *self,
            (Some(a), Some(b)) => DegBound(Some([a[0].max(b[0]), a[1].max(b[1]), a[2].max(b[2])])),
        }
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(o)
    }
    fn times(&self, o: &Self) -> Self {
        match (self.0, o.0) {
            (Some(a), Some(b)) => DegBound(Some([a[0] + b[0], a[1] + b[1], a[2] + b[2]])),
            _ => DegBound(None),
        }
    }
    fn negated(&self) -> Self {
        *self
    }
    fn is_zero(&self) -> bool {
        self.0.is_none()
    }
    fn int_like(&self, n: i64) -> Self {
        DegBound((n != 0).then_some([0, 0, 0]))
    }
}

/// Legendre recurrence modulo `2^k` in dense form, for the congruence and degree checks.
pub fn legendre_mod2k(k: u8) -> RecurrenceSystem<Dense2k> {
    let lambda = Dense2k::from_terms(k, &[(1, 0, 1)]);
    let x = Dense2k::from_terms(k, &[(0, 1, 1)]);
    legendre_system(&lambda, &x)
}

/// Whether `p ≡ 2^e (λ - x^2)^d mod 2^(e+1)` for a dense `p` modulo at least `2^(e+1)`.
///
/// Modulo 2, `(λ - x^2)^d` has the term `λ^(d-i) x^(2i)` exactly when
/// `binom(d, i)` is odd, i.e. when `i & d == i`.
pub fn matches_congruence(p: &Dense2k, e: u32, d: u64) -> bool {
    let k = (e + 1) as u8;
    if p.k < k {
        return false;
    }
    let r = p.reduce_to(k);
    let top = 1u8 << e;
    let terms = r.terms();
    let mut count = 0u64;
    for (i, j, c) in terms {
        let i = i as u64;
        if i > d || j as u64 != 2 * (d - i) || c != top {
            return false;
        }
        let t = d - i;
        if t & d != t {
            return false;
        }
        count += 1;
    }
    count == 1u64 << d.count_ones()
}

/// Checks the congruence `ψ_n ≡ 2^e(n) (λ - x^2)^d(n) mod 2^(e(n)+1)` for every `3 ≤ n ≤ max_n`.
/// Returns the indices that fail.
pub fn congruence_suite_legendre(max_n: u64) -> Result<Vec<u64>> {
    let k = (3..=max_n).map(|n| e(n) + 1).max().unwrap_or(1).max(1) as u8;
    if k > 8 {
        return Err(domain("congruence suite limited to e(n) <= 7"));
    }
    let mut sys = legendre_mod2k(k).with_cap(max_n.max(4));
    let mut bad = Vec::new();
    for n in 3..=max_n {
        if !matches_congruence(&sys.h(n)?, e(n), d(n)) {
            bad.push(n);
        }
    }
    Ok(bad)
}

pub fn congruence_check_legendre(n: u64) -> Result<bool> {
    let k = (e(n) + 1) as u8;
    if k > 8 {
        return Err(domain("congruence check limited to e(n) <= 7"));
    }
    Ok(matches_congruence(&legendre_mod2k(k).with_cap(n.max(4)).h(n)?, e(n), d(n)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub n: u64,
    pub deg_lambda: u64,
    pub deg_x: u64,
    pub total: u64,
    /// `ψ_n ≡ 2^e(n) (λ - x^2)^d(n) mod 2^(e(n)+1)`.
    pub congruence: bool,
    /// The coefficient of `λ^d(n)` reduces to the constant `2^e(n)` modulo `2^(e(n)+1)`.
    pub unit_leading: bool,
}

/// Exact degrees and the 2-adic congruence of `ψ_n` for `3 ≤ n ≤ max_n`.
///
/// Upper bounds come from running the recurrence on [`DegBound`]. Lower
/// bounds come from the reduction modulo `2^(e+1)`: a monomial that survives
/// the reduction is present in `ψ_n`.
pub fn degree_suite_legendre(max_n: u64) -> Result<Vec<DegreeReport>> {
    let k = (3..=max_n).map(|n| e(n) + 1).max().unwrap_or(1) as u8;
    if k > 8 {
        return Err(domain("degree suite limited to e(n) <= 7"));
    }
    let mut dense = legendre_mod2k(k).with_cap(max_n.max(4));
    let mut bounds = legendre_system(&DegBound::LAMBDA, &DegBound::X).with_cap(max_n.max(4));
    let mut out = Vec::new();
    for n in 3..=max_n {
        let ub = bounds.h(n)?.0.ok_or_else(|| domain("zero division polynomial"))?;
        let full = dense.h(n)?;
        let congruence = matches_congruence(&full, e(n), d(n));
        let low = full.reduce_to((e(n) + 1) as u8);
        let (ll, lx) = low.degrees().ok_or_else(|| domain("vanishing reduction"))?;
        let lt = low.total_degree().unwrap_or(0);
        let pick = |lo: usize, hi: i64| -> Result<u64> {
            if lo as i64 == hi {
                Ok(lo as u64)
            } else {
                Err(Error::VerificationFailed(format!("degree bounds {lo}..{hi} do not meet for n = {n}")))
            }
        };
        let lead = low.row(d(n) as usize);
        out.push(DegreeReport {
            n,
            deg_lambda: pick(ll, ub[0])?,
            deg_x: pick(lx, ub[1])?,
            total: pick(lt, ub[2])?,
            congruence,
            unit_leading: lead == vec![1u8 << e(n)],
        });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpecialValues {
    pub n: u64,
    /// `ψ_n(λ, 0) = a_n λ^d`.
    pub at_zero: bool,
    /// `ψ_n(λ, 1) = a_n (1-λ)^d`.
    pub at_one: bool,
    /// `ψ_n(λ, λ) = a_n (λ(1-λ))^d`.
    pub at_lambda: bool,
    /// `ψ_n(λ, λ) = a_n (λ(λ-1))^d`.
    pub at_lambda_flipped: bool,
}

impl SpecialValues {
    pub fn all(&self) -> bool {
        self.at_zero && self.at_one && self.at_lambda
    }
}

/// Compares `ψ_n(λ, x)` for `x ∈ {0, 1, λ}` with the closed forms, for all `3 ≤ n ≤ max_n`.
pub fn special_values_suite(max_n: u64) -> Result<Vec<SpecialValues>> {
    let lambda = UPoly::<BigInt>::var();
    let one_minus = UPoly::<BigInt>::from_ints(&[1, -1]);
    let xs = [UPoly::<BigInt>::zero(), UPoly::<BigInt>::one(), lambda.clone()];
    let bases = [lambda.clone(), one_minus.clone(), lambda.mul(&one_minus), lambda.mul(&one_minus.neg())];
    let mut systems: Vec<RecurrenceSystem<UPoly<BigInt>>> = xs.iter().map(|x| legendre_system(&lambda, x).with_cap(max_n.max(4))).collect();
    let mut out = Vec::new();
    for n in 3..=max_n {
        let an = UPoly::constant(BigInt::from(a_n(n)));
        let want: Vec<UPoly<BigInt>> = bases.iter().map(|b| b.pow(d(n)).mul(&an)).collect();
        let got = [systems[0].h(n)?, systems[1].h(n)?, systems[2].h(n)?];
        out.push(SpecialValues { n, at_zero: got[0] == want[0], at_one: got[1] == want[1], at_lambda: got[2] == want[2], at_lambda_flipped: got[2] == want[3] });
    }
    Ok(out)
}

pub fn special_values_check(n: u64) -> Result<bool> {
    if n < 3 {
        return Ok(true);
    }
    Ok(special_values_suite(n)?.last().map(|r| r.all()).unwrap_or(true))
}

/// Weighted-homogeneous polynomial in `(A, B, x)` with weights `(2, 3, 1)`,
/// stored as one dense grid over `A^j B^k` per weight `w`; the exponent of
/// `x` is `w - 2j - 3k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WPoly<R> {
    pieces: BTreeMap<u32, Grid<R>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
struct Grid<R> {
    /// `c[j][k]`, coefficient of `A^j B^k x^(w-2j-3k)`.
    c: Vec<Vec<R>>,
}

impl<R: Ring> Grid<R> {
    fn empty(w: u32) -> Self {
        Grid { c: (0..=w / 2).map(|j| vec![R::zero(); ((w - 2 * j) / 3 + 1) as usize]).collect() }
    }

    fn is_zero(&self) -> bool {
        self.c.iter().all(|r| r.iter().all(|v| v.is_zero()))
    }
}

impl<R: Ring> WPoly<R> {
    pub fn zero() -> Self {
        WPoly { pieces: BTreeMap::new() }
    }

    /// Builds from `(j, k, i, c)` meaning `c A^j B^k x^i`.
    pub fn from_terms(terms: &[(u32, u32, u32, R)]) -> Self {
        let mut out = WPoly::<R>::zero();
        for (j, k, i, c) in terms {
            let w = 2 * j + 3 * k + i;
            let g = out.pieces.entry(w).or_insert_with(|| Grid::empty(w));
            let slot = &mut g.c[*j as usize][*k as usize];
            *slot = slot.plus(c);
        }
        out.normalized()
    }

    pub fn var_a() -> Self {
        WPoly::from_terms(&[(1, 0, 0, R::one())])
    }

    pub fn var_b() -> Self {
        WPoly::from_terms(&[(0, 1, 0, R::one())])
    }

    pub fn var_x() -> Self {
        WPoly::from_terms(&[(0, 0, 1, R::one())])
    }

    fn normalized(mut self) -> Self {
        self.pieces.retain(|_, g| !g.is_zero());
        self
    }

    /// Weights carrying a nonzero coefficient.
    pub fn weights(&self) -> Vec<u32> {
        self.pieces.keys().copied().collect()
    }

    /// Nonzero terms `(j, k, i, c)` for `c A^j B^k x^i`.
    pub fn terms(&self) -> Vec<(u32, u32, u32, R)> {
        let mut out = Vec::new();
        for (&w, g) in &self.pieces {
            for (j, row) in g.c.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        let (j, k) = (j as u32, k as u32);
                        out.push((j, k, w - 2 * j - 3 * k, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn deg_a(&self) -> Option<u32> {
        self.terms().iter().map(|t| t.0).max()
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> WPoly<S> {
        let pieces = self.pieces.iter().map(|(&w, g)| (w, Grid { c: g.c.iter().map(|r| r.iter().map(&f).collect()).collect() })).collect();
        WPoly { pieces }.normalized()
    }

    fn combine(&self, o: &Self, neg: bool) -> Self {
        let mut out = self.clone();
        for (&w, g) in &o.pieces {
            let t = out.pieces.entry(w).or_insert_with(|| Grid::empty(w));
            for (j, row) in g.c.iter().enumerate() {
                for (k, v) in row.iter().enumerate() {
                    let s = &mut t.c[j][k];
                    *s = if neg { s.minus(v) } else { s.plus(v) };
                }
            }
        }
        out.normalized()
    }

    pub fn fmt_awx(&self) -> String
    where
        R: core::fmt::Display,
    {
        let mut terms = self.terms();
        terms.sort_by(|a, b| (b.2, b.0, b.1).cmp(&(a.2, a.0, a.1)));
        let rendered: Vec<(R, String)> = terms
            .into_iter()
            .map(|(j, k, i, c)| {
                let parts: Vec<String> = [("A", j), ("B", k), ("x", i)]
                    .iter()
                    .filter(|(_, e)| *e > 0)
                    .map(|(v, e)| if *e == 1 { String::from(*v) } else { format!("{v}^{e}") })
                    .collect();
                (c, parts.join("*"))
            })
            .collect();
        crate::poly::fmt_terms(rendered.iter().map(|(c, m)| (c, m.clone())))
    }
}

impl<R: Ring> RingOps for WPoly<R> {
    fn plus(&self, o: &Self) -> Self {
        self.combine(o, false)
    }
    fn minus(&self, o: &Self) -> Self {
        self.combine(o, true)
    }
    fn times(&self, o: &Self) -> Self {
        let mut out: BTreeMap<u32, Grid<R>> = BTreeMap::new();
        for (&w1, g1) in &self.pieces {
            for (&w2, g2) in &o.pieces {
                let w = w1 + w2;
                let t = out.entry(w).or_insert_with(|| Grid::empty(w));
                for (j1, r1) in g1.c.iter().enumerate() {
                    for (k1, v1) in r1.iter().enumerate() {
                        if v1.is_zero() {
                            continue;
                        }
                        for (j2, r2) in g2.c.iter().enumerate() {
                            let row = &mut t.c[j1 + j2];
                            for (k2, v2) in r2.iter().enumerate() {
                                row[k1 + k2].add_prod(v1, v2);
                            }
                        }
                    }
                }
            }
        }
        WPoly { pieces: out }.normalized()
    }
    fn negated(&self) -> Self {
        self.map(|c| c.negated())
    }
    fn is_zero(&self) -> bool {
        self.pieces.is_empty()
    }
    fn int_like(&self, n: i64) -> Self {
        WPoly::from_terms(&[(0, 0, 0, R::from_i64(n))])
    }
}

impl<R: Ring> PartialEq<()> for WPoly<R> {
    fn eq(&self, _: &()) -> bool {
        self.is_zero()
    }
}

/// Symbolic `Ψ_n(A, B, x)` over `ℤ`.
pub fn weierstrass_symbolic() -> RecurrenceSystem<WPoly<BigInt>> {
    weierstrass_system(&WPoly::var_a(), &WPoly::var_b(), &WPoly::var_x())
}

pub fn weierstrass_psi(n: u64) -> Result<WPoly<BigInt>> {
    weierstrass_symbolic().with_cap(n.max(4)).h(n)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassReport {
    pub n: u64,
    pub congruence: bool,
    pub deg_a: u32,
    pub homogeneous: bool,
}

/// Congruence, `deg_A` and weighted homogeneity of `Ψ_n` for `3 ≤ n ≤ max_n`, exactly over `ℤ`.
pub fn weierstrass_suite(max_n: u64) -> Result<Vec<WeierstrassReport>> {
    let mut sys = weierstrass_symbolic().with_cap(max_n.max(4));
    let mut out = Vec::new();
    for n in 3..=max_n {
        let p = sys.h(n)?;
        out.push(WeierstrassReport { n, congruence: weierstrass_congruence(&p, n), deg_a: p.deg_a().unwrap_or(0), homogeneous: p.weights() == vec![2 * d(n) as u32] });
    }
    Ok(out)
}

fn weierstrass_congruence(p: &WPoly<BigInt>, n: u64) -> bool {
    use num_integer::Integer;
    use num_traits::Zero;
    let (en, dn) = (e(n), d(n));
    let m = BigInt::from(1) << (en + 1);
    // 2^e (A - x^2)^d has the term binom(d, j) 2^e (-1)^(d-j) A^j x^(2(d-j)).
    let mut target: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
    let mut binom = BigInt::from(1);
    for j in 0..=dn {
        let sign = if (dn - j) % 2 == 0 { 1 } else { -1 };
        let c = (&binom * BigInt::from(sign)) << en;
        let c = c.mod_floor(&m);
        if !Zero::is_zero(&c) {
            target.insert((j as u32, 0, 2 * (dn - j) as u32), c);
        }
        binom = binom * BigInt::from(dn - j) / BigInt::from(j + 1);
    }
    let mut got: BTreeMap<(u32, u32, u32), BigInt> = BTreeMap::new();
    for (j, k, i, c) in p.terms() {
        let r = c.mod_floor(&m);
        if !Zero::is_zero(&r) {
            got.insert((j, k, i), r);
        }
    }
    got == target
}

pub fn congruence_check_weierstrass(n: u64) -> Result<bool> {
    Ok(weierstrass_congruence(&weierstrass_psi(n)?, n))
}

/// Value of the Lattès map: a field element or the point at infinity.
#[derive(Clone, Debug, PartialEq)]
pub enum Projective<R> {
    Finite(R),
    Infinity,
}

/// `f_λ(x) = (x^2 - λ)^2 / (4x(x-1)(x-λ))`, the x-coordinate of `2P`.
pub fn lattes<R: Field>(lambda: &R, x: &R) -> Result<Projective<R>> {
    let one = lambda.int_like(1);
    if lambda.is_zero() || lambda.minus(&one).is_zero() {
        return Err(domain("λ must avoid 0 and 1"));
    }
    let num = x.square().minus(lambda).square();
    let den = x.times(&x.minus(&one)).times(&x.minus(lambda)).scaled(4);
    match (num.is_zero(), den.is_zero()) {
        (_, false) => Ok(Projective::Finite(num.try_div(&den)?)),
        (false, true) => Ok(Projective::Infinity),
        (true, true) => Err(domain("numerator and denominator of the Lattès map both vanish")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, Rational};
    use crate::poly::parse::parse_bivariate;

    fn bp(s: &str) -> BiPoly<BigInt> {
        parse_bivariate(s, 'a', 'b').unwrap()
    }

    #[test]
    fn degree_data() {
        assert_eq!((d(1), d(2), d(3), d(4), d(5), d(64)), (0, 0, 2, 3, 6, 1023));
        assert_eq!((e(3), e(4), e(8), e(12), e(16), e(64)), (0, 1, 2, 1, 3, 5));
        assert_eq!((a_n(3), a_n(4), a_n(5), a_n(6), a_n(8)), (-1, -2, 1, 3, -4));
        let want = [(3, 2), (4, 1), (5, 6), (6, 2), (7, 12), (8, 4), (9, 18), (10, 6), (11, 30), (12, 8), (14, 12), (16, 16), (18, 18), (20, 24)];
        for (n, dl) in want {
            assert_eq!(delta(n), dl, "delta({n})");
        }
        assert_eq!((3..=12).map(deg_lambda_tilde).sum::<u64>(), 131);
    }

    #[test]
    fn seeds_match_printed_forms() {
        let mut l = Legendre::new();
        assert_eq!(l.psi(3).unwrap(), bp("3*b^4 - 4*a*b^3 - 4*b^3 + 6*a*b^2 - a^2"));
        assert_eq!(l.psi(4).unwrap(), bp("2*(b^2 - a)*(b^2 - 2*b + a)*(b^2 - 2*a*b + a)"));
        let p5 = l.psi(5).unwrap();
        assert_eq!(p5.bidegree(), Some((6, 12)));
        assert_eq!(l.psi_tilde(4).unwrap(), l.psi(4).unwrap());
        assert_eq!(l.psi_tilde(3).unwrap().outer_degree(), Some(2));
        let t6 = l.psi_tilde(6).unwrap();
        assert_eq!(t6.mul(&l.psi(3).unwrap()), l.psi(6).unwrap());
        assert_eq!(t6.outer_degree(), Some(6));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(legendre_psi_eval(3, &int(9), &int(3)).unwrap(), int(-432));
        assert_eq!(legendre_psi_eval(4, &int(9), &int(3)).unwrap(), int(0));
        assert_eq!(legendre_psi_eval(3, &int(-3), &int(3)).unwrap(), int(288));
        assert_eq!(legendre_psi_eval(1, &int(-3), &int(3)).unwrap(), int(1));
    }

    #[test]
    fn congruences_small() {
        assert_eq!(congruence_suite_legendre(24).unwrap(), Vec::<u64>::new());
        for n in [3, 8, 12] {
            assert!(congruence_check_legendre(n).unwrap());
        }
        // Exact reduction of the symbolic polynomial agrees.
        let mut l = Legendre::new();
        for n in 3..=10 {
            let p = l.psi(n).unwrap();
            let g = bp("a - b^2").pow(d(n)).scale(&UPoly::constant(BigInt::from(1) << e(n)));
            assert!(crate::poly::reduce_mod_2k(&p.sub(&g), e(n) + 1).is_zero(), "n = {n}");
        }
        // A wrong exponent is rejected.
        let sys = legendre_mod2k(2).h(4).unwrap();
        assert!(!matches_congruence(&sys, 1, 4));
    }

    #[test]
    fn degrees_small() {
        for r in degree_suite_legendre(20).unwrap() {
            assert_eq!((r.deg_lambda, r.deg_x, r.total), (d(r.n), 2 * d(r.n), 2 * d(r.n)));
            assert!(r.unit_leading && r.congruence);
        }
    }

    #[test]
    fn special_values_small() {
        for r in special_values_suite(16).unwrap() {
            assert!(r.at_zero && r.at_one && r.at_lambda_flipped, "{r:?}");
            // The two forms at x = λ differ by (-1)^d(n), odd exactly when 4 | n.
            assert_eq!(r.at_lambda, r.n % 4 != 0, "{r:?}");
        }
        let mut l = Legendre::new();
        assert_eq!(l.psi(4).unwrap().eval_inner(&BigInt::from(0)), UPoly::monomial(BigInt::from(-2), 3));
    }

    #[test]
    fn weierstrass_seeds_and_checks() {
        let a = WPoly::<BigInt>::var_a();
        let b = WPoly::<BigInt>::var_b();
        let x = WPoly::<BigInt>::var_x();
        let p3 = weierstrass_psi(3).unwrap();
        let want = x.power(4).scaled(3).plus(&a.times(&x.square()).scaled(6)).plus(&b.times(&x).scaled(12)).minus(&a.square());
        assert_eq!(p3, want);
        assert_eq!(p3.fmt_awx(), "3*x^4 + 6*A*x^2 + 12*B*x - A^2");
        let r = weierstrass_suite(12).unwrap();
        for rep in r {
            assert!(rep.congruence && rep.homogeneous && rep.deg_a as u64 == d(rep.n), "{rep:?}");
        }
    }

    #[test]
    fn lattes_values() {
        let a = Rational::new(BigInt::from(5), BigInt::from(3));
        assert_eq!(lattes(&a.square(), &a).unwrap(), Projective::Finite(int(0)));
        assert_eq!(lattes(&a, &a).unwrap(), Projective::Infinity);
        assert!(lattes(&int(1), &a).is_err());
    }
}
