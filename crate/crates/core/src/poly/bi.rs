use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;

use super::{fmt_terms, mono, UPoly};
use crate::arith::Rational;
use crate::modp;
use crate::ring::{ExactDiv, Ring, RingOps};

/// Polynomial in two variables, outer over inner.
pub type BiPoly<R> = UPoly<UPoly<R>>;

impl<R: Ring> UPoly<UPoly<R>> {
    /// Builds from `(outer exponent, inner exponent, coefficient)` triples; repeated monomials add up.
    pub fn from_terms(terms: &[(usize, usize, R)]) -> Self {
        let n = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let mut rows: Vec<Vec<R>> = vec![Vec::new(); n];
        for (i, j, c) in terms {
            let row = &mut rows[*i];
            if row.len() <= *j {
                row.resize(j + 1, R::zero());
            }
            row[*j] = row[*j].plus(c);
        }
        UPoly::new(rows.into_iter().map(UPoly::new).collect())
    }

    /// The inner variable as a bivariate polynomial.
    pub fn inner_var() -> Self {
        UPoly::constant(UPoly::var())
    }

    /// The outer variable as a bivariate polynomial.
    pub fn outer_var() -> Self {
        UPoly::var()
    }

    pub fn lift_inner(p: &UPoly<R>) -> Self {
        UPoly::constant(p.clone())
    }

    pub fn lift_outer(p: &UPoly<R>) -> Self {
        p.map(|c| UPoly::constant(c.clone()))
    }

    /// Nonzero terms as `(outer exponent, inner exponent, coefficient)`.
    pub fn terms(&self) -> Vec<(usize, usize, R)> {
        let mut out = Vec::new();
        for (i, row) in self.coeffs().iter().enumerate() {
            for (j, c) in row.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn outer_degree(&self) -> Option<usize> {
        self.degree()
    }

    pub fn inner_degree(&self) -> Option<usize> {
        self.coeffs().iter().filter_map(|c| c.degree()).max()
    }

    /// `(outer degree, inner degree)`, `None` for zero.
    pub fn bidegree(&self) -> Option<(usize, usize)> {
        Some((self.outer_degree()?, self.inner_degree()?))
    }

    pub fn total_degree(&self) -> Option<usize> {
        self.coeffs().iter().enumerate().filter_map(|(i, c)| c.degree().map(|d| d + i)).max()
    }

    /// Swaps the roles of the two variables.
    pub fn transpose(&self) -> Self {
        let mut t = Vec::new();
        for (i, j, c) in self.terms() {
            t.push((j, i, c));
        }
        Self::from_terms(&t)
    }

    /// Specializes the inner variable.
    pub fn eval_inner(&self, x: &R) -> UPoly<R> {
        UPoly::new(self.coeffs().iter().map(|c| c.eval(x)).collect())
    }

    /// Specializes the outer variable.
    pub fn eval_outer(&self, x: &R) -> UPoly<R> {
        let mut acc = UPoly::default();
        let xc = UPoly::constant(x.clone());
        for c in self.coeffs().iter().rev() {
            acc = acc.mul(&xc).add(c);
        }
        acc
    }

    pub fn eval2(&self, outer: &R, inner: &R) -> R {
        self.eval_inner(inner).eval(outer)
    }

    pub fn derivative_inner(&self) -> Self {
        UPoly::new(self.coeffs().iter().map(|c| c.derivative()).collect())
    }

    pub fn fmt_bi(&self, outer: &str, inner: &str) -> String
    where
        R: fmt::Display,
    {
        let mut terms = self.terms();
        // Graded by total degree, then by outer degree, highest first.
        terms.sort_by(|x, y| (y.0 + y.1, y.0).cmp(&(x.0 + x.1, x.0)));
        let rendered: Vec<(R, String)> = terms
            .into_iter()
            .map(|(i, j, c)| {
                let m = match (mono(outer, i), mono(inner, j)) {
                    (a, b) if a.is_empty() => b,
                    (a, b) if b.is_empty() => a,
                    (a, b) => alloc::format!("{a}*{b}"),
                };
                (c, m)
            })
            .collect();
        fmt_terms(rendered.iter().map(|(c, m)| (c, m.clone())))
    }
}

impl BiPoly<BigInt> {
    pub fn to_rational_bi(&self) -> BiPoly<Rational> {
        self.map(|c| c.to_rational())
    }

    /// Integer content of all coefficients.
    pub fn int_content(&self) -> BigInt {
        self.coeffs().iter().fold(BigInt::zero(), |g, c| g.gcd(&c.content()))
    }
}

/// Coefficients reduced to the range `[0, 2^k)`.
pub fn reduce_mod_2k(p: &BiPoly<BigInt>, k: u32) -> BiPoly<BigInt> {
    let m = BigInt::one() << k;
    p.map(|c| c.map(|x| x.mod_floor(&m)))
}

/// Whether `f` divides `g` in `ℚ[a, b]`, for `f` with coprime integer coefficients.
///
/// A specialization modulo a large prime rejects most non-divisors before the
/// exact pseudo-division runs.
pub fn divides(f: &BiPoly<BigInt>, g: &BiPoly<BigInt>) -> bool {
    if f.is_zero() {
        return g.is_zero();
    }
    if g.is_zero() {
        return true;
    }
    let p = modp::CERT_PRIMES[0];
    let lc = f.lead().expect("nonzero");
    for b0 in [3u64, 7, 19, 1_000_003, 97_531] {
        if modp::eval(&modp::from_int_poly(lc, p), b0, p) == 0 {
            continue;
        }
        let fs = modp::eval_inner(f, b0, p);
        let gs = modp::eval_inner(g, b0, p);
        if fs.len() > 1 && !modp::rem(&gs, &fs, p).is_empty() {
            return false;
        }
    }
    let c = f.int_content();
    let fp = if c.is_one() { f.clone() } else { f.map(|r| r.map(|x| x / &c)) };
    g.div_exact(&fp).is_some()
}

/// Squarefreeness in `ℚ[a, b]` with `a` the outer variable.
///
/// The polynomial is squarefree iff its content in `ℚ[b]` is squarefree and
/// the primitive part shares no factor with its `a`-derivative. Both facts are
/// first certified by specializations modulo a large prime; only when no
/// certificate appears does the exact resultant over `ℚ[b]` decide.
pub fn squarefree_bivariate(f: &BiPoly<BigInt>) -> bool {
    if f.is_zero() {
        return false;
    }
    if content_trivial_certificate(f) && primitive_squarefree_certificate(f) {
        return true;
    }
    squarefree_exact(f)
}

fn content_trivial_certificate(f: &BiPoly<BigInt>) -> bool {
    if f.degree() == Some(0) {
        return f.coeffs()[0].is_constant();
    }
    // Coprime specializations whose reductions keep their degree have a nonzero resultant.
    let specs: Vec<UPoly<BigInt>> = [2i64, 5, 11, 1_234_567].iter().map(|&a0| f.eval_outer(&BigInt::from(a0))).collect();
    for &p in &modp::CERT_PRIMES[..2] {
        let reduced: Vec<Option<modp::PolyP>> = specs
            .iter()
            .map(|s| {
                let r = modp::from_int_poly(s, p);
                (!s.is_zero() && r.len() == s.coeffs().len()).then_some(r)
            })
            .collect();
        for i in 0..reduced.len() {
            for j in i + 1..reduced.len() {
                if let (Some(x), Some(y)) = (&reduced[i], &reduced[j]) {
                    if modp::gcd(x, y, p).len() == 1 {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn primitive_squarefree_certificate(f: &BiPoly<BigInt>) -> bool {
    let da = match f.degree() {
        Some(0) | None => return true,
        Some(d) => d,
    };
    let lc = f.lead().expect("nonzero");
    for &p in &modp::CERT_PRIMES[..2] {
        for b0 in [3u64, 10, 29, 7_654_321] {
            if modp::eval(&modp::from_int_poly(lc, p), b0, p) == 0 {
                continue;
            }
            let s = modp::eval_inner(f, b0, p);
            debug_assert_eq!(s.len(), da + 1);
            let ds = modp::derivative(&s, p);
            if modp::gcd(&s, &ds, p).len() == 1 {
                return true;
            }
        }
    }
    false
}

fn squarefree_exact(f: &BiPoly<BigInt>) -> bool {
    let q = f.to_rational_bi();
    let mut content = UPoly::<Rational>::default();
    for c in q.coeffs() {
        content = content.gcd(c).expect("field coefficients");
    }
    let cd = content.gcd(&content.derivative()).expect("field coefficients");
    if !cd.is_constant() {
        return false;
    }
    let prim = q.div_exact(&UPoly::constant(content)).expect("content divides");
    if prim.degree().unwrap_or(0) == 0 {
        return true;
    }
    let disc = prim.resultant(&prim.derivative()).expect("exact chain");
    !disc.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_bivariate;

    fn bp(s: &str) -> BiPoly<BigInt> {
        parse_bivariate(s, 'a', 'b').unwrap()
    }

    #[test]
    fn transpose_and_eval() {
        let f = bp("a^2*b - 3*b + 1");
        assert_eq!(f.bidegree(), Some((2, 1)));
        assert_eq!(f.transpose(), bp("b^2*a - 3*a + 1"));
        assert_eq!(f.eval2(&BigInt::from(2), &BigInt::from(5)), BigInt::from(6));
        assert_eq!(f.fmt_bi("a", "b"), "a^2*b - 3*b + 1");
    }

    #[test]
    fn squarefree_examples() {
        assert!(!squarefree_bivariate(&bp("a^2 - 2*a*b + b^2")));
        assert!(squarefree_bivariate(&bp("a^2 - b")));
        assert!(!squarefree_bivariate(&bp("b^2*a + b^2")));
        assert!(!squarefree_bivariate(&bp("b^2 + 2*b + 1")));
        assert!(squarefree_bivariate(&bp("a*b + a")));
    }

    #[test]
    fn divisibility() {
        let f = bp("a + b");
        let g = bp("a^2 - b^2");
        assert!(divides(&f, &g));
        assert!(!divides(&bp("a - b + 1"), &g));
        assert!(divides(&bp("2*a + 2*b"), &g));
    }

    #[test]
    fn mod_2k_reduction() {
        let f = bp("-3*a*b + 9");
        assert_eq!(reduce_mod_2k(&f, 2), bp("a*b + 1"));
    }
}
