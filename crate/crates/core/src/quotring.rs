//! Number fields presented as `ℚ[t]/(m(t))`.
//!
//! The modulus is never tested for irreducibility. A reducible modulus shows
//! up as [`Error::ZeroDivisorFound`] the first time an inversion hits a zero
//! divisor.
//!
//! [`FieldElem`] carries its ring behind an [`Arc`], or no ring at all for the
//! rational constants that [`Ring::zero`] and [`Ring::one`] must produce
//! without context. Mixing elements of two different rings panics in the
//! [`RingOps`] methods; the `try_*` methods report [`Error::RingMismatch`].

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Signed;

use crate::arith::{best_approximation, ln_abs_bigint, Rational};
use crate::error::{domain, Error, Result};
use crate::numeric::{self, CFloat};
use crate::poly::parse::parse_univariate;
use crate::poly::UPoly;
use crate::ring::{Field, Ring, RingOps};

#[derive(Debug, PartialEq, Eq)]
pub struct QuotRing {
    modulus: UPoly<Rational>,
}

impl QuotRing {
    /// The ring `ℚ[t]/(m)`; `m` is made monic.
    pub fn new(m: &UPoly<Rational>) -> Result<Arc<Self>> {
        if m.degree().unwrap_or(0) == 0 {
            return Err(domain("modulus must have degree at least 1"));
        }
        Ok(Arc::new(QuotRing { modulus: m.monic()? }))
    }

    /// Parses the modulus as a polynomial in `t`.
    pub fn parse(s: &str) -> Result<Arc<Self>> {
        QuotRing::new(&parse_univariate(s, 't')?)
    }

    pub fn modulus(&self) -> &UPoly<Rational> {
        &self.modulus
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().expect("nonconstant modulus")
    }

    /// The class of `t`.
    pub fn gen(self: &Arc<Self>) -> FieldElem {
        self.elem(&UPoly::var())
    }

    /// The class of a polynomial in `t`.
    pub fn elem(self: &Arc<Self>, p: &UPoly<Rational>) -> FieldElem {
        let rep = if p.coeffs().len() > self.degree() { p.rem(&self.modulus).expect("monic modulus") } else { p.clone() };
        FieldElem { ring: Some(self.clone()), rep }
    }

    pub fn from_rational(self: &Arc<Self>, q: &Rational) -> FieldElem {
        self.elem(&UPoly::constant(q.clone()))
    }

    pub fn parse_elem(self: &Arc<Self>, s: &str) -> Result<FieldElem> {
        Ok(self.elem(&parse_univariate(s, 't')?))
    }

    /// Complex roots of the modulus, i.e. the images of `t` under the embeddings into `ℂ`.
    pub fn embeddings(&self, prec: u32) -> Result<Vec<CFloat>> {
        let sf = self.modulus.squarefree_part()?;
        if sf.degree() != self.modulus.degree() {
            return Err(domain("modulus is not squarefree"));
        }
        numeric::complex_roots(self.modulus.coeffs(), prec)
    }
}

impl fmt::Display for QuotRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[t]/({})", self.modulus.fmt_var("t"))
    }
}

#[derive(Clone, Debug)]
pub struct FieldElem {
    ring: Option<Arc<QuotRing>>,
    rep: UPoly<Rational>,
}

impl PartialEq for FieldElem {
    fn eq(&self, o: &Self) -> bool {
        self.rep == o.rep && (self.ring.is_none() || o.ring.is_none() || same(&self.ring, &o.ring))
    }
}

fn same(a: &Option<Arc<QuotRing>>, b: &Option<Arc<QuotRing>>) -> bool {
    match (a, b) {
        (Some(x), Some(y)) => Arc::ptr_eq(x, y) || x == y,
        _ => true,
    }
}

impl FieldElem {
    /// A rational constant not tied to any ring.
    pub fn rational(q: Rational) -> Self {
        FieldElem { ring: None, rep: UPoly::constant(q) }
    }

    pub fn ring(&self) -> Option<&Arc<QuotRing>> {
        self.ring.as_ref()
    }

    /// The reduced representative, a polynomial in `t` of degree below the modulus degree.
    pub fn rep(&self) -> &UPoly<Rational> {
        &self.rep
    }

    /// The value when the representative is constant.
    pub fn as_rational(&self) -> Option<Rational> {
        self.rep.is_constant().then(|| self.rep.coeff(0))
    }

    fn joint(&self, o: &Self) -> Result<Option<Arc<QuotRing>>> {
        if !same(&self.ring, &o.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.ring.clone().or_else(|| o.ring.clone()))
    }

    fn reduce(ring: Option<Arc<QuotRing>>, p: UPoly<Rational>) -> Self {
        match ring {
            Some(r) => r.elem(&p),
            None => FieldElem { ring: None, rep: p },
        }
    }

    pub fn try_plus(&self, o: &Self) -> Result<Self> {
        Ok(FieldElem { ring: self.joint(o)?, rep: self.rep.add(&o.rep) })
    }

    pub fn try_minus(&self, o: &Self) -> Result<Self> {
        Ok(FieldElem { ring: self.joint(o)?, rep: self.rep.sub(&o.rep) })
    }

    pub fn try_times(&self, o: &Self) -> Result<Self> {
        let ring = self.joint(o)?;
        Ok(FieldElem::reduce(ring, self.rep.mul(&o.rep)))
    }

    /// Image under the embedding sending `t` to `root`.
    pub fn embed(&self, root: &CFloat) -> CFloat {
        self.rep.eval_map(root, |q| CFloat::from_rational(q, root.prec))
    }

    pub fn fmt_t(&self) -> String {
        let s = self.rep.fmt_var("t");
        if s.is_empty() {
            String::from("0")
        } else {
            s
        }
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_t())
    }
}

impl RingOps for FieldElem {
    fn plus(&self, o: &Self) -> Self {
        self.try_plus(o).expect("elements of one ring")
    }
    fn minus(&self, o: &Self) -> Self {
        self.try_minus(o).expect("elements of one ring")
    }
    fn times(&self, o: &Self) -> Self {
        self.try_times(o).expect("elements of one ring")
    }
    fn negated(&self) -> Self {
        FieldElem { ring: self.ring.clone(), rep: self.rep.neg() }
    }
    fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }
    fn int_like(&self, n: i64) -> Self {
        FieldElem { ring: self.ring.clone(), rep: UPoly::from_ints(&[n]) }
    }
}

impl Ring for FieldElem {
    fn zero() -> Self {
        FieldElem { ring: None, rep: UPoly::default() }
    }
    fn one() -> Self {
        FieldElem { ring: None, rep: UPoly::one() }
    }
    fn from_i64(n: i64) -> Self {
        FieldElem { ring: None, rep: UPoly::from_ints(&[n]) }
    }
}

impl Field for FieldElem {
    fn try_inv(&self) -> Result<Self> {
        if self.rep.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let Some(ring) = &self.ring else {
            return Ok(FieldElem::rational(self.rep.coeff(0).try_inv()?));
        };
        let (g, s, _) = self.rep.ext_gcd(&ring.modulus)?;
        if !g.is_constant() {
            return Err(Error::ZeroDivisorFound(g));
        }
        Ok(ring.elem(&s))
    }
}

/// Absolute logarithmic height of an algebraic number with minimal polynomial `p`.
pub fn height_from_minpoly(p: &UPoly<Rational>, prec: u32) -> Result<f64> {
    let d = p.degree().filter(|&d| d > 0).ok_or_else(|| domain("minimal polynomial must be nonconstant"))?;
    let z = p.to_primitive_int();
    let mut s = ln_abs_bigint(z.lead().expect("nonzero"));
    if d == 1 {
        // The root is -c0/c1, exactly.
        s = ln_abs_bigint(&z.coeff(0)).max(ln_abs_bigint(&z.coeff(1)));
        return Ok(s);
    }
    let coeffs: Vec<Rational> = z.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect();
    for r in numeric::complex_roots(&coeffs, prec)? {
        let l = r.log2_abs() * core::f64::consts::LN_2;
        if l > 0.0 {
            s += l;
        }
    }
    Ok(s / d as f64)
}

/// Parses `m(t);name=poly;name=poly`, returning the ring and the named elements in order.
pub fn parse_field_descriptor(s: &str) -> Result<(Arc<QuotRing>, Vec<(String, FieldElem)>)> {
    let mut parts = s.split(';');
    let m = parts.next().unwrap_or("").trim();
    let m = m.strip_prefix("m(t)=").unwrap_or(m);
    let ring = QuotRing::parse(m)?;
    let mut named = Vec::new();
    for part in parts {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, val) = part.split_once('=').ok_or_else(|| Error::Parse { line: 1, msg: format!("expected name=poly, got {part:?}") })?;
        named.push((String::from(name.trim()), ring.parse_elem(val)?));
    }
    Ok((ring, named))
}

/// Roots in `K = ℚ[t]/(m)` of a polynomial over `K`, by numeric reconstruction.
///
/// For every embedding `σ` of `K` the image `σ(λ)` of a root is a root of
/// `σ(P)`. Choosing one root per embedding determines the coordinates of `λ`
/// by a Vandermonde solve; they are rounded to small-denominator rationals and
/// kept only if `P(λ) = 0` exactly. Real embeddings only admit real roots and
/// complex conjugate embeddings are paired, which keeps the search small.
/// Roots that are missed simply stay unaccounted for; nothing returned is unverified.
pub fn reconstruct_roots(p: &UPoly<FieldElem>, ring: &Arc<QuotRing>, prec: u32, max_combinations: usize) -> Result<Vec<FieldElem>> {
    let mut found: Vec<FieldElem> = Vec::new();
    let n = match p.degree() {
        None | Some(0) => return Ok(found),
        Some(n) => n,
    };
    let sf = if n > 1 { p.squarefree_part()? } else { p.monic()? };
    let roots_t = ring.embeddings(prec)?;
    let tiny = -(prec as f64) / 2.0;
    // One representative per conjugate pair; real embeddings are their own pair.
    let mut reps: Vec<(usize, bool)> = Vec::new();
    let mut used = vec![false; roots_t.len()];
    for j in 0..roots_t.len() {
        if used[j] {
            continue;
        }
        used[j] = true;
        let real = roots_t[j].im.is_zero() || roots_t[j].im.abs().bits() as f64 - (prec as f64) < tiny;
        if !real {
            let c = roots_t[j].conj();
            let partner = (0..roots_t.len()).filter(|&k| !used[k]).min_by(|&a, &b| dist(&roots_t[a], &c).partial_cmp(&dist(&roots_t[b], &c)).unwrap_or(core::cmp::Ordering::Equal));
            match partner {
                Some(k) => used[k] = true,
                None => return Err(Error::NumericPrecisionExceeded(String::from("unpaired complex embedding"))),
            }
        }
        reps.push((j, real));
    }
    let mut choices: Vec<Vec<CFloat>> = Vec::new();
    for &(j, real) in &reps {
        let coeffs: Vec<CFloat> = sf.coeffs().iter().map(|c| c.embed(&roots_t[j])).collect();
        let mut zs = numeric::complex_roots_c(&coeffs, prec)?;
        if real {
            zs.retain(|z| z.im.is_zero() || z.im.abs().bits() as f64 - (prec as f64) < tiny / 2.0);
        }
        choices.push(zs);
    }
    let total: usize = choices.iter().map(|c| c.len().max(1)).product();
    if choices.iter().any(|c| c.is_empty()) || total > max_combinations {
        return Ok(found);
    }
    // Full Vandermonde system over all embeddings.
    let d = ring.degree();
    let mut order: Vec<(usize, bool)> = Vec::new();
    for (idx, &(_, real)) in reps.iter().enumerate() {
        order.push((idx, false));
        if !real {
            order.push((idx, true));
        }
    }
    let mut rows: Vec<Vec<CFloat>> = Vec::new();
    for &(idx, conj) in &order {
        let r = if conj { roots_t[reps[idx].0].conj() } else { roots_t[reps[idx].0].clone() };
        let mut row = Vec::with_capacity(d);
        let mut pw = r.int_like(1);
        for _ in 0..d {
            row.push(pw.clone());
            pw = pw.times(&r);
        }
        rows.push(row);
    }
    let max_den = BigInt::from(1) << (prec / 3);
    let mut idx = vec![0usize; choices.len()];
    loop {
        let rhs: Vec<CFloat> = order.iter().map(|&(i, conj)| if conj { choices[i][idx[i]].conj() } else { choices[i][idx[i]].clone() }).collect();
        if let Some(c) = numeric::solve(rows.clone(), rhs) {
            let den = BigInt::from(1) << prec;
            let coords: Vec<Rational> = c.iter().map(|x| best_approximation(&x.re, &den, &max_den)).collect();
            let cand = ring.elem(&UPoly::new(coords));
            if !found.contains(&cand) && sf.eval(&cand).is_zero() {
                found.push(cand);
            }
        }
        // Next combination.
        let mut k = 0;
        loop {
            if k == idx.len() {
                return Ok(found);
            }
            idx[k] += 1;
            if idx[k] < choices[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}

fn dist(a: &CFloat, b: &CFloat) -> f64 {
    a.minus(b).log2_abs()
}

/// Named fields used by the worked examples, with their generators checked
/// against their defining relations.
pub mod fixtures {
    use super::*;

    /// A quotient ring together with named elements.
    #[derive(Clone, Debug)]
    pub struct Fixture {
        pub ring: Arc<QuotRing>,
        pub named: Vec<(&'static str, FieldElem)>,
    }

    impl Fixture {
        pub fn get(&self, name: &str) -> FieldElem {
            self.named.iter().find(|(n, _)| *n == name).map(|(_, e)| e.clone()).unwrap_or_else(|| panic!("no element named {name}"))
        }
    }

    fn build(m: &str, named: &[(&'static str, &str)], relations: &[(&str, &str)]) -> Result<Fixture> {
        let ring = QuotRing::parse(m)?;
        let mut out = Vec::new();
        for (n, s) in named {
            out.push((*n, ring.parse_elem(s)?));
        }
        let fx = Fixture { ring, named: out };
        for (name, square) in relations {
            let x = fx.get(name);
            let want = fx.ring.parse_elem(square)?;
            if x.times(&x) != want {
                return Err(Error::VerificationFailed(format!("{name}^2 != {square} in {}", fx.ring)));
            }
        }
        Ok(fx)
    }

    /// `ℚ(ζ_8) = ℚ[t]/(t^4 + 1)` with `i`, `√2` and `√−2`.
    pub fn zeta8() -> Result<Fixture> {
        build("t^4 + 1", &[("i", "t^2"), ("sqrt2", "t - t^3"), ("sqrtm2", "t^3 + t")], &[("i", "-1"), ("sqrt2", "2"), ("sqrtm2", "-2")])
    }

    /// The same field presented as `ℚ[t]/(t^4 + 6t^2 + 1)`, with `i` and `√−2`.
    pub fn i_sqrtm2() -> Result<Fixture> {
        build(
            "t^4 + 6*t^2 + 1",
            &[("i", "(-t^3 - 5*t)/2"), ("sqrtm2", "(t^3 + 7*t)/2"), ("sqrt2", "-(-t^3 - 5*t)/2 * (t^3 + 7*t)/2")],
            &[("i", "-1"), ("sqrtm2", "-2"), ("sqrt2", "2")],
        )
    }

    /// `ℚ[t]/(t^4 − 4t^2 + 2)`: `t^2 = 2 + √2`, containing `√2` and `√(2 − √2)`.
    pub fn sqrt2_tower() -> Result<Fixture> {
        build(
            "t^4 - 4*t^2 + 2",
            &[("sqrt2", "t^2 - 2"), ("alpha", "t^2 - 1"), ("beta", "t^2 - 3"), ("s", "t^3 - 3*t")],
            &[("sqrt2", "2"), ("s", "4 - t^2")],
        )
    }

    /// `ℚ[t]/(Φ_k(t))` with `zeta = t`.
    pub fn cyclotomic(k: u64) -> Result<Fixture> {
        let phi = cyclotomic_poly(k);
        let ring = QuotRing::new(&phi)?;
        let zeta = ring.gen();
        if !zeta.power(k).minus(&zeta.int_like(1)).is_zero() {
            return Err(Error::VerificationFailed(format!("t^{k} != 1")));
        }
        Ok(Fixture { ring, named: vec![("zeta", zeta)] })
    }

    /// The `k`-th cyclotomic polynomial, by dividing `t^k − 1` by `Φ_d` for proper divisors `d`.
    pub fn cyclotomic_poly(k: u64) -> UPoly<Rational> {
        let mut p = UPoly::<Rational>::monomial(Rational::one(), k as usize).sub(&UPoly::one());
        for d in 1..k {
            if k % d == 0 {
                p = p.divide_exact(&cyclotomic_poly(d)).expect("cyclotomic factor");
            }
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    fn q(s: &str) -> Arc<QuotRing> {
        QuotRing::parse(s).unwrap()
    }

    #[test]
    fn basic_arithmetic() {
        let k = q("t^2 + 1");
        let t = k.gen();
        assert_eq!(t.times(&t), k.from_rational(&int(-1)));
        let w = q("t^2 + t + 1");
        assert!(w.gen().power(3).minus(&FieldElem::one()).is_zero());
        assert_eq!(k.from_rational(&rat(5, 3)).as_rational(), Some(rat(5, 3)));
    }

    #[test]
    fn inverses() {
        let k = q("t^2 + 1");
        let x = k.parse_elem("1 + t").unwrap();
        assert_eq!(x.try_inv().unwrap(), k.parse_elem("(1 - t)/2").unwrap());
        let k = q("t^2 - 2");
        assert_eq!(k.gen().try_inv().unwrap(), k.parse_elem("t/2").unwrap());
        let k = q("t^2 - 1");
        let e = k.parse_elem("t - 1").unwrap().try_inv();
        assert_eq!(e, Err(Error::ZeroDivisorFound(UPoly::from_ints(&[-1, 1]))));
        assert_eq!(k.from_rational(&int(0)).try_inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn mismatch_is_reported() {
        let a = q("t^2 + 1").gen();
        let b = q("t^2 - 2").gen();
        assert_eq!(a.try_plus(&b), Err(Error::RingMismatch));
        assert!(a.try_times(&FieldElem::one()).is_ok());
    }

    #[test]
    fn gcd_over_quotient_ring() {
        let k = q("t^2 + 1");
        let t = k.gen();
        let lin = UPoly::linear_root(&t);
        let sq = UPoly::new(vec![FieldElem::one(), FieldElem::zero(), FieldElem::one()]);
        assert_eq!(lin.gcd(&sq).unwrap(), lin);
    }

    #[test]
    fn heights_of_small_numbers() {
        let ln2 = core::f64::consts::LN_2;
        assert!((height_from_minpoly(&UPoly::from_ints(&[-2, 1]), 128).unwrap() - ln2).abs() < 1e-12);
        assert!((height_from_minpoly(&UPoly::from_ints(&[-2, 0, 1]), 128).unwrap() - ln2 / 2.0).abs() < 1e-12);
        assert!((height_from_minpoly(&UPoly::from_ints(&[-1, 3]), 128).unwrap() - libm::log(3.0)).abs() < 1e-12);
    }

    #[test]
    fn fixtures_validate() {
        let z = fixtures::zeta8().unwrap();
        let i = z.get("i");
        assert_eq!(i.times(&i), z.ring.from_rational(&int(-1)));
        fixtures::i_sqrtm2().unwrap();
        fixtures::sqrt2_tower().unwrap();
        for (k, phi) in [(2, 1), (3, 2), (4, 2), (5, 4), (6, 2), (8, 4), (12, 4)] {
            assert_eq!(fixtures::cyclotomic(k).unwrap().ring.degree(), phi);
        }
    }

    #[test]
    fn descriptor() {
        let (k, named) = parse_field_descriptor("t^2+1;alpha=t;beta=-t").unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(named[0].0, "alpha");
        assert_eq!(named[1].1, k.gen().negated());
        assert!(parse_field_descriptor("t^2+1;alpha").is_err());
    }

    #[test]
    fn reconstruction() {
        let fx = fixtures::sqrt2_tower().unwrap();
        let s2 = fx.get("sqrt2");
        let s = fx.get("s");
        // (λ - (3 + s)) (λ - √2) (λ^2 + 1)
        let r1 = s.plus(&s.int_like(3));
        let p = UPoly::linear_root(&r1).mul(&UPoly::linear_root(&s2)).mul(&UPoly::new(vec![FieldElem::one(), FieldElem::zero(), FieldElem::one()]));
        let mut got = reconstruct_roots(&p, &fx.ring, 200, 10_000).unwrap();
        got.sort_by_key(|e| alloc::format!("{e}"));
        assert_eq!(got.len(), 2);
        assert!(got.contains(&r1) && got.contains(&s2));
    }
}
