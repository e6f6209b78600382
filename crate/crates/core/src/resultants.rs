//! Eliminants `Res_λ(P(λ, a), Q(λ, b))` of division polynomials, their
//! squarefreeness, and verification of the bundled component corpus.
//!
//! Resultants are computed modulo word-sized primes by evaluation at a grid of
//! `(a, b)` points and interpolation, then lifted by CRT past the bound
//! `‖P‖₁^{deg_λ Q} · ‖Q‖₁^{deg_λ P}` on every coefficient.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::Signed;

use crate::census::{census, ClassId};
use crate::divpoly::{d, delta, Legendre};
use crate::error::{Error, Result};
use crate::modp::{self, PolyP};
use crate::poly::parse::parse_bivariate;
use crate::poly::{divides, squarefree_bivariate, BiPoly, UPoly};
use crate::ring::{mul_mod, pow_mod, Ring, RingOps};

pub const DEFAULT_M_CAP: u64 = 6;
pub const DEFAULT_PAIR_CAP: u64 = 8;

fn res_modp(a: &[u64], b: &[u64], p: u64) -> u64 {
    // Degrees are the true degrees: callers keep leading coefficients nonzero.
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    let mut acc = 1u64;
    loop {
        let (da, db) = (a.len() - 1, b.len() - 1);
        if db == 0 {
            return mul_mod(acc, pow_mod(b[0], da as u64, p), p);
        }
        let r = modp::rem(&a, &b, p);
        if r.is_empty() {
            return 0;
        }
        let dr = r.len() - 1;
        if (da * db) % 2 == 1 {
            acc = (p - acc) % p;
        }
        acc = mul_mod(acc, pow_mod(b[db], (da - dr) as u64, p), p);
        a = b;
        b = r;
    }
}

/// Coefficients of the interpolating polynomial through `(xs[i], ys[i])`.
fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
    let n = xs.len();
    // Newton divided differences.
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = (c[i] + p - c[i - 1]) % p;
            let den = (xs[i] + p - xs[i - j]) % p;
            c[i] = mul_mod(num, modp::inv(den, p), p);
        }
    }
    let mut out = vec![0u64; n];
    for k in (0..n).rev() {
        // out = out * (x - xs[k]) + c[k]
        let mut next = vec![0u64; n];
        for i in 0..n {
            if out[i] == 0 {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = (next[i + 1] + out[i]) % p;
            }
            next[i] = (next[i] + p - mul_mod(out[i], xs[k] % p, p)) % p;
        }
        next[0] = (next[0] + c[k]) % p;
        out = next;
    }
    out
}

fn l1_norm(f: &BiPoly<BigInt>) -> BigInt {
    f.terms().iter().map(|(_, _, c)| c.abs()).fold(BigInt::default(), |s, c| s + c)
}

/// Evaluation points avoiding the roots of `lc`.
fn good_points(lc: &[u64], count: usize, p: u64) -> Vec<u64> {
    (1..).filter(|&x| modp::eval(lc, x, p) != 0).take(count).collect()
}

/// `Res_λ(P(λ, a), Q(λ, b))` as a polynomial with `a` outer, `b` inner, for
/// `P`, `Q` in `ℤ[λ, x]` with `λ` outer.
pub fn lambda_resultant(pp: &BiPoly<BigInt>, qq: &BiPoly<BigInt>) -> Result<BiPoly<BigInt>> {
    let (dp, dq) = match (pp.degree(), qq.degree()) {
        (Some(x), Some(y)) => (x, y),
        _ => return Ok(BiPoly::zero()),
    };
    let xp = pp.inner_degree().unwrap_or(0);
    let xq = qq.inner_degree().unwrap_or(0);
    let (da, db) = (dq * xp, dp * xq);
    let bound = l1_norm(pp).pow(dq as u32) * l1_norm(qq).pow(dp as u32);
    let target = bound * 2 + 1;

    let mut modulus = BigInt::from(1u8);
    let mut acc: Vec<Vec<BigInt>> = vec![vec![BigInt::default(); db + 1]; da + 1];
    for p in modp::primes_below(1u64 << 61) {
        if modulus > target {
            break;
        }
        let pc: Vec<PolyP> = pp.coeffs().iter().map(|c| modp::from_int_poly(c, p)).collect();
        let qc: Vec<PolyP> = qq.coeffs().iter().map(|c| modp::from_int_poly(c, p)).collect();
        if pc[dp].is_empty() || qc[dq].is_empty() {
            continue;
        }
        let a_pts = good_points(&pc[dp], da + 1, p);
        let b_pts = good_points(&qc[dq], db + 1, p);
        let spec = |cs: &[PolyP], x: u64| -> PolyP { cs.iter().map(|c| modp::eval(c, x, p)).collect() };
        let b_specs: Vec<PolyP> = b_pts.iter().map(|&b| spec(&qc, b)).collect();
        // rows[i][k]: coefficient of b^k at a = a_pts[i].
        let rows: Vec<Vec<u64>> = a_pts
            .iter()
            .map(|&a| {
                let pa = spec(&pc, a);
                let vals: Vec<u64> = b_specs.iter().map(|qb| res_modp(&pa, qb, p)).collect();
                interpolate(&b_pts, &vals, p)
            })
            .collect();
        let pbig = BigInt::from(p);
        let m_inv = BigInt::from(modp::inv((&modulus % &pbig).try_into().unwrap_or(0u64), p));
        for k in 0..=db {
            let col: Vec<u64> = rows.iter().map(|r| r[k]).collect();
            let coeffs = interpolate(&a_pts, &col, p);
            for (i, &r) in coeffs.iter().enumerate() {
                let x = &mut acc[i][k];
                let diff = (BigInt::from(r) - &*x).mod_floor(&pbig);
                let t = (diff * &m_inv).mod_floor(&pbig);
                *x += &modulus * t;
            }
        }
        modulus *= pbig;
    }
    let half = &modulus >> 1;
    let mut terms = Vec::new();
    for (i, row) in acc.into_iter().enumerate() {
        for (k, mut c) in row.into_iter().enumerate() {
            if c > half {
                c -= &modulus;
            }
            if c.sign() != Sign::NoSign {
                terms.push((i, k, c));
            }
        }
    }
    Ok(BiPoly::from_terms(&terms))
}

/// Exact quotient by `a − b`, or `None`.
pub fn div_a_minus_b(f: &BiPoly<BigInt>) -> Option<BiPoly<BigInt>> {
    let n = match f.degree() {
        None => return Some(BiPoly::zero()),
        Some(0) => return None,
        Some(n) => n,
    };
    let b = UPoly::<BigInt>::var();
    let c = f.coeffs();
    let mut q = vec![UPoly::<BigInt>::zero(); n];
    q[n - 1] = c[n].clone();
    for i in (1..n).rev() {
        q[i - 1] = c[i].add(&b.mul(&q[i]));
    }
    if !c[0].add(&b.mul(&q[0])).is_zero() {
        return None;
    }
    Some(UPoly::new(q))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ResultantKind {
    /// `R_m`, from the full division polynomial `ψ_m`.
    Full(u64),
    /// From the primitive parts `ψ̃_n`, `ψ̃_{n′}`.
    Pair(u64, u64),
}

#[derive(Clone, Debug)]
pub struct ResultantRecord {
    pub kind: ResultantKind,
    /// The eliminant before removing `a − b`.
    pub res: BiPoly<BigInt>,
    /// The eliminant with `(a − b)^{removed}` divided out.
    pub poly: BiPoly<BigInt>,
    pub removed: u64,
    pub squarefree: Option<bool>,
}

impl ResultantRecord {
    pub fn bidegree(&self) -> (usize, usize) {
        self.poly.bidegree().unwrap_or((0, 0))
    }

    pub fn swap_symmetric(&self) -> bool {
        let t = self.poly.transpose();
        t == self.poly || t == self.poly.neg()
    }
}

/// `R_m(a, b) = Res_λ(ψ_m(λ, a), ψ_m(λ, b)) / (a − b)^{d(m)}`.
pub fn r_m(m: u64) -> Result<ResultantRecord> {
    r_m_with_cap(m, DEFAULT_M_CAP)
}

pub fn r_m_with_cap(m: u64, cap: u64) -> Result<ResultantRecord> {
    if m < 3 {
        return Err(crate::error::domain(format!("R_m needs m >= 3, got {m}")));
    }
    if m > cap {
        return Err(Error::CapExceeded { n: m as usize, cap: cap as usize });
    }
    let psi = Legendre::new().psi(m)?;
    let res = lambda_resultant(&psi, &psi)?;
    let mut poly = res.clone();
    for _ in 0..d(m) {
        poly = div_a_minus_b(&poly).ok_or(Error::InexactDivision)?;
    }
    Ok(ResultantRecord { kind: ResultantKind::Full(m), res, poly, removed: d(m), squarefree: None })
}

/// `Res_λ(ψ̃_n(λ, a), ψ̃_{n′}(λ, b))`, with every factor `a − b` removed when `n = n′`.
pub fn r_pair(n: u64, n2: u64) -> Result<ResultantRecord> {
    r_pair_in(&mut Legendre::new(), n, n2)
}

fn r_pair_in(leg: &mut Legendre, n: u64, n2: u64) -> Result<ResultantRecord> {
    for k in [n, n2] {
        if k < 3 {
            return Err(crate::error::domain(format!("order {k} is below 3")));
        }
        if k > DEFAULT_PAIR_CAP {
            return Err(Error::CapExceeded { n: k as usize, cap: DEFAULT_PAIR_CAP as usize });
        }
    }
    let res = lambda_resultant(&leg.psi_tilde(n)?, &leg.psi_tilde(n2)?)?;
    let mut poly = res.clone();
    let mut removed = 0;
    if n == n2 {
        while let Some(q) = div_a_minus_b(&poly) {
            if poly.is_zero() {
                break;
            }
            poly = q;
            removed += 1;
        }
    }
    Ok(ResultantRecord { kind: ResultantKind::Pair(n, n2), res, poly, removed, squarefree: None })
}

/// Squarefreeness of `R_m` in `ℚ[a, b]`.
pub fn verify_squarefree(m: u64) -> Result<bool> {
    Ok(squarefree_bivariate(&r_m(m)?.poly))
}

/// `r_m(m)` with its squarefree flag filled in.
pub fn r_m_checked(m: u64) -> Result<ResultantRecord> {
    let mut r = r_m(m)?;
    r.squarefree = Some(squarefree_bivariate(&r.poly));
    Ok(r)
}

#[derive(Clone, Debug, PartialEq)]
pub struct CorpusEntry {
    pub line: usize,
    pub header: (usize, usize),
    pub text: String,
    pub poly: BiPoly<BigInt>,
}

fn parse_header(s: &str) -> Option<(usize, usize)> {
    let inner = s.strip_prefix('[')?.strip_suffix(']')?;
    let (x, y) = inner.split_once(',')?;
    Some((x.trim().parse().ok()?, y.trim().parse().ok()?))
}

/// Parses the corpus format: `[d_a, d_b]` section headers, one polynomial in
/// `a`, `b` per line, `#` comments.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let mut header = None;
    let mut out = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let s = raw.split('#').next().unwrap_or("").trim();
        if s.is_empty() {
            continue;
        }
        if s.starts_with('[') {
            header = Some(parse_header(s).ok_or_else(|| Error::Parse { line, msg: format!("bad section header {s:?}") })?);
            continue;
        }
        let h = header.ok_or_else(|| Error::Parse { line, msg: "polynomial before any section header".to_string() })?;
        let poly = parse_bivariate(s, 'a', 'b').map_err(|e| Error::Parse {
            line,
            msg: match e {
                Error::Parse { msg, .. } => msg,
                other => other.to_string(),
            },
        })?;
        out.push(CorpusEntry { line, header: h, text: s.to_string(), poly });
    }
    Ok(out)
}

/// Where a corpus polynomial was found.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Attribution {
    /// Divides `ψ_n(a, b)`, or `ψ_n(b, a)` when `swapped`.
    DivisionPolynomial { n: u64, swapped: bool },
    /// Divides `r_pair(n, n2)`.
    Resultant { n: u64, n2: u64 },
}

#[derive(Clone, Debug)]
pub struct Table1Report {
    pub entry: CorpusEntry,
    pub bidegree: (usize, usize),
    pub bidegree_ok: bool,
    pub attribution: Option<Attribution>,
}

impl Table1Report {
    pub fn passed(&self) -> bool {
        self.bidegree_ok && self.attribution.is_some()
    }
}

/// Ordered order pairs `(n, n2)` whose orbits give components of bidegree `(d, d)`.
pub fn source_pairs(dd: u64) -> Result<Vec<(u64, u64)>> {
    let table = census(dd)?;
    let mut out: Vec<(u64, u64)> = table
        .get(&(dd, dd))
        .map(|e| e.sources.iter().filter(|s| s.class != ClassId::Two(0)).map(|s| (s.n, s.n2)).collect())
        .unwrap_or_default();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Checks every corpus polynomial: its bidegree against its header, and
/// divisibility into a division polynomial (rows `(δ, 2δ)` and `(2δ, δ)`) or
/// into a pair eliminant for the orders the census attaches to `(d, d)`.
pub fn verify_table1(entries: &[CorpusEntry]) -> Result<Vec<Table1Report>> {
    let mut leg = Legendre::new();
    let mut pairs: BTreeMap<(u64, u64), BiPoly<BigInt>> = BTreeMap::new();
    let mut sources: BTreeMap<u64, Vec<(u64, u64)>> = BTreeMap::new();
    let mut out = Vec::new();
    for entry in entries {
        let bidegree = entry.poly.bidegree().unwrap_or((0, 0));
        let (ha, hb) = entry.header;
        let mut attribution = None;
        if hb == 2 * ha || ha == 2 * hb {
            let swapped = ha > hb;
            let dl = ha.min(hb) as u64;
            for n in (3..).take_while(|&n| n <= 4 * dl + 4).filter(|&n| delta(n) == dl) {
                let psi = leg.psi(n)?;
                let target = if swapped { psi.transpose() } else { psi };
                if divides(&entry.poly, &target) {
                    attribution = Some(Attribution::DivisionPolynomial { n, swapped });
                    break;
                }
            }
        } else if ha == hb {
            let dd = ha as u64;
            if !sources.contains_key(&dd) {
                sources.insert(dd, source_pairs(dd)?);
            }
            for &(n, n2) in &sources[&dd] {
                if n > DEFAULT_PAIR_CAP || n2 > DEFAULT_PAIR_CAP {
                    continue;
                }
                if !pairs.contains_key(&(n, n2)) {
                    let r = r_pair_in(&mut leg, n, n2)?;
                    pairs.insert((n, n2), r.poly);
                }
                if divides(&entry.poly, &pairs[&(n, n2)]) {
                    attribution = Some(Attribution::Resultant { n, n2 });
                    break;
                }
            }
        }
        out.push(Table1Report { entry: entry.clone(), bidegree, bidegree_ok: bidegree == entry.header, attribution });
    }
    Ok(out)
}

/// `Ok` when every report passed; otherwise lists the failing polynomials.
pub fn require_all(reports: &[Table1Report]) -> Result<()> {
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed()).map(|r| format!("line {}: {}", r.entry.line, r.entry.text)).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::VerificationFailed(failed.join("; ")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rational;
    use crate::divpoly::legendre_psi;
    use crate::poly::parse::parse_bivariate as pb;
    use crate::ring::ExactDiv;

    /// Symbolic resultant over `ℤ[a, b]` by the subresultant chain.
    fn oracle(m: u64) -> BiPoly<BigInt> {
        let psi = legendre_psi(m).unwrap();
        let lift = |outer: bool| -> UPoly<BiPoly<BigInt>> {
            UPoly::new(psi.coeffs().iter().map(|c| if outer { BiPoly::lift_outer(c) } else { BiPoly::lift_inner(c) }).collect())
        };
        lift(true).resultant(&lift(false)).unwrap()
    }

    #[test]
    fn matches_subresultant_oracle() {
        for m in [3, 4] {
            let r = r_m(m).unwrap();
            assert_eq!(r.res, oracle(m), "m = {m}");
        }
    }

    #[test]
    fn small_records() {
        let r3 = r_m(3).unwrap();
        assert!(r3.bidegree().0 <= 6);
        assert!(r3.swap_symmetric());
        let r4 = r_m(4).unwrap();
        assert!(divides(&pb("a + b", 'a', 'b').unwrap(), &r4.poly));
        assert!(divides(&pb("2*a*b - a - b", 'a', 'b').unwrap(), &r4.poly));
        assert!(!divides(&pb("a - b", 'a', 'b').unwrap(), &r4.poly));
        for m in [3, 4] {
            assert!(verify_squarefree(m).unwrap());
        }
        assert!(matches!(r_m(7), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn evaluation_consistency() {
        let r = r_m(3).unwrap();
        let psi = legendre_psi(3).unwrap().to_rational_bi();
        let q = r.poly.to_rational_bi();
        for (a0, b0) in [(2i64, 5i64), (-3, 7), (11, -2), (1, 4), (6, 13)] {
            let (a, b) = (Rational::from_integer(a0.into()), Rational::from_integer(b0.into()));
            let pa = UPoly::new(psi.coeffs().iter().map(|c| c.eval(&a)).collect());
            let pb_ = UPoly::new(psi.coeffs().iter().map(|c| c.eval(&b)).collect());
            let scalar = pa.resultant(&pb_).unwrap();
            let quotient = scalar.div_exact(&(a.clone() - b.clone()).power(d(3))).unwrap();
            assert_eq!(q.eval2(&a, &b), quotient);
        }
    }

    #[test]
    fn corpus_parsing() {
        let c = parse_corpus("# x\n[1,1]\na + b\n\n[1,2]\na - b^2 # tail\n").unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c[1].header, (1, 2));
        assert_eq!(c[1].line, 6);
        assert_eq!(parse_corpus("a + b\n"), Err(Error::Parse { line: 1, msg: "polynomial before any section header".into() }));
        assert!(matches!(parse_corpus("[1,1]\na + $\n"), Err(Error::Parse { line: 2, .. })));
    }

    #[test]
    fn small_corpus_verifies() {
        let text = "[1,1]\na + b\n2*a*b - a - b\n[1,2]\na - b^2\n[2,1]\na^2 - 2*a*b + b\n[2,4]\na^2 + 4*a*b^3 - 6*a*b^2 - 3*b^4 + 4*b^3\n";
        let reports = verify_table1(&parse_corpus(text).unwrap()).unwrap();
        assert!(reports.iter().all(|r| r.passed()), "{reports:?}");
        assert_eq!(reports[4].attribution, Some(Attribution::DivisionPolynomial { n: 3, swapped: false }));
    }
}

#[cfg(test)]
mod corpus_tests {
    extern crate std;
    use super::*;

    #[test]
    fn bundled_corpus() {
        let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../corpus/table1.txt")).unwrap();
        let entries = parse_corpus(&text).unwrap();
        let reports = verify_table1(&entries).unwrap();
        assert_eq!(reports.len(), 35);
        require_all(&reports).unwrap();
    }
}
