//! The acceptance checks, one per criterion, runnable as a suite.

use std::collections::BTreeMap;

use clap::ValueEnum;
use legtors_core::arith::{hbar, log_height, rat};
use legtors_core::census::{census, PUBLISHED_TABLE};
use legtors_core::divpoly::{
    d, degree_suite_legendre, lattes, special_values_suite, weierstrass_suite, DegreeReport, Projective, SpecialValues, WeierstrassReport,
};
use legtors_core::quotring::fixtures;
use legtors_core::poly::squarefree_bivariate;
use legtors_core::resultants::{parse_corpus, r_m, require_all, verify_table1};
use legtors_core::screen::{cw_verify, decide_t_rational, roots_of_unity_t, s_set, verify_roots_of_unity, Decision};
use legtors_core::torsion::{grouplaw_order_oracle, order_bounded, order_modp, TorsionResult};
use legtors_core::tset::{t_set_bounded, TsetOptions, TsetReport};
use legtors_core::{Field, FieldElem, Rational, RingOps};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::corpus::BUNDLED_TABLE1;

pub const DEFAULT_SEED: u64 = 20_240_617;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    /// Every criterion at full size.
    Paper,
    /// Smaller bounds: census to bidegree 4, resultants to m = 4.
    Fast,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub id: u8,
    pub name: &'static str,
    pub expected: String,
    pub actual: String,
    pub pass: bool,
    /// Set on a failing check whose failure matches a recorded analysis exactly.
    pub deviation: Option<String>,
}

impl Check {
    fn new(id: u8, name: &'static str, expected: impl Into<String>, actual: impl Into<String>, pass: bool) -> Self {
        Check { id, name, expected: expected.into(), actual: actual.into(), pass, deviation: None }
    }

    fn error(id: u8, name: &'static str, expected: impl Into<String>, e: impl std::fmt::Display) -> Self {
        Check::new(id, name, expected, format!("error: {e}"), false)
    }

    pub fn line(&self) -> String {
        let verdict = if self.pass { "PASS" } else { "FAIL" };
        let mut s = format!("criterion {:>2} {verdict} {}: {}", self.id, self.name, self.actual);
        if let Some(dv) = &self.deviation {
            s.push_str(&format!(" [recorded deviation: {dv}]"));
        }
        s
    }
}

struct Sizes {
    legendre_n: u64,
    weierstrass_n: u64,
    special_n: u64,
    max_m: u64,
    census_d: u64,
}

fn sizes(suite: Suite) -> Sizes {
    match suite {
        Suite::Paper => Sizes { legendre_n: 64, weierstrass_n: 32, special_n: 40, max_m: 6, census_d: 24 },
        Suite::Fast => Sizes { legendre_n: 24, weierstrass_n: 12, special_n: 16, max_m: 4, census_d: 4 },
    }
}

fn list(v: &[u64]) -> String {
    let items: Vec<String> = v.iter().map(|n| n.to_string()).collect();
    format!("[{}]", items.join(", "))
}

fn congruence_and_degrees(s: &Sizes, leg: &legtors_core::Result<Vec<DegreeReport>>, wei: &legtors_core::Result<Vec<WeierstrassReport>>) -> [Check; 2] {
    const N1: &str = "congruence";
    const N2: &str = "degrees";
    let e1 = format!("ψ_n congruence for 3 ≤ n ≤ {}, Ψ_n congruence for 3 ≤ n ≤ {}", s.legendre_n, s.weierstrass_n);
    let e2 = format!("deg_λ = d, deg_x = total = 2d for n ≤ {}; deg_A = d and homogeneous for n ≤ {}", s.legendre_n, s.weierstrass_n);
    let (leg, wei) = match (leg, wei) {
        (Ok(l), Ok(w)) => (l, w),
        (Err(e), _) | (_, Err(e)) => return [Check::error(1, N1, e1, e), Check::error(2, N2, e2, e)],
    };
    let bad_lc: Vec<u64> = leg.iter().filter(|r| !r.congruence).map(|r| r.n).collect();
    let bad_wc: Vec<u64> = wei.iter().filter(|r| !r.congruence).map(|r| r.n).collect();
    let c1 = Check::new(
        1,
        N1,
        e1,
        format!("{} Legendre and {} Weierstrass orders checked, failures {} and {}", leg.len(), wei.len(), list(&bad_lc), list(&bad_wc)),
        bad_lc.is_empty() && bad_wc.is_empty() && leg.len() as u64 == s.legendre_n - 2 && wei.len() as u64 == s.weierstrass_n - 2,
    );
    let bad_ld: Vec<u64> = leg.iter().filter(|r| r.deg_lambda != d(r.n) || r.deg_x != 2 * d(r.n) || r.total != 2 * d(r.n)).map(|r| r.n).collect();
    let bad_wd: Vec<u64> = wei.iter().filter(|r| r.deg_a as u64 != d(r.n) || !r.homogeneous).map(|r| r.n).collect();
    let c2 = Check::new(
        2,
        N2,
        e2,
        format!("failures {} and {}", list(&bad_ld), list(&bad_wd)),
        bad_ld.is_empty() && bad_wd.is_empty() && !leg.is_empty() && !wei.is_empty(),
    );
    [c1, c2]
}

fn special_values(s: &Sizes) -> Check {
    const NAME: &str = "special values";
    let expected = format!("ψ_n(λ,0) = a_n λ^d, ψ_n(λ,1) = a_n (1-λ)^d, ψ_n(λ,λ) = a_n (λ(1-λ))^d for n ≤ {}, with a_(2m+1) = (-1)^m and a_(2m) = (-1)^(m-1) m", s.special_n);
    let reports: Vec<SpecialValues> = match special_values_suite(s.special_n) {
        Ok(r) => r,
        Err(e) => return Check::error(3, NAME, expected, e),
    };
    let fails = |f: fn(&SpecialValues) -> bool| -> Vec<u64> { reports.iter().filter(|r| !f(r)).map(|r| r.n).collect() };
    let (z, o, l, lf) = (fails(|r| r.at_zero), fails(|r| r.at_one), fails(|r| r.at_lambda), fails(|r| r.at_lambda_flipped));
    let mut c = Check::new(
        3,
        NAME,
        expected,
        format!("x = 0 fails at {}, x = 1 fails at {}, x = λ fails at {}, x = λ with (λ(λ-1))^d fails at {}", list(&z), list(&o), list(&l), list(&lf)),
        z.is_empty() && o.is_empty() && l.is_empty(),
    );
    let multiples_of_four: Vec<u64> = reports.iter().map(|r| r.n).filter(|n| n % 4 == 0).collect();
    if !c.pass && z.is_empty() && o.is_empty() && lf.is_empty() && l == multiples_of_four {
        c.deviation = Some("the x = λ identity holds with (λ(λ-1))^d; the two forms differ by (-1)^d(n), which is -1 exactly when 4 | n".into());
    }
    c
}

fn rational_examples() -> Check {
    const NAME: &str = "rational examples";
    let expected = "T(2,3) = ∅; T(2,4) = {4}; T(3,-3) = {-3, 9}; T(ω,ω²) = {ω (2,4), ω² (4,2)}";
    let run = || -> legtors_core::Result<(String, bool)> {
        let mut parts = Vec::new();
        let mut ok = true;
        for ((a, b), want) in [((2, 3), vec![]), ((2, 4), vec![rat(4, 1)]), ((3, -3), vec![rat(-3, 1), rat(9, 1)])] {
            match decide_t_rational(&rat(a, 1), &rat(b, 1), 16)? {
                Decision::Exact { members, clause } => {
                    let got: Vec<Rational> = members.iter().map(|m| m.0.clone()).collect();
                    let mut sorted = got.clone();
                    sorted.sort();
                    ok &= sorted == want;
                    let shown: Vec<String> = sorted.iter().map(|q| q.to_string()).collect();
                    parts.push(format!("T({a},{b}) = {{{}}} by {clause}", shown.join(", ")));
                }
                Decision::Inconclusive { reason } => {
                    ok = false;
                    parts.push(format!("T({a},{b}) undecided: {reason}"));
                }
            }
        }
        let fx = fixtures::cyclotomic(3)?;
        let w = fx.get("zeta");
        let w2 = w.square();
        let r = t_set_bounded(&w, &w2, 8, &[], &TsetOptions::default())?;
        let got: Vec<(FieldElem, u64, u64)> = r.members.iter().map(|m| (m.lambda.clone(), m.order_alpha, m.order_beta)).collect();
        let want_w = got.iter().any(|(l, a, b)| l == &w && (*a, *b) == (2, 4));
        let want_w2 = got.iter().any(|(l, a, b)| l == &w2 && (*a, *b) == (4, 2));
        ok &= got.len() == 2 && want_w && want_w2 && r.complete;
        parts.push(format!("T(ω,ω²) has {} members, ω (2,4): {want_w}, ω² (4,2): {want_w2}, complete: {}", got.len(), r.complete));
        Ok((parts.join("; "), ok))
    };
    match run() {
        Ok((actual, ok)) => Check::new(4, NAME, expected, actual, ok),
        Err(e) => Check::error(4, NAME, expected, e),
    }
}

fn triple() -> Check {
    const NAME: &str = "rational triple";
    let expected = "T_12(3/8, -9/16) = {-9/16 (4,2), 3/128 (6,6), 81/256 (8,4)}, complete";
    match t_set_bounded(&rat(3, 8), &rat(-9, 16), 12, &[], &TsetOptions::default()) {
        Ok(r) => {
            let mut got: Vec<(Rational, u64, u64)> = r.members.iter().map(|m| (m.lambda.clone(), m.order_alpha, m.order_beta)).collect();
            got.sort();
            let want = vec![(rat(-9, 16), 4, 2), (rat(3, 128), 6, 6), (rat(81, 256), 8, 4)];
            let shown: Vec<String> = got.iter().map(|(l, a, b)| format!("{l} ({a},{b})")).collect();
            Check::new(5, NAME, expected, format!("{{{}}}, complete: {}", shown.join(", "), r.complete), got == want && r.complete)
        }
        Err(e) => Check::error(5, NAME, expected, e),
    }
}

/// Compares members of a field report with expected `(λ, orders)`, ignoring order of listing.
fn field_members_match(r: &TsetReport<FieldElem>, want: &[(FieldElem, u64, u64)]) -> bool {
    r.members.len() == want.len()
        && want.iter().all(|(l, a, b)| r.members.iter().any(|m| &m.lambda == l && m.order_alpha == *a && m.order_beta == *b))
}

fn describe(r: &TsetReport<FieldElem>) -> String {
    let mut shown: Vec<String> = r.members.iter().map(|m| format!("{} ({},{})", m.lambda, m.order_alpha, m.order_beta)).collect();
    shown.sort();
    format!("{{{}}}, complete: {}", shown.join(", "), r.complete)
}

fn five_element_set() -> Check {
    const NAME: &str = "five-element set";
    let expected = "T_12(i, -i) = {-1 (4,4), 3±2√2 (6,6), (1±2√-2)/3 (10,10)} in both fixtures, complete";
    let run = || -> legtors_core::Result<(String, bool)> {
        let mut parts = Vec::new();
        let mut ok = true;
        for (label, fx) in [("ℚ[t]/(t^4+1)", fixtures::zeta8()?), ("ℚ[t]/(t^4+6t^2+1)", fixtures::i_sqrtm2()?)] {
            let (i, s2, sm2) = (fx.get("i"), fx.get("sqrt2"), fx.get("sqrtm2"));
            let k = |n: i64| i.int_like(n);
            let third = k(3).try_inv()?;
            let want = vec![
                (k(-1), 4, 4),
                (k(3).plus(&s2.scaled(2)), 6, 6),
                (k(3).minus(&s2.scaled(2)), 6, 6),
                (k(1).plus(&sm2.scaled(2)).times(&third), 10, 10),
                (k(1).minus(&sm2.scaled(2)).times(&third), 10, 10),
            ];
            let r = t_set_bounded(&i, &i.negated(), 12, &[], &TsetOptions::default())?;
            let good = field_members_match(&r, &want) && r.complete;
            ok &= good;
            parts.push(format!("{label}: {} {}", describe(&r), if good { "matches" } else { "differs" }));
        }
        Ok((parts.join("; "), ok))
    };
    match run() {
        Ok((actual, ok)) => Check::new(6, NAME, expected, actual, ok),
        Err(e) => Check::error(6, NAME, expected, e),
    }
}

fn quadratic_row() -> Check {
    const NAME: &str = "quadratic row";
    let expected = "T_12(1+√2, -1+√2) = {-1 (4,4), 7-4√2 ± (4-2√2)√(2-√2) (5,10)}";
    let run = || -> legtors_core::Result<(String, bool)> {
        let fx = fixtures::sqrt2_tower()?;
        let (alpha, beta, s2, s) = (fx.get("alpha"), fx.get("beta"), fx.get("sqrt2"), fx.get("s"));
        let k = |n: i64| alpha.int_like(n);
        let base = k(7).minus(&s2.scaled(4));
        let tail = k(4).minus(&s2.scaled(2)).times(&s);
        let want = vec![(k(-1), 4, 4), (base.plus(&tail), 5, 10), (base.minus(&tail), 5, 10)];
        let r = t_set_bounded(&alpha, &beta, 12, &[], &TsetOptions::default())?;
        Ok((describe(&r), field_members_match(&r, &want)))
    };
    match run() {
        Ok((actual, ok)) => Check::new(7, NAME, expected, actual, ok),
        Err(e) => Check::error(7, NAME, expected, e),
    }
}

fn roots_of_unity() -> Check {
    const NAME: &str = "roots of unity";
    let expected = "every asserted member torsion for k in {2,3,4,5,6,8,12}; three members exactly for k in {3,6,12}, the roots of x^8+x^4+1";
    let run = || -> legtors_core::Result<(String, bool)> {
        let mut ok = true;
        let mut parts = Vec::new();
        for k in [2u64, 3, 4, 5, 6, 8, 12] {
            let v = verify_roots_of_unity(k, 16)?;
            let orders: Vec<String> = v.iter().map(|(m, _, o)| format!("{m}:{}", o.order().map_or("?".into(), |n| n.to_string()))).collect();
            ok &= v.iter().all(|(_, _, o)| o.order().is_some());
            parts.push(format!("k={k} [{}]", orders.join(" ")));
        }
        let triples: Vec<u64> = (2..=24).filter(|&k| roots_of_unity_t(k).map(|v| v.len() == 3).unwrap_or(false)).collect();
        let roots: usize = triples.iter().map(|&k| fixtures::cyclotomic_poly(k).degree().unwrap_or(0)).sum();
        ok &= triples == [3, 6, 12] && roots == 8;
        parts.push(format!("three-element cases {} with {roots} roots", list(&triples)));
        Ok((parts.join("; "), ok))
    };
    match run() {
        Ok((actual, ok)) => Check::new(8, NAME, expected, actual, ok),
        Err(e) => Check::error(8, NAME, expected, e),
    }
}

fn resultants(s: &Sizes) -> Check {
    const NAME: &str = "resultants";
    let expected = format!("(a-b)^d(m) divides exactly and R_m is squarefree for 3 ≤ m ≤ {}; all 35 corpus polynomials verify", s.max_m);
    let run = || -> legtors_core::Result<(String, bool)> {
        let mut ok = true;
        let mut parts = Vec::new();
        for m in 3..=s.max_m {
            let r = r_m(m)?;
            let sf = squarefree_bivariate(&r.poly);
            ok &= sf && r.removed == d(m);
            parts.push(format!("R_{m} bidegree {:?} squarefree {sf}", r.bidegree()));
        }
        let entries = parse_corpus(BUNDLED_TABLE1)?;
        let reports = verify_table1(&entries)?;
        let passed = reports.iter().filter(|r| r.passed()).count();
        ok &= reports.len() == 35 && require_all(&reports).is_ok();
        parts.push(format!("corpus {passed}/{} verified", reports.len()));
        Ok((parts.join("; "), ok))
    };
    match run() {
        Ok((actual, ok)) => Check::new(9, NAME, expected, actual, ok),
        Err(e) => Check::error(9, NAME, expected, e),
    }
}

fn census_check(s: &Sizes) -> Check {
    const NAME: &str = "census";
    let published: BTreeMap<(u64, u64), usize> = PUBLISHED_TABLE.iter().copied().filter(|((x, y), _)| *x.min(y) <= s.census_d).collect();
    let expected = format!("census({}) equals the {} published entries with min bidegree ≤ {}", s.census_d, published.len(), s.census_d);
    match census(s.census_d) {
        Ok(t) => {
            let got: BTreeMap<(u64, u64), usize> = t.iter().map(|(k, v)| (*k, v.count)).collect();
            let diffs: Vec<String> = got
                .keys()
                .chain(published.keys())
                .collect::<std::collections::BTreeSet<_>>()
                .into_iter()
                .filter(|k| got.get(k) != published.get(k))
                .map(|k| format!("{k:?}: got {:?}, table {:?}", got.get(k), published.get(k)))
                .collect();
            let actual = if diffs.is_empty() { format!("{} bidegrees, all equal", got.len()) } else { diffs.join("; ") };
            Check::new(10, NAME, expected, actual, diffs.is_empty())
        }
        Err(e) => Check::error(10, NAME, expected, e),
    }
}

fn weierstrass_candidates() -> Check {
    const NAME: &str = "Weierstrass candidates";
    let expected = "(1,2,3) gives (-7,6), (-13,12), (-(β²+βγ+γ²), βγ(β+γ)) = (-19,30), each with exactly its two designated points of order 2";
    match cw_verify(&rat(1, 1), &rat(2, 1), &rat(3, 1), 12) {
        Ok(r) => {
            let want = [((-7, 6), [0, 1]), ((-13, 12), [0, 2]), ((-19, 30), [1, 2])];
            let mut ok = r.candidates.len() == 3 && r.dropped.is_empty();
            let mut parts = Vec::new();
            for (c, ((a, b), two)) in r.candidates.iter().zip(want) {
                let order_two: Vec<usize> = (0..3).filter(|&k| c.orders[k] == TorsionResult::OrderTwo).collect();
                ok &= c.a == rat(a, 1) && c.b == rat(b, 1) && order_two == two;
                parts.push(format!("({},{}) order 2 at {order_two:?}", c.a, c.b));
            }
            Check::new(11, NAME, expected, parts.join("; "), ok)
        }
        Err(e) => Check::error(11, NAME, expected, e),
    }
}

fn random_rational(rng: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = rat(rng.gen_range(-60..60), rng.gen_range(1..40));
        if q != rat(0, 1) && q != rat(1, 1) {
            return q;
        }
    }
}

fn in_special_fiber(l: &Rational, a: &Rational) -> legtors_core::Result<bool> {
    Ok(match lattes(l, a)? {
        Projective::Infinity => true,
        Projective::Finite(v) => v == rat(0, 1) || v == rat(1, 1) || &v == l,
    })
}

fn properties(seed: u64) -> Check {
    const NAME: &str = "property suites";
    let expected = "group law = division polynomials on 500 triples; Lattès fibers on 100 α; S₃ and Γ invariance; height and valuation inequalities";
    let run = || -> legtors_core::Result<(String, bool)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let primes: Vec<u64> = (5..98).filter(|&p| (2..p).take_while(|q| q * q <= p).all(|q| p % q != 0)).collect();
        let mut group_bad = 0;
        for _ in 0..500 {
            let p = primes[rng.gen_range(0..primes.len())];
            let l = rng.gen_range(2..p);
            let a = rng.gen_range(0..p);
            let via_psi = order_modp(&rat(l as i64, 1), &rat(a as i64, 1), p)?;
            if grouplaw_order_oracle(p, l, a)? != via_psi {
                group_bad += 1;
            }
        }
        let mut fiber_bad = 0;
        let two = rat(2, 1);
        for _ in 0..100 {
            let a = random_rational(&mut rng);
            let mut special = vec![a.clone(), &a * &a, &a * (&two - &a)];
            if a != rat(1, 2) {
                special.push(&a * &a / (&two * &a - rat(1, 1)));
            }
            special.retain(|l| *l != rat(0, 1) && *l != rat(1, 1));
            let mut lambdas = special.clone();
            lambdas.extend((0..50).map(|_| random_rational(&mut rng)));
            for l in &lambdas {
                if in_special_fiber(l, &a)? != special.contains(l) {
                    fiber_bad += 1;
                }
            }
            if s_set(&a).iter().any(|l| !special.contains(l)) {
                fiber_bad += 1;
            }
        }
        let mut s3_bad = 0;
        let one = rat(1, 1);
        for _ in 0..60 {
            let a = random_rational(&mut rng);
            let mut cands = s_set(&a);
            cands.push(random_rational(&mut rng));
            let l = cands[rng.gen_range(0..cands.len())].clone();
            if l == rat(0, 1) || l == one {
                continue;
            }
            let base = order_bounded(&l, &a, 8)?;
            let flipped = order_bounded(&(&one - &l), &(&one - &a), 16)?;
            let inverted = order_bounded(&l.recip(), &a.recip(), 16)?;
            let close = |x: Option<u64>, y: Option<u64>| match (x, y) {
                (Some(x), Some(y)) => x == y || x == 2 * y || y == 2 * x,
                _ => false,
            };
            if base.order().is_some() && (!close(base.order(), flipped.order()) || !close(base.order(), inverted.order())) {
                s3_bad += 1;
            }
        }
        let (alpha, beta) = (rat(3, 8), rat(-9, 16));
        let opts = TsetOptions::default();
        let fwd = t_set_bounded(&alpha, &beta, 8, &[], &opts)?;
        let back = t_set_bounded(&beta, &alpha, 8, &[], &opts)?;
        let flip = t_set_bounded(&(&one - &alpha), &(&one - &beta), 16, &[], &opts)?;
        let mut x: Vec<(Rational, u64, u64)> = fwd.members.iter().map(|m| (m.lambda.clone(), m.order_alpha, m.order_beta)).collect();
        let mut y: Vec<(Rational, u64, u64)> = back.members.iter().map(|m| (m.lambda.clone(), m.order_beta, m.order_alpha)).collect();
        x.sort();
        y.sort();
        let gamma_ok = x == y && fwd.members.iter().all(|m| flip.members.iter().any(|f| f.lambda == &one - &m.lambda));
        let mut height_bad = 0;
        let ln2 = std::f64::consts::LN_2;
        for _ in 0..1000 {
            let q = random_rational(&mut rng);
            let (h, hb) = (log_height(&q), hbar(&q)?);
            let inv = (hbar(&(&one - &q))? - hb).abs() < 1e-12 && (hbar(&q.recip())? - hb).abs() < 1e-12;
            if hb - 2.0 * ln2 / 3.0 > h + 1e-12 || h > hb + ln2 / 3.0 + 1e-12 || !inv {
                height_bad += 1;
            }
        }
        let ok = group_bad == 0 && fiber_bad == 0 && s3_bad == 0 && gamma_ok && height_bad == 0;
        Ok((
            format!("seed {seed}: group-law mismatches {group_bad}, fiber mismatches {fiber_bad}, S₃ mismatches {s3_bad}, Γ invariance {gamma_ok}, height violations {height_bad}"),
            ok,
        ))
    };
    match run() {
        Ok((actual, ok)) => Check::new(12, NAME, expected, actual, ok),
        Err(e) => Check::error(12, NAME, expected, e),
    }
}

/// Runs every criterion, the independent ones on separate threads; results come back ordered by id.
pub fn run_suite(suite: Suite, seed: u64) -> Vec<Check> {
    let s = sizes(suite);
    let mut checks: Vec<Check> = std::thread::scope(|scope| {
        let leg = scope.spawn(|| degree_suite_legendre(s.legendre_n));
        let wei = scope.spawn(|| weierstrass_suite(s.weierstrass_n));
        let singles: Vec<std::thread::ScopedJoinHandle<'_, Check>> = vec![
            scope.spawn(|| special_values(&s)),
            scope.spawn(rational_examples),
            scope.spawn(triple),
            scope.spawn(five_element_set),
            scope.spawn(quadratic_row),
            scope.spawn(roots_of_unity),
            scope.spawn(|| resultants(&s)),
            scope.spawn(|| census_check(&s)),
            scope.spawn(weierstrass_candidates),
            scope.spawn(move || properties(seed)),
        ];
        let mut out: Vec<Check> = singles.into_iter().map(|h| h.join().expect("check thread")).collect();
        let (leg, wei) = (leg.join().expect("check thread"), wei.join().expect("check thread"));
        out.extend(congruence_and_degrees(&s, &leg, &wei));
        out
    });
    checks.sort_by_key(|c| c.id);
    checks
}
