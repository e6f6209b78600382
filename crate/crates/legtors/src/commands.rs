//! One function per subcommand, each producing a [`Report`].

use std::collections::BTreeMap;
use std::fmt::Display;
use std::sync::Arc;

use legtors_core::arith::parse_rational;
use legtors_core::census::census as run_census;
use legtors_core::divpoly::{
    congruence_check_legendre, congruence_check_weierstrass, d, degree_suite_legendre, legendre_psi, legendre_psi_eval, special_values_suite,
    weierstrass_psi, weierstrass_psi_eval, weierstrass_suite,
};
use legtors_core::poly::squarefree_bivariate;
use legtors_core::quotring::{fixtures, parse_field_descriptor};
use legtors_core::resultants::{parse_corpus, r_m, r_pair, verify_table1 as run_table1, Attribution, ResultantKind};
use legtors_core::screen::{cw_verify, decide_t_rational, roots_of_unity_t, screen_rational, verify_roots_of_unity, Decision, ScreenVerdict};
use legtors_core::torsion::{nontorsion_certificate, nontorsion_default, order_bounded, Certificate, ModpProbe};
use legtors_core::tset::{t_set_bounded, RootField, TsetOptions, TsetReport};
use legtors_core::{FieldElem, QuotRing, Rational};
use serde_json::{json, Value};

use crate::cli::{CensusArgs, CertifyArgs, Family, OrderArgs, PsiArgs, PsiCheck, ResultantArgs, RootsArgs, ScreenArgs, Table1Args, TsetArgs, VerifyArgs, WeierstrassArgs};
use crate::corpus::{read_corpus, BUNDLED_TABLE1};
use crate::error::{CliError, CliResult};
use crate::output::{rat, torsion, torsion_text, Report};
use crate::suite::run_suite;

fn q(s: &str) -> CliResult<Rational> {
    Ok(parse_rational(s.trim())?)
}

struct Field {
    ring: Arc<QuotRing>,
    named: Vec<(String, FieldElem)>,
}

impl Field {
    fn parse(desc: &str) -> CliResult<Self> {
        let fx = match desc.trim() {
            "zeta8" => Some(fixtures::zeta8()?),
            "i-sqrtm2" => Some(fixtures::i_sqrtm2()?),
            "sqrt2-tower" => Some(fixtures::sqrt2_tower()?),
            s => match s.strip_prefix("cyclotomic:") {
                Some(k) => {
                    let k: u64 = k.trim().parse().map_err(|_| CliError::Usage(format!("bad cyclotomic order {k:?}")))?;
                    if k < 2 {
                        return Err(CliError::Usage("cyclotomic order must be at least 2".into()));
                    }
                    Some(fixtures::cyclotomic(k)?)
                }
                None => None,
            },
        };
        Ok(match fx {
            Some(fx) => Field { ring: fx.ring, named: fx.named.into_iter().map(|(n, e)| (n.to_string(), e)).collect() },
            None => {
                let (ring, named) = parse_field_descriptor(desc)?;
                Field { ring, named }
            }
        })
    }

    /// A named element, or a polynomial in `t`.
    fn elem(&self, s: &str) -> CliResult<FieldElem> {
        let s = s.trim();
        if let Some((_, e)) = self.named.iter().find(|(n, _)| n == s) {
            return Ok(e.clone());
        }
        Ok(self.ring.parse_elem(s)?)
    }
}

fn list_text<T: Display>(v: &[T]) -> String {
    let items: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(", "))
}

fn parse_assignments(s: &str, names: &[&str]) -> CliResult<Vec<Rational>> {
    let mut got: BTreeMap<&str, Rational> = BTreeMap::new();
    for part in s.split(',') {
        let (k, v) = part.split_once('=').ok_or_else(|| CliError::Usage(format!("expected name=value in --eval, got {part:?}")))?;
        let k = k.trim();
        let name = names.iter().find(|n| **n == k).ok_or_else(|| CliError::Usage(format!("unknown variable {k:?}; expected {}", names.join(", "))))?;
        got.insert(name, q(v)?);
    }
    names.iter().map(|n| got.remove(n).ok_or_else(|| CliError::Usage(format!("--eval is missing {n}")))).collect()
}

pub fn psi(a: &PsiArgs) -> CliResult<Report> {
    let n = a.n;
    if n == 0 {
        return Err(CliError::Usage("--n must be positive".into()));
    }
    let family = match a.family {
        Family::Legendre => "legendre",
        Family::Weierstrass => "weierstrass",
    };
    let mut value = json!({ "family": family, "n": n, "d": d(n) });
    let mut lines = vec![format!("{family} ψ_{n}, d(n) = {}", d(n))];
    let mut ok = true;
    if let Some(point) = &a.eval {
        let v = match a.family {
            Family::Legendre => {
                let p = parse_assignments(point, &["lambda", "x"])?;
                legendre_psi_eval(n, &p[0], &p[1])?
            }
            Family::Weierstrass => {
                let p = parse_assignments(point, &["a", "b", "x"])?;
                weierstrass_psi_eval(n, &p[0], &p[1], &p[2])?
            }
        };
        value["eval"] = json!({ "at": point, "value": rat(&v) });
        lines.push(format!("value at {point}: {v}"));
    }
    if let Some(check) = a.check {
        if n < 3 {
            return Err(CliError::Usage("--check needs n >= 3".into()));
        }
        let (name, pass, detail) = match (check, a.family) {
            (PsiCheck::Congruence, Family::Legendre) => ("congruence", congruence_check_legendre(n)?, json!({})),
            (PsiCheck::Congruence, Family::Weierstrass) => ("congruence", congruence_check_weierstrass(n)?, json!({})),
            (PsiCheck::Degrees, Family::Legendre) => {
                let r = *degree_suite_legendre(n)?.last().expect("n >= 3");
                let pass = r.deg_lambda == d(n) && r.deg_x == 2 * d(n) && r.total == 2 * d(n);
                ("degrees", pass, json!({ "deg_lambda": r.deg_lambda, "deg_x": r.deg_x, "total": r.total }))
            }
            (PsiCheck::Degrees, Family::Weierstrass) => {
                let r = weierstrass_suite(n)?.pop().expect("n >= 3");
                ("degrees", r.deg_a as u64 == d(n) && r.homogeneous, json!({ "deg_a": r.deg_a, "homogeneous": r.homogeneous }))
            }
            (PsiCheck::Special, Family::Legendre) => {
                let r = *special_values_suite(n)?.last().expect("n >= 3");
                (
                    "special",
                    r.all(),
                    json!({ "at_zero": r.at_zero, "at_one": r.at_one, "at_lambda": r.at_lambda, "at_lambda_flipped": r.at_lambda_flipped }),
                )
            }
            (PsiCheck::Special, Family::Weierstrass) => return Err(CliError::Usage("the special-value check applies to the legendre family".into())),
        };
        ok = pass;
        value["check"] = json!({ "name": name, "pass": pass, "detail": detail });
        lines.push(format!("check {name}: {} {detail}", if pass { "pass" } else { "fail" }));
    }
    if a.eval.is_none() && a.check.is_none() {
        let text = match a.family {
            Family::Legendre => legendre_psi(n)?.fmt_bi("λ", "x"),
            Family::Weierstrass => weierstrass_psi(n)?.fmt_awx(),
        };
        value["poly"] = json!(text);
        lines.push(text);
    }
    Ok(Report::new("psi", value, lines.join("\n") + "\n").with_ok(ok))
}

fn order_report<K: RootField>(lambda: &K, x: &K, max: u64) -> CliResult<Report> {
    let o = order_bounded(lambda, x, max)?;
    let value = json!({ "lambda": lambda.to_string(), "x": x.to_string(), "max": max, "result": torsion(&o) });
    Ok(Report::new("order", value, format!("{}\n", torsion_text(&o))))
}

pub fn order(a: &OrderArgs) -> CliResult<Report> {
    match &a.field {
        None => order_report(&q(&a.lambda)?, &q(&a.x)?, a.max),
        Some(desc) => {
            let f = Field::parse(desc)?;
            order_report(&f.elem(&a.lambda)?, &f.elem(&a.x)?, a.max)
        }
    }
}

fn probe_json(p: &ModpProbe) -> Value {
    json!({ "p": p.p, "lambda": p.lambda, "alpha": p.alpha, "order": p.order })
}

fn probe_text(p: &ModpProbe) -> String {
    match p.order {
        Some(n) => format!("p = {}: order {n}", p.p),
        None => format!("p = {}: bad reduction", p.p),
    }
}

pub fn certify(a: &CertifyArgs) -> CliResult<Report> {
    let (l, x) = (q(&a.lambda)?, q(&a.x)?);
    let cert = match &a.primes {
        Some(ps) => nontorsion_certificate(&l, &x, ps)?,
        None => nontorsion_default(&l, &x)?,
    };
    let (value, text) = match &cert {
        Certificate::Certified { first, second } => (
            json!({ "certified": true, "probes": [probe_json(first), probe_json(second)] }),
            format!("infinite order: {}; {}\n", probe_text(first), probe_text(second)),
        ),
        Certificate::Inconclusive { probes } => {
            let shown: Vec<String> = probes.iter().map(probe_text).collect();
            (json!({ "certified": false, "probes": probes.iter().map(probe_json).collect::<Vec<_>>() }), format!("inconclusive: {}\n", shown.join("; ")))
        }
    };
    let mut value = value;
    value["lambda"] = rat(&l);
    value["x"] = rat(&x);
    Ok(Report::new("certify-nontorsion", value, text).with_ok(cert.is_certified()))
}

fn tset_report<K: RootField>(alpha: &K, beta: &K, max: u64, candidates: &[K], opts: &TsetOptions, sort: impl Fn(&K, &K) -> std::cmp::Ordering) -> CliResult<Report> {
    let r: TsetReport<K> = t_set_bounded(alpha, beta, max, candidates, opts)?;
    let mut members: Vec<_> = r.members.iter().collect();
    members.sort_by(|x, y| sort(&x.lambda, &y.lambda));
    let mut degenerate: Vec<&K> = r.degenerate.iter().collect();
    degenerate.sort_by(|x, y| sort(x, y));
    let value = json!({
        "alpha": alpha.to_string(),
        "beta": beta.to_string(),
        "max_order": max,
        "members": members.iter().map(|m| json!({ "lambda": m.lambda.to_string(), "order_alpha": m.order_alpha, "order_beta": m.order_beta })).collect::<Vec<_>>(),
        "degenerate": degenerate.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
        "residual": r.residual.coeffs().iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "complete": r.complete,
    });
    let shown: Vec<String> = members.iter().map(|m| format!("{} ({},{})", m.lambda, m.order_alpha, m.order_beta)).collect();
    let mut text = format!("T_{max}({alpha}, {beta}) = {}\n", list_text(&shown));
    if !r.complete {
        text.push_str(&format!("incomplete: residual factor of degree {}\n", r.residual.degree().unwrap_or(0)));
    }
    Ok(Report::new("tset", value, text))
}

pub fn tset(a: &TsetArgs, prec: u32) -> CliResult<Report> {
    let opts = TsetOptions { prec, ..TsetOptions::default() };
    match &a.field {
        None => {
            let cands = a.candidates.iter().map(|s| q(s)).collect::<CliResult<Vec<_>>>()?;
            tset_report(&q(&a.alpha)?, &q(&a.beta)?, a.max_order, &cands, &opts, |x, y| x.cmp(y))
        }
        Some(desc) => {
            let f = Field::parse(desc)?;
            let cands = a.candidates.iter().map(|s| f.elem(s)).collect::<CliResult<Vec<_>>>()?;
            tset_report(&f.elem(&a.alpha)?, &f.elem(&a.beta)?, a.max_order, &cands, &opts, |x, y| x.to_string().cmp(&y.to_string()))
        }
    }
}

pub fn screen(a: &ScreenArgs) -> CliResult<Report> {
    let (alpha, beta) = (q(&a.alpha)?, q(&a.beta)?);
    let verdict = screen_rational(&alpha, &beta)?;
    let (tag, mut text) = match &verdict {
        ScreenVerdict::Empty { clause } => ("empty", format!("T({alpha}, {beta}) = ∅ by {clause}\n")),
        ScreenVerdict::SubsetOf { candidates, clause } => ("subset", format!("T({alpha}, {beta}) ⊆ {} by {clause}\n", list_text(candidates))),
        ScreenVerdict::Inconclusive => ("inconclusive", "no screen applies\n".to_string()),
    };
    let mut value = json!({
        "alpha": rat(&alpha),
        "beta": rat(&beta),
        "verdict": tag,
        "clause": verdict.clause().map(|c| c.to_string()),
        "candidates": verdict.candidates().map(|c| c.iter().map(rat).collect::<Vec<_>>()),
    });
    if a.decide {
        match decide_t_rational(&alpha, &beta, a.max)? {
            Decision::Exact { members, clause } => {
                value["decision"] = json!({
                    "exact": true,
                    "clause": clause.to_string(),
                    "members": members.iter().map(|(l, x, y)| json!({ "lambda": rat(l), "order_alpha": x, "order_beta": y })).collect::<Vec<_>>(),
                });
                let shown: Vec<String> = members.iter().map(|(l, x, y)| format!("{l} ({x},{y})")).collect();
                text.push_str(&format!("T({alpha}, {beta}) = {}\n", list_text(&shown)));
            }
            Decision::Inconclusive { reason } => {
                value["decision"] = json!({ "exact": false, "reason": reason });
                text.push_str(&format!("undecided: {reason}\n"));
            }
        }
    }
    Ok(Report::new("screen", value, text))
}

pub fn roots_of_unity(a: &RootsArgs) -> CliResult<Report> {
    let k = a.order;
    let members = roots_of_unity_t(k)?;
    let mut value = json!({ "order": k, "members": members.iter().map(|m| m.to_string()).collect::<Vec<_>>() });
    let mut text = format!("T(a) among roots of unity, a of order {k}: {}\n", list_text(&members));
    let mut ok = true;
    if a.verify {
        let v = verify_roots_of_unity(k, a.max)?;
        ok = v.iter().all(|(_, _, o)| o.order().is_some());
        value["verified"] = json!(v
            .iter()
            .map(|(m, l, o)| json!({ "member": m.to_string(), "lambda": l.to_string(), "order": torsion(o) }))
            .collect::<Vec<_>>());
        for (m, l, o) in &v {
            text.push_str(&format!("{m} = {l}: {}\n", torsion_text(o)));
        }
    }
    Ok(Report::new("roots-of-unity", value, text).with_ok(ok))
}

pub fn weierstrass_screen(a: &WeierstrassArgs) -> CliResult<Report> {
    let xs = [q(&a.x1)?, q(&a.x2)?, q(&a.x3)?];
    let r = cw_verify(&xs[0], &xs[1], &xs[2], a.max)?;
    let mut text = String::new();
    for c in &r.candidates {
        let orders: Vec<String> = c.orders.iter().map(torsion_text).collect();
        text.push_str(&format!("y^2 = x^3 + ({})x + ({}): {}\n", c.a, c.b, orders.join(", ")));
    }
    for (x, y) in &r.dropped {
        text.push_str(&format!("singular: A = {x}, B = {y}\n"));
    }
    let value = json!({
        "x": xs.iter().map(rat).collect::<Vec<_>>(),
        "max": a.max,
        "candidates": r.candidates.iter().map(|c| json!({ "a": rat(&c.a), "b": rat(&c.b), "orders": c.orders.iter().map(torsion).collect::<Vec<_>>() })).collect::<Vec<_>>(),
        "dropped": r.dropped.iter().map(|(x, y)| json!([rat(x), rat(y)])).collect::<Vec<_>>(),
    });
    Ok(Report::new("weierstrass-screen", value, text))
}

pub fn resultant(a: &ResultantArgs) -> CliResult<Report> {
    let rec = match (&a.pair, a.m) {
        (Some(p), _) => match p.as_slice() {
            [n, n2] => r_pair(*n, *n2)?,
            _ => return Err(CliError::Usage("--pair takes two orders, e.g. --pair 3,6".into())),
        },
        (None, Some(m)) => r_m(m)?,
        (None, None) => return Err(CliError::Usage("give --m or --pair".into())),
    };
    let squarefree = a.check_squarefree.then(|| squarefree_bivariate(&rec.poly));
    let kind = match rec.kind {
        ResultantKind::Full(m) => json!({ "m": m }),
        ResultantKind::Pair(n, n2) => json!({ "pair": [n, n2] }),
    };
    let (da, db) = rec.bidegree();
    let name = match rec.kind {
        ResultantKind::Full(m) => format!("R_{m}"),
        ResultantKind::Pair(n, n2) => format!("eliminant ({n},{n2})"),
    };
    let mut text = format!("{name}: bidegree ({da},{db}), (a-b)^{} removed, symmetric {}\n", rec.removed, rec.swap_symmetric());
    if let Some(sf) = squarefree {
        text.push_str(&format!("squarefree: {sf}\n"));
    }
    let mut value = json!({
        "kind": kind,
        "bidegree": [da, db],
        "removed": rec.removed,
        "symmetric": rec.swap_symmetric(),
        "squarefree": squarefree,
    });
    if a.show {
        let p = rec.poly.fmt_bi("a", "b");
        text.push_str(&p);
        text.push('\n');
        value["poly"] = json!(p);
    }
    Ok(Report::new("resultant", value, text).with_ok(squarefree != Some(false)))
}

pub fn verify_table1(a: &Table1Args) -> CliResult<Report> {
    let (source, entries) = match &a.corpus {
        Some(p) => (p.display().to_string(), read_corpus(p)?),
        None => ("bundled".to_string(), parse_corpus(BUNDLED_TABLE1)?),
    };
    let reports = run_table1(&entries)?;
    let passed = reports.iter().filter(|r| r.passed()).count();
    let mut text = String::new();
    let mut rows = Vec::new();
    for r in &reports {
        let (attr_text, attr) = match &r.attribution {
            Some(Attribution::DivisionPolynomial { n, swapped }) => (format!("divides ψ_{n}{}", if *swapped { " swapped" } else { "" }), json!({ "psi": n, "swapped": swapped })),
            Some(Attribution::Resultant { n, n2 }) => (format!("divides eliminant ({n},{n2})"), json!({ "pair": [n, n2] })),
            None => ("no source found".to_string(), Value::Null),
        };
        let (ha, hb) = r.entry.header;
        text.push_str(&format!(
            "line {} [{ha},{hb}] {}: bidegree {:?}{}, {attr_text}\n",
            r.entry.line,
            if r.passed() { "pass" } else { "FAIL" },
            r.bidegree,
            if r.bidegree_ok { "" } else { " (header mismatch)" }
        ));
        rows.push(json!({
            "line": r.entry.line,
            "header": [ha, hb],
            "bidegree": [r.bidegree.0, r.bidegree.1],
            "bidegree_ok": r.bidegree_ok,
            "attribution": attr,
            "pass": r.passed(),
        }));
    }
    text.push_str(&format!("{passed}/{} verified\n", reports.len()));
    let value = json!({ "corpus": source, "entries": rows, "passed": passed, "total": reports.len() });
    Ok(Report::new("verify-table1", value, text).with_ok(passed == reports.len()))
}

pub fn census(a: &CensusArgs) -> CliResult<Report> {
    let table = run_census(a.max_bidegree)?;
    let mut text = String::new();
    let mut rows = String::new();
    let mut entries = Vec::new();
    for ((d1, d2), e) in &table {
        let sources: Vec<String> = e.sources.iter().map(|s| format!("[{} {} {} {} {}]", s.n, s.class, s.n2, s.class2, s.orbit_size)).collect();
        text.push_str(&format!("({d1},{d2}): {} from {}\n", e.count, sources.join(" ")));
        rows.push_str(&format!("({d1},{d2}):{}\n", e.count));
        entries.push(json!({
            "bidegree": [d1, d2],
            "count": e.count,
            "sources": e.sources.iter().map(|s| json!([s.n, s.class.to_string(), s.n2, s.class2.to_string(), s.orbit_size])).collect::<Vec<_>>(),
        }));
    }
    let value = json!({ "max_bidegree": a.max_bidegree, "entries": entries });
    Ok(Report::new("census", value, text).with_table(rows))
}

pub fn verify(a: &VerifyArgs) -> Report {
    let checks = run_suite(a.suite, a.seed);
    let ok = checks.iter().all(|c| c.pass);
    let mut text: String = checks.iter().map(|c| c.line() + "\n").collect();
    let failed = checks.iter().filter(|c| !c.pass).count();
    text.push_str(&format!("{} of {} checks passed\n", checks.len() - failed, checks.len()));
    let suite = match a.suite {
        crate::suite::Suite::Paper => "paper",
        crate::suite::Suite::Fast => "fast",
    };
    let value = json!({ "suite": suite, "seed": a.seed, "checks": checks });
    Report::new("verify", value, text).with_ok(ok)
}
