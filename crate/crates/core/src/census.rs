//! Components of the torsion-pair curve, counted by orbits.
//!
//! Torsion x-coordinates on `E_λ` correspond to `M = ((ℚ/ℤ)² \ {0})/±`, and
//! the level-2 congruence group acts on it. Orbits on `M` of points of order
//! `n ≥ 3` are the bicyclotomic classes; orbits on pairs of such points,
//! off the diagonal, are the components, of bidegree `(#O/2, #O/2)`. Every
//! class of order `n` also gives the two curves `B(a, b) = 0` and
//! `B(b, a) = 0` of bidegrees `(δ(n), 2δ(n))` and `(2δ(n), δ(n))`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use hashbrown::{HashMap, HashSet};

use crate::divpoly::delta;
use crate::error::{Error, Result};

/// `[a, b, c, d]` for the matrix `(a b; c d)` acting on column vectors.
pub type Mat = [u32; 4];

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// Prime-power factorization `[(p, p^k)]`.
fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut q = 1;
            while n % p == 0 {
                n /= p;
                q *= p;
            }
            out.push((p, q));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

fn mat_mul(x: &Mat, y: &Mat, m: u64) -> Mat {
    let f = |a: u32, b: u32, c: u32, d: u32| ((a as u64 * b as u64 + c as u64 * d as u64) % m) as u32;
    [f(x[0], y[0], x[1], y[2]), f(x[0], y[1], x[1], y[3]), f(x[2], y[0], x[3], y[2]), f(x[2], y[1], x[3], y[3])]
}

fn generator_of_units(q: u64) -> u64 {
    let phi = q / prime_powers(q)[0].0 * (prime_powers(q)[0].0 - 1);
    let primes: Vec<u64> = prime_powers(phi).into_iter().map(|(p, _)| p).collect();
    (2..q)
        .find(|&g| gcd(g, q) == 1 && primes.iter().all(|&p| crate::ring::pow_mod(g, phi / p, q) != 1))
        .unwrap_or(1)
}

/// Generators for one prime-power factor: all of `GL(2, ℤ/q)` for odd `q`,
/// the kernel of reduction mod 2 for `q = 2^a`.
fn local_generators(p: u64, q: u64) -> Vec<Mat> {
    let r = |x: i64| x.rem_euclid(q as i64) as u32;
    if p == 2 {
        if q == 2 {
            return vec![];
        }
        vec![[r(3), 0, 0, 1], [1, 0, 0, r(3)], [r(-1), 0, 0, 1], [1, 0, 0, r(-1)], [1, r(2), 0, 1], [1, 0, r(2), 1]]
    } else {
        let g = generator_of_units(q) as u32;
        vec![[1, 1, 0, 1], [1, 0, 1, 1], [g, 0, 0, 1]]
    }
}

/// `|GL(2, ℤ/q)|` for odd `q`; the size of the mod-2 kernel for `q = 2^a`.
pub fn local_group_order(p: u64, q: u64) -> u64 {
    let gl = q.pow(4) * (p * p - 1) * (p * p - p) / p.pow(4);
    if p == 2 {
        gl / 6
    } else {
        gl
    }
}

/// Size of the group generated by `gens` in `GL(2, ℤ/m)`.
pub fn closure_order(gens: &[Mat], m: u64) -> usize {
    let id: Mat = [1 % m as u32, 0, 0, 1 % m as u32];
    let mut seen: HashSet<Mat> = HashSet::new();
    seen.insert(id);
    let mut frontier = vec![id];
    while let Some(x) = frontier.pop() {
        for g in gens {
            let y = mat_mul(g, &x, m);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    seen.len()
}

/// Largest local group order validated by closure.
const CLOSURE_LIMIT: u64 = 400_000;

/// Generators of `{γ ∈ GL(2, ℤ/L) : γ ≡ I mod gcd(L, 2)}`, assembled by CRT
/// from prime-power factors, each checked by closure when small enough.
pub fn congruence_group_generators(l: u64) -> Result<Vec<Mat>> {
    let mut out = Vec::new();
    for (p, q) in prime_powers(l) {
        let local = local_generators(p, q);
        let want = local_group_order(p, q);
        if want <= CLOSURE_LIMIT && closure_order(&local, q) as u64 != want {
            return Err(Error::GeneratorValidationFailed(q));
        }
        // Lift to ℤ/L: the given matrix mod q, the identity mod L/q.
        let rest = l / q;
        for g in local {
            let lift = |v: u32, idv: u32| crt(v as u64, q, idv as u64, rest) as u32;
            out.push([lift(g[0], 1), lift(g[1], 0), lift(g[2], 0), lift(g[3], 1)]);
        }
    }
    Ok(out)
}

fn crt(a: u64, m: u64, b: u64, n: u64) -> u64 {
    if n == 1 {
        return a % m;
    }
    // x ≡ a mod m, x ≡ b mod n with gcd(m, n) = 1.
    let inv = (1..n).find(|k| (m * k) % n == 1).unwrap_or(0);
    let t = ((b + n - a % n) % n) * inv % n;
    (a + m * t) % (m * n)
}

type Vec2 = (u32, u32);

fn neg(v: Vec2, l: u32) -> Vec2 {
    ((l - v.0) % l, (l - v.1) % l)
}

/// Representative of `±v`.
fn canon(v: Vec2, l: u32) -> Vec2 {
    v.min(neg(v, l))
}

fn act(g: &Mat, v: Vec2, l: u32) -> Vec2 {
    let m = l as u64;
    let x = (g[0] as u64 * v.0 as u64 + g[1] as u64 * v.1 as u64) % m;
    let y = (g[2] as u64 * v.0 as u64 + g[3] as u64 * v.1 as u64) % m;
    (x as u32, y as u32)
}

fn order_of(v: Vec2, l: u32) -> u64 {
    let g = gcd(gcd(v.0 as u64, v.1 as u64), l as u64);
    l as u64 / g
}

/// A bicyclotomic class: `Odd` for odd order, otherwise labelled by the
/// 2-torsion point `(n/2)·m`, one of `(1/2, 0)`, `(0, 1/2)`, `(1/2, 1/2)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClassId {
    Odd,
    Two(u8),
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Odd => f.write_str("*"),
            ClassId::Two(k) => write!(f, "t{k}"),
        }
    }
}

fn class_of(v: Vec2, n: u64, l: u32) -> ClassId {
    if n % 2 == 1 {
        return ClassId::Odd;
    }
    let h = (n / 2) as u32;
    let w = ((v.0 as u64 * h as u64 % l as u64) as u32, (v.1 as u64 * h as u64 % l as u64) as u32);
    let half = l / 2;
    match (w.0 == half, w.1 == half) {
        (true, false) => ClassId::Two(1),
        (false, true) => ClassId::Two(2),
        _ => ClassId::Two(3),
    }
}

/// Points of exact order `n` in `(ℤ/L)²`, one per `±` pair.
fn points_of_order(n: u64, l: u32) -> Vec<Vec2> {
    let s = l / n as u32;
    let mut out = BTreeSet::new();
    for x in 0..n as u32 {
        for y in 0..n as u32 {
            let v = (x * s, y * s);
            if order_of(v, l) == n {
                out.insert(canon(v, l));
            }
        }
    }
    out.into_iter().collect()
}

fn orbits_of(points: &[Vec2], gens: &[Mat], l: u32) -> Vec<Vec<Vec2>> {
    let mut seen: HashSet<Vec2> = HashSet::new();
    let mut out = Vec::new();
    for &p in points {
        if !seen.insert(p) {
            continue;
        }
        let mut orbit = vec![p];
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for g in gens {
                let y = canon(act(g, x, l), l);
                if seen.insert(y) {
                    orbit.push(y);
                }
            }
            i += 1;
        }
        out.push(orbit);
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointClass {
    pub n: u64,
    pub id: ClassId,
    /// Number of `±` pairs in the class.
    pub size: usize,
}

/// Classes of points of order `n ≥ 3` dividing `L`, checked against the
/// one-or-three rule and the size `2δ(n)`.
pub fn classes(l: u64) -> Result<Vec<PointClass>> {
    let gens = congruence_group_generators(l)?;
    let mut out = Vec::new();
    for n in (3..=l).filter(|n| l % n == 0) {
        let pts = points_of_order(n, l as u32);
        let mut orbits: Vec<PointClass> = orbits_of(&pts, &gens, l as u32)
            .into_iter()
            .map(|o| PointClass { n, id: class_of(o[0], n, l as u32), size: o.len() })
            .collect();
        orbits.sort_by_key(|c| c.id);
        let want = if n % 2 == 1 { 1 } else { 3 };
        let ids: BTreeSet<ClassId> = orbits.iter().map(|c| c.id).collect();
        if orbits.len() != want || ids.len() != want || orbits.iter().any(|c| c.size as u64 != 2 * delta(n)) {
            return Err(Error::VerificationFailed(alloc::format!("class structure of order {n} at level {l}")));
        }
        out.extend(orbits);
    }
    Ok(out)
}

pub fn class_ids(n: u64) -> Vec<ClassId> {
    if n % 2 == 1 {
        vec![ClassId::Odd]
    } else {
        vec![ClassId::Two(1), ClassId::Two(2), ClassId::Two(3)]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct OrbitComponent {
    pub n: u64,
    pub class: ClassId,
    pub n2: u64,
    pub class2: ClassId,
    pub orbit_size: usize,
    pub bidegree: (u64, u64),
}

/// Orbits on pairs from two classes, leaving out the diagonal.
pub fn orbit_components(n: u64, c: ClassId, n2: u64, c2: ClassId) -> Result<Vec<OrbitComponent>> {
    let l = lcm(n, n2);
    let gens = congruence_group_generators(l)?;
    orbit_components_with(n, c, n2, c2, l, &gens)
}

fn orbit_components_with(n: u64, c: ClassId, n2: u64, c2: ClassId, l: u64, gens: &[Mat]) -> Result<Vec<OrbitComponent>> {
    let lu = l as u32;
    let first: Vec<Vec2> = points_of_order(n, lu).into_iter().filter(|&v| class_of(v, n, lu) == c).collect();
    let second: Vec<Vec2> = points_of_order(n2, lu).into_iter().filter(|&v| class_of(v, n2, lu) == c2).collect();
    let mut seen: HashSet<(Vec2, Vec2)> = HashSet::new();
    let mut out = Vec::new();
    for &a in &first {
        for &b in &second {
            if a == b || !seen.insert((a, b)) {
                continue;
            }
            let mut orbit = vec![(a, b)];
            let mut i = 0;
            while i < orbit.len() {
                let (x, y) = orbit[i];
                for g in gens {
                    let z = (canon(act(g, x, lu), lu), canon(act(g, y, lu), lu));
                    if seen.insert(z) {
                        orbit.push(z);
                    }
                }
                i += 1;
            }
            let size = orbit.len();
            if size as u64 % (2 * delta(n)) != 0 || size as u64 % (2 * delta(n2)) != 0 {
                return Err(Error::VerificationFailed(alloc::format!("orbit of size {size} for orders ({n}, {n2})")));
            }
            let d = size as u64 / 2;
            out.push(OrbitComponent { n, class: c, n2, class2: c2, orbit_size: size, bidegree: (d, d) });
        }
    }
    out.sort();
    Ok(out)
}

/// One source of a census entry: `(n, class, n2, class2, orbit size)`; an
/// order of 2 marks the curves `B(a, b) = 0` and `B(b, a) = 0`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Source {
    pub n: u64,
    pub class: ClassId,
    pub n2: u64,
    pub class2: ClassId,
    pub orbit_size: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CensusEntry {
    pub count: usize,
    pub sources: Vec<Source>,
}

/// Orders that can contribute to bidegrees up to `d_max`: `n < π√(2 d_max)` and `δ(n) ≤ d_max`.
pub fn census_orders(d_max: u64) -> Vec<u64> {
    let bound = core::f64::consts::PI * libm::sqrt(2.0 * d_max as f64);
    (3..).take_while(|&n| (n as f64) < bound).filter(|&n| delta(n) <= d_max).collect()
}

/// Component counts by bidegree, for all components with `min(d_a, d_b) ≤ d_max`.
pub fn census(d_max: u64) -> Result<BTreeMap<(u64, u64), CensusEntry>> {
    let mut table: BTreeMap<(u64, u64), CensusEntry> = BTreeMap::new();
    let orders = census_orders(d_max);
    let lambda_class = ClassId::Two(3);
    for &n in &orders {
        let dl = delta(n);
        for c in class_ids(n) {
            for (bd, src) in [((dl, 2 * dl), Source { n: 2, class: lambda_class, n2: n, class2: c, orbit_size: 2 * dl as usize }), ((2 * dl, dl), Source { n, class: c, n2: 2, class2: lambda_class, orbit_size: 2 * dl as usize })] {
                let e = table.entry(bd).or_default();
                e.count += 1;
                e.sources.push(src);
            }
        }
    }
    let mut gens_cache: HashMap<u64, Vec<Mat>> = HashMap::new();
    for &n in &orders {
        for &n2 in &orders {
            if dl_lcm(n, n2) > d_max {
                continue;
            }
            let l = lcm(n, n2);
            if !gens_cache.contains_key(&l) {
                gens_cache.insert(l, congruence_group_generators(l)?);
            }
            let gens = &gens_cache[&l];
            for c in class_ids(n) {
                for c2 in class_ids(n2) {
                    for comp in orbit_components_with(n, c, n2, c2, l, gens)? {
                        if comp.bidegree.0 > d_max {
                            continue;
                        }
                        let e = table.entry(comp.bidegree).or_default();
                        e.count += 1;
                        e.sources.push(Source { n, class: c, n2, class2: c2, orbit_size: comp.orbit_size });
                    }
                }
            }
        }
    }
    for e in table.values_mut() {
        e.sources.sort();
    }
    Ok(table)
}

fn dl_lcm(n: u64, n2: u64) -> u64 {
    lcm(delta(n), delta(n2))
}

/// Bidegree counts `(d_a, d_b) ↦ count` as printed in the published table.
pub const PUBLISHED_TABLE: [((u64, u64), usize); 27] = [
    ((1, 1), 3),
    ((1, 2), 3),
    ((2, 1), 3),
    ((2, 2), 18),
    ((2, 4), 4),
    ((4, 2), 4),
    ((4, 4), 45),
    ((4, 8), 3),
    ((8, 4), 3),
    ((6, 6), 44),
    ((6, 12), 4),
    ((12, 6), 4),
    ((8, 8), 57),
    ((8, 16), 3),
    ((16, 8), 3),
    ((12, 12), 68),
    ((12, 24), 4),
    ((24, 12), 4),
    ((16, 16), 96),
    ((16, 32), 3),
    ((32, 16), 3),
    ((18, 18), 76),
    ((18, 36), 4),
    ((36, 18), 4),
    ((24, 24), 161),
    ((24, 48), 3),
    ((48, 24), 3),
];

/// Nonzero bidegrees absent from the published table, and present ones
/// whose count differs.
pub fn census_findings(table: &BTreeMap<(u64, u64), CensusEntry>) -> Vec<((u64, u64), usize, Option<usize>)> {
    let published: BTreeMap<(u64, u64), usize> = PUBLISHED_TABLE.iter().copied().collect();
    table
        .iter()
        .filter(|(bd, e)| published.get(bd) != Some(&e.count))
        .map(|(bd, e)| (*bd, e.count, published.get(bd).copied()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_validate() {
        assert!(congruence_group_generators(2).unwrap().is_empty());
        assert_eq!(closure_order(&congruence_group_generators(3).unwrap(), 3), 48);
        assert_eq!(closure_order(&congruence_group_generators(4).unwrap(), 4), 16);
        for q in [3u64, 5, 7, 9, 11, 13, 25, 27] {
            let p = prime_powers(q)[0].0;
            assert_eq!(closure_order(&local_generators(p, q), q) as u64, local_group_order(p, q), "q = {q}");
        }
        for q in [4u64, 8, 16] {
            assert_eq!(closure_order(&local_generators(2, q), q) as u64, local_group_order(2, q), "q = {q}");
        }
        assert_eq!(closure_order(&congruence_group_generators(12).unwrap(), 12), 48 * 16);
    }

    #[test]
    fn class_structure() {
        let c3 = classes(3).unwrap();
        assert_eq!(c3, vec![PointClass { n: 3, id: ClassId::Odd, size: 4 }]);
        let c4 = classes(4).unwrap();
        assert_eq!(c4.len(), 3);
        assert!(c4.iter().all(|c| c.size == 2));
        let c6 = classes(6).unwrap();
        assert_eq!(c6.iter().filter(|c| c.n == 6).map(|c| c.size).collect::<Vec<_>>(), vec![4, 4, 4]);
        for l in [8, 9, 10, 12, 14, 16, 18, 20, 24] {
            classes(l).unwrap();
        }
    }

    #[test]
    fn small_census() {
        let t = census(2).unwrap();
        let got: Vec<((u64, u64), usize)> = t.iter().map(|(k, v)| (*k, v.count)).collect();
        assert_eq!(got, vec![((1, 1), 3), ((1, 2), 3), ((2, 1), 3), ((2, 2), 18), ((2, 4), 1 + 3), ((4, 2), 4)]);
        let same = orbit_components(4, ClassId::Two(1), 4, ClassId::Two(1)).unwrap();
        assert_eq!(same.iter().map(|c| c.bidegree).collect::<Vec<_>>(), vec![(1, 1)]);
    }

    #[test]
    fn published_table_reproduced() {
        let t = census(24).unwrap();
        for (bd, count) in PUBLISHED_TABLE {
            assert_eq!(t.get(&bd).map(|e| e.count), Some(count), "{bd:?}");
        }
        assert_eq!(t.len(), PUBLISHED_TABLE.len());
        assert!(census_findings(&t).is_empty());
        for (&(x, y), e) in &t {
            assert_eq!(t[&(y, x)].count, e.count);
            if x == y {
                assert!([1, 2, 4, 6, 8, 12, 16, 18, 24].contains(&x));
            }
        }
    }

    #[test]
    fn elementary_kernel_generators_are_not_enough() {
        let partial: Vec<Mat> = local_generators(2, 8).into_iter().filter(|g| g[0] != 7 && g[3] != 7).collect();
        assert_eq!(partial.len(), 4);
        assert_eq!(closure_order(&partial, 8), 128);
        assert_eq!(closure_order(&local_generators(2, 8), 8), 256);
    }

    #[test]
    fn classes_up_to_24() {
        for l in 3..=24 {
            let cs = classes(l).unwrap();
            assert!(cs.iter().all(|c| c.size as u64 == 2 * delta(c.n)));
        }
    }

    #[test]
    fn orbit_divisibility() {
        for c in orbit_components(3, ClassId::Odd, 4, ClassId::Two(1)).unwrap() {
            assert_eq!(c.orbit_size % 4, 0);
            assert_eq!(c.bidegree.0 % 2, 0);
        }
        // Order-3 pairs form a single orbit of 12, matching the bidegree of R_3.
        let o33 = orbit_components(3, ClassId::Odd, 3, ClassId::Odd).unwrap();
        assert_eq!(o33.iter().map(|c| c.bidegree).collect::<Vec<_>>(), vec![(6, 6)]);
    }
}
