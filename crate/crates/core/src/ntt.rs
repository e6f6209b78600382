//! Number-theoretic transform over the Goldilocks prime `2^64 − 2^32 + 1`
//! and dense bivariate polynomials modulo `2^k` multiplied through it.
//!
//! Coefficients modulo `2^k` with `k ≤ 8` are lifted to `[0, 2^k)`; a product
//! of two polynomials with at most `2^22` terms each then has exact integer
//! convolution values below the prime, so one transform suffices and the
//! result is reduced modulo `2^k` afterwards.

use alloc::vec;
use alloc::vec::Vec;

use crate::ring::RingOps;

pub const P: u64 = 0xffff_ffff_0000_0001;
const EPSILON: u64 = 0xffff_ffff;
const GENERATOR: u64 = 7;
const TWO_ADICITY: u32 = 32;

#[inline]
fn reduce128(x: u128) -> u64 {
    let lo = x as u64;
    let hi = (x >> 64) as u64;
    let hi_hi = hi >> 32;
    let hi_lo = hi & EPSILON;
    let (mut t0, borrow) = lo.overflowing_sub(hi_hi);
    if borrow {
        t0 = t0.wrapping_sub(EPSILON);
    }
    let t1 = hi_lo * EPSILON;
    let (res, carry) = t0.overflowing_add(t1);
    let res = res.wrapping_add(EPSILON * carry as u64);
    if res >= P {
        res - P
    } else {
        res
    }
}

#[inline]
pub fn mul(a: u64, b: u64) -> u64 {
    reduce128(a as u128 * b as u128)
}

#[inline]
pub fn add(a: u64, b: u64) -> u64 {
    let (s, c) = a.overflowing_add(b);
    let (s2, c2) = s.overflowing_sub(P);
    if c || !c2 {
        s2
    } else {
        s
    }
}

#[inline]
pub fn sub(a: u64, b: u64) -> u64 {
    let (d, borrow) = a.overflowing_sub(b);
    if borrow {
        d.wrapping_add(P)
    } else {
        d
    }
}

pub fn pow(mut b: u64, mut e: u64) -> u64 {
    let mut acc = 1;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(acc, b);
        }
        b = mul(b, b);
        e >>= 1;
    }
    acc
}

/// A primitive `2^log_n`-th root of unity.
fn root_of_unity(log_n: u32) -> u64 {
    assert!(log_n <= TWO_ADICITY);
    let g = pow(GENERATOR, (P - 1) >> TWO_ADICITY);
    pow(g, 1u64 << (TWO_ADICITY - log_n))
}

/// In-place transform of a power-of-two length slice; `inverse` includes the `1/n` scaling.
pub fn transform(a: &mut [u64], inverse: bool) {
    let n = a.len();
    assert!(n.is_power_of_two());
    if n == 1 {
        return;
    }
    let log_n = n.trailing_zeros();
    let mut j = 0;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut w_table = vec![0u64; n / 2];
    let mut len = 2;
    let mut lg = 1;
    while len <= n {
        let mut w = root_of_unity(lg);
        if inverse {
            w = pow(w, P - 2);
        }
        let half = len / 2;
        w_table[0] = 1;
        for k in 1..half {
            w_table[k] = mul(w_table[k - 1], w);
        }
        for chunk in a.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = mul(hi[k], w_table[k]);
                lo[k] = add(u, v);
                hi[k] = sub(u, v);
            }
        }
        len <<= 1;
        lg += 1;
    }
    if inverse {
        let inv_n = pow(1u64 << log_n, P - 2);
        for x in a.iter_mut() {
            *x = mul(*x, inv_n);
        }
    }
}

/// Cyclic-free convolution of two sequences with entries below `P`.
pub fn convolve(a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let n = a.len() + b.len() - 1;
    if a.len().min(b.len()) <= 32 {
        let mut c = vec![0u64; n];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = add(c[i + j], mul(x, y));
            }
        }
        return c;
    }
    let size = n.next_power_of_two();
    let mut fa = vec![0u64; size];
    fa[..a.len()].copy_from_slice(a);
    transform(&mut fa, false);
    if core::ptr::eq(a, b) {
        for x in fa.iter_mut() {
            *x = mul(*x, *x);
        }
    } else {
        let mut fb = vec![0u64; size];
        fb[..b.len()].copy_from_slice(b);
        transform(&mut fb, false);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = mul(*x, *y);
        }
    }
    transform(&mut fa, true);
    fa.truncate(n);
    fa
}

/// Dense polynomial in `(λ, x)` with coefficients modulo `2^k`, `1 ≤ k ≤ 8`.
///
/// Coefficient of `λ^i x^j` sits at `i * cols + j`. Trailing zero rows and
/// columns are trimmed, so `rows - 1` and `cols - 1` are the exact degrees.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dense2k {
    pub k: u8,
    rows: usize,
    cols: usize,
    c: Vec<u8>,
}

impl Dense2k {
    pub fn zero(k: u8) -> Self {
        assert!((1..=8).contains(&k));
        Dense2k { k, rows: 0, cols: 0, c: Vec::new() }
    }

    fn mask(&self) -> u16 {
        (1u16 << self.k) - 1
    }

    /// Builds from `(i, j, c)` triples meaning `c λ^i x^j`.
    pub fn from_terms(k: u8, terms: &[(usize, usize, i64)]) -> Self {
        let rows = terms.iter().map(|t| t.0 + 1).max().unwrap_or(0);
        let cols = terms.iter().map(|t| t.1 + 1).max().unwrap_or(0);
        let m = (1i64 << k) - 1;
        let mut c = vec![0u8; rows * cols];
        for &(i, j, v) in terms {
            let s = &mut c[i * cols + j];
            *s = ((*s as i64 + v) & m) as u8;
        }
        Dense2k { k, rows, cols, c }.trimmed()
    }

    pub fn get(&self, i: usize, j: usize) -> u8 {
        if i < self.rows && j < self.cols {
            self.c[i * self.cols + j]
        } else {
            0
        }
    }

    /// `(deg_λ, deg_x)`, `None` for zero.
    pub fn degrees(&self) -> Option<(usize, usize)> {
        (self.rows > 0).then(|| (self.rows - 1, self.cols - 1))
    }

    pub fn total_degree(&self) -> Option<usize> {
        let mut best = None;
        for i in 0..self.rows {
            for j in (0..self.cols).rev() {
                if self.c[i * self.cols + j] != 0 {
                    best = best.max(Some(i + j));
                    break;
                }
            }
        }
        best
    }

    /// The coefficient of `λ^i` as a polynomial in `x`.
    pub fn row(&self, i: usize) -> Vec<u8> {
        if i >= self.rows {
            return Vec::new();
        }
        let mut r = self.c[i * self.cols..(i + 1) * self.cols].to_vec();
        while r.last() == Some(&0) {
            r.pop();
        }
        r
    }

    /// Nonzero terms `(i, j, c)`.
    pub fn terms(&self) -> Vec<(usize, usize, u8)> {
        let mut out = Vec::new();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let v = self.c[i * self.cols + j];
                if v != 0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    /// Reduction to a smaller power of two.
    pub fn reduce_to(&self, k: u8) -> Self {
        assert!(k <= self.k && k >= 1);
        let m = ((1u16 << k) - 1) as u8;
        Dense2k { k, rows: self.rows, cols: self.cols, c: self.c.iter().map(|&v| v & m).collect() }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        let mut rows = self.rows;
        while rows > 0 && self.c[(rows - 1) * self.cols..rows * self.cols].iter().all(|&v| v == 0) {
            rows -= 1;
        }
        let mut cols = self.cols;
        while cols > 0 && (0..rows).all(|i| self.c[i * self.cols + cols - 1] == 0) {
            cols -= 1;
        }
        if rows == 0 || cols == 0 {
            return Dense2k::zero(self.k);
        }
        if cols != self.cols || rows != self.rows {
            let mut c = Vec::with_capacity(rows * cols);
            for i in 0..rows {
                c.extend_from_slice(&self.c[i * self.cols..i * self.cols + cols]);
            }
            self.c = c;
        }
        self.rows = rows;
        self.cols = cols;
        self
    }

    fn combine(&self, o: &Self, f: impl Fn(u16, u16) -> u16) -> Self {
        assert_eq!(self.k, o.k, "moduli differ");
        let rows = self.rows.max(o.rows);
        let cols = self.cols.max(o.cols);
        let m = self.mask();
        let mut c = vec![0u8; rows * cols];
        for i in 0..rows {
            for j in 0..cols {
                c[i * cols + j] = (f(self.get(i, j) as u16, o.get(i, j) as u16) & m) as u8;
            }
        }
        Dense2k { k: self.k, rows, cols, c }.trimmed()
    }

    fn product(&self, o: &Self) -> Self {
        assert_eq!(self.k, o.k, "moduli differ");
        if self.rows == 0 || o.rows == 0 {
            return Dense2k::zero(self.k);
        }
        let rows = self.rows + o.rows - 1;
        let cols = self.cols + o.cols - 1;
        let pack = |p: &Dense2k| -> Vec<u64> {
            let mut v = vec![0u64; (p.rows - 1) * cols + p.cols];
            for i in 0..p.rows {
                for j in 0..p.cols {
                    v[i * cols + j] = p.c[i * p.cols + j] as u64;
                }
            }
            v
        };
        let a = pack(self);
        let conv = if core::ptr::eq(self, o) {
            convolve(&a, &a)
        } else {
            convolve(&a, &pack(o))
        };
        let m = self.mask() as u64;
        let mut c = vec![0u8; rows * cols];
        for (idx, v) in conv.into_iter().enumerate() {
            c[idx] = (v & m) as u8;
        }
        Dense2k { k: self.k, rows, cols, c }.trimmed()
    }
}

impl RingOps for Dense2k {
    fn plus(&self, o: &Self) -> Self {
        self.combine(o, |a, b| a + b)
    }
    fn minus(&self, o: &Self) -> Self {
        self.combine(o, |a, b| a + 256 - b)
    }
    fn times(&self, o: &Self) -> Self {
        self.product(o)
    }
    fn square(&self) -> Self {
        self.product(self)
    }
    fn negated(&self) -> Self {
        Dense2k::zero(self.k).minus(self)
    }
    fn is_zero(&self) -> bool {
        self.rows == 0
    }
    fn int_like(&self, n: i64) -> Self {
        Dense2k::from_terms(self.k, &[(0, 0, n)])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_arithmetic() {
        assert_eq!(mul(P - 1, P - 1), 1);
        assert_eq!(add(P - 1, 2), 1);
        assert_eq!(sub(0, 1), P - 1);
        let w = root_of_unity(5);
        assert_eq!(pow(w, 32), 1);
        assert_ne!(pow(w, 16), 1);
    }

    #[test]
    fn convolution_matches_schoolbook() {
        let a: Vec<u64> = (0..300).map(|i| (i * 7919 + 13) % 1000).collect();
        let b: Vec<u64> = (0..200).map(|i| (i * 104_729 + 7) % 1000).collect();
        let fast = convolve(&a, &b);
        let mut slow = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                slow[i + j] += x * y;
            }
        }
        assert_eq!(fast, slow);
    }

    #[test]
    fn dense_mod_2k() {
        // (λ - x^2)^2 mod 4 = λ^2 + 2λx^2 + x^4
        let u = Dense2k::from_terms(2, &[(1, 0, 1), (0, 2, -1)]);
        let s = u.square();
        assert_eq!(s, Dense2k::from_terms(2, &[(2, 0, 1), (1, 2, 2), (0, 4, 1)]));
        assert_eq!(s.degrees(), Some((2, 4)));
        assert_eq!(s.total_degree(), Some(4));
        assert!(s.minus(&s).is_zero());
        assert_eq!(s.reduce_to(1), Dense2k::from_terms(1, &[(2, 0, 1), (0, 4, 1)]));
        let big = u.power(40);
        assert_eq!(big.degrees(), Some((40, 80)));
    }
}
