//! Fixed-point complex numbers over big integers and polynomial root finding.
//!
//! A [`CFloat`] stores `re` and `im` scaled by `2^prec`. Precision is absolute,
//! which suits the uses here: roots of polynomials with exact coefficients and
//! the complex embeddings of small number fields.

use alloc::vec;
use alloc::vec::Vec;
use alloc::string::String;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::arith::Rational;
use crate::error::{Error, Result};
use crate::ring::RingOps;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CFloat {
    pub re: BigInt,
    pub im: BigInt,
    pub prec: u32,
}

fn scale_down(x: &BigInt, s: u32) -> BigInt {
    // Round to nearest.
    if s == 0 {
        return x.clone();
    }
    (x + (BigInt::from(1) << (s - 1))) >> s
}

impl CFloat {
    pub fn zero(prec: u32) -> Self {
        CFloat { re: BigInt::default(), im: BigInt::default(), prec }
    }

    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let num = q.numer() << prec;
        let (d, r) = num.div_mod_floor(q.denom());
        let re = if (&r << 1u32) >= *q.denom() { d + 1 } else { d };
        CFloat { re, im: BigInt::default(), prec }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        CFloat { re: fixed_from_f64(re, prec), im: fixed_from_f64(im, prec), prec }
    }

    pub fn with_prec(&self, prec: u32) -> Self {
        if prec >= self.prec {
            let s = prec - self.prec;
            CFloat { re: &self.re << s, im: &self.im << s, prec }
        } else {
            let s = self.prec - prec;
            CFloat { re: scale_down(&self.re, s), im: scale_down(&self.im, s), prec }
        }
    }

    pub fn conj(&self) -> Self {
        CFloat { re: self.re.clone(), im: -&self.im, prec: self.prec }
    }

    pub fn re_f64(&self) -> f64 {
        fixed_to_f64(&self.re, self.prec)
    }

    pub fn im_f64(&self) -> f64 {
        fixed_to_f64(&self.im, self.prec)
    }

    /// `log2 |z|`, roughly; `-inf` for zero.
    pub fn log2_abs(&self) -> f64 {
        let b = self.re.abs().max(self.im.abs());
        if b.is_zero() {
            return f64::NEG_INFINITY;
        }
        let bits = b.bits();
        let shift = bits.saturating_sub(60);
        let r = (&self.re >> shift).to_f64().unwrap_or(0.0);
        let i = (&self.im >> shift).to_f64().unwrap_or(0.0);
        libm::log2(libm::sqrt(r * r + i * i)) + shift as f64 - self.prec as f64
    }

    pub fn abs_f64(&self) -> f64 {
        libm::exp2(self.log2_abs())
    }

    pub fn div(&self, o: &Self) -> Option<Self> {
        let den = &o.re * &o.re + &o.im * &o.im;
        if den.is_zero() {
            return None;
        }
        let nr = &self.re * &o.re + &self.im * &o.im;
        let ni = &self.im * &o.re - &self.re * &o.im;
        Some(CFloat { re: (nr << self.prec).div_floor(&den), im: (ni << self.prec).div_floor(&den), prec: self.prec })
    }

    /// Exact square of the modulus, still scaled by `2^prec`.
    pub fn norm_sq(&self) -> BigInt {
        (&self.re * &self.re + &self.im * &self.im) >> self.prec
    }
}

fn fixed_from_f64(v: f64, prec: u32) -> BigInt {
    if v == 0.0 || !v.is_finite() {
        return BigInt::default();
    }
    let (m, e) = libm::frexp(v);
    let mant = (m * (1u64 << 53) as f64) as i64;
    let shift = prec as i64 + e as i64 - 53;
    let b = BigInt::from(mant);
    if shift >= 0 {
        b << shift as u32
    } else {
        b >> (-shift) as u32
    }
}

fn fixed_to_f64(x: &BigInt, prec: u32) -> f64 {
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x >> shift).to_f64().unwrap_or(0.0);
    libm::ldexp(top, shift as i32 - prec as i32)
}

impl RingOps for CFloat {
    fn plus(&self, o: &Self) -> Self {
        CFloat { re: &self.re + &o.re, im: &self.im + &o.im, prec: self.prec }
    }
    fn minus(&self, o: &Self) -> Self {
        CFloat { re: &self.re - &o.re, im: &self.im - &o.im, prec: self.prec }
    }
    fn times(&self, o: &Self) -> Self {
        let re = &self.re * &o.re - &self.im * &o.im;
        let im = &self.re * &o.im + &self.im * &o.re;
        CFloat { re: scale_down(&re, self.prec), im: scale_down(&im, self.prec), prec: self.prec }
    }
    fn negated(&self) -> Self {
        CFloat { re: -&self.re, im: -&self.im, prec: self.prec }
    }
    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    fn int_like(&self, n: i64) -> Self {
        CFloat { re: BigInt::from(n) << self.prec, im: BigInt::default(), prec: self.prec }
    }
}

/// Horner evaluation of `p` and `p'` at `z`; coefficients lowest first.
fn eval_with_derivative(p: &[CFloat], z: &CFloat) -> (CFloat, CFloat) {
    let mut v = CFloat::zero(z.prec);
    let mut d = CFloat::zero(z.prec);
    for a in p.iter().rev() {
        d = d.times(z).plus(&v);
        v = v.times(z).plus(a);
    }
    (v, d)
}

/// Evaluates a polynomial with complex coefficients.
pub fn eval(p: &[CFloat], z: &CFloat) -> CFloat {
    let mut v = CFloat::zero(z.prec);
    for a in p.iter().rev() {
        v = v.times(z).plus(a);
    }
    v
}

fn aberth_pass(p: &[CFloat], z: &mut [CFloat], tol_log2: f64, max_iter: usize) -> bool {
    let n = z.len();
    for _ in 0..max_iter {
        let mut worst = f64::NEG_INFINITY;
        for k in 0..n {
            let (v, d) = eval_with_derivative(p, &z[k]);
            if v.is_zero() {
                continue;
            }
            let Some(ratio) = v.div(&d) else {
                // Stationary point: nudge and retry on the next sweep.
                let bump = CFloat::from_f64(1e-3, 1e-3, z[k].prec);
                z[k] = z[k].plus(&bump);
                worst = f64::INFINITY;
                continue;
            };
            let mut s = CFloat::zero(z[k].prec);
            for j in 0..n {
                if j == k {
                    continue;
                }
                if let Some(inv) = z[k].int_like(1).div(&z[k].minus(&z[j])) {
                    s = s.plus(&inv);
                }
            }
            let one = z[k].int_like(1);
            let w = ratio.div(&one.minus(&ratio.times(&s))).unwrap_or(ratio);
            worst = worst.max(w.log2_abs());
            z[k] = z[k].minus(&w);
        }
        if worst < tol_log2 {
            return true;
        }
    }
    false
}

/// All complex roots of a polynomial with rational coefficients, with multiplicity.
///
/// Runs Aberth's iteration at 64 bits, then refines at `prec` bits. Fails with
/// [`Error::NumericPrecisionExceeded`] when the refinement does not settle.
pub fn complex_roots(p: &[Rational], prec: u32) -> Result<Vec<CFloat>> {
    let coeffs: Vec<CFloat> = p.iter().map(|c| CFloat::from_rational(c, prec)).collect();
    complex_roots_c(&coeffs, prec)
}

/// As [`complex_roots`] for complex coefficients given at precision `prec`.
pub fn complex_roots_c(p: &[CFloat], prec: u32) -> Result<Vec<CFloat>> {
    let mut p: Vec<CFloat> = p.iter().map(|c| c.with_prec(prec)).collect();
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    let n = p.len().saturating_sub(1);
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = p[n].log2_abs();
    // Fujiwara bound on the root moduli.
    let mut r_log2 = f64::NEG_INFINITY;
    for k in 1..=n {
        let c = p[n - k].log2_abs();
        if c.is_finite() {
            r_log2 = r_log2.max((c - lead) / k as f64);
        }
    }
    let radius = if r_log2.is_finite() { libm::exp2(r_log2 + 1.0).min(1e300) } else { 1.0 };
    let lo = 64u32;
    let low: Vec<CFloat> = p.iter().map(|c| c.with_prec(lo)).collect();
    let mut z: Vec<CFloat> = (0..n)
        .map(|k| {
            let th = 2.0 * core::f64::consts::PI * k as f64 / n as f64 + 0.4;
            CFloat::from_f64(radius * libm::cos(th), radius * libm::sin(th), lo)
        })
        .collect();
    aberth_pass(&low, &mut z, -40.0, 2000 + 40 * n);
    let mut z: Vec<CFloat> = z.iter().map(|c| c.with_prec(prec)).collect();
    let tol = -(prec as f64) + 16.0;
    if !aberth_pass(&p, &mut z, tol, 200 + 4 * n) {
        return Err(Error::NumericPrecisionExceeded(String::from("root refinement did not converge")));
    }
    Ok(z)
}

/// Newton inclusion radius `n |p(z) / p'(z)|` as `log2`.
pub fn inclusion_radius_log2(p: &[CFloat], z: &CFloat) -> f64 {
    let (v, d) = eval_with_derivative(p, z);
    if v.is_zero() {
        return f64::NEG_INFINITY;
    }
    match v.div(&d) {
        Some(r) => r.log2_abs() + libm::log2((p.len() - 1) as f64),
        None => f64::INFINITY,
    }
}

/// Solves `A x = b` by Gaussian elimination with partial pivoting.
pub fn solve(mut a: Vec<Vec<CFloat>>, mut b: Vec<CFloat>) -> Option<Vec<CFloat>> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].log2_abs().partial_cmp(&a[j][col].log2_abs()).unwrap_or(core::cmp::Ordering::Equal))?;
        if a[piv][col].is_zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for row in col + 1..n {
            let f = a[row][col].div(&a[col][col])?;
            for k in col..n {
                let t = f.times(&a[col][k]);
                a[row][k] = a[row][k].minus(&t);
            }
            let t = f.times(&b[col]);
            b[row] = b[row].minus(&t);
        }
    }
    let mut x = vec![CFloat::zero(b[0].prec); n];
    for row in (0..n).rev() {
        let mut s = b[row].clone();
        for k in row + 1..n {
            s = s.minus(&a[row][k].times(&x[k]));
        }
        x[row] = s.div(&a[row][row])?;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};

    #[test]
    fn field_operations() {
        let p = 100;
        let a = CFloat::from_rational(&rat(1, 3), p);
        let three = a.int_like(3);
        let one = a.times(&three);
        assert!((one.re_f64() - 1.0).abs() < 1e-25);
        let q = one.div(&three).unwrap();
        assert!((q.re_f64() - 1.0 / 3.0).abs() < 1e-15);
        let i = CFloat { re: BigInt::default(), im: BigInt::from(1) << p, prec: p };
        let m = i.times(&i);
        assert!((m.re_f64() + 1.0).abs() < 1e-25);
    }

    #[test]
    fn roots_of_quadratic_and_cyclotomic() {
        // x^2 - 2
        let z = complex_roots(&[int(-2), int(0), int(1)], 200).unwrap();
        let mut re: Vec<f64> = z.iter().map(|c| c.re_f64()).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + core::f64::consts::SQRT_2).abs() < 1e-14);
        assert!((re[1] - core::f64::consts::SQRT_2).abs() < 1e-14);
        // x^4 + 1
        let z = complex_roots(&[int(1), int(0), int(0), int(0), int(1)], 200).unwrap();
        for c in &z {
            assert!((c.abs_f64() - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn linear_solve() {
        let p = 128;
        let c = |x: i64| CFloat::from_rational(&int(x), p);
        let a = vec![vec![c(2), c(1)], vec![c(1), c(3)]];
        let x = solve(a, vec![c(5), c(10)]).unwrap();
        assert!((x[0].re_f64() - 1.0).abs() < 1e-20);
        assert!((x[1].re_f64() - 3.0).abs() < 1e-20);
    }
}
