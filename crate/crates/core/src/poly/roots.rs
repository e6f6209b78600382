use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::Signed;

use super::UPoly;
use crate::arith::Rational;
use crate::error::Result;
use crate::numeric;
use crate::ring::{Ring, RingOps};

/// Rational roots with multiplicities, sorted increasingly.
///
/// A rational root `u/v` of a primitive integer polynomial with leading
/// coefficient `L` has `v | L`, so `L·r` is an integer. Each complex root is
/// rounded to a candidate `k/L`, and candidates are kept only if they vanish
/// exactly.
pub fn rational_roots(p: &UPoly<Rational>, prec: u32) -> Result<Vec<(Rational, usize)>> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let z = p.low_order();
    if z > 0 {
        out.push((Rational::zero(), z));
    }
    let q = UPoly::new(p.coeffs()[z..].to_vec());
    if q.is_constant() {
        return Ok(out);
    }
    let sf = q.squarefree_part()?.to_primitive_int();
    let lead = sf.lead().expect("nonconstant").abs();
    let mut cands: Vec<Rational> = Vec::new();
    if sf.degree() == Some(1) {
        cands.push(Rational::new(-sf.coeff(0), sf.coeff(1)));
    } else {
        let coeffs: Vec<Rational> = sf.coeffs().iter().map(|c| Rational::from_integer(c.clone())).collect();
        // Enough bits to separate candidates `k/L` after scaling by `L`.
        let bits = prec.max(64 + lead.bits() as u32 * 2);
        for r in numeric::complex_roots(&coeffs, bits)? {
            let scaled = &r.re * &lead;
            let half = BigInt::from(1) << (bits - 1);
            let k = (scaled + half) >> bits;
            for dk in [0i64, -1, 1] {
                let c = Rational::new(&k + dk, lead.clone());
                if !cands.contains(&c) && vanishes(&sf, &c) {
                    cands.push(c);
                }
            }
        }
    }
    for c in cands {
        let m = q.root_multiplicity(&c)?;
        if m > 0 {
            out.push((c, m));
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// Exact test `p(u/v) = 0` in integer arithmetic.
fn vanishes(p: &UPoly<BigInt>, r: &Rational) -> bool {
    let (u, v) = (r.numer(), r.denom());
    let n = p.coeffs().len();
    let mut acc = BigInt::zero();
    let mut vpow = BigInt::one();
    // Horner on the homogenized form sum c_i u^i v^(n-1-i).
    let mut terms = Vec::with_capacity(n);
    for _ in 0..n {
        terms.push(vpow.clone());
        vpow *= v;
    }
    for (i, c) in p.coeffs().iter().enumerate().rev() {
        acc = acc * u + c * &terms[n - 1 - i];
    }
    acc.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, rat};
    use alloc::vec;

    #[test]
    fn small_cases() {
        let p: UPoly<Rational> = UPoly::from_ints(&[0, -1, 1]);
        assert_eq!(rational_roots(&p, 128).unwrap(), vec![(int(0), 1), (int(1), 1)]);
        let p: UPoly<Rational> = UPoly::from_ints(&[-1, 3]);
        assert_eq!(rational_roots(&p, 128).unwrap(), vec![(rat(1, 3), 1)]);
        let p: UPoly<Rational> = UPoly::from_ints(&[2, 0, 1]);
        assert!(rational_roots(&p, 128).unwrap().is_empty());
    }

    #[test]
    fn multiplicities_and_denominators() {
        // (16x + 9)^2 (128x - 3)(x^2 + 1)
        let a: UPoly<Rational> = UPoly::from_ints(&[9, 16]);
        let b: UPoly<Rational> = UPoly::from_ints(&[-3, 128]);
        let c: UPoly<Rational> = UPoly::from_ints(&[1, 0, 1]);
        let p = a.mul(&a).mul(&b).mul(&c);
        assert_eq!(rational_roots(&p, 200).unwrap(), vec![(rat(-9, 16), 2), (rat(3, 128), 1)]);
    }
}
