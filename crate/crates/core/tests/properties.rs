use legtors_core::arith::{hbar, log_height, rat, rho, v2, Rational, Residue};
use legtors_core::divpoly::{lattes, legendre_psi, legendre_psi_eval, Projective};
use legtors_core::screen::s_set;
use legtors_core::torsion::{grouplaw_order_oracle, order_bounded, order_modp, TorsionResult};
use legtors_core::tset::{t_set_bounded, TsetOptions};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;

const SMALL_PRIMES: [u64; 23] = [5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97];

fn rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..40).prop_map(|(n, d)| rat(n, d))
}

fn parameter() -> impl Strategy<Value = Rational> {
    rational().prop_filter("avoid 0 and 1", |x| !x.is_zero() && !x.is_one())
}

fn in_special_fiber(lambda: &Rational, alpha: &Rational) -> bool {
    match lattes(lambda, alpha).unwrap() {
        Projective::Infinity => true,
        Projective::Finite(v) => v.is_zero() || v.is_one() || &v == lambda,
    }
}

fn same_up_to_two(a: TorsionResult, b: TorsionResult) -> bool {
    match (a.order(), b.order()) {
        (Some(x), Some(y)) => x == y || x == 2 * y || y == 2 * x,
        _ => false,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn grouplaw_agrees_with_division_polynomials(pi in 0usize..SMALL_PRIMES.len(), l in 2u64..97, a in 0u64..97) {
        let p = SMALL_PRIMES[pi];
        let (l, a) = (l % p, a % p);
        prop_assume!(l > 1);
        let via_psi = order_modp(&Rational::from_integer(l.into()), &Rational::from_integer(a.into()), p).unwrap();
        prop_assert_eq!(grouplaw_order_oracle(p, l, a).unwrap(), via_psi);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn lattes_fiber(alpha in parameter(), lambdas in proptest::collection::vec(parameter(), 50)) {
        let two = rat(2, 1);
        let mut special = vec![alpha.clone(), &alpha * &alpha, &alpha * (&two - &alpha)];
        if alpha != rat(1, 2) {
            special.push(&alpha * &alpha / (&two * &alpha - Rational::one()));
        }
        special.retain(|l| !l.is_zero() && !l.is_one());
        for l in &special {
            prop_assert!(in_special_fiber(l, &alpha), "λ = {l}");
        }
        for l in &lambdas {
            prop_assert_eq!(in_special_fiber(l, &alpha), special.contains(l), "λ = {}", l);
        }
        for l in s_set(&alpha) {
            prop_assert!(special.contains(&l));
        }
    }

    #[test]
    fn s3_equivariance(alpha in parameter(), random in parameter(), pick in 0usize..4) {
        let mut candidates = s_set(&alpha);
        candidates.push(random);
        let lambda = candidates[pick % candidates.len()].clone();
        prop_assume!(!lambda.is_zero() && !lambda.is_one());
        let n = 8;
        let base = order_bounded(&lambda, &alpha, n).unwrap();
        let one = Rational::one();
        let flipped = order_bounded(&(&one - &lambda), &(&one - &alpha), 2 * n).unwrap();
        let inverted = order_bounded(&lambda.recip(), &alpha.recip(), 2 * n).unwrap();
        if base.order().is_some() {
            prop_assert!(same_up_to_two(base, flipped));
            prop_assert!(same_up_to_two(base, inverted));
        }
        if flipped.order().is_none() || inverted.order().is_none() {
            prop_assert!(base.order().is_none());
        }
    }

    #[test]
    fn valuation_rules(x in parameter(), y in parameter()) {
        let (vx, vy) = (v2(&x).finite().unwrap(), v2(&y).finite().unwrap());
        prop_assert_eq!(v2(&(&x * &y)).finite(), Some(vx + vy));
        if let Some(vs) = v2(&(&x + &y)).finite() {
            prop_assert!(vs >= vx.min(vy));
            if vx != vy {
                prop_assert_eq!(vs, vx.min(vy));
            }
        }
        prop_assert_eq!(rho(&x), rho(&(&x + rat(2, 1))));
        let swapped = match rho(&x) {
            Residue::Zero => Residue::Infinity,
            Residue::Infinity => Residue::Zero,
            Residue::One => Residue::One,
        };
        prop_assert_eq!(rho(&x.recip()), swapped);
    }

    #[test]
    fn psi_evaluation_matches_symbolic(n in 3u64..11, l in -20i64..20, x in -20i64..20) {
        let psi = legendre_psi(n).unwrap();
        let (lb, xb) = (BigInt::from(l), BigInt::from(x));
        prop_assert_eq!(psi.eval2(&lb, &xb), legendre_psi_eval(n, &lb, &xb).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn height_inequalities(x in parameter()) {
        let h = log_height(&x);
        let hb = hbar(&x).unwrap();
        let ln2 = core::f64::consts::LN_2;
        prop_assert!(hb - 2.0 * ln2 / 3.0 <= h + 1e-12);
        prop_assert!(h <= hb + ln2 / 3.0 + 1e-12);
        let one = Rational::one();
        prop_assert!((hbar(&(&one - &x)).unwrap() - hb).abs() < 1e-12);
        prop_assert!((hbar(&x.recip()).unwrap() - hb).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn t_set_gamma_invariance(alpha in parameter(), beta in parameter()) {
        prop_assume!(alpha != beta);
        let opts = TsetOptions::default();
        let n = 5;
        let fwd = t_set_bounded(&alpha, &beta, n, &[], &opts).unwrap();
        let back = t_set_bounded(&beta, &alpha, n, &[], &opts).unwrap();
        let mut a: Vec<(Rational, u64, u64)> = fwd.members.iter().map(|m| (m.lambda.clone(), m.order_alpha, m.order_beta)).collect();
        let mut b: Vec<(Rational, u64, u64)> = back.members.iter().map(|m| (m.lambda.clone(), m.order_beta, m.order_alpha)).collect();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        let one = Rational::one();
        let flipped = t_set_bounded(&(&one - &alpha), &(&one - &beta), 2 * n, &[], &opts).unwrap();
        for m in &fwd.members {
            let image = &one - &m.lambda;
            prop_assert!(flipped.members.iter().any(|f| f.lambda == image), "1 - {} missing", m.lambda);
        }
    }
}

#[test]
fn t_set_flip_on_a_nontrivial_pair() {
    let opts = TsetOptions::default();
    let (alpha, beta) = (rat(3, 8), rat(-9, 16));
    let base = t_set_bounded(&alpha, &beta, 8, &[], &opts).unwrap();
    let one = Rational::one();
    let flipped = t_set_bounded(&(&one - &alpha), &(&one - &beta), 16, &[], &opts).unwrap();
    assert!(base.members.len() >= 2);
    for m in &base.members {
        let image = &one - &m.lambda;
        let hit = flipped.members.iter().find(|f| f.lambda == image).expect("image present");
        assert!(hit.order_alpha == m.order_alpha || hit.order_alpha == 2 * m.order_alpha || 2 * hit.order_alpha == m.order_alpha);
    }
}
