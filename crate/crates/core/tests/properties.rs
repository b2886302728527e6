mod common;

use cartierlab::covers::{field_trace, KummerCover};
use cartierlab::frobenius::{cartier_apply, compose, decompose, frobenius_q, CartierMap};
use cartierlab::groebner::{GbConfig, Ideal};
use cartierlab::polyring::{parse_polynomial, Polynomial, RationalExponent, Ring, RingRef};
use cartierlab::testideal::{tau_polynomial, PrincipalPair, TauOptions};
use common::{build, raw_poly, RawPoly, PRIMES};
use proptest::prelude::*;

fn ring(p_idx: usize, nvars: usize) -> RingRef {
    let names = ["x", "y", "z"];
    Ring::new(PRIMES[p_idx], &names[..nvars]).unwrap()
}

fn three_polys(nvars: usize, terms: usize, exp: u32) -> impl Strategy<Value = (usize, RawPoly, RawPoly, RawPoly)> {
    (0..4usize, raw_poly(nvars, terms, exp), raw_poly(nvars, terms, exp), raw_poly(nvars, terms, exp))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ring_laws((pi, a, b, c) in three_polys(3, 5, 4)) {
        let r = ring(pi, 3);
        let (a, b, c) = (build(&r, &a), build(&r, &b), build(&r, &c));
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a + &(-&a), Polynomial::zero(&r));
    }

    #[test]
    fn display_parse_round_trip((pi, a, _, _) in three_polys(3, 6, 5)) {
        let r = ring(pi, 3);
        let a = build(&r, &a);
        prop_assert_eq!(parse_polynomial(&a.to_string(), &r).unwrap(), a);
    }

    #[test]
    fn freshmans_dream((pi, a, b, _) in three_polys(2, 3, 3)) {
        let r = ring(pi, 2);
        let (a, b) = (build(&r, &a), build(&r, &b));
        let p = r.p() as u64;
        prop_assert_eq!((&a + &b).pow(p).unwrap(), &a.pow(p).unwrap() + &b.pow(p).unwrap());
        prop_assert_eq!(a.frobenius(p).unwrap(), a.pow(p).unwrap());
    }

    #[test]
    fn cartier_reconstruction_and_linearity((pi, f, g, a) in three_polys(2, 5, 9), e in 1u32..=2) {
        let r = ring(pi, 2);
        let (f, g, a) = (build(&r, &f), build(&r, &g), build(&r, &a));
        let q = frobenius_q(r.p(), e).unwrap();
        prop_assert_eq!(decompose(&f, e).unwrap().reconstruct(&r).unwrap(), f.clone());
        let m = CartierMap::trace(&r, e).unwrap();
        let phi = |x: &Polynomial| cartier_apply(&m, x).unwrap();
        prop_assert_eq!(phi(&(&f + &g)), &phi(&f) + &phi(&g));
        let aq = a.frobenius(q).unwrap();
        prop_assert_eq!(phi(&(&aq * &f)), &a * &phi(&f));
    }

    #[test]
    fn cartier_composition((pi, f, h1, h2) in three_polys(2, 4, 6), e1 in 1u32..=2) {
        let r = ring(pi.min(2), 2);
        let (f, h1, h2) = (build(&r, &f), build(&r, &h1), build(&r, &h2));
        prop_assume!(!h1.is_zero() && !h2.is_zero());
        let first = CartierMap::new(e1, h1).unwrap();
        let then = CartierMap::new(1, h2).unwrap();
        let both = compose(&first, &then).unwrap();
        prop_assert_eq!(both.apply(&f).unwrap(), then.apply(&first.apply(&f).unwrap()).unwrap());
    }

    #[test]
    fn groebner_soundness_and_determinism((pi, a, b, c) in three_polys(3, 3, 3)) {
        let r = ring(pi, 3);
        let gens = vec![build(&r, &a), build(&r, &b), build(&r, &c)];
        let cfg = GbConfig::default();
        let i = Ideal::new(&r, gens.clone()).unwrap();
        for g in &gens {
            prop_assert!(i.contains(g, &cfg).unwrap());
        }
        let mut rev = gens.clone();
        rev.reverse();
        let j = Ideal::new(&r, rev).unwrap();
        prop_assert_eq!(i.canonical_string(&cfg).unwrap(), j.canonical_string(&cfg).unwrap());
        let again = Ideal::new(&r, i.basis(&cfg).unwrap().to_vec()).unwrap();
        prop_assert_eq!(again.basis(&cfg).unwrap(), i.basis(&cfg).unwrap());
        for b in i.basis(&cfg).unwrap() {
            let nf = i.normal_form(&(b * &gens[0]), &cfg).unwrap();
            prop_assert!(nf.is_zero());
        }
        let printed = Ideal::parse(&i.canonical_string(&cfg).unwrap(), &r).unwrap();
        prop_assert!(printed.equals(&i, &cfg).unwrap());
    }

    #[test]
    fn trace_is_base_linear((pi, s, u, rr) in three_polys(1, 4, 5), n in 2u32..=3) {
        let p = [5u64, 7][pi % 2];
        let r = Ring::new(p, &["x"]).unwrap();
        let f = parse_polynomial("x", &r).unwrap();
        let cover = KummerCover::over_polynomial_ring(n, f).unwrap();
        let cr = cover.cover_ring().clone();
        let s = cover.element(&build(&cr, &s)).unwrap();
        let u = cover.element(&build(&cr, &u)).unwrap();
        let rr = build(&r, &rr);
        let tr = |e| field_trace(&cover, e).unwrap();
        let scaled = cover.mul(&cover.base_scalar(&rr), &s).unwrap();
        prop_assert_eq!(tr(&scaled), &rr * &tr(&s));
        let sum = cover.add(&s, &u).unwrap();
        prop_assert_eq!(tr(&sum), &tr(&s) + &tr(&u));
    }
}

fn small_g() -> impl Strategy<Value = &'static str> {
    prop::sample::select(vec!["x", "x^2", "x*y", "x^2+y^3", "x^2*y", "x^3+y^2+x*y", "x^2*y+x*y^2"])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn tau_is_antitone_and_skoda(g in small_g(), pi in 0usize..3, a in 0u64..6, b in 0u64..6, den in 1u64..4) {
        let r = ring(pi + 1, 2);
        let g = parse_polynomial(g, &r).unwrap();
        let opts = TauOptions::default();
        let cfg = &opts.gb;
        let (lo, hi) = (a.min(b), a.max(b));
        let t1 = RationalExponent::new(lo, den).unwrap();
        let t2 = RationalExponent::new(hi, den).unwrap();
        let pair = PrincipalPair::polynomial(g.clone(), t1).unwrap();
        let tau1 = tau_polynomial(&pair, &opts).unwrap().ideal;
        let tau2 = tau_polynomial(&pair.with_t(t2), &opts).unwrap().ideal;
        prop_assert!(tau1.contains_ideal(&tau2, cfg).unwrap());

        let shifted = t1.checked_add(&RationalExponent::integer(1)).unwrap();
        let tau_shift = tau_polynomial(&pair.with_t(shifted), &opts).unwrap().ideal;
        let g_tau = tau1.product(&Ideal::principal(&g)).unwrap();
        prop_assert!(tau_shift.equals(&g_tau, cfg).unwrap());
    }
}
