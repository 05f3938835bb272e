//! Property suites for the exact-arithmetic layer: field axioms on the
//! cyclotomic field, Galois conjugation as a ring automorphism, reduction as
//! a ring homomorphism, minimal-polynomial facts, and specialization
//! homomorphisms.

use num_traits::One;
use proptest::prelude::*;
use shadowcert_core::exactalg::cyc::CycNum;
use shadowcert_core::exactalg::fq::FqContext;
use shadowcert_core::exactalg::mpoly::{vars, MPoly};
use shadowcert_core::exactalg::poly::Poly;
use shadowcert_core::exactalg::ratfn::RatFn;
use shadowcert_core::exactalg::{rat, Rat};

fn small_rat() -> impl Strategy<Value = Rat> {
    (-9i64..=9, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn cyc() -> impl Strategy<Value = CycNum> {
    proptest::collection::vec(small_rat(), 8).prop_map(|cs| CycNum::from_coeffs(&cs))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms(a in cyc(), b in cyc(), c in cyc()) {
        // associativity and commutativity
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        // distributivity
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        // inverses
        if !a.is_zero() {
            prop_assert_eq!(a.mul(&a.inv().unwrap()), CycNum::one());
        }
        prop_assert!(a.add(&a.neg()).is_zero());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn conjugation_is_a_ring_automorphism(a in cyc(), b in cyc(), j in prop::sample::select(vec![1u32, 5, 7, 11, 13, 17, 19, 23]), j2 in prop::sample::select(vec![5u32, 7, 13])) {
        let ca = a.conj(j).unwrap();
        let cb = b.conj(j).unwrap();
        prop_assert_eq!(a.mul(&b).conj(j).unwrap(), ca.mul(&cb));
        prop_assert_eq!(a.add(&b).conj(j).unwrap(), ca.add(&cb));
        // composition law conj_j . conj_j2 = conj_{j j2 mod 24}
        let lhs = a.conj(j2).unwrap().conj(j).unwrap();
        let rhs = a.conj((j * j2) % 24).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn reduction_is_a_homomorphism(a in cyc(), b in cyc(), p in prop::sample::select(vec![73u64, 97, 193, 5, 7, 13])) {
        let ctx = FqContext::new(p).unwrap();
        let (ra, rb) = match (ctx.reduce_cyc(&a), ctx.reduce_cyc(&b)) {
            (Ok(x), Ok(y)) => (x, y),
            _ => return Ok(()), // p divides a denominator; outside the domain
        };
        prop_assert_eq!(ctx.reduce_cyc(&a.add(&b)).unwrap(), ctx.add(ra, rb));
        prop_assert_eq!(ctx.reduce_cyc(&a.mul(&b)).unwrap(), ctx.mul(ra, rb));
    }

    #[test]
    fn min_poly_vanishes_and_degree_divides_8(a in cyc()) {
        let mp = a.min_poly("x");
        prop_assert!(mp.eval_cyc(&a).is_zero());
        let d = mp.degree().unwrap();
        prop_assert!(d >= 1 && 8 % d == 0);
        prop_assert!(mp.leading().unwrap().is_one());
    }
}

fn small_cyc() -> impl Strategy<Value = CycNum> {
    (-4i64..=4, -4i64..=4).prop_map(|(a, b)| {
        CycNum::from_int(a).add(&CycNum::zeta3().scale(&Rat::from_integer(b.into())))
    })
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (
        proptest::collection::vec(small_cyc(), 1..4),
        proptest::collection::vec(small_cyc(), 1..3),
    )
        .prop_filter_map("nonzero denominator", |(n, d)| {
            let num = Poly::new("c", n);
            let den = Poly::new("c", d);
            if den.is_zero() {
                None
            } else {
                RatFn::new(num, den).ok()
            }
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn specialize_commutes_with_ring_ops(f in ratfn(), g in ratfn(), v in -5i64..=5) {
        let x = CycNum::from_int(v);
        let (fa, ga) = match (f.specialize(&x), g.specialize(&x)) {
            (Ok(a), Ok(b)) => (a, b),
            _ => return Ok(()), // pole: outside the domain
        };
        let sum = f.add(&g);
        let prod = f.mul(&g);
        prop_assert_eq!(sum.specialize(&x).unwrap(), fa.add(&ga));
        prop_assert_eq!(prod.specialize(&x).unwrap(), fa.mul(&ga));
    }

    #[test]
    fn exact_division_roundtrip(ca in proptest::collection::vec(-3i64..=3, 1..5), cb in proptest::collection::vec(-3i64..=3, 1..5)) {
        let vs = vars(&["a", "b"]);
        let mk = |cs: &[i64], var: &str| {
            let mut p = MPoly::zero(&vs);
            for (i, &c) in cs.iter().enumerate() {
                let e = if var == "a" { vec![i as u32, 0] } else { vec![0, i as u32] };
                p = p.add(&MPoly::monomial(&vs, e, CycNum::from_int(c)));
            }
            p
        };
        let f = mk(&ca, "a");
        let g = mk(&cb, "b");
        if f.is_zero() || g.is_zero() {
            return Ok(());
        }
        let prod = f.mul(&g);
        prop_assert_eq!(prod.exact_div(&g).unwrap(), f.clone());
        prop_assert!(shadowcert_core::exactalg::mpoly::bivar_divides(&f, &prod));
    }
}

#[test]
fn zeta_orders_in_reductions() {
    // the reduction of zeta_3 keeps multiplicative order 3 wherever defined
    for p in [73u64, 97, 5, 7, 11, 13] {
        let ctx = FqContext::new(p).unwrap();
        let img = ctx.reduce_cyc(&CycNum::zeta3()).unwrap();
        assert_eq!(ctx.mult_order(img), Some(3), "p = {p}");
        let img24 = ctx.reduce_cyc(&CycNum::zeta24_pow(1)).unwrap();
        assert_eq!(ctx.mult_order(img24), Some(24), "p = {p}");
    }
}
