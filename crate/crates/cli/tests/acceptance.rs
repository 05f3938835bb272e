//! Acceptance suite: every criterion runs at its stated tolerance and prints
//! one pass/fail line. Time budgets are asserted in optimized builds and
//! sanity-capped at 20x in debug builds (exactness is asserted everywhere
//! unconditionally).

use shadowcert_cli::report::Status;
use shadowcert_core::certify::{
    default_prime_pool, is_nontorsion, verify_torsion_certificate, TorsionVerdict,
};
use shadowcert_core::divisors::{class_eval, divisor_of_function, verify_class_equal, CurveFunction, DivEntry, FormalDivisor};
use shadowcert_core::elliptic::cubic::{build_e_s3, proj_eq};
use shadowcert_core::elliptic::ffcurve::FfCurve;
use shadowcert_core::elliptic::quartic::{build_et, h_coeffs};
use shadowcert_core::elliptic::weier::WPoint;
use shadowcert_core::elliptic::Elliptic;
use shadowcert_core::exactalg::cyc::CycNum;
use shadowcert_core::exactalg::fq::FqContext;
use shadowcert_core::exactalg::mpoly::vars;
use shadowcert_core::exactalg::poly::Poly;
use shadowcert_core::exactalg::{rat, rat_int, rational_cube_root, Rat};
use shadowcert_core::fixtures::parse_poly;
use shadowcert_core::shadow::{random_cover, Classification, Label};
use std::time::Instant;

struct Budget {
    name: &'static str,
    limit_ms: u128,
    start: Instant,
}

impl Budget {
    fn new(name: &'static str, limit_ms: u128) -> Self {
        Budget { name, limit_ms, start: Instant::now() }
    }
    fn done(self) {
        let elapsed = self.start.elapsed().as_millis();
        println!("criterion {}: PASS ({} ms, budget {} ms)", self.name, elapsed, self.limit_ms);
        if cfg!(debug_assertions) {
            assert!(
                elapsed <= self.limit_ms * 20,
                "{} exceeded even the 20x debug allowance: {} ms",
                self.name,
                elapsed
            );
        } else {
            assert!(
                elapsed <= self.limit_ms,
                "{} exceeded its budget: {} ms > {} ms",
                self.name,
                elapsed,
                self.limit_ms
            );
        }
    }
}

fn entry_status(report: &shadowcert_cli::report::Report, name: &str) -> Status {
    report
        .entries
        .iter()
        .find(|e| e.name == name)
        .unwrap_or_else(|| panic!("missing report entry {name}"))
        .status
}

/// 1. Shadow special cases: exactly zero for etale covers, genus-0 targets
/// (pullback-class), genus-1 Galois targets; the pushforward closed form
/// d((2g'-2) phi_* R - deg(R) K') matches the term-by-term derivation on 100
/// randomized symbolic covers.
#[test]
fn criterion_1_shadow_special_cases() {
    let b = Budget::new("1 (shadow special cases)", 1_000);
    for seed in 0..100u64 {
        let c = random_cover(seed, seed % 2 == 0);
        let s = c.shadow().expect("shadow computes");
        if c.ram.is_zero() {
            assert!(s.divisor.is_zero(), "etale shadow vanishes (seed {seed})");
            if c.genus_tgt != 0 {
                assert_eq!(s.classification, Classification::IdenticallyZero);
            }
        }
        if c.genus_tgt == 0 {
            assert_eq!(s.classification, Classification::PullbackClass, "seed {seed}");
        }
        if c.genus_tgt == 1 && c.galois {
            assert!(s.divisor.is_zero(), "genus-1 Galois shadow vanishes (seed {seed})");
        }
        // shadow_pushforward asserts closed form == term-by-term internally
        let pf = c.shadow_pushforward().expect("pushforward computes");
        if c.genus_tgt == 1 {
            // d((2g'-2) phi_*(R) - deg R K') has no point part when 2g'-2 = 0
            assert!(
                pf.terms.keys().all(|l| matches!(l, Label::K(_))),
                "genus-1 pushforward is a multiple of the trivial class (seed {seed})"
            );
        }
    }
    b.done();
}

/// 2. Galois identity d(2g'-2)R - deg(R) phi^*K' = (2g-2)R - deg(R)K under
/// the Riemann-Hurwitz substitution, on 100 randomized Galois fixtures.
#[test]
fn criterion_2_galois_identity() {
    let b = Budget::new("2 (Galois identity)", 1_000);
    for seed in 0..100u64 {
        let c = random_cover(seed.wrapping_add(777), true);
        assert!(
            c.galois_identity_check().expect("check runs").is_none(),
            "Galois identity holds (seed {seed})"
        );
    }
    b.done();
}

/// 3. The one-parameter family at t = 7/9: symbolic on-curve identities for
/// the section base points, both displayed divisor equivalences as class
/// equalities at t in {7/9, 3, 5/7}, the h-roots identity in c, and the
/// nontorsion + Galois-involution independence certificates.
#[test]
fn criterion_3_d12_family() {
    let b = Budget::new("3 (D12 family at 7/9)", 60_000);
    let t = rat(7, 9);
    let report = shadowcert_cli::d12::run_d12(&t, &[], 20, false, None, None).expect("runs");
    for entry in [
        "sections-on-curve-symbolic",
        "two-torsion-roots",
        "class-identity-D1",
        "class-identity-D2",
        "display-one-class-equality",
        "display-two-class-equality",
        "nontorsion-D1",
        "nontorsion-D2",
        "independence-D1-D2",
    ] {
        assert_eq!(entry_status(&report, entry), Status::Pass, "{entry}");
    }
    // the displayed equivalences again at t = 3 and t = 5/7
    for tv in [rat_int(3), rat(5, 7)] {
        let tc = CycNum::from_rat(tv.clone());
        let e = Elliptic::from_quartic(build_et(&tc).unwrap()).unwrap();
        let hints = two_torsion_hints(&tv);
        let fvars = vars(&["v", "z"]);
        let cf = |num: &str, den: &str| CurveFunction {
            num: parse_poly(num, &fvars).unwrap(),
            den: parse_poly(den, &fvars).unwrap(),
        };
        // display one
        let computed = divisor_of_function(&e, &cf("(v + 2)^4", "(v - 2)^2"), &hints).unwrap();
        let z4 = CycNum::zeta4();
        let mut listed = FormalDivisor::new();
        listed.add_point(e.point_from_quartic(&CycNum::from_int(-2), &z4.scale(&rat_int(4))).unwrap(), 4);
        listed.add_point(e.point_from_quartic(&CycNum::from_int(-2), &z4.scale(&rat_int(-4))).unwrap(), 4);
        listed.add_point(e.infinity(), -8);
        assert!(verify_class_equal(&e, &computed, &listed).unwrap(), "display 1 at t = {tv}");
        // display two
        let computed2 = divisor_of_function(&e, &cf("z^2", "(v - 2)^3"), &hints).unwrap();
        let mut listed2 = FormalDivisor::new();
        if hints.is_empty() {
            let h = Poly::new("v", h_coeffs(&tc).to_vec()).monic();
            listed2.push(DivEntry::WeierstrassCluster(h), 2);
        } else {
            for v in &hints {
                listed2.add_point(e.point_from_quartic(v, &CycNum::zero()).unwrap(), 2);
            }
        }
        listed2.add_point(e.infinity(), -6);
        assert!(verify_class_equal(&e, &computed2, &listed2).unwrap(), "display 2 at t = {tv}");
    }
    b.done();
}

fn two_torsion_hints(t: &Rat) -> Vec<CycNum> {
    let one = rat_int(1);
    let val = (&one + t) / (&one - t);
    match rational_cube_root(&val) {
        None => vec![],
        Some(c) => {
            let cc = CycNum::from_rat(c);
            let z3 = CycNum::zeta3();
            (0..3)
                .map(|i| {
                    z3.pow(i).unwrap().mul(&cc).add(&z3.pow(-i).unwrap().mul(&cc.inv().unwrap()))
                })
                .collect()
        }
    }
}

/// 4. The remark value: replacing the moved point by the identity makes the
/// pushforward class-trivial.
#[test]
fn criterion_4_remark_pushforward_zero() {
    let b = Budget::new("4 (remark pushforward = 0)", 5_000);
    let t = CycNum::from_rat(rat(7, 9));
    let e = Elliptic::from_quartic(build_et(&t).unwrap()).unwrap();
    let hints = two_torsion_hints(&rat(7, 9));
    let z4 = CycNum::zeta4();
    // 20 (identity) - 4(-2, 4z4) - 4(-2, -4z4) - 4 sum_i (v_i, 0) - 8 K with
    // K trivial: evaluates to the identity
    let mut d = FormalDivisor::new();
    d.add_point(e.infinity(), 20);
    d.add_point(e.point_from_quartic(&CycNum::from_int(-2), &z4.scale(&rat_int(4))).unwrap(), -4);
    d.add_point(e.point_from_quartic(&CycNum::from_int(-2), &z4.scale(&rat_int(-4))).unwrap(), -4);
    for v in &hints {
        d.add_point(e.point_from_quartic(v, &CycNum::zero()).unwrap(), -4);
    }
    assert_eq!(d.degree(), 0);
    let value = class_eval(&e, &d).unwrap();
    assert!(value.w.is_infinity(), "(pi_E)_* psi_*(D_phi) = 0");
    b.done();
}

/// 5. The two-parameter family at (u, w) = (2, 1): recomputed quotient
/// images match the listed points except the flagged sign entry; the sum and
/// difference of the two sections are nontorsion (hence independence); the
/// order-3 quotient section is nontorsion; the two fibrations carry a
/// non-isogeny certificate with an explicit witness prime.
#[test]
fn criterion_5_s3_family() {
    let b = Budget::new("5 (S3 family at (2,1))", 120_000);
    let report =
        shadowcert_cli::s3::run_s3(&rat_int(2), &rat_int(1), &[], 20, false, None).expect("runs");
    for entry in [
        "fiber-smooth",
        "sections-on-curve-symbolic",
        "quotient-images-recomputed",
        "independence-P1-P2",
        "nontorsion-Ptau",
        "nonisogeny-E-Eprime",
    ] {
        assert_eq!(entry_status(&report, entry), Status::Pass, "{entry}");
    }
    assert_eq!(entry_status(&report, "listed-value-discrepancy"), Status::Note);
    let disc = report
        .entries
        .iter()
        .find(|e| e.name == "listed-value-discrepancy")
        .unwrap();
    assert!(disc.detail.contains("NOT on"), "listed point is off the fiber");
    let iso = report.entries.iter().find(|e| e.name == "nonisogeny-E-Eprime").unwrap();
    assert!(iso.detail.contains("witness prime"), "explicit witness recorded");
    b.done();
}

/// 6. The exclusion computation: closed forms, the vanishing identity, the
/// nondegeneracy constraints, UNVERIFIED-NO-LIST without a file, and the
/// negative control detecting the relation inside a supplied list.
#[test]
fn criterion_6_exclusion_computation() {
    let b = Budget::new("6 (exclusion computation)", 10_000);
    use shadowcert_core::certify::stoll::{stoll_check, ExclusionVerdict};
    let r = stoll_check(None);
    assert!(r.identities_hold(), "closed forms, vanishing, constraints");
    assert_eq!(r.exclusion, ExclusionVerdict::UnverifiedNoList);
    // negative control: the relation itself in the list is detected
    let f_line = "2*a^3*b - a^3 - 12*a^2*b^2 + 9*a^2*b + 18*a*b^3 - 15*a*b^2 - 9*b^3 + 8*b^2";
    let r2 = stoll_check(Some(f_line));
    assert!(matches!(r2.exclusion, ExclusionVerdict::Fails { line: 1 }));
    assert!(r2.entries[0].scalar_multiple_of_f);
    // an innocuous list excludes
    let r3 = stoll_check(Some("a^4 + b^4 + 1\n"));
    assert_eq!(r3.exclusion, ExclusionVerdict::Excluded);
    b.done();
}

/// 7. Group-law property suite: associativity, commutativity, identity, and
/// inverse on 500 randomized finite-field triples and 50 exact triples;
/// scalar-multiple additivity; model transport as a group isomorphism
/// (collinearity on the cubic, fiber-pair cancellation on the quartic, and
/// round trips); Galois equivariance.
#[test]
fn criterion_7_group_law_suite() {
    let b = Budget::new("7 (group-law property suite)", 60_000);
    // finite-field triples on the reduced fiber models
    let t = CycNum::from_rat(rat(7, 9));
    let et = Elliptic::from_quartic(build_et(&t).unwrap()).unwrap();
    let mut ff_done = 0;
    for p in [73u64, 97, 193, 241] {
        let ctx = FqContext::new(p).unwrap();
        let c = et.reduce(&ctx).unwrap();
        let pts = c.sample_points(40);
        let m = &c.model;
        'triples: for i in 0..pts.len() {
            for j in i..pts.len() {
                for k in j..pts.len() {
                    if ff_done >= 125 * 4 {
                        break 'triples;
                    }
                    let (a, bq, cq) = (&pts[i], &pts[j], &pts[k]);
                    assert_eq!(m.add(&m.add(a, bq), cq), m.add(a, &m.add(bq, cq)));
                    assert_eq!(m.add(a, bq), m.add(bq, a));
                    assert_eq!(m.add(a, &WPoint::Infinity), a.clone());
                    assert!(m.add(a, &m.neg(a)).is_infinity());
                    ff_done += 1;
                }
            }
        }
    }
    assert!(ff_done >= 500, "at least 500 finite-field triples: {ff_done}");

    // exact triples from small combinations of the section points
    let z4 = CycNum::zeta4();
    let z3 = CycNum::zeta3();
    let p1 = et
        .point_from_quartic(
            &CycNum::from_int(-1),
            &t.mul(&z3.scale(&rat_int(2)).add(&CycNum::one())).scale(&rat_int(2)),
        )
        .unwrap();
    let p2 = et.point_from_quartic(&CycNum::one(), &z4.scale(&rat_int(-2))).unwrap();
    let ka = et.point_from_quartic(&CycNum::from_int(-2), &z4.scale(&rat_int(4))).unwrap();
    let mut exact_done = 0;
    let gens = [p1.clone(), p2.clone(), ka.clone()];
    for i in 0..3usize {
        for j in 0..3 {
            for (m1, m2) in [(1i64, 1i64), (2, 1), (1, -2), (3, 2), (2, -3), (-1, 2)] {
                if exact_done >= 50 {
                    break;
                }
                let a = et.smul(m1, &gens[i]).unwrap();
                let bq = et.smul(m2, &gens[j]).unwrap();
                let cq = et.add(&gens[(i + j) % 3], &gens[i]).unwrap();
                let lhs = et.add(&et.add(&a, &bq).unwrap(), &cq).unwrap();
                let rhs = et.add(&a, &et.add(&bq, &cq).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "exact associativity");
                assert_eq!(et.add(&a, &bq).unwrap(), et.add(&bq, &a).unwrap());
                assert_eq!(et.add(&a, &et.infinity()).unwrap(), a);
                assert!(et.add(&a, &et.neg(&a).unwrap()).unwrap().w.is_infinity());
                exact_done += 1;
            }
        }
    }
    assert!(exact_done >= 50, "50 exact triples: {exact_done}");

    // smul additivity
    for (m, n) in [(2i64, 3i64), (5, -2), (7, 4), (-3, -4)] {
        let lhs = et.smul(m + n, &p1).unwrap();
        let rhs = et.add(&et.smul(m, &p1).unwrap(), &et.smul(n, &p1).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "smul({m} + {n})");
    }

    // model transport: fiber pairs (v, z) + (v, -z) cancel, and the
    // quartic <-> Weierstrass round trip is the identity on reduced samples
    let pair_a = et.point_from_quartic(&CycNum::from_int(-2), &z4.scale(&rat_int(4))).unwrap();
    let pair_b = et.point_from_quartic(&CycNum::from_int(-2), &z4.scale(&rat_int(-4))).unwrap();
    assert!(et.add(&pair_a, &pair_b).unwrap().w.is_infinity(), "fiber pair sums to the identity");
    {
        use shadowcert_core::elliptic::SourceModel;
        let (qm, map) = match et.source() {
            SourceModel::Quartic { model, map } => (model.clone(), map.clone()),
            _ => unreachable!(),
        };
        let ctx = FqContext::new(73).unwrap();
        let c = et.reduce(&ctx).unwrap();
        let wmodel = c.model.clone();
        // reduce the map data and round-trip 20 sampled points
        let e_red = shadowcert_core::elliptic::ffcurve::FfElem {
            ctx: ctx.clone(),
            v: ctx.reduce_cyc(&qm.e).unwrap(),
        };
        let d1_red = shadowcert_core::elliptic::ffcurve::FfElem {
            ctx: ctx.clone(),
            v: ctx.reduce_cyc(&map.d1).unwrap(),
        };
        let q4_red = shadowcert_core::elliptic::ffcurve::FfElem {
            ctx: ctx.clone(),
            v: ctx.reduce_cyc(&qm.q[4]).unwrap(),
        };
        let map_red = shadowcert_core::elliptic::quartic::QuarticMap {
            e: e_red,
            d1: d1_red,
            q4: q4_red,
        };
        let mut count = 0;
        for pt in c.sample_points(24) {
            if let Some((v, z)) = map_red.backward(&pt) {
                let back = map_red.forward(&v, &z);
                assert_eq!(back, pt, "round trip mod 73");
                count += 1;
            }
            let _ = &wmodel;
        }
        assert!(count >= 20, "20 round-trip samples: {count}");
    }

    // model transport on the pointed cubic: collinear triples evaluate to a
    // line-independent constant on the Weierstrass side
    {
        let (cubic, wm, map) = build_e_s3(
            &CycNum::from_int(2),
            &CycNum::one(),
            &[[z3.sub(&z3.mul(&z3)), CycNum::from_int(-1), CycNum::one()]],
        )
        .unwrap();
        let a = [z3.sub(&z3.mul(&z3)), CycNum::from_int(-1), CycNum::one()];
        let apr = [z3.scale(&rat_int(-2)), CycNum::zero(), CycNum::one()];
        let third = |p: &[CycNum; 3], q: &[CycNum; 3]| -> [CycNum; 3] {
            // restrict f to the line p + s q; roots at s = 0 and s = infinity
            let fvars = cubic.f.vars.clone();
            let mut coeffs = vec![CycNum::zero(); 4];
            // evaluate f(p + s q) by expanding at four sample s values and
            // interpolating the cubic polynomial in s
            let samples = [0i64, 1, -1, 2];
            let mut vals = vec![];
            for &s in &samples {
                let sc = CycNum::from_int(s);
                let pt: [CycNum; 3] =
                    std::array::from_fn(|i| p[i].add(&sc.mul(&q[i])));
                vals.push(cubic.f.eval(&pt));
            }
            // cubic interpolation through s = 0, 1, -1, 2
            let c0 = vals[0].clone();
            let s1 = vals[1].sub(&c0);
            let sm = vals[2].sub(&c0);
            let s2 = vals[3].sub(&c0);
            let half = CycNum::from_rat(rat(1, 2));
            let c2 = s1.add(&sm).mul(&half);
            let t1 = s1.sub(&c2);
            let t2 = s2.sub(&c2.scale(&rat_int(4)));
            let sixth = CycNum::from_rat(rat(1, 6));
            let c3 = t2.sub(&t1.scale(&rat_int(2))).mul(&sixth);
            let c1 = t1.sub(&c3);
            coeffs[0] = c0;
            coeffs[1] = c1;
            coeffs[2] = c2;
            coeffs[3] = c3;
            assert!(coeffs[0].is_zero() && coeffs[3].is_zero(), "p, q on the curve");
            // remaining root: c1 s + c2 s^2 = 0 -> s = -c1/c2
            let s = coeffs[1].neg().mul(&coeffs[2].inv().unwrap());
            let _ = fvars;
            std::array::from_fn(|i| p[i].add(&s.mul(&q[i])))
        };
        let mut line_values = vec![];
        let pairs = [(&a, &apr)];
        for (p, q) in pairs {
            let r = third(p, q);
            assert!(cubic.contains(&r));
            let wp = map.forward(p).unwrap();
            let wq = map.forward(q).unwrap();
            let wr = map.forward(&r).unwrap();
            let total = wm.add(&wm.add(&wp, &wq), &wr);
            line_values.push(total);
        }
        // a second, different line through A and the third point of the first
        let r1 = third(&a, &apr);
        let r2 = third(&a, &r1);
        assert!(cubic.contains(&r2));
        let total2 = wm.add(
            &wm.add(&map.forward(&a).unwrap(), &map.forward(&r1).unwrap()),
            &map.forward(&r2).unwrap(),
        );
        assert_eq!(
            line_values[0], total2,
            "collinear triples have a line-independent Weierstrass sum"
        );
    }

    // Galois equivariance: conj commutes with the group law for
    // conjugations fixing the model
    for j in [5u32, 7, 11, 13, 17, 19, 23] {
        assert!(et.conj_fixes_model(j).unwrap());
        let s = et.add(&p1, &p2).unwrap();
        let lhs = et.conj_point(&s, j).unwrap();
        let rhs = et.add(&et.conj_point(&p1, j).unwrap(), &et.conj_point(&p2, j).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "j = {j}");
    }
    b.done();
}

/// 8. Reduction and counting: reduction is a homomorphism on 20 random pairs
/// per context, the Hasse bound holds on every count (asserted inside
/// count_points), and the reference curve over F_5 counts to 4.
#[test]
fn criterion_8_reduction_and_counting() {
    let b = Budget::new("8 (reduction and counting)", 30_000);
    let ctx5 = FqContext::new_prime_field(5).unwrap();
    let m = shadowcert_core::elliptic::weier::WModel::new(
        CycNum::zero(),
        CycNum::one(),
        CycNum::zero(),
    );
    let c = FfCurve::reduce_model(&m, &ctx5).unwrap();
    assert_eq!(c.count_points(), 4, "y^2 = x^3 + x over F_5");
    assert_eq!(c.trace(), 2);

    let t = CycNum::from_rat(rat(7, 9));
    let et = Elliptic::from_quartic(build_et(&t).unwrap()).unwrap();
    let z4 = CycNum::zeta4();
    let z3 = CycNum::zeta3();
    let p1 = et
        .point_from_quartic(
            &CycNum::from_int(-1),
            &t.mul(&z3.scale(&rat_int(2)).add(&CycNum::one())).scale(&rat_int(2)),
        )
        .unwrap();
    let p2 = et.point_from_quartic(&CycNum::one(), &z4.scale(&rat_int(-2))).unwrap();
    for p in [73u64, 97, 5, 13] {
        let ctx = FqContext::new(p).unwrap();
        let c = et.reduce(&ctx).unwrap();
        let n = c.count_points(); // Hasse asserted inside
        assert!(n > 0);
        // 20 pairs: small multiples of the two sections; multiples whose
        // coordinates meet p are not reducible through this place and skipped
        let mut pairs = 0;
        for k in 1..=40i64 {
            if pairs >= 20 {
                break;
            }
            let a = et.smul(k, &p1).unwrap();
            let bq = et.smul(k % 7 + 1, &p2).unwrap();
            let sum = et.add(&a, &bq).unwrap();
            let (ra, rb, rsum) = match (
                c.try_reduce_point(&a.w),
                c.try_reduce_point(&bq.w),
                c.try_reduce_point(&sum.w),
            ) {
                (Some(x), Some(y), Some(z)) => (x, y, z),
                _ => continue,
            };
            assert_eq!(c.model.add(&ra, &rb), rsum, "p = {p}, k = {k}");
            pairs += 1;
        }
        assert!(pairs >= 20, "20 reduction pairs at p = {p}: {pairs}");
    }
    b.done();
}

/// 9. Certificate soundness: constructed torsion points are classified as
/// torsion with the correct order, and every certificate re-verifies through
/// the re-check entry points.
#[test]
fn criterion_9_certificate_soundness() {
    let b = Budget::new("9 (certificate soundness)", 60_000);
    // 21 two-torsion points across seven fibers with rational Kummer c
    let cs = [rat_int(2), rat_int(3), rat(1, 2), rat_int(4), rat(2, 3), rat_int(5), rat(3, 2)];
    let mut classified = 0;
    for cval in &cs {
        let c3 = cval * cval * cval;
        let one = rat_int(1);
        let t = (&c3 - &one) / (&c3 + &one);
        let tc = CycNum::from_rat(t.clone());
        let et = Elliptic::from_quartic(build_et(&tc).unwrap()).unwrap();
        let cc = CycNum::from_rat(cval.clone());
        let z3 = CycNum::zeta3();
        for i in 0..3i64 {
            let v = z3.pow(i).unwrap().mul(&cc).add(&z3.pow(-i).unwrap().mul(&cc.inv().unwrap()));
            let pt = et.point_from_quartic(&v, &CycNum::zero()).unwrap();
            let cert = is_nontorsion(&et, &pt, &default_prime_pool()).unwrap();
            assert_eq!(
                cert.verdict,
                TorsionVerdict::Torsion { order: 2 },
                "(v_{i}, 0) at c = {cval} has order 2"
            );
            assert!(verify_torsion_certificate(&et, &pt, &cert).unwrap(), "re-verifies");
            classified += 1;
        }
    }
    assert!(classified >= 20, "at least 20 constructed torsion points: {classified}");
    // the identity classifies with order 1
    let t = CycNum::from_rat(rat(7, 9));
    let et = Elliptic::from_quartic(build_et(&t).unwrap()).unwrap();
    let c0 = is_nontorsion(&et, &et.infinity(), &[73, 97]).unwrap();
    assert_eq!(c0.verdict, TorsionVerdict::Torsion { order: 1 });
    // nontorsion certificates also re-verify (checked again through the
    // re-check entry point on a fresh certificate)
    let z4 = CycNum::zeta4();
    let p2 = et.point_from_quartic(&CycNum::one(), &z4.scale(&rat_int(-2))).unwrap();
    let d2 = et.smul(20, &p2).unwrap();
    let cert = is_nontorsion(&et, &d2, &default_prime_pool()).unwrap();
    assert!(matches!(cert.verdict, TorsionVerdict::Nontorsion));
    assert!(verify_torsion_certificate(&et, &d2, &cert).unwrap());
    // independence and non-isogeny certificates re-verify through their
    // entry points as well
    use shadowcert_core::certify::{
        independence_galois, nonisogeny_geometric, verify_independence_certificate,
        verify_nonisogeny_certificate,
    };
    let z3b = CycNum::zeta3();
    let p1 = et
        .point_from_quartic(
            &CycNum::from_int(-1),
            &t.mul(&z3b.scale(&rat_int(2)).add(&CycNum::one())).scale(&rat_int(2)),
        )
        .unwrap();
    let d1 = et.smul(20, &p1).unwrap();
    let ic = independence_galois(&et, &d1, &d2, 5, &default_prime_pool(), 20).unwrap();
    assert!(verify_independence_certificate(&et, &d1, &d2, &ic).unwrap());
    // non-isogeny between the two fibrations at (2, 1), re-verified from
    // raw counts through its entry point
    let (_, wm_e, _) = build_e_s3(&CycNum::from_int(2), &CycNum::one(), &[]).unwrap();
    let (_, wm_ep, _) = shadowcert_core::elliptic::cubic::build_eprime_s3(
        &CycNum::from_int(2),
        &CycNum::one(),
        &[],
    )
    .unwrap();
    let e1 = Elliptic::from_weierstrass(wm_e).unwrap();
    let e2 = Elliptic::from_weierstrass(wm_ep).unwrap();
    let scan: Vec<u64> = (5..100).collect();
    let nc = nonisogeny_geometric(&e1, &e2, &scan).unwrap();
    assert_eq!(nc.witness_prime, 5);
    assert!(verify_nonisogeny_certificate(&e1, &e2, &nc).unwrap());
    b.done();
}

/// The proj_eq helper and the flagged point, pinned at the library level so
/// the acceptance suite fails loudly if the recomputation ever drifts.
#[test]
fn flagged_point_is_recomputed_not_listed() {
    let z3 = CycNum::zeta3();
    let listed = [z3.scale(&rat_int(-2)), CycNum::zero(), CycNum::from_int(-1)];
    let recomputed = [z3.scale(&rat_int(-2)), CycNum::zero(), CycNum::one()];
    assert!(!proj_eq(&listed, &recomputed));
}
