//! Pointed quartic models z^2 = q(v) with a marked rational root e of q,
//! the D12 family fibers E_t, and the substitution v = e + 1/s that moves
//! the marked root to infinity and produces a Weierstrass model.

use super::weier::{WModel, WPoint};
use super::EllipticError;
use crate::exactalg::coeff::Coeff;
use crate::exactalg::cyc::CycNum;
use crate::exactalg::poly::Poly;
use crate::exactalg::ratfn::RatFn;

#[derive(Clone, Debug, PartialEq)]
pub struct QuarticModel<F: Coeff> {
    /// q0..q4 of q(v), q4 != 0, q squarefree.
    pub q: [F; 5],
    /// marked root: q(e) = 0; the identity point is (e, 0).
    pub e: F,
}

impl<F: Coeff> QuarticModel<F> {
    pub fn new(q: [F; 5], e: F) -> Result<Self, EllipticError> {
        if q[4].is_zero() {
            return Err(EllipticError::DegenerateParameter(
                "leading coefficient of the quartic vanishes".into(),
            ));
        }
        let poly = Poly::new("v", q.to_vec());
        if !poly.eval(&e).is_zero() {
            return Err(EllipticError::MarkedRootNotARoot);
        }
        if !poly.is_squarefree() {
            return Err(EllipticError::SingularModel);
        }
        Ok(QuarticModel { q, e })
    }

    pub fn q_at(&self, v: &F) -> F {
        let mut acc = v.zero();
        for c in self.q.iter().rev() {
            acc = acc.mul(v).add(c);
        }
        acc
    }

    pub fn contains(&self, v: &F, z: &F) -> bool {
        z.mul(z).sub(&self.q_at(v)).is_zero()
    }

    pub fn identity(&self) -> (F, F) {
        (self.e.clone(), self.e.zero())
    }

    /// Taylor data at the marked root: q(e + x) = d1 x + d2 x^2 + d3 x^3 + d4 x^4.
    fn taylor_at_root(&self) -> [F; 4] {
        let poly = Poly::new("v", self.q.to_vec());
        let shifted = poly.shift(&self.e);
        debug_assert!(shifted.coeff(0).map_or(true, |c| c.is_zero()));
        let z = self.e.zero();
        [
            shifted.coeff(1).cloned().unwrap_or_else(|| z.clone()),
            shifted.coeff(2).cloned().unwrap_or_else(|| z.clone()),
            shifted.coeff(3).cloned().unwrap_or_else(|| z.clone()),
            shifted.coeff(4).cloned().unwrap_or_else(|| z.clone()),
        ]
    }

    /// The substitution v = e + 1/s gives (z s^2)^2 = d1 s^3 + d2 s^2 + d3 s + d4;
    /// rescaling X = d1 s, Y = d1 z s^2 yields
    /// Y^2 = X^3 + d2 X^2 + (d1 d3) X + (d1^2 d4).
    pub fn to_weierstrass(&self) -> (WModel<F>, QuarticMap<F>) {
        let [d1, d2, d3, d4] = self.taylor_at_root();
        let w = WModel::new(d2.clone(), d1.mul(&d3), d1.mul(&d1).mul(&d4));
        (w, QuarticMap { e: self.e.clone(), d1, q4: self.q[4].clone() })
    }
}

/// Birational map between a pointed quartic and its Weierstrass model.
/// Forward: (v, z) -> (d1/(v-e), d1 z/(v-e)^2); the marked point (e, 0) is
/// the one exceptional input and goes to the point at infinity. Backward:
/// (x, y) -> (e + d1/x, d1 y/x^2); x = 0 (the images of the quartic's two
/// points at infinity) is exceptional, and infinity returns (e, 0).
#[derive(Clone, Debug)]
pub struct QuarticMap<F: Coeff> {
    pub e: F,
    pub d1: F,
    pub q4: F,
}

impl<F: Coeff> QuarticMap<F> {
    pub fn forward(&self, v: &F, z: &F) -> WPoint<F> {
        let diff = v.sub(&self.e);
        match diff.inv() {
            None => WPoint::Infinity, // (e, 0): the only on-curve point over v = e
            Some(inv) => {
                let x = self.d1.mul(&inv);
                let y = self.d1.mul(z).mul(&inv).mul(&inv);
                WPoint::Affine(x, y)
            }
        }
    }

    pub fn backward(&self, p: &WPoint<F>) -> Option<(F, F)> {
        match p {
            WPoint::Infinity => Some((self.e.clone(), self.e.zero())),
            WPoint::Affine(x, y) => {
                let xinv = x.inv()?; // x = 0 corresponds to the quartic's infinity points
                let v = self.e.add(&self.d1.mul(&xinv));
                let z = self.d1.mul(y).mul(&xinv).mul(&xinv);
                Some((v, z))
            }
        }
    }
}

/// h(v) = (v^3 - 3v + 2) t^2 - (v^3 - 3v - 2) over any coefficient field
/// containing t.
pub fn h_coeffs<F: Coeff>(t: &F) -> [F; 4] {
    let t2 = t.mul(t);
    let one = t.one();
    let a = t2.sub(&one); // v^3 coefficient
    let b = a.neg().mul(&t.from_i64(3)); // v coefficient: -3(t^2 - 1)
    let c = t2.add(&one).mul(&t.from_i64(2)); // constant: 2(t^2 + 1)
    [c, b, t.zero(), a]
}

/// q(v) = (v - 2) h(v), expanded.
pub fn et_quartic_coeffs<F: Coeff>(t: &F) -> [F; 5] {
    let [h0, h1, _, h3] = h_coeffs(t);
    let two = t.from_i64(2);
    // (v - 2)(h3 v^3 + h1 v + h0)
    [
        h0.neg().mul(&two),
        h0.sub(&h1.mul(&two)),
        h1.clone(),
        h3.neg().mul(&two),
        h3,
    ]
}

/// The fiber E_t : z^2 = (v - 2) h(v) with identity (2, 0). The parameters
/// t in {0, 1, -1} are excluded: at t = +-1 the degree-4 coefficient
/// t^2 - 1 vanishes, and t = 0 is outside the family's good locus.
pub fn build_et(t: &CycNum) -> Result<QuarticModel<CycNum>, EllipticError> {
    for bad in [0i64, 1, -1] {
        if *t == CycNum::from_int(bad) {
            return Err(EllipticError::DegenerateParameter(format!(
                "t = {bad} is excluded for the D12 family"
            )));
        }
    }
    QuarticModel::new(et_quartic_coeffs(t), CycNum::from_int(2))
}

/// Symbolic fiber over Q(zeta_24)(t).
pub fn build_et_symbolic() -> QuarticModel<RatFn> {
    let t = RatFn::var("t");
    QuarticModel::new(et_quartic_coeffs(&t), RatFn::constant("t", CycNum::from_int(2)))
        .expect("generic fiber is nonsingular")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_int};

    #[test]
    fn et_at_7_9() {
        let t = CycNum::from_rat(rat(7, 9));
        let m = build_et(&t).unwrap();
        // q'(2) = h(2) = 4t^2 = 196/81
        let (w, map) = m.to_weierstrass();
        assert_eq!(map.d1, CycNum::from_rat(rat(196, 81)));
        assert!(w.is_nonsingular());
        // identity maps to infinity and back
        let (e, z) = m.identity();
        assert_eq!(map.forward(&e, &z), WPoint::Infinity);
        assert_eq!(map.backward(&WPoint::Infinity), Some(m.identity()));
    }

    #[test]
    fn excluded_parameters() {
        assert!(build_et(&CycNum::from_int(1)).is_err());
        assert!(build_et(&CycNum::from_int(0)).is_err());
        assert!(build_et(&CycNum::from_int(-1)).is_err());
        assert!(build_et(&CycNum::from_int(3)).is_ok());
    }

    #[test]
    fn symbolic_section_points_on_curve() {
        // (−1, 2t(2ζ3+1)), (1, −2ζ4), (−2, ±4ζ4) satisfy z^2 = (v−2)h(v)
        // identically in t.
        let m = build_et_symbolic();
        let t = RatFn::var("t");
        let cc = |c: CycNum| RatFn::constant("t", c);
        let z3 = CycNum::zeta3();
        let z4 = CycNum::zeta4();
        let p1z = t
            .mul(&cc(z3.scale(&rat_int(2)).add(&CycNum::one())))
            .mul(&cc(CycNum::from_int(2)));
        assert!(m.contains(&cc(CycNum::from_int(-1)), &p1z));
        assert!(m.contains(&cc(CycNum::from_int(1)), &cc(z4.scale(&rat_int(-2)))));
        assert!(m.contains(&cc(CycNum::from_int(-2)), &cc(z4.scale(&rat_int(4)))));
        assert!(m.contains(&cc(CycNum::from_int(-2)), &cc(z4.scale(&rat_int(-4)))));
        // and a wrong z-value fails
        assert!(!m.contains(&cc(CycNum::from_int(1)), &cc(z4.scale(&rat_int(2)).add(&CycNum::one()))));
    }

    #[test]
    fn roundtrip_on_exact_points() {
        let t = CycNum::from_rat(rat(7, 9));
        let m = build_et(&t).unwrap();
        let (w, map) = m.to_weierstrass();
        let z4 = CycNum::zeta4();
        let p2 = (CycNum::from_int(1), z4.scale(&rat_int(-2)));
        assert!(m.contains(&p2.0, &p2.1));
        let wp = map.forward(&p2.0, &p2.1);
        assert!(w.contains(&wp));
        assert_eq!(map.backward(&wp), Some(p2));
    }
}
