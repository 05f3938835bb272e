//! Weierstrass models y^2 = x^3 + a2 x^2 + a4 x + a6 over an exact field,
//! with the chord-tangent group law. All group arithmetic in the crate is
//! transported to this shape; quartic and pointed-cubic points never carry
//! their own addition.

use crate::exactalg::coeff::Coeff;

#[derive(Clone, Debug, PartialEq)]
pub struct WModel<F: Coeff> {
    pub a2: F,
    pub a4: F,
    pub a6: F,
}

#[derive(Clone, Debug, PartialEq)]
pub enum WPoint<F: Coeff> {
    Infinity,
    Affine(F, F),
}

impl<F: Coeff> WPoint<F> {
    pub fn is_infinity(&self) -> bool {
        matches!(self, WPoint::Infinity)
    }
}

impl<F: Coeff> WModel<F> {
    pub fn new(a2: F, a4: F, a6: F) -> Self {
        WModel { a2, a4, a6 }
    }

    /// Discriminant of the cubic x^3 + a2 x^2 + a4 x + a6; nonzero iff the
    /// model is nonsingular (characteristic 0 or > 3 here).
    pub fn cubic_disc(&self) -> F {
        let (a, b, c) = (&self.a2, &self.a4, &self.a6);
        let t1 = a.mul(b).mul(c).mul(&a.from_i64(18));
        let t2 = a.mul(a).mul(a).mul(c).mul(&a.from_i64(4));
        let t3 = a.mul(a).mul(&b.mul(b));
        let t4 = b.mul(b).mul(b).mul(&a.from_i64(4));
        let t5 = c.mul(c).mul(&a.from_i64(27));
        t1.sub(&t2).add(&t3).sub(&t4).sub(&t5)
    }

    pub fn is_nonsingular(&self) -> bool {
        !self.cubic_disc().is_zero()
    }

    pub fn rhs(&self, x: &F) -> F {
        x.mul(x).mul(x).add(&self.a2.mul(&x.mul(x))).add(&self.a4.mul(x)).add(&self.a6)
    }

    pub fn contains(&self, p: &WPoint<F>) -> bool {
        match p {
            WPoint::Infinity => true,
            WPoint::Affine(x, y) => y.mul(y).sub(&self.rhs(x)).is_zero(),
        }
    }

    pub fn neg(&self, p: &WPoint<F>) -> WPoint<F> {
        match p {
            WPoint::Infinity => WPoint::Infinity,
            WPoint::Affine(x, y) => WPoint::Affine(x.clone(), y.neg()),
        }
    }

    pub fn add(&self, p: &WPoint<F>, q: &WPoint<F>) -> WPoint<F> {
        let (x1, y1) = match p {
            WPoint::Infinity => return q.clone(),
            WPoint::Affine(x, y) => (x, y),
        };
        let (x2, y2) = match q {
            WPoint::Infinity => return p.clone(),
            WPoint::Affine(x, y) => (x, y),
        };
        let lambda = if x1 == x2 {
            if y1.add(y2).is_zero() {
                return WPoint::Infinity;
            }
            // tangent: (3x^2 + 2 a2 x + a4) / (2y)
            let num = x1
                .mul(x1)
                .mul(&x1.from_i64(3))
                .add(&self.a2.mul(x1).mul(&x1.from_i64(2)))
                .add(&self.a4);
            num.mul(&y1.add(y1).inv().expect("y nonzero on nonsingular model"))
        } else {
            y2.sub(y1).mul(&x2.sub(x1).inv().expect("x1 != x2"))
        };
        let x3 = lambda.mul(&lambda).sub(&self.a2).sub(x1).sub(x2);
        let y3 = lambda.mul(&x1.sub(&x3)).sub(y1);
        WPoint::Affine(x3, y3)
    }

    pub fn sub(&self, p: &WPoint<F>, q: &WPoint<F>) -> WPoint<F> {
        self.add(p, &self.neg(q))
    }

    pub fn smul(&self, n: i64, p: &WPoint<F>) -> WPoint<F> {
        if n < 0 {
            return self.smul(-n, &self.neg(p));
        }
        let mut acc = WPoint::Infinity;
        let mut base = p.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(&acc, &base);
            }
            k >>= 1;
            if k > 0 {
                base = self.add(&base, &base);
            }
        }
        acc
    }

    /// The x-coordinates of the nontrivial 2-torsion are the roots of the
    /// cubic; given a known root, return the point.
    pub fn two_torsion_at(&self, x: F) -> Option<WPoint<F>> {
        if self.rhs(&x).is_zero() {
            Some(WPoint::Affine(x.clone(), x.zero()))
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::cyc::CycNum;
    use crate::exactalg::rat;

    fn w() -> WModel<CycNum> {
        // y^2 = x^3 + 9x^2 + 216x + 784 (a curve that actually appears here)
        WModel::new(CycNum::from_int(9), CycNum::from_int(216), CycNum::from_int(784))
    }

    #[test]
    fn identity_and_inverse() {
        let m = w();
        let p = WPoint::Affine(CycNum::from_int(-4), CycNum::from_int(12) /* check */);
        // fix a real point: rhs(-4) = -64 + 144 - 864 + 784 = 0 -> 2-torsion
        assert!(m.contains(&WPoint::Affine(CycNum::from_int(-4), CycNum::zero())));
        let t = WPoint::Affine(CycNum::from_int(-4), CycNum::zero());
        assert_eq!(m.add(&t, &WPoint::Infinity), t);
        assert_eq!(m.add(&t, &m.neg(&t)), WPoint::Infinity);
        assert_eq!(m.smul(2, &t), WPoint::Infinity);
        let _ = p;
    }

    #[test]
    fn smul_additivity_small() {
        let m = WModel::new(
            CycNum::zero(),
            CycNum::from_rat(rat(-36, 1)),
            CycNum::zero(),
        );
        // y^2 = x^3 - 36x contains (-3, 9)
        let p = WPoint::Affine(CycNum::from_int(-3), CycNum::from_int(9));
        assert!(m.contains(&p));
        let a = m.smul(5, &p);
        let b = m.add(&m.smul(2, &p), &m.smul(3, &p));
        assert_eq!(a, b);
        assert!(m.contains(&a));
    }
}
