//! Exact rational functions in one named variable over Q(zeta_24).
//!
//! The normal form has a monic denominator and gcd(num, den) = 1, so equality
//! is coefficient-wise. The variable is typically t (family parameter) or c
//! (the Kummer generator with t = (c^3 - 1)/(c^3 + 1)).

use super::cyc::CycNum;
use super::poly::Poly;
use super::ExactError;

pub type CPoly = Poly<CycNum>;

#[derive(Clone, Debug, PartialEq)]
pub struct RatFn {
    pub num: CPoly,
    pub den: CPoly,
}

impl RatFn {
    pub fn new(num: CPoly, den: CPoly) -> Result<Self, ExactError> {
        if den.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFn {
                num: Poly::zero(&den.var),
                den: Poly::constant(&den.var, CycNum::one()),
            });
        }
        if num.var != den.var {
            return Err(ExactError::VariableMismatch(num.var, den.var));
        }
        let g = num.gcd(&den)?;
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.exact_div(&g).unwrap(), den.exact_div(&g).unwrap())
        };
        let lead = den.leading().unwrap().clone();
        let inv = CycNum::inv(&lead).expect("nonzero leading coefficient");
        den = den.scale(&inv);
        num = num.scale(&inv);
        Ok(RatFn { num, den })
    }

    pub fn from_poly(p: CPoly) -> Self {
        let var = p.var.clone();
        RatFn { num: p, den: Poly::constant(&var, CycNum::one()) }
    }

    pub fn constant(var: &str, c: CycNum) -> Self {
        RatFn::from_poly(Poly::constant(var, c))
    }

    pub fn var(var: &str) -> Self {
        RatFn::from_poly(Poly::monomial(var, CycNum::one(), 1))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> Option<&CycNum> {
        if self.den.degree() == Some(0) && self.num.degree().map_or(true, |d| d == 0) {
            if self.num.is_zero() {
                None // zero handled by caller through is_zero
            } else {
                self.num.coeff(0)
            }
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFn::new(n, self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        RatFn { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        RatFn::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominator")
    }

    pub fn inv(&self) -> Result<Self, ExactError> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, n: i32) -> Result<Self, ExactError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = RatFn::constant(&self.num.var, CycNum::one());
        for _ in 0..n {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// Exact evaluation at a cyclotomic argument; pole error when the
    /// denominator vanishes there.
    pub fn specialize(&self, value: &CycNum) -> Result<CycNum, ExactError> {
        let d = self.den.eval(value);
        if d.is_zero() {
            return Err(ExactError::PoleAtValue);
        }
        let n = self.num.eval(value);
        Ok(n.mul(&d.inv()?))
    }

    /// Substitute another rational function for the variable.
    pub fn compose(&self, inner: &RatFn) -> Self {
        let var = &inner.num.var;
        let mut num_acc = RatFn::constant(var, CycNum::zero());
        let mut den_acc = RatFn::constant(var, CycNum::zero());
        // Horner in inner for numerator and denominator separately
        for c in self.num.coeffs.iter().rev() {
            num_acc = num_acc.mul(inner).add(&RatFn::constant(var, c.clone()));
        }
        for c in self.den.coeffs.iter().rev() {
            den_acc = den_acc.mul(inner).add(&RatFn::constant(var, c.clone()));
        }
        num_acc.div(&den_acc).expect("denominator does not vanish identically")
    }
}

impl super::coeff::Coeff for RatFn {
    fn zero(&self) -> Self {
        RatFn::constant(&self.num.var, CycNum::zero())
    }
    fn one(&self) -> Self {
        RatFn::constant(&self.num.var, CycNum::one())
    }
    fn add(&self, o: &Self) -> Self {
        RatFn::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        RatFn::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        RatFn::mul(self, o)
    }
    fn neg(&self) -> Self {
        RatFn::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        RatFn::inv(self).ok()
    }
    fn is_zero(&self) -> bool {
        RatFn::is_zero(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_int};

    fn c(n: i64) -> CycNum {
        CycNum::from_int(n)
    }

    /// t = (c^3 - 1)/(c^3 + 1) as a rational function of c.
    pub fn t_of_c() -> RatFn {
        let c3 = Poly::monomial("c", CycNum::one(), 3);
        let num = c3.add(&Poly::constant("c", c(-1)));
        let den = c3.add(&Poly::constant("c", c(1)));
        RatFn::new(num, den).unwrap()
    }

    #[test]
    fn kummer_substitution_at_2() {
        // (c^3-1)/(c^3+1) at c = 2 is 7/9
        let t = t_of_c();
        assert_eq!(t.specialize(&c(2)).unwrap(), CycNum::from_rat(rat(7, 9)));
    }

    #[test]
    fn constant_specializes_to_itself() {
        let f = RatFn::constant("c", CycNum::zeta3());
        assert_eq!(f.specialize(&c(17)).unwrap(), CycNum::zeta3());
    }

    #[test]
    fn pole_detected() {
        let t = t_of_c();
        // c = -1 has c^3 = -1
        assert!(matches!(t.specialize(&c(-1)), Err(ExactError::PoleAtValue)));
    }

    #[test]
    fn specialize_is_homomorphic() {
        let t = t_of_c();
        let u = RatFn::new(
            Poly::new("c", vec![c(1), CycNum::zeta3()]),
            Poly::new("c", vec![c(3), c(0), c(1)]),
        )
        .unwrap();
        let at = |f: &RatFn| f.specialize(&c(5)).unwrap();
        assert_eq!(at(&t.add(&u)), at(&t).add(&at(&u)));
        assert_eq!(at(&t.mul(&u)), at(&t).mul(&at(&u)));
        let _ = rat_int(0);
    }

    #[test]
    fn normal_form_makes_equality_syntactic() {
        // (2x + 2)/(2x - 2) equals (x + 1)/(x - 1)
        let a = RatFn::new(
            Poly::new("x", vec![c(2), c(2)]),
            Poly::new("x", vec![c(-2), c(2)]),
        )
        .unwrap();
        let b = RatFn::new(
            Poly::new("x", vec![c(1), c(1)]),
            Poly::new("x", vec![c(-1), c(1)]),
        )
        .unwrap();
        assert_eq!(a, b);
        assert!(a.den.leading().unwrap() == &CycNum::one());
    }
}
