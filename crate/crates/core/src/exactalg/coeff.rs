//! Minimal field-of-coefficients interface shared by the polynomial and
//! curve-model code. Zero and one are instance methods so that types whose
//! elements carry a context (finite-field elements) can implement it.

use super::Rat;
use num_traits::{One, Zero};

pub trait Coeff: Clone + PartialEq + std::fmt::Debug {
    fn zero(&self) -> Self;
    fn one(&self) -> Self;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// None exactly when `self` is zero.
    fn inv(&self) -> Option<Self>;
    fn is_zero(&self) -> bool;

    fn from_i64(&self, n: i64) -> Self {
        let mut acc = self.zero();
        let one = self.one();
        let m = n.unsigned_abs();
        let mut base = one;
        let mut k = m;
        // double-and-add
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add(&base);
            }
            base = base.add(&base);
            k >>= 1;
        }
        if n < 0 {
            acc.neg()
        } else {
            acc
        }
    }

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }
}

impl Coeff for Rat {
    fn zero(&self) -> Self {
        <Rat as Zero>::zero()
    }
    fn one(&self) -> Self {
        <Rat as One>::one()
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
}
