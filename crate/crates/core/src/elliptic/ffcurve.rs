//! Reductions of Weierstrass models to finite fields: the group law mod p,
//! exhaustive point counting with the Hasse bound asserted, Frobenius
//! traces, point orders, and ordinarity data for the non-isogeny
//! certificates.

use super::weier::{WModel, WPoint};
use super::EllipticError;
use crate::exactalg::coeff::Coeff;
use crate::exactalg::cyc::CycNum;
use crate::exactalg::fq::{factorize, FqContext, FqElem};
use crate::exactalg::squarefree_part;
use num_bigint::BigInt;

/// Finite-field element carrying its context, so it can serve as a
/// polynomial/curve coefficient.
#[derive(Clone)]
pub struct FfElem {
    pub ctx: FqContext,
    pub v: FqElem,
}

impl PartialEq for FfElem {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v
    }
}

impl std::fmt::Debug for FfElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:?}", self.v)
    }
}

impl Coeff for FfElem {
    fn zero(&self) -> Self {
        FfElem { ctx: self.ctx.clone(), v: self.ctx.zero() }
    }
    fn one(&self) -> Self {
        FfElem { ctx: self.ctx.clone(), v: self.ctx.one() }
    }
    fn add(&self, o: &Self) -> Self {
        FfElem { ctx: self.ctx.clone(), v: self.ctx.add(self.v, o.v) }
    }
    fn sub(&self, o: &Self) -> Self {
        FfElem { ctx: self.ctx.clone(), v: self.ctx.sub(self.v, o.v) }
    }
    fn mul(&self, o: &Self) -> Self {
        FfElem { ctx: self.ctx.clone(), v: self.ctx.mul(self.v, o.v) }
    }
    fn neg(&self) -> Self {
        FfElem { ctx: self.ctx.clone(), v: self.ctx.neg(self.v) }
    }
    fn inv(&self) -> Option<Self> {
        self.ctx.inv(self.v).map(|v| FfElem { ctx: self.ctx.clone(), v })
    }
    fn is_zero(&self) -> bool {
        self.v == self.ctx.zero()
    }
}

/// A Weierstrass model with good reduction at the context prime.
#[derive(Clone, Debug)]
pub struct FfCurve {
    pub ctx: FqContext,
    pub model: WModel<FfElem>,
}

pub type FfPoint = WPoint<FfElem>;

impl FfCurve {
    /// Reduce an exact model; requires the coefficients to be p-integral and
    /// the reduced cubic discriminant to be nonzero (good reduction).
    pub fn reduce_model(m: &WModel<CycNum>, ctx: &FqContext) -> Result<Self, EllipticError> {
        let r = |c: &CycNum| -> Result<FfElem, EllipticError> {
            Ok(FfElem { ctx: ctx.clone(), v: ctx.reduce_cyc(c)? })
        };
        let model = WModel::new(r(&m.a2)?, r(&m.a4)?, r(&m.a6)?);
        if !model.is_nonsingular() {
            return Err(EllipticError::BadReduction(ctx.p()));
        }
        Ok(FfCurve { ctx: ctx.clone(), model })
    }

    pub fn reduce_point(&self, p: &WPoint<CycNum>) -> Result<FfPoint, EllipticError> {
        Ok(match p {
            WPoint::Infinity => WPoint::Infinity,
            WPoint::Affine(x, y) => WPoint::Affine(
                FfElem { ctx: self.ctx.clone(), v: self.ctx.reduce_cyc(x)? },
                FfElem { ctx: self.ctx.clone(), v: self.ctx.reduce_cyc(y)? },
            ),
        })
    }

    /// Reduction when the coordinates are p-integral in the power basis;
    /// None when a denominator meets p. (A rational denominator divisible by
    /// p only shows the point is non-integral at SOME place above p, not
    /// necessarily the one this context reduces through, so such points are
    /// reported as not reducible here rather than guessed.)
    pub fn try_reduce_point(&self, p: &WPoint<CycNum>) -> Option<FfPoint> {
        self.reduce_point(p).ok()
    }

    fn elem(&self, v: FqElem) -> FfElem {
        FfElem { ctx: self.ctx.clone(), v }
    }

    /// Enumerate all field elements; only sensible for the small contexts in
    /// the witness pool (q = p for p = 1 mod 24, or p^2 for tiny p).
    fn all_elements(&self) -> impl Iterator<Item = FqElem> + '_ {
        let p = self.ctx.p();
        let top_b = if self.ctx.k() == 2 { p } else { 1 };
        (0..top_b).flat_map(move |b| (0..p).map(move |a| FqElem { a, b }))
    }

    /// Exhaustive count of projective points, Hasse bound asserted.
    pub fn count_points(&self) -> u64 {
        let q = self.ctx.q();
        assert!(q <= 1 << 22, "exhaustive counting capped at q = 2^22");
        let mut n = 1u64; // infinity
        // squares multiset: s -> number of y with y^2 = s
        let mut sq = std::collections::HashMap::new();
        for y in self.all_elements() {
            let y2 = self.ctx.mul(y, y);
            *sq.entry(y2).or_insert(0u64) += 1;
        }
        for x in self.all_elements() {
            let rhs = self.model.rhs(&self.elem(x));
            if let Some(c) = sq.get(&rhs.v) {
                n += c;
            }
        }
        let a = q as i128 + 1 - n as i128;
        assert!(a * a <= 4 * q as i128, "Hasse bound violated: a = {a}, q = {q}");
        n
    }

    /// Frobenius trace a = q + 1 - N.
    pub fn trace(&self) -> i64 {
        let n = self.count_points();
        (self.ctx.q() as i128 + 1 - n as i128) as i64
    }

    /// Exact order of a point, by descending through the prime factors of
    /// the group order.
    pub fn point_order(&self, p: &FfPoint) -> u64 {
        let n = self.count_points();
        self.point_order_given(p, n)
    }

    pub fn point_order_given(&self, p: &FfPoint, group_order: u64) -> u64 {
        assert!(
            self.model.smul(group_order as i64, p).is_infinity(),
            "Lagrange: the group order annihilates every point"
        );
        let mut o = group_order;
        for (f, _) in factorize(group_order) {
            while o % f == 0 && self.model.smul((o / f) as i64, p).is_infinity() {
                o /= f;
            }
        }
        o
    }

    /// Deterministic sample of affine points: scan x in a fixed order and
    /// pick the first y with y^2 = rhs(x).
    pub fn sample_points(&self, count: usize) -> Vec<FfPoint> {
        let mut out = vec![];
        for x in self.all_elements() {
            if out.len() >= count {
                break;
            }
            let xe = self.elem(x);
            let rhs = self.model.rhs(&xe);
            for y in self.all_elements() {
                if self.ctx.mul(y, y) == rhs.v {
                    out.push(WPoint::Affine(xe.clone(), self.elem(y)));
                    break;
                }
            }
        }
        out
    }
}

/// Ordinarity and CM-field data at p for a model with rational coefficients:
/// the reduction over the prime field F_p (independent of the zeta_24
/// embedding), its trace a, and the squarefree part of a^2 - 4p.
pub struct OrdinaryData {
    pub p: u64,
    pub trace: i64,
    pub is_ordinary: bool,
    pub squarefree_part: BigInt,
}

/// Requires p >= 5, good reduction, and rational a-invariants (the prime
/// field already contains them).
pub fn ordinary_quadfield(m: &WModel<CycNum>, p: u64) -> Result<OrdinaryData, EllipticError> {
    if p < 5 {
        return Err(EllipticError::BadReduction(p));
    }
    for c in [&m.a2, &m.a4, &m.a6] {
        if c.is_rational().is_none() {
            return Err(EllipticError::NonRationalModel);
        }
    }
    let ctx = FqContext::new(p)?;
    // force the prime-field count: for k = 2 contexts, counting over F_p is
    // still what the trace formula needs, so reduce coefficients into F_p
    let curve = reduce_rational_to_fp(m, p)?;
    let a = curve.trace();
    let is_ordinary = a.unsigned_abs() % p != 0;
    let disc = BigInt::from(a) * BigInt::from(a) - BigInt::from(4u32) * BigInt::from(p);
    let _ = ctx;
    Ok(OrdinaryData { p, trace: a, is_ordinary, squarefree_part: squarefree_part(&disc) })
}

/// Reduce a rational-coefficient model to the prime field F_p regardless of
/// the residue degree of p in Q(zeta_24).
pub fn reduce_rational_to_fp(m: &WModel<CycNum>, p: u64) -> Result<FfCurve, EllipticError> {
    // Build a k = 1 style context by hand: arithmetic in F_p only.
    let ctx = FqContext::new_prime_field(p)?;
    FfCurve::reduce_model(m, &ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn count_x3_plus_x_over_f5() {
        // y^2 = x^3 + x over F_5 has N = 4, trace 2
        let ctx = FqContext::new_prime_field(5).unwrap();
        let m = WModel::new(CycNum::zero(), CycNum::one(), CycNum::zero());
        let c = FfCurve::reduce_model(&m, &ctx).unwrap();
        assert_eq!(c.count_points(), 4);
        assert_eq!(c.trace(), 2);
    }

    #[test]
    fn ordinary_data_at_5() {
        let m = WModel::new(CycNum::zero(), CycNum::one(), CycNum::zero());
        let d = ordinary_quadfield(&m, 5).unwrap();
        assert_eq!(d.trace, 2);
        assert!(d.is_ordinary);
        assert_eq!(d.squarefree_part, BigInt::from(-1)); // a^2 - 4p = -16
    }

    #[test]
    fn full_two_torsion_forces_4_divides_n() {
        // y^2 = x(x-1)(x+1) = x^3 - x has full rational 2-torsion
        let m = WModel::new(CycNum::zero(), CycNum::from_int(-1), CycNum::zero());
        for p in [5u64, 73, 97] {
            let ctx = FqContext::new_prime_field(p).unwrap();
            let c = FfCurve::reduce_model(&m, &ctx).unwrap();
            assert_eq!(c.count_points() % 4, 0, "p={p}");
        }
    }

    #[test]
    fn bad_reduction_detected() {
        // y^2 = x^3 - 3x + 2 = (x-1)^2(x+2): singular everywhere
        let m = WModel::new(CycNum::zero(), CycNum::from_int(-3), CycNum::from_int(2));
        assert!(FfCurve::reduce_model(&m, &FqContext::new_prime_field(7).unwrap()).is_err());
        // p dividing a denominator
        let m2 = WModel::new(CycNum::zero(), CycNum::from_rat(rat(1, 5)), CycNum::one());
        assert!(FfCurve::reduce_model(&m2, &FqContext::new_prime_field(5).unwrap()).is_err());
    }

    #[test]
    fn point_orders_divide_group_order() {
        let ctx = FqContext::new_prime_field(73).unwrap();
        let m = WModel::new(CycNum::zero(), CycNum::one(), CycNum::zero());
        let c = FfCurve::reduce_model(&m, &ctx).unwrap();
        let n = c.count_points();
        for p in c.sample_points(10) {
            assert_eq!(n % c.point_order(&p), 0);
        }
    }
}

#[cfg(test)]
mod ordinarity_tests {
    use super::*;

    #[test]
    fn supersingular_flagged() {
        // y^2 = x^3 + x over F_7 has trace 0: supersingular
        let m = WModel::new(CycNum::zero(), CycNum::one(), CycNum::zero());
        let d = ordinary_quadfield(&m, 7).unwrap();
        assert_eq!(d.trace, 0);
        assert!(!d.is_ordinary);
    }
}
