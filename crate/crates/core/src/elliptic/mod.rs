//! Elliptic-curve models (pointed quartic, pointed plane cubic, Weierstrass),
//! the recorded birational maps between them, the exact group law, reduction
//! to finite fields, and point counting.
//!
//! Group arithmetic always happens on the Weierstrass model; quartic and
//! cubic points are transported through their ModelMap on construction. This
//! sidesteps chord-tangent special cases on non-Weierstrass shapes and the
//! two-points-at-infinity subtlety of quartic models.

pub mod cubic;
pub mod ffcurve;
pub mod intproj;
pub mod quartic;
pub mod weier;

use crate::exactalg::cyc::CycNum;
use crate::exactalg::fq::FqContext;
use crate::exactalg::poly::Poly;
use crate::exactalg::ratfn::RatFn;
use crate::exactalg::ExactError;
use cubic::{CubicMap, CubicModel};
use quartic::{QuarticMap, QuarticModel};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;
use weier::{WModel, WPoint};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum EllipticError {
    #[error("degenerate parameter: {0}")]
    DegenerateParameter(String),
    #[error("marked root is not a root of the quartic")]
    MarkedRootNotARoot,
    #[error("singular model (non-squarefree quartic or zero discriminant)")]
    SingularModel,
    #[error("singular fiber: {0}")]
    SingularFiber(String),
    #[error("marked point is a singular point of the cubic")]
    SingularMarkedPoint,
    #[error("defining polynomial is not a homogeneous cubic")]
    NotACubic,
    #[error("marked point does not lie on the curve")]
    MarkedPointOffCurve,
    #[error("no suitable projection frame found")]
    FrameSearchFailed,
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("model coefficients are not rational")]
    NonRationalModel,
    #[error("points belong to different curves")]
    MixedModels,
    #[error(transparent)]
    Exact(#[from] ExactError),
}

static CURVE_IDS: AtomicU64 = AtomicU64::new(1);

/// The source shape a curve was built from, with its transport data.
#[derive(Clone, Debug)]
pub enum SourceModel {
    Weierstrass,
    Quartic { model: QuarticModel<CycNum>, map: QuarticMap<CycNum> },
    Cubic { model: CubicModel, map: CubicMap },
}

/// An elliptic curve bundled with its Weierstrass working model. Cheap to
/// clone; the identity of the curve (for mixed-model checks) is the `id`.
#[derive(Clone, Debug)]
pub struct Elliptic {
    inner: Arc<EllipticInner>,
}

#[derive(Debug)]
struct EllipticInner {
    id: u64,
    source: SourceModel,
    w: WModel<CycNum>,
}

/// A point of an `Elliptic`, stored in Weierstrass coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct EPoint {
    pub curve_id: u64,
    pub w: WPoint<CycNum>,
}

impl Elliptic {
    fn wrap(source: SourceModel, w: WModel<CycNum>) -> Result<Self, EllipticError> {
        if !w.is_nonsingular() {
            return Err(EllipticError::SingularModel);
        }
        Ok(Elliptic {
            inner: Arc::new(EllipticInner {
                id: CURVE_IDS.fetch_add(1, Ordering::Relaxed),
                source,
                w,
            }),
        })
    }

    pub fn from_weierstrass(w: WModel<CycNum>) -> Result<Self, EllipticError> {
        Self::wrap(SourceModel::Weierstrass, w)
    }

    pub fn from_quartic(q: QuarticModel<CycNum>) -> Result<Self, EllipticError> {
        let (w, map) = q.to_weierstrass();
        Self::wrap(SourceModel::Quartic { model: q, map }, w)
    }

    pub fn from_cubic(c: CubicModel, avoid: &[[CycNum; 3]]) -> Result<Self, EllipticError> {
        let (w, map) = cubic::cubic_to_weierstrass(&c, avoid)?;
        Self::wrap(SourceModel::Cubic { model: c, map }, w)
    }

    pub fn id(&self) -> u64 {
        self.inner.id
    }
    pub fn w_model(&self) -> &WModel<CycNum> {
        &self.inner.w
    }
    pub fn source(&self) -> &SourceModel {
        &self.inner.source
    }

    pub fn infinity(&self) -> EPoint {
        EPoint { curve_id: self.id(), w: WPoint::Infinity }
    }

    pub fn point_from_w(&self, w: WPoint<CycNum>) -> Result<EPoint, EllipticError> {
        if !self.inner.w.contains(&w) {
            return Err(EllipticError::MarkedPointOffCurve);
        }
        Ok(EPoint { curve_id: self.id(), w })
    }

    /// Construct a point from quartic coordinates (v, z).
    pub fn point_from_quartic(&self, v: &CycNum, z: &CycNum) -> Result<EPoint, EllipticError> {
        match &self.inner.source {
            SourceModel::Quartic { model, map } => {
                if !model.contains(v, z) {
                    return Err(EllipticError::MarkedPointOffCurve);
                }
                Ok(EPoint { curve_id: self.id(), w: map.forward(v, z) })
            }
            _ => Err(EllipticError::MixedModels),
        }
    }

    /// Construct a point from projective cubic coordinates.
    pub fn point_from_cubic(&self, p: &[CycNum; 3]) -> Result<EPoint, EllipticError> {
        match &self.inner.source {
            SourceModel::Cubic { model, map } => {
                if !model.contains(p) {
                    return Err(EllipticError::MarkedPointOffCurve);
                }
                let w = map
                    .forward(p)
                    .ok_or_else(|| EllipticError::SingularFiber("exceptional input point".into()))?;
                Ok(EPoint { curve_id: self.id(), w })
            }
            _ => Err(EllipticError::MixedModels),
        }
    }

    /// Source-model coordinates of a point, when the backward map is defined.
    pub fn source_coords(&self, p: &EPoint) -> Option<SourceCoords> {
        match &self.inner.source {
            SourceModel::Weierstrass => None,
            SourceModel::Quartic { map, .. } => {
                map.backward(&p.w).map(|(v, z)| SourceCoords::Quartic(v, z))
            }
            SourceModel::Cubic { map, .. } => map.backward(&p.w).map(SourceCoords::Cubic),
        }
    }

    fn guard(&self, p: &EPoint) -> Result<(), EllipticError> {
        if p.curve_id != self.id() {
            return Err(EllipticError::MixedModels);
        }
        Ok(())
    }

    pub fn add(&self, p: &EPoint, q: &EPoint) -> Result<EPoint, EllipticError> {
        self.guard(p)?;
        self.guard(q)?;
        Ok(EPoint { curve_id: self.id(), w: self.inner.w.add(&p.w, &q.w) })
    }

    pub fn sub(&self, p: &EPoint, q: &EPoint) -> Result<EPoint, EllipticError> {
        self.guard(p)?;
        self.guard(q)?;
        Ok(EPoint { curve_id: self.id(), w: self.inner.w.sub(&p.w, &q.w) })
    }

    pub fn neg(&self, p: &EPoint) -> Result<EPoint, EllipticError> {
        self.guard(p)?;
        Ok(EPoint { curve_id: self.id(), w: self.inner.w.neg(&p.w) })
    }

    /// Exact scalar multiple. Small scalars run the affine ladder; larger
    /// ones switch to projective integer coordinates with content
    /// normalization.
    pub fn smul(&self, n: i64, p: &EPoint) -> Result<EPoint, EllipticError> {
        self.guard(p)?;
        let w = if n.unsigned_abs() >= 32 {
            intproj::IntModel::new(&self.inner.w).smul(n, &p.w, &self.inner.w)
        } else {
            self.inner.w.smul(n, &p.w)
        };
        Ok(EPoint { curve_id: self.id(), w })
    }

    /// Apply a Galois conjugation coefficient-wise to a point. Sound as a
    /// group-compatible operation only when the conjugation fixes the model
    /// coefficients; `conj_fixes_model` checks that.
    pub fn conj_point(&self, p: &EPoint, j: u32) -> Result<EPoint, EllipticError> {
        self.guard(p)?;
        let w = match &p.w {
            WPoint::Infinity => WPoint::Infinity,
            WPoint::Affine(x, y) => WPoint::Affine(x.conj(j)?, y.conj(j)?),
        };
        self.point_from_w(w)
    }

    pub fn conj_fixes_model(&self, j: u32) -> Result<bool, EllipticError> {
        let m = &self.inner.w;
        Ok(m.a2.conj(j)? == m.a2 && m.a4.conj(j)? == m.a4 && m.a6.conj(j)? == m.a6)
    }

    /// Good reduction of the working model at the context prime.
    pub fn reduce(&self, ctx: &FqContext) -> Result<ffcurve::FfCurve, EllipticError> {
        ffcurve::FfCurve::reduce_model(&self.inner.w, ctx)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum SourceCoords {
    Quartic(CycNum, CycNum),
    Cubic([CycNum; 3]),
}

/// Verifies h(zeta_3^i c + zeta_3^{-i} c^{-1}) = 0 identically in
/// Q(zeta_3)(c) under t = (c^3 - 1)/(c^3 + 1), for i = 0, 1, 2: the roots of
/// h are exactly the two-torsion v-coordinates.
pub fn two_torsion_roots_check() -> bool {
    let t = kummer_t();
    (0..3).all(|i| h_at_candidate(&t, &two_torsion_v(i)).is_zero())
}

/// t = (c^3 - 1)/(c^3 + 1) in Q(zeta_24)(c).
pub fn kummer_t() -> RatFn {
    let c3 = Poly::monomial("c", CycNum::one(), 3);
    RatFn::new(
        c3.add(&Poly::constant("c", CycNum::from_int(-1))),
        c3.add(&Poly::constant("c", CycNum::one())),
    )
    .expect("nonzero denominator")
}

/// v_i = zeta_3^i c + zeta_3^{-i} / c as a rational function of c.
pub fn two_torsion_v(i: u32) -> RatFn {
    let z3i = CycNum::zeta3().pow(i as i64).expect("root of unity power");
    let z3mi = CycNum::zeta3().pow(-(i as i64)).expect("root of unity power");
    let num = Poly::new("c", vec![z3mi, CycNum::zero(), z3i]);
    let den = Poly::monomial("c", CycNum::one(), 1);
    RatFn::new(num, den).expect("nonzero denominator")
}

/// h(v) evaluated at a rational-function candidate v(c), with t = t(c).
pub fn h_at_candidate(t: &RatFn, v: &RatFn) -> RatFn {
    let coeffs = quartic::h_coeffs(t);
    let mut acc = RatFn::constant("c", CycNum::zero());
    for c in coeffs.iter().rev() {
        acc = acc.mul(v).add(c);
    }
    acc
}
