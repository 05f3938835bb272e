//! Pointed plane cubics and their reduction to Weierstrass form by the
//! classical tangent-projection procedure: project from the third
//! intersection Q of the tangent at the marked point O (Q = O when O is a
//! flex). The pencil of lines through Q exhibits the cubic as a double cover
//! of P^1 whose branch quartic acquires a marked root at the direction of
//! the line QO, so the v = e + 1/s quartic reduction applies afterwards.
//! The marked point is not required to be an inflection.

use super::quartic::{QuarticMap, QuarticModel};
use super::weier::{WModel, WPoint};
use super::EllipticError;
use crate::exactalg::coeff::Coeff;
use crate::exactalg::cyc::CycNum;
use crate::exactalg::mpoly::{vars, MPoly, Vars};
use crate::exactalg::rat_int;

#[derive(Clone, Debug)]
pub struct CubicModel {
    /// Homogeneous cubic in three variables, CycNum coefficients.
    pub f: MPoly,
    /// Marked rational point (the identity).
    pub o: [CycNum; 3],
}

pub fn proj_vars() -> Vars {
    vars(&["X", "Y", "Z"])
}

impl CubicModel {
    pub fn new(f: MPoly, o: [CycNum; 3]) -> Result<Self, EllipticError> {
        if !f.is_homogeneous_in(&[0, 1, 2], 3) {
            return Err(EllipticError::NotACubic);
        }
        if !f.eval(&o).is_zero() {
            return Err(EllipticError::MarkedPointOffCurve);
        }
        Ok(CubicModel { f, o })
    }

    pub fn contains(&self, p: &[CycNum; 3]) -> bool {
        self.f.eval(p).is_zero()
    }

    pub fn gradient_at(&self, p: &[CycNum; 3]) -> [CycNum; 3] {
        [
            self.f.partial(0).eval(p),
            self.f.partial(1).eval(p),
            self.f.partial(2).eval(p),
        ]
    }

    pub fn is_smooth_at(&self, p: &[CycNum; 3]) -> bool {
        self.gradient_at(p).iter().any(|g| !g.is_zero())
    }
}

fn dot(a: &[CycNum; 3], b: &[CycNum; 3]) -> CycNum {
    a[0].mul(&b[0]).add(&a[1].mul(&b[1])).add(&a[2].mul(&b[2]))
}

fn combo(s: &CycNum, u: &[CycNum; 3], t: &CycNum, v: &[CycNum; 3]) -> [CycNum; 3] {
    std::array::from_fn(|i| s.mul(&u[i]).add(&t.mul(&v[i])))
}

fn det3(cols: &[[CycNum; 3]; 3]) -> CycNum {
    let m = |r: usize, c: usize| &cols[c][r];
    let minor = |r1: usize, r2: usize, c1: usize, c2: usize| {
        m(r1, c1).mul(m(r2, c2)).sub(&m(r1, c2).mul(m(r2, c1)))
    };
    m(0, 0)
        .mul(&minor(1, 2, 1, 2))
        .sub(&m(0, 1).mul(&minor(1, 2, 0, 2)))
        .add(&m(0, 2).mul(&minor(1, 2, 0, 1)))
}

const FRAME_CANDIDATES: [[i64; 3]; 12] = [
    [1, 0, 0],
    [0, 1, 0],
    [0, 0, 1],
    [1, 1, 0],
    [1, 0, 1],
    [0, 1, 1],
    [1, -1, 0],
    [1, 0, -1],
    [0, 1, -1],
    [1, 1, 1],
    [1, 2, 0],
    [2, 1, 1],
];

fn candidate(c: &[i64; 3]) -> [CycNum; 3] {
    std::array::from_fn(|i| CycNum::from_int(c[i]))
}

/// Projection data for a pointed cubic: frame columns (Q, R1, R2), the
/// residual-intersection quadratic A(m) k^2 + B(m) k + C(m), and the branch
/// quartic Delta(m) = B^2 - 4AC with its marked root at m = 0.
#[derive(Clone, Debug)]
pub struct CubicProjection<F: Coeff> {
    pub q: [F; 3],
    pub r1: [F; 3],
    pub r2: [F; 3],
    pub a: [F; 2],
    pub b: [F; 3],
    pub c: [F; 4],
    pub flex: bool,
}

impl<F: Coeff> CubicProjection<F> {
    pub fn a_at(&self, m: &F) -> F {
        self.a[0].add(&self.a[1].mul(m))
    }
    pub fn b_at(&self, m: &F) -> F {
        self.b[0].add(&self.b[1].mul(m)).add(&self.b[2].mul(&m.mul(m)))
    }
    pub fn c_at(&self, m: &F) -> F {
        let m2 = m.mul(m);
        self.c[0]
            .add(&self.c[1].mul(m))
            .add(&self.c[2].mul(&m2))
            .add(&self.c[3].mul(&m2.mul(m)))
    }

    pub fn convert<G: Coeff>(&self, f: &mut impl FnMut(&F) -> G) -> CubicProjection<G> {
        CubicProjection {
            q: [f(&self.q[0]), f(&self.q[1]), f(&self.q[2])],
            r1: [f(&self.r1[0]), f(&self.r1[1]), f(&self.r1[2])],
            r2: [f(&self.r2[0]), f(&self.r2[1]), f(&self.r2[2])],
            a: [f(&self.a[0]), f(&self.a[1])],
            b: [f(&self.b[0]), f(&self.b[1]), f(&self.b[2])],
            c: [f(&self.c[0]), f(&self.c[1]), f(&self.c[2]), f(&self.c[3])],
            flex: self.flex,
        }
    }

    /// Image (m, s) of a projective point on the cubic; None when the point
    /// is over m = infinity (the line through Q and R2).
    pub fn forward_point(&self, p: &[F; 3]) -> Option<(F, F)> {
        let cols = [self.q.clone(), self.r1.clone(), self.r2.clone()];
        let sol = solve_frame_generic(&cols, p)?;
        let [pq, p1, p2] = sol;
        if p1.is_zero() && p2.is_zero() {
            // the projection center Q itself: its image is the tangent
            // direction at Q with s = -B(m_Q), where A(m_Q) = 0
            let a1inv = self.a[1].inv()?;
            let mq = self.a[0].neg().mul(&a1inv);
            let s = self.b_at(&mq).neg();
            return Some((mq, s));
        }
        let p1inv = p1.inv()?; // m = infinity otherwise
        let m = p2.mul(&p1inv);
        let kappa = pq.mul(&p1inv);
        let s = self.a_at(&m).mul(&kappa).mul(&kappa.from_i64(2)).add(&self.b_at(&m));
        Some((m, s))
    }

    /// Preimage on the cubic of a quartic point (m, s).
    pub fn backward_point(&self, m: &F, s: &F) -> Option<[F; 3]> {
        let am = self.a_at(m);
        let kappa = match am.inv() {
            Some(ainv) => s.sub(&self.b_at(m)).mul(&ainv).mul(&am.from_i64(2).inv()?),
            None => {
                // fiber of the tangent at Q: s = -B(m) is Q itself, s = +B(m)
                // the residual point with kappa = -C(m)/B(m)
                let bm = self.b_at(m);
                if s.add(&bm).is_zero() {
                    return Some(self.q.clone());
                }
                if !s.sub(&bm).is_zero() {
                    return None;
                }
                self.c_at(m).neg().mul(&bm.inv()?)
            }
        };
        Some(std::array::from_fn(|i| {
            kappa
                .mul(&self.q[i])
                .add(&self.r1[i])
                .add(&m.mul(&self.r2[i]))
        }))
    }
}

fn solve_frame_generic<F: Coeff>(cols: &[[F; 3]; 3], p: &[F; 3]) -> Option<[F; 3]> {
    let mut aug: Vec<Vec<F>> = (0..3)
        .map(|r| vec![cols[0][r].clone(), cols[1][r].clone(), cols[2][r].clone(), p[r].clone()])
        .collect();
    for col in 0..3 {
        let piv = (col..3).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, piv);
        let inv = aug[col][col].inv()?;
        for j in col..4 {
            aug[col][j] = aug[col][j].mul(&inv);
        }
        let prow = aug[col].clone();
        for r in 0..3 {
            if r != col && !aug[r][col].is_zero() {
                let f = aug[r][col].clone();
                for j in col..4 {
                    aug[r][j] = aug[r][j].sub(&f.mul(&prow[j]));
                }
            }
        }
    }
    Some([aug[0][3].clone(), aug[1][3].clone(), aug[2][3].clone()])
}

/// Scale so the last nonzero coordinate is 1.
pub fn normalize_proj<F: Coeff>(p: &[F; 3]) -> Option<[F; 3]> {
    let last = (0..3).rev().find(|&i| !p[i].is_zero())?;
    let inv = p[last].inv()?;
    Some(std::array::from_fn(|i| p[i].mul(&inv)))
}

/// Projective equality of nonzero coordinate triples.
pub fn proj_eq<F: Coeff>(p: &[F; 3], q: &[F; 3]) -> bool {
    let cross = |i: usize, j: usize| p[i].mul(&q[j]).sub(&p[j].mul(&q[i])).is_zero();
    cross(0, 1) && cross(0, 2) && cross(1, 2)
}

/// Full pointed-cubic-to-Weierstrass data.
#[derive(Clone, Debug)]
pub struct CubicMap {
    pub proj: CubicProjection<CycNum>,
    pub quartic: QuarticModel<CycNum>,
    pub qmap: QuarticMap<CycNum>,
}

impl CubicMap {
    pub fn forward(&self, p: &[CycNum; 3]) -> Option<WPoint<CycNum>> {
        let (m, s) = self.proj.forward_point(p)?;
        Some(self.qmap.forward(&m, &s))
    }

    pub fn backward(&self, p: &WPoint<CycNum>) -> Option<[CycNum; 3]> {
        let (m, s) = self.qmap.backward(p)?;
        let raw = self.proj.backward_point(&m, &s)?;
        normalize_proj(&raw)
    }
}

/// Tangent-projection reduction of a pointed cubic. `avoid` lists points
/// that must not land in the exceptional set of the projection (the frame
/// is chosen accordingly); the marked point never is.
pub fn cubic_to_weierstrass(
    cubic: &CubicModel,
    avoid: &[[CycNum; 3]],
) -> Result<(WModel<CycNum>, CubicMap), EllipticError> {
    if !cubic.is_smooth_at(&cubic.o) {
        return Err(EllipticError::SingularMarkedPoint);
    }
    let grad_o = cubic.gradient_at(&cubic.o);
    // a second point on the tangent line at O, independent of O
    let mut o2: Option<[CycNum; 3]> = None;
    for cand in FRAME_CANDIDATES.iter() {
        let v = candidate(cand);
        if !dot(&grad_o, &v).is_zero() {
            continue;
        }
        let independent = (0..3).any(|i| {
            (0..3).any(|j| j > i && !cubic.o[i].mul(&v[j]).sub(&cubic.o[j].mul(&v[i])).is_zero())
        });
        if independent {
            o2 = Some(v);
            break;
        }
    }
    let o2 = o2.ok_or(EllipticError::FrameSearchFailed)?;
    // F(l O + m O2) = m^2 (c1 l + c2 m): c1 = grad F(O2) . O, c2 = F(O2)
    let grad_o2 = cubic.gradient_at(&o2);
    let c1 = dot(&grad_o2, &cubic.o);
    let c2 = cubic.f.eval(&o2);
    let (qpt, r1, flex) = if c1.is_zero() {
        (cubic.o.clone(), o2, true)
    } else {
        (combo(&c2.neg(), &cubic.o, &c1, &o2), cubic.o.clone(), false)
    };
    debug_assert!(cubic.contains(&qpt));

    let grad_q = cubic.gradient_at(&qpt);
    'r2: for cand in FRAME_CANDIDATES.iter() {
        let r2 = candidate(cand);
        let cols = [qpt.clone(), r1.clone(), r2.clone()];
        if det3(&cols).is_zero() {
            continue;
        }
        // A(m) = grad F(Q).(R1 + m R2); need A nonconstant so the tangent
        // direction at Q stays at finite m
        let a0 = dot(&grad_q, &r1);
        let a1 = dot(&grad_q, &r2);
        if a1.is_zero() {
            continue;
        }
        // B(m) = grad F(R1 + m R2) . Q, quadratic in m: interpolate at 0, 1, -1
        let b_at = |mv: i64| -> CycNum {
            let w = combo(&CycNum::one(), &r1, &CycNum::from_int(mv), &r2);
            let gw = [
                cubic.f.partial(0).eval(&w),
                cubic.f.partial(1).eval(&w),
                cubic.f.partial(2).eval(&w),
            ];
            dot(&gw, &qpt)
        };
        let (b0, bp, bm) = (b_at(0), b_at(1), b_at(-1));
        let half = CycNum::from_rat(crate::exactalg::rat(1, 2));
        let b2 = bp.add(&bm).sub(&b0.scale(&rat_int(2))).mul(&half);
        let b1 = bp.sub(&bm).mul(&half);
        // C(m) = F(R1 + m R2), cubic in m: interpolate at 0, 1, -1, 2
        let c_at = |mv: i64| cubic.f.eval(&combo(&CycNum::one(), &r1, &CycNum::from_int(mv), &r2));
        let (c0, cp, cm, c2v) = (c_at(0), c_at(1), c_at(-1), c_at(2));
        let s1 = cp.sub(&c0);
        let sm = cm.sub(&c0);
        let s2 = c2v.sub(&c0);
        let cc2 = s1.add(&sm).mul(&half);
        let t1 = s1.sub(&cc2);
        let t2 = s2.sub(&cc2.scale(&rat_int(4)));
        let sixth = CycNum::from_rat(crate::exactalg::rat(1, 6));
        let cc3 = t2.sub(&t1.scale(&rat_int(2))).mul(&sixth);
        let cc1 = t1.sub(&cc3);
        let a = [a0.clone(), a1.clone()];
        let b = [b0.clone(), b1.clone(), b2.clone()];
        let c = [c0.clone(), cc1, cc2, cc3];
        // Delta(m) = B(m)^2 - 4 A(m) C(m)
        let mut delta = vec![CycNum::zero(); 5];
        for i in 0..3 {
            for j in 0..3 {
                delta[i + j] = delta[i + j].add(&b[i].mul(&b[j]));
            }
        }
        for i in 0..2 {
            for j in 0..4 {
                delta[i + j] = delta[i + j].sub(&a[i].mul(&c[j]).scale(&rat_int(4)));
            }
        }
        if !delta[0].is_zero() {
            // the marked root at m = 0 is forced by tangency; failure means
            // an inconsistent fixture
            return Err(EllipticError::SingularModel);
        }
        let proj = CubicProjection { q: qpt.clone(), r1: r1.clone(), r2, a, b, c, flex };
        // exceptional inputs: points with p1 = 0 that are not Q itself
        for pt in avoid {
            match solve_frame_generic(&[proj.q.clone(), proj.r1.clone(), proj.r2.clone()], pt) {
                Some(sol) => {
                    let is_q = sol[1].is_zero() && sol[2].is_zero();
                    if sol[1].is_zero() && !is_q {
                        continue 'r2;
                    }
                }
                None => continue 'r2,
            }
        }
        let quartic = match QuarticModel::new(
            [delta[0].clone(), delta[1].clone(), delta[2].clone(), delta[3].clone(), delta[4].clone()],
            CycNum::zero(),
        ) {
            Ok(q) => q,
            Err(_) => continue 'r2, // degenerate for this frame; try another
        };
        let (w, qmap) = quartic.to_weierstrass();
        if !w.is_nonsingular() {
            continue 'r2;
        }
        let map = CubicMap { proj, quartic, qmap };
        // the marked point must land on the identity
        assert_eq!(map.forward(&cubic.o), Some(WPoint::Infinity));
        return Ok((w, map));
    }
    Err(EllipticError::SingularFiber(
        "no projection frame produced a nonsingular branch quartic".into(),
    ))
}

/// The first S3-family fibration w^2(a^3 - 3abc + b^2c) + (u^3 + w^4)bc^2
/// + w^2 u^3 c^3, with identity [0:1:0].
pub fn build_e_s3(
    u: &CycNum,
    w: &CycNum,
    avoid: &[[CycNum; 3]],
) -> Result<(CubicModel, WModel<CycNum>, CubicMap), EllipticError> {
    let vs = proj_vars();
    let u3 = u.mul(u).mul(u);
    let w2 = w.mul(w);
    let w4 = w2.mul(&w2);
    let mono = |e: [u32; 3], c: &CycNum| MPoly::monomial(&vs, e.to_vec(), c.clone());
    let f = mono([3, 0, 0], &w2)
        .add(&mono([1, 1, 1], &w2.scale(&rat_int(-3))))
        .add(&mono([0, 2, 1], &w2))
        .add(&mono([0, 1, 2], &u3.add(&w4)))
        .add(&mono([0, 0, 3], &w2.mul(&u3)));
    let o = [CycNum::zero(), CycNum::one(), CycNum::zero()];
    let cubic = CubicModel::new(f, o).map_err(|_| EllipticError::SingularFiber("identity [0:1:0] not on the fiber".into()))?;
    let (wm, map) = cubic_to_weierstrass(&cubic, avoid)?;
    Ok((cubic, wm, map))
}

/// The second S3-family fibration w^2(a^2c + b^3 + ab^2) + (u^3 + w^4)abc
/// + w^2 u^3 ac^2, with identity [1:0:0].
pub fn build_eprime_s3(
    u: &CycNum,
    w: &CycNum,
    avoid: &[[CycNum; 3]],
) -> Result<(CubicModel, WModel<CycNum>, CubicMap), EllipticError> {
    let vs = proj_vars();
    let u3 = u.mul(u).mul(u);
    let w2 = w.mul(w);
    let w4 = w2.mul(&w2);
    let mono = |e: [u32; 3], c: &CycNum| MPoly::monomial(&vs, e.to_vec(), c.clone());
    let f = mono([2, 0, 1], &w2)
        .add(&mono([0, 3, 0], &w2))
        .add(&mono([1, 2, 0], &w2))
        .add(&mono([1, 1, 1], &u3.add(&w4)))
        .add(&mono([1, 0, 2], &w2.mul(&u3)));
    let o = [CycNum::one(), CycNum::zero(), CycNum::zero()];
    let cubic = CubicModel::new(f, o).map_err(|_| EllipticError::SingularFiber("identity [1:0:0] not on the fiber".into()))?;
    let (wm, map) = cubic_to_weierstrass(&cubic, avoid)?;
    Ok((cubic, wm, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat_int;

    fn c(n: i64) -> CycNum {
        CycNum::from_int(n)
    }

    #[test]
    fn e_s3_at_2_1_is_flex_case() {
        let z3t = CycNum::zeta3();
        let avoid = [
            [z3t.sub(&z3t.mul(&z3t)), c(-1), c(1)],
            [z3t.scale(&rat_int(-2)), c(0), c(1)],
            [z3t.mul(&z3t).sub(&z3t), c(-1), c(1)],
            [z3t.mul(&z3t).scale(&rat_int(-2)), c(0), c(1)],
        ];
        let (cubic, w, map) = build_e_s3(&c(2), &c(1), &avoid).unwrap();
        assert!(map.proj.flex, "[0:1:0] is a flex of the first fibration");
        assert!(w.is_nonsingular());
        assert_eq!(map.forward(&cubic.o), Some(WPoint::Infinity));
        // paper point [-2 z3 : 0 : 1] is on the fiber
        let z3 = CycNum::zeta3();
        let p = [z3.scale(&rat_int(-2)), c(0), c(1)];
        assert!(cubic.contains(&p));
        let wp = map.forward(&p).unwrap();
        assert!(w.contains(&wp));
        let back = map.backward(&wp).unwrap();
        assert!(proj_eq(&back, &p));
        // the sign-flipped point from the text is NOT on the fiber
        let bad = [z3.scale(&rat_int(-2)), c(0), c(-1)];
        assert!(!cubic.contains(&bad));
    }

    #[test]
    fn eprime_s3_at_2_1_non_flex() {
        let avoid = [[c(1), c(-1), c(1)], [c(-8), c(0), c(1)]];
        let (cubic, w, map) = build_eprime_s3(&c(2), &c(1), &avoid).unwrap();
        assert!(!map.proj.flex, "[1:0:0] is not a flex of the second fibration");
        assert_eq!(map.forward(&cubic.o), Some(WPoint::Infinity));
        // psi_tau images are on the fiber, including the tangential point [1:-1:0]
        for p in [[c(1), c(-1), c(1)], [c(-8), c(0), c(1)], [c(1), c(-1), c(0)]] {
            assert!(cubic.contains(&p), "{p:?}");
            let wp = map.forward(&p).unwrap();
            assert!(w.contains(&wp), "{p:?}");
        }
    }

    #[test]
    fn degenerate_fiber_rejected() {
        // w = 0 degenerates the first fibration
        assert!(build_e_s3(&c(2), &c(0), &[]).is_err());
    }
}
