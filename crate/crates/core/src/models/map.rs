//! Rational maps of projective plane curves (the quotient maps of the
//! quartic family), projective-linear automorphisms, indeterminacy
//! resolution through branch expansions, and sampled invariance checks over
//! finite fields.

use super::branch::{eval_mpoly_series, expand_branch, BranchExpansion, Series};
use super::ModelError;
use crate::exactalg::cyc::CycNum;
use crate::exactalg::fq::{FqContext, FqElem};
use crate::exactalg::mpoly::{MPoly, Vars};

/// A rational map P^2 -> P^2: three homogeneous polynomials of equal degree
/// in [X, Y, Z] (specialized coefficients).
#[derive(Clone, Debug)]
pub struct RationalMapP2 {
    pub name: String,
    pub comps: [MPoly; 3],
}

/// A projective-linear automorphism, acting by X_i -> sum_j m[i][j] X_j.
#[derive(Clone, Debug)]
pub struct ProjLinearAut {
    pub name: String,
    pub declared_order: u32,
    pub m: [[CycNum; 3]; 3],
}

impl ProjLinearAut {
    pub fn apply(&self, p: &[CycNum; 3]) -> [CycNum; 3] {
        std::array::from_fn(|i| {
            self.m[i][0]
                .mul(&p[0])
                .add(&self.m[i][1].mul(&p[1]))
                .add(&self.m[i][2].mul(&p[2]))
        })
    }

    fn compose(&self, o: &[[CycNum; 3]; 3]) -> [[CycNum; 3]; 3] {
        std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                let mut s = CycNum::zero();
                for k in 0..3 {
                    s = s.add(&self.m[i][k].mul(&o[k][j]));
                }
                s
            })
        })
    }

    /// Projective order: least k with M^k a scalar matrix.
    pub fn projective_order(&self, cap: u32) -> Option<u32> {
        let mut acc = self.m.clone();
        for k in 1..=cap {
            if is_scalar(&acc) {
                return Some(k);
            }
            acc = self.compose(&acc);
        }
        None
    }

    /// Substitute into a curve polynomial (any trailing parameter variables
    /// are fixed): preserved iff the composed polynomial is a constant
    /// multiple of the original.
    pub fn preserves(&self, f: &MPoly) -> bool {
        let vs = &f.vars;
        let mut images: Vec<MPoly> = (0..3)
            .map(|i| {
                let mut acc = MPoly::zero(vs);
                for j in 0..3 {
                    let v = MPoly::var(vs, &vs[j]).unwrap();
                    acc = acc.add(&v.scale(&self.m[i][j]));
                }
                acc
            })
            .collect();
        for name in vs.iter().skip(3) {
            images.push(MPoly::var(vs, name).unwrap());
        }
        let g = f.subst(&images);
        match g.exact_div(f) {
            Some(q) => q.is_constant().is_some(),
            None => false,
        }
    }
}

fn is_scalar(m: &[[CycNum; 3]; 3]) -> bool {
    let d = &m[0][0];
    if d.is_zero() {
        return false;
    }
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                if m[i][j] != *d {
                    return false;
                }
            } else if !m[i][j].is_zero() {
                return false;
            }
        }
    }
    true
}

/// Result of applying a rational map at a point: directly, or resolved
/// through a branch expansion at an indeterminate point.
#[derive(Clone, Debug)]
pub enum MapImage {
    Direct([CycNum; 3]),
    Resolved([CycNum; 3], BranchExpansion),
}

impl MapImage {
    pub fn point(&self) -> &[CycNum; 3] {
        match self {
            MapImage::Direct(p) => p,
            MapImage::Resolved(p, _) => p,
        }
    }
}

/// Apply a rational map to a point of the specialized curve `f_spec`. When
/// all three components vanish, substitute a branch expansion of the curve
/// at the point and take the leading coefficient vector; the truncation
/// order is raised up to `max_order` before giving up.
pub fn apply_map(
    map: &RationalMapP2,
    p: &[CycNum; 3],
    f_spec: &MPoly,
    max_order: usize,
) -> Result<MapImage, ModelError> {
    if !f_spec.subst(&point_images(&map.comps[0].vars, p)).is_zero() {
        return Err(ModelError::PointOffCurve);
    }
    let direct: [CycNum; 3] = std::array::from_fn(|i| {
        map.comps[i]
            .subst(&point_images(&map.comps[i].vars, p))
            .is_constant()
            .expect("specialized evaluation")
    });
    if direct.iter().any(|c| !c.is_zero()) {
        return Ok(MapImage::Direct(normalize(&direct)));
    }
    // indeterminate: resolve by a local branch
    let chart = (0..3)
        .rev()
        .find(|&i| !p[i].is_zero())
        .expect("projective point is nonzero");
    let scale = p[chart].inv().expect("nonzero chart coordinate");
    let scaled: [CycNum; 3] = std::array::from_fn(|i| p[i].mul(&scale));
    let (ai, bi) = match chart {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    let cv = crate::exactalg::mpoly::vars(&["A", "B"]);
    let mut chart_images = vec![MPoly::one(&cv); 3];
    chart_images[ai] = MPoly::var(&cv, "A").unwrap();
    chart_images[bi] = MPoly::var(&cv, "B").unwrap();
    let f_chart = f_spec.subst(&chart_images);
    let mut order = 4usize;
    loop {
        let (param_coord, series) = expand_branch(&f_chart, &scaled[ai], &scaled[bi], order)?;
        let exp = BranchExpansion {
            base: scaled.clone(),
            chart,
            param_coord,
            series: series.clone(),
            order,
        };
        // series for the three projective coordinates along the branch
        let (sa, sb) = {
            let par = Series::parameter(order);
            let dep = series;
            if param_coord == 0 {
                (
                    par.add(&Series::constant(scaled[ai].clone(), order)),
                    dep.add(&Series::constant(scaled[bi].clone(), order)),
                )
            } else {
                (
                    dep.add(&Series::constant(scaled[ai].clone(), order)),
                    par.add(&Series::constant(scaled[bi].clone(), order)),
                )
            }
        };
        let comp_series: Vec<Series> = (0..3)
            .map(|i| {
                let g = map.comps[i].subst(&chart_images);
                eval_mpoly_series(&g, &sa, &sb, order)
            })
            .collect();
        let val = comp_series
            .iter()
            .filter_map(|s| s.valuation())
            .min();
        match val {
            Some(v) => {
                let lead: [CycNum; 3] =
                    std::array::from_fn(|i| comp_series[i].coeffs[v].clone());
                return Ok(MapImage::Resolved(normalize(&lead), exp));
            }
            None => {
                order *= 2;
                if order > max_order {
                    return Err(ModelError::UnresolvedIndeterminacy(map.name.clone()));
                }
            }
        }
    }
}

fn point_images(vs: &Vars, p: &[CycNum; 3]) -> Vec<MPoly> {
    let cv = crate::exactalg::mpoly::vars(&[]);
    let _ = vs;
    vec![
        MPoly::constant(&cv, p[0].clone()),
        MPoly::constant(&cv, p[1].clone()),
        MPoly::constant(&cv, p[2].clone()),
    ]
}

fn normalize(p: &[CycNum; 3]) -> [CycNum; 3] {
    crate::elliptic::cubic::normalize_proj(p).expect("nonzero projective point")
}

/// Reduce an MPoly's coefficients and evaluate at finite-field projective
/// coordinates.
pub fn eval_mpoly_fq(
    p: &MPoly,
    ctx: &FqContext,
    values: &[FqElem],
) -> Result<FqElem, ModelError> {
    let mut acc = ctx.zero();
    for (e, c) in &p.terms {
        let mut term = ctx.reduce_cyc(c)?;
        for (i, &exp) in e.iter().enumerate() {
            for _ in 0..exp {
                term = ctx.mul(term, values[i]);
            }
        }
        acc = ctx.add(acc, term);
    }
    Ok(acc)
}

/// Outcome of the sampled quotient-invariance check map(aut(P)) == map(P).
#[derive(Debug, Clone)]
pub enum InvarianceOutcome {
    Holds { samples: usize },
    FailsAt { witness: [u64; 3] },
}

/// Check map(aut(P)) = map(P) projectively on sampled points of the reduced
/// curve. Points where either image is identically zero (indeterminacy mod
/// p) are skipped; the check needs at least one usable sample.
pub fn invariance_check(
    map: &RationalMapP2,
    aut: &ProjLinearAut,
    f_spec: &MPoly,
    ctx: &FqContext,
    samples: usize,
) -> Result<InvarianceOutcome, ModelError> {
    let p = ctx.p();
    if ctx.k() != 1 {
        return Err(ModelError::UnsupportedContext);
    }
    let mut used = 0usize;
    let muts: Vec<[u64; 3]> = {
        // affine chart Z = 1 plus the line at infinity
        let mut pts = vec![];
        for x in 0..p {
            for y in 0..p {
                pts.push([x, y, 1]);
            }
        }
        for x in 0..p {
            pts.push([x, 1, 0]);
        }
        pts.push([1, 0, 0]);
        pts
    };
    let maut: [[FqElem; 3]; 3] = {
        let mut out = [[ctx.zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                out[i][j] = ctx.reduce_cyc(&aut.m[i][j])?;
            }
        }
        out
    };
    for cand in muts {
        if used >= samples {
            break;
        }
        let v = [ctx.from_u64(cand[0]), ctx.from_u64(cand[1]), ctx.from_u64(cand[2])];
        if eval_mpoly_fq(f_spec, ctx, &v)? != ctx.zero() {
            continue;
        }
        let av: [FqElem; 3] = std::array::from_fn(|i| {
            let mut s = ctx.zero();
            for j in 0..3 {
                s = ctx.add(s, ctx.mul(maut[i][j], v[j]));
            }
            s
        });
        let img = |w: &[FqElem; 3]| -> Result<Option<[FqElem; 3]>, ModelError> {
            let out: [FqElem; 3] = [
                eval_mpoly_fq(&map.comps[0], ctx, w)?,
                eval_mpoly_fq(&map.comps[1], ctx, w)?,
                eval_mpoly_fq(&map.comps[2], ctx, w)?,
            ];
            if out.iter().all(|c| *c == ctx.zero()) {
                Ok(None)
            } else {
                Ok(Some(out))
            }
        };
        let (ia, ib) = match (img(&v)?, img(&av)?) {
            (Some(a), Some(b)) => (a, b),
            _ => continue, // indeterminate mod p; skipped
        };
        let cross_ok = {
            let cr = |i: usize, j: usize| {
                ctx.sub(ctx.mul(ia[i], ib[j]), ctx.mul(ia[j], ib[i])) == ctx.zero()
            };
            cr(0, 1) && cr(0, 2) && cr(1, 2)
        };
        if !cross_ok {
            return Ok(InvarianceOutcome::FailsAt { witness: cand });
        }
        used += 1;
    }
    if used == 0 {
        return Err(ModelError::NoPointsFound);
    }
    Ok(InvarianceOutcome::Holds { samples: used })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::mpoly::vars;
    use crate::exactalg::rat_int;
    use crate::fixtures::parse_poly;

    fn s3_fiber() -> MPoly {
        let vs = vars(&["X", "Y", "Z"]);
        parse_poly("X*(Y^3+Z^3)+Y^2*Z^2+9*X^2*Y*Z+8*X^4", &vs).unwrap()
    }

    fn psi(i: u32) -> RationalMapP2 {
        let vs = vars(&["X", "Y", "Z"]);
        let z3 = CycNum::zeta3().pow(i as i64).unwrap();
        let z32 = CycNum::zeta3().pow(2 * i as i64).unwrap();
        let x = MPoly::var(&vs, "X").unwrap();
        let y = MPoly::var(&vs, "Y").unwrap();
        let z = MPoly::var(&vs, "Z").unwrap();
        RationalMapP2 {
            name: format!("psi_{i}"),
            comps: [
                x.mul(&y.scale(&z3).add(&z.scale(&z32))),
                y.mul(&z),
                x.mul(&x),
            ],
        }
    }

    #[test]
    fn psi1_resolves_x_zero_points_to_identity() {
        let f = s3_fiber();
        let m = psi(1);
        let o_y = [CycNum::zero(), CycNum::one(), CycNum::zero()];
        let img = apply_map(&m, &o_y, &f, 16).unwrap();
        assert!(matches!(img, MapImage::Resolved(..)));
        assert!(crate::elliptic::cubic::proj_eq(
            img.point(),
            &[CycNum::zero(), CycNum::one(), CycNum::zero()]
        ));
        let o_z = [CycNum::zero(), CycNum::zero(), CycNum::one()];
        let img2 = apply_map(&m, &o_z, &f, 16).unwrap();
        assert!(crate::elliptic::cubic::proj_eq(
            img2.point(),
            &[CycNum::zero(), CycNum::one(), CycNum::zero()]
        ));
    }

    #[test]
    fn psi1_direct_image_of_section() {
        // psi_1(A) = [(z3 - z3^2) : -1 : 1] at (u, w) = (2, 1), A = [1:1:-1]
        let f = s3_fiber();
        let m = psi(1);
        let a = [CycNum::one(), CycNum::one(), CycNum::from_int(-1)];
        let img = apply_map(&m, &a, &f, 8).unwrap();
        let z3 = CycNum::zeta3();
        let expect = [z3.sub(&z3.mul(&z3)), CycNum::from_int(-1), CycNum::one()];
        assert!(crate::elliptic::cubic::proj_eq(img.point(), &expect));
    }

    #[test]
    fn psi_tau_resolves_001_to_1_minus1_0() {
        let f = s3_fiber();
        let vs = vars(&["X", "Y", "Z"]);
        let x = MPoly::var(&vs, "X").unwrap();
        let y = MPoly::var(&vs, "Y").unwrap();
        let z = MPoly::var(&vs, "Z").unwrap();
        let m = RationalMapP2 {
            name: "psi_tau".into(),
            comps: [y.pow(3), x.mul(&y).mul(&z), x.pow(3)],
        };
        let img = apply_map(&m, &[CycNum::zero(), CycNum::zero(), CycNum::one()], &f, 16).unwrap();
        assert!(crate::elliptic::cubic::proj_eq(
            img.point(),
            &[CycNum::one(), CycNum::from_int(-1), CycNum::zero()]
        ));
        // [0:1:0] maps directly to [1:0:0]
        let img2 = apply_map(&m, &[CycNum::zero(), CycNum::one(), CycNum::zero()], &f, 16).unwrap();
        assert!(matches!(img2, MapImage::Direct(..)));
        assert!(crate::elliptic::cubic::proj_eq(
            img2.point(),
            &[CycNum::one(), CycNum::zero(), CycNum::zero()]
        ));
    }

    #[test]
    fn sigma1_preserves_fiber_and_has_order_2() {
        let f = s3_fiber();
        let z3 = CycNum::zeta3();
        let z32 = z3.mul(&z3);
        let zero = CycNum::zero();
        let aut = ProjLinearAut {
            name: "sigma_1".into(),
            declared_order: 2,
            m: [
                [CycNum::one(), zero.clone(), zero.clone()],
                [zero.clone(), zero.clone(), z3.clone()],
                [zero.clone(), z32.clone(), zero.clone()],
            ],
        };
        assert!(aut.preserves(&f));
        assert_eq!(aut.projective_order(6), Some(2));
        let _ = rat_int(0);
    }

    #[test]
    fn invariance_of_psi1_under_sigma1() {
        let f = s3_fiber();
        let m = psi(1);
        let z3 = CycNum::zeta3();
        let z32 = z3.mul(&z3);
        let zero = CycNum::zero();
        let sigma1 = ProjLinearAut {
            name: "sigma_1".into(),
            declared_order: 2,
            m: [
                [CycNum::one(), zero.clone(), zero.clone()],
                [zero.clone(), zero.clone(), z3.clone()],
                [zero.clone(), z32.clone(), zero.clone()],
            ],
        };
        let ctx = FqContext::new(73).unwrap();
        let out = invariance_check(&m, &sigma1, &f, &ctx, 50).unwrap();
        assert!(matches!(out, InvarianceOutcome::Holds { .. }));
        // sigma_2 is NOT the deck transformation of psi_1
        let sigma2 = ProjLinearAut {
            name: "sigma_2".into(),
            declared_order: 2,
            m: [
                [CycNum::one(), zero.clone(), zero.clone()],
                [zero.clone(), zero.clone(), z32.clone()],
                [zero.clone(), z3.clone(), zero.clone()],
            ],
        };
        let out2 = invariance_check(&m, &sigma2, &f, &ctx, 50).unwrap();
        assert!(matches!(out2, InvarianceOutcome::FailsAt { .. }));
    }
}


#[cfg(test)]
mod sampling_tests {
    use super::*;
    use crate::exactalg::mpoly::vars;
    use crate::fixtures::parse_poly;

    #[test]
    fn pointless_curve_reports_no_points() {
        // the Fermat quartic has no projective points over F_5 (fourth
        // powers there are 0 or 1, and no three sum to 0 nontrivially)
        let vs = vars(&["X", "Y", "Z"]);
        let f = parse_poly("X^4 + Y^4 + Z^4", &vs).unwrap();
        let x = MPoly::var(&vs, "X").unwrap();
        let y = MPoly::var(&vs, "Y").unwrap();
        let z = MPoly::var(&vs, "Z").unwrap();
        let m = RationalMapP2 { name: "id".into(), comps: [x, y, z] };
        let aut = ProjLinearAut {
            name: "id".into(),
            declared_order: 1,
            m: [
                [CycNum::one(), CycNum::zero(), CycNum::zero()],
                [CycNum::zero(), CycNum::one(), CycNum::zero()],
                [CycNum::zero(), CycNum::zero(), CycNum::one()],
            ],
        };
        let ctx = FqContext::new(5).unwrap();
        // residue degree 2 is rejected up front
        assert!(matches!(
            invariance_check(&m, &aut, &f, &ctx, 10),
            Err(ModelError::UnsupportedContext)
        ));
        let ctx73 = FqContext::new(73).unwrap();
        // over F_73 the quartic has points, so use a degree-1 prime where the
        // pointless situation is realized instead: scan tells us 5 works only
        // with k = 1 arithmetic, so check through the prime-field context
        let ctx5 = FqContext::new_prime_field(5).unwrap();
        assert!(matches!(
            invariance_check(&m, &aut, &f, &ctx5, 10),
            Err(ModelError::NoPointsFound)
        ));
        let _ = ctx73;
    }
}
