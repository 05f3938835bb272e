//! Curve automorphisms as coordinate substitution rules, with machine
//! verification of the declared order, curve preservation, and group
//! relations, plus fixed-point computation across charts.

use super::curves::{compose_ratio, ratio_eq, AffineChart, AffineCurve, ChartPoint};
use super::ModelError;
use crate::exactalg::cyc::CycNum;
use crate::exactalg::mpoly::{MPoly, MRatio, Vars};
use crate::exactalg::poly::Poly;
use crate::exactalg::ratfn::CPoly;

/// An automorphism of an affine curve, given by substitution rules for the
/// primary-chart coordinates (rational maps over [x, y, params...]).
#[derive(Clone, Debug)]
pub struct CurveAutomorphism {
    pub name: String,
    pub declared_order: u32,
    pub subst: [MRatio; 2],
    pub vars: Vars,
}

#[derive(Debug, Clone)]
pub struct AutReport {
    pub preserves_curve: bool,
    pub computed_order: Option<u32>,
    pub order_matches: bool,
}

/// Compose substitution rules: (a after b)(p) = a(b(p)).
pub fn compose_subst(a: &[MRatio; 2], b: &[MRatio; 2], vars: &Vars) -> Option<[MRatio; 2]> {
    let apply = |expr: &MRatio| -> Option<MRatio> {
        let mut images = vec![
            (b[0].num.clone(), b[0].den.clone()),
            (b[1].num.clone(), b[1].den.clone()),
        ];
        for name in vars.iter().skip(2) {
            images.push((MPoly::var(vars, name).ok()?, MPoly::one(vars)));
        }
        let (nn, nd) = expr.num.subst_rational(&images).ok()?;
        let (dn, dd) = expr.den.subst_rational(&images).ok()?;
        if dn.is_zero() {
            return None;
        }
        Some(MRatio { num: nn.mul(&dd), den: nd.mul(&dn) }.cancel_monomial_content())
    };
    Some([apply(&a[0])?, apply(&a[1])?])
}

pub fn identity_subst(vars: &Vars) -> [MRatio; 2] {
    let one = MPoly::one(vars);
    [
        MRatio { num: MPoly::var(vars, &vars[0]).unwrap(), den: one.clone() },
        MRatio { num: MPoly::var(vars, &vars[1]).unwrap(), den: one },
    ]
}

pub fn subst_eq(a: &[MRatio; 2], b: &[MRatio; 2]) -> bool {
    ratio_eq(&a[0], &b[0]) && ratio_eq(&a[1], &b[1])
}

impl CurveAutomorphism {
    pub fn is_identity(&self) -> bool {
        subst_eq(&self.subst, &identity_subst(&self.vars))
    }
}

/// Checks that the substitution preserves the defining ideal (the cleared
/// substituted polynomial is divisible by the defining polynomial), computes
/// the order by iterated composition (capped at `declared_order`), and
/// reports whether it matches.
pub fn verify_automorphism(curve: &AffineCurve, aut: &CurveAutomorphism) -> AutReport {
    let chart = &curve.charts[0];
    let preserves = preserves_chart(chart, &aut.subst);
    let mut computed_order = None;
    let ident = identity_subst(&aut.vars);
    let mut acc = aut.subst.clone();
    for k in 1..=aut.declared_order.max(1) * 2 {
        if subst_eq(&acc, &ident) {
            computed_order = Some(k);
            break;
        }
        match compose_subst(&aut.subst, &acc, &aut.vars) {
            Some(next) => acc = next,
            None => break,
        }
    }
    AutReport {
        preserves_curve: preserves,
        computed_order,
        order_matches: computed_order == Some(aut.declared_order),
    }
}

fn preserves_chart(chart: &AffineChart, subst: &[MRatio; 2]) -> bool {
    let mut images = vec![
        (subst[0].num.clone(), subst[0].den.clone()),
        (subst[1].num.clone(), subst[1].den.clone()),
    ];
    for name in chart.vars.iter().skip(2) {
        match MPoly::var(&chart.vars, name) {
            Ok(v) => images.push((v, MPoly::one(&chart.vars))),
            Err(_) => return false,
        }
    }
    match chart.f.subst_rational(&images) {
        Ok((num, _den)) => chart.f.divides(&num),
        Err(_) => false,
    }
}

/// Conjugate a primary-chart substitution into another chart:
/// from_chart = (primary -> chart) after subst after (chart -> primary).
pub fn subst_in_chart(
    curve: &AffineCurve,
    aut: &CurveAutomorphism,
    chart_idx: usize,
) -> Option<[MRatio; 2]> {
    if chart_idx == 0 {
        return Some(aut.subst.clone());
    }
    let chart = &curve.charts[chart_idx];
    // primary coordinates of the moved point: subst composed with to_primary
    let moved = compose_subst(&aut.subst, &chart.to_primary, &chart.vars)?;
    // express chart coordinates of the moved point: chart-from-primary is the
    // inverse of to_primary; for the models used here the transition is an
    // involution on its domain (x = 1/xh), so reuse to_primary's shape by
    // solving: we require the transition to be given explicitly as an
    // involutive pair, which `AffineChart::to_primary` is for these families.
    compose_subst(&chart.to_primary, &moved, &chart.vars)
}

/// All fixed points of a non-identity automorphism across charts, with
/// on-curve membership verified symbolically in the parameters. Requires
/// the substitution to be coordinate-split (each image depends on its own
/// coordinate only) in every chart; this covers the dihedral actions here.
pub fn fixed_points(
    curve: &AffineCurve,
    aut: &CurveAutomorphism,
) -> Result<Vec<ChartPoint>, ModelError> {
    if aut.is_identity() {
        return Err(ModelError::IdentityAutomorphism);
    }
    let mut found: Vec<ChartPoint> = vec![];
    for (ci, chart) in curve.charts.iter().enumerate() {
        let subst = match subst_in_chart(curve, aut, ci) {
            Some(s) => s,
            None => continue,
        };
        let xs = match coordinate_equation_roots(&subst[0], 0, &chart.vars)? {
            Some(roots) => roots,
            None => continue,
        };
        let ys = match coordinate_equation_roots(&subst[1], 1, &chart.vars)? {
            Some(roots) => roots,
            None => continue,
        };
        for x0 in &xs {
            for y0 in &ys {
                let pvars = param_vars(&chart.vars);
                let coords = [
                    MRatio::poly(MPoly::constant(&pvars, x0.clone())),
                    MRatio::poly(MPoly::constant(&pvars, y0.clone())),
                ];
                let pt = ChartPoint { chart: ci, coords };
                if curve.on_curve(&pt).unwrap_or(false) && is_fixed(&subst, &pt, &chart.vars) {
                    if !found.iter().any(|q| curve.points_equal(q, &pt)) {
                        found.push(pt);
                    }
                }
            }
        }
    }
    Ok(found)
}

fn param_vars(chart_vars: &Vars) -> Vars {
    std::sync::Arc::new(chart_vars.iter().skip(2).cloned().collect())
}

fn is_fixed(subst: &[MRatio; 2], pt: &ChartPoint, chart_vars: &Vars) -> bool {
    for i in 0..2 {
        match compose_ratio(&subst[i], &pt.coords, chart_vars) {
            Some(img) => {
                if !ratio_eq(&img, &pt.coords[i]) {
                    return false;
                }
            }
            None => return false,
        }
    }
    true
}

/// Solve coord = image(coord) when the image involves only that coordinate
/// and no parameters: returns None (not an error) when the image involves
/// the other coordinate or parameters, Some(roots) otherwise.
fn coordinate_equation_roots(
    image: &MRatio,
    coord_idx: usize,
    chart_vars: &Vars,
) -> Result<Option<Vec<CycNum>>, ModelError> {
    let other = 1 - coord_idx;
    let depends_on = |p: &MPoly, idx: usize| p.degree_in(idx).unwrap_or(0) > 0;
    for p in [&image.num, &image.den] {
        if depends_on(p, other) {
            return Ok(None);
        }
        for k in 2..chart_vars.len() {
            if depends_on(p, k) {
                return Ok(None);
            }
        }
    }
    // x * den(x) - num(x) = 0 as a univariate polynomial
    let x = MPoly::var(chart_vars, &chart_vars[coord_idx]).unwrap();
    let eq = x.mul(&image.den).sub(&image.num);
    if eq.is_zero() {
        // the whole coordinate line is fixed; no isolated solutions to
        // enumerate in this chart
        return Ok(None);
    }
    let uni = eq
        .to_univariate(coord_idx, "u")
        .expect("coordinate-split equation");
    Ok(Some(bounded_roots(&uni)?))
}

/// Roots of a univariate cyclotomic polynomial for the small shapes the
/// fixed-point equations produce: exact for degree <= 2 (the quadratic
/// case requires the discriminant square root to exist in the recognized
/// radicand shapes); higher degrees first strip candidate roots of unity.
pub fn bounded_roots(p: &CPoly) -> Result<Vec<CycNum>, ModelError> {
    let mut f = p.clone();
    let mut roots = vec![];
    if f.is_zero() {
        return Err(ModelError::RootSearchIncomplete);
    }
    // strip small candidate roots to lower the degree
    let mut candidates: Vec<CycNum> = vec![CycNum::zero()];
    for k in 0..24i64 {
        candidates.push(CycNum::zeta24_pow(k));
        candidates.push(CycNum::zeta24_pow(k).neg());
    }
    for n in [2i64, -2, 3, -3] {
        candidates.push(CycNum::from_int(n));
    }
    let mut progress = true;
    while progress && f.degree().map_or(false, |d| d > 2) {
        progress = false;
        for cand in &candidates {
            if f.eval(cand).is_zero() {
                let lin = Poly::new(&f.var, vec![cand.neg(), CycNum::one()]);
                f = f.exact_div(&lin).expect("verified root");
                roots.push(cand.clone());
                progress = true;
                break;
            }
        }
    }
    match f.degree() {
        None => {}
        Some(0) => {}
        Some(1) => {
            let a = f.coeff(1).unwrap();
            let b = f.coeff(0).unwrap();
            roots.push(b.neg().mul(&a.inv()?));
        }
        Some(2) => {
            let a = f.coeff(2).unwrap().clone();
            let b = f.coeff(1).unwrap().clone();
            let c = f.coeff(0).unwrap().clone();
            let disc = b.mul(&b).sub(&a.mul(&c).scale(&crate::exactalg::rat_int(4)));
            let sq = disc
                .sqrt_in_field()
                .ok_or(ModelError::RootSearchIncomplete)?;
            let half_inv = a.scale(&crate::exactalg::rat_int(2)).inv()?;
            roots.push(b.neg().add(&sq).mul(&half_inv));
            if !sq.is_zero() {
                roots.push(b.neg().sub(&sq).mul(&half_inv));
            }
        }
        Some(_) => return Err(ModelError::RootSearchIncomplete),
    }
    Ok(roots)
}
