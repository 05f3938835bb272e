//! Truncated power-series expansions of one local branch of a plane curve at
//! a smooth point, used to resolve indeterminate images of rational maps
//! (the X = 0 points of the quartic family map to [0:0:0] before
//! resolution).

use super::ModelError;
use crate::exactalg::cyc::CycNum;
use crate::exactalg::mpoly::MPoly;

/// Truncated power series over Q(zeta_24): coeffs[k] multiplies s^k.
#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub coeffs: Vec<CycNum>,
}

impl Series {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![CycNum::zero(); order] }
    }

    pub fn constant(c: CycNum, order: usize) -> Self {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn parameter(order: usize) -> Self {
        let mut s = Series::zero(order);
        if order > 1 {
            s.coeffs[1] = CycNum::one();
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn add(&self, o: &Self) -> Self {
        Series {
            coeffs: self
                .coeffs
                .iter()
                .zip(&o.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = self.order().min(o.order());
        let mut out = vec![CycNum::zero(); n];
        for i in 0..n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..n - i {
                if !o.coeffs[j].is_zero() {
                    out[i + j] = out[i + j].add(&self.coeffs[i].mul(&o.coeffs[j]));
                }
            }
        }
        Series { coeffs: out }
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        Series { coeffs: self.coeffs.iter().map(|a| a.mul(c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Series::constant(CycNum::one(), self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Multiplicative inverse; requires a unit constant term.
    pub fn inv(&self) -> Option<Self> {
        let c0 = self.coeffs.first()?;
        let c0inv = c0.inv().ok()?;
        let n = self.order();
        let mut out = vec![CycNum::zero(); n];
        out[0] = c0inv.clone();
        for k in 1..n {
            // sum_{i=1..k} a_i b_{k-i} + a_0 b_k = 0
            let mut s = CycNum::zero();
            for i in 1..=k {
                s = s.add(&self.coeffs[i].mul(&out[k - i]));
            }
            out[k] = s.neg().mul(&c0inv);
        }
        Some(Series { coeffs: out })
    }
}

/// Evaluate a two-variable polynomial at series arguments.
pub fn eval_mpoly_series(p: &MPoly, a: &Series, b: &Series, order: usize) -> Series {
    let mut acc = Series::zero(order);
    for (e, c) in &p.terms {
        let mut term = Series::constant(c.clone(), order);
        if e[0] > 0 {
            term = term.mul(&a.pow(e[0]));
        }
        if e[1] > 0 {
            term = term.mul(&b.pow(e[1]));
        }
        acc = acc.add(&term);
    }
    acc
}

/// One local branch of a specialized projective curve at a smooth point:
/// an affine chart index (the coordinate scaled to 1), the shifted base
/// point, which affine coordinate is the local parameter, and the series for
/// the dependent coordinate.
#[derive(Clone, Debug)]
pub struct BranchExpansion {
    pub base: [CycNum; 3],
    pub chart: usize,
    /// affine coordinate indices within the chart: (parameter, dependent)
    pub param_coord: usize,
    pub series: Series,
    pub order: usize,
}

impl BranchExpansion {
    /// The two affine chart coordinates of the branch as series in the local
    /// parameter (including the base-point offsets).
    pub fn chart_coords(&self) -> (Series, Series) {
        let order = self.order;
        let par = Series::parameter(order);
        let dep = self.series.clone();
        if self.param_coord == 0 {
            (par, dep)
        } else {
            (dep, par)
        }
    }
}

/// Expand the unique branch of `f_chart(A, B) = 0` (a specialized curve in
/// one affine chart, variables [A, B]) at the origin-shifted smooth point.
/// `f_chart` must vanish at (a0, b0). The dependent variable is chosen by a
/// nonvanishing partial derivative. Newton iteration doubles correct digits;
/// the residual is asserted to vanish to the truncation order.
pub fn expand_branch(
    f_chart: &MPoly,
    a0: &CycNum,
    b0: &CycNum,
    order: usize,
) -> Result<(usize, Series), ModelError> {
    // shift to the origin
    let vs = &f_chart.vars;
    let a = MPoly::var(vs, &vs[0]).unwrap().add(&MPoly::constant(vs, a0.clone()));
    let b = MPoly::var(vs, &vs[1]).unwrap().add(&MPoly::constant(vs, b0.clone()));
    let shifted = f_chart.subst(&[a, b]);
    if !shifted
        .eval(&[CycNum::zero(), CycNum::zero()])
        .is_zero()
    {
        return Err(ModelError::PointOffCurve);
    }
    let fa = shifted.partial(0).eval(&[CycNum::zero(), CycNum::zero()]);
    let fb = shifted.partial(1).eval(&[CycNum::zero(), CycNum::zero()]);
    let (param_coord, dep_idx) = if !fb.is_zero() {
        (0usize, 1usize)
    } else if !fa.is_zero() {
        (1usize, 0usize)
    } else {
        return Err(ModelError::SingularPoint);
    };
    // Newton iteration for the dependent coordinate as a series in the
    // parameter, starting from 0.
    let dfd = shifted.partial(dep_idx);
    let mut dep = Series::zero(order);
    let par = Series::parameter(order);
    for _ in 0..order + 1 {
        let (av, bv) = if param_coord == 0 {
            (par.clone(), dep.clone())
        } else {
            (dep.clone(), par.clone())
        };
        let val = eval_mpoly_series(&shifted, &av, &bv, order);
        let dval = eval_mpoly_series(&dfd, &av, &bv, order);
        let dinv = dval.inv().ok_or(ModelError::SingularPoint)?;
        let delta = val.mul(&dinv);
        if delta.coeffs.iter().all(|c| c.is_zero()) {
            break;
        }
        dep = dep.add(&delta.scale(&CycNum::from_int(-1)));
    }
    // residual must vanish to the truncation order
    let (av, bv) = if param_coord == 0 {
        (par.clone(), dep.clone())
    } else {
        (dep.clone(), par.clone())
    };
    let res = eval_mpoly_series(&shifted, &av, &bv, order);
    if res.coeffs.iter().any(|c| !c.is_zero()) {
        return Err(ModelError::BranchResidual(order));
    }
    Ok((param_coord, dep))
}
