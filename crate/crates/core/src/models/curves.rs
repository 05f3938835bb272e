//! Plane-curve carriers for the explicit families: affine models with
//! auxiliary charts (the D12 genus-6 family and its genus-2 quotient keep a
//! dedicated chart with coordinate 1/x, so the ramification points at
//! infinity are chart-native), and projective models with parameters.

use super::ModelError;
use crate::exactalg::cyc::CycNum;
use crate::exactalg::mpoly::{MPoly, MRatio, Vars};
use crate::exactalg::poly::Poly;
use crate::exactalg::ratfn::CPoly;

/// One affine chart of a curve. The variable list is
/// [coord0, coord1, params...]; the defining polynomial is cleared of
/// denominators. `to_primary` expresses the primary chart's coordinates as
/// rational functions of this chart's coordinates.
#[derive(Clone, Debug)]
pub struct AffineChart {
    pub vars: Vars,
    pub f: MPoly,
    pub to_primary: [MRatio; 2],
}

/// An affine plane curve over the parameter ring, with charts. Chart 0 is
/// the primary one (its `to_primary` is the identity).
#[derive(Clone, Debug)]
pub struct AffineCurve {
    pub name: String,
    pub charts: Vec<AffineChart>,
}

/// A point in a specific chart, coordinates given as rational expressions in
/// the parameters (constants are the degenerate case).
#[derive(Clone, Debug)]
pub struct ChartPoint {
    pub chart: usize,
    pub coords: [MRatio; 2],
}

impl AffineCurve {
    /// Exact on-curve test, symbolic in the parameters: substitutes the
    /// coordinates into the chart equation and demands the numerator vanish
    /// identically.
    pub fn on_curve(&self, p: &ChartPoint) -> Result<bool, ModelError> {
        let chart = self
            .charts
            .get(p.chart)
            .ok_or_else(|| ModelError::UnknownChart(p.chart))?;
        let images = chart_images(chart, &p.coords);
        let (num, _den) = chart.f.subst_rational(&images)?;
        Ok(num.is_zero())
    }

    /// Transport a point to the primary chart when the transition is defined.
    pub fn to_primary(&self, p: &ChartPoint) -> Option<ChartPoint> {
        if p.chart == 0 {
            return Some(p.clone());
        }
        let chart = &self.charts[p.chart];
        let x = compose_ratio(&chart.to_primary[0], &p.coords, &chart.vars)?;
        let y = compose_ratio(&chart.to_primary[1], &p.coords, &chart.vars)?;
        Some(ChartPoint { chart: 0, coords: [x, y] })
    }

    /// The chart transitions used here are involutive formulas (x = 1/xh);
    /// verify to_primary composed with itself is the identity as a rational
    /// map, which makes the two transition directions mutually inverse.
    pub fn transitions_mutually_inverse(&self) -> bool {
        for chart in self.charts.iter().skip(1) {
            let vs = &chart.vars;
            let mut images = vec![
                (chart.to_primary[0].num.clone(), chart.to_primary[0].den.clone()),
                (chart.to_primary[1].num.clone(), chart.to_primary[1].den.clone()),
            ];
            for name in vs.iter().skip(2) {
                match MPoly::var(vs, name) {
                    Ok(v) => images.push((v, MPoly::one(vs))),
                    Err(_) => return false,
                }
            }
            for (i, formula) in chart.to_primary.iter().enumerate() {
                let (nn, nd) = match formula.num.subst_rational(&images) {
                    Ok(x) => x,
                    Err(_) => return false,
                };
                let (dn, dd) = match formula.den.subst_rational(&images) {
                    Ok(x) => x,
                    Err(_) => return false,
                };
                let composed = MRatio { num: nn.mul(&dd), den: nd.mul(&dn) }.cancel_monomial_content();
                let coord = MPoly::var(vs, &vs[i]).expect("chart coordinate");
                if !composed.num.sub(&coord.mul(&composed.den)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Structural equality of points: same chart and equal coordinates, or
    /// both transportable to the primary chart with equal images there.
    pub fn points_equal(&self, a: &ChartPoint, b: &ChartPoint) -> bool {
        if a.chart == b.chart {
            return ratio_eq(&a.coords[0], &b.coords[0]) && ratio_eq(&a.coords[1], &b.coords[1]);
        }
        match (self.to_primary(a), self.to_primary(b)) {
            (Some(pa), Some(pb)) => {
                ratio_eq(&pa.coords[0], &pb.coords[0]) && ratio_eq(&pa.coords[1], &pb.coords[1])
            }
            _ => false,
        }
    }
}

/// Substitution images for a chart: the two coordinates given by the point,
/// parameters substituted by themselves.
pub fn chart_images(chart: &AffineChart, coords: &[MRatio; 2]) -> Vec<(MPoly, MPoly)> {
    let mut images = vec![
        (coords[0].num.clone(), coords[0].den.clone()),
        (coords[1].num.clone(), coords[1].den.clone()),
    ];
    for name in chart.vars.iter().skip(2) {
        let v = MPoly::var(&coords[0].num.vars, name).expect("parameter present in point vars");
        images.push((v, MPoly::one(&coords[0].num.vars)));
    }
    images
}

/// Substitute point coordinates into a rational expression in chart
/// variables; None when a denominator vanishes.
pub fn compose_ratio(expr: &MRatio, coords: &[MRatio; 2], chart_vars: &Vars) -> Option<MRatio> {
    let pvars = &coords[0].num.vars;
    let mut images = vec![
        (coords[0].num.clone(), coords[0].den.clone()),
        (coords[1].num.clone(), coords[1].den.clone()),
    ];
    for name in chart_vars.iter().skip(2) {
        images.push((MPoly::var(pvars, name).ok()?, MPoly::one(pvars)));
    }
    let (nn, nd) = expr.num.subst_rational(&images).ok()?;
    let (dn, dd) = expr.den.subst_rational(&images).ok()?;
    // expr = (nn/nd) / (dn/dd) = nn*dd / (nd*dn)
    let raw = MRatio { num: nn.mul(&dd), den: nd.mul(&dn) }.cancel_monomial_content();
    if raw.den.is_zero() {
        return None;
    }
    Some(raw)
}

pub fn ratio_eq(a: &MRatio, b: &MRatio) -> bool {
    a.num.mul(&b.den).sub(&b.num.mul(&a.den)).is_zero()
}

/// A projective plane curve with parameters: variable list is
/// [X, Y, Z, params...], `f` homogeneous of `degree` in the first three.
#[derive(Clone, Debug)]
pub struct ProjCurve {
    pub name: String,
    pub vars: Vars,
    pub f: MPoly,
    pub degree: u32,
}

impl ProjCurve {
    pub fn new(name: &str, vars: Vars, f: MPoly, degree: u32) -> Result<Self, ModelError> {
        if f.is_zero() || !f.is_homogeneous_in(&[0, 1, 2], degree) {
            return Err(ModelError::NotHomogeneous(name.into(), degree));
        }
        Ok(ProjCurve { name: name.to_string(), vars, f, degree })
    }

    /// On-curve test for a point with polynomial parameter-dependent
    /// coordinates, symbolic in the parameters.
    pub fn on_curve(&self, p: &[MPoly; 3]) -> bool {
        let pvars = &p[0].vars;
        let mut images = vec![p[0].clone(), p[1].clone(), p[2].clone()];
        for name in self.vars.iter().skip(3) {
            images.push(MPoly::var(pvars, name).expect("parameter present"));
        }
        self.f.subst(&images).is_zero()
    }

    /// Specialize the parameters, producing a polynomial in X, Y, Z alone.
    pub fn specialize(&self, params: &[CycNum]) -> Result<MPoly, ModelError> {
        let n_params = self.vars.len() - 3;
        if params.len() != n_params {
            return Err(ModelError::ParameterCount(n_params, params.len()));
        }
        let pv = crate::exactalg::mpoly::vars(&["X", "Y", "Z"]);
        let mut images = vec![
            MPoly::var(&pv, "X").unwrap(),
            MPoly::var(&pv, "Y").unwrap(),
            MPoly::var(&pv, "Z").unwrap(),
        ];
        for c in params {
            images.push(MPoly::constant(&pv, c.clone()));
        }
        Ok(self.f.subst(&images))
    }
}

/// Resultant of two bivariate polynomials with respect to variable
/// `elim`, computed as the Sylvester determinant over CycNum[keep] by
/// fraction-free (Bareiss) elimination. Both inputs live over the same
/// two-variable list.
pub fn resultant_bivar(
    f: &MPoly,
    g: &MPoly,
    elim: usize,
    keep: usize,
    keep_name: &str,
) -> Result<CPoly, ModelError> {
    let fc = mpoly_as_poly_in(f, elim, keep, keep_name)?;
    let gc = mpoly_as_poly_in(g, elim, keep, keep_name)?;
    let m = fc.len().saturating_sub(1);
    let n = gc.len().saturating_sub(1);
    if fc.is_empty() || gc.is_empty() {
        return Ok(Poly::zero(keep_name));
    }
    if m == 0 && n == 0 {
        return Ok(Poly::constant(keep_name, CycNum::one()));
    }
    let dim = m + n;
    let zero = Poly::zero(keep_name);
    let mut mat = vec![vec![zero.clone(); dim]; dim];
    for row in 0..n {
        for (i, c) in fc.iter().enumerate() {
            mat[row][row + (m - i)] = c.clone();
        }
    }
    for row in 0..m {
        for (i, c) in gc.iter().enumerate() {
            mat[n + row][row + (n - i)] = c.clone();
        }
    }
    // Bareiss fraction-free determinant over the polynomial ring
    let mut denom = Poly::constant(keep_name, CycNum::one());
    let mut sign_negative = false;
    let mut a = mat;
    for k in 0..dim {
        if a[k][k].is_zero() {
            let swap = (k + 1..dim).find(|&r| !a[r][k].is_zero());
            match swap {
                Some(r) => {
                    a.swap(k, r);
                    sign_negative = !sign_negative;
                }
                None => return Ok(Poly::zero(keep_name)),
            }
        }
        for i in k + 1..dim {
            for j in k + 1..dim {
                let t = a[k][k].mul(&a[i][j]).sub(&a[i][k].mul(&a[k][j]));
                a[i][j] = t
                    .exact_div(&denom)
                    .expect("Bareiss: previous pivot divides exactly");
            }
            a[i][k] = Poly::zero(keep_name);
        }
        denom = a[k][k].clone();
    }
    let mut det = a[dim - 1][dim - 1].clone();
    if sign_negative {
        det = det.neg();
    }
    Ok(det)
}

/// Coefficients of f viewed in the `elim` variable, each a univariate
/// polynomial in `keep`; highest degree first.
fn mpoly_as_poly_in(
    f: &MPoly,
    elim: usize,
    keep: usize,
    keep_name: &str,
) -> Result<Vec<CPoly>, ModelError> {
    for (e, _) in &f.terms {
        for (i, &exp) in e.iter().enumerate() {
            if i != elim && i != keep && exp > 0 {
                return Err(ModelError::NotBivariate);
            }
        }
    }
    let de = f.degree_in(elim).unwrap_or(0) as usize;
    let dk = f.degree_in(keep).unwrap_or(0) as usize;
    let mut rows = vec![vec![CycNum::zero(); dk + 1]; de + 1];
    for (e, c) in &f.terms {
        rows[e[elim] as usize][e[keep] as usize] = c.clone();
    }
    Ok(rows
        .into_iter()
        .rev()
        .map(|coeffs| Poly::new(keep_name, coeffs))
        .collect())
}

/// Rigorous smoothness check of a specialized projective plane curve: in
/// each of the three standard affine charts, eliminate one variable from
/// (f, f_a, f_b) by pairwise resultants; a constant gcd proves there is no
/// common zero. Returns true only when every chart is certified smooth.
pub fn proj_curve_is_smooth(f_spec: &MPoly) -> bool {
    if f_spec.is_zero() {
        return false;
    }
    for chart in 0..3 {
        let (a, b) = match chart {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        // set the chart variable to 1
        let pv = crate::exactalg::mpoly::vars(&["A", "B"]);
        let mut images = vec![MPoly::one(&pv); 3];
        images[a] = MPoly::var(&pv, "A").unwrap();
        images[b] = MPoly::var(&pv, "B").unwrap();
        let fc = f_spec.subst(&images);
        if fc.is_zero() {
            return false;
        }
        let fa = fc.partial(0);
        let fb = fc.partial(1);
        let r1 = match resultant_bivar(&fc, &fa, 1, 0, "A") {
            Ok(r) => r,
            Err(_) => return false,
        };
        let r2 = match resultant_bivar(&fc, &fb, 1, 0, "A") {
            Ok(r) => r,
            Err(_) => return false,
        };
        let r3 = match resultant_bivar(&fa, &fb, 1, 0, "A") {
            Ok(r) => r,
            Err(_) => return false,
        };
        if r1.is_zero() || r2.is_zero() || r3.is_zero() {
            return false;
        }
        let g = r1.gcd(&r2).and_then(|g| g.gcd(&r3));
        match g {
            Ok(g) => {
                if g.degree() != Some(0) {
                    return false;
                }
            }
            Err(_) => return false,
        }
    }
    true
}
