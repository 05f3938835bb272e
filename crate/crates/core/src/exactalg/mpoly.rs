//! Sparse multivariate polynomials over Q(zeta_24), used for curve defining
//! equations (with family parameters treated as extra variables), coordinate
//! substitutions, and the bivariate divisibility checks of the exclusion
//! lemma.

use super::cyc::CycNum;
use super::poly::Poly;
use super::ExactError;
use std::collections::BTreeMap;
use std::sync::Arc;

/// Shared, ordered variable list. Polynomials must agree on it to combine.
pub type Vars = Arc<Vec<String>>;

pub fn vars(names: &[&str]) -> Vars {
    Arc::new(names.iter().map(|s| s.to_string()).collect())
}

type Expts = Vec<u32>;

#[derive(Clone, PartialEq)]
pub struct MPoly {
    pub vars: Vars,
    /// exponent vector -> nonzero coefficient; BTreeMap gives lex order with
    /// the *last* compared entries least significant, i.e. plain Vec ordering.
    pub terms: BTreeMap<Expts, CycNum>,
}

impl MPoly {
    pub fn zero(vars: &Vars) -> Self {
        MPoly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: CycNum) -> Self {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(vec![0; vars.len()], c);
        }
        p
    }

    pub fn one(vars: &Vars) -> Self {
        MPoly::constant(vars, CycNum::one())
    }

    pub fn var(vars: &Vars, name: &str) -> Result<Self, ExactError> {
        let idx = vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| ExactError::Parse(format!("unknown variable {name}")))?;
        let mut e = vec![0u32; vars.len()];
        e[idx] = 1;
        let mut p = MPoly::zero(vars);
        p.terms.insert(e, CycNum::one());
        Ok(p)
    }

    pub fn monomial(vars: &Vars, expts: Expts, c: CycNum) -> Self {
        let mut p = MPoly::zero(vars);
        if !c.is_zero() {
            p.terms.insert(expts, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> Option<CycNum> {
        match self.terms.len() {
            0 => Some(CycNum::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                if e.iter().all(|&x| x == 0) {
                    Some(c.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn degree_in(&self, var_idx: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var_idx]).max()
    }

    fn insert_term(&mut self, e: Expts, c: CycNum) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&e) {
            Some(prev) => {
                let s = prev.add(&c);
                if s.is_zero() {
                    self.terms.remove(&e);
                } else {
                    *prev = s;
                }
            }
            None => {
                self.terms.insert(e, c);
            }
        }
    }

    fn check_vars(&self, o: &Self) -> Result<(), ExactError> {
        if self.vars != o.vars {
            return Err(ExactError::VariableMismatch(
                self.vars.join(","),
                o.vars.join(","),
            ));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_vars(o).expect("mpoly add: variable mismatch");
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.insert_term(e.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_vars(o).expect("mpoly mul: variable mismatch");
        let mut out = MPoly::zero(&self.vars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Expts = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.insert_term(e, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &CycNum) -> Self {
        if c.is_zero() {
            return MPoly::zero(&self.vars);
        }
        MPoly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, k)| (e.clone(), k.mul(c))).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = MPoly::one(&self.vars);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn partial(&self, var_idx: usize) -> Self {
        let mut out = MPoly::zero(&self.vars);
        for (e, c) in &self.terms {
            if e[var_idx] == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2[var_idx] -= 1;
            out.insert_term(e2, c.scale(&super::rat_int(e[var_idx] as i64)));
        }
        out
    }

    /// Leading term in lex order (variable 0 most significant).
    fn leading(&self) -> Option<(&Expts, &CycNum)> {
        self.terms.iter().next_back()
    }

    /// Single-divisor multivariate division: remainder is zero iff d divides
    /// self (standard uniqueness argument for one divisor).
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        self.check_vars(d).ok()?;
        if d.is_zero() {
            return None;
        }
        let (dlead_e, dlead_c) = d.leading().map(|(e, c)| (e.clone(), c.clone())).unwrap();
        let dlc_inv = dlead_c.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.vars);
        'outer: loop {
            // find a term of rem divisible by the leading monomial of d
            let mut pick: Option<(Expts, CycNum)> = None;
            for (e, c) in rem.terms.iter().rev() {
                if e.iter().zip(dlead_e.iter()).all(|(a, b)| a >= b) {
                    pick = Some((e.clone(), c.clone()));
                    break;
                }
            }
            match pick {
                None => break 'outer,
                Some((e, c)) => {
                    let qe: Expts = e.iter().zip(dlead_e.iter()).map(|(a, b)| a - b).collect();
                    let qc = c.mul(&dlc_inv);
                    let qterm = MPoly::monomial(&self.vars, qe, qc);
                    rem = rem.sub(&qterm.mul(d));
                    quot = quot.add(&qterm);
                }
            }
        }
        if rem.is_zero() {
            Some(quot)
        } else {
            None
        }
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.exact_div(self).is_some()
    }

    /// Substitute each variable by a (numerator, denominator) pair of
    /// polynomials over `target_vars`; the result is returned as a cleared
    /// (numerator, denominator) pair.
    pub fn subst_rational(
        &self,
        images: &[(MPoly, MPoly)],
    ) -> Result<(MPoly, MPoly), ExactError> {
        assert_eq!(images.len(), self.vars.len());
        let tvars = images
            .first()
            .map(|(n, _)| n.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        // common denominator: product of den_i^(deg_i(self))
        let degs: Vec<u32> = (0..self.vars.len())
            .map(|i| self.degree_in(i).unwrap_or(0))
            .collect();
        let mut out = MPoly::zero(&tvars);
        for (e, c) in &self.terms {
            let mut term = MPoly::constant(&tvars, c.clone());
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&images[i].0.pow(exp));
                }
                // multiply by den_i^(deg_i - exp) to clear to the common denominator
                let pad = degs[i] - exp;
                if pad > 0 {
                    term = term.mul(&images[i].1.pow(pad));
                }
            }
            out = out.add(&term);
        }
        let mut den = MPoly::one(&tvars);
        for (i, &dg) in degs.iter().enumerate() {
            if dg > 0 {
                den = den.mul(&images[i].1.pow(dg));
            }
        }
        Ok((out, den))
    }

    /// Substitute plain polynomials (denominators all 1).
    pub fn subst(&self, images: &[MPoly]) -> MPoly {
        let tvars = images
            .first()
            .map(|p| p.vars.clone())
            .unwrap_or_else(|| self.vars.clone());
        let one = MPoly::one(&tvars);
        let pairs: Vec<(MPoly, MPoly)> = images.iter().map(|p| (p.clone(), one.clone())).collect();
        self.subst_rational(&pairs).expect("polynomial substitution").0
    }

    /// Evaluate at cyclotomic values for all variables.
    pub fn eval(&self, values: &[CycNum]) -> CycNum {
        assert_eq!(values.len(), self.vars.len());
        let mut acc = CycNum::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (i, &exp) in e.iter().enumerate() {
                if exp > 0 {
                    term = term.mul(&values[i].pow(exp as i64).expect("nonnegative power"));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// View as a univariate polynomial in `var_idx` with MPoly coefficients
    /// (in the remaining variables, same variable list).
    pub fn as_univariate(&self, var_idx: usize) -> Vec<MPoly> {
        let d = self.degree_in(var_idx).unwrap_or(0) as usize;
        let mut out = vec![MPoly::zero(&self.vars); d + 1];
        for (e, c) in &self.terms {
            let k = e[var_idx] as usize;
            let mut e2 = e.clone();
            e2[var_idx] = 0;
            out[k].insert_term(e2, c.clone());
        }
        out
    }

    /// Collapse to a univariate Poly over CycNum; requires every other
    /// variable to be absent.
    pub fn to_univariate(&self, var_idx: usize, var_name: &str) -> Option<Poly<CycNum>> {
        let mut coeffs = vec![CycNum::zero(); self.degree_in(var_idx).unwrap_or(0) as usize + 1];
        for (e, c) in &self.terms {
            for (i, &exp) in e.iter().enumerate() {
                if i != var_idx && exp > 0 {
                    return None;
                }
            }
            coeffs[e[var_idx] as usize] = c.clone();
        }
        Some(Poly::new(var_name, coeffs))
    }

    /// Homogeneous of the given degree in the listed variables?
    pub fn is_homogeneous_in(&self, var_idxs: &[usize], degree: u32) -> bool {
        self.terms
            .keys()
            .all(|e| var_idxs.iter().map(|&i| e[i]).sum::<u32>() == degree)
    }
}

/// A ratio of multivariate polynomials (rational map component).
#[derive(Clone, Debug)]
pub struct MRatio {
    pub num: MPoly,
    pub den: MPoly,
}

impl MRatio {
    pub fn poly(p: MPoly) -> Self {
        let one = MPoly::one(&p.vars);
        MRatio { num: p, den: one }
    }
    pub fn add(&self, o: &Self) -> Self {
        MRatio {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        MRatio {
            num: self.num.mul(&o.den).sub(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }
    pub fn mul(&self, o: &Self) -> Self {
        MRatio { num: self.num.mul(&o.num), den: self.den.mul(&o.den) }
    }
    pub fn div(&self, o: &Self) -> Result<Self, ExactError> {
        if o.num.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        Ok(MRatio { num: self.num.mul(&o.den), den: self.den.mul(&o.num) })
    }
    pub fn neg(&self) -> Self {
        MRatio { num: self.num.neg(), den: self.den.clone() }
    }
    pub fn pow(&self, n: i64) -> Result<Self, ExactError> {
        if n < 0 {
            return MRatio { num: self.den.clone(), den: self.num.clone() }.pow(-n);
        }
        Ok(MRatio { num: self.num.pow(n as u32), den: self.den.pow(n as u32) })
    }

    /// Strip the largest monomial dividing both numerator and denominator
    /// (compositions of chart transitions introduce spurious powers of the
    /// chart coordinate that would otherwise vanish at seam points).
    pub fn cancel_monomial_content(&self) -> MRatio {
        if self.num.is_zero() || self.den.is_zero() {
            return self.clone();
        }
        let nvars = self.num.vars.len();
        let min_expts = |p: &MPoly| -> Vec<u32> {
            let mut m = vec![u32::MAX; nvars];
            for e in p.terms.keys() {
                for i in 0..nvars {
                    m[i] = m[i].min(e[i]);
                }
            }
            m
        };
        let mn = min_expts(&self.num);
        let md = min_expts(&self.den);
        let common: Vec<u32> = mn.iter().zip(&md).map(|(a, b)| *a.min(b)).collect();
        if common.iter().all(|&c| c == 0) {
            return self.clone();
        }
        let strip = |p: &MPoly| -> MPoly {
            MPoly {
                vars: p.vars.clone(),
                terms: p
                    .terms
                    .iter()
                    .map(|(e, c)| {
                        let e2: Vec<u32> = e.iter().zip(&common).map(|(a, b)| a - b).collect();
                        (e2, c.clone())
                    })
                    .collect(),
            }
        };
        MRatio { num: strip(&self.num), den: strip(&self.den) }
    }

    /// Normalize away a constant denominator; error when the denominator is
    /// nonconstant and does not divide exactly.
    pub fn into_poly(self) -> Result<MPoly, ExactError> {
        if let Some(c) = self.den.is_constant() {
            let inv = c.inv()?;
            return Ok(self.num.scale(&inv));
        }
        self.num
            .exact_div(&self.den)
            .ok_or_else(|| ExactError::Parse("expression is not a polynomial".into()))
    }
}

impl std::fmt::Debug for MPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})")?;
            for (i, &exp) in e.iter().enumerate() {
                if exp == 1 {
                    write!(f, "*{}", self.vars[i])?;
                } else if exp > 1 {
                    write!(f, "*{}^{}", self.vars[i], exp)?;
                }
            }
        }
        Ok(())
    }
}

/// Exact bivariate divisibility over Q: does f divide g in Q[a,b]?
pub fn bivar_divides(f: &MPoly, g: &MPoly) -> bool {
    !f.is_zero() && f.divides(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    fn ci(n: i64) -> CycNum {
        CycNum::from_int(n)
    }

    fn c(n: i64) -> CycNum {
        CycNum::from_int(n)
    }

    fn ab() -> Vars {
        vars(&["a", "b"])
    }

    /// F(a,b) = 2ab(a-3b)^2 - (a-3b)(a^2-6ab-3b^2) + 8b^2
    pub fn stoll_f(vs: &Vars) -> MPoly {
        let a = MPoly::var(vs, "a").unwrap();
        let b = MPoly::var(vs, "b").unwrap();
        let a3b = a.sub(&b.scale(&ci(3)));
        let t1 = a.mul(&b).scale(&ci(2)).mul(&a3b.pow(2));
        let inner = a
            .pow(2)
            .sub(&a.mul(&b).scale(&ci(6)))
            .sub(&b.pow(2).scale(&ci(3)));
        let t2 = a3b.mul(&inner);
        let t3 = b.pow(2).scale(&ci(8));
        t1.sub(&t2).add(&t3)
    }

    #[test]
    fn self_divides_self() {
        let f = stoll_f(&ab());
        assert!(bivar_divides(&f, &f));
    }

    #[test]
    fn constructed_product_divides() {
        let vs = ab();
        let a = MPoly::var(&vs, "a").unwrap();
        let b = MPoly::var(&vs, "b").unwrap();
        let f = a.sub(&b.scale(&ci(3)));
        let g = a
            .pow(2)
            .sub(&a.mul(&b).scale(&ci(6)))
            .sub(&b.pow(2).scale(&ci(3)));
        let prod = f.mul(&g);
        assert!(bivar_divides(&f, &prod));
        assert_eq!(prod.exact_div(&f).unwrap(), g);
    }

    #[test]
    fn non_divisor_detected() {
        let vs = ab();
        let f = stoll_f(&vs);
        let a = MPoly::var(&vs, "a").unwrap();
        let b = MPoly::var(&vs, "b").unwrap();
        let g = a.pow(4).add(&b.pow(4)).add(&MPoly::one(&vs));
        assert!(!bivar_divides(&f, &g));
    }

    #[test]
    fn stoll_f_expansion() {
        // 2a^3b - a^3 - 12a^2b^2 + 9a^2b + 18ab^3 - 15ab^2 - 9b^3 + 8b^2
        let vs = ab();
        let f = stoll_f(&vs);
        let mono = |ea: u32, eb: u32, k: i64| MPoly::monomial(&vs, vec![ea, eb], c(k));
        let expect = mono(3, 1, 2)
            .add(&mono(3, 0, -1))
            .add(&mono(2, 2, -12))
            .add(&mono(2, 1, 9))
            .add(&mono(1, 3, 18))
            .add(&mono(1, 2, -15))
            .add(&mono(0, 3, -9))
            .add(&mono(0, 2, 8));
        assert_eq!(f, expect);
    }

    #[test]
    fn rational_substitution_clears_denominators() {
        // f(x,y) = x*y^2; substitute x -> -x, y -> 1/y: result num = -x, den = y^2
        let vs = vars(&["x", "y"]);
        let f = MPoly::monomial(&vs, vec![1, 2], c(1));
        let x = MPoly::var(&vs, "x").unwrap();
        let y = MPoly::var(&vs, "y").unwrap();
        let one = MPoly::one(&vs);
        let (num, den) = f
            .subst_rational(&[(x.neg(), one.clone()), (one.clone(), y.clone())])
            .unwrap();
        assert_eq!(num, x.neg());
        assert_eq!(den, y.pow(2));
    }
}
