//! Dense univariate polynomials over an exact field of coefficients.
//!
//! The zero polynomial has an empty coefficient list; otherwise the leading
//! coefficient is nonzero.

use super::coeff::Coeff;
use super::ExactError;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly<F: Coeff> {
    pub var: String,
    /// coeffs[i] multiplies var^i; empty means the zero polynomial.
    pub coeffs: Vec<F>,
}

impl<F: Coeff> Poly<F> {
    pub fn new(var: &str, mut coeffs: Vec<F>) -> Self {
        while coeffs.last().map_or(false, |c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { var: var.to_string(), coeffs }
    }

    pub fn zero(var: &str) -> Self {
        Poly { var: var.to_string(), coeffs: vec![] }
    }

    pub fn constant(var: &str, c: F) -> Self {
        Poly::new(var, vec![c])
    }

    /// The monomial c * var^k.
    pub fn monomial(var: &str, c: F, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero(var);
        }
        let mut v = vec![c.zero(); k + 1];
        v[k] = c;
        Poly { var: var.to_string(), coeffs: v }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&F> {
        self.coeffs.get(i)
    }

    fn check_var(&self, o: &Self) -> Result<(), ExactError> {
        if self.var != o.var && !self.is_zero() && !o.is_zero() {
            return Err(ExactError::VariableMismatch(self.var.clone(), o.var.clone()));
        }
        Ok(())
    }

    pub fn add(&self, o: &Self) -> Self {
        self.check_var(o).expect("poly add: variable mismatch");
        let n = self.coeffs.len().max(o.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let c = match (self.coeffs.get(i), o.coeffs.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            };
            out.push(c);
        }
        Poly::new(if self.is_zero() { &o.var } else { &self.var }, out)
    }

    pub fn neg(&self) -> Self {
        Poly { var: self.var.clone(), coeffs: self.coeffs.iter().map(|c| c.neg()).collect() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.check_var(o).expect("poly mul: variable mismatch");
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.var);
        }
        let z = self.coeffs[0].zero();
        let mut out = vec![z; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(&self.var, out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(&self.var);
        }
        Poly::new(&self.var, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn pow(&self, mut n: u32) -> Self {
        if n == 0 {
            let one = self.coeffs.first().map(|c| c.one());
            return match one {
                Some(o) => Poly::constant(&self.var, o),
                None => panic!("pow of zero polynomial to exponent 0 needs a coefficient witness"),
            };
        }
        let mut base = self.clone();
        let mut acc: Option<Poly<F>> = None;
        loop {
            if n & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            n >>= 1;
            if n == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    pub fn eval(&self, x: &F) -> F {
        let mut acc = x.zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return Poly::zero(&self.var);
        }
        let out: Vec<F> = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&c.from_i64(i as i64)))
            .collect();
        Poly::new(&self.var, out)
    }

    /// Coefficients of self(e + x), lowest order first (Taylor shift).
    pub fn shift(&self, e: &F) -> Self {
        // Horner: p(e+x) computed by iterated synthetic division.
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        let mut out = Vec::with_capacity(n);
        for _ in 0..n {
            // divide rem by (x - (-e))? we want p(x) = q(x)(x) after substitution;
            // synthetic evaluation: out_k = remainder of successive division by (x - e)... with x -> x + e
            let mut carry = e.zero();
            for c in rem.iter_mut().rev() {
                let t = c.add(&carry.mul(e));
                carry = t.clone();
                *c = t;
            }
            out.push(rem.remove(0));
        }
        Poly::new(&self.var, out)
    }

    /// Euclidean division: self = q * d + r with deg r < deg d. Panics on d = 0.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "polynomial division by zero");
        self.check_var(d).expect("poly div: variable mismatch");
        let dd = d.degree().unwrap();
        let lead_inv = d.leading().unwrap().inv().expect("leading coefficient invertible");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Poly::zero(&self.var), self.clone());
        }
        let z = d.leading().unwrap().zero();
        let mut quot = vec![z; rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let c = rem[k].mul(&lead_inv);
            if !c.is_zero() {
                quot[k - dd] = c.clone();
                for i in 0..dd {
                    rem[k - dd + i] = rem[k - dd + i].sub(&c.mul(&d.coeffs[i]));
                }
            }
            rem.pop();
        }
        (Poly::new(&self.var, quot), Poly::new(&self.var, rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact division; None when d does not divide self.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Some(q)
        } else {
            None
        }
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some(l) => self.scale(&l.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, o: &Self) -> Result<Self, ExactError> {
        self.check_var(o)?;
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Squarefree part: self / gcd(self, self').
    pub fn squarefree_part(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let g = self.gcd(&self.derivative()).expect("same variable");
        if g.degree() == Some(0) {
            return self.monic();
        }
        self.exact_div(&g).expect("gcd divides").monic()
    }

    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None | Some(0) => true,
            _ => self
                .gcd(&self.derivative())
                .map(|g| g.degree() == Some(0))
                .unwrap_or(false),
        }
    }

    /// Res(f, g) = lc(f)^deg(g) * prod over roots a of f of g(a),
    /// computed through the Euclidean remainder sequence.
    pub fn resultant(&self, o: &Self) -> Result<F, ExactError> {
        self.check_var(o)?;
        let witness = self
            .coeffs
            .first()
            .or_else(|| o.coeffs.first())
            .expect("resultant needs a coefficient witness");
        let zero = witness.zero();
        let one = witness.one();
        let mut a = self.clone();
        let mut b = o.clone();
        let mut acc = one.clone();
        loop {
            if b.is_zero() {
                return Ok(zero);
            }
            let db = b.degree().unwrap();
            if db == 0 {
                // Res(a, c) = c^deg(a)
                let da = a.degree().unwrap_or(0);
                let mut c = one.clone();
                for _ in 0..da {
                    c = c.mul(&b.coeffs[0]);
                }
                return Ok(acc.mul(&c));
            }
            let da = match a.degree() {
                Some(d) => d,
                None => return Ok(zero),
            };
            if da < db {
                std::mem::swap(&mut a, &mut b);
                if (da * db) % 2 == 1 {
                    acc = acc.neg();
                }
                continue;
            }
            // Res(a,b) = lc(b)^(deg a - deg r) * (-1)^(da*db) * Res(b, r), r = a mod b
            let r = a.rem(&b);
            let dr = r.degree().map(|d| d as i64).unwrap_or(-1);
            let lb = b.leading().unwrap().clone();
            let mut factor = one.clone();
            let e = da as i64 - dr;
            for _ in 0..e {
                factor = factor.mul(&lb);
            }
            acc = acc.mul(&factor);
            if (da * db) % 2 == 1 {
                acc = acc.neg();
            }
            a = b;
            b = r;
        }
    }
}

impl std::fmt::Display for Poly<crate::exactalg::cyc::CycNum> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if k == 0 {
                write!(f, "({c})")?;
            } else if k == 1 {
                write!(f, "({c})*{}", self.var)?;
            } else {
                write!(f, "({c})*{}^{}", self.var, k)?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::{rat, rat_int, Rat};

    fn p(coeffs: &[i64]) -> Poly<Rat> {
        Poly::new("x", coeffs.iter().map(|&c| rat_int(c)).collect())
    }

    #[test]
    fn gcd_example() {
        // gcd(x^2 - 1, (x-1)^2) = x - 1
        let f = p(&[-1, 0, 1]);
        let g = p(&[1, -2, 1]);
        assert_eq!(f.gcd(&g).unwrap(), p(&[-1, 1]));
    }

    #[test]
    fn resultant_convention() {
        // Res(x^2 + 1, x - 1) = 2: evaluate x^2+1 convention against roots of f
        let f = p(&[1, 0, 1]);
        let g = p(&[-1, 1]);
        assert_eq!(f.resultant(&g).unwrap(), rat_int(2));
        // Res(f, f) = 0 for non-constant f
        assert_eq!(f.resultant(&f).unwrap(), rat_int(0));
        // swap sign check: Res(x-1, x^2+1) = (-1)^(2*1) Res(x^2+1, x-1) = 2
        assert_eq!(g.resultant(&f).unwrap(), rat_int(2));
    }

    #[test]
    fn shift_is_taylor() {
        // p(x) = x^2, p(3+x) = 9 + 6x + x^2
        let f = p(&[0, 0, 1]);
        assert_eq!(f.shift(&rat_int(3)), p(&[9, 6, 1]));
    }

    #[test]
    fn division_roundtrip() {
        let f = p(&[2, 0, -3, 1, 4]);
        let d = p(&[1, 2, 1]);
        let (q, r) = f.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), f);
        assert!(r.degree().unwrap_or(0) < 2);
    }

    #[test]
    fn squarefree() {
        let f = p(&[1, -2, 1]); // (x-1)^2
        assert_eq!(f.squarefree_part(), p(&[-1, 1]));
        assert!(!f.is_squarefree());
        assert!(p(&[-1, 0, 1]).is_squarefree());
        let _ = rat(1, 2);
    }
}
