//! The cyclotomic field Q(zeta_24) in the power basis 1, z, ..., z^7 of a
//! primitive 24th root of unity z, reduced modulo the 24th cyclotomic
//! polynomial z^8 - z^4 + 1. Every root of unity the curve families need
//! (zeta_3, zeta_4, zeta_12, zeta_24) lives here:
//! zeta_3 = z^8, zeta_4 = z^6, zeta_12 = z^2.

use super::poly::Poly;
use super::{rat_int, ExactError, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub const DEGREE: usize = 8;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycNum {
    coeffs: [Rat; DEGREE],
}

fn zero_coeffs() -> [Rat; DEGREE] {
    std::array::from_fn(|_| Rat::zero())
}

impl CycNum {
    pub fn zero() -> Self {
        CycNum { coeffs: zero_coeffs() }
    }

    pub fn one() -> Self {
        CycNum::from_rat(Rat::one())
    }

    pub fn from_rat(r: Rat) -> Self {
        let mut c = zero_coeffs();
        c[0] = r;
        CycNum { coeffs: c }
    }

    pub fn from_int(n: i64) -> Self {
        CycNum::from_rat(rat_int(n))
    }

    /// Build from arbitrary-length power-basis coefficients, reducing mod
    /// z^8 = z^4 - 1.
    pub fn from_coeffs(cs: &[Rat]) -> Self {
        let mut work: Vec<Rat> = cs.to_vec();
        let mut i = work.len();
        while i > DEGREE {
            i -= 1;
            if work[i].is_zero() {
                continue;
            }
            let c = std::mem::replace(&mut work[i], Rat::zero());
            work[i - 4] += &c;
            work[i - 8] -= &c;
        }
        let mut out = zero_coeffs();
        for (k, c) in work.into_iter().take(DEGREE).enumerate() {
            out[k] = c;
        }
        CycNum { coeffs: out }
    }

    /// zeta_24^k for any integer exponent.
    pub fn zeta24_pow(k: i64) -> Self {
        let k = k.rem_euclid(24) as usize;
        let mut cs = vec![Rat::zero(); k + 1];
        cs[k] = Rat::one();
        CycNum::from_coeffs(&cs)
    }

    pub fn zeta3() -> Self {
        Self::zeta24_pow(8)
    }
    pub fn zeta4() -> Self {
        Self::zeta24_pow(6)
    }
    pub fn zeta12() -> Self {
        Self::zeta24_pow(2)
    }

    pub fn coeffs(&self) -> &[Rat; DEGREE] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_rational(&self) -> Option<&Rat> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = zero_coeffs();
        for i in 0..DEGREE {
            out[i] = &self.coeffs[i] + &o.coeffs[i];
        }
        CycNum { coeffs: out }
    }

    pub fn sub(&self, o: &Self) -> Self {
        let mut out = zero_coeffs();
        for i in 0..DEGREE {
            out[i] = &self.coeffs[i] - &o.coeffs[i];
        }
        CycNum { coeffs: out }
    }

    pub fn neg(&self) -> Self {
        let mut out = zero_coeffs();
        for i in 0..DEGREE {
            out[i] = -&self.coeffs[i];
        }
        CycNum { coeffs: out }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let mut conv = vec![Rat::zero(); 2 * DEGREE - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                conv[i + j] += a * b;
            }
        }
        CycNum::from_coeffs(&conv)
    }

    pub fn scale(&self, r: &Rat) -> Self {
        let mut out = zero_coeffs();
        for i in 0..DEGREE {
            out[i] = &self.coeffs[i] * r;
        }
        CycNum { coeffs: out }
    }

    /// Multiplicative inverse; errors on zero. Solves x * self = 1 as an
    /// 8-dimensional linear system over Q.
    pub fn inv(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        // columns of the multiplication-by-self matrix
        let mut m = vec![vec![Rat::zero(); DEGREE]; DEGREE];
        for j in 0..DEGREE {
            let col = self.mul(&CycNum::zeta24_pow(j as i64));
            for i in 0..DEGREE {
                m[i][j] = col.coeffs[i].clone();
            }
        }
        let mut rhs = vec![Rat::zero(); DEGREE];
        rhs[0] = Rat::one();
        let sol = solve_linear(&mut m, &mut rhs).ok_or(ExactError::DivisionByZero)?;
        let mut out = zero_coeffs();
        for i in 0..DEGREE {
            out[i] = sol[i].clone();
        }
        Ok(CycNum { coeffs: out })
    }

    pub fn pow(&self, n: i64) -> Result<Self, ExactError> {
        if n < 0 {
            return self.inv()?.pow(-n);
        }
        let mut acc = CycNum::one();
        let mut base = self.clone();
        let mut k = n as u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        Ok(acc)
    }

    /// The ring automorphism determined by zeta_24 -> zeta_24^j, for j a unit
    /// mod 24. These are exactly the elements of Gal(Q(zeta_24)/Q).
    pub fn conj(&self, j: u32) -> Result<Self, ExactError> {
        if (j as u64).gcd(&24) != 1 {
            return Err(ExactError::BadConjugationIndex(j));
        }
        let mut acc = CycNum::zero();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let term = CycNum::zeta24_pow((i as i64) * (j as i64)).scale(c);
            acc = acc.add(&term);
        }
        Ok(acc)
    }

    /// Monic minimal polynomial over Q, from the characteristic polynomial of
    /// multiplication-by-self (its squarefree part, since char = min^k here).
    pub fn min_poly(&self, var: &str) -> Poly<Rat> {
        let charpoly = self.char_poly(var);
        let sf = charpoly.squarefree_part();
        debug_assert!(sf.eval_cyc(self).is_zero());
        sf
    }

    fn char_poly(&self, var: &str) -> Poly<Rat> {
        // det(x I - M) via exact expansion on the 8x8 rational matrix,
        // computed with the Faddeev-LeVerrier recurrence.
        let mut m = vec![vec![Rat::zero(); DEGREE]; DEGREE];
        for j in 0..DEGREE {
            let col = self.mul(&CycNum::zeta24_pow(j as i64));
            for i in 0..DEGREE {
                m[i][j] = col.coeffs[i].clone();
            }
        }
        // c_n x^n + ... ; Faddeev-LeVerrier: M_1 = M, c_{n-1} = -tr(M_1),
        // M_{k+1} = M(M_k + c_{n-k} I)
        let n = DEGREE;
        let mut coeffs = vec![Rat::zero(); n + 1];
        coeffs[n] = Rat::one();
        let mut mk = m.clone();
        for k in 1..=n {
            let tr: Rat = (0..n).map(|i| mk[i][i].clone()).sum();
            let ck = -tr / rat_int(k as i64);
            coeffs[n - k] = ck.clone();
            if k == n {
                break;
            }
            // mk = m * (mk + ck I)
            let mut shifted = mk.clone();
            for i in 0..n {
                shifted[i][i] += &ck;
            }
            let mut next = vec![vec![Rat::zero(); n]; n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = Rat::zero();
                    for l in 0..n {
                        if !m[i][l].is_zero() && !shifted[l][j].is_zero() {
                            s += &m[i][l] * &shifted[l][j];
                        }
                    }
                    next[i][j] = s;
                }
            }
            mk = next;
        }
        Poly::new(var, coeffs)
    }

    /// Square root, for the restricted shapes r^2 * zeta_24^(2k) with r
    /// rational: returns some x with x^2 = self when self = s * zeta_24^(2k)
    /// for a rational s whose absolute value is a square (s < 0 absorbed via
    /// zeta_4^2 = -1). Covers every radicand the fixtures produce; None
    /// otherwise.
    pub fn sqrt_in_field(&self) -> Option<Self> {
        if self.is_zero() {
            return Some(CycNum::zero());
        }
        for k in 0..12i64 {
            let cand = self.mul(&CycNum::zeta24_pow(-2 * k));
            if let Some(r) = cand.is_rational() {
                let (s, negate) = if r.is_negative() { (-r, true) } else { (r.clone(), false) };
                let num = sqrt_exact(s.numer())?;
                let den = sqrt_exact(s.denom())?;
                let mut root = CycNum::from_rat(Rat::new(num, den)).mul(&CycNum::zeta24_pow(k));
                if negate {
                    root = root.mul(&CycNum::zeta4());
                }
                debug_assert!(root.mul(&root) == *self);
                return Some(root);
            }
        }
        None
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denom_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for c in &self.coeffs {
            l = l.lcm(c.denom());
        }
        l
    }
}

fn sqrt_exact(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &(&r * &r) == n {
        Some(r)
    } else {
        None
    }
}

/// Solve m x = rhs by Gaussian elimination over Q; None when singular.
fn solve_linear(m: &mut [Vec<Rat>], rhs: &mut [Rat]) -> Option<Vec<Rat>> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, piv);
        rhs.swap(col, piv);
        let inv = m[col][col].clone().recip();
        for j in col..n {
            let t = &m[col][j] * &inv;
            m[col][j] = t;
        }
        let t = &rhs[col] * &inv;
        rhs[col] = t;
        let pivot_row = m[col].clone();
        let pivot_rhs = rhs[col].clone();
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in col..n {
                    let t = &m[r][j] - &(&f * &pivot_row[j]);
                    m[r][j] = t;
                }
                let t = &rhs[r] - &(&f * &pivot_rhs);
                rhs[r] = t;
            }
        }
    }
    Some(rhs.to_vec())
}

impl Poly<Rat> {
    /// Evaluate a rational polynomial at a cyclotomic argument.
    pub fn eval_cyc(&self, x: &CycNum) -> CycNum {
        let mut acc = CycNum::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(&CycNum::from_rat(c.clone()));
        }
        acc
    }
}

impl super::coeff::Coeff for CycNum {
    fn zero(&self) -> Self {
        CycNum::zero()
    }
    fn one(&self) -> Self {
        CycNum::one()
    }
    fn add(&self, o: &Self) -> Self {
        CycNum::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        CycNum::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        CycNum::mul(self, o)
    }
    fn neg(&self) -> Self {
        CycNum::neg(self)
    }
    fn inv(&self) -> Option<Self> {
        CycNum::inv(self).ok()
    }
    fn is_zero(&self) -> bool {
        CycNum::is_zero(self)
    }
}

impl std::fmt::Display for CycNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let a = c.abs();
            let unit = a.is_one() && i > 0;
            if !unit {
                write!(f, "{}", super::rat_string(&a))?;
            }
            if i > 0 {
                if !unit {
                    write!(f, "*")?;
                }
                if i == 1 {
                    write!(f, "z24")?;
                } else {
                    write!(f, "z24^{i}")?;
                }
            }
        }
        Ok(())
    }
}

impl std::fmt::Debug for CycNum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        std::fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rat;

    #[test]
    fn zeta3_relation() {
        // zeta_3^2 + zeta_3 + 1 = 0 with zeta_3 = zeta_24^8
        let z3 = CycNum::zeta3();
        let acc = z3.mul(&z3).add(&z3).add(&CycNum::one());
        assert!(acc.is_zero());
    }

    #[test]
    fn two_zeta3_plus_one_squares_to_minus_three() {
        let x = CycNum::zeta3().scale(&rat_int(2)).add(&CycNum::one());
        assert_eq!(x.mul(&x), CycNum::from_int(-3));
    }

    #[test]
    fn inverse_of_zeta24() {
        assert_eq!(CycNum::zeta24_pow(1).inv().unwrap(), CycNum::zeta24_pow(23));
        assert!(CycNum::zero().inv().is_err());
    }

    #[test]
    fn conj_j5_action() {
        // zeta_3 -> zeta_3^2 and zeta_4 -> zeta_4 under zeta -> zeta^5
        let z3 = CycNum::zeta3();
        assert_eq!(z3.conj(5).unwrap(), z3.mul(&z3));
        let z4 = CycNum::zeta4();
        assert_eq!(z4.conj(5).unwrap(), z4);
        assert!(CycNum::one().conj(6).is_err());
    }

    #[test]
    fn min_polys() {
        let mp = CycNum::zeta4().min_poly("x");
        assert_eq!(mp, Poly::new("x", vec![rat_int(1), rat_int(0), rat_int(1)]));
        let mp2 = CycNum::from_int(2).min_poly("x");
        assert_eq!(mp2, Poly::new("x", vec![rat_int(-2), rat_int(1)]));
        let x = CycNum::zeta3().scale(&rat_int(2)).add(&CycNum::one());
        assert_eq!(x.min_poly("x"), Poly::new("x", vec![rat_int(3), rat_int(0), rat_int(1)]));
        // degree divides 8 and vanishes at the element
        let y = CycNum::zeta24_pow(1).add(&CycNum::from_rat(rat(1, 2)));
        let mp3 = y.min_poly("x");
        assert_eq!(8 % mp3.degree().unwrap(), 0);
        assert!(mp3.eval_cyc(&y).is_zero());
    }

    #[test]
    fn sqrt_small_forms() {
        // sqrt(-16) = 4*zeta_4 up to sign
        let s = CycNum::from_int(-16).sqrt_in_field().unwrap();
        assert_eq!(s.mul(&s), CycNum::from_int(-16));
        // sqrt(zeta_12) = zeta_24
        let s2 = CycNum::zeta12().sqrt_in_field().unwrap();
        assert_eq!(s2.mul(&s2), CycNum::zeta12());
        // 5 is not a square of any recognized shape
        assert!(CycNum::from_int(5).sqrt_in_field().is_none());
    }
}
