//! Reduction of Q(zeta_24) to finite fields.
//!
//! For an odd prime p not dividing 24, the residue degree is
//! k = ord(p mod 24), which is always 1 or 2 because (Z/24)* is an
//! elementary abelian 2-group. Elements of F_{p^k} are a + b*s with s a
//! root of the stored degree-k modulus (s^2 = n for a non-residue n when
//! k = 2). The reduction map is fixed by the image of zeta_24, a chosen
//! root of the 24th cyclotomic polynomial, equivalently an element of
//! multiplicative order exactly 24.

use super::cyc::CycNum;
use super::ExactError;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FqContext {
    inner: Arc<FqInner>,
}

#[derive(Debug, PartialEq, Eq)]
struct FqInner {
    p: u64,
    k: u8,
    /// For k = 2 the modulus is s^2 - nonresidue; unused when k = 1.
    nonresidue: u64,
    zeta24: (u64, u64),
    /// Prime-field-only contexts carry no zeta_24 image and reduce only
    /// rational values.
    has_zeta: bool,
}

/// Element a + b*s of F_{p^k}; b = 0 always when k = 1.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct FqElem {
    pub a: u64,
    pub b: u64,
}

impl std::fmt::Debug for FqElem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.b == 0 {
            write!(f, "{}", self.a)
        } else {
            write!(f, "{}+{}s", self.a, self.b)
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl FqContext {
    /// Builds the reduction context at p. Errors when p is even, composite,
    /// or ramified in Q(zeta_24) (p in {2, 3}).
    pub fn new(p: u64) -> Result<Self, ExactError> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(ExactError::NotAnOddPrime(p));
        }
        if 24 % p == 0 {
            return Err(ExactError::RamifiedPrime(p));
        }
        let k: u8 = if (p - 1) % 24 == 0 { 1 } else { 2 };
        // ord(p mod 24) is 1 or 2 for every unit; sanity check the k = 2 case
        debug_assert!(k == 1 || (p * p - 1) % 24 == 0);
        let nonresidue = if k == 2 {
            (1..p)
                .find(|&n| mod_pow(n, (p - 1) / 2, p) == p - 1)
                .expect("nonresidue exists for odd p")
        } else {
            0
        };
        let mut ctx = FqContext {
            inner: Arc::new(FqInner { p, k, nonresidue, zeta24: (0, 0), has_zeta: true }),
        };
        let zeta = ctx.find_order24_element();
        ctx.inner = Arc::new(FqInner { p, k, nonresidue, zeta24: zeta, has_zeta: true });
        Ok(ctx)
    }

    /// Plain F_p arithmetic for rational data, with no zeta_24 embedding;
    /// any odd prime is allowed (used by trace scans of rational models).
    pub fn new_prime_field(p: u64) -> Result<Self, ExactError> {
        if p % 2 == 0 || !is_prime(p) {
            return Err(ExactError::NotAnOddPrime(p));
        }
        Ok(FqContext {
            inner: Arc::new(FqInner { p, k: 1, nonresidue: 0, zeta24: (0, 0), has_zeta: false }),
        })
    }

    pub fn has_zeta(&self) -> bool {
        self.inner.has_zeta
    }

    pub fn p(&self) -> u64 {
        self.inner.p
    }
    pub fn k(&self) -> u8 {
        self.inner.k
    }
    pub fn q(&self) -> u64 {
        let p = self.inner.p;
        if self.inner.k == 1 {
            p
        } else {
            p * p
        }
    }
    pub fn nonresidue(&self) -> u64 {
        self.inner.nonresidue
    }
    pub fn zeta24(&self) -> FqElem {
        assert!(self.inner.has_zeta, "prime-field context has no zeta_24 image");
        FqElem { a: self.inner.zeta24.0, b: self.inner.zeta24.1 }
    }

    pub fn zero(&self) -> FqElem {
        FqElem { a: 0, b: 0 }
    }
    pub fn one(&self) -> FqElem {
        FqElem { a: 1, b: 0 }
    }
    pub fn from_u64(&self, n: u64) -> FqElem {
        FqElem { a: n % self.inner.p, b: 0 }
    }
    pub fn from_i64(&self, n: i64) -> FqElem {
        let p = self.inner.p as i64;
        FqElem { a: n.rem_euclid(p) as u64, b: 0 }
    }

    pub fn add(&self, x: FqElem, y: FqElem) -> FqElem {
        let p = self.inner.p;
        FqElem { a: (x.a + y.a) % p, b: (x.b + y.b) % p }
    }
    pub fn sub(&self, x: FqElem, y: FqElem) -> FqElem {
        let p = self.inner.p;
        FqElem { a: (x.a + p - y.a) % p, b: (x.b + p - y.b) % p }
    }
    pub fn neg(&self, x: FqElem) -> FqElem {
        let p = self.inner.p;
        FqElem { a: (p - x.a) % p, b: (p - x.b) % p }
    }
    pub fn mul(&self, x: FqElem, y: FqElem) -> FqElem {
        let p = self.inner.p as u128;
        let (xa, xb, ya, yb) = (x.a as u128, x.b as u128, y.a as u128, y.b as u128);
        if self.inner.k == 1 {
            return FqElem { a: (xa * ya % p) as u64, b: 0 };
        }
        let n = self.inner.nonresidue as u128;
        // (xa + xb s)(ya + yb s) with s^2 = n
        let a = (xa * ya + xb * yb % p * n) % p;
        let b = (xa * yb + xb * ya) % p;
        FqElem { a: a as u64, b: b as u64 }
    }

    pub fn pow(&self, x: FqElem, mut e: u64) -> FqElem {
        let mut acc = self.one();
        let mut base = x;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, x: FqElem) -> Option<FqElem> {
        if x.a == 0 && x.b == 0 {
            return None;
        }
        // x^(q-2)
        Some(self.pow(x, self.q() - 2))
    }

    pub fn is_square(&self, x: FqElem) -> bool {
        if x == self.zero() {
            return true;
        }
        self.pow(x, (self.q() - 1) / 2) == self.one()
    }

    /// Deterministic search for an element of multiplicative order exactly 24.
    fn find_order24_element(&self) -> (u64, u64) {
        let q = self.q();
        assert!((q - 1) % 24 == 0, "24 divides q - 1 for unramified p");
        let e = (q - 1) / 24;
        let candidates = (1..self.inner.p).flat_map(|a| {
            let top = if self.inner.k == 2 { self.inner.p } else { 1 };
            (0..top).map(move |b| FqElem { a, b })
        });
        for c in candidates {
            let x = self.pow(c, e);
            if self.pow(x, 12) != self.one() && self.pow(x, 8) != self.one() {
                return (x.a, x.b);
            }
        }
        unreachable!("F_q* is cyclic with 24 | q - 1")
    }

    /// The reduction Q(zeta_24) -> F_{p^k}, zeta_24 -> the stored image.
    /// Errors when a coefficient denominator is divisible by p.
    pub fn reduce_cyc(&self, x: &CycNum) -> Result<FqElem, ExactError> {
        let p = self.inner.p;
        if !self.inner.has_zeta && x.is_rational().is_none() {
            return Err(ExactError::Parse(
                "prime-field context reduces only rational values".into(),
            ));
        }
        let pbig = num_bigint::BigInt::from(p);
        let mut acc = self.zero();
        let mut zpow = self.one();
        for c in x.coeffs().iter() {
            if !c.is_zero() {
                let dres = c.denom().mod_floor(&pbig);
                if dres.is_zero() {
                    return Err(ExactError::DenominatorDivisibleByP(p));
                }
                let n = c.numer().mod_floor(&pbig).to_u64().expect("reduced below p");
                let d = dres.to_u64().expect("reduced below p");
                let dinv = self.inv(self.from_u64(d)).expect("p coprime to denominator");
                let term = self.mul(self.mul(self.from_u64(n), dinv), zpow);
                acc = self.add(acc, term);
            }
            if self.inner.has_zeta {
                zpow = self.mul(zpow, self.zeta24());
            }
        }
        Ok(acc)
    }

    /// Multiplicative order of x in F_q*.
    pub fn mult_order(&self, x: FqElem) -> Option<u64> {
        if x == self.zero() {
            return None;
        }
        let group = self.q() - 1;
        let mut ord = group;
        for (f, _) in factorize(group) {
            while ord % f == 0 && self.pow(x, ord / f) == self.one() {
                ord /= f;
            }
        }
        Some(ord)
    }
}

fn mod_pow(b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u128;
    let mut base = b as u128 % m as u128;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % m as u128;
        }
        base = base * base % m as u128;
        e >>= 1;
    }
    acc as u64
}

/// Trial-division factorization; fine for the group orders that arise here.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = vec![];
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            let mut e = 0;
            while n % d == 0 {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
