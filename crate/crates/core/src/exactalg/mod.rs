//! Exact arithmetic foundation: big rationals, the cyclotomic field
//! Q(zeta_24), univariate and multivariate polynomials, rational functions,
//! and reduction to finite fields.

pub mod coeff;
pub mod cyc;
pub mod fq;
pub mod mpoly;
pub mod poly;
pub mod ratfn;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision rational in lowest terms with positive denominator.
/// `num_rational::BigRational` maintains exactly this normal form.
pub type Rat = num_rational::BigRational;

/// Errors raised by the exact-arithmetic layer.
#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum ExactError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("conjugation index {0} is not a unit mod 24")]
    BadConjugationIndex(u32),
    #[error("prime {0} is ramified in Q(zeta_24)")]
    RamifiedPrime(u64),
    #[error("{0} is not an odd prime")]
    NotAnOddPrime(u64),
    #[error("denominator divisible by p={0}")]
    DenominatorDivisibleByP(u64),
    #[error("evaluation at a pole of the rational function")]
    PoleAtValue,
    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(String, String),
    #[error("{0}")]
    Parse(String),
}

pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parse "p/q" or "p" with optional sign; exact, no floats.
pub fn parse_rat(s: &str) -> Result<Rat, ExactError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s, "1"),
    };
    let n: BigInt = num
        .parse()
        .map_err(|_| ExactError::Parse(format!("bad rational {s:?}")))?;
    let d: BigInt = den
        .parse()
        .map_err(|_| ExactError::Parse(format!("bad rational {s:?}")))?;
    if d.is_zero() {
        return Err(ExactError::DivisionByZero);
    }
    Ok(Rat::new(n, d))
}

/// Render a rational as "p" or "p/q".
pub fn rat_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Exact rational cube root, when one exists.
pub fn rational_cube_root(r: &Rat) -> Option<Rat> {
    let n = r.numer();
    let d = r.denom();
    let cn = if n.is_negative() { -(-n).cbrt() } else { n.cbrt() };
    let cd = d.cbrt();
    if &(&cn * &cn * &cn) == n && &(&cd * &cd * &cd) == d {
        Some(Rat::new(cn, cd))
    } else {
        None
    }
}

/// Signed squarefree part: n = s * m^2 with s squarefree, preserving sign.
pub fn squarefree_part(n: &BigInt) -> BigInt {
    if n.is_zero() {
        return BigInt::zero();
    }
    let sign = if n.is_negative() { -1 } else { 1 };
    let mut m = n.abs();
    let mut out = BigInt::one();
    let mut d = BigInt::from(2u32);
    while &d * &d <= m {
        let mut e = 0u32;
        while (&m % &d).is_zero() {
            m /= &d;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &d;
        }
        d += 1;
    }
    out * m * BigInt::from(sign)
}
