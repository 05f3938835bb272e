//! Exact-arithmetic toolkit for verifying relative canonical shadows of curve
//! covers, the explicit D12 and S3 curve families, elliptic divisor-class
//! identities, and the certificate layer (nontorsion, independence,
//! non-isogeny, Stoll-list exclusion) built on reductions to finite fields.
//!
//! Everything is exact: rationals are arbitrary precision, cyclotomic numbers
//! live in a fixed power basis of Q(zeta_24), and no floating point is used
//! anywhere.

pub mod divisors;
pub mod elliptic;
pub mod exactalg;
pub mod fixtures;
pub mod models;
pub mod shadow;

pub mod certify;

pub use exactalg::cyc::CycNum;
pub use exactalg::fq::FqContext;
pub use exactalg::poly::Poly;
pub use exactalg::ratfn::RatFn;
pub use exactalg::Rat;
