//! The explicit curve families: affine and projective plane-curve carriers,
//! their automorphisms and quotient maps, branch expansions for resolving
//! indeterminate images, and verified incidence/symmetry properties.

pub mod aut;
pub mod branch;
pub mod curves;
pub mod map;

use crate::exactalg::ExactError;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum ModelError {
    #[error("unknown chart index {0}")]
    UnknownChart(usize),
    #[error("defining polynomial is not homogeneous of degree {1} ({0})")]
    NotHomogeneous(String, u32),
    #[error("expected {0} parameters, got {1}")]
    ParameterCount(usize, usize),
    #[error("polynomial involves more than the two elimination variables")]
    NotBivariate,
    #[error("fixed points of the identity automorphism are the whole curve")]
    IdentityAutomorphism,
    #[error("root search incomplete for a fixed-point equation")]
    RootSearchIncomplete,
    #[error("point does not lie on the curve")]
    PointOffCurve,
    #[error("point is singular on the curve")]
    SingularPoint,
    #[error("branch residual does not vanish to order {0}")]
    BranchResidual(usize),
    #[error("indeterminacy of {0} unresolved at the configured truncation order")]
    UnresolvedIndeterminacy(String),
    #[error("finite-field sampling found no curve points")]
    NoPointsFound,
    #[error("sampling context must have residue degree 1")]
    UnsupportedContext,
    #[error(transparent)]
    Exact(#[from] ExactError),
}
