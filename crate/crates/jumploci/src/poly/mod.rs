//! Sparse multivariate polynomials over the rationals, the Segre
//! factorization of torus-invariant polynomials, symmetric-function
//! reduction, and the trivial-resonance certificate construction.

pub mod certificate;
mod multipoly;
mod segre;
mod symmetric;

pub use certificate::{build_certificate, Certificate, REP_COORDS};
pub use multipoly::{poly_det, MultiPoly};
pub use segre::{factor_through_segre, is_torus_invariant, segre_var, substitute_segre};
pub use symmetric::{elementary_symmetric, symmetric_reduce};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("polynomial is not invariant under the torus action (monomial with unbalanced bidegree: {0})")]
    NotInvariant(String),
    #[error("polynomial is not symmetric in the designated variables")]
    NotSymmetric,
    #[error("variable {0} is not assigned to a block")]
    UnassignedVariable(String),
    #[error("certificate seed must not vanish at the origin")]
    ZeroAtOrigin,
}
