//! Exact scalar arithmetic and linear algebra.

pub mod matrix;
pub mod polymat;
pub mod scalar;
pub mod smith;
pub mod unipoly;

pub use matrix::Matrix;
pub use polymat::{diagonalize, rank_drop_polynomial, PolyMatrix};
pub use scalar::{rat, rint, Field, QuadScalar, Rat};
pub use smith::{smith_normal_form, IntMatrix, SmithForm};
pub use unipoly::{factor_rational_poly, EigenFactors, UniPoly};
