//! Exact computation of rank-one and sl2-valued jump loci: resonance
//! varieties of finite CDGAs and Chevalley–Eilenberg algebras, sl2
//! representation varieties of finite-dimensional Lie algebras, and
//! rank-one characteristic varieties of torus-bundle groups.
//!
//! All arithmetic is exact (arbitrary-precision rationals, optionally
//! extended by one square root); no floating point anywhere.

pub mod cdga;
pub mod cli;
pub mod conn;
pub mod exactnum;
pub mod jsonutil;
pub mod liealg;
pub mod poly;
pub mod polyz;
pub mod reson;
pub mod sampling;
pub mod verify;

pub use exactnum::{Matrix, QuadScalar, Rat};
