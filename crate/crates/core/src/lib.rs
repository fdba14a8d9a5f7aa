//! Exact von Neumann dimensions of kernels of matrices over the Hecke algebra
//! of the infinite dihedral group.
//!
//! The pipeline is: write each matrix entry as `y1(z) + y2(z) s` with `z = st`
//! ([`kernel::split_gw`]), reduce to two rational matrices and one Laurent
//! matrix ([`kernel::component_matrices`]), count kernel multiplicities with
//! exact ranks, and combine them with the dimensions of the three summands
//! `K+`, `K-`, `K_empty` of `L^2_q G` ([`kernel::dims_of_k`]).
//!
//! [`spectral`] is an independent harness that checks the eigenvector
//! structure the pipeline relies on by truncation, with exact arithmetic.

pub mod dihedral;
pub mod hecke;
pub mod kernel;
pub mod laurent;
pub mod matrix;
pub mod random;
pub mod rational;
pub mod selftest;
pub mod spectral;

pub use dihedral::{Cmp, Gen, Params, Region, Word};
pub use hecke::{Basis, HeckeElem, KappaSpec};
pub use kernel::{Cert, Counts, DimResult, GwElem, HeckeMatrix, PiecewiseDim, RwMatrix};
pub use laurent::LaurentPoly;
pub use matrix::{LaurentMatrix, RatMatrix};
pub use rational::Q;

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parameters must be positive, got q_s={0}, q_t={1}")]
    NonPositiveParams(String, String),
    #[error("invalid rational literal {0:?}")]
    InvalidRational(String),
    #[error("basis mismatch: expected {expected:?}, found {found:?}")]
    BasisMismatch { expected: Basis, found: Basis },
    #[error("series diverges: (r_s r_t)^2 q_s q_t = {0} is not below 1")]
    Divergent(String),
    #[error("evaluation at z = 0")]
    ZeroEvaluationPoint,
    #[error("matrix shape mismatch: {0}")]
    Shape(String),
    #[error("matrix was split at {split} but dimension requested at {requested}")]
    ParamsMismatch { split: String, requested: String },
    #[error("dimension {dim} is not represented by counts {counts} at {params}")]
    NotRepresentable { dim: String, counts: String, params: String },
    #[error("counts (a, b, c) not constant in region {region}: {detail}")]
    ConstancyViolation { region: String, detail: String },
    #[error("piecewise mode needs a group-basis matrix")]
    PiecewiseNeedsGroupBasis,
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("parameters {0} are not squares of rationals")]
    NotSquare(String),
    #[error("element {0} is not invertible here")]
    NotInvertible(String),
}
