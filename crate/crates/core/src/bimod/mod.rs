//! Bott–Samelson bimodules over the polynomial ring of a reflection
//! representation.
//!
//! Generic-fiber statements are checked by evaluation at rational points
//! where no relevant linear form vanishes, so every verdict is exact.

use thiserror::Error;

use crate::coxeter::CoxeterError;
use crate::decat::DecatError;
use crate::reps::{RepError, ReflectionFailure};

pub mod adjunction;
pub mod bs;
pub mod end0;
pub mod hom;
pub mod poly;
pub mod ring;
pub mod sequence;
pub mod theorems;
pub mod xfunctor;

pub use adjunction::{adjunction_f, adjunction_fs, adjunction_g, AdjunctionReport};
pub use bs::{BSBimodule, BsElem};
pub use end0::{decompose_bs, Decomposition, End0Algebra, Summand};
pub use hom::{graded_hom, hom_solve, BsMap, GradedHom, HomSpace};
pub use poly::Poly;
pub use ring::PolyRing;
pub use sequence::{generic_splitting, standard_matrix, theta_exact_sequence};
pub use theorems::{verify_theorem1, verify_theorem2, Theorem1Report, Theorem2Report};
pub use xfunctor::BaseChange;

#[derive(Debug, Error)]
pub enum BimodError {
    #[error("simple reflections do not act as reflections: {0:?}")]
    Reflection(ReflectionFailure),
    #[error("configuration: {0}")]
    Config(String),
    #[error("non-generic point: {0}")]
    NonGeneric(String),
    #[error("non-split semisimple quotient: {0}")]
    NonSplit(String),
    #[error("unsupported eigenvalues: {0}")]
    UnsupportedEigenvalues(String),
    #[error("not a good pair: {0}")]
    NotGoodPair(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Decat(#[from] DecatError),
    #[error(transparent)]
    Coxeter(#[from] CoxeterError),
}
