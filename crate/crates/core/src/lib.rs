//! Exact computations in Iwahori–Hecke algebras and in categories of
//! Bott–Samelson bimodules of Coxeter systems.
//!
//! The crate is organized bottom-up:
//!
//! * [`field`]: rationals and real algebraic extensions `Q(2cos(pi/m))`;
//! * [`laurent`]: the ground ring `Z[v, v^-1]`;
//! * [`coxeter`]: Coxeter groups, reduced words, Bruhat order;
//! * [`hecke`]: the Hecke algebra, its trace and the Kazhdan–Lusztig basis;
//! * [`reps`]: reflection representations and the RF / RVF / good-pair tests;
//! * [`decat`]: character-level computations with Bott–Samelson objects;
//! * [`bimod`]: Bott–Samelson bimodules over polynomial rings, graded Hom
//!   spaces, degree-zero endomorphism algebras and base change along a good
//!   pair.

pub mod bimod;
pub mod coxeter;
pub mod decat;
pub mod field;
pub mod hecke;
pub mod laurent;
pub mod linalg;
pub mod reps;
