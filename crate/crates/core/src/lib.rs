//! Near-group fusion categories over finite abelian groups.
//!
//! A near-group category has simple objects `G ∪ {m}` with fusion
//! `m ⊗ m = ⊕_{g∈G} g ⊕ k·m`. This crate handles the case `k = |G| − 1`
//! where the associator is built from a permutation `π` of `G` satisfying
//! three algebraic axioms. Everything is computed in exact cyclotomic
//! arithmetic.
//!
//! Layout:
//! - [`cyclotomic`], [`matrix`], [`monomial`]: exact arithmetic and a
//!   solver for systems of monomial equations over roots of unity.
//! - [`group`]: finite abelian groups and their character groups.
//! - [`pi`], [`field`]: the permutation `π`, its search, and the finite-field dictionary.
//! - [`associator`]: associator data from a primitive parameter set.
//! - [`pentagon`]: independent pentagon oracle and per-family verifiers.
//! - [`braiding`]: hexagon equations, braiding enumeration, twists.
//! - [`obstruction`]: the trivial-group case.

pub mod associator;
pub mod braiding;
pub mod classify;
pub mod cyclotomic;
pub mod error;
pub mod field;
pub mod group;
pub mod matrix;
pub mod monomial;
pub mod obstruction;
pub mod pentagon;
pub mod pi;

pub use cyclotomic::Cyclotomic;
pub use error::{Error, Result};
pub use group::AbelianGroup;
pub use matrix::Matrix;
