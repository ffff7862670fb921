//! Exact computer algebra for conformal superalgebras described by their
//! reduced subspaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`scalar`] — the field Q(i)(α), its text grammar and exact linear algebra;
//! * [`algebra`] — reduced algebras `(P, ⟨n⟩, L)`, the coefficient functions
//!   `G` and `F`, axiom checkers, invariant forms, ideals and simplicity;
//! * [`clifford`] — Clifford algebras on a null basis, module decomposition,
//!   the spinor representation and multidegree projections;
//! * [`construct`] — the generic builder from Clifford data, structure-constant
//!   completion and the finite exclusion sweeps;
//! * [`catalog`] — named constructors and isomorphism checks;
//! * [`reconstruct`] — the full conformal superalgebra `K[∂]P`, its
//!   `(n)`-products, axiom checks, mode brackets and conformal-vector changes;
//! * the `confsalg` binary — the command-line front end.

pub mod scalar;
pub mod algebra;
pub mod clifford;
pub mod construct;
pub mod lincomb;
pub mod catalog;
mod coords;
pub mod reconstruct;
