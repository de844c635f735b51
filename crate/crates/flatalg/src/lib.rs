//! Exact-arithmetic toolkit for Z2-graded nonassociative algebras carrying
//! pseudo-Euclidean bilinear forms.
//!
//! The crate works entirely over the rationals: structure constants, Gram
//! tables and every derived quantity are exact, and all identity checks are
//! exhaustive over basis tuples, reporting the first counterexample in
//! canonical order. On top of the graded linear algebra it provides
//!
//! * Levi-Civita product pairs of pseudo-Euclidean superalgebras, their
//!   curvature tensors and flatness checks,
//! * structural invariants (Leibniz ideal, center, annihilator, nilpotency)
//!   and the quadratic characterisations of flat quadratic Leibniz
//!   superalgebras,
//! * T*- and Pi(T*)-extensions, central extensions, semidirect products and
//!   the four double-extension variants with their admissibility systems,
//!   plus the inverse deconstruction down to a Lie core.

pub mod algebra;
pub mod bilinear;
pub mod error;
pub mod extensions;
pub mod fixtures;
pub mod levicivita;
pub mod linalg;
pub mod scalar;
pub mod space;
pub mod structure;

pub use algebra::{
    CheckReport, Counterexample, DiSuperAlgebra, IdentityKind, ProductTensor, Side, SideValue,
    SuperAlgebra,
};
pub use bilinear::{build_form, BilinearForm, SubSpace};
pub use error::Error;
pub use linalg::{solve_linear, LinSolve, Matrix};
pub use scalar::Scalar;
pub use space::{koszul, parity_shift, LinearMap, Parity, SuperSpace, Vector};
