//! Exact computation of Euler characteristics of differential forms and of
//! Hodge numbers for complete intersections in toric varieties.
//!
//! The input is purely combinatorial: a fan (rays and maximal cones) and the
//! supports of the defining Laurent polynomials. All coefficients are assumed
//! generic, so every result is a function of the supports alone.
//!
//! Module map:
//! - [`lattice_polyhedra`]: Smith normal form, convex hulls, normal fans,
//!   lattice-point counting, affine lattice reduction.
//! - [`fan`]: fans, structural predicates, simplicial refinement, restricted
//!   supports, degree matrices, orbit problems.
//! - [`hilbert`]: the inclusion-exclusion Hilbert function `H(s)` and `χ(O_Y)`.
//! - [`forms_euler`]: `χ(Y, Ω^p)` for alternating, symmetric and tensor forms.
//! - [`wps`]: weighted projective spaces via univariate residues.
//! - [`dk_hodge`]: compactly supported Hodge-Deligne tables of torus complete
//!   intersections and Hodge diamonds of compact toric complete intersections.
//! - [`cli`]: problem documents and rendering used by the `toric-hodge` binary.

pub mod cli;
pub mod dk_hodge;
pub mod error;
pub mod fan;
pub mod forms_euler;
pub mod hilbert;
pub mod lattice_polyhedra;
pub mod wps;

pub use error::{Error, Result};
