//! Column structures of lattice polytopes in exact arithmetic.
//!
//! The crate computes, for a lattice polytope `P`, its column vectors and
//! their partial product, balancedness and Col-divisibility, rigid systems,
//! doubling along facets and doubling spectra, and the elementary graded
//! automorphisms of the polytopal algebra `R[P]`, together with mechanical
//! checks of the Steinberg-type identities they satisfy.

pub mod exact;
pub mod corpus;
pub mod polytope;
pub mod columns;
pub mod doubling;
pub mod algebra;
pub mod report;
