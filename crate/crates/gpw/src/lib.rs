//! Exact-arithmetic workbench for finite-dimensional algebras graded by
//! finite abelian groups: constructions, structural analysis, graded
//! polynomial identity decision procedures, and the claim verification
//! suites behind the `gpw` command-line tool.
//!
//! Everything is computed over the rationals with arbitrary precision;
//! there is no floating point and no sampling anywhere.

pub mod algebra;
pub mod constructions;
pub mod engine;
pub mod group;
pub mod io;
pub mod poly;
pub mod report;
pub mod scalar;
pub mod suites;
pub mod subspace;
