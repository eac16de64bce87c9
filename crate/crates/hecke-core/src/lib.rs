//! Exact computation for generic two-parameter affine Hecke algebras.
//!
//! The crate builds based root data, their extended affine Weyl groups, the
//! Hecke algebra over Z[a,b], parahoric subalgebras with their Frobenius
//! structure, the oriented Coxeter-complex resolution, the dual-side bimodule
//! identities, and central-element experiments.  Everything is exact: integer,
//! rational, and sparse-polynomial arithmetic throughout, no floats.

pub mod coeff;
pub mod rootdata;
pub mod weyl;
pub mod hecke;
pub mod parahoric;
pub mod complex;
pub mod dualres;
pub mod center;
pub mod expr;

pub use coeff::{ABPoly, ZetaCoeff};
pub use rootdata::RootDatum;
pub use weyl::WeylElt;
pub use hecke::HeckeElt;
