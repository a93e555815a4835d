//! Exact computation of Kazhdan-Lusztig, inverse Kazhdan-Lusztig and
//! characteristic polynomials of matroids.
//!
//! The crate offers three independent routes to every invariant:
//!
//! * interval recursions over the lattice of flats ([`invariants`]),
//! * the Kazhdan-Lusztig-Stanley solver in the incidence algebra of the
//!   lattice ([`incidence`]),
//! * closed forms for boolean and uniform matroids.
//!
//! [`lab`] runs batch checks of coefficient properties over families of
//! matroids and records witnesses for any violation.

pub mod error;
pub mod incidence;
pub mod invariants;
pub mod lab;
pub mod lattice;
pub mod matroid;
pub mod polynomial;

pub use error::{Error, Result};
pub use incidence::IncidenceFunction;
pub use invariants::{InvariantBundle, Method};
pub use lattice::{FlatLattice, LatticeConfig};
pub use matroid::{ElementSet, Matroid, MatroidSpec};
pub use polynomial::Polynomial;
