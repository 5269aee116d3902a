//! Exact arithmetic for torsion anomalous intersections in powers of
//! elliptic curves with complex multiplication by a Euclidean order.
//!
//! The crate models `E^N` through its endomorphism ring: algebraic
//! subgroups are matrices over the order, torsion points live in
//! `(O/nO)^N`, and points of a finite-rank subgroup are order-linear
//! combinations of abstract generators plus a torsion class.

pub mod bounds;
pub mod cli;
pub mod enumeration;
pub mod io;
pub mod error;
pub mod field;
pub mod intmat;
pub mod lll;
pub mod matrix;
pub mod mordell_weil;
pub mod orders;
pub mod reductions;
pub mod siegel;
pub mod subgroups;

pub use error::{Error, Result};
pub use matrix::OMatrix;
pub use orders::{Discriminant, OrderElement};
