//! Exact lattice and root-system combinatorics of marked del Pezzo lattices.
//!
//! The lattice `Z^{r+1}` (`3 <= r <= 8`) with basis `h, e1, .., er`, form
//! `diag(1, -1, .., -1)` and anticanonical class `kappa = 3h - e1 - .. - er`
//! carries the root system of type `E_r` on `kappa^perp`. This crate
//! enumerates its roots, lines, conics and other rational classes, acts on
//! them by the Weyl group, classifies sub-configurations of roots, and models
//! period homomorphisms into a torsion group.
//!
//! All arithmetic is exact.

pub mod degeneration;
pub mod error;
pub mod geometry;
pub mod lattice;
pub mod period;
pub mod roots;
pub mod weights;
pub mod weyl;

pub use degeneration::{OrbitPart, RdpConfiguration};
pub use error::{Error, Result};
pub use lattice::{inner, DiscriminantData, LatticeVector, MarkedLattice};
pub use geometry::CurveClass;
pub use period::{PeriodHomomorphism, TorsionPoint};
pub use roots::{DynkinType, Root, RootSystemData};
pub use weyl::WeylWord;
