//! Cluster algebras with exact Laurent arithmetic, polyamorous
//! specialisations, and integral frieze patterns of type A.
//!
//! - [`exactpoly`]: sparse Laurent polynomials over arbitrary-precision integers.
//! - [`quiver`]: skew-symmetric exchange matrices and their mutation.
//! - [`cluster`]: seeds, the exchange relation, enumeration of all seeds.
//! - [`specialize`]: `±1` specialisations, polycules, the GF(2) route.
//! - [`frieze`]: triangulated polygons, friezes and their verification.

pub mod cluster;
pub mod exactpoly;
pub mod frieze;
pub mod quiver;
pub mod specialize;

pub use cluster::{enumerate, laurent_check, ClusterError, ClusterInventory, Seed};
pub use exactpoly::{Assignment, ExponentVector, LaurentPoly, PolyError, Value};
pub use quiver::{Orientation, Quiver, QuiverError};
pub use specialize::{Specialization, SpecError};
pub use frieze::{Frieze, FriezeError, FriezeReport, PolygonLabelling, Triangulation};
