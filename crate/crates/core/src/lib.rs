//! Combinatorics of interval systems attached to four families of lattice
//! polygons: exhaustive desk-scale enumeration, large construction families,
//! and logarithmic asymptotics of the resulting counts.

pub mod asymptotics;
pub mod collection;
pub mod construct;
pub mod error;
pub mod oracle;
pub mod polygon;
pub mod system;

pub use error::{Error, Result};
pub use polygon::{Family, PolygonSpec, SigmaProfile};
pub use system::{Interval, MarkedSystem, ProperSystem};
