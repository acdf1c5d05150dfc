//! Lattice width of convex lattice polygons, toric fibrations of minimal
//! degree, and minimal-degree rational families on blown-up planes.

pub mod cli;
pub mod error;
pub mod lattice;
pub mod picard;
pub mod polygon;
pub mod toric;
pub mod width;

pub use error::{Error, Result};
pub use polygon::{LatticePoint, LatticePolygon};
pub use width::{Viewangle, WidthReport};
