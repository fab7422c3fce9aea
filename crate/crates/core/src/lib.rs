//! Exact tame, Contou-Carrère and higher symbols over Laurent series rings
//! with finite-field and artinian coefficients, together with executable
//! reciprocity laws on the projective line and at points of the plane.

pub mod error;
pub mod geometry;
pub mod laurent;
pub mod reciprocity;
pub mod rings;
pub mod symbols;

pub use error::{Error, Result};
pub use geometry::{Place, RationalFunction, SurfaceFlag};
pub use laurent::{LaurentSeries, UnitDecomposition};
pub use reciprocity::ReciprocityReport;
pub use rings::{Ring, RingValue};
