//! Exact computations for total coordinate rings (Cox rings) of a few model
//! families: blow-ups of projective space at points, points on a line,
//! smooth complete toric varieties, and monomial-curve blow-ups of weighted
//! projective planes.
//!
//! Graded pieces of the blow-up models can be computed three independent
//! ways (fat-point interpolation, the closed form for collinear points, and
//! Gröbner bases of ideal intersections), which lets every answer be
//! cross-checked.

pub mod abgroup;
pub mod blowup;
pub mod collinear;
pub mod error;
pub mod exact;
pub mod groebner;
pub mod poly;
pub mod toric;

pub use error::{Error, Result};
pub use exact::Field;
pub use poly::{MultiDegree, MultiPoly};
