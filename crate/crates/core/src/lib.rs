//! Exact computer algebra for linear differential operators over the rational
//! function field: cyclotomic scalars, rational functions and Moebius maps,
//! an Ore-style operator algebra with pullbacks and gauge transforms, truncated
//! Puiseux solutions with rational reconstruction, finite matrix groups with
//! invariant theory, and the symmetry/descent machinery tying them together.

pub mod error;
pub mod scalars;
pub mod linalg;
pub mod funcfield;
pub mod diffop;
pub mod series;
pub mod groups;
pub mod galois;

pub use error::{Error, Result};
