//! Univariate polynomials and rational functions over the cyclotomic field,
//! Moebius maps, rational coverings, and one quadratic extension with its
//! derivation.

pub mod factor;
pub mod moebius;
pub mod point;
pub mod poly;
pub mod quadext;
pub mod ratfunc;

pub use factor::{factor, small_divisors as factor_divisors, Factor, Factorization};
pub use moebius::{MoebiusMap, RationalMap};
pub use point::ProjPoint;
pub use poly::Poly;
pub use quadext::{derivation as quadext_derivation, pushforward_scale, QuadExt, QuadExtMorphism};
pub use ratfunc::{RatFunc, Value};
