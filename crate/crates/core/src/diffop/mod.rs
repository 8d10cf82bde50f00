//! The noncommutative algebra of linear differential operators: application,
//! composition, pullback, gauge transforms, proportionality tests, singular
//! point analysis, companion/adjoint systems, and the quadratic-extension
//! rewrite.

pub mod op;
pub mod quadop;
pub mod singular;
pub mod system;

pub use op::DiffOp;
pub use quadop::{QuadDiffOp, RewriteOutcome};
pub use singular::{exponents_at, invert_variable_op, singular_points, Locus, SingularPoint};
pub use system::{LinearSystem, Side};
