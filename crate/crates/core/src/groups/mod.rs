//! Finite matrix groups over the cyclotomic field: closure and structure
//! queries, Reynolds-operator invariant theory, ideal-fixing checks, and
//! exact-sequence verification.

pub mod element;
pub mod group;
pub mod homogpoly;
pub mod ideal;
pub mod reynolds;
pub mod sequence;

pub use element::{entry_monomial, GroupElement, LaurentEntry};
pub use group::{projective_normalize, FiniteMatrixGroup};
pub use homogpoly::{monomials, HomogPoly, VarSet};
pub use ideal::{fixes_ideal, in_ideal_span, transform_graded, DEFAULT_DEGREE_CAP};
pub use reynolds::{invariant_dimension, quadratic_form_rank, reynolds_average, reynolds_invariants};
pub use sequence::{exact_sequence_groups, exact_sequence_orders, ExactSequenceReport, SequenceMode};
