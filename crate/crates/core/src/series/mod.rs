//! Truncated Puiseux-series solutions, series arithmetic, matrix inversion,
//! rational reconstruction, invariant evaluation and relation spaces.

pub mod closed;
pub mod matrix;
pub mod puiseux;
pub mod reconstruct;
pub mod relations;
pub mod solve;

pub use closed::{closed_form_series, Integrand, PowerAtom, Recipe};
pub use matrix::{
    invert_matrix_series, is_identity, mat_mul, ordinary_basis, system_fundamental_matrix,
    system_residual, SeriesMatrix, SolutionMatrix,
};
pub use puiseux::{expand_ratfunc, poly_series, PuiseuxSeries};
pub use reconstruct::rational_reconstruct;
pub use relations::{
    check_relation, dual_first_integral, eval_invariant, eval_on_named, relation_space,
    space_contains, CoefficientPoly, DualFirstIntegral, RelationSpace,
};
pub use solve::{apply_to_series, frobenius, is_solution_to, ordinary_basis_solutions, LocalOperator};
