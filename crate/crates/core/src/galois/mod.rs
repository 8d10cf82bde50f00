//! Orchestration of the main pipeline: symmetry detection, symmetry lifts and
//! normalizer checks, descent verification, and the field presentation from
//! dual first integrals.

pub mod descent;
pub mod knabla;
pub mod lift;
pub mod symmetry;

pub use descent::{verify_descent, DescentCertificate};
pub use knabla::{knabla_presentation, Classification, KNablaPresentation, RatioGenerator, WitnessExpr};
pub use lift::{
    chain_rule_matrix, compute_lift, lift_normalizes, local_map_series, non_resonant_exponents,
    verify_system_lift, LiftBounds, SymmetryGroupData,
};
pub use symmetry::{
    diagonal_system_symmetry, fixed_points, is_log_derivative, moebius_candidates,
    symmetry_group, verify_symmetry, CandidateSet, Lift, LiftStatus, SymmetryGroup, SymmetryRecord,
};
