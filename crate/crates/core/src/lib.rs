//! Taut structures, angle structures and their combinatorial obstructions on
//! ideal triangulations of cusped 3-manifolds.
//!
//! All arithmetic is exact. Angles are measured in units of π, so an angle
//! structure is a rational solution of the angle equations with tetrahedron
//! sums 1 and edge sums 2.

pub mod angle;
pub mod bundle;
pub mod exact;
pub mod fixtures;
pub mod normal;
pub mod triangulation;

pub use exact::{lp_max_min_slack, LpResult, LpStatus, RatMatrix, Rational};
pub use triangulation::{
    validate, EdgeClass, EdgeSlot, GluingTable, Perm4, Triangulation, TriangulationError,
    ValidationReport,
};
pub use angle::{
    build_system, enumerate_taut, is_semi_angle, is_taut, solve_angle, taut_transport_23,
    verify_certificate, AngleAssignment, AngleSolution, AngleSystem, AngleVerdict, Certificate,
    TautStructure,
};
pub use bundle::{build_layered, degree2_report, monodromy_matrix, MonodromyWord};
pub use normal::{canonical_basis, chi_angles, chi_star, matching_matrix, NormalVector, QVector};
