//! Library-wide tolerances.
//!
//! Every threshold used by the checks in this crate lives here so that the
//! acceptance suite and the `verify` command agree on what "passing" means.

/// Algebraic identities (associativity, inverses, unit constraints) on
/// unit-scale inputs.
pub const ALGEBRAIC: f64 = 1e-12;

/// Imaginary part allowed on quantities that are real by construction.
pub const REAL_PART: f64 = 1e-13;

/// Representation formula, regular translation and other identities that
/// sum a series at two different points.
pub const EVALUATION: f64 = 1e-11;

/// Pointwise star-product identity (compares two evaluation paths).
pub const POINTWISE_STAR: f64 = 1e-10;

/// Floor for the reported convergence gap of grid+refine maximizations.
pub const CERTIFIED_FLOOR: f64 = 1e-12;

/// Target convergence gap for grid refinement.
pub const REFINE_GAP: f64 = 1e-6;

/// Largest degree for which binomial recentering is carried out with exact
/// integer binomials.
pub const MAX_TRANSLATION_DEGREE: usize = 60;

/// Newton residual that counts as attaining a target value.
pub const NEWTON_RESIDUAL: f64 = 1e-8;

/// Central-difference step for Jacobians.
pub const JACOBIAN_STEP: f64 = 1e-6;

/// Bisection tolerance (in s) for the root of s * M(r - s) = r.
pub const MU_ROOT: f64 = 1e-9;

/// Relative interior margin used when sampling O(rho) for coverage reports.
pub const COVERAGE_MARGIN: f64 = 1e-3;
