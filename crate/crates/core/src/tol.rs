//! Numerical guards and tolerances shared by every module.
//!
//! Guards decide what a computation may do (invert, normalise, divide);
//! tolerances decide whether an identity check passes.

/// Minimum norm for inversion `x / |x|^2`.
pub const ORIGIN_GUARD: f64 = 1e-9;

/// Minimum speed `|γ'|` for a sample to carry a Frenet frame.
pub const REGULARITY_GUARD: f64 = 1e-8;

/// Denominator guard `|<γ, n>|`, relative to the curve diameter.
pub const DENOMINATOR_REL: f64 = 1e-6;

/// Envelope determinant guard, relative to `|a| |a'|`.
pub const ENVELOPE_DET_REL: f64 = 1e-10;

/// Minimum `|κ|` for an osculating circle.
pub const INFLECTION_GUARD: f64 = 1e-10;

/// Closed-curve endpoint mismatch allowed by a curve definition.
pub const CLOSURE: f64 = 1e-9;

/// Residual target of bisection refinement.
pub const ROOT_RESIDUAL: f64 = 1e-10;

/// Iteration cap of bisection refinement.
pub const ROOT_MAX_ITER: usize = 80;

/// Criterion `κ|γ|² + 2<γ,n>` treated as zero by the cusp classifier.
pub const CUSP_CRITERION: f64 = 1e-8;

/// `|κ'|` above which a criterion root is an ordinary cusp.
pub const CUSP_KAPPA_PRIME: f64 = 1e-6;

/// Legendrian residual `|<γ', ν>|`, relative to `max(1, |γ'|)`.
pub const LEGENDRIAN: f64 = 1e-8;

/// Unit-norm tolerance for normal fields.
pub const UNIT_NORM: f64 = 1e-9;

/// Closed-form identity checks on symbolic curves.
pub const IDENTITY: f64 = 1e-9;

/// Identity checks that go through finite-difference frames of sampled curves.
pub const SAMPLED_IDENTITY: f64 = 1e-6;

/// Finite-difference speed below this fraction of the median marks a sample
/// of a sampled curve as outside its regular part.
pub const SAMPLED_REGULAR_REL: f64 = 1e-3;

/// Velocity-minimum threshold of the numeric cusp detector, relative to the
/// median polyline speed.
pub const CUSP_VELOCITY_REL: f64 = 1e-3;
