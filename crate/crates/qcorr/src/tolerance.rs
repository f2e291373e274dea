//! Numerical tolerances used by the toolkit.
//!
//! All state matrices are unit-trace, so the absolute and relative scales
//! coincide up to the Frobenius norm of the state. Equality checks get one
//! decade of headroom over achievable eigensolver accuracy at the dimensions
//! this crate targets; inequality slack sits another decade lower.

/// Relative Frobenius defect allowed when a matrix claims to be Hermitian.
pub const HERMITICITY: f64 = 1e-12;

/// Allowed deviation of the trace of a density matrix from one.
pub const UNIT_TRACE: f64 = 1e-10;

/// Most negative eigenvalue tolerated in a density matrix; anything in
/// `[-EIGENVALUE_FLOOR, 0)` is clipped to zero before entropy use.
pub const EIGENVALUE_FLOOR: f64 = 1e-10;

/// Absolute eigenvalue cutoff separating the numerical range of a state from
/// its kernel (rank decisions, support projectors, relative entropy).
pub const RANK_CUTOFF: f64 = 1e-12;

/// Mass of `rho` allowed outside the support of `sigma` before relative
/// entropy reports a support violation instead of a value.
pub const SUPPORT_LEAK: f64 = 1e-9;

/// Default tolerance for equality checks `|x - y| <= EQUALITY`.
pub const EQUALITY: f64 = 1e-8;

/// Default slack for inequality checks `x <= y + INEQUALITY`.
pub const INEQUALITY: f64 = 1e-9;

/// Cross-norm bound certifying that two reductions have orthogonal supports.
pub const ORTHO_CROSS: f64 = 1e-10;

/// Frobenius distance below which two states are considered indistinct when a
/// family construction requires genuinely different factors.
pub const DISTINCTNESS: f64 = 1e-6;

/// Smallest admissible mixture weight.
pub const MIN_WEIGHT: f64 = 1e-12;

/// Default cap on the total Hilbert-space dimension of dense operations.
pub const DIM_CAP: usize = 4096;
