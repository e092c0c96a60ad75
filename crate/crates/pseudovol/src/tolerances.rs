//! Numerical thresholds used across the crate.

/// Zero threshold for eigenvalues of a restricted Gram matrix.
pub const EPS_SIG: f64 = 1e-9;

/// Orthonormality tolerance for subspace bases.
pub const EPS_ORTHO: f64 = 1e-12;

/// Projector distance below which two subspaces are considered equal.
pub const EPS_SUBSPACE: f64 = 1e-10;

/// Guard in |cos 2theta| for pairings against measures with degenerate support.
pub const DELTA_SING: f64 = 0.05;

/// Maximal Taylor subtraction depth of the finite-part engine.
pub const M_MAX: usize = 12;

/// Depth cap when Taylor coefficients come from finite differences.
pub const M_MAX_NUMERIC: usize = 6;

/// |lambda + m| below this is treated as the pole lambda = -m.
pub const POLE_WINDOW: f64 = 1e-9;

/// |lambda + m| below this (but outside the pole window) raises a conditioning flag.
pub const NEAR_POLE: f64 = 1e-6;

/// Base step and number of halvings for Richardson-extrapolated differences.
pub const RICHARDSON_H0: f64 = 1e-2;
pub const RICHARDSON_LEVELS: usize = 5;

/// Maximal trapezoid points per circle for torus averages.
pub const N_TOR: usize = 256;

/// Absolute tolerance of adaptive quadrature.
pub const QUAD_TOL: f64 = 1e-8;

/// Admissibility tolerance for exact Klain vectors.
pub const EPS_KLAIN: f64 = 1e-12;

/// Variation threshold for divergence of difference quotients.
pub const SMOOTHNESS_TOL: f64 = 1e-4;

/// Facet normal components below this are treated as zero.
pub const EPS_FACET: f64 = 1e-12;

/// Minkowski closure tolerance for facet lists.
pub const EPS_CLOSURE: f64 = 1e-9;
