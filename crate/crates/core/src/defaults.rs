//! Default knobs and pinned tolerances.
//!
//! Every threshold used by the check suites is defined here rather than
//! inline, so a report can always name the tolerance it was held to.

/// Hard ceiling for sieve allocation (least-prime-factor table entries).
pub const SIEVE_BOUND_MAX: u64 = 20_000_000;

/// Default prime cutoff for Euler-product evaluation.
pub const PRIME_CUTOFF: u32 = 10_000;

/// Evaluating a zeta prefactor closer than this to its pole is an error;
/// callers must switch to the condensed contour path instead.
pub const POLE_RADIUS: f64 = 1e-8;

/// Below this pairwise shift gap, swap sums switch to contour condensation.
pub const DEGENERACY_GAP: f64 = 1e-3;

/// Shift clusters tighter than this share one contour circle.
pub const MERGE_GAP: f64 = 1e-4;

/// Default real part of vertical integration lines.
pub const LINE_A: f64 = 0.1;

/// Default ramp width of the plateau weight `W`.
pub const RAMP_DELTA: f64 = 0.1;

/// Absolute tolerance of adaptive Gauss-Legendre quadrature.
pub const QUAD_TOL: f64 = 1e-12;

/// Trapezoid nodes per contour circle (power of two).
pub const CONTOUR_NODES: usize = 256;

/// Maximum contour circle radius around a shift.
pub const CONTOUR_RADIUS_MAX: f64 = 5e-2;

/// Radius of the small circles used for numeric residues.
pub const RESIDUE_RADIUS: f64 = 1e-2;

/// Nodes on numeric-residue circles.
pub const RESIDUE_NODES: usize = 128;

/// Default truncation order of formal-series identity checks.
pub const SERIES_ORDER: usize = 12;

/// Octaves of a transform tail that must sit below tolerance before the
/// truncation height of a vertical-line grid is accepted.
pub const TAIL_OCTAVES: usize = 3;

/// `Y = Y_FACTOR * sqrt(2D)` makes the squarefree c-sieve exact on the
/// support of the weight (every c^2 | d with d <= 2D has c <= sqrt(2D)).
pub const Y_FACTOR: f64 = 4.0;

/// Relative contribution at which the adaptive k-sum of the Poisson side
/// stops extending.
pub const K_OCTAVE_REL: f64 = 1e-12;

/// Absolute threshold at which the cosine+sine transform of the bump is
/// treated as zero. Direct quadrature of the transform carries a noise
/// floor near 2e-14, so smaller thresholds are not meaningful.
pub const TILDE_THRESHOLD: f64 = 1e-13;

/// Margin added to strict inequalities when checks are run "in the region
/// of absolute convergence".
pub const DOMAIN_MARGIN: f64 = 0.05;

/// Default c-sum cutoff in the functional-equation rewrite check.
pub const C_SUM_CUTOFF: u32 = 1000;
