//! Pinned tolerances and grid defaults.
//!
//! Every threshold that influences a verdict lives here so reports can embed
//! full provenance. Values marked "relative" are multiplied by a problem
//! scale (usually `max(1, ||T||)`) at the point of use.

/// Relative eigenvalue clustering tolerance: raw eigenvalues closer than
/// `CLUSTER_REL * max(1, ||T||)` are treated as one spectral value. Below the
/// typical backward error of dense solvers at n <= 64, above rounding noise.
pub const CLUSTER_REL: f64 = 1e-9;

/// Relative singular-value cutoff for rank decisions. When ranking powers
/// `(lambda I - T)^k` the cutoff is scaled by `max(1, ||lambda I - T||)^k`
/// so growth of the powered matrix cannot fake a rank collapse.
pub const RANK_REL: f64 = 1e-10;

/// Peripheral membership: `|lambda| >= r(T) * (1 - EPS_PER)`.
pub const EPS_PER: f64 = 1e-8;

/// Resolvent solves must reach `||(mu I - T) X - I|| <= RESOLVENT_REL_RESID
/// * ||X|| * ||mu I - T||`, refining iteratively up to [`MAX_REFINE`] passes.
pub const RESOLVENT_REL_RESID: f64 = 1e-12;
pub const MAX_REFINE: usize = 5;

/// Relative slack applied to every pointwise resolvent inequality; the
/// solve residual is added on top per point.
pub const INEQ_SLACK: f64 = 1e-8;

/// Angular tolerance for cyclicity power checks.
pub const ANGULAR_TOL: f64 = 1e-6;

/// Modulus agreement required of members of a purported cyclic set,
/// relative to `max(1, r)`.
pub const CYCLIC_MODULUS_REL: f64 = 1e-6;

/// Spectral membership tolerance for power-closure conclusions
/// (`lambda^k` matched against sigma(T)), relative to `max(1, r(T))`.
pub const POWER_CLOSURE_TOL: f64 = 1e-6;

/// Weighting-scheme partial sums must hit 1 within this plus the tail bound.
pub const SCHEME_SUM_TOL: f64 = 1e-12;

/// ws_bound tail certification: truncation must contribute at most this.
pub const WS_TAIL_TOL: f64 = 1e-9;
/// Safety factor applied to the power-norm envelope during tail certification.
pub const WS_SAFETY: f64 = 10.0;
/// Hard cap on the truncation length of a single `f_j(T)` evaluation.
pub const WS_MAX_TERMS: usize = 200_000;

/// Limit detection threshold for the ws invariant ideal: coordinates whose
/// `f_j(T) e_i` stabilizes below this (in norm) are assigned to the ideal.
pub const WS_IDEAL_LIMIT: f64 = 1e-8;

/// Trend thresholds for boundedness verdicts. A growth trend at or above
/// `TREND_UNBOUNDED` on residual-clean data is declared unbounded; a finite
/// sup with trend at or below `TREND_BOUNDED` is declared plausibly bounded.
/// The window between the two is reported as inconclusive.
pub const TREND_BOUNDED: f64 = 0.1;
pub const TREND_UNBOUNDED: f64 = 0.5;

/// Dyadic resolvent grid r_n = 1 + 2^-n. The fit drops the first
/// `FIT_EXCLUDE_HEAD` points (transient regime) and needs at least
/// `MIN_RETAINED` residual-clean points.
pub const GRID_N_MIN: u32 = 2;
pub const GRID_N_MAX: u32 = 26;
pub const FIT_EXCLUDE_HEAD: usize = 3;
pub const MIN_RETAINED: usize = 8;

/// Operationalization of two-sided `~` growth comparisons: ratios over the
/// retained window may spread by at most this factor, and fitted exponents
/// must agree within `EXPONENT_AGREE`.
pub const RATIO_SPREAD_MAX: f64 = 10.0;
pub const EXPONENT_AGREE: f64 = 0.1;

/// Quadratic-growth hypothesis: fitted exponent must be <= 2 + EXPONENT_AGREE.
pub const QUADRATIC_EXPONENT_CAP: f64 = 2.0 + EXPONENT_AGREE;

/// Zhang's diagonal-power condition: the finite-horizon estimate of
/// `limsup a_n^{1/n}` must reach `1 - ZHANG_SLACK`.
pub const ZHANG_SLACK: f64 = 1e-6;

/// o(s) declaration in the principal-ideal closure test: the ratio
/// `||(y - s x)^-|| / s` must fall below `O_SMALL_REL * ||x||_inf`.
pub const O_SMALL_REL: f64 = 1e-9;
/// Dyadic s-grid `s = 2^-k`, k = 1..=O_SMALL_STEPS.
pub const O_SMALL_STEPS: u32 = 30;

/// Eigenvector alignment: `||T z - lambda z|| <= EIGENPAIR_TOL * max(1, ||T||) * ||z||`.
pub const EIGENPAIR_TOL: f64 = 1e-8;

/// Fixed-vector checks of the form `||T|z| - |z||| <= FIXED_VECTOR_TOL`.
pub const FIXED_VECTOR_TOL: f64 = 1e-8;

/// Torsion similarity: entries of the peripheral eigenvector must exceed
/// `TORSION_MIN_ENTRY * ||z||`; the conjugation defect must stay within
/// `TORSION_DEFECT_REL * ||T||`.
pub const TORSION_MIN_ENTRY: f64 = 1e-12;
pub const TORSION_DEFECT_REL: f64 = 1e-10;

/// Appendix checks: peripheral-modulus spectral values of restriction and
/// quotient must lie within this of a spectral value of the full operator.
pub const INDUCED_SPECTRUM_TOL: f64 = 1e-7;
/// Residual allowed in the resolvent-restriction commutation check.
pub const INDUCED_RESOLVENT_TOL: f64 = 1e-9;

/// Phase grid density for feasibility searches with a free complex phase.
pub const PHASE_GRID: usize = 64;

/// Strict positivity of a computed Perron vector: smallest entry relative to
/// the largest must exceed this.
pub const STRICT_POS_REL: f64 = 1e-10;

/// Ideal enumeration switches to the flagged SCC-down-set family above this
/// dimension (full enumeration is exponential in the number of components).
pub const IDEAL_ENUM_MAX_DIM: usize = 20;

/// Default horizon for power / Cesaro boundedness scans.
pub const POWER_HORIZON: usize = 100;

/// Finite-horizon floor for "orbit stays away from zero" checks.
pub const ORBIT_FLOOR: f64 = 1e-6;
