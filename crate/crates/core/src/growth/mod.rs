//! Resolvent growth profiles along dyadic rays `r_n = 1 + 2^-n` down to the
//! spectral circle, growth-exponent fitting, Abel / Cesaro / power
//! boundedness, and (WS)-boundedness with certified truncation tails.

pub mod schemes;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::PerronError;
use crate::fit;
use crate::lattice::{modulus, CoordinateIdeal, LatticeVector, PositiveOperator};
use crate::matrix::CMatrix;
use crate::serde_util::complex_pair;
use crate::spectral::{self, SpectrumReport};
use crate::tol;
use schemes::{SchemeIndex, WeightingScheme};

/// Dyadic grid and fit-window parameters; recorded in every verdict.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridParams {
    pub n_min: u32,
    pub n_max: u32,
    /// Points with the smallest n (transient regime) excluded from fits.
    pub fit_exclude_head: usize,
    /// Minimum residual-clean points a fit needs.
    pub min_retained: usize,
}

impl Default for GridParams {
    fn default() -> Self {
        Self {
            n_min: tol::GRID_N_MIN,
            n_max: tol::GRID_N_MAX,
            fit_exclude_head: tol::FIT_EXCLUDE_HEAD,
            min_retained: tol::MIN_RETAINED,
        }
    }
}

impl GridParams {
    pub fn with_range(n_min: u32, n_max: u32) -> Self {
        Self {
            n_min,
            n_max,
            ..Self::default()
        }
    }

    pub fn radii(&self) -> impl Iterator<Item = (u32, f64)> + '_ {
        (self.n_min..=self.n_max).map(|n| (n, 1.0 + 0.5f64.powi(n as i32)))
    }
}

/// One grid point of a growth profile. `norm` follows the profile's ray
/// `r_n * lambda`; `norm_ray_one` follows the real ray `r_n`; the optional
/// directed norm is `||R(r_n, T) |z| ||` for the supplied vector.
#[derive(Clone, Debug, Serialize)]
pub struct GrowthPoint {
    pub n: u32,
    pub r: f64,
    pub norm: f64,
    pub residual: f64,
    pub norm_ray_one: f64,
    pub residual_ray_one: f64,
    pub directed_norm: Option<f64>,
    pub directed_residual: Option<f64>,
    /// All solves at this point met the resolvent residual bound.
    pub retained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthProfile {
    #[serde(with = "complex_pair")]
    pub direction: Complex64,
    pub grid: GridParams,
    pub points: Vec<GrowthPoint>,
    /// Exponent alpha with `||R(r_n lambda, T)|| ~ C/(r_n-1)^alpha`.
    pub fitted_exponent: Option<f64>,
    pub fitted_exponent_ray_one: Option<f64>,
    pub fitted_directed_exponent: Option<f64>,
    pub truncation_note: Option<String>,
}

impl GrowthProfile {
    /// Retained points past the transient head; the fit window.
    pub fn window(&self) -> Vec<&GrowthPoint> {
        let head_cut = self.grid.n_min + self.grid.fit_exclude_head as u32;
        self.points
            .iter()
            .filter(|p| p.retained && p.n >= head_cut)
            .collect()
    }

    fn fit(&self, value: impl Fn(&GrowthPoint) -> Option<f64>) -> Option<f64> {
        let pts: Vec<(f64, f64)> = self
            .window()
            .into_iter()
            .filter_map(|p| value(p).map(|v| ((p.r - 1.0).ln(), v)))
            .filter(|&(_, v)| v > 0.0)
            .map(|(x, v)| (x, v.ln()))
            .collect();
        if pts.len() < self.grid.min_retained {
            return None;
        }
        fit::least_squares_slope(&pts).map(|(slope, _)| -slope)
    }
}

/// Evaluates resolvent norms along `r_n * lambda` (and the real ray, and an
/// optional direction vector) on the dyadic grid, with per-point residuals;
/// residual-dirty points are kept in the profile but excluded from fits.
pub fn growth_profile(
    t: &PositiveOperator,
    lambda: Complex64,
    z: Option<&LatticeVector>,
    grid: &GridParams,
) -> Result<GrowthProfile, PerronError> {
    let spec = spectral::spectrum(t)?;
    growth_profile_with_spectrum(t, lambda, z, grid, &spec)
}

pub fn growth_profile_with_spectrum(
    t: &PositiveOperator,
    lambda: Complex64,
    z: Option<&LatticeVector>,
    grid: &GridParams,
    spec: &SpectrumReport,
) -> Result<GrowthProfile, PerronError> {
    if (spec.spectral_radius - 1.0).abs() > spec.cluster_tol {
        return Err(PerronError::SpectralRadiusNotOne {
            r: spec.spectral_radius,
            tol: spec.cluster_tol,
        });
    }
    if (lambda.norm() - 1.0).abs() > tol::EPS_PER {
        return Err(PerronError::NotUnitModulus {
            modulus: lambda.norm(),
        });
    }
    let z_mod = match z {
        Some(z) => {
            if z.dim() != t.dim() {
                return Err(PerronError::DimensionMismatch {
                    expected: t.dim(),
                    got: z.dim(),
                });
            }
            Some(modulus(z))
        }
        None => None,
    };
    let lambda_is_one = (lambda - Complex64::new(1.0, 0.0)).norm() < 1e-15;

    let mut points = Vec::new();
    for (n, r) in grid.radii() {
        let mu = lambda * r;
        let solve = spectral::resolvent(t, mu, spec)?;
        let (ray_one_norm, ray_one_res, ray_one_ok) = if lambda_is_one {
            (solve.norm, solve.residual, solve.converged)
        } else {
            let s1 = spectral::resolvent(t, Complex64::new(r, 0.0), spec)?;
            (s1.norm, s1.residual, s1.converged)
        };
        let (directed_norm, directed_residual, directed_ok) = match &z_mod {
            Some(zm) => {
                let d = spectral::resolvent_apply(t, Complex64::new(r, 0.0), zm, spec)?;
                (Some(d.norm), Some(d.residual), d.converged)
            }
            None => (None, None, true),
        };
        points.push(GrowthPoint {
            n,
            r,
            norm: solve.norm,
            residual: solve.residual,
            norm_ray_one: ray_one_norm,
            residual_ray_one: ray_one_res,
            directed_norm,
            directed_residual,
            retained: solve.converged && ray_one_ok && directed_ok,
        });
    }

    let mut profile = GrowthProfile {
        direction: lambda,
        grid: *grid,
        points,
        fitted_exponent: None,
        fitted_exponent_ray_one: None,
        fitted_directed_exponent: None,
        truncation_note: None,
    };
    profile.fitted_exponent = profile.fit(|p| Some(p.norm));
    profile.fitted_exponent_ray_one = profile.fit(|p| Some(p.norm_ray_one));
    if z_mod.is_some() {
        profile.fitted_directed_exponent = profile.fit(|p| p.directed_norm);
    }
    if profile.fitted_exponent.is_none() {
        let retained = profile.window().len();
        profile.truncation_note = Some(format!(
            "exponent fit unavailable: {retained} residual-clean points past the transient head \
             (need {})",
            profile.grid.min_retained
        ));
    }
    Ok(profile)
}

/// Outcome of a two-sided or one-sided growth-rate comparison over the
/// retained fit window.
#[derive(Clone, Debug, Serialize)]
pub struct RateCheck {
    pub ok: bool,
    pub spread: Option<f64>,
    pub exponent: Option<f64>,
    pub detail: String,
}

/// `||R(r_n lambda, T)|| ~ 1/(r_n - 1)`: bounded ratio (spread <= 10) and
/// exponent within 0.1 of 1.
pub fn lambda_ray_linear(profile: &GrowthProfile) -> RateCheck {
    two_sided_rate(profile, |p| Some(p.norm * (p.r - 1.0)), profile.fitted_exponent, 1.0)
}

/// `||R(r_n, T)|| ~ 1/(r_n - 1)` on the real ray.
pub fn ray_one_linear(profile: &GrowthProfile) -> RateCheck {
    two_sided_rate(
        profile,
        |p| Some(p.norm_ray_one * (p.r - 1.0)),
        profile.fitted_exponent_ray_one,
        1.0,
    )
}

/// `||R(r_n, T)|z| || ~ 1/(r_n - 1)` for the profile's direction vector.
pub fn directed_linear(profile: &GrowthProfile) -> RateCheck {
    two_sided_rate(
        profile,
        |p| p.directed_norm.map(|d| d * (p.r - 1.0)),
        profile.fitted_directed_exponent,
        1.0,
    )
}

/// `||R(r_n lambda, T)|| ~ ||R(r_n, T)||`.
pub fn lambda_ray_matches_ray_one(profile: &GrowthProfile) -> RateCheck {
    let exps = match (profile.fitted_exponent, profile.fitted_exponent_ray_one) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => None,
    };
    let ratios: Vec<f64> = profile
        .window()
        .iter()
        .filter(|p| p.norm_ray_one > 0.0)
        .map(|p| p.norm / p.norm_ray_one)
        .collect();
    let spread = fit::spread(&ratios);
    let ok = matches!(spread, Some(s) if s <= tol::RATIO_SPREAD_MAX)
        && matches!(exps, Some((a, b)) if (a - b).abs() <= tol::EXPONENT_AGREE);
    RateCheck {
        ok,
        spread,
        exponent: exps.map(|(a, _)| a),
        detail: format!("ratio spread {spread:?}, exponents {exps:?}"),
    }
}

/// `||R(r_n, T)|z||| ~ ||R(r_n, T)||` (directed norm tracks the full norm).
pub fn directed_matches_ray_one(profile: &GrowthProfile) -> RateCheck {
    let exps = match (
        profile.fitted_directed_exponent,
        profile.fitted_exponent_ray_one,
    ) {
        (Some(a), Some(b)) => Some((a, b)),
        _ => None,
    };
    let ratios: Vec<f64> = profile
        .window()
        .iter()
        .filter_map(|p| p.directed_norm.map(|d| (d, p.norm_ray_one)))
        .filter(|&(_, n1)| n1 > 0.0)
        .map(|(d, n1)| d / n1)
        .collect();
    let spread = fit::spread(&ratios);
    let ok = matches!(spread, Some(s) if s <= tol::RATIO_SPREAD_MAX)
        && matches!(exps, Some((a, b)) if (a - b).abs() <= tol::EXPONENT_AGREE);
    RateCheck {
        ok,
        spread,
        exponent: exps.map(|(a, _)| a),
        detail: format!("ratio spread {spread:?}, exponents {exps:?}"),
    }
}

/// One-sided `O(1/(r_n-1)^2)` on the real ray: fitted exponent at most
/// `2 + 0.1`.
pub fn ray_one_at_most_quadratic(profile: &GrowthProfile) -> RateCheck {
    let exponent = profile.fitted_exponent_ray_one;
    let ok = matches!(exponent, Some(e) if e <= tol::QUADRATIC_EXPONENT_CAP);
    RateCheck {
        ok,
        spread: None,
        exponent,
        detail: format!(
            "fitted exponent {exponent:?} vs cap {}",
            tol::QUADRATIC_EXPONENT_CAP
        ),
    }
}

fn two_sided_rate(
    profile: &GrowthProfile,
    ratio: impl Fn(&GrowthPoint) -> Option<f64>,
    exponent: Option<f64>,
    target: f64,
) -> RateCheck {
    let ratios: Vec<f64> = profile.window().iter().filter_map(|p| ratio(p)).collect();
    let spread = fit::spread(&ratios);
    let ok = matches!(spread, Some(s) if s <= tol::RATIO_SPREAD_MAX)
        && matches!(exponent, Some(e) if (e - target).abs() <= tol::EXPONENT_AGREE);
    RateCheck {
        ok,
        spread,
        exponent,
        detail: format!("ratio spread {spread:?}, exponent {exponent:?} vs target {target}"),
    }
}

/// Pointwise verification of the canonical estimate
/// `1/(r-1) <= ||R(r lambda, T)|| <= ||R(r, T)||` on the retained grid.
#[derive(Clone, Debug, Serialize)]
pub struct EstimateCheck {
    pub holds: bool,
    pub checked_points: usize,
    pub failures: Vec<EstimateFailure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EstimateFailure {
    pub n: u32,
    pub side: &'static str,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
}

pub fn check_estimate_2_1(
    t: &PositiveOperator,
    lambda: Complex64,
    profile: &GrowthProfile,
) -> Result<EstimateCheck, PerronError> {
    let spec = spectral::spectrum(t)?;
    require_peripheral(&spec, lambda)?;
    if (profile.direction - lambda).norm() > 1e-12 {
        return Err(PerronError::Invalid {
            detail: "profile direction does not match lambda".into(),
        });
    }
    let mut failures = Vec::new();
    let mut checked = 0usize;
    for p in profile.points.iter().filter(|p| p.retained) {
        checked += 1;
        let slack = tol::INEQ_SLACK + p.residual + p.residual_ray_one;
        let lower = 1.0 / (p.r - 1.0);
        if p.norm < lower * (1.0 - slack) {
            failures.push(EstimateFailure {
                n: p.n,
                side: "lower",
                lhs: lower,
                rhs: p.norm,
                slack,
            });
        }
        if p.norm > p.norm_ray_one * (1.0 + slack) {
            failures.push(EstimateFailure {
                n: p.n,
                side: "upper",
                lhs: p.norm,
                rhs: p.norm_ray_one,
                slack,
            });
        }
    }
    Ok(EstimateCheck {
        holds: failures.is_empty() && checked > 0,
        checked_points: checked,
        failures,
    })
}

pub(crate) fn require_peripheral(
    spec: &SpectrumReport,
    lambda: Complex64,
) -> Result<(), PerronError> {
    let tol_match = tol::POWER_CLOSURE_TOL * spec.spectral_radius.max(1.0);
    let peripheral = spec
        .record_near(lambda, tol_match)
        .map(|rec| rec.is_peripheral)
        .unwrap_or(false);
    if peripheral {
        Ok(())
    } else {
        Err(PerronError::Invalid {
            detail: format!("lambda = {lambda} is not a peripheral spectral value"),
        })
    }
}

/// Growth classification of a peripheral eigenvector.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum GrowthClass {
    Minimal,
    Maximal,
    Intermediate,
}

#[derive(Clone, Debug, Serialize)]
pub struct GrowthClassification {
    pub class: GrowthClass,
    pub minimal: bool,
    pub maximal: bool,
    /// Both extremes at once (one-dimensional degeneracies); reported as
    /// maximal.
    pub degenerate: bool,
    pub minimal_check: RateCheck,
    pub maximal_check: RateCheck,
}

/// Classifies `||R(r_n, T)|z|||` against the extremes of Theorem-style
/// growth: minimal (`~ 1/(r_n-1)`), maximal (`~ ||R(r_n, T)||`), or
/// intermediate. `z` must be a unit eigenvector for a unimodular eigenvalue.
pub fn classify_eigenvector_growth(
    t: &PositiveOperator,
    lambda: Complex64,
    z: &LatticeVector,
    grid: &GridParams,
) -> Result<(GrowthClassification, GrowthProfile), PerronError> {
    require_unit_eigenpair(t, lambda, z)?;
    let profile = growth_profile(t, lambda, Some(z), grid)?;
    let minimal_check = directed_linear(&profile);
    let maximal_check = directed_matches_ray_one(&profile);
    let (minimal, maximal) = (minimal_check.ok, maximal_check.ok);
    let degenerate = minimal && maximal;
    let class = if maximal {
        GrowthClass::Maximal
    } else if minimal {
        GrowthClass::Minimal
    } else {
        GrowthClass::Intermediate
    };
    Ok((
        GrowthClassification {
            class,
            minimal,
            maximal,
            degenerate,
            minimal_check,
            maximal_check,
        },
        profile,
    ))
}

pub(crate) fn require_unit_eigenpair(
    t: &PositiveOperator,
    lambda: Complex64,
    z: &LatticeVector,
) -> Result<(), PerronError> {
    let znorm = z.norm(t.norm_choice());
    if (znorm - 1.0).abs() > 1e-9 {
        return Err(PerronError::NotNormalized { norm: znorm });
    }
    let tz = t.apply(z)?;
    let residual: Vec<Complex64> = tz
        .entries()
        .iter()
        .zip(z.entries())
        .map(|(a, b)| a - b * lambda)
        .collect();
    let res = t.norm_choice().vector_norm(&residual);
    let bound = tol::EIGENPAIR_TOL * t.norm().max(1.0);
    if res > bound {
        return Err(PerronError::NotEigenpair {
            lambda,
            residual: res,
            tol: bound,
        });
    }
    Ok(())
}

/// Kind of boundedness being certified.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum BoundKind {
    Power,
    Cesaro,
    Abel,
    Ws(String),
}

/// Verdict taxonomy: `UnboundedDetected` requires growth trend at least 0.5
/// on residual-clean data; `BoundedPlausible` requires a finite sup with
/// trend at most 0.1; anything between is reported inconclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundStatus {
    BoundedPlausible,
    UnboundedDetected,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundednessVerdict {
    pub kind: BoundKind,
    pub sup_estimate: f64,
    pub horizon: usize,
    pub trend: Option<f64>,
    pub status: BoundStatus,
    pub residual_clean: bool,
}

fn make_verdict(
    kind: BoundKind,
    sup_estimate: f64,
    horizon: usize,
    trend: Option<f64>,
    residual_clean: bool,
) -> BoundednessVerdict {
    let status = match trend {
        Some(tr) if tr >= tol::TREND_UNBOUNDED && residual_clean => BoundStatus::UnboundedDetected,
        Some(tr) if tr <= tol::TREND_BOUNDED && sup_estimate.is_finite() => {
            BoundStatus::BoundedPlausible
        }
        _ => BoundStatus::Inconclusive,
    };
    BoundednessVerdict {
        kind,
        sup_estimate,
        horizon,
        trend,
        status,
        residual_clean,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AbelPoint {
    pub n: u32,
    pub r: f64,
    /// `(r - 1) * ||R(r, T)||`.
    pub value: f64,
    pub residual: f64,
    pub retained: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbelBound {
    pub verdict: BoundednessVerdict,
    pub points: Vec<AbelPoint>,
    pub grid: GridParams,
}

/// `sup_n (r_n - 1) ||R(r_n, T)||` over the dyadic grid, with a trend fit
/// against `-ln(r_n - 1)`.
pub fn abel_bound(t: &PositiveOperator, grid: &GridParams) -> Result<AbelBound, PerronError> {
    let spec = spectral::spectrum(t)?;
    if (spec.spectral_radius - 1.0).abs() > spec.cluster_tol {
        return Err(PerronError::SpectralRadiusNotOne {
            r: spec.spectral_radius,
            tol: spec.cluster_tol,
        });
    }
    let mut points = Vec::new();
    for (n, r) in grid.radii() {
        let solve = spectral::resolvent(t, Complex64::new(r, 0.0), &spec)?;
        points.push(AbelPoint {
            n,
            r,
            value: (r - 1.0) * solve.norm,
            residual: solve.residual,
            retained: solve.converged,
        });
    }
    let head_cut = grid.n_min + grid.fit_exclude_head as u32;
    let fit_pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|p| p.retained && p.n >= head_cut && p.value > 0.0)
        .map(|p| (-(p.r - 1.0).ln(), p.value.ln()))
        .collect();
    let trend = if fit_pts.len() >= grid.min_retained {
        fit::least_squares_slope(&fit_pts).map(|(s, _)| s)
    } else {
        None
    };
    let sup = points
        .iter()
        .filter(|p| p.retained)
        .map(|p| p.value)
        .fold(0.0f64, f64::max);
    let clean = points.iter().all(|p| p.retained);
    let verdict = make_verdict(
        BoundKind::Abel,
        sup,
        (grid.n_max - grid.n_min + 1) as usize,
        trend,
        clean,
    );
    Ok(AbelBound {
        verdict,
        points,
        grid: *grid,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PowerCesaroReport {
    /// `||T^j||` for j = 0..=horizon.
    pub power_norms: Vec<f64>,
    /// `||(1/(j+1)) sum_{k<=j} T^k||` for j = 0..=horizon.
    pub cesaro_norms: Vec<f64>,
    /// `sup_j ||T^j|| / j` over j >= 1 (quadratic-resolvent criterion).
    pub sup_power_over_j: f64,
    pub power: BoundednessVerdict,
    pub cesaro: BoundednessVerdict,
}

/// Power and Cesaro boundedness over a finite horizon, with trend fits on
/// the trailing three quarters of the horizon.
pub fn power_and_cesaro(t: &PositiveOperator, horizon: usize) -> PowerCesaroReport {
    let p = t.norm_choice();
    let n = t.dim();
    let mut power_norms = Vec::with_capacity(horizon + 1);
    let mut cesaro_norms = Vec::with_capacity(horizon + 1);
    let mut power_mat = CMatrix::identity(n);
    let mut sum = CMatrix::zeros(n, n);
    let mut sup_ratio = 0.0f64;
    for j in 0..=horizon {
        if j > 0 {
            power_mat = power_mat.mul(t.matrix());
        }
        let pn = p.operator_norm(&power_mat);
        power_norms.push(pn);
        if j >= 1 {
            sup_ratio = sup_ratio.max(pn / j as f64);
        }
        sum = sum.add(&power_mat);
        cesaro_norms.push(p.operator_norm(&sum.scale(Complex64::new(1.0 / (j + 1) as f64, 0.0))));
    }
    let power = make_verdict(
        BoundKind::Power,
        power_norms.iter().copied().fold(0.0, f64::max),
        horizon,
        horizon_trend(&power_norms),
        true,
    );
    let cesaro = make_verdict(
        BoundKind::Cesaro,
        cesaro_norms.iter().copied().fold(0.0, f64::max),
        horizon,
        horizon_trend(&cesaro_norms),
        true,
    );
    PowerCesaroReport {
        power_norms,
        cesaro_norms,
        sup_power_over_j: sup_ratio,
        power,
        cesaro,
    }
}

/// Trend of `ln norm` against `ln j` over the trailing three quarters.
fn horizon_trend(norms: &[f64]) -> Option<f64> {
    let h = norms.len().saturating_sub(1);
    let start = (h / 4).max(2);
    let pts: Vec<(f64, f64)> = (start..=h)
        .filter(|&j| norms[j] > 0.0)
        .map(|j| ((j as f64).ln(), norms[j].ln()))
        .collect();
    fit::least_squares_slope(&pts).map(|(s, _)| s)
}

/// One evaluated scheme member.
#[derive(Clone, Debug, Serialize)]
pub struct WsPoint {
    pub index: SchemeIndex,
    /// `|| sum_{k<=K_j} a_{j,k} T^k ||`.
    pub norm: f64,
    pub terms: usize,
    /// Certified bound on the dropped tail's contribution to the norm.
    pub tail: f64,
    pub skipped: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct WsBound {
    pub scheme: String,
    pub points: Vec<WsPoint>,
    pub sup_estimate: f64,
    pub trend: Option<f64>,
    pub verdict: Option<BoundednessVerdict>,
    pub flag: Option<String>,
    /// Polynomial envelope `||T^k|| <= C k^d` certified from peripheral
    /// Jordan indices.
    pub envelope_degree: usize,
    pub envelope_constant: f64,
}

pub(crate) struct SchemeOperators {
    pub evals: Vec<(SchemeIndex, CMatrix, f64, usize)>,
    pub skipped: Vec<SchemeIndex>,
    pub envelope_degree: usize,
    pub envelope_constant: f64,
    pub flag: Option<String>,
}

/// Evaluates `f_j(T)` for the leading `j_prefix` scheme members with a
/// certified truncation: `K_j` is chosen so the dropped tail contributes at
/// most `WS_TAIL_TOL` under the probed power-norm envelope.
pub(crate) fn evaluate_scheme_operators(
    t: &PositiveOperator,
    scheme: &WeightingScheme,
    j_prefix: usize,
) -> Result<SchemeOperators, PerronError> {
    let spec = spectral::spectrum(t)?;
    if (spec.spectral_radius - 1.0).abs() > spec.cluster_tol {
        return Err(PerronError::SpectralRadiusNotOne {
            r: spec.spectral_radius,
            tol: spec.cluster_tol,
        });
    }
    let envelope_degree = spec
        .peripheral_records()
        .map(|rec| rec.index - 1)
        .max()
        .unwrap_or(0);

    // probe the power norms and certify the polynomial envelope
    let p = t.norm_choice();
    let probe_len = 64usize;
    let mut probe = Vec::with_capacity(probe_len + 1);
    let mut pw = CMatrix::identity(t.dim());
    for k in 0..=probe_len {
        if k > 0 {
            pw = pw.mul(t.matrix());
        }
        probe.push(p.operator_norm(&pw));
    }
    let probe_max = probe.iter().copied().fold(0.0f64, f64::max);
    let envelope_constant = probe
        .iter()
        .enumerate()
        .map(|(k, &nk)| nk / (k.max(1) as f64).powi(envelope_degree as i32))
        .fold(0.0f64, f64::max);
    let mut flag = None;
    if let Some(slope) = horizon_trend(&probe) {
        if slope > envelope_degree as f64 + 0.5 {
            flag = Some(format!(
                "power norms grow with trend {slope:.3}, exceeding the index-certified \
                 envelope degree {envelope_degree}"
            ));
        }
    }
    if flag.is_some() {
        return Ok(SchemeOperators {
            evals: Vec::new(),
            skipped: scheme.indices().iter().take(j_prefix).copied().collect(),
            envelope_degree,
            envelope_constant,
            flag,
        });
    }

    let indices: Vec<SchemeIndex> = scheme.indices().iter().take(j_prefix).copied().collect();
    // Smallest K whose dropped tail, weighted by the polynomial envelope
    // ||T^k|| <= C max(1,k)^d, contributes at most WS_TAIL_TOL / safety.
    // The weighted tail is bounded by summation by parts against the
    // scheme's own tail function t(K) >= sum_{k>K} a_{j,k}:
    //   sum_{k>K} a_k k^d <= t(K)(K+1)^d + d * sum_{m>K} t(m)(m+1)^{d-1},
    // with the series evaluated over geometric blocks (t is nonincreasing).
    let envelope_c = envelope_constant.max(probe_max).max(1.0);
    let degree = envelope_degree as f64;
    let budget = tol::WS_TAIL_TOL / tol::WS_SAFETY;
    let weighted_tail = |j: SchemeIndex, k: u64| -> f64 {
        let t0 = scheme.tail_bound(j, k);
        let mut acc = envelope_c * t0 * ((k + 1) as f64).powf(degree);
        if envelope_degree == 0 || acc > budget {
            return acc;
        }
        let mut m = k + 1;
        loop {
            let tm = scheme.tail_bound(j, m);
            if tm <= 0.0 {
                break;
            }
            let m_next = (m + 1).max(m + m / 8);
            let term = envelope_c
                * degree
                * (m_next - m) as f64
                * tm
                * ((m_next + 1) as f64).powf(degree - 1.0);
            acc += term;
            if term < 1e-3 * budget || acc > 10.0 * budget || m_next > 100 * tol::WS_MAX_TERMS as u64
            {
                break;
            }
            m = m_next;
        }
        acc
    };
    let mut cutoffs = Vec::with_capacity(indices.len());
    let mut skipped = Vec::new();
    for &j in &indices {
        if weighted_tail(j, tol::WS_MAX_TERMS as u64) > budget {
            skipped.push(j);
            cutoffs.push(None);
            continue;
        }
        let (mut lo, mut hi) = (0u64, tol::WS_MAX_TERMS as u64);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if weighted_tail(j, mid) <= budget {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        cutoffs.push(Some(lo));
    }
    let k_max = cutoffs.iter().flatten().copied().max().unwrap_or(0);

    let n = t.dim();
    let mut sums: Vec<Option<CMatrix>> = cutoffs
        .iter()
        .map(|c| c.map(|_| CMatrix::zeros(n, n)))
        .collect();
    let mut pw = CMatrix::identity(n);
    for k in 0..=k_max {
        if k > 0 {
            pw = pw.mul(t.matrix());
        }
        for (slot, (&j, cutoff)) in indices.iter().zip(&cutoffs).enumerate() {
            if let (Some(sum), Some(cut)) = (&mut sums[slot], cutoff) {
                if k <= *cut {
                    let a = scheme.coeff(j, k);
                    if a != 0.0 {
                        *sum = sum.add(&pw.scale(Complex64::new(a, 0.0)));
                    }
                }
            }
        }
    }

    let mut evals = Vec::new();
    for (slot, &j) in indices.iter().enumerate() {
        if let (Some(sum), Some(cut)) = (&sums[slot], &cutoffs[slot]) {
            let tail = weighted_tail(j, *cut) * tol::WS_SAFETY;
            evals.push((j, sum.clone(), tail, *cut as usize + 1));
        }
    }
    Ok(SchemeOperators {
        evals,
        skipped,
        envelope_degree,
        envelope_constant,
        flag: None,
    })
}

/// Uniform boundedness of `{f_j(T)}` along the scheme prefix, with the
/// truncation tail certified by the Jordan-index-bounded power envelope.
pub fn ws_bound(
    t: &PositiveOperator,
    scheme: &WeightingScheme,
    j_prefix: usize,
) -> Result<WsBound, PerronError> {
    let ops = evaluate_scheme_operators(t, scheme, j_prefix)?;
    let p = t.norm_choice();
    let mut points = Vec::new();
    for (j, m, tail, terms) in &ops.evals {
        points.push(WsPoint {
            index: *j,
            norm: p.operator_norm(m),
            terms: *terms,
            tail: *tail,
            skipped: false,
        });
    }
    for j in &ops.skipped {
        points.push(WsPoint {
            index: *j,
            norm: f64::NAN,
            terms: 0,
            tail: f64::NAN,
            skipped: true,
        });
    }
    let flag = if ops.flag.is_some() {
        ops.flag.clone()
    } else if !ops.skipped.is_empty() && ops.evals.is_empty() {
        Some("no scheme member admitted a certifiable truncation".into())
    } else {
        None
    };
    let evaluated: Vec<&WsPoint> = points.iter().filter(|pt| !pt.skipped).collect();
    let sup_estimate = evaluated
        .iter()
        .map(|pt| pt.norm + pt.tail)
        .fold(0.0f64, f64::max);
    let fit_start = evaluated.len() / 4;
    let fit_pts: Vec<(f64, f64)> = evaluated
        .iter()
        .skip(fit_start)
        .filter(|pt| pt.norm > 0.0)
        .map(|pt| (pt.index.fit_abscissa(), pt.norm.ln()))
        .collect();
    let trend = if fit_pts.len() >= 4 {
        fit::least_squares_slope(&fit_pts).map(|(s, _)| s)
    } else {
        None
    };
    let verdict = if flag.is_none() && !evaluated.is_empty() {
        Some(make_verdict(
            BoundKind::Ws(scheme.name().to_string()),
            sup_estimate,
            evaluated.len(),
            trend,
            true,
        ))
    } else {
        None
    };
    Ok(WsBound {
        scheme: scheme.name().to_string(),
        points,
        sup_estimate,
        trend,
        verdict,
        flag,
        envelope_degree: ops.envelope_degree,
        envelope_constant: ops.envelope_constant,
    })
}

/// Finite-dimensional analog of the invariant ideal of a (WS)-bounded
/// operator: coordinates whose `f_j(T) e_i` stabilizes at 0.
#[derive(Clone, Debug, Serialize)]
pub struct WsIdealReport {
    pub ideal: Option<CoordinateIdeal>,
    /// `|| lim_j f_j(T) e_i ||` per coordinate (last evaluated member).
    pub limit_norms: Vec<f64>,
    pub converged: bool,
    pub flag: Option<String>,
    /// (a) the detected ideal is T-invariant (exact column check).
    pub invariance_ok: Option<bool>,
    /// (b) peripheral eigenvectors stay outside the ideal and their
    /// modulus defect `T|z| - |z|` falls inside it.
    pub peripheral_ok: Option<bool>,
    /// (c) coordinates with `T^k e_i -> 0` lie in the ideal.
    pub decay_ok: Option<bool>,
}

pub fn ws_invariant_ideal(
    t: &PositiveOperator,
    scheme: &WeightingScheme,
    j_prefix: usize,
) -> Result<WsIdealReport, PerronError> {
    let bound = ws_bound(t, scheme, j_prefix)?;
    let not_bounded = !matches!(
        bound.verdict.as_ref().map(|v| v.status),
        Some(BoundStatus::BoundedPlausible)
    );
    if not_bounded {
        return Ok(WsIdealReport {
            ideal: None,
            limit_norms: Vec::new(),
            converged: false,
            flag: Some(format!(
                "ws_bound did not certify plausible boundedness (verdict {:?})",
                bound.verdict.map(|v| v.status)
            )),
            invariance_ok: None,
            peripheral_ok: None,
            decay_ok: None,
        });
    }
    let ops = evaluate_scheme_operators(t, scheme, j_prefix)?;
    if ops.evals.len() < 4 {
        return Ok(WsIdealReport {
            ideal: None,
            limit_norms: Vec::new(),
            converged: false,
            flag: Some("fewer than 4 evaluated scheme members".into()),
            invariance_ok: None,
            peripheral_ok: None,
            decay_ok: None,
        });
    }
    let n = t.dim();
    let p = t.norm_choice();
    // Limit detection per coordinate. Modes that converge to zero under the
    // scheme do so like j^-1 at desk-scale prefixes (Cesaro means of a
    // bounded family), so membership is decided by a certified decay slope
    // or by direct stabilization below the limit threshold; nonzero limits
    // must show relative stabilization over the prefix tail.
    let tail_start = (ops.evals.len() * 3) / 4;
    let last = &ops.evals.last().unwrap().1;
    let mut limit_norms = vec![0.0f64; n];
    let mut members = Vec::new();
    let mut converged = true;
    for i in 0..n {
        let norms: Vec<f64> = ops
            .evals
            .iter()
            .map(|(_, m, _, _)| {
                let col: Vec<Complex64> = (0..n).map(|r| m.get(r, i)).collect();
                p.vector_norm(&col)
            })
            .collect();
        let s_last = *norms.last().unwrap();
        if s_last <= tol::WS_IDEAL_LIMIT {
            members.push(i);
            limit_norms[i] = 0.0;
            continue;
        }
        let slope_pts: Vec<(f64, f64)> = ops.evals[ops.evals.len() / 2..]
            .iter()
            .zip(&norms[ops.evals.len() / 2..])
            .filter(|(_, &s)| s > 0.0)
            .map(|((j, _, _, _), &s)| (j.fit_abscissa(), s.ln()))
            .collect();
        let slope = fit::least_squares_slope(&slope_pts).map(|(s, _)| s);
        if matches!(slope, Some(s) if s <= -0.4) {
            members.push(i);
            limit_norms[i] = 0.0;
            continue;
        }
        // nonzero limit: the vectors must stabilize relatively over the tail
        limit_norms[i] = s_last;
        let scale = s_last.max(tol::WS_IDEAL_LIMIT);
        for (_, m, _, _) in &ops.evals[tail_start..] {
            let diff: Vec<Complex64> = (0..n).map(|r| m.get(r, i) - last.get(r, i)).collect();
            if p.vector_norm(&diff) > 0.05 * scale {
                converged = false;
            }
        }
    }
    if !converged {
        return Ok(WsIdealReport {
            ideal: None,
            limit_norms,
            converged: false,
            flag: Some("scheme operators did not stabilize over the prefix".into()),
            invariance_ok: None,
            peripheral_ok: None,
            decay_ok: None,
        });
    }
    let ideal = CoordinateIdeal::from_indices(&members, n)?;

    // (a) exact invariance of the detected coordinate set
    let invariance_ok = (0..n).all(|i| {
        (0..n).all(|j| {
            ideal.contains(i)
                || !ideal.contains(j)
                || t.matrix().get(i, j) == Complex64::new(0.0, 0.0)
        })
    });

    // (b) peripheral eigenvectors: z outside I, T|z| - |z| inside I
    let spec = spectral::spectrum(t)?;
    let mut peripheral_ok = true;
    for rec in spec.peripheral_records() {
        for z in spectral::eigenspace(t, rec.value) {
            let zn = z.norm(p);
            if zn <= 0.0 {
                continue;
            }
            let outside: Vec<Complex64> = z
                .entries()
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    if ideal.contains(i) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        v
                    }
                })
                .collect();
            if p.vector_norm(&outside) <= tol::WS_IDEAL_LIMIT * zn {
                peripheral_ok = false; // z fell inside the ideal
            }
            let zmod = modulus(&z);
            let tz = t.apply(&zmod)?;
            let defect = tz.sub(&zmod);
            let defect_outside: Vec<Complex64> = defect
                .entries()
                .iter()
                .enumerate()
                .map(|(i, &v)| {
                    if ideal.contains(i) {
                        Complex64::new(0.0, 0.0)
                    } else {
                        v
                    }
                })
                .collect();
            if p.vector_norm(&defect_outside) > tol::WS_IDEAL_LIMIT {
                peripheral_ok = false;
            }
        }
    }

    // (c) coordinates with decaying orbits must lie in the ideal
    let mut decay_ok = true;
    let mut pw = CMatrix::identity(n);
    for _ in 0..tol::POWER_HORIZON {
        pw = pw.mul(t.matrix());
    }
    for i in 0..n {
        let col: Vec<Complex64> = (0..n).map(|r| pw.get(r, i)).collect();
        if p.vector_norm(&col) <= tol::WS_IDEAL_LIMIT && !ideal.contains(i) {
            decay_ok = false;
        }
    }

    Ok(WsIdealReport {
        ideal: Some(ideal),
        limit_norms,
        converged,
        flag: None,
        invariance_ok: Some(invariance_ok),
        peripheral_ok: Some(peripheral_ok),
        decay_ok: Some(decay_ok),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::NormChoice;
    use crate::matrix::cr;

    fn op(rows: &[Vec<f64>]) -> PositiveOperator {
        PositiveOperator::from_real_rows(rows, NormChoice::Inf).unwrap()
    }

    fn cycle(p: usize) -> PositiveOperator {
        let mut rows = vec![vec![0.0; p]; p];
        for i in 0..p {
            rows[(i + 1) % p][i] = 1.0;
        }
        op(&rows)
    }

    fn jordan2() -> PositiveOperator {
        op(&[vec![1.0, 1.0], vec![0.0, 1.0]])
    }

    #[test]
    fn scalar_profile_is_exactly_linear() {
        let t = op(&[vec![1.0]]);
        let profile =
            growth_profile(&t, cr(1.0), None, &GridParams::with_range(2, 20)).unwrap();
        for p in &profile.points {
            assert!((p.norm - 1.0 / (p.r - 1.0)).abs() <= 1e-6 / (p.r - 1.0));
        }
        let e = profile.fitted_exponent.unwrap();
        assert!((e - 1.0).abs() < 0.01, "exponent {e}");
    }

    #[test]
    fn jordan_profile_has_quadratic_exponent() {
        // closed form: ||R(r, T)||_inf = a + a^2 with a = 1/(r-1)
        let t = jordan2();
        let profile =
            growth_profile(&t, cr(1.0), None, &GridParams::with_range(2, 20)).unwrap();
        for p in profile.points.iter().filter(|p| p.retained) {
            let a = 1.0 / (p.r - 1.0);
            assert!(
                (p.norm - (a + a * a)).abs() <= 1e-7 * (a + a * a),
                "n = {}",
                p.n
            );
        }
        let e = profile.fitted_exponent.unwrap();
        assert!((e - 2.0).abs() < 0.1, "exponent {e}");
    }

    #[test]
    fn two_cycle_profile_along_minus_one() {
        // R(mu, P) = (mu I + P)/(mu^2 - 1); at mu = -r the norm is 1/(r-1)
        let t = cycle(2);
        let profile =
            growth_profile(&t, cr(-1.0), None, &GridParams::with_range(2, 20)).unwrap();
        for p in profile.points.iter().filter(|p| p.retained) {
            assert!((p.norm - 1.0 / (p.r - 1.0)).abs() <= 1e-6 / (p.r - 1.0));
        }
        let e = profile.fitted_exponent.unwrap();
        assert!((e - 1.0).abs() < 0.1, "exponent {e}");
        assert!(lambda_ray_linear(&profile).ok);
    }

    #[test]
    fn estimate_2_1_on_scalar_and_jordan() {
        let t = op(&[vec![1.0]]);
        let profile = growth_profile(&t, cr(1.0), None, &GridParams::default()).unwrap();
        let chk = check_estimate_2_1(&t, cr(1.0), &profile).unwrap();
        assert!(chk.holds, "failures: {:?}", chk.failures);

        let t = jordan2();
        let profile = growth_profile(&t, cr(1.0), None, &GridParams::default()).unwrap();
        let chk = check_estimate_2_1(&t, cr(1.0), &profile).unwrap();
        assert!(chk.holds);
    }

    #[test]
    fn estimate_2_1_on_four_cycle_at_i() {
        let t = cycle(4);
        let lam = Complex64::new(0.0, 1.0);
        let profile = growth_profile(&t, lam, None, &GridParams::default()).unwrap();
        let chk = check_estimate_2_1(&t, lam, &profile).unwrap();
        assert!(chk.holds, "failures: {:?}", chk.failures);
    }

    #[test]
    fn classify_two_cycle_eigenvector_minimal() {
        let t = cycle(2);
        // eigenvector (1, -1) for -1, normalized in the inf norm; |z| is a
        // fixed vector, so the directed norm is exactly 1/(r-1). The whole
        // resolvent of a permutation also grows like 1/(r-1), so this
        // instance is degenerate: minimal and maximal at once.
        let z = LatticeVector::from_real(&[1.0, -1.0]);
        let (cls, _) =
            classify_eigenvector_growth(&t, cr(-1.0), &z, &GridParams::default()).unwrap();
        assert!(cls.minimal);
        assert!(cls.degenerate);
    }

    #[test]
    fn classify_scalar_reports_degenerate_maximal() {
        let t = op(&[vec![1.0]]);
        let z = LatticeVector::from_real(&[1.0]);
        let (cls, _) =
            classify_eigenvector_growth(&t, cr(1.0), &z, &GridParams::default()).unwrap();
        assert!(cls.minimal && cls.maximal && cls.degenerate);
        assert_eq!(cls.class, GrowthClass::Maximal);
    }

    #[test]
    fn classify_constructed_maximal_instance() {
        // 2-cycle feeding an absorbing state: eigenvector (1,-1,0) for -1,
        // |z| = (1,1,0), R(r)|z| = (1/(r-1), 1/(r-1), 2/(r-1)^2)
        let t = op(&[
            vec![0.0, 1.0, 0.0],
            vec![1.0, 0.0, 0.0],
            vec![1.0, 1.0, 1.0],
        ]);
        // frozen closed form at r = 2: w = (1, 1, 2)
        let spec = spectral::spectrum(&t).unwrap();
        let zmod = LatticeVector::from_real(&[1.0, 1.0, 0.0]);
        let w = spectral::resolvent_apply(&t, cr(2.0), &zmod, &spec).unwrap();
        assert!((w.vector[0] - cr(1.0)).norm() < 1e-12);
        assert!((w.vector[1] - cr(1.0)).norm() < 1e-12);
        assert!((w.vector[2] - cr(2.0)).norm() < 1e-12);

        let z = LatticeVector::from_real(&[1.0, -1.0, 0.0]);
        let (cls, profile) =
            classify_eigenvector_growth(&t, cr(-1.0), &z, &GridParams::default()).unwrap();
        assert!(cls.maximal, "checks: {:?}", cls.maximal_check);
        assert!(!cls.minimal);
        assert_eq!(cls.class, GrowthClass::Maximal);
        let de = profile.fitted_directed_exponent.unwrap();
        assert!((de - 2.0).abs() < 0.1, "directed exponent {de}");
    }

    #[test]
    fn abel_bound_examples() {
        // row-stochastic: sup (r-1)||R||_inf <= 1 (Neumann bound)
        let t = op(&[vec![0.5, 0.5], vec![0.25, 0.75]]);
        let ab = abel_bound(&t, &GridParams::with_range(2, 18)).unwrap();
        assert!(ab.verdict.sup_estimate <= 1.0 + 1e-9);
        assert_eq!(ab.verdict.status, BoundStatus::BoundedPlausible);

        // Jordan block: (r-1)||R|| = 1 + 1/(r-1), trend 1
        let ab = abel_bound(&jordan2(), &GridParams::with_range(2, 18)).unwrap();
        assert_eq!(ab.verdict.status, BoundStatus::UnboundedDetected);
        let tr = ab.verdict.trend.unwrap();
        assert!((tr - 1.0).abs() < 0.1, "trend {tr}");

        // scalar: sup = 1 exactly
        let ab = abel_bound(&op(&[vec![1.0]]), &GridParams::with_range(2, 18)).unwrap();
        assert!((ab.verdict.sup_estimate - 1.0).abs() < 1e-9);
    }

    #[test]
    fn power_cesaro_examples() {
        let rep = power_and_cesaro(&cycle(3), 60);
        assert_eq!(rep.power.status, BoundStatus::BoundedPlausible);
        assert!((rep.power.sup_estimate - 1.0).abs() < 1e-12);

        // T^j = [[1, j], [0, 1]]: power norms 1 + j, Cesaro ~ j/2
        let rep = power_and_cesaro(&jordan2(), 100);
        for (j, &pn) in rep.power_norms.iter().enumerate() {
            assert!((pn - (1.0 + j as f64)).abs() < 1e-9 * (1.0 + j as f64));
        }
        assert_eq!(rep.power.status, BoundStatus::UnboundedDetected);
        assert_eq!(rep.cesaro.status, BoundStatus::UnboundedDetected);
        let tr = rep.cesaro.trend.unwrap();
        assert!((tr - 1.0).abs() < 0.1, "cesaro trend {tr}");

        let rep = power_and_cesaro(&op(&[vec![1.0, 0.0], vec![0.0, 0.5]]), 60);
        assert_eq!(rep.power.status, BoundStatus::BoundedPlausible);
        assert_eq!(rep.cesaro.status, BoundStatus::BoundedPlausible);
    }

    #[test]
    fn ws_bound_on_power_bounded_operator() {
        // any valid scheme on a power-bounded T: sup <= sup_k ||T^k||
        let t = cycle(2);
        let ws = ws_bound(&t, &WeightingScheme::cesaro(48), 49).unwrap();
        let v = ws.verdict.expect("verdict should exist");
        assert_eq!(v.status, BoundStatus::BoundedPlausible);
        assert!(ws.sup_estimate <= 1.0 + 1e-9);

        let ws = ws_bound(&t, &WeightingScheme::abel(2, 10), 9).unwrap();
        assert!(ws.sup_estimate <= 1.0 + 1e-9);
    }

    #[test]
    fn ws_bound_detects_cesaro_growth_of_jordan_block() {
        let ws = ws_bound(&jordan2(), &WeightingScheme::cesaro(64), 65).unwrap();
        let v = ws.verdict.expect("verdict should exist");
        assert_eq!(v.status, BoundStatus::UnboundedDetected);
        let tr = v.trend.unwrap();
        assert!((tr - 1.0).abs() < 0.1, "trend {tr}");
    }

    #[test]
    fn ws_abel_matches_abel_bound_pointwise() {
        // f_r(T) = (r-1) R(r, T) by the Neumann series
        let t = cycle(2);
        let scheme = WeightingScheme::abel(2, 10);
        let ws = ws_bound(&t, &scheme, 9).unwrap();
        let spec = spectral::spectrum(&t).unwrap();
        for pt in ws.points.iter().filter(|p| !p.skipped) {
            let r = match pt.index {
                SchemeIndex::Real(r) => r,
                _ => unreachable!(),
            };
            let solve = spectral::resolvent(&t, cr(r), &spec).unwrap();
            let direct = (r - 1.0) * solve.norm;
            assert!(
                (pt.norm - direct).abs() <= 1e-9,
                "r = {r}: {} vs {direct}",
                pt.norm
            );
        }
    }

    #[test]
    fn ws_ideal_of_contracting_coordinate() {
        // Cesaro means of diag(1, 1/2) converge to diag(1, 0): ideal {1}
        let t = op(&[vec![1.0, 0.0], vec![0.0, 0.5]]);
        let rep = ws_invariant_ideal(&t, &WeightingScheme::cesaro(400), 401).unwrap();
        assert!(rep.converged, "flag: {:?}", rep.flag);
        let ideal = rep.ideal.unwrap();
        assert_eq!(ideal.indices(), vec![1]);
        assert_eq!(rep.invariance_ok, Some(true));
        assert_eq!(rep.peripheral_ok, Some(true));
        assert_eq!(rep.decay_ok, Some(true));
    }

    #[test]
    fn ws_ideal_of_identity_is_zero() {
        let t = op(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let rep = ws_invariant_ideal(&t, &WeightingScheme::cesaro(100), 101).unwrap();
        assert!(rep.converged);
        assert!(rep.ideal.unwrap().is_empty());
    }

    #[test]
    fn ws_ideal_of_irreducible_stochastic_is_zero() {
        let t = op(&[vec![0.5, 0.5], vec![0.25, 0.75]]);
        let rep = ws_invariant_ideal(&t, &WeightingScheme::cesaro(400), 401).unwrap();
        assert!(rep.converged, "flag: {:?}", rep.flag);
        assert!(rep.ideal.unwrap().is_empty());
        assert_eq!(rep.peripheral_ok, Some(true));
    }

    #[test]
    fn remark_4_3_bounded_powers_over_j_give_quadratic_resolvent() {
        for t in [jordan2(), cycle(3), op(&[vec![0.5, 0.5], vec![0.25, 0.75]])] {
            let rep = power_and_cesaro(&t, 60);
            assert!(rep.sup_power_over_j.is_finite());
            let profile = growth_profile(&t, cr(1.0), None, &GridParams::default()).unwrap();
            let chk = ray_one_at_most_quadratic(&profile);
            assert!(chk.ok, "T should have at-most-quadratic growth: {chk:?}");
        }
    }
}
