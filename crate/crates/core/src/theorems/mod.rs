//! Mechanical verification of the in-scope growth-rate and cyclicity
//! statements on concrete instances, with structured hypothesis gating: a
//! conclusion is asserted only when every hypothesis check passed; a failed
//! or undecidable hypothesis gates the verdict to `NotApplicable`.

pub mod feasibility;

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::PerronError;
use crate::fit;
use crate::growth::{
    self, schemes::WeightingScheme, BoundStatus, GridParams,
};
use crate::lattice::{modulus, CoordinateIdeal, LatticeVector, PositiveOperator};
use crate::matrix::CMatrix;
use crate::spectral::{self, SpectrumReport};
use crate::structure;
use crate::tol;
use feasibility::{linear_feasibility, push_equality};

/// Status of one hypothesis check. `Holds`/`Fails` mean the finite check
/// passed or was refuted (the evidence records when a pass is only
/// finite-horizon); `OneSided` means the check could not decide either way
/// at this horizon or search class, which gates the conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HypStatus {
    Holds,
    Fails,
    OneSided,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypothesis {
    pub name: String,
    pub status: HypStatus,
    pub evidence: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum ConclusionStatus {
    Holds,
    Fails,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct TheoremVerdict {
    pub theorem_id: String,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: ConclusionStatus,
    pub witnesses: Vec<String>,
    pub tolerances: BTreeMap<String, f64>,
    pub grid: GridParams,
}

impl TheoremVerdict {
    pub fn exit_code(&self) -> i32 {
        match self.conclusion {
            ConclusionStatus::Holds => 0,
            ConclusionStatus::Fails => 1,
            ConclusionStatus::NotApplicable => 10,
        }
    }
}

struct VerdictBuilder {
    theorem_id: String,
    hypotheses: Vec<Hypothesis>,
    witnesses: Vec<String>,
    tolerances: BTreeMap<String, f64>,
    grid: GridParams,
}

impl VerdictBuilder {
    fn new(id: &str, grid: GridParams) -> Self {
        let mut tolerances = BTreeMap::new();
        tolerances.insert("cluster_rel".into(), tol::CLUSTER_REL);
        tolerances.insert("eps_per".into(), tol::EPS_PER);
        tolerances.insert("power_closure".into(), tol::POWER_CLOSURE_TOL);
        Self {
            theorem_id: id.into(),
            hypotheses: Vec::new(),
            witnesses: Vec::new(),
            tolerances,
            grid,
        }
    }

    fn hyp(&mut self, name: &str, status: HypStatus, evidence: impl Into<String>) -> &mut Self {
        self.hypotheses.push(Hypothesis {
            name: name.into(),
            status,
            evidence: evidence.into(),
        });
        self
    }

    fn hyp_bool(&mut self, name: &str, ok: bool, evidence: impl Into<String>) -> &mut Self {
        self.hyp(
            name,
            if ok { HypStatus::Holds } else { HypStatus::Fails },
            evidence,
        )
    }

    fn witness(&mut self, w: impl Into<String>) -> &mut Self {
        self.witnesses.push(w.into());
        self
    }

    fn tol(&mut self, name: &str, value: f64) -> &mut Self {
        self.tolerances.insert(name.into(), value);
        self
    }

    fn all_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.status == HypStatus::Holds)
    }

    /// Gates the conclusion: asserted only when every hypothesis holds.
    fn conclude(self, outcome: bool) -> TheoremVerdict {
        let conclusion = if self.all_hold() {
            if outcome {
                ConclusionStatus::Holds
            } else {
                ConclusionStatus::Fails
            }
        } else {
            ConclusionStatus::NotApplicable
        };
        TheoremVerdict {
            theorem_id: self.theorem_id,
            hypotheses: self.hypotheses,
            conclusion,
            witnesses: self.witnesses,
            tolerances: self.tolerances,
            grid: self.grid,
        }
    }
}

/// Power-closure conclusion: all integer powers of `lambda` (at its own
/// modulus) appear in the spectrum, exactly over one period for rational
/// angles, up to a capped range otherwise.
#[derive(Clone, Debug, Serialize)]
pub struct PowerClosure {
    pub holds: bool,
    pub rational: Option<(i64, u64)>,
    pub targets_checked: usize,
    pub missing: Vec<String>,
    pub cap_hit: bool,
}

fn power_closure(
    spec: &SpectrumReport,
    lambda: Complex64,
    peripheral_only: bool,
    q_max: usize,
) -> PowerClosure {
    let two_pi = std::f64::consts::TAU;
    let r = lambda.norm();
    let theta = lambda.arg().rem_euclid(two_pi);
    let q_max = q_max.max(1) as u64;
    let mut rational = None;
    for q in 1..=q_max {
        let p = (theta / two_pi * q as f64).round();
        if (theta - two_pi * p / q as f64).abs() <= tol::ANGULAR_TOL {
            rational = Some((p as i64, q));
            break;
        }
    }
    let match_tol = tol::POWER_CLOSURE_TOL * spec.spectral_radius.max(1.0);
    let member = |target: Complex64| -> bool {
        if peripheral_only {
            spec.peripheral.iter().any(|&z| (z - target).norm() <= match_tol)
        } else {
            spec.contains_value(target, match_tol)
        }
    };
    let mut missing = Vec::new();
    let mut checked = 0usize;
    let mut cap_hit = false;
    match rational {
        Some((p, q)) => {
            for k in 0..q as i64 {
                let rem = (p * k).rem_euclid(q as i64);
                let target = Complex64::from_polar(r, two_pi * rem as f64 / q as f64);
                checked += 1;
                if !member(target) {
                    missing.push(format!("lambda^{k} = {target}"));
                }
            }
        }
        None => {
            cap_hit = true;
            let cap = (2 * q_max * q_max) as i64;
            for k in -cap..=cap {
                let target = Complex64::from_polar(r, (k as f64 * theta).rem_euclid(two_pi));
                checked += 1;
                if !member(target) {
                    missing.push(format!("lambda^{k} = {target}"));
                }
            }
        }
    }
    PowerClosure {
        holds: missing.is_empty(),
        rational,
        targets_checked: checked,
        missing,
        cap_hit,
    }
}

/// First eigenvector (deterministic SVD order) of `ker(lambda - T)`,
/// normalized in the operator's declared norm.
pub fn unit_eigenvector(t: &PositiveOperator, lambda: Complex64) -> Option<LatticeVector> {
    let basis = spectral::eigenspace(t, lambda);
    let v = basis.first()?;
    let n = v.norm(t.norm_choice());
    if n <= 0.0 {
        return None;
    }
    Some(v.scale(Complex64::new(1.0 / n, 0.0)))
}

/// Finds a real vector in the complex span of `basis` dominating `lower`
/// entrywise.
fn dominating_real_vector(basis: &[LatticeVector], lower: &[f64]) -> Option<Vec<f64>> {
    if basis.is_empty() {
        return None;
    }
    let n = lower.len();
    let m = basis.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    for i in 0..n {
        let mut re_row = Vec::with_capacity(2 * m);
        let mut im_row = Vec::with_capacity(2 * m);
        for v in basis {
            re_row.push(v.entries()[i].re);
            im_row.push(v.entries()[i].im);
        }
        for v in basis {
            re_row.push(-v.entries()[i].im);
            im_row.push(v.entries()[i].re);
        }
        a.push(re_row);
        b.push(lower[i]);
        push_equality(&mut a, &mut b, im_row, 0.0);
    }
    let w = linear_feasibility(&a, &b)?;
    let x: Vec<f64> = (0..n)
        .map(|i| {
            basis
                .iter()
                .enumerate()
                .map(|(j, v)| v.entries()[i].re * w[j] - v.entries()[i].im * w[m + j])
                .sum()
        })
        .collect();
    Some(x)
}

/// Searches `ker(lambda - T)` for an entrywise-nonnegative eigenvector.
fn nonneg_eigenvector(t: &PositiveOperator, lambda: Complex64) -> Option<Vec<f64>> {
    let basis = spectral::eigenspace(t, lambda);
    if basis.is_empty() {
        return None;
    }
    if basis.len() == 1 {
        let v = &basis[0];
        let max_mod = v.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
        if max_mod <= 0.0 {
            return None;
        }
        let anchor = v
            .entries()
            .iter()
            .max_by(|a, b| a.norm().total_cmp(&b.norm()))
            .unwrap();
        let phase = anchor.conj() / anchor.norm();
        let aligned: Vec<Complex64> = v.entries().iter().map(|z| z * phase).collect();
        let ok = aligned
            .iter()
            .all(|z| z.im.abs() <= 1e-10 * max_mod && z.re >= -1e-10 * max_mod);
        if ok {
            return Some(aligned.iter().map(|z| z.re.max(0.0)).collect());
        }
        return None;
    }
    // multi-dimensional eigenspace: x = Re(B c) >= 0, Im(B c) = 0, sum = 1
    let n = t.dim();
    let m = basis.len();
    let mut a = Vec::new();
    let mut b = Vec::new();
    let mut sum_row = vec![0.0; 2 * m];
    for i in 0..n {
        let mut re_row = Vec::with_capacity(2 * m);
        let mut im_row = Vec::with_capacity(2 * m);
        for v in &basis {
            re_row.push(v.entries()[i].re);
            im_row.push(v.entries()[i].im);
        }
        for v in &basis {
            re_row.push(-v.entries()[i].im);
            im_row.push(v.entries()[i].re);
        }
        for (j, &c) in re_row.iter().enumerate() {
            sum_row[j] += c;
        }
        a.push(re_row);
        b.push(0.0);
        push_equality(&mut a, &mut b, im_row, 0.0);
    }
    push_equality(&mut a, &mut b, sum_row, 1.0);
    let w = linear_feasibility(&a, &b)?;
    Some(
        (0..n)
            .map(|i| {
                basis
                    .iter()
                    .enumerate()
                    .map(|(j, v)| v.entries()[i].re * w[j] - v.entries()[i].im * w[m + j])
                    .sum::<f64>()
                    .max(0.0)
            })
            .collect(),
    )
}

fn hyp_spectral_radius_one(b: &mut VerdictBuilder, spec: &SpectrumReport) {
    let ok = (spec.spectral_radius - 1.0).abs() <= spec.cluster_tol;
    b.hyp_bool(
        "r(T) = 1",
        ok,
        format!("spectral radius {}", spec.spectral_radius),
    );
}

fn hyp_unit_eigenpair(
    b: &mut VerdictBuilder,
    t: &PositiveOperator,
    lambda: Complex64,
    z: &LatticeVector,
) {
    match growth::require_unit_eigenpair(t, lambda, z) {
        Ok(()) => {
            b.hyp("Tz = lambda z, ||z|| = 1", HypStatus::Holds, "eigenpair verified");
        }
        Err(e) => {
            b.hyp("Tz = lambda z, ||z|| = 1", HypStatus::Fails, e.to_string());
        }
    }
}

fn rate_hyp_status(check: &growth::RateCheck) -> HypStatus {
    if check.ok {
        HypStatus::Holds
    } else if check.exponent.is_none() {
        HypStatus::OneSided
    } else {
        HypStatus::Fails
    }
}

pub enum Thm12Variant {
    A,
    B,
    C,
}

/// Growth-rate theorem for a peripheral eigenvector: (a) the pointwise
/// sandwich `1/(r_n-1) <= ||R(r_n,T)|z||| <= ||R(r_n,T)||`; (b)/(c) minimal
/// or maximal directed growth forces the power closure of `lambda` inside
/// the spectrum.
pub fn verify_thm_1_2(
    t: &PositiveOperator,
    lambda: Complex64,
    z: &LatticeVector,
    variant: Thm12Variant,
    grid: &GridParams,
) -> Result<TheoremVerdict, PerronError> {
    let id = match variant {
        Thm12Variant::A => "thm1.2a",
        Thm12Variant::B => "thm1.2b",
        Thm12Variant::C => "thm1.2c",
    };
    let mut b = VerdictBuilder::new(id, *grid);
    let spec = spectral::spectrum(t)?;
    b.hyp_bool(
        "T positive",
        t.nonneg_certified(),
        "entrywise nonnegativity certified",
    );
    hyp_spectral_radius_one(&mut b, &spec);
    b.hyp_bool(
        "|lambda| = 1",
        (lambda.norm() - 1.0).abs() <= tol::EPS_PER,
        format!("|lambda| = {}", lambda.norm()),
    );
    hyp_unit_eigenpair(&mut b, t, lambda, z);
    if !b.all_hold() {
        return Ok(b.conclude(false));
    }

    let profile = growth::growth_profile_with_spectrum(t, lambda, Some(z), grid, &spec)?;
    match variant {
        Thm12Variant::A => {
            let mut ok = true;
            let mut checked = 0;
            for p in profile.points.iter().filter(|p| p.retained) {
                let (Some(d), Some(dres)) = (p.directed_norm, p.directed_residual) else {
                    continue;
                };
                checked += 1;
                let slack =
                    tol::INEQ_SLACK + p.residual_ray_one + p.norm_ray_one * dres / d.max(1e-300);
                let lower = 1.0 / (p.r - 1.0);
                if d < lower * (1.0 - slack) {
                    ok = false;
                    b.witness(format!("sandwich lower fails at n = {}", p.n));
                }
                if d > p.norm_ray_one * (1.0 + slack) {
                    ok = false;
                    b.witness(format!("sandwich upper fails at n = {}", p.n));
                }
            }
            b.witness(format!("sandwich checked at {checked} retained grid points"));
            Ok(b.conclude(ok && checked > 0))
        }
        Thm12Variant::B | Thm12Variant::C => {
            let minimal_check = growth::directed_linear(&profile);
            let maximal_check = growth::directed_matches_ray_one(&profile);
            match variant {
                Thm12Variant::B => b.hyp(
                    "||R(r_n,T)|z||| ~ 1/(r_n-1) (minimal growth)",
                    rate_hyp_status(&minimal_check),
                    minimal_check.detail.clone(),
                ),
                _ => b.hyp(
                    "||R(r_n,T)|z||| ~ ||R(r_n,T)|| (maximal growth)",
                    rate_hyp_status(&maximal_check),
                    maximal_check.detail.clone(),
                ),
            };
            let closure = power_closure(&spec, lambda, false, t.dim());
            b.witness(format!(
                "power closure: {} targets checked, rational angle {:?}",
                closure.targets_checked, closure.rational
            ));
            for m in &closure.missing {
                b.witness(format!("missing from sigma(T): {m}"));
            }
            Ok(b.conclude(closure.holds))
        }
    }
}

pub enum Prop31Mode {
    PowerBoundedOrbit,
    DominatingFixedVector,
}

/// Dominated-eigenvector proposition: a unimodular eigenvalue whose
/// eigenvector modulus has a bounded orbit (a) or is dominated by a fixed
/// vector (b) has all its powers in the spectrum. The spectral radius is
/// not assumed to be 1.
pub fn verify_prop_3_1(
    t: &PositiveOperator,
    lambda: Complex64,
    z: &LatticeVector,
    mode: Prop31Mode,
    horizon: usize,
) -> Result<TheoremVerdict, PerronError> {
    let mut b = VerdictBuilder::new("prop3.1", GridParams::default());
    let spec = spectral::spectrum(t)?;
    b.witness("r(T) = 1 is not assumed by this proposition");
    b.hyp_bool(
        "T positive",
        t.nonneg_certified(),
        "entrywise nonnegativity certified",
    );
    b.hyp_bool(
        "|lambda| = 1",
        (lambda.norm() - 1.0).abs() <= tol::EPS_PER,
        format!("|lambda| = {}", lambda.norm()),
    );
    hyp_unit_eigenpair(&mut b, t, lambda, z);

    match mode {
        Prop31Mode::PowerBoundedOrbit => {
            let zmod = modulus(z);
            let p = t.norm_choice();
            let mut v = zmod.clone();
            let mut norms = vec![v.norm(p)];
            for _ in 0..horizon {
                v = t.apply(&v)?;
                norms.push(v.norm(p));
            }
            let sup = norms.iter().copied().fold(0.0, f64::max);
            let trend = {
                let pts: Vec<(f64, f64)> = norms
                    .iter()
                    .enumerate()
                    .skip((horizon / 4).max(1))
                    .filter(|(_, &s)| s > 0.0)
                    .map(|(j, &s)| ((j as f64).ln(), s.ln()))
                    .collect();
                fit::least_squares_slope(&pts).map(|(s, _)| s)
            };
            let status = match trend {
                Some(tr) if tr >= tol::TREND_UNBOUNDED => HypStatus::Fails,
                Some(tr) if tr <= tol::TREND_BOUNDED => HypStatus::Holds,
                _ => HypStatus::OneSided,
            };
            b.hyp(
                "sup_n ||T^n |z| || < infinity",
                status,
                format!("finite-horizon sup {sup} over {horizon} powers, trend {trend:?}"),
            );
        }
        Prop31Mode::DominatingFixedVector => {
            let basis = spectral::eigenspace(t, Complex64::new(1.0, 0.0));
            if basis.is_empty() {
                b.hyp(
                    "1 is an eigenvalue with eigenvector x >= |z|",
                    HypStatus::Fails,
                    "1 is not an eigenvalue",
                );
            } else {
                let lower: Vec<f64> = modulus(z).entries().iter().map(|e| e.re).collect();
                match dominating_real_vector(&basis, &lower) {
                    Some(x) => {
                        b.hyp(
                            "1 is an eigenvalue with eigenvector x >= |z|",
                            HypStatus::Holds,
                            format!("feasible dominating fixed vector found, x = {x:?}"),
                        );
                    }
                    None => {
                        b.hyp(
                            "1 is an eigenvalue with eigenvector x >= |z|",
                            HypStatus::Fails,
                            "no real fixed vector dominates |z| (complete search over ker(1-T))",
                        );
                    }
                }
            }
        }
    }

    let closure = power_closure(&spec, lambda, false, t.dim());
    b.witness(format!(
        "power closure: {} targets checked, rational angle {:?}",
        closure.targets_checked, closure.rational
    ));
    for m in &closure.missing {
        b.witness(format!("missing from sigma(T): {m}"));
    }
    Ok(b.conclude(closure.holds))
}

/// Dominated (approximate) eigenvector condition at exact-eigenvector
/// scale: feasibility of `z in ker(lambda - T)`, `x in ker(|lambda| - T)`
/// with `|z| <= x`, `||z|| = 1`; when feasible, the power closure of the
/// angle at modulus `|lambda|` must lie in the spectrum.
pub fn verify_dae(
    t: &PositiveOperator,
    lambda: Complex64,
    grid: &GridParams,
) -> Result<TheoremVerdict, PerronError> {
    let mut b = VerdictBuilder::new("thm3.5", *grid);
    b.tol("phase_grid", tol::PHASE_GRID as f64);
    let spec = spectral::spectrum(t)?;
    b.hyp_bool(
        "T positive",
        t.nonneg_certified(),
        "entrywise nonnegativity certified",
    );
    b.hyp_bool(
        "lambda != 0",
        lambda.norm() > spec.cluster_tol,
        format!("|lambda| = {}", lambda.norm()),
    );
    let z_basis = spectral::eigenspace(t, lambda);
    b.hyp_bool(
        "lambda is an eigenvalue",
        !z_basis.is_empty(),
        format!("dim ker(lambda - T) = {}", z_basis.len()),
    );

    let r = lambda.norm();
    let x_basis = spectral::eigenspace(t, Complex64::new(r, 0.0));
    let mut witness_pair: Option<(LatticeVector, Vec<f64>)> = None;
    if x_basis.is_empty() {
        b.hyp(
            "dominated eigenvector condition",
            HypStatus::Fails,
            "|lambda| is not an eigenvalue",
        );
    } else if z_basis.is_empty() {
        b.hyp(
            "dominated eigenvector condition",
            HypStatus::Fails,
            "lambda is not an eigenvalue",
        );
    } else if z_basis.len() == 1 {
        // the modulus of z is phase-invariant: search x >= |z| directly
        let z = unit_eigenvector(t, lambda).expect("basis nonempty");
        let lower: Vec<f64> = modulus(&z).entries().iter().map(|e| e.re).collect();
        match dominating_real_vector(&x_basis, &lower) {
            Some(x) => {
                b.hyp(
                    "dominated eigenvector condition",
                    HypStatus::Holds,
                    format!("dominating eigenvector for |lambda| found, x = {x:?}"),
                );
                witness_pair = Some((z, x));
            }
            None => {
                b.hyp(
                    "dominated eigenvector condition",
                    HypStatus::Fails,
                    "no eigenvector for |lambda| dominates |z| (complete search)",
                );
            }
        }
    } else {
        // multi-dimensional eigenspace: fix a phase grid for the free phase
        // of z and solve the polygonal outer relaxation, then verify the
        // candidate exactly
        let n = t.dim();
        let mz = z_basis.len();
        let phases = tol::PHASE_GRID;
        let eta = (std::f64::consts::PI / phases as f64).cos() / (n as f64).sqrt();
        let mut found = None;
        'outer: for anchor in 0..n {
            for l in 0..phases {
                let phi = std::f64::consts::TAU * l as f64 / phases as f64;
                // variables: [Re c (mz), Im c (mz), w_x (x-basis realization)]
                let mx = x_basis.len();
                let vars = 2 * mz + 2 * mx;
                let mut a: Vec<Vec<f64>> = Vec::new();
                let mut rhs: Vec<f64> = Vec::new();
                let zc = |i: usize, m: usize| {
                    let v = &z_basis[m];
                    v.entries()[i]
                };
                // x real: x_i = Re(X d), Im(X d) = 0
                let x_re = |i: usize| -> Vec<f64> {
                    let mut row = vec![0.0; vars];
                    for (j, v) in x_basis.iter().enumerate() {
                        row[2 * mz + j] = v.entries()[i].re;
                        row[2 * mz + mx + j] = -v.entries()[i].im;
                    }
                    row
                };
                for i in 0..n {
                    let mut im_row = vec![0.0; vars];
                    for (j, v) in x_basis.iter().enumerate() {
                        im_row[2 * mz + j] = v.entries()[i].im;
                        im_row[2 * mz + mx + j] = v.entries()[i].re;
                    }
                    push_equality(&mut a, &mut rhs, im_row, 0.0);
                }
                // polygonal |z_i| <= x_i: Re(e^{i psi} z_i) <= x_i for all psi
                for i in 0..n {
                    for m_ in 0..phases {
                        let psi = std::f64::consts::TAU * m_ as f64 / phases as f64;
                        let e = Complex64::from_polar(1.0, psi);
                        let mut row = x_re(i);
                        for (j, _) in z_basis.iter().enumerate() {
                            let c = e * zc(i, j);
                            row[j] -= c.re;
                            row[mz + j] -= -c.im;
                        }
                        a.push(row);
                        rhs.push(0.0);
                    }
                }
                // normalization: Re(e^{i phi} z_anchor) >= eta
                let e = Complex64::from_polar(1.0, phi);
                let mut row = vec![0.0; vars];
                for (j, _) in z_basis.iter().enumerate() {
                    let c = e * zc(anchor, j);
                    row[j] = c.re;
                    row[mz + j] = -c.im;
                }
                a.push(row);
                rhs.push(eta);
                if let Some(w) = linear_feasibility(&a, &rhs) {
                    // reconstruct and verify exactly
                    let z: Vec<Complex64> = (0..n)
                        .map(|i| {
                            z_basis
                                .iter()
                                .enumerate()
                                .map(|(j, v)| {
                                    v.entries()[i] * Complex64::new(w[j], w[mz + j])
                                })
                                .sum()
                        })
                        .collect();
                    let x: Vec<f64> = (0..n)
                        .map(|i| {
                            x_basis
                                .iter()
                                .enumerate()
                                .map(|(j, v)| {
                                    (v.entries()[i]
                                        * Complex64::new(w[2 * mz + j], w[2 * mz + mx + j]))
                                    .re
                                })
                                .sum()
                        })
                        .collect();
                    let znorm = t.norm_choice().vector_norm(&z);
                    if znorm <= 1e-12 {
                        continue;
                    }
                    let margin = (std::f64::consts::PI / phases as f64).cos();
                    let scale = 1.0 / (znorm * margin);
                    let zv = LatticeVector::new(
                        z.iter().map(|c| c / Complex64::new(znorm, 0.0)).collect(),
                    );
                    let xv: Vec<f64> = x.iter().map(|v| v * scale).collect();
                    let dominated = zv
                        .entries()
                        .iter()
                        .zip(&xv)
                        .all(|(zi, &xi)| zi.norm() <= xi + 1e-9);
                    if dominated {
                        found = Some((zv, xv));
                        break 'outer;
                    }
                }
            }
        }
        match found {
            Some((zv, xv)) => {
                b.hyp(
                    "dominated eigenvector condition",
                    HypStatus::Holds,
                    "dominated pair found on the phase grid and verified exactly",
                );
                witness_pair = Some((zv, xv));
            }
            None => {
                b.hyp(
                    "dominated eigenvector condition",
                    HypStatus::Fails,
                    "phase-grid relaxation infeasible for every normalization",
                );
            }
        }
    }

    if let Some((z, x)) = &witness_pair {
        b.witness(format!("z = {:?}", z.entries()));
        b.witness(format!("x = {x:?}"));
    }
    let closure = power_closure(&spec, lambda, false, t.dim());
    b.witness(format!(
        "power closure at modulus {r}: {} targets, rational {:?}",
        closure.targets_checked, closure.rational
    ));
    for m in &closure.missing {
        b.witness(format!("missing from sigma(T): {m}"));
    }
    Ok(b.conclude(closure.holds))
}

/// Quadratic-plus-linear growth theorem: linear growth along the
/// `lambda`-ray and at-most-quadratic growth along the real ray force the
/// power closure of `lambda` inside the peripheral spectrum.
pub fn verify_thm_4_1(
    t: &PositiveOperator,
    lambda: Complex64,
    grid: &GridParams,
) -> Result<TheoremVerdict, PerronError> {
    let mut b = VerdictBuilder::new("thm4.1", *grid);
    let spec = spectral::spectrum(t)?;
    if !t.nonneg_certified() {
        b.witness("note: input matrix is not certified nonnegative; growth hypotheses checked as stated");
    }
    hyp_spectral_radius_one(&mut b, &spec);
    let peripheral = growth::require_peripheral(&spec, lambda).is_ok();
    b.hyp_bool(
        "lambda in peripheral spectrum",
        peripheral,
        format!("lambda = {lambda}"),
    );
    if !b.all_hold() {
        return Ok(b.conclude(false));
    }
    let profile = growth::growth_profile_with_spectrum(t, lambda, None, grid, &spec)?;
    let lin = growth::lambda_ray_linear(&profile);
    b.hyp(
        "||R(r_n lambda, T)|| ~ 1/(r_n - 1)",
        rate_hyp_status(&lin),
        lin.detail.clone(),
    );
    let quad = growth::ray_one_at_most_quadratic(&profile);
    b.hyp(
        "||R(r_n, T)|| = O(1/(r_n - 1)^2)",
        rate_hyp_status(&quad),
        quad.detail.clone(),
    );
    let closure = power_closure(&spec, lambda, true, t.dim());
    b.witness(format!(
        "peripheral power closure: {} targets, rational {:?}",
        closure.targets_checked, closure.rational
    ));
    for m in &closure.missing {
        b.witness(format!("missing from sigma_per(T): {m}"));
    }
    Ok(b.conclude(closure.holds))
}

/// Pole variant: when `lambda` is a pole of the resolvent (automatic in
/// finite dimensions) and the real-ray growth is at most quadratic, the
/// power closure lies in the peripheral spectrum; the proof's intermediate
/// dichotomy (pole order 1 or 2) is checked independently via the index.
pub fn verify_cor_4_2(
    t: &PositiveOperator,
    lambda: Complex64,
    grid: &GridParams,
) -> Result<TheoremVerdict, PerronError> {
    let mut b = VerdictBuilder::new("cor4.2", *grid);
    let spec = spectral::spectrum(t)?;
    if !t.nonneg_certified() {
        b.witness("note: input matrix is not certified nonnegative; growth hypotheses checked as stated");
    }
    hyp_spectral_radius_one(&mut b, &spec);
    let match_tol = tol::POWER_CLOSURE_TOL * spec.spectral_radius.max(1.0);
    let record = spec.record_near(lambda, match_tol).cloned();
    b.hyp_bool(
        "lambda in peripheral spectrum",
        record.as_ref().map(|r| r.is_peripheral).unwrap_or(false),
        format!("lambda = {lambda}"),
    );
    b.hyp(
        "lambda is a pole of the resolvent",
        HypStatus::Holds,
        "automatic in finite dimensions (every spectral value is a pole)",
    );
    if !b.all_hold() {
        return Ok(b.conclude(false));
    }
    let profile = growth::growth_profile_with_spectrum(t, lambda, None, grid, &spec)?;
    let quad = growth::ray_one_at_most_quadratic(&profile);
    b.hyp(
        "||R(r_n, T)|| = O(1/(r_n - 1)^2)",
        rate_hyp_status(&quad),
        quad.detail.clone(),
    );
    let record = record.expect("peripheral hypothesis held");
    let pole_ok = record.index <= 2;
    b.witness(format!(
        "pole order at lambda = {} (proof dichotomy requires 1 or 2)",
        record.index
    ));
    let closure = power_closure(&spec, lambda, true, t.dim());
    for m in &closure.missing {
        b.witness(format!("missing from sigma_per(T): {m}"));
    }
    Ok(b.conclude(closure.holds && pole_ok))
}

pub enum KrVariant {
    A,
    B,
    C,
}

/// Classical growth-rate results: (a) minimal resolvent growth gives full
/// peripheral cyclicity; (b) maximal directional growth gives the power
/// closure of `lambda`; (c) quadratic growth plus a super-fixed functional
/// pairing with `|z|` gives the power closure of `lambda`.
pub fn verify_kr_2_1(
    t: &PositiveOperator,
    lambda: Complex64,
    variant: KrVariant,
    x_prime: Option<&[f64]>,
    grid: &GridParams,
) -> Result<TheoremVerdict, PerronError> {
    let id = match variant {
        KrVariant::A => "kr2.1a",
        KrVariant::B => "kr2.1b",
        KrVariant::C => "kr2.1c",
    };
    let mut b = VerdictBuilder::new(id, *grid);
    let spec = spectral::spectrum(t)?;
    b.hyp_bool(
        "T positive",
        t.nonneg_certified(),
        "entrywise nonnegativity certified",
    );
    hyp_spectral_radius_one(&mut b, &spec);
    if matches!(variant, KrVariant::B | KrVariant::C) {
        let peripheral = growth::require_peripheral(&spec, lambda).is_ok();
        b.hyp_bool(
            "lambda in peripheral spectrum",
            peripheral,
            format!("lambda = {lambda}"),
        );
    }
    if !b.all_hold() {
        return Ok(b.conclude(false));
    }
    let profile = growth::growth_profile_with_spectrum(t, lambda, None, grid, &spec)?;

    match variant {
        KrVariant::A => {
            let lin = growth::ray_one_linear(&profile);
            b.hyp(
                "||R(r_n, T)|| ~ 1/(r_n - 1) (slowest possible growth)",
                rate_hyp_status(&lin),
                lin.detail.clone(),
            );
            let cyc = spectral::is_cyclic_set(
                &spec.peripheral,
                spec.spectral_radius,
                tol::ANGULAR_TOL,
                Some(t.dim()),
            )?;
            b.witness(format!(
                "peripheral spectrum of {} values, cyclic = {}",
                spec.peripheral.len(),
                cyc.cyclic
            ));
            Ok(b.conclude(cyc.cyclic))
        }
        KrVariant::B => {
            let fast = growth::lambda_ray_matches_ray_one(&profile);
            b.hyp(
                "||R(r_n lambda, T)|| ~ ||R(r_n, T)|| (fastest possible growth)",
                rate_hyp_status(&fast),
                fast.detail.clone(),
            );
            let closure = power_closure(&spec, lambda, true, t.dim());
            for m in &closure.missing {
                b.witness(format!("missing from sigma_per(T): {m}"));
            }
            Ok(b.conclude(closure.holds))
        }
        KrVariant::C => {
            let quad = growth::ray_one_at_most_quadratic(&profile);
            b.hyp(
                "||R(r_n, T)|| = O(1/(r_n - 1)^2)",
                rate_hyp_status(&quad),
                quad.detail.clone(),
            );
            let z = unit_eigenvector(t, lambda);
            b.hyp_bool(
                "lambda is an eigenvalue with eigenvector z",
                z.is_some(),
                "eigenvector from ker(lambda - T)",
            );
            let Some(z) = z else {
                return Ok(b.conclude(false));
            };
            let zmod: Vec<f64> = modulus(&z).entries().iter().map(|e| e.re).collect();
            // functional x' >= 0 with T'x' >= x' and <x', |z|> > 0
            let adj = spectral::adjoint(t);
            let status = match x_prime {
                Some(xp) => {
                    if xp.len() != t.dim() {
                        return Err(PerronError::DimensionMismatch {
                            expected: t.dim(),
                            got: xp.len(),
                        });
                    }
                    let nonneg = xp.iter().all(|&v| v >= 0.0);
                    let xp_vec = LatticeVector::from_real(xp);
                    let txp = adj.apply(&xp_vec)?;
                    let super_fixed = txp
                        .entries()
                        .iter()
                        .zip(xp)
                        .all(|(tv, &v)| tv.re >= v - 1e-9 * t.norm().max(1.0));
                    let pairing: f64 = xp.iter().zip(&zmod).map(|(a, b)| a * b).sum();
                    let scale = t.norm_choice().vector_norm(xp_vec.entries());
                    let ok = nonneg && super_fixed && pairing > 1e-9 * scale.max(1e-300);
                    b.witness(format!(
                        "supplied functional: nonneg = {nonneg}, 0 <= x' <= T'x' = {super_fixed}, \
                         <x', |z|> = {pairing}"
                    ));
                    if ok {
                        HypStatus::Holds
                    } else {
                        HypStatus::Fails
                    }
                }
                None => {
                    // search: x' >= 0, (T' - 1)x' >= 0, <x', |z|> >= 1
                    let n = t.dim();
                    let mut a = Vec::new();
                    let mut rhs = Vec::new();
                    for i in 0..n {
                        let mut row = vec![0.0; n];
                        row[i] = 1.0;
                        a.push(row);
                        rhs.push(0.0);
                    }
                    for i in 0..n {
                        let row: Vec<f64> = (0..n)
                            .map(|j| {
                                let tji = adj.matrix().get(i, j).re;
                                tji - if i == j { 1.0 } else { 0.0 }
                            })
                            .collect();
                        a.push(row);
                        rhs.push(0.0);
                    }
                    a.push(zmod.clone());
                    rhs.push(1.0);
                    match linear_feasibility(&a, &rhs) {
                        Some(xp) => {
                            b.witness(format!("super-fixed functional found: x' = {xp:?}"));
                            HypStatus::Holds
                        }
                        None => {
                            b.witness(
                                "no witness found in the searched class of positive functionals",
                            );
                            HypStatus::OneSided
                        }
                    }
                }
            };
            b.hyp(
                "exists x' with 0 <= x' <= T'x' and <x', |z|> != 0",
                status,
                "super-fixed functional pairing with |z|",
            );
            let closure = power_closure(&spec, lambda, true, t.dim());
            for m in &closure.missing {
                b.witness(format!("missing from sigma_per(T): {m}"));
            }
            Ok(b.conclude(closure.holds))
        }
    }
}

/// Diagonal torsion operator conjugating `T` onto `lambda T`, built from
/// the phases of a strictly-positive-modulus peripheral eigenvector.
#[derive(Clone, Debug, Serialize)]
pub struct TorsionSimilarity {
    #[serde(with = "crate::serde_util::complex_vec")]
    pub diagonal: Vec<Complex64>,
    /// `||U^{-1} T U - lambda T||` in the declared norm.
    pub defect: f64,
    pub relative_defect: f64,
    /// `|Uv| = |v|` verified on sampled vectors.
    pub torsion_modulus_ok: bool,
}

pub fn torsion_similarity(
    t: &PositiveOperator,
    lambda: Complex64,
    z: &LatticeVector,
) -> Result<TorsionSimilarity, PerronError> {
    let irr = structure::irreducibility(t)?;
    if !irr.is_irreducible {
        return Err(PerronError::Invalid {
            detail: "torsion similarity requires an irreducible operator".into(),
        });
    }
    if (lambda.norm() - 1.0).abs() > tol::EPS_PER {
        return Err(PerronError::NotUnitModulus {
            modulus: lambda.norm(),
        });
    }
    let znorm = z.norm(t.norm_choice());
    let zunit = z.scale(Complex64::new(1.0 / znorm, 0.0));
    growth::require_unit_eigenpair(t, lambda, &zunit)?;
    let zn = z.norm(crate::lattice::NormChoice::Inf);
    for (i, e) in z.entries().iter().enumerate() {
        if e.norm() <= tol::TORSION_MIN_ENTRY * zn {
            return Err(PerronError::TorsionEntryTooSmall {
                index: i,
                modulus: e.norm(),
            });
        }
    }
    let diagonal: Vec<Complex64> = z.entries().iter().map(|e| e / e.norm()).collect();
    let n = t.dim();
    let conj = CMatrix::from_fn(n, n, |i, j| {
        diagonal[i].conj() * t.matrix().get(i, j) * diagonal[j]
    });
    let target = t.matrix().scale(lambda);
    let defect = t.norm_choice().operator_norm(&conj.sub(&target));
    let tnorm = t.norm();
    let mut rng = ChaCha8Rng::seed_from_u64(0x70f5);
    let mut torsion_modulus_ok = true;
    for _ in 0..10 {
        let v: Vec<Complex64> = (0..n)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        let uv: Vec<Complex64> = v.iter().zip(&diagonal).map(|(x, u)| x * u).collect();
        let vnorm = t.norm_choice().vector_norm(&v);
        let defect_mod: Vec<Complex64> = uv
            .iter()
            .zip(&v)
            .map(|(a, b)| Complex64::new(a.norm() - b.norm(), 0.0))
            .collect();
        if t.norm_choice().vector_norm(&defect_mod) > 1e-13 * vnorm.max(1.0) {
            torsion_modulus_ok = false;
        }
    }
    Ok(TorsionSimilarity {
        diagonal,
        defect,
        relative_defect: defect / tnorm.max(1e-300),
        torsion_modulus_ok,
    })
}

/// One lettered sub-conclusion of the irreducible (WS)-bounded theorem.
#[derive(Clone, Debug, Serialize)]
pub struct SubCheck {
    pub id: &'static str,
    pub ok: bool,
    pub evidence: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Thm58Verdict {
    pub verdict: TheoremVerdict,
    pub subchecks: Vec<SubCheck>,
}

/// Irreducible (WS)-bounded operators: verifies conclusions (a)-(g) on a
/// concrete instance (orbit non-vanishing, moduli of peripheral
/// eigenvectors fixed, one-dimensional positive fixed space, torsion
/// similarity, peripheral group structure, algebraic simplicity, and the
/// positive-eigenvector characterization of the spectral radius).
pub fn verify_thm_5_8(
    t: &PositiveOperator,
    scheme: &WeightingScheme,
    j_prefix: usize,
    grid: &GridParams,
) -> Result<Thm58Verdict, PerronError> {
    let mut b = VerdictBuilder::new("thm5.8", *grid);
    b.tol("torsion_defect_rel", tol::TORSION_DEFECT_REL);
    b.tol("fixed_vector", tol::FIXED_VECTOR_TOL);
    b.tol("sample_seed", 0x58a5 as f64);
    let spec = spectral::spectrum(t)?;
    b.hyp_bool(
        "T positive",
        t.nonneg_certified(),
        "entrywise nonnegativity certified",
    );
    hyp_spectral_radius_one(&mut b, &spec);
    let irr = if t.nonneg_certified() {
        structure::irreducibility(t)?
    } else {
        return Ok(Thm58Verdict {
            verdict: b.conclude(false),
            subchecks: Vec::new(),
        });
    };
    b.hyp_bool(
        "T irreducible",
        irr.is_irreducible,
        format!("{} strongly connected components", irr.sccs.len()),
    );
    b.hyp(
        "peripheral point spectrum nonempty",
        HypStatus::Holds,
        "automatic in finite dimensions (peripheral values are eigenvalues)",
    );
    let ws = growth::ws_bound(t, scheme, j_prefix)?;
    let ws_status = match ws.verdict.as_ref().map(|v| v.status) {
        Some(BoundStatus::BoundedPlausible) => HypStatus::Holds,
        Some(BoundStatus::UnboundedDetected) => HypStatus::Fails,
        _ => HypStatus::OneSided,
    };
    b.hyp(
        "T is (WS)-bounded",
        ws_status,
        format!(
            "scheme {}, sup {} over {} members (finite-horizon, one-sided)",
            ws.scheme,
            ws.sup_estimate,
            ws.points.len()
        ),
    );
    if !b.all_hold() {
        return Ok(Thm58Verdict {
            verdict: b.conclude(false),
            subchecks: Vec::new(),
        });
    }

    let mut subchecks = Vec::new();
    let n = t.dim();
    let p = t.norm_choice();
    let period = irr.period.unwrap_or(1);

    // (a): sampled positive orbits stay away from zero over the horizon
    {
        let mut rng = ChaCha8Rng::seed_from_u64(0x58a5);
        let mut samples: Vec<LatticeVector> = (0..n).map(|i| LatticeVector::unit(n, i)).collect();
        for _ in 0..50 {
            let raw: Vec<f64> = (0..n).map(|_| rng.gen_range(0.01..1.0)).collect();
            let v = LatticeVector::from_real(&raw);
            let nv = v.norm(p);
            samples.push(v.scale(Complex64::new(1.0 / nv, 0.0)));
        }
        let mut ok = true;
        let mut worst = f64::INFINITY;
        for x in &samples {
            let mut v = x.clone();
            let mut min_norm = v.norm(p);
            let mut norms = vec![min_norm];
            for _ in 0..tol::POWER_HORIZON {
                v = t.apply(&v)?;
                let nv = v.norm(p);
                min_norm = min_norm.min(nv);
                norms.push(nv);
            }
            worst = worst.min(min_norm);
            let pts: Vec<(f64, f64)> = norms
                .iter()
                .enumerate()
                .skip(tol::POWER_HORIZON / 4)
                .filter(|(_, &s)| s > 0.0)
                .map(|(j, &s)| ((j as f64).ln(), s.ln()))
                .collect();
            let trend = fit::least_squares_slope(&pts).map(|(s, _)| s).unwrap_or(-1.0);
            if min_norm < tol::ORBIT_FLOOR || trend < -0.1 {
                ok = false;
            }
        }
        subchecks.push(SubCheck {
            id: "a",
            ok,
            evidence: format!(
                "min ||T^n x|| = {worst} over {} samples, horizon {} (one-sided)",
                n + 50,
                tol::POWER_HORIZON
            ),
        });
    }

    // (b): moduli of peripheral eigenvectors are fixed vectors
    {
        let mut ok = true;
        let mut worst = 0.0f64;
        for rec in spec.peripheral_records() {
            for z in spectral::eigenspace(t, rec.value) {
                let zn = z.norm(p);
                if zn <= 0.0 {
                    continue;
                }
                let zu = z.scale(Complex64::new(1.0 / zn, 0.0));
                let zm = modulus(&zu);
                let defect = t.apply(&zm)?.sub(&zm);
                let d = p.vector_norm(defect.entries());
                worst = worst.max(d);
                if d > tol::FIXED_VECTOR_TOL {
                    ok = false;
                }
            }
        }
        subchecks.push(SubCheck {
            id: "b",
            ok,
            evidence: format!("max ||T|z| - |z||| = {worst} over peripheral eigenvectors"),
        });
    }

    // (c): fixed space is one-dimensional, spanned by a strictly positive
    // vector
    let perron = {
        let basis = spectral::eigenspace(t, Complex64::new(1.0, 0.0));
        let dim_ok = basis.len() == 1;
        let (pos_ok, v) = if let Some(v) = basis.first() {
            let max_mod = v.entries().iter().map(|z| z.norm()).fold(0.0, f64::max);
            let anchor = v
                .entries()
                .iter()
                .max_by(|a, b| a.norm().total_cmp(&b.norm()))
                .unwrap();
            let phase = anchor.conj() / anchor.norm();
            let aligned: Vec<Complex64> = v.entries().iter().map(|z| z * phase).collect();
            let strictly = aligned.iter().all(|z| {
                z.im.abs() <= tol::STRICT_POS_REL * max_mod && z.re > tol::STRICT_POS_REL * max_mod
            });
            (strictly, Some(LatticeVector::new(aligned)))
        } else {
            (false, None)
        };
        subchecks.push(SubCheck {
            id: "c",
            ok: dim_ok && pos_ok,
            evidence: format!(
                "dim ker(1-T) = {}, spanning vector strictly positive = {pos_ok}",
                basis.len()
            ),
        });
        v
    };

    // (d): torsion similarity T ~ lambda T for each peripheral eigenvalue
    {
        let mut ok = true;
        let mut details = Vec::new();
        for rec in spec.peripheral_records() {
            match unit_eigenvector(t, rec.value) {
                Some(z) => match torsion_similarity(t, rec.value, &z) {
                    Ok(ts) => {
                        if ts.relative_defect > tol::TORSION_DEFECT_REL || !ts.torsion_modulus_ok {
                            ok = false;
                        }
                        details.push(format!(
                            "lambda = {}: defect {}",
                            rec.value, ts.relative_defect
                        ));
                    }
                    Err(e) => {
                        ok = false;
                        details.push(format!("lambda = {}: {e}", rec.value));
                    }
                },
                None => {
                    ok = false;
                    details.push(format!("lambda = {}: no eigenvector", rec.value));
                }
            }
        }
        subchecks.push(SubCheck {
            id: "d",
            ok,
            evidence: details.join("; "),
        });
    }

    // (e): peripheral point spectrum is exactly the group of p-th roots of
    // unity scaled by r(T)
    {
        let r = spec.spectral_radius;
        let count_ok = spec.peripheral.len() == period;
        let mut group_ok = true;
        for k in 0..period {
            let target =
                Complex64::from_polar(r, std::f64::consts::TAU * k as f64 / period as f64);
            if !spec
                .peripheral
                .iter()
                .any(|&z| (z - target).norm() <= 1e-8 * r.max(1.0))
            {
                group_ok = false;
            }
        }
        subchecks.push(SubCheck {
            id: "e",
            ok: count_ok && group_ok,
            evidence: format!(
                "|sigma_per| = {} vs period {period}; full root group present = {group_ok}",
                spec.peripheral.len()
            ),
        });
    }

    // (f): every peripheral eigenvalue is algebraically simple
    {
        let mut ok = true;
        for rec in spec.peripheral_records() {
            if rec.alg_mult != 1 || rec.index != 1 {
                ok = false;
            }
        }
        subchecks.push(SubCheck {
            id: "f",
            ok,
            evidence: "alg_mult = index = 1 at every peripheral eigenvalue".into(),
        });
    }

    // (g): the only eigenvalue with an entrywise-nonnegative eigenvector
    // is 1
    {
        let mut ok = true;
        let mut found = Vec::new();
        for rec in &spec.records {
            if let Some(_x) = nonneg_eigenvector(t, rec.value) {
                found.push(format!("{}", rec.value));
                if (rec.value - Complex64::new(1.0, 0.0)).norm()
                    > tol::POWER_CLOSURE_TOL * spec.spectral_radius.max(1.0)
                {
                    ok = false;
                }
            }
        }
        subchecks.push(SubCheck {
            id: "g",
            ok,
            evidence: format!("eigenvalues with nonnegative eigenvectors: [{}]", found.join(", ")),
        });
    }

    let _ = perron;
    for s in &subchecks {
        b.witness(format!("({}) {} - {}", s.id, if s.ok { "holds" } else { "fails" }, s.evidence));
    }
    let all_ok = subchecks.iter().all(|s| s.ok);
    Ok(Thm58Verdict {
        verdict: b.conclude(all_ok),
        subchecks,
    })
}

/// Restriction/quotient spectral containments for an invariant ideal, plus
/// the resolvent-restriction commutation at one off-spectrum sample.
pub fn verify_appendix_a1(
    t: &PositiveOperator,
    f: &CoordinateIdeal,
) -> Result<TheoremVerdict, PerronError> {
    let mut b = VerdictBuilder::new("appA1", GridParams::default());
    b.tol("induced_spectrum", tol::INDUCED_SPECTRUM_TOL);
    b.tol("induced_resolvent", tol::INDUCED_RESOLVENT_TOL);
    let induced = match crate::lattice::induce(t, f) {
        Ok(pair) => {
            b.hyp("F is T-invariant", HypStatus::Holds, "exact column check");
            pair
        }
        Err(e) => {
            b.hyp("F is T-invariant", HypStatus::Fails, e.to_string());
            return Ok(b.conclude(false));
        }
    };
    let spec = spectral::spectrum(t)?;
    let p = t.norm_choice();
    let tnorm = t.norm();
    let mut ok = true;

    let rest_norm = induced.restriction.norm();
    let quot_norm = induced.quotient.norm();
    if rest_norm > tnorm * (1.0 + 1e-12) || quot_norm > tnorm * (1.0 + 1e-12) {
        ok = false;
    }
    b.witness(format!(
        "norms: ||T|| = {tnorm}, ||T_restriction|| = {rest_norm}, ||T_quotient|| = {quot_norm}"
    ));

    let spec_rest = spectral::spectrum(&induced.restriction)?;
    let spec_quot = spectral::spectrum(&induced.quotient)?;
    for (name, sub) in [("restriction", &spec_rest), ("quotient", &spec_quot)] {
        if sub.spectral_radius > spec.spectral_radius + tol::INDUCED_SPECTRUM_TOL {
            ok = false;
            b.witness(format!(
                "r(T_{name}) = {} exceeds r(T) = {}",
                sub.spectral_radius, spec.spectral_radius
            ));
        }
        for rec in &sub.records {
            if rec.value.norm() >= spec.spectral_radius * (1.0 - tol::EPS_PER) {
                // peripheral-modulus value of the induced operator must be a
                // spectral value of T
                if !spec.contains_value(rec.value, tol::INDUCED_SPECTRUM_TOL) {
                    ok = false;
                    b.witness(format!(
                        "peripheral value {} of T_{name} missing from sigma(T)",
                        rec.value
                    ));
                }
            }
        }
    }

    // resolvent commutation at one off-spectrum sample
    let mu = Complex64::new(1.0 + 2.0 * spec.spectral_radius.max(1.0), 0.0);
    let full = spectral::resolvent(t, mu, &spec)?;
    let mut worst = 0.0f64;
    if induced.restriction.dim() > 0 {
        let sub = spectral::resolvent(&induced.restriction, mu, &spec_rest)?;
        let idx = &induced.ideal_indices;
        let m = idx.len();
        let projected = CMatrix::from_fn(m, m, |i, j| full.matrix.get(idx[i], idx[j]));
        worst = worst.max(p.operator_norm(&projected.sub(&sub.matrix)));
    }
    if induced.quotient.dim() > 0 {
        let sub = spectral::resolvent(&induced.quotient, mu, &spec_quot)?;
        let idx = &induced.complement_indices;
        let m = idx.len();
        let projected = CMatrix::from_fn(m, m, |i, j| full.matrix.get(idx[i], idx[j]));
        worst = worst.max(p.operator_norm(&projected.sub(&sub.matrix)));
    }
    if worst > tol::INDUCED_RESOLVENT_TOL {
        ok = false;
    }
    b.witness(format!(
        "resolvent commutation residual at mu = {mu}: {worst}"
    ));
    Ok(b.conclude(ok))
}

/// Cyclicity of the peripheral spectrum of a (WS)-bounded positive
/// operator.
pub fn verify_cor_5_6(
    t: &PositiveOperator,
    scheme: &WeightingScheme,
    j_prefix: usize,
    grid: &GridParams,
) -> Result<TheoremVerdict, PerronError> {
    let mut b = VerdictBuilder::new("cor5.6", *grid);
    let spec = spectral::spectrum(t)?;
    b.hyp_bool(
        "T positive",
        t.nonneg_certified(),
        "entrywise nonnegativity certified",
    );
    hyp_spectral_radius_one(&mut b, &spec);
    if !b.all_hold() {
        return Ok(b.conclude(false));
    }
    let ws = growth::ws_bound(t, scheme, j_prefix)?;
    let ws_status = match ws.verdict.as_ref().map(|v| v.status) {
        Some(BoundStatus::BoundedPlausible) => HypStatus::Holds,
        Some(BoundStatus::UnboundedDetected) => HypStatus::Fails,
        _ => HypStatus::OneSided,
    };
    b.hyp(
        "T is (WS)-bounded",
        ws_status,
        format!("scheme {}, sup {}", ws.scheme, ws.sup_estimate),
    );
    let cyc = spectral::is_cyclic_set(
        &spec.peripheral,
        spec.spectral_radius,
        tol::ANGULAR_TOL,
        Some(t.dim()),
    )?;
    b.witness(format!(
        "peripheral spectrum of {} values, cyclic = {}, cap_hit = {}",
        spec.peripheral.len(),
        cyc.cyclic,
        cyc.cap_hit
    ));
    for m in cyc.missing.iter().take(3) {
        b.witness(format!("missing power: base {}, k = {}", m.base, m.k));
    }
    Ok(b.conclude(cyc.cyclic))
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

    /// jordan m=2 direct-summed with a 2-cycle
    fn jordan2_plus_two_cycle() -> PositiveOperator {
        let m = CMatrix::direct_sum(&[
            CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap(),
            CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
        ]);
        PositiveOperator::new(m, NormChoice::Inf).unwrap()
    }

    fn grid() -> GridParams {
        GridParams::default()
    }

    #[test]
    fn thm_1_2_b_on_two_cycle() {
        let t = cycle(2);
        let z = LatticeVector::from_real(&[1.0, -1.0]);
        let v = verify_thm_1_2(&t, cr(-1.0), &z, Thm12Variant::B, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn thm_1_2_b_on_six_cycle() {
        let t = cycle(6);
        let lam = Complex64::from_polar(1.0, std::f64::consts::PI / 3.0);
        let z = unit_eigenvector(&t, lam).expect("eigenvector exists");
        let v = verify_thm_1_2(&t, lam, &z, Thm12Variant::B, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn thm_1_2_a_sandwich_on_diagonal() {
        let t = op(&[vec![1.0, 0.0], vec![0.0, 0.5]]);
        let z = LatticeVector::from_real(&[1.0, 0.0]);
        let v = verify_thm_1_2(&t, cr(1.0), &z, Thm12Variant::A, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn thm_1_2_gates_on_non_eigenvector() {
        let t = cycle(2);
        let z = LatticeVector::from_real(&[1.0, 0.0]); // not an eigenvector
        let v = verify_thm_1_2(&t, cr(-1.0), &z, Thm12Variant::B, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::NotApplicable);
    }

    #[test]
    fn prop_3_1_b_on_swap() {
        let t = cycle(2);
        let z = LatticeVector::from_real(&[1.0, -1.0]);
        let v = verify_prop_3_1(&t, cr(-1.0), &z, Prop31Mode::DominatingFixedVector, 100).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn prop_3_1_applies_without_unit_spectral_radius() {
        // block diag(2-cycle, [3]): r(T) = 3, the proposition still applies
        // to the unimodular eigenvalue -1
        let m = CMatrix::direct_sum(&[
            CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
            CMatrix::from_real_rows(&[vec![3.0]]).unwrap(),
        ]);
        let t = PositiveOperator::new(m, NormChoice::Inf).unwrap();
        let z = LatticeVector::from_real(&[1.0, -1.0, 0.0]);
        let v = verify_prop_3_1(&t, cr(-1.0), &z, Prop31Mode::DominatingFixedVector, 100).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
        // the conclusion found both 1 and -1 in sigma(T) = {1, -1, 3}
    }

    #[test]
    fn prop_3_1_orbit_mode_on_identity() {
        let t = op(&[vec![1.0, 0.0], vec![0.0, 1.0]]);
        let z = LatticeVector::from_real(&[1.0, 0.0]);
        let v = verify_prop_3_1(&t, cr(1.0), &z, Prop31Mode::PowerBoundedOrbit, 100).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds);
    }

    #[test]
    fn prop_3_1_gates_on_modulus() {
        let t = op(&[vec![1.0, 0.0], vec![0.0, 0.5]]);
        let z = LatticeVector::from_real(&[0.0, 1.0]);
        let v = verify_prop_3_1(&t, cr(0.5), &z, Prop31Mode::PowerBoundedOrbit, 100).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::NotApplicable);
    }

    #[test]
    fn dae_on_three_cycle() {
        let t = cycle(3);
        let lam = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let v = verify_dae(&t, lam, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn dae_infeasible_on_sign_diagonal() {
        // diag(1, -1): ker(1-T) = span e1 cannot dominate |e2|; the matrix
        // is also not positive, and both failures gate the conclusion
        let m = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let t = PositiveOperator::new(m, NormChoice::Inf).unwrap();
        let v = verify_dae(&t, cr(-1.0), &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::NotApplicable);
        let dae_hyp = v
            .hypotheses
            .iter()
            .find(|h| h.name.contains("dominated eigenvector"))
            .unwrap();
        assert_eq!(dae_hyp.status, HypStatus::Fails, "evidence: {}", dae_hyp.evidence);
    }

    #[test]
    fn dae_on_scalar() {
        let t = op(&[vec![1.0]]);
        let v = verify_dae(&t, cr(1.0), &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds);
    }

    #[test]
    fn thm_4_1_on_two_cycle() {
        let v = verify_thm_4_1(&cycle(2), cr(-1.0), &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn thm_4_1_on_jordan_plus_negative_block() {
        // diag(J_2(1), [-1]) at lambda = -1: simple pole on the lambda ray,
        // order-2 pole at 1; (-1)^k stays peripheral
        let m = CMatrix::direct_sum(&[
            CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap(),
            CMatrix::from_real_rows(&[vec![-1.0]]).unwrap(),
        ]);
        let t = PositiveOperator::new(m, NormChoice::Inf).unwrap();
        assert!(!t.nonneg_certified());
        let v = verify_thm_4_1(&t, cr(-1.0), &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn thm_4_1_hypothesis_gating_on_jordan() {
        let v = verify_thm_4_1(&jordan2(), cr(1.0), &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::NotApplicable);
        let h = v
            .hypotheses
            .iter()
            .find(|h| h.name.contains("~ 1/(r_n - 1)"))
            .unwrap();
        assert_eq!(h.status, HypStatus::Fails);
    }

    #[test]
    fn cor_4_2_on_jordan_plus_negative_block() {
        let m = CMatrix::direct_sum(&[
            CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap(),
            CMatrix::from_real_rows(&[vec![-1.0]]).unwrap(),
        ]);
        let t = PositiveOperator::new(m, NormChoice::Inf).unwrap();
        let v = verify_cor_4_2(&t, cr(-1.0), &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
        assert!(v.witnesses.iter().any(|w| w.contains("pole order at lambda = 1")));
    }

    #[test]
    fn cor_4_2_on_four_cycle() {
        let v = verify_cor_4_2(&cycle(4), Complex64::new(0.0, 1.0), &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn cor_4_2_gates_on_cubic_growth() {
        let t = op(&[
            vec![1.0, 1.0, 0.0],
            vec![0.0, 1.0, 1.0],
            vec![0.0, 0.0, 1.0],
        ]);
        let v = verify_cor_4_2(&t, cr(1.0), &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::NotApplicable);
    }

    #[test]
    fn kr_2_1_a_on_three_cycle() {
        let v = verify_kr_2_1(&cycle(3), cr(1.0), KrVariant::A, None, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn kr_2_1_b_on_jordan_at_one() {
        let v = verify_kr_2_1(&jordan2(), cr(1.0), KrVariant::B, None, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn kr_2_1_c_with_supplied_functional() {
        // 2-cycle (+) J_2(1), lambda = -1, x' = (1,1,0,0)/2
        let m = CMatrix::direct_sum(&[
            CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
            CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap(),
        ]);
        let t = PositiveOperator::new(m, NormChoice::Inf).unwrap();
        let xp = [0.5, 0.5, 0.0, 0.0];
        let v = verify_kr_2_1(&t, cr(-1.0), KrVariant::C, Some(&xp), &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn kr_2_1_c_searches_functional() {
        let v = verify_kr_2_1(&cycle(2), cr(-1.0), KrVariant::C, None, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn kr_2_1_b_gates_when_growth_differs() {
        // on jordan (+) 2-cycle the -1 ray grows linearly but the real ray
        // quadratically: "fastest possible" fails
        let v =
            verify_kr_2_1(&jordan2_plus_two_cycle(), cr(-1.0), KrVariant::B, None, &grid())
                .unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::NotApplicable);
    }

    #[test]
    fn torsion_on_swap() {
        let t = cycle(2);
        let z = LatticeVector::from_real(&[1.0, -1.0]);
        let ts = torsion_similarity(&t, cr(-1.0), &z).unwrap();
        assert_eq!(ts.defect, 0.0);
        assert!(ts.torsion_modulus_ok);
        assert!((ts.diagonal[0] - cr(1.0)).norm() < 1e-15);
        assert!((ts.diagonal[1] - cr(-1.0)).norm() < 1e-15);
    }

    #[test]
    fn torsion_on_three_cycle() {
        let t = cycle(3);
        let lam = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let z = unit_eigenvector(&t, lam).unwrap();
        let ts = torsion_similarity(&t, lam, &z).unwrap();
        assert!(ts.defect <= 1e-12, "defect {}", ts.defect);
    }

    #[test]
    fn torsion_identity_at_perron_root() {
        let t = cycle(2);
        let z = LatticeVector::from_real(&[1.0, 1.0]);
        let ts = torsion_similarity(&t, cr(1.0), &z).unwrap();
        assert_eq!(ts.defect, 0.0);
    }

    #[test]
    fn torsion_rejects_vanishing_entries() {
        // (1, -1, 0) has a zero entry; the torsion construction must reject
        let m = CMatrix::direct_sum(&[
            CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap(),
            CMatrix::from_real_rows(&[vec![1.0]]).unwrap(),
        ]);
        // make it irreducible by weak coupling, keeping (1,-1,~0) close to
        // an eigenvector is not possible; instead check the rejection path
        // directly on a reducible-free instance with a forced zero entry
        let t = PositiveOperator::new(m, NormChoice::Inf).unwrap();
        let z = LatticeVector::from_real(&[1.0, -1.0, 0.0]);
        match torsion_similarity(&t, cr(-1.0), &z) {
            Err(PerronError::Invalid { .. }) | Err(PerronError::TorsionEntryTooSmall { .. }) => {}
            other => panic!("expected rejection, got {other:?}"),
        }
    }

    #[test]
    fn thm_5_8_on_cycles() {
        for p in [2usize, 3, 4] {
            let t = cycle(p);
            let res = verify_thm_5_8(&t, &WeightingScheme::cesaro(48), 49, &grid()).unwrap();
            assert_eq!(
                res.verdict.conclusion,
                ConclusionStatus::Holds,
                "p = {p}: {:?}",
                res.verdict
            );
            for s in &res.subchecks {
                assert!(s.ok, "p = {p}, subcheck ({}) failed: {}", s.id, s.evidence);
            }
        }
    }

    #[test]
    fn thm_5_8_gates_on_reducible() {
        let res = verify_thm_5_8(&jordan2(), &WeightingScheme::cesaro(48), 49, &grid()).unwrap();
        assert_eq!(res.verdict.conclusion, ConclusionStatus::NotApplicable);
    }

    #[test]
    fn appendix_a1_on_block_triangular() {
        let t = op(&[vec![1.0, 1.0], vec![0.0, 0.5]]);
        let f = CoordinateIdeal::from_indices(&[0], 2).unwrap();
        let v = verify_appendix_a1(&t, &f).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");
    }

    #[test]
    fn appendix_a1_full_space_trivial() {
        let t = cycle(3);
        let f = CoordinateIdeal::full(3);
        let v = verify_appendix_a1(&t, &f).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds);
    }

    #[test]
    fn appendix_a1_gates_on_non_invariant_ideal() {
        let t = cycle(2);
        let f = CoordinateIdeal::from_indices(&[0], 2).unwrap();
        let v = verify_appendix_a1(&t, &f).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::NotApplicable);
    }

    #[test]
    fn cor_5_6_on_stochastic_and_unions() {
        let t = op(&[vec![0.5, 0.5], vec![0.25, 0.75]]);
        let v = verify_cor_5_6(&t, &WeightingScheme::cesaro(48), 49, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");

        // 2-cycle (+) 3-cycle: peripheral = 2nd and 3rd roots of unity
        let m = CMatrix::direct_sum(&[
            cycle(2).matrix().clone(),
            cycle(3).matrix().clone(),
        ]);
        let t = PositiveOperator::new(m, NormChoice::Inf).unwrap();
        let v = verify_cor_5_6(&t, &WeightingScheme::cesaro(48), 49, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds, "verdict: {v:?}");

        let v = verify_cor_5_6(&op(&[vec![1.0]]), &WeightingScheme::cesaro(48), 49, &grid())
            .unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::Holds);
    }

    #[test]
    fn cor_5_6_gates_on_unbounded_scheme_family() {
        let v = verify_cor_5_6(&jordan2(), &WeightingScheme::cesaro(64), 65, &grid()).unwrap();
        assert_eq!(v.conclusion, ConclusionStatus::NotApplicable);
    }

    #[test]
    fn verdicts_are_deterministic() {
        let t = cycle(3);
        let a = verify_kr_2_1(&t, cr(1.0), KrVariant::A, None, &grid()).unwrap();
        let b = verify_kr_2_1(&t, cr(1.0), KrVariant::A, None, &grid()).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
    }
}
