//! Eigenstructure of dense complex matrices: spectrum with multiplicities,
//! eigenvalue index (pole order of the resolvent), peripheral spectrum,
//! cyclicity testing, residual-verified resolvent solves, induced norms.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::PerronError;
use crate::lattice::{LatticeVector, NormChoice, PositiveOperator};
use crate::matrix::CMatrix;
use crate::serde_util::{complex_pair, complex_vec};
use crate::tol;

/// One clustered spectral value with its multiplicities and index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EigenRecord {
    #[serde(with = "complex_pair")]
    pub value: Complex64,
    pub alg_mult: usize,
    pub geom_mult: usize,
    /// Pole order of the resolvent at `value`: smallest k with
    /// rank((value - T)^k) = rank((value - T)^{k+1}).
    pub index: usize,
    pub is_peripheral: bool,
}

/// Clustered spectrum of an operator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpectrumReport {
    /// Records sorted by modulus (descending), then argument.
    pub records: Vec<EigenRecord>,
    pub spectral_radius: f64,
    #[serde(with = "complex_vec")]
    pub peripheral: Vec<Complex64>,
    pub cluster_tol: f64,
    pub peripheral_eps: f64,
}

impl SpectrumReport {
    pub fn dim(&self) -> usize {
        self.records.iter().map(|r| r.alg_mult).sum()
    }

    pub fn peripheral_records(&self) -> impl Iterator<Item = &EigenRecord> {
        self.records.iter().filter(|r| r.is_peripheral)
    }

    /// Distance from `mu` to the nearest spectral value, with that value.
    pub fn nearest(&self, mu: Complex64) -> Option<(Complex64, f64)> {
        self.records
            .iter()
            .map(|r| (r.value, (r.value - mu).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
    }

    /// Is `z` within `tol` of some spectral value?
    pub fn contains_value(&self, z: Complex64, tol: f64) -> bool {
        self.records.iter().any(|r| (r.value - z).norm() <= tol)
    }

    /// Record whose value is nearest to `z`, if within `tol`.
    pub fn record_near(&self, z: Complex64, tol: f64) -> Option<&EigenRecord> {
        self.records
            .iter()
            .map(|r| (r, (r.value - z).norm()))
            .filter(|(_, d)| *d <= tol)
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .map(|(r, _)| r)
    }
}

/// Full spectral analysis: eigenvalues clustered at relative tolerance
/// `CLUSTER_REL * max(1, ||T||)`, geometric multiplicities and indices from
/// singular-value rank decisions with `RANK_REL`-scaled cutoffs.
pub fn spectrum(t: &PositiveOperator) -> Result<SpectrumReport, PerronError> {
    spectrum_of_matrix(t.matrix(), t.norm_choice())
}

pub fn spectrum_of_matrix(
    m: &CMatrix,
    norm_choice: NormChoice,
) -> Result<SpectrumReport, PerronError> {
    let n = m.nrows();
    let tnorm = norm_choice.operator_norm(m);
    let cluster_tol = tol::CLUSTER_REL * tnorm.max(1.0);
    if n == 0 {
        return Ok(SpectrumReport {
            records: Vec::new(),
            spectral_radius: 0.0,
            peripheral: Vec::new(),
            cluster_tol,
            peripheral_eps: tol::EPS_PER,
        });
    }
    let raw = m.eigenvalues()?;

    // single-linkage clustering at cluster_tol
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let root = find(parent, parent[i]);
            parent[i] = root;
        }
        parent[i]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if (raw[i] - raw[j]).norm() <= cluster_tol {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                if a != b {
                    parent[a] = b;
                }
            }
        }
    }
    let mut clusters: std::collections::BTreeMap<usize, Vec<Complex64>> = Default::default();
    for i in 0..n {
        let root = find(&mut parent, i);
        clusters.entry(root).or_default().push(raw[i]);
    }

    let mut records = Vec::new();
    for members in clusters.values() {
        let alg_mult = members.len();
        let value = members.iter().sum::<Complex64>() / alg_mult as f64;
        let shifted = m.shifted_from(value);
        let base = shifted.norm_two().max(1.0);
        let rank1 = shifted.rank_with_cutoff(tol::RANK_REL * base);
        let geom_mult = (n - rank1).clamp(1, alg_mult);
        // rank stabilization of (value - T)^k, cutoff scaled by base^k so
        // growth of the powered matrix cannot fake a rank collapse
        let mut index = alg_mult.saturating_sub(geom_mult) + 1;
        let mut prev_rank = rank1;
        let mut power = shifted.clone();
        for k in 1..=alg_mult {
            power = power.mul(&shifted); // power = (value - T)^{k+1}
            let next_rank = power.rank_with_cutoff(tol::RANK_REL * base.powi((k + 1) as i32));
            if next_rank == prev_rank {
                index = k;
                break;
            }
            prev_rank = next_rank;
        }
        let index = index.clamp(1, alg_mult.saturating_sub(geom_mult) + 1);
        records.push(EigenRecord {
            value,
            alg_mult,
            geom_mult,
            index,
            is_peripheral: false,
        });
    }

    let spectral_radius = records
        .iter()
        .map(|r| r.value.norm())
        .fold(0.0f64, f64::max);
    for r in records.iter_mut() {
        r.is_peripheral = r.value.norm() >= spectral_radius * (1.0 - tol::EPS_PER);
    }
    records.sort_by(|a, b| {
        b.value
            .norm()
            .total_cmp(&a.value.norm())
            .then(a.value.arg().total_cmp(&b.value.arg()))
    });
    let peripheral = records
        .iter()
        .filter(|r| r.is_peripheral)
        .map(|r| r.value)
        .collect();
    Ok(SpectrumReport {
        records,
        spectral_radius,
        peripheral,
        cluster_tol,
        peripheral_eps: tol::EPS_PER,
    })
}

/// Spectral values of maximal modulus, `|lambda| >= r(T)(1 - eps_per)`.
pub fn peripheral_spectrum(t: &PositiveOperator) -> Result<Vec<Complex64>, PerronError> {
    Ok(spectrum(t)?.peripheral)
}

/// Conjugate transpose; nonnegativity certification is preserved.
pub fn adjoint(t: &PositiveOperator) -> PositiveOperator {
    PositiveOperator::new(t.matrix().adjoint(), t.norm_choice())
        .expect("adjoint of a square matrix is square")
}

/// Induced operator norm: exact max column / row absolute sums for p in
/// {1, inf}, largest singular value for p = 2.
pub fn operator_norm(a: &CMatrix, p: NormChoice) -> f64 {
    p.operator_norm(a)
}

/// A target power of a cyclic-set base that found no match.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MissingPower {
    #[serde(with = "complex_pair")]
    pub base: Complex64,
    pub k: i64,
    #[serde(with = "complex_pair")]
    pub target: Complex64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclicityReport {
    pub cyclic: bool,
    pub missing: Vec<MissingPower>,
    /// Detected rational angle per element: theta ~ 2 pi p / q.
    pub rational_angles: Vec<Option<(i64, u64)>>,
    pub k_max_used: u64,
    pub cap_hit: bool,
    pub angular_tol: f64,
}

/// Tests whether `M` is cyclic at radius `r`: for each `r e^{i theta}` in
/// `M`, every integer power `r e^{i k theta}` must again lie in `M` (within
/// `angular_tol`). Elements whose angle matches a rational `2 pi p / q`
/// (minimal denominator `q <= dim_hint`) are checked exactly over one
/// period; the remaining elements are scanned up to a capped `k` range.
pub fn is_cyclic_set(
    m: &[Complex64],
    r: f64,
    angular_tol: f64,
    dim_hint: Option<usize>,
) -> Result<CyclicityReport, PerronError> {
    let q_max = dim_hint.unwrap_or(m.len()).max(1) as u64;
    let mod_tol = tol::CYCLIC_MODULUS_REL * r.max(1.0);
    if r <= mod_tol {
        // the set is concentrated at the origin; all powers stay there
        return Ok(CyclicityReport {
            cyclic: true,
            missing: Vec::new(),
            rational_angles: vec![None; m.len()],
            k_max_used: 0,
            cap_hit: false,
            angular_tol,
        });
    }
    for &z in m {
        if (z.norm() - r).abs() > mod_tol {
            return Err(PerronError::ModulusMismatch {
                value: z,
                modulus: z.norm(),
                radius: r,
            });
        }
    }

    let two_pi = std::f64::consts::TAU;
    let angles: Vec<f64> = m.iter().map(|z| z.arg().rem_euclid(two_pi)).collect();
    let angle_matches = |target: f64| -> bool {
        angles.iter().any(|&a| {
            let d = (a - target).rem_euclid(two_pi);
            d.min(two_pi - d) <= angular_tol
        })
    };

    // minimal-denominator rational approximation of theta / 2pi
    let rational_angles: Vec<Option<(i64, u64)>> = angles
        .iter()
        .map(|&theta| {
            let x = theta / two_pi;
            for q in 1..=q_max {
                let p = (x * q as f64).round();
                if (theta - two_pi * p / q as f64).abs() <= angular_tol {
                    return Some((p as i64, q));
                }
            }
            None
        })
        .collect();

    let cap = 2 * q_max * q_max;
    let mut k_lcm: u64 = 1;
    let mut cap_hit = false;
    for q in rational_angles.iter().flatten().map(|&(_, q)| q) {
        let g = crate::graph::gcd(k_lcm as i64, q as i64) as u64;
        let l = k_lcm / g * q;
        if l > cap {
            cap_hit = true;
            k_lcm = cap;
        } else {
            k_lcm = l;
        }
    }
    if rational_angles.iter().any(|ra| ra.is_none()) {
        cap_hit = true;
    }
    let k_max_used = k_lcm.min(cap);

    let mut missing = Vec::new();
    for (i, &z) in m.iter().enumerate() {
        match rational_angles[i] {
            Some((p, q)) => {
                // exact check over one period
                for k in 0..q as i64 {
                    let rem = (p * k).rem_euclid(q as i64);
                    let target_angle = two_pi * rem as f64 / q as f64;
                    if !angle_matches(target_angle) {
                        missing.push(MissingPower {
                            base: z,
                            k,
                            target: Complex64::from_polar(r, target_angle),
                        });
                    }
                }
            }
            None => {
                let theta = angles[i];
                for k in -(k_max_used as i64)..=(k_max_used as i64) {
                    let target_angle = (k as f64 * theta).rem_euclid(two_pi);
                    if !angle_matches(target_angle) {
                        missing.push(MissingPower {
                            base: z,
                            k,
                            target: Complex64::from_polar(r, target_angle),
                        });
                    }
                }
            }
        }
    }
    // deterministic order, first missing power first
    missing.sort_by(|a, b| a.k.abs().cmp(&b.k.abs()).then(a.k.cmp(&b.k)));
    Ok(CyclicityReport {
        cyclic: missing.is_empty(),
        missing,
        rational_angles,
        k_max_used,
        cap_hit,
        angular_tol,
    })
}

/// Residual-verified resolvent solve `(mu I - T) X = I`.
#[derive(Clone, Debug)]
pub struct ResolventSolve {
    pub matrix: CMatrix,
    /// `||(mu I - T) X - I||` in the declared norm.
    pub residual: f64,
    /// `residual / (||X|| * ||mu I - T||)`.
    pub rel_residual: f64,
    pub norm: f64,
    pub refinements: usize,
    pub converged: bool,
    pub stagnated: bool,
}

/// Solves for the full resolvent with iterative refinement. Points within
/// the clustering tolerance of the spectrum are rejected; refinement
/// stagnation is reported on the result, never hidden.
pub fn resolvent(
    t: &PositiveOperator,
    mu: Complex64,
    spec: &SpectrumReport,
) -> Result<ResolventSolve, PerronError> {
    reject_on_spectrum(mu, spec)?;
    let n = t.dim();
    let a = t.matrix().shifted_from(mu);
    let p = t.norm_choice();
    let a_norm = p.operator_norm(&a);
    let identity = CMatrix::identity(n);
    let mut x = a.solve(&identity);
    let mut refinements = 0;
    let mut stagnated = false;
    let mut residual_mat = identity.sub(&a.mul(&x));
    let mut res_norm = p.operator_norm(&residual_mat);
    loop {
        let x_norm = p.operator_norm(&x);
        let target = tol::RESOLVENT_REL_RESID * x_norm * a_norm;
        if res_norm <= target || refinements >= tol::MAX_REFINE {
            break;
        }
        let correction = a.solve(&residual_mat);
        let x_next = x.add(&correction);
        let residual_next = identity.sub(&a.mul(&x_next));
        let res_next = p.operator_norm(&residual_next);
        refinements += 1;
        if res_next >= 0.5 * res_norm {
            stagnated = res_next > tol::RESOLVENT_REL_RESID * p.operator_norm(&x_next) * a_norm;
            if res_next < res_norm {
                x = x_next;
                res_norm = res_next;
            }
            break;
        }
        x = x_next;
        residual_mat = residual_next;
        res_norm = res_next;
    }
    let norm = p.operator_norm(&x);
    let rel = if norm * a_norm > 0.0 {
        res_norm / (norm * a_norm)
    } else {
        0.0
    };
    Ok(ResolventSolve {
        matrix: x,
        residual: res_norm,
        rel_residual: rel,
        norm,
        refinements,
        converged: rel <= tol::RESOLVENT_REL_RESID,
        stagnated,
    })
}

/// Residual-verified directed solve `(mu I - T) w = v`.
#[derive(Clone, Debug)]
pub struct DirectedSolve {
    pub vector: Vec<Complex64>,
    pub residual: f64,
    pub rel_residual: f64,
    pub norm: f64,
    pub converged: bool,
}

pub fn resolvent_apply(
    t: &PositiveOperator,
    mu: Complex64,
    v: &LatticeVector,
    spec: &SpectrumReport,
) -> Result<DirectedSolve, PerronError> {
    reject_on_spectrum(mu, spec)?;
    if v.dim() != t.dim() {
        return Err(PerronError::DimensionMismatch {
            expected: t.dim(),
            got: v.dim(),
        });
    }
    let a = t.matrix().shifted_from(mu);
    let p = t.norm_choice();
    let a_norm = p.operator_norm(&a);
    let rhs = CMatrix::from_fn(t.dim(), 1, |i, _| v.entries()[i]);
    let mut x = a.solve(&rhs);
    let mut res = rhs.sub(&a.mul(&x));
    let mut res_norm = column_norm(&res, p);
    for _ in 0..tol::MAX_REFINE {
        let x_norm = column_norm(&x, p);
        if res_norm <= tol::RESOLVENT_REL_RESID * x_norm * a_norm {
            break;
        }
        let correction = a.solve(&res);
        let x_next = x.add(&correction);
        let res_next = rhs.sub(&a.mul(&x_next));
        let rn = column_norm(&res_next, p);
        if rn >= res_norm {
            break;
        }
        x = x_next;
        res = res_next;
        res_norm = rn;
    }
    let norm = column_norm(&x, p);
    let rel = if norm * a_norm > 0.0 {
        res_norm / (norm * a_norm)
    } else {
        0.0
    };
    Ok(DirectedSolve {
        vector: (0..t.dim()).map(|i| x.get(i, 0)).collect(),
        residual: res_norm,
        rel_residual: rel,
        norm,
        converged: rel <= tol::RESOLVENT_REL_RESID,
    })
}

fn column_norm(col: &CMatrix, p: NormChoice) -> f64 {
    let v: Vec<Complex64> = (0..col.nrows()).map(|i| col.get(i, 0)).collect();
    p.vector_norm(&v)
}

fn reject_on_spectrum(mu: Complex64, spec: &SpectrumReport) -> Result<(), PerronError> {
    if let Some((nearest, distance)) = spec.nearest(mu) {
        if distance <= spec.cluster_tol {
            return Err(PerronError::OnSpectrum {
                mu,
                nearest,
                distance,
                tol: spec.cluster_tol,
            });
        }
    }
    Ok(())
}

/// Orthonormal basis of `ker(lambda - T)` from singular vectors of
/// `lambda I - T` below the rank cutoff.
pub fn eigenspace(t: &PositiveOperator, lambda: Complex64) -> Vec<LatticeVector> {
    let shifted = t.matrix().shifted_from(lambda);
    let base = shifted.norm_two().max(1.0);
    shifted
        .nullspace_basis(tol::RANK_REL * base)
        .into_iter()
        .map(LatticeVector::new)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
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

    #[test]
    fn spectrum_of_identity() {
        let s = spectrum(&op(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, 1.0, 0.0],
            vec![0.0, 0.0, 1.0],
        ]))
        .unwrap();
        assert_eq!(s.records.len(), 1);
        let r = &s.records[0];
        assert!((r.value - cr(1.0)).norm() < 1e-12);
        assert_eq!((r.alg_mult, r.geom_mult, r.index), (3, 3, 1));
        assert!(r.is_peripheral);
    }

    #[test]
    fn spectrum_of_three_cycle() {
        // oracle: roots of lambda^3 = 1
        let s = spectrum(&cycle(3)).unwrap();
        assert_eq!(s.records.len(), 3);
        assert_eq!(s.peripheral.len(), 3);
        for r in &s.records {
            assert_eq!((r.alg_mult, r.geom_mult, r.index), (1, 1, 1));
            assert!(r.is_peripheral);
            assert!((r.value.norm() - 1.0).abs() < 1e-10);
            let cubed = r.value * r.value * r.value;
            assert!((cubed - cr(1.0)).norm() < 1e-9);
        }
        assert!((s.spectral_radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn spectrum_of_jordan_block() {
        // rank(I - T) = 1, rank((I - T)^2) = 0 by hand
        let s = spectrum(&op(&[vec![1.0, 1.0], vec![0.0, 1.0]])).unwrap();
        assert_eq!(s.records.len(), 1);
        let r = &s.records[0];
        assert_eq!((r.alg_mult, r.geom_mult, r.index), (2, 1, 2));
    }

    #[test]
    fn multiplicities_sum_to_dim() {
        let s = spectrum(&op(&[
            vec![0.3, 0.7, 0.0],
            vec![0.2, 0.1, 0.7],
            vec![0.5, 0.5, 0.0],
        ]))
        .unwrap();
        assert_eq!(s.dim(), 3);
    }

    #[test]
    fn peripheral_examples() {
        let p = peripheral_spectrum(&op(&[vec![1.0, 0.0], vec![0.0, 0.5]])).unwrap();
        assert_eq!(p.len(), 1);
        assert!((p[0] - cr(1.0)).norm() < 1e-12);

        let p = peripheral_spectrum(&cycle(4)).unwrap();
        assert_eq!(p.len(), 4);

        // diag(1, -1, 1/3): peripheral {1, -1}; the -1 entry needs the
        // general constructor
        let m = CMatrix::from_real_rows(&[
            vec![1.0, 0.0, 0.0],
            vec![0.0, -1.0, 0.0],
            vec![0.0, 0.0, 1.0 / 3.0],
        ])
        .unwrap();
        let t = PositiveOperator::new(m, NormChoice::Inf).unwrap();
        assert!(!t.nonneg_certified());
        let p = peripheral_spectrum(&t).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn adjoint_examples() {
        let t = op(&[vec![0.0, 1.0], vec![2.0, 0.0]]);
        let a = adjoint(&t);
        assert!(a.nonneg_certified());
        assert_eq!(a.matrix().get(0, 1), cr(2.0));
        let i_mat = PositiveOperator::new(
            CMatrix::from_rows(&[vec![Complex64::new(0.0, 1.0)]]).unwrap(),
            NormChoice::Inf,
        )
        .unwrap();
        let a = adjoint(&i_mat);
        assert_eq!(a.matrix().get(0, 0), Complex64::new(0.0, -1.0));
        // involution
        let aa = adjoint(&adjoint(&t));
        assert_eq!(aa.matrix(), t.matrix());
    }

    #[test]
    fn cyclicity_examples() {
        let r = is_cyclic_set(&[cr(1.0), cr(-1.0)], 1.0, 1e-6, Some(2)).unwrap();
        assert!(r.cyclic);

        let r = is_cyclic_set(&[cr(1.0), Complex64::new(0.0, 1.0)], 1.0, 1e-6, Some(4)).unwrap();
        assert!(!r.cyclic);
        // first missing power is -1 at k = 2
        let miss = &r.missing[0];
        assert_eq!(miss.k, 2);
        assert!((miss.target - cr(-1.0)).norm() < 1e-9);

        let w = Complex64::from_polar(1.0, std::f64::consts::TAU / 3.0);
        let r = is_cyclic_set(&[cr(1.0), w, w * w], 1.0, 1e-6, Some(3)).unwrap();
        assert!(r.cyclic);
    }

    #[test]
    fn cyclicity_modulus_mismatch() {
        assert!(matches!(
            is_cyclic_set(&[cr(1.0), cr(0.5)], 1.0, 1e-6, None),
            Err(PerronError::ModulusMismatch { .. })
        ));
    }

    #[test]
    fn resolvent_examples() {
        // scalar zero operator at mu = 2
        let t = op(&[vec![0.0]]);
        let s = spectrum(&t).unwrap();
        let r = resolvent(&t, cr(2.0), &s).unwrap();
        assert!((r.matrix.get(0, 0) - cr(0.5)).norm() < 1e-15);
        assert!(r.converged);

        // triangular closed form
        let t = op(&[vec![1.0, 1.0], vec![0.0, 1.0]]);
        let s = spectrum(&t).unwrap();
        let mu = cr(1.5);
        let r = resolvent(&t, mu, &s).unwrap();
        let a = 1.0 / 0.5;
        assert!((r.matrix.get(0, 0) - cr(a)).norm() < 1e-12);
        assert!((r.matrix.get(0, 1) - cr(a * a)).norm() < 1e-12);
        assert!((r.matrix.get(1, 0)).norm() < 1e-12);
        assert!((r.matrix.get(1, 1) - cr(a)).norm() < 1e-12);

        // 3-cycle at mu = 2: X = (4I + 2P + P^2) / 7 by the Neumann sum
        let t = cycle(3);
        let s = spectrum(&t).unwrap();
        let r = resolvent(&t, cr(2.0), &s).unwrap();
        let p1 = t.matrix();
        let p2 = p1.mul(p1);
        let expected = CMatrix::identity(3)
            .scale(cr(4.0))
            .add(&p1.scale(cr(2.0)))
            .add(&p2)
            .scale(cr(1.0 / 7.0));
        let diff = r.matrix.sub(&expected);
        assert!(diff.norm_inf() < 1e-12);

        // on-spectrum rejection
        assert!(matches!(
            resolvent(&t, cr(1.0), &s),
            Err(PerronError::OnSpectrum { .. })
        ));
    }

    #[test]
    fn resolvent_identity_property() {
        let t = op(&[vec![0.1, 0.8], vec![0.3, 0.2]]);
        let s = spectrum(&t).unwrap();
        let mu = Complex64::new(1.7, 0.4);
        let nu = Complex64::new(2.3, -0.9);
        let rm = resolvent(&t, mu, &s).unwrap();
        let rn = resolvent(&t, nu, &s).unwrap();
        let lhs = rm.matrix.sub(&rn.matrix);
        let rhs = rm.matrix.mul(&rn.matrix).scale(nu - mu);
        let err = lhs.sub(&rhs).norm_inf();
        assert!(err <= 1e-9 * rm.norm * rn.norm);
    }

    #[test]
    fn operator_norm_examples() {
        let m = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(operator_norm(&m, NormChoice::Inf), 2.0);
        assert_eq!(operator_norm(&CMatrix::identity(4), NormChoice::One), 1.0);
        let m = CMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]).unwrap();
        assert!((operator_norm(&m, NormChoice::Two) - 2.0).abs() < 1e-14);
    }

    #[test]
    fn eigenspace_of_simple_value() {
        let t = cycle(2);
        let basis = eigenspace(&t, cr(-1.0));
        assert_eq!(basis.len(), 1);
        let v = &basis[0];
        // eigenvector proportional to (1, -1)
        let ratio = v.entries()[0] / v.entries()[1];
        assert!((ratio + cr(1.0)).norm() < 1e-10);
    }

    #[test]
    fn adjoint_spectrum_is_conjugate() {
        let t = op(&[
            vec![0.2, 0.8, 0.0],
            vec![0.0, 0.1, 0.9],
            vec![0.6, 0.4, 0.0],
        ]);
        let s = spectrum(&t).unwrap();
        let sa = spectrum(&adjoint(&t)).unwrap();
        let orig: Vec<Complex64> = s.records.iter().map(|r| r.value.conj()).collect();
        let mut adj: Vec<Complex64> = sa.records.iter().map(|r| r.value).collect();
        for a in &orig {
            let (pos, d) = adj
                .iter()
                .enumerate()
                .map(|(i, b)| (i, (a - b).norm()))
                .min_by(|x, y| x.1.total_cmp(&y.1))
                .unwrap();
            assert!(d < s.cluster_tol.max(1e-9));
            adj.remove(pos);
        }
    }
}
