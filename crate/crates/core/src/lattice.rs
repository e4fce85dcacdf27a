//! Finite-dimensional complex Banach lattice model.
//!
//! The lattice is `C^n` with the coordinatewise order on real parts; closed
//! ideals are exactly the coordinate subspaces, which keeps every ideal
//! computation exact. Entry nonnegativity is certified by exact comparison:
//! matrices with tiny negative entries are rejected, never clamped.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::PerronError;
use crate::graph;
use crate::matrix::CMatrix;
use crate::tol;

/// Supported lattice norms. The 1- and inf-induced operator norms are exact
/// (max column / row absolute sums), which removes one tolerance from every
/// verdict that compares operator norms; inf is the default.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum NormChoice {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
    #[default]
    #[serde(rename = "inf")]
    Inf,
}

impl NormChoice {
    pub fn vector_norm(self, v: &[Complex64]) -> f64 {
        match self {
            NormChoice::One => v.iter().map(|z| z.norm()).sum(),
            NormChoice::Two => v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt(),
            NormChoice::Inf => v.iter().map(|z| z.norm()).fold(0.0, f64::max),
        }
    }

    pub fn operator_norm(self, m: &CMatrix) -> f64 {
        match self {
            NormChoice::One => m.norm_one(),
            NormChoice::Two => m.norm_two(),
            NormChoice::Inf => m.norm_inf(),
        }
    }
}

impl std::fmt::Display for NormChoice {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            NormChoice::One => write!(f, "1"),
            NormChoice::Two => write!(f, "2"),
            NormChoice::Inf => write!(f, "inf"),
        }
    }
}

/// Element of the lattice `C^n`.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeVector {
    entries: Vec<Complex64>,
}

impl LatticeVector {
    pub fn new(entries: Vec<Complex64>) -> Self {
        Self { entries }
    }

    pub fn from_real(entries: &[f64]) -> Self {
        Self {
            entries: entries.iter().map(|&x| Complex64::new(x, 0.0)).collect(),
        }
    }

    pub fn unit(dim: usize, index: usize) -> Self {
        let mut e = vec![Complex64::new(0.0, 0.0); dim];
        e[index] = Complex64::new(1.0, 0.0);
        Self { entries: e }
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Complex64] {
        &self.entries
    }

    pub fn norm(&self, p: NormChoice) -> f64 {
        p.vector_norm(&self.entries)
    }

    /// All entries exactly real?
    pub fn is_real(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0)
    }

    /// All entries exactly real and nonnegative?
    pub fn is_nonneg(&self) -> bool {
        self.entries.iter().all(|z| z.im == 0.0 && z.re >= 0.0)
    }

    /// Exact support: indices of nonzero entries.
    pub fn support(&self) -> Vec<usize> {
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, z)| **z != Complex64::new(0.0, 0.0))
            .map(|(i, _)| i)
            .collect()
    }

    pub fn scale(&self, s: Complex64) -> LatticeVector {
        Self::new(self.entries.iter().map(|z| z * s).collect())
    }

    pub fn sub(&self, rhs: &LatticeVector) -> LatticeVector {
        Self::new(
            self.entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

/// Entrywise complex absolute value.
pub fn modulus(v: &LatticeVector) -> LatticeVector {
    LatticeVector::new(
        v.entries()
            .iter()
            .map(|z| Complex64::new(z.norm(), 0.0))
            .collect(),
    )
}

/// Splits a real vector into its positive and negative parts:
/// `pos - neg = v`, `pos ^ neg = 0`, both nonnegative.
pub fn lattice_parts(v: &LatticeVector) -> Result<(LatticeVector, LatticeVector), PerronError> {
    for (i, z) in v.entries().iter().enumerate() {
        if z.im != 0.0 {
            return Err(PerronError::NonRealInput { index: i, im: z.im });
        }
    }
    let pos = LatticeVector::from_real(
        &v.entries()
            .iter()
            .map(|z| z.re.max(0.0))
            .collect::<Vec<_>>(),
    );
    let neg = LatticeVector::from_real(
        &v.entries()
            .iter()
            .map(|z| (-z.re).max(0.0))
            .collect::<Vec<_>>(),
    );
    Ok((pos, neg))
}

/// Dense complex square matrix acting on the lattice, with verified
/// nonnegativity metadata and a declared norm.
#[derive(Clone, Debug, PartialEq)]
pub struct PositiveOperator {
    matrix: CMatrix,
    norm_choice: NormChoice,
    nonneg_certified: bool,
}

impl PositiveOperator {
    /// Wraps any square complex matrix; nonnegativity is certified by exact
    /// comparison on the stored values (imaginary part 0, real part >= 0).
    pub fn new(matrix: CMatrix, norm_choice: NormChoice) -> Result<Self, PerronError> {
        if !matrix.is_square() {
            return Err(PerronError::NotSquare {
                rows: matrix.nrows(),
                cols: matrix.ncols(),
                row_index: 0,
            });
        }
        let nonneg_certified = Self::check_nonneg(&matrix).is_none();
        Ok(Self {
            matrix,
            norm_choice,
            nonneg_certified,
        })
    }

    /// Like [`new`](Self::new) but rejects matrices that fail certification,
    /// reporting the violating entry.
    pub fn new_certified(matrix: CMatrix, norm_choice: NormChoice) -> Result<Self, PerronError> {
        if let Some((row, col)) = Self::check_nonneg(&matrix) {
            let value = matrix.get(row, col);
            return Err(PerronError::NegativeEntry { row, col, value });
        }
        Self::new(matrix, norm_choice)
    }

    fn check_nonneg(matrix: &CMatrix) -> Option<(usize, usize)> {
        for i in 0..matrix.nrows() {
            for j in 0..matrix.ncols() {
                let z = matrix.get(i, j);
                if z.im != 0.0 || z.re < 0.0 {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn from_real_rows(rows: &[Vec<f64>], norm_choice: NormChoice) -> Result<Self, PerronError> {
        Self::new(CMatrix::from_real_rows(rows)?, norm_choice)
    }

    pub fn from_rows(rows: &[Vec<Complex64>], norm_choice: NormChoice) -> Result<Self, PerronError> {
        Self::new(CMatrix::from_rows(rows)?, norm_choice)
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn norm_choice(&self) -> NormChoice {
        self.norm_choice
    }

    pub fn nonneg_certified(&self) -> bool {
        self.nonneg_certified
    }

    /// Operator norm in the declared lattice norm.
    pub fn norm(&self) -> f64 {
        self.norm_choice.operator_norm(&self.matrix)
    }

    pub fn apply(&self, v: &LatticeVector) -> Result<LatticeVector, PerronError> {
        if v.dim() != self.dim() {
            return Err(PerronError::DimensionMismatch {
                expected: self.dim(),
                got: v.dim(),
            });
        }
        Ok(LatticeVector::new(self.matrix.mul_vec(v.entries())))
    }

    pub fn require_certified(&self) -> Result<(), PerronError> {
        if self.nonneg_certified {
            Ok(())
        } else {
            Err(PerronError::NotCertified)
        }
    }

    /// Adjacency lists of the application-flow digraph: arc `j -> i` iff
    /// `T[i][j] != 0` (strict positivity on stored values).
    pub(crate) fn flow_adjacency(&self) -> Vec<Vec<usize>> {
        let n = self.dim();
        let mut adj = vec![Vec::new(); n];
        for i in 0..n {
            for j in 0..n {
                if self.matrix.get(i, j) != Complex64::new(0.0, 0.0) {
                    adj[j].push(i);
                }
            }
        }
        adj
    }

    /// Scales every entry by `1/s` (positive real), preserving certification.
    pub fn rescaled(&self, s: f64) -> Result<Self, PerronError> {
        if !(s > 0.0) {
            return Err(PerronError::Invalid {
                detail: format!("rescale factor must be positive, got {s}"),
            });
        }
        Self::new(
            self.matrix.scale(Complex64::new(1.0 / s, 0.0)),
            self.norm_choice,
        )
    }
}

/// Coordinate ideal `{v : v_i = 0 for i not in indices}` of the ambient
/// lattice, stored as a bitmask (dimensions are capped at 64).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CoordinateIdeal {
    mask: u64,
    ambient_dim: usize,
}

impl CoordinateIdeal {
    pub fn from_indices(indices: &[usize], ambient_dim: usize) -> Result<Self, PerronError> {
        if ambient_dim > 64 {
            return Err(PerronError::Invalid {
                detail: format!("ambient dimension {ambient_dim} exceeds the supported cap of 64"),
            });
        }
        let mut mask = 0u64;
        for &i in indices {
            if i >= ambient_dim {
                return Err(PerronError::DimensionMismatch {
                    expected: ambient_dim,
                    got: i + 1,
                });
            }
            mask |= 1 << i;
        }
        Ok(Self { mask, ambient_dim })
    }

    pub(crate) fn from_mask(mask: u64, ambient_dim: usize) -> Self {
        Self { mask, ambient_dim }
    }

    pub fn empty(ambient_dim: usize) -> Self {
        Self {
            mask: 0,
            ambient_dim,
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Self {
            mask: if ambient_dim == 64 {
                u64::MAX
            } else {
                (1u64 << ambient_dim) - 1
            },
            ambient_dim,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.ambient_dim && (self.mask >> i) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        *self == Self::full(self.ambient_dim)
    }

    /// Sorted member indices (0-based).
    pub fn indices(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|&i| self.contains(i)).collect()
    }

    pub fn complement_indices(&self) -> Vec<usize> {
        (0..self.ambient_dim).filter(|&i| !self.contains(i)).collect()
    }

    /// Does the vector lie in the ideal subspace (exact zero test outside)?
    pub fn contains_vector(&self, v: &LatticeVector) -> bool {
        v.entries()
            .iter()
            .enumerate()
            .all(|(i, z)| self.contains(i) || *z == Complex64::new(0.0, 0.0))
    }
}

/// Result of enumerating the T-invariant coordinate ideals.
#[derive(Clone, Debug)]
pub struct IdealEnumeration {
    pub ideals: Vec<CoordinateIdeal>,
    /// False when only the SCC-generated sublattice was returned
    /// (dimensions above the enumeration cap).
    pub exhaustive: bool,
}

/// Enumerates coordinate subsets `S` with `T[i][j] = 0` for `i` outside `S`,
/// `j` in `S`, from the condensation of the adjacency digraph. For
/// `n > 20` only the lattice generated by single-component down-sets is
/// returned, flagged as non-exhaustive.
pub fn invariant_ideals(t: &PositiveOperator) -> Result<IdealEnumeration, PerronError> {
    t.require_certified()?;
    let n = t.dim();
    if n > 64 {
        return Err(PerronError::Invalid {
            detail: format!("dimension {n} exceeds the supported cap of 64"),
        });
    }
    let adj = t.flow_adjacency();
    let comps = graph::sccs(&adj);
    let ids = graph::component_ids(n, &comps);
    let k = comps.len();

    // condensation successors (deduplicated)
    let mut succ = vec![Vec::new(); k];
    for (v, outs) in adj.iter().enumerate() {
        for &u in outs {
            if ids[v] != ids[u] && !succ[ids[v]].contains(&ids[u]) {
                succ[ids[v]].push(ids[u]);
            }
        }
    }
    let comp_mask: Vec<u64> = comps
        .iter()
        .map(|m| m.iter().fold(0u64, |acc, &v| acc | (1 << v)))
        .collect();

    let mut ideals: Vec<CoordinateIdeal> = Vec::new();
    if n <= tol::IDEAL_ENUM_MAX_DIM {
        // Components arrive in topological order (successors later), so
        // process them from the last (sinks) backwards: a component may be
        // chosen only when all of its successors are already chosen, which
        // generates exactly the successor-closed unions.
        fn rec(
            pos: usize,
            k: usize,
            succ: &[Vec<usize>],
            comp_mask: &[u64],
            chosen: &mut Vec<bool>,
            n: usize,
            out: &mut Vec<CoordinateIdeal>,
        ) {
            if pos == k {
                let mut mask = 0u64;
                for c in 0..k {
                    if chosen[c] {
                        mask |= comp_mask[c];
                    }
                }
                out.push(CoordinateIdeal::from_mask(mask, n));
                return;
            }
            let c = k - 1 - pos;
            chosen[c] = false;
            rec(pos + 1, k, succ, comp_mask, chosen, n, out);
            if succ[c].iter().all(|&s| chosen[s]) {
                chosen[c] = true;
                rec(pos + 1, k, succ, comp_mask, chosen, n, out);
                chosen[c] = false;
            }
        }
        let mut chosen = vec![false; k];
        rec(0, k, &succ, &comp_mask, &mut chosen, n, &mut ideals);
        ideals.sort_by_key(|i| (i.len(), i.indices()));
        Ok(IdealEnumeration {
            ideals,
            exhaustive: true,
        })
    } else {
        // down-set closure of each single component, plus bottom and top
        let mut seen = std::collections::BTreeSet::new();
        seen.insert(0u64);
        seen.insert(CoordinateIdeal::full(n).mask);
        for c in 0..k {
            let mut mask = 0u64;
            let mut stack = vec![c];
            let mut visited = vec![false; k];
            visited[c] = true;
            while let Some(x) = stack.pop() {
                mask |= comp_mask[x];
                for &s in &succ[x] {
                    if !visited[s] {
                        visited[s] = true;
                        stack.push(s);
                    }
                }
            }
            seen.insert(mask);
        }
        let mut ideals: Vec<CoordinateIdeal> = seen
            .into_iter()
            .map(|m| CoordinateIdeal::from_mask(m, n))
            .collect();
        ideals.sort_by_key(|i| (i.len(), i.indices()));
        Ok(IdealEnumeration {
            ideals,
            exhaustive: false,
        })
    }
}

/// Restriction / quotient pair induced by an invariant ideal.
#[derive(Clone, Debug)]
pub struct InducedPair {
    pub restriction: PositiveOperator,
    pub quotient: PositiveOperator,
    pub ideal_indices: Vec<usize>,
    pub complement_indices: Vec<usize>,
}

/// Splits `T` along an invariant coordinate ideal: the restriction is the
/// principal submatrix on the ideal's coordinates, the quotient the
/// principal submatrix on the complement. Non-invariant ideals are rejected
/// with the violating entry.
pub fn induce(t: &PositiveOperator, f: &CoordinateIdeal) -> Result<InducedPair, PerronError> {
    if f.ambient_dim() != t.dim() {
        return Err(PerronError::DimensionMismatch {
            expected: t.dim(),
            got: f.ambient_dim(),
        });
    }
    for i in 0..t.dim() {
        for j in 0..t.dim() {
            if !f.contains(i) && f.contains(j) {
                let v = t.matrix().get(i, j);
                if v != Complex64::new(0.0, 0.0) {
                    return Err(PerronError::NotInvariant {
                        row: i,
                        col: j,
                        value: v,
                    });
                }
            }
        }
    }
    let ideal_indices = f.indices();
    let complement_indices = f.complement_indices();
    let restriction = PositiveOperator::new(
        t.matrix().principal_submatrix(&ideal_indices),
        t.norm_choice(),
    )?;
    let quotient = PositiveOperator::new(
        t.matrix().principal_submatrix(&complement_indices),
        t.norm_choice(),
    )?;
    Ok(InducedPair {
        restriction,
        quotient,
        ideal_indices,
        complement_indices,
    })
}

/// Outcome of the principal-ideal closure test for a pair `x, y >= 0`.
#[derive(Clone, Debug)]
pub struct ClosureReport {
    /// Exact combinatorial oracle: `supp(x)` contained in `supp(y)`.
    pub support_subset: bool,
    /// Numeric verdict: `||(y - s x)^-|| / s` fell below the o(s) threshold.
    pub numeric_o_small: bool,
    pub agree: bool,
    /// `(s, ||(y - s x)^-||_inf / s)` along the dyadic grid.
    pub ratios: Vec<(f64, f64)>,
    pub threshold: f64,
}

impl ClosureReport {
    pub fn in_closure(&self) -> bool {
        self.support_subset
    }
}

/// Tests `x` against the closure of the principal ideal generated by `y`
/// by evaluating `||(y - s x)^-|| / s` on `s = 2^-k` and, independently,
/// by the exact support inclusion; both answers are reported.
pub fn in_closure_principal_ideal(
    x: &LatticeVector,
    y: &LatticeVector,
) -> Result<ClosureReport, PerronError> {
    if x.dim() != y.dim() {
        return Err(PerronError::DimensionMismatch {
            expected: y.dim(),
            got: x.dim(),
        });
    }
    for (v, name) in [(x, "x"), (y, "y")] {
        if !v.is_nonneg() {
            return Err(PerronError::Invalid {
                detail: format!("{name} must be entrywise nonnegative and real"),
            });
        }
    }
    let xinf = x.norm(NormChoice::Inf);
    let threshold = tol::O_SMALL_REL * xinf;
    let mut ratios = Vec::with_capacity(tol::O_SMALL_STEPS as usize);
    for k in 1..=tol::O_SMALL_STEPS {
        let s = 0.5f64.powi(k as i32);
        let neg_norm = y
            .entries()
            .iter()
            .zip(x.entries())
            .map(|(yi, xi)| (-(yi.re - s * xi.re)).max(0.0))
            .fold(0.0, f64::max);
        ratios.push((s, neg_norm / s));
    }
    let last_ratio = ratios.last().map(|&(_, r)| r).unwrap_or(0.0);
    let numeric_o_small = last_ratio < threshold || xinf == 0.0;
    let support_subset = {
        let sy = y.support();
        x.support().iter().all(|i| sy.contains(i))
    };
    Ok(ClosureReport {
        support_subset,
        numeric_o_small,
        agree: support_subset == numeric_o_small,
        ratios,
        threshold,
    })
}

/// A nonnegative vector is a quasi-interior point of the cone exactly when
/// every coordinate is strictly positive; the coordinate test is
/// cross-checked against the closure criterion on all unit vectors.
pub fn is_quasi_interior(y: &LatticeVector) -> Result<bool, PerronError> {
    if !y.is_nonneg() {
        return Err(PerronError::Invalid {
            detail: "y must be entrywise nonnegative and real".into(),
        });
    }
    let coordinate_answer = y.entries().iter().all(|z| z.re > 0.0);
    // y quasi-interior iff every unit vector lies in the closure of E_y
    let mut closure_answer = true;
    for i in 0..y.dim() {
        let report = in_closure_principal_ideal(&LatticeVector::unit(y.dim(), i), y)?;
        if !report.agree {
            return Err(PerronError::Invalid {
                detail: format!("quasi-interior cross-check disagreement at unit vector {i}"),
            });
        }
        closure_answer &= report.support_subset;
    }
    if closure_answer != coordinate_answer {
        return Err(PerronError::Invalid {
            detail: "quasi-interior cross-check disagrees with coordinate positivity".into(),
        });
    }
    Ok(coordinate_answer)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::cr;

    fn lv(xs: &[f64]) -> LatticeVector {
        LatticeVector::from_real(xs)
    }

    #[test]
    fn modulus_examples() {
        let v = LatticeVector::new(vec![cr(1.0), cr(-2.0), Complex64::new(0.0, 3.0)]);
        assert_eq!(modulus(&v), lv(&[1.0, 2.0, 3.0]));
        assert_eq!(modulus(&lv(&[0.0, 0.0])), lv(&[0.0, 0.0]));
        let v = LatticeVector::new(vec![Complex64::new(3.0, 4.0)]);
        assert_eq!(modulus(&v), lv(&[5.0]));
        // idempotent on its own output
        assert_eq!(modulus(&modulus(&v)), modulus(&v));
    }

    #[test]
    fn lattice_parts_examples() {
        let (p, n) = lattice_parts(&lv(&[2.0, -3.0])).unwrap();
        assert_eq!(p, lv(&[2.0, 0.0]));
        assert_eq!(n, lv(&[0.0, 3.0]));
        let (p, n) = lattice_parts(&lv(&[0.0])).unwrap();
        assert_eq!(p, lv(&[0.0]));
        assert_eq!(n, lv(&[0.0]));
        let (p, n) = lattice_parts(&lv(&[-1.0, -1.0])).unwrap();
        assert_eq!(p, lv(&[0.0, 0.0]));
        assert_eq!(n, lv(&[1.0, 1.0]));
        let bad = LatticeVector::new(vec![Complex64::new(0.0, 1.0)]);
        assert!(lattice_parts(&bad).is_err());
    }

    #[test]
    fn certification_is_exact() {
        let ok = PositiveOperator::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]], NormChoice::Inf)
            .unwrap();
        assert!(ok.nonneg_certified());
        let tiny = PositiveOperator::from_real_rows(
            &[vec![0.0, 1.0], vec![-1e-15, 0.0]],
            NormChoice::Inf,
        )
        .unwrap();
        assert!(!tiny.nonneg_certified());
        assert!(matches!(
            PositiveOperator::new_certified(
                CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![-1e-15, 0.0]]).unwrap(),
                NormChoice::Inf
            ),
            Err(PerronError::NegativeEntry { row: 1, col: 0, .. })
        ));
    }

    /// Brute-force oracle: every subset checked against the column condition.
    fn brute_force_ideals(t: &PositiveOperator) -> Vec<CoordinateIdeal> {
        let n = t.dim();
        let mut out = Vec::new();
        for mask in 0u64..(1 << n) {
            let ideal = CoordinateIdeal::from_mask(mask, n);
            let mut ok = true;
            'outer: for i in 0..n {
                for j in 0..n {
                    if !ideal.contains(i)
                        && ideal.contains(j)
                        && t.matrix().get(i, j) != Complex64::new(0.0, 0.0)
                    {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                out.push(ideal);
            }
        }
        out.sort_by_key(|i| (i.len(), i.indices()));
        out
    }

    #[test]
    fn ideals_of_diagonal_matrix() {
        let t =
            PositiveOperator::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 2.0]], NormChoice::Inf)
                .unwrap();
        let e = invariant_ideals(&t).unwrap();
        assert!(e.exhaustive);
        let sets: Vec<Vec<usize>> = e.ideals.iter().map(|i| i.indices()).collect();
        assert_eq!(sets, vec![vec![], vec![0], vec![1], vec![0, 1]]);
    }

    #[test]
    fn ideals_of_triangular_matrix_match_brute_force() {
        let t =
            PositiveOperator::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]], NormChoice::Inf)
                .unwrap();
        let e = invariant_ideals(&t).unwrap();
        assert_eq!(e.ideals, brute_force_ideals(&t));
        let sets: Vec<Vec<usize>> = e.ideals.iter().map(|i| i.indices()).collect();
        assert_eq!(sets, vec![vec![], vec![0], vec![0, 1]]);
    }

    #[test]
    fn ideals_of_three_cycle_match_brute_force() {
        let t = PositiveOperator::from_real_rows(
            &[
                vec![0.0, 0.0, 1.0],
                vec![1.0, 0.0, 0.0],
                vec![0.0, 1.0, 0.0],
            ],
            NormChoice::Inf,
        )
        .unwrap();
        let e = invariant_ideals(&t).unwrap();
        assert_eq!(e.ideals, brute_force_ideals(&t));
        assert_eq!(e.ideals.len(), 2); // empty and full only
    }

    #[test]
    fn induce_triangular_split() {
        let t =
            PositiveOperator::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 2.0]], NormChoice::Inf)
                .unwrap();
        let f = CoordinateIdeal::from_indices(&[0], 2).unwrap();
        let pair = induce(&t, &f).unwrap();
        assert_eq!(pair.restriction.dim(), 1);
        assert_eq!(pair.restriction.matrix().get(0, 0), cr(1.0));
        assert_eq!(pair.quotient.matrix().get(0, 0), cr(2.0));

        // full-space ideal: restriction = T, empty quotient
        let full = CoordinateIdeal::full(2);
        let pair = induce(&t, &full).unwrap();
        assert_eq!(pair.restriction.matrix(), t.matrix());
        assert_eq!(pair.quotient.dim(), 0);

        // the swap of coordinates is not invariant for {0}
        let swap =
            PositiveOperator::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]], NormChoice::Inf)
                .unwrap();
        match induce(&swap, &f) {
            Err(PerronError::NotInvariant { row: 1, col: 0, .. }) => {}
            other => panic!("expected NotInvariant, got {other:?}"),
        }
    }

    #[test]
    fn closure_examples() {
        let r = in_closure_principal_ideal(&lv(&[1.0, 0.0]), &lv(&[2.0, 0.0])).unwrap();
        assert!(r.support_subset && r.numeric_o_small && r.agree);
        assert!(r.ratios.iter().all(|&(_, ratio)| ratio == 0.0));

        let r = in_closure_principal_ideal(&lv(&[1.0, 1.0]), &lv(&[1.0, 0.0])).unwrap();
        assert!(!r.support_subset && !r.numeric_o_small && r.agree);
        // the ratio is exactly one in the inf norm
        assert!(r.ratios.iter().all(|&(_, ratio)| (ratio - 1.0).abs() < 1e-12));

        let r = in_closure_principal_ideal(&lv(&[1.0, 1.0]), &lv(&[3.0, 5.0])).unwrap();
        assert!(r.support_subset && r.numeric_o_small && r.agree);
        assert!(r.ratios.iter().all(|&(_, ratio)| ratio == 0.0));

        assert!(in_closure_principal_ideal(&lv(&[1.0]), &lv(&[1.0, 2.0])).is_err());
    }

    #[test]
    fn quasi_interior_examples() {
        assert!(is_quasi_interior(&lv(&[1.0, 2.0, 3.0])).unwrap());
        assert!(!is_quasi_interior(&lv(&[1.0, 0.0])).unwrap());
    }

    #[test]
    fn negative_part_triangle_bound() {
        // ||(y - s x)^-|| <= s ||x|| for all s > 0
        let x = lv(&[0.3, 0.0, 2.0, 0.7]);
        let y = lv(&[1.0, 0.5, 0.0, 3.0]);
        for k in 0..20 {
            let s = 1.7f64.powi(k - 10);
            let neg: f64 = y
                .entries()
                .iter()
                .zip(x.entries())
                .map(|(yi, xi)| (-(yi.re - s * xi.re)).max(0.0))
                .fold(0.0, f64::max);
            assert!(neg <= s * x.norm(NormChoice::Inf) + 1e-15);
        }
    }
}
