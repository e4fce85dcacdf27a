//! Dense complex matrix helpers shared by every analysis module.
//!
//! Everything here is a thin layer over `faer` dense kernels; the newtype
//! keeps the rest of the crate independent of the backend's API surface.

use faer::prelude::Solve;
use faer::Mat;
use num_complex::Complex64;

use crate::error::PerronError;

/// Dense complex square-or-rectangular matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    inner: Mat<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            inner: Mat::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            inner: Mat::identity(n, n),
        }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> Complex64) -> Self {
        Self {
            inner: Mat::from_fn(rows, cols, f),
        }
    }

    /// Builds a square matrix from row-major nested data.
    pub fn from_rows(rows: &[Vec<Complex64>]) -> Result<Self, PerronError> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(PerronError::NotSquare {
                    rows: n,
                    cols: r.len(),
                    row_index: i,
                });
            }
        }
        Ok(Self::from_fn(n, n, |i, j| rows[i][j]))
    }

    pub fn from_real_rows(rows: &[Vec<f64>]) -> Result<Self, PerronError> {
        let complex: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&x| Complex64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&complex)
    }

    pub fn nrows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn ncols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        self.inner[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Complex64) {
        self.inner[(i, j)] = v;
    }

    pub(crate) fn as_faer(&self) -> &Mat<Complex64> {
        &self.inner
    }

    pub(crate) fn from_faer(inner: Mat<Complex64>) -> Self {
        Self { inner }
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        Self::from_faer(&self.inner * &rhs.inner)
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.nrows();
        let m = self.ncols();
        assert_eq!(m, v.len());
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for j in 0..m {
            let vj = v[j];
            for (i, o) in out.iter_mut().enumerate() {
                *o += self.inner[(i, j)] * vj;
            }
        }
        out
    }

    pub fn add(&self, rhs: &CMatrix) -> CMatrix {
        Self::from_faer(&self.inner + &rhs.inner)
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        Self::from_faer(&self.inner - &rhs.inner)
    }

    pub fn scale(&self, s: Complex64) -> CMatrix {
        Self::from_fn(self.nrows(), self.ncols(), |i, j| self.inner[(i, j)] * s)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        Self::from_fn(self.ncols(), self.nrows(), |i, j| self.inner[(j, i)].conj())
    }

    pub fn transpose(&self) -> CMatrix {
        Self::from_fn(self.ncols(), self.nrows(), |i, j| self.inner[(j, i)])
    }

    /// `mu * I - self`, defined for square matrices.
    pub fn shifted_from(&self, mu: Complex64) -> CMatrix {
        debug_assert!(self.is_square());
        Self::from_fn(self.nrows(), self.ncols(), |i, j| {
            let d = if i == j { mu } else { Complex64::new(0.0, 0.0) };
            d - self.inner[(i, j)]
        })
    }

    /// Principal submatrix on `idx` (rows and columns).
    pub fn principal_submatrix(&self, idx: &[usize]) -> CMatrix {
        Self::from_fn(idx.len(), idx.len(), |i, j| self.inner[(idx[i], idx[j])])
    }

    /// Maximum absolute column sum.
    pub fn norm_one(&self) -> f64 {
        let mut best = 0.0f64;
        for j in 0..self.ncols() {
            let mut s = 0.0;
            for i in 0..self.nrows() {
                s += self.inner[(i, j)].norm();
            }
            best = best.max(s);
        }
        best
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.nrows() {
            let mut s = 0.0;
            for j in 0..self.ncols() {
                s += self.inner[(i, j)].norm();
            }
            best = best.max(s);
        }
        best
    }

    /// Largest singular value.
    pub fn norm_two(&self) -> f64 {
        let sv = self.singular_values();
        sv.first().copied().unwrap_or(0.0)
    }

    /// Singular values in nonincreasing order.
    pub fn singular_values(&self) -> Vec<f64> {
        if self.nrows() == 0 || self.ncols() == 0 {
            return Vec::new();
        }
        let svd = self
            .inner
            .svd()
            .expect("svd of a finite dense matrix should not fail");
        let s = svd.S();
        (0..s.dim()).map(|i| s[i].re).collect()
    }

    /// Eigenvalues of a square matrix (unordered).
    pub fn eigenvalues(&self) -> Result<Vec<Complex64>, PerronError> {
        debug_assert!(self.is_square());
        if self.nrows() == 0 {
            return Ok(Vec::new());
        }
        if self.nrows() == 1 {
            return Ok(vec![self.inner[(0, 0)]]);
        }
        let evd = self
            .inner
            .eigen()
            .map_err(|e| PerronError::EigenFailed {
                detail: format!("{e:?}"),
            })?;
        let s = evd.S();
        Ok((0..s.dim()).map(|i| s[i]).collect())
    }

    /// Solves `self * X = rhs` by partial-pivot LU.
    pub fn solve(&self, rhs: &CMatrix) -> CMatrix {
        debug_assert!(self.is_square());
        let lu = self.inner.partial_piv_lu();
        Self::from_faer(lu.solve(rhs.as_faer()))
    }

    /// Rank with an explicit absolute singular-value cutoff.
    pub fn rank_with_cutoff(&self, cutoff: f64) -> usize {
        self.singular_values().iter().filter(|&&s| s > cutoff).count()
    }

    /// Orthonormal basis of the (numerical) nullspace: right singular vectors
    /// whose singular values fall at or below `cutoff`.
    pub fn nullspace_basis(&self, cutoff: f64) -> Vec<Vec<Complex64>> {
        if self.nrows() == 0 || self.ncols() == 0 {
            return Vec::new();
        }
        let svd = self
            .inner
            .svd()
            .expect("svd of a finite dense matrix should not fail");
        let s = svd.S();
        let v = svd.V();
        let mut basis = Vec::new();
        for k in 0..s.dim() {
            if s[k].re <= cutoff {
                basis.push((0..self.ncols()).map(|i| v[(i, k)]).collect());
            }
        }
        basis
    }

    pub fn max_abs_entry(&self) -> f64 {
        let mut best = 0.0f64;
        for i in 0..self.nrows() {
            for j in 0..self.ncols() {
                best = best.max(self.inner[(i, j)].norm());
            }
        }
        best
    }

    pub fn rows(&self) -> Vec<Vec<Complex64>> {
        (0..self.nrows())
            .map(|i| (0..self.ncols()).map(|j| self.inner[(i, j)]).collect())
            .collect()
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(blocks: &[CMatrix]) -> CMatrix {
        let n: usize = blocks.iter().map(|b| b.nrows()).sum();
        let mut out = CMatrix::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            for i in 0..b.nrows() {
                for j in 0..b.ncols() {
                    out.set(off + i, off + j, b.get(i, j));
                }
            }
            off += b.nrows();
        }
        out
    }

    /// Applies the permutation `perm` symmetrically: `out[i][j] = self[perm[i]][perm[j]]`.
    pub fn permuted(&self, perm: &[usize]) -> CMatrix {
        debug_assert_eq!(perm.len(), self.nrows());
        Self::from_fn(self.nrows(), self.ncols(), |i, j| {
            self.inner[(perm[i], perm[j])]
        })
    }
}

#[allow(dead_code)] // used by test modules across the crate
pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

#[allow(dead_code)]
pub(crate) fn cr(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms_match_hand_values() {
        let m = CMatrix::from_real_rows(&[vec![1.0, 1.0], vec![0.0, 1.0]]).unwrap();
        assert_eq!(m.norm_inf(), 2.0);
        assert_eq!(m.norm_one(), 2.0);
        let m2 = CMatrix::from_real_rows(&[vec![0.0, 2.0], vec![0.0, 0.0]]).unwrap();
        assert!((m2.norm_two() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn eigenvalues_of_swap() {
        let m = CMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        let mut evs = m.eigenvalues().unwrap();
        evs.sort_by(|a, b| a.re.partial_cmp(&b.re).unwrap());
        assert!((evs[0].re + 1.0).abs() < 1e-12);
        assert!((evs[1].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn solve_small_system() {
        let a = CMatrix::from_real_rows(&[vec![2.0, 0.0], vec![0.0, 4.0]]).unwrap();
        let x = a.solve(&CMatrix::identity(2));
        assert!((x.get(0, 0).re - 0.5).abs() < 1e-15);
        assert!((x.get(1, 1).re - 0.25).abs() < 1e-15);
    }

    #[test]
    fn nullspace_of_singular_matrix() {
        let a = CMatrix::from_real_rows(&[vec![1.0, 0.0], vec![0.0, 0.0]]).unwrap();
        let ns = a.nullspace_basis(1e-12);
        assert_eq!(ns.len(), 1);
        assert!(ns[0][0].norm() < 1e-12);
        assert!((ns[0][1].norm() - 1.0).abs() < 1e-12);
    }
}
