//! Combinatorial Perron-Frobenius structure of a nonnegative matrix:
//! irreducibility, period (index of imprimitivity), Frobenius normal form,
//! Zhang's diagonal-power condition.

use serde::{Deserialize, Serialize};

use crate::error::PerronError;
use crate::graph;
use crate::lattice::PositiveOperator;
use crate::matrix::CMatrix;
use crate::spectral;
use crate::tol;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IrreducibilityReport {
    /// Strongly connected components in topological order of the
    /// condensation (arcs point from earlier to later components).
    pub sccs: Vec<Vec<usize>>,
    pub is_irreducible: bool,
    /// gcd of the cycle lengths of the adjacency digraph; defined when
    /// irreducible.
    pub period: Option<usize>,
    /// Topological order of the components: identity over `sccs`.
    pub condensation_order: Vec<usize>,
}

/// Strong-connectivity analysis of the adjacency digraph (edges defined by
/// strict entry positivity on the stored values). A 1x1 matrix is
/// irreducible exactly when its entry is positive.
pub fn irreducibility(t: &PositiveOperator) -> Result<IrreducibilityReport, PerronError> {
    t.require_certified()?;
    let n = t.dim();
    let adj = t.flow_adjacency();
    let sccs = graph::sccs(&adj);
    let single = sccs.len() == 1 && sccs[0].len() == n;
    let is_irreducible = if n == 1 {
        !adj[0].is_empty()
    } else {
        single && n > 0
    };
    let period = if is_irreducible {
        Some(graph::component_period(&adj, &sccs[0]))
    } else {
        None
    };
    let condensation_order = (0..sccs.len()).collect();
    Ok(IrreducibilityReport {
        sccs,
        is_irreducible,
        period,
        condensation_order,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FrobeniusNormalForm {
    /// Permutation with `out[k][l] = T[perm[k]][perm[l]]` block upper
    /// triangular.
    pub permutation: Vec<usize>,
    /// Sizes of the irreducible diagonal blocks, in condensation order.
    pub block_sizes: Vec<usize>,
    /// Original coordinates of each diagonal block.
    pub blocks: Vec<Vec<usize>>,
}

impl FrobeniusNormalForm {
    pub fn permuted_matrix(&self, t: &PositiveOperator) -> CMatrix {
        t.matrix().permuted(&self.permutation)
    }
}

/// Permutation bringing `T` to block upper triangular form with irreducible
/// diagonal blocks in condensation order.
pub fn frobenius_normal_form(t: &PositiveOperator) -> Result<FrobeniusNormalForm, PerronError> {
    t.require_certified()?;
    let adj = t.flow_adjacency();
    let comps = graph::sccs(&adj);
    // `flow_adjacency` has arcs j -> i for T[i][j] != 0, so components come
    // out topologically ordered with suppliers first; block upper triangular
    // form needs the receivers (later components in that order) first.
    let ordered: Vec<&Vec<usize>> = comps.iter().rev().collect();
    let mut permutation = Vec::with_capacity(t.dim());
    let mut block_sizes = Vec::with_capacity(ordered.len());
    let mut blocks = Vec::with_capacity(ordered.len());
    for members in ordered {
        permutation.extend_from_slice(members);
        block_sizes.push(members.len());
        blocks.push(members.clone());
    }
    Ok(FrobeniusNormalForm {
        permutation,
        block_sizes,
        blocks,
    })
}

/// Finite-horizon verdict on Zhang's condition `T^n >= a_n I` with
/// `limsup a_n^{1/n} = 1`. The verdict is one-sided: a finite horizon can
/// support the condition but never refute it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZhangVerdict {
    /// `a_n = min_i (T^n)_{ii}` for n = 1..=horizon.
    pub diagonal_minima: Vec<f64>,
    /// `max_n a_n^{1/n}`, a lower estimate of the limsup.
    pub estimate: f64,
    pub plausibly_holds: bool,
    pub horizon: usize,
}

pub fn zhang_condition(t: &PositiveOperator, horizon: usize) -> Result<ZhangVerdict, PerronError> {
    t.require_certified()?;
    let spec = spectral::spectrum(t)?;
    let r = spec.spectral_radius;
    if (r - 1.0).abs() > spec.cluster_tol {
        return Err(PerronError::SpectralRadiusNotOne {
            r,
            tol: spec.cluster_tol,
        });
    }
    let mut diagonal_minima = Vec::with_capacity(horizon);
    let mut power = t.matrix().clone();
    let mut estimate = 0.0f64;
    for n in 1..=horizon {
        if n > 1 {
            power = power.mul(t.matrix());
        }
        let a_n = (0..t.dim())
            .map(|i| power.get(i, i).re)
            .fold(f64::INFINITY, f64::min)
            .max(0.0);
        diagonal_minima.push(a_n);
        if a_n > 0.0 {
            estimate = estimate.max(a_n.powf(1.0 / n as f64));
        }
    }
    Ok(ZhangVerdict {
        diagonal_minima,
        estimate,
        plausibly_holds: estimate >= 1.0 - tol::ZHANG_SLACK,
        horizon,
    })
}
