//! Reproducible families of test operators with known ground-truth
//! structure. Ground-truth records are never trusted by tests; they exist
//! to be cross-checked against the analysis pipeline.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::PerronError;
use crate::lattice::{CoordinateIdeal, NormChoice, PositiveOperator};
use crate::matrix::CMatrix;
use crate::spectral;
use crate::structure;

/// Ground truth recorded alongside a generated operator.
#[derive(Clone, Debug, Serialize)]
pub struct GroundTruth {
    pub family: String,
    pub dim: usize,
    pub seed: Option<u64>,
    pub period: Option<usize>,
    pub irreducible: Option<bool>,
    /// Expected resolvent pole order at the spectral radius.
    pub index_at_radius: Option<usize>,
    /// A planted invariant coordinate ideal, when the family embeds one.
    pub planted_ideal: Option<Vec<usize>>,
}

/// Block-cyclic operator with period `p`: blocks of size `block_dim` sit on
/// the cyclic superdiagonal, scaled so the spectral radius is 1. With
/// strictly positive blocks the result is irreducible with period exactly
/// `p`; `p = 1` yields a primitive strictly positive matrix.
pub fn cyclic_family(
    p: usize,
    block_dim: usize,
    seed: u64,
) -> Result<(PositiveOperator, GroundTruth), PerronError> {
    if p == 0 || block_dim == 0 {
        return Err(PerronError::BadGeneratorParams {
            detail: "period and block dimension must be positive".into(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xc7c11c);
    let n = p * block_dim;
    let block: Vec<Vec<f64>> = (0..block_dim)
        .map(|_| {
            (0..block_dim)
                .map(|_| {
                    if block_dim == 1 {
                        1.0
                    } else {
                        rng.gen_range(0.1..1.0)
                    }
                })
                .collect()
        })
        .collect();
    let mut m = CMatrix::zeros(n, n);
    for b in 0..p {
        let row_off = ((b + 1) % p) * block_dim;
        let col_off = b * block_dim;
        for i in 0..block_dim {
            for j in 0..block_dim {
                m.set(row_off + i, col_off + j, Complex64::new(block[i][j], 0.0));
            }
        }
    }
    let t = PositiveOperator::new(m, NormChoice::Inf)?;
    let spec = spectral::spectrum(&t)?;
    if spec.spectral_radius <= 0.0 {
        return Err(PerronError::BadGeneratorParams {
            detail: "cyclic block structure produced spectral radius zero".into(),
        });
    }
    // permutation-like instances already sit at radius 1 exactly; keep
    // their entries bit-exact instead of dividing by 1 +- rounding
    let t = if (spec.spectral_radius - 1.0).abs() <= 1e-12 {
        t
    } else {
        t.rescaled(spec.spectral_radius)?
    };
    Ok((
        t,
        GroundTruth {
            family: "cycle".into(),
            dim: n,
            seed: Some(seed),
            period: Some(p),
            irreducible: Some(true),
            index_at_radius: Some(1),
            planted_ideal: None,
        },
    ))
}

/// Upper-bidiagonal block with ones: spectral radius 1 and resolvent pole
/// order `m` at 1, optionally direct-summed with permutation cycles to
/// place simple peripheral values elsewhere.
pub fn jordan_growth_family(
    m: usize,
    decorations: &[usize],
) -> Result<(PositiveOperator, GroundTruth), PerronError> {
    if m == 0 {
        return Err(PerronError::BadGeneratorParams {
            detail: "pole order must be positive".into(),
        });
    }
    if decorations.iter().any(|&p| p == 0) {
        return Err(PerronError::BadGeneratorParams {
            detail: "cycle decorations must have positive length".into(),
        });
    }
    let mut blocks = Vec::new();
    let jordan = CMatrix::from_fn(m, m, |i, j| {
        if i == j || j == i + 1 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    });
    blocks.push(jordan);
    for &p in decorations {
        blocks.push(CMatrix::from_fn(p, p, |i, j| {
            if i == (j + 1) % p {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        }));
    }
    let full = CMatrix::direct_sum(&blocks);
    let dim = full.nrows();
    let t = PositiveOperator::new(full, NormChoice::Inf)?;
    Ok((
        t,
        GroundTruth {
            family: "jordan".into(),
            dim,
            seed: None,
            period: None,
            irreducible: Some(false),
            index_at_radius: Some(m),
            planted_ideal: None,
        },
    ))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RandomKind {
    NonnegDense,
    IrreducibleStochastic,
    ReducibleBlock,
}

impl RandomKind {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "dense" | "nonneg_dense" => Some(Self::NonnegDense),
            "stochastic" | "irreducible_stochastic" => Some(Self::IrreducibleStochastic),
            "reducible" | "reducible_block" => Some(Self::ReducibleBlock),
            _ => None,
        }
    }
}

/// Seeded random families. `IrreducibleStochastic` resamples until strong
/// connectivity holds and normalizes rows to sum exactly 1 (the residual
/// rounding is folded into the largest entry); `ReducibleBlock` embeds a
/// known invariant coordinate ideal and records it.
pub fn random_families(
    kind: RandomKind,
    n: usize,
    seed: u64,
) -> Result<(PositiveOperator, GroundTruth), PerronError> {
    if n == 0 || n > 64 {
        return Err(PerronError::BadGeneratorParams {
            detail: format!("dimension must be in 1..=64, got {n}"),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match kind {
        RandomKind::NonnegDense => {
            let rows: Vec<Vec<f64>> = (0..n)
                .map(|_| (0..n).map(|_| rng.gen_range(0.0..1.0)).collect())
                .collect();
            let t = PositiveOperator::from_real_rows(&rows, NormChoice::Inf)?;
            Ok((
                t,
                GroundTruth {
                    family: "dense".into(),
                    dim: n,
                    seed: Some(seed),
                    period: None,
                    irreducible: None,
                    index_at_radius: None,
                    planted_ideal: None,
                },
            ))
        }
        RandomKind::IrreducibleStochastic => {
            for _attempt in 0..1000 {
                let mut rows: Vec<Vec<f64>> = (0..n)
                    .map(|_| {
                        (0..n)
                            .map(|_| {
                                // sparsify so small periods and structure occur
                                if rng.gen_bool(0.5) {
                                    0.0
                                } else {
                                    rng.gen_range(0.1..1.0)
                                }
                            })
                            .collect()
                    })
                    .collect();
                for row in rows.iter_mut() {
                    let s: f64 = row.iter().sum();
                    if s <= 0.0 {
                        row[rng.gen_range(0..n)] = 1.0;
                    }
                }
                for row in rows.iter_mut() {
                    let s: f64 = row.iter().sum();
                    for v in row.iter_mut() {
                        *v /= s;
                    }
                    // fold the rounding residual into the largest entry so
                    // the row sum is exactly 1.0 in floating point
                    for _ in 0..3 {
                        let total: f64 = row.iter().sum();
                        let defect = 1.0 - total;
                        if defect == 0.0 {
                            break;
                        }
                        let imax = (0..n)
                            .max_by(|&a, &b| row[a].total_cmp(&row[b]))
                            .unwrap();
                        row[imax] += defect;
                    }
                }
                let t = PositiveOperator::from_real_rows(&rows, NormChoice::Inf)?;
                let irr = structure::irreducibility(&t)?;
                if irr.is_irreducible {
                    return Ok((
                        t,
                        GroundTruth {
                            family: "stochastic".into(),
                            dim: n,
                            seed: Some(seed),
                            period: irr.period,
                            irreducible: Some(true),
                            index_at_radius: Some(1),
                            planted_ideal: None,
                        },
                    ));
                }
            }
            Err(PerronError::BadGeneratorParams {
                detail: "failed to sample an irreducible stochastic matrix".into(),
            })
        }
        RandomKind::ReducibleBlock => {
            let k = (n / 2).max(1);
            // entries couple the complement into the ideal but never the
            // ideal into the complement: block upper triangular with the
            // ideal block leading
            let mut rows = vec![vec![0.0f64; n]; n];
            #[allow(clippy::needless_range_loop)]
            for i in 0..n {
                for j in 0..n {
                    let in_ideal_row = i < k;
                    let in_ideal_col = j < k;
                    if !in_ideal_row && in_ideal_col {
                        continue; // keep the ideal invariant
                    }
                    if rng.gen_bool(0.7) {
                        rows[i][j] = rng.gen_range(0.1..1.0);
                    }
                }
            }
            let t = PositiveOperator::from_real_rows(&rows, NormChoice::Inf)?;
            Ok((
                t,
                GroundTruth {
                    family: "reducible".into(),
                    dim: n,
                    seed: Some(seed),
                    period: None,
                    irreducible: Some(false),
                    index_at_radius: None,
                    planted_ideal: Some((0..k).collect()),
                },
            ))
        }
    }
}

/// The planted ideal of a reducible instance as a [`CoordinateIdeal`].
pub fn planted_ideal(truth: &GroundTruth) -> Option<CoordinateIdeal> {
    truth
        .planted_ideal
        .as_ref()
        .map(|idx| CoordinateIdeal::from_indices(idx, truth.dim).expect("generator invariant"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice;

    #[test]
    fn cyclic_family_examples() {
        // p = 3 with unit blocks is the 3-cycle permutation
        let (t, truth) = cyclic_family(3, 1, 0).unwrap();
        assert_eq!(truth.period, Some(3));
        let irr = structure::irreducibility(&t).unwrap();
        assert!(irr.is_irreducible);
        assert_eq!(irr.period, Some(3));

        // p = 2 with positive 2x2 blocks: period verified by the pipeline
        let (t, _) = cyclic_family(2, 2, 7).unwrap();
        let irr = structure::irreducibility(&t).unwrap();
        assert_eq!(irr.period, Some(2));
        let spec = spectral::spectrum(&t).unwrap();
        assert!((spec.spectral_radius - 1.0).abs() < 1e-9);

        // p = 1 strictly positive: primitive
        let (t, _) = cyclic_family(1, 4, 3).unwrap();
        let irr = structure::irreducibility(&t).unwrap();
        assert_eq!(irr.period, Some(1));
        let spec = spectral::spectrum(&t).unwrap();
        assert_eq!(spec.peripheral.len(), 1);
    }

    #[test]
    fn jordan_family_examples() {
        let (t, truth) = jordan_growth_family(1, &[]).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(truth.index_at_radius, Some(1));

        let (t, _) = jordan_growth_family(2, &[]).unwrap();
        assert_eq!(t.matrix().get(0, 1), Complex64::new(1.0, 0.0));
        let spec = spectral::spectrum(&t).unwrap();
        assert_eq!(spec.records[0].index, 2);

        let (t, _) = jordan_growth_family(2, &[2]).unwrap();
        assert_eq!(t.dim(), 4);
        let spec = spectral::spectrum(&t).unwrap();
        // peripheral contains 1 (index 2) and -1 (simple)
        assert_eq!(spec.peripheral.len(), 2);
    }

    #[test]
    fn random_families_are_deterministic() {
        let (a, _) = random_families(RandomKind::NonnegDense, 5, 7).unwrap();
        let (b, _) = random_families(RandomKind::NonnegDense, 5, 7).unwrap();
        assert_eq!(a.matrix(), b.matrix());
        let (c, _) = random_families(RandomKind::NonnegDense, 5, 8).unwrap();
        assert_ne!(a.matrix(), c.matrix());
    }

    #[test]
    fn stochastic_rows_sum_to_one_exactly() {
        let (t, truth) = random_families(RandomKind::IrreducibleStochastic, 6, 1).unwrap();
        assert_eq!(truth.irreducible, Some(true));
        for i in 0..6 {
            let s: f64 = (0..6).map(|j| t.matrix().get(i, j).re).sum();
            assert_eq!(s, 1.0, "row {i} sums to {s}");
        }
        assert_eq!(t.norm(), 1.0);
        let irr = structure::irreducibility(&t).unwrap();
        assert!(irr.is_irreducible);
    }

    #[test]
    fn reducible_block_plants_recoverable_ideal() {
        let (t, truth) = random_families(RandomKind::ReducibleBlock, 6, 11).unwrap();
        let planted = planted_ideal(&truth).unwrap();
        let enumeration = lattice::invariant_ideals(&t).unwrap();
        assert!(
            enumeration.ideals.contains(&planted),
            "planted ideal {:?} not found among {:?}",
            planted.indices(),
            enumeration
                .ideals
                .iter()
                .map(|i| i.indices())
                .collect::<Vec<_>>()
        );
    }
}
