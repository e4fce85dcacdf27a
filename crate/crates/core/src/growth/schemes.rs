//! Weighting schemes: families of analytic functions on the closed unit
//! disk with value 1 at 1, nonnegative Taylor coefficients, and interior
//! decay, represented by their coefficient families `a_{j,k}` together with
//! a certified tail bound.

use serde::Serialize;

use crate::tol;

/// Index of a scheme member: integer orders or dyadic reals approaching 1
/// from above. Prefixes are ordered toward the limit of the net.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub enum SchemeIndex {
    Int(u64),
    Real(f64),
}

impl SchemeIndex {
    /// Abscissa used for trend fits: `ln(j+1)` for integer indices,
    /// `-ln(r-1)` for real indices decreasing to 1.
    pub fn fit_abscissa(&self) -> f64 {
        match self {
            SchemeIndex::Int(j) => ((j + 1) as f64).ln(),
            SchemeIndex::Real(r) => -(r - 1.0).ln(),
        }
    }
}

impl std::fmt::Display for SchemeIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SchemeIndex::Int(j) => write!(f, "{j}"),
            SchemeIndex::Real(r) => write!(f, "{r}"),
        }
    }
}

type CoeffFn = Box<dyn Fn(SchemeIndex, u64) -> f64 + Send + Sync>;
type TailFn = Box<dyn Fn(SchemeIndex, u64) -> f64 + Send + Sync>;

/// Coefficient family `a_{j,k} >= 0` with an evaluated index prefix and an
/// upper bound on `sum_{k > K} a_{j,k}`.
pub struct WeightingScheme {
    name: String,
    indices: Vec<SchemeIndex>,
    coeff: CoeffFn,
    tail_bound: TailFn,
}

impl std::fmt::Debug for WeightingScheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WeightingScheme")
            .field("name", &self.name)
            .field("indices", &self.indices.len())
            .finish()
    }
}

impl WeightingScheme {
    pub fn new(
        name: impl Into<String>,
        indices: Vec<SchemeIndex>,
        coeff: CoeffFn,
        tail_bound: TailFn,
    ) -> Self {
        Self {
            name: name.into(),
            indices,
            coeff,
            tail_bound,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn indices(&self) -> &[SchemeIndex] {
        &self.indices
    }

    pub fn coeff(&self, j: SchemeIndex, k: u64) -> f64 {
        (self.coeff)(j, k)
    }

    pub fn tail_bound(&self, j: SchemeIndex, k: u64) -> f64 {
        (self.tail_bound)(j, k)
    }

    /// `f_j(z) = (1/(j+1)) sum_{k=0}^{j} z^k`, j = 0..j_max.
    pub fn cesaro(j_max: u64) -> Self {
        Self::new(
            "cesaro",
            (0..=j_max).map(SchemeIndex::Int).collect(),
            Box::new(|j, k| match j {
                SchemeIndex::Int(j) => {
                    if k <= j {
                        1.0 / (j + 1) as f64
                    } else {
                        0.0
                    }
                }
                SchemeIndex::Real(_) => 0.0,
            }),
            Box::new(|j, big_k| match j {
                SchemeIndex::Int(j) => {
                    if big_k >= j {
                        0.0
                    } else {
                        (j - big_k) as f64 / (j + 1) as f64
                    }
                }
                SchemeIndex::Real(_) => 0.0,
            }),
        )
    }

    /// `f_j(z) = z^j`, j = 0..j_max.
    pub fn power(j_max: u64) -> Self {
        Self::new(
            "power",
            (0..=j_max).map(SchemeIndex::Int).collect(),
            Box::new(|j, k| match j {
                SchemeIndex::Int(j) => {
                    if k == j {
                        1.0
                    } else {
                        0.0
                    }
                }
                SchemeIndex::Real(_) => 0.0,
            }),
            Box::new(|j, big_k| match j {
                SchemeIndex::Int(j) => {
                    if big_k >= j {
                        0.0
                    } else {
                        1.0
                    }
                }
                SchemeIndex::Real(_) => 0.0,
            }),
        )
    }

    /// `f_r(z) = (r-1)/(r-z)` on the dyadic ray `r = 1 + 2^-n`,
    /// n = n_min..=n_max (so the prefix decreases toward 1). Coefficients
    /// `a_{r,k} = (r-1)/r^{k+1}`, geometric tail `sum_{k>K} = r^{-(K+1)}`.
    pub fn abel(n_min: u32, n_max: u32) -> Self {
        Self::new(
            "abel",
            (n_min..=n_max)
                .map(|n| SchemeIndex::Real(1.0 + 0.5f64.powi(n as i32)))
                .collect(),
            Box::new(|j, k| match j {
                SchemeIndex::Real(r) => (r - 1.0) / r.powi(k as i32 + 1),
                SchemeIndex::Int(_) => 0.0,
            }),
            Box::new(|j, big_k| match j {
                SchemeIndex::Real(r) => r.powi(-(big_k as i32) - 1),
                SchemeIndex::Int(_) => 0.0,
            }),
        )
    }

    /// `f_j = 1` for every j: satisfies (WS1) and (WS2) but violates the
    /// interior decay (WS3). Used to exercise rejection paths.
    pub fn constant(j_max: u64) -> Self {
        Self::new(
            "constant",
            (0..=j_max).map(SchemeIndex::Int).collect(),
            Box::new(|_, k| if k == 0 { 1.0 } else { 0.0 }),
            Box::new(|_, _| 0.0),
        )
    }

    /// Builds the named scheme with a caller-chosen prefix depth.
    pub fn by_name(name: &str, depth: u64) -> Option<Self> {
        match name {
            "cesaro" => Some(Self::cesaro(depth)),
            "power" => Some(Self::power(depth)),
            "abel" => Some(Self::abel(2, depth.min(20) as u32)),
            _ => None,
        }
    }
}

/// Per-condition outcome of the coefficient characterization: the partial
/// sums, nonnegativity, and interior decay of a scheme prefix.
#[derive(Clone, Debug, Serialize)]
pub struct SchemeValidation {
    /// (a): each evaluated partial sum is within `1e-12 + tail_bound` of 1.
    pub sum_ok: bool,
    /// (b): coefficients nonnegative on the evaluated prefix (exact).
    pub nonneg_ok: bool,
    /// (c): per fixed k, the coefficients decay along the prefix
    /// (one-sided verdict over the evaluated range).
    pub decay_ok: bool,
    pub is_valid: bool,
    /// Worst deviation of a partial sum from 1 beyond its tail allowance.
    pub worst_sum_defect: f64,
    /// ks at which the decay check failed.
    pub decay_failures: Vec<u64>,
    pub j_prefix: usize,
    pub k_prefix: u64,
}

/// Checks the three coefficient conditions of a weighting scheme on an
/// evaluated prefix: summation to 1 via partial sums plus the tail bound,
/// exact nonnegativity, and one-sided interior decay per fixed k.
pub fn validate_scheme(
    scheme: &WeightingScheme,
    j_prefix: usize,
    k_prefix: u64,
) -> SchemeValidation {
    let indices = &scheme.indices()[..j_prefix.min(scheme.indices().len())];
    let mut sum_ok = true;
    let mut nonneg_ok = true;
    let mut worst_sum_defect = 0.0f64;
    for &j in indices {
        let mut partial = 0.0;
        for k in 0..=k_prefix {
            let a = scheme.coeff(j, k);
            if a < 0.0 {
                nonneg_ok = false;
            }
            partial += a;
        }
        let allowance = tol::SCHEME_SUM_TOL + scheme.tail_bound(j, k_prefix);
        let defect = ((partial - 1.0).abs() - allowance).max(0.0);
        worst_sum_defect = worst_sum_defect.max(defect);
        if defect > 0.0 {
            sum_ok = false;
        }
    }

    let mut decay_failures = Vec::new();
    if let (Some(&first), Some(&last)) = (indices.first(), indices.last()) {
        for k in 0..=k_prefix {
            let peak = indices
                .iter()
                .map(|&j| scheme.coeff(j, k))
                .fold(scheme.coeff(first, k), f64::max);
            let tail_value = scheme.coeff(last, k);
            let decays = tail_value <= (0.9 * peak).max(1e-12);
            if !decays {
                decay_failures.push(k);
            }
        }
    }
    let decay_ok = decay_failures.is_empty();
    SchemeValidation {
        sum_ok,
        nonneg_ok,
        decay_ok,
        is_valid: sum_ok && nonneg_ok && decay_ok,
        worst_sum_defect,
        decay_failures,
        j_prefix: indices.len(),
        k_prefix,
    }
}
