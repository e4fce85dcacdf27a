//! Dense two-phase simplex for the small feasibility searches used by the
//! theorem checkers (dominating fixed vectors, dominated eigenvector pairs,
//! super-fixed functionals, nonnegative eigenvectors).
//!
//! Problems here have at most a few hundred rows over at most ~130
//! variables, so a dense tableau with Bland's rule is plenty.

const EPS: f64 = 1e-9;
const MAX_PIVOTS: usize = 20_000;

/// Finds `w` with `A w >= b` (row-major `a`, one entry of `b` per row).
/// Variables are free; returns any feasible point, or `None` when the
/// system is infeasible (or the pivot cap is hit, which these problem
/// sizes do not reach in practice).
pub fn linear_feasibility(a: &[Vec<f64>], b: &[f64]) -> Option<Vec<f64>> {
    let m = a.len();
    if m == 0 {
        return Some(Vec::new());
    }
    let p = a[0].len();
    debug_assert!(a.iter().all(|row| row.len() == p));
    debug_assert_eq!(b.len(), m);

    // scale rows to unit max magnitude
    let mut rows: Vec<(Vec<f64>, f64)> = a
        .iter()
        .zip(b)
        .map(|(row, &bi)| {
            let scale = row
                .iter()
                .map(|x| x.abs())
                .fold(bi.abs(), f64::max)
                .max(1e-30);
            (row.iter().map(|x| x / scale).collect(), bi / scale)
        })
        .collect();

    // w = wp - wm, wp/wm >= 0; slack s >= 0 with A w - s = b; flip rows to
    // make the right-hand side nonnegative, then add artificials.
    // columns: [wp(p) | wm(p) | s(m) | art(m) | rhs]
    let ncols = 2 * p + 2 * m;
    let mut tab = vec![vec![0.0f64; ncols + 1]; m];
    for (i, (row, bi)) in rows.iter_mut().enumerate() {
        let flip = if *bi < 0.0 { -1.0 } else { 1.0 };
        for (j, &x) in row.iter().enumerate() {
            tab[i][j] = flip * x;
            tab[i][p + j] = -flip * x;
        }
        tab[i][2 * p + i] = -flip;
        tab[i][2 * p + m + i] = 1.0;
        tab[i][ncols] = flip * *bi;
    }

    // phase-one objective: minimize the artificial sum; reduced costs via
    // the objective row z = sum(art rows)
    let mut basis: Vec<usize> = (0..m).map(|i| 2 * p + m + i).collect();
    let mut obj = vec![0.0f64; ncols + 1];
    for i in 0..m {
        for j in 0..=ncols {
            obj[j] += tab[i][j];
        }
    }

    for _ in 0..MAX_PIVOTS {
        // Bland: entering = smallest-index non-artificial column with a
        // positive objective coefficient (we are minimizing art sum, so a
        // positive coefficient in the art-sum row reduces it when pivoted in)
        let mut enter = None;
        for (j, &c) in obj.iter().enumerate().take(2 * p + m) {
            if c > EPS {
                enter = Some(j);
                break;
            }
        }
        let Some(enter) = enter else { break };
        // ratio test, Bland ties by smallest basis variable
        let mut leave: Option<usize> = None;
        let mut best = f64::INFINITY;
        for i in 0..m {
            if tab[i][enter] > EPS {
                let ratio = tab[i][ncols] / tab[i][enter];
                if ratio < best - EPS
                    || (ratio < best + EPS
                        && leave.map(|l| basis[i] < basis[l]).unwrap_or(false))
                {
                    best = ratio;
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // unbounded phase-one direction cannot happen (objective is
            // bounded below by zero); treat defensively as failure
            return None;
        };
        pivot(&mut tab, &mut obj, leave, enter);
        basis[leave] = enter;
    }

    if obj[ncols] > 1e-7 {
        return None; // artificial mass remains: infeasible
    }

    let mut w = vec![0.0f64; p];
    for (i, &bv) in basis.iter().enumerate() {
        let val = tab[i][ncols];
        if bv < p {
            w[bv] += val;
        } else if bv < 2 * p {
            w[bv - p] -= val;
        }
    }
    Some(w)
}

fn pivot(tab: &mut [Vec<f64>], obj: &mut [f64], row: usize, col: usize) {
    let ncols = obj.len() - 1;
    let piv = tab[row][col];
    for j in 0..=ncols {
        tab[row][j] /= piv;
    }
    for i in 0..tab.len() {
        if i != row {
            let factor = tab[i][col];
            if factor != 0.0 {
                for j in 0..=ncols {
                    tab[i][j] -= factor * tab[row][j];
                }
            }
        }
    }
    let factor = obj[col];
    if factor != 0.0 {
        for j in 0..=ncols {
            obj[j] -= factor * tab[row][j];
        }
    }
}

/// Convenience: appends the equality `row . w = rhs` to a `>=` system as a
/// pair of opposite inequalities.
pub fn push_equality(a: &mut Vec<Vec<f64>>, b: &mut Vec<f64>, row: Vec<f64>, rhs: f64) {
    a.push(row.iter().map(|x| -x).collect());
    b.push(-rhs);
    a.push(row);
    b.push(rhs);
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_feasible(a: &[Vec<f64>], b: &[f64]) -> Vec<f64> {
        let w = linear_feasibility(a, b).expect("should be feasible");
        for (row, &bi) in a.iter().zip(b) {
            let lhs: f64 = row.iter().zip(&w).map(|(x, y)| x * y).sum();
            assert!(lhs >= bi - 1e-7, "violated: {lhs} < {bi}");
        }
        w
    }

    #[test]
    fn dominating_fixed_vector_of_swap() {
        // x = w * (1,1) >= (0.5, 0.5): feasible with w >= 0.5
        let a = vec![vec![1.0], vec![1.0]];
        let b = vec![0.5, 0.5];
        let w = check_feasible(&a, &b);
        assert!(w[0] >= 0.5 - 1e-9);
    }

    #[test]
    fn domination_outside_span_is_infeasible() {
        // x = w * e1 >= e2 fails in the second coordinate
        let a = vec![vec![1.0], vec![0.0]];
        let b = vec![0.0, 1.0];
        assert!(linear_feasibility(&a, &b).is_none());
    }

    #[test]
    fn negative_rhs_rows() {
        // w1 - w2 >= -3, -w1 >= -10, w2 >= 2
        let a = vec![vec![1.0, -1.0], vec![-1.0, 0.0], vec![0.0, 1.0]];
        let b = vec![-3.0, -10.0, 2.0];
        check_feasible(&a, &b);
    }

    #[test]
    fn equality_encoding() {
        let mut a = vec![vec![1.0, 0.0], vec![0.0, 1.0]];
        let mut b = vec![0.0, 0.0];
        push_equality(&mut a, &mut b, vec![1.0, 1.0], 4.0);
        let w = check_feasible(&a, &b);
        assert!((w[0] + w[1] - 4.0).abs() < 1e-7);
    }

    #[test]
    fn infeasible_equalities() {
        let mut a = Vec::new();
        let mut b = Vec::new();
        push_equality(&mut a, &mut b, vec![1.0], 1.0);
        push_equality(&mut a, &mut b, vec![1.0], 2.0);
        assert!(linear_feasibility(&a, &b).is_none());
    }

    #[test]
    fn moderately_sized_random_system_with_interior_point() {
        // build A w >= b that is satisfied strictly by a known w*
        let mut state = 0x2545F4914F6CDD1Du64;
        let mut rng = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        let p = 8;
        let m = 40;
        let wstar: Vec<f64> = (0..p).map(|_| rng() * 4.0).collect();
        let mut a = Vec::new();
        let mut b = Vec::new();
        for _ in 0..m {
            let row: Vec<f64> = (0..p).map(|_| rng()).collect();
            let lhs: f64 = row.iter().zip(&wstar).map(|(x, y)| x * y).sum();
            a.push(row);
            b.push(lhs - 0.1 - rng().abs());
        }
        check_feasible(&a, &b);
    }
}
