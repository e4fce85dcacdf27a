//! Least-squares fits for growth trends.

/// Slope and intercept of the least-squares line through `(x, y)` pairs.
/// Returns `None` for fewer than two points or degenerate abscissae.
pub fn least_squares_slope(points: &[(f64, f64)]) -> Option<(f64, f64)> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx) * (p.0 - mx)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return None;
    }
    let slope = sxy / sxx;
    Some((slope, my - slope * mx))
}

/// max/min over positive values; `None` when empty or non-positive values
/// appear (a zero ratio would make the spread meaningless).
pub fn spread(values: &[f64]) -> Option<f64> {
    let mut lo = f64::INFINITY;
    let mut hi = 0.0f64;
    for &v in values {
        if !(v > 0.0) {
            return None;
        }
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if lo.is_finite() && hi > 0.0 {
        Some(hi / lo)
    } else {
        None
    }
}
