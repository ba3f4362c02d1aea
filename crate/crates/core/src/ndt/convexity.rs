use crate::error::Result;
use crate::Rational;

use super::{memory_share, SchemeId};

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexityReport {
    pub scheme: SchemeId,
    /// `(a, b)` pairs of grid points whose midpoint lies above the chord.
    pub violations: Vec<(Rational, Rational)>,
    pub pairs_checked: usize,
}

impl ConvexityReport {
    pub fn convex(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `NDT((a + b)/2) <= (NDT(a) + NDT(b))/2` for every pair of grid
/// points, exactly, on the memory-shared curve.
pub fn convexity_check(
    scheme: SchemeId,
    h: usize,
    r: usize,
    mu_t: &Rational,
    rho: &Rational,
    grid: &[Rational],
) -> Result<ConvexityReport> {
    let ndt = |mu: &Rational| memory_share(scheme, h, r, mu, mu_t, rho).map(|v| v.total);
    let values = grid.iter().map(&ndt).collect::<Result<Vec<_>>>()?;
    let two = Rational::from_integer(2);
    let mut violations = Vec::new();
    let mut pairs_checked = 0;
    for i in 0..grid.len() {
        for j in i + 1..grid.len() {
            let mid = ndt(&((grid[i] + grid[j]) / two))?;
            pairs_checked += 1;
            if mid > (values[i] + values[j]) / two {
                violations.push((grid[i], grid[j]));
            }
        }
    }
    Ok(ConvexityReport { scheme, violations, pairs_checked })
}
