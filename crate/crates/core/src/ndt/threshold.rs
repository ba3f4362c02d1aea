use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::topology::NetworkTopology;
use crate::Rational;

use super::{bracket, memory_share, NdtValue, SchemeId};

/// Best memory-shared delivery time among the schemes that use the
/// fronthaul (MDS-IA and soft-transfer).
pub fn competitor_ndt(h: usize, r: usize, mu_r: &Rational, mu_t: &Rational, rho: &Rational) -> Result<NdtValue<Rational>> {
    let m = memory_share(SchemeId::Mdsia, h, r, mu_r, mu_t, rho);
    let s = memory_share(SchemeId::Soft, h, r, mu_r, mu_t, rho);
    match (m, s) {
        (Ok(m), Ok(s)) => Ok(if s.total < m.total { s } else { m }),
        (Ok(v), Err(_)) | (Err(_), Ok(v)) => Ok(v),
        (Err(e), Err(_)) => Err(e),
    }
}

/// Fronthaul quality below which zero-forcing beats memory-shared MDS-IA.
///
/// Uses the closed form
///
/// `(1 - mu_T r)^+ (d2 + (1-a)/a d1) /
///  [K/min(H,K) mu_T r / a - d2((r-1)(mu2 + 1/L) + 1) - d1(1/a - 1)((r-1)(mu1 + 1/L) + 1)]`
///
/// with `d_i = (1 - mu_i)/(mu_i + 1/L)`, `mu1 > mu2` the MDS-IA bracket and
/// `a` the sharing weight on `mu2`. When `mu_R` needs no sharing the
/// crossover is solved directly.
pub fn rho_threshold(h: usize, r: usize, mu_r: &Rational, mu_t: &Rational) -> Result<Rational> {
    let topo = NetworkTopology::new(h, r)?;
    crate::zf::zf_param(topo.k(), mu_r, mu_t)?;
    let cloud = (Rational::one() - *mu_t * Rational::from_count(r)).positive_part();
    if cloud.is_zero() {
        return Ok(Rational::zero());
    }
    let b = bracket(SchemeId::Mdsia, h, r, mu_r, mu_t)?;
    if b.param_hi == b.param_lo {
        return direct_crossover(h, r, mu_r, mu_t);
    }
    let a = Rational::one() - b.alpha;
    let (l, r_s) = (Rational::from_count(topo.l()), Rational::from_count(r));
    let inv_l = Rational::one() / l;
    let d = |mu: &Rational| (Rational::one() - mu) / (*mu + inv_l);
    let (d1, d2) = (d(&b.mu_hi), d(&b.mu_lo));
    let num = cloud * (d2 + (Rational::one() - a) / a * d1);
    let kh = Rational::new(topo.k() as i128, topo.h().min(topo.k()) as i128);
    let dims = |mu: &Rational| (r_s - Rational::one()) * (*mu + inv_l) + Rational::one();
    let den = kh * *mu_t * r_s / a - d2 * dims(&b.mu_lo) - d1 * (Rational::one() / a - Rational::one()) * dims(&b.mu_hi);
    if den <= Rational::zero() {
        return Err(Error::InvalidParameter(format!(
            "no positive fronthaul threshold at mu_R = {mu_r}, mu_T = {mu_t}"
        )));
    }
    Ok(num / den)
}

/// `rho` at which zero-forcing and memory-shared MDS-IA have equal delivery
/// time, from their fronthaul load and edge parts.
pub fn direct_crossover(h: usize, r: usize, mu_r: &Rational, mu_t: &Rational) -> Result<Rational> {
    let one = Rational::one();
    let zf = memory_share(SchemeId::Zf, h, r, mu_r, mu_t, &one)?;
    let m = memory_share(SchemeId::Mdsia, h, r, mu_r, mu_t, &one)?;
    let gap = zf.total - m.edge;
    if m.fronthaul_load.is_zero() {
        return Ok(Rational::zero());
    }
    if gap <= Rational::zero() {
        return Err(Error::InvalidParameter(format!(
            "zero-forcing wins for every rho at mu_R = {mu_r}, mu_T = {mu_t}"
        )));
    }
    Ok(m.fronthaul_load / gap)
}

#[derive(Debug, Clone, PartialEq)]
pub struct FlipReport {
    pub rho_th: Rational,
    pub below: (Rational, Rational),
    pub above: (Rational, Rational),
    /// Zero-forcing is strictly better just below the threshold and strictly
    /// worse just above it.
    pub flips: bool,
}

/// Compares zero-forcing with the best competing scheme at `rho_th - eps`
/// and `rho_th + eps`.
pub fn flip_test(h: usize, r: usize, mu_r: &Rational, mu_t: &Rational, eps: &Rational) -> Result<FlipReport> {
    let rho_th = rho_threshold(h, r, mu_r, mu_t)?;
    let at = |rho: Rational| -> Result<(Rational, Rational)> {
        let zf = memory_share(SchemeId::Zf, h, r, mu_r, mu_t, &rho)?;
        Ok((zf.total, competitor_ndt(h, r, mu_r, mu_t, &rho)?.total))
    };
    let below = at(rho_th - eps)?;
    let above = at(rho_th + eps)?;
    let flips = below.0 < below.1 && above.0 > above.1;
    Ok(FlipReport { rho_th, below, above, flips })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn figure_five_threshold() {
        let th = rho_threshold(5, 2, &q(7, 10), &q(3, 10)).unwrap();
        assert_eq!(th, q(4, 17));
        assert_eq!(direct_crossover(5, 2, &q(7, 10), &q(3, 10)).unwrap(), th);
        let f = flip_test(5, 2, &q(7, 10), &q(3, 10), &q(1, 1000)).unwrap();
        assert!(f.flips, "{f:?}");
    }

    #[test]
    fn clamp_and_region() {
        assert_eq!(rho_threshold(5, 2, &q(1, 2), &q(1, 2)).unwrap(), q(0, 1));
        assert!(matches!(rho_threshold(5, 2, &q(1, 2), &q(3, 10)), Err(Error::RegionViolation(_))));
    }

    #[test]
    fn integral_point_uses_crossover() {
        let th = rho_threshold(5, 2, &q(3, 4), &q(1, 4)).unwrap();
        let zf = memory_share(SchemeId::Zf, 5, 2, &q(3, 4), &q(1, 4), &th).unwrap();
        let m = memory_share(SchemeId::Mdsia, 5, 2, &q(3, 4), &q(1, 4), &th).unwrap();
        assert_eq!(zf.total, m.total);
    }
}
