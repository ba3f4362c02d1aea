use crate::combinatorics::binomial_usize;
use crate::error::{Error, Result};
use crate::mdsia::check_fraction;
use crate::ndt::{NdtValue, SchemeId};
use crate::scalar::Scalar;
use crate::topology::NetworkTopology;
use crate::Rational;

use super::placement::SoftPlacement;
use super::schedule::DeliveryStep;

/// Edge time of the ideal `H`-antenna transmitter with per-UE caches of
/// `t/K` of the library: `(K - t) / min(H + t, K)`.
pub fn soft_edge_ideal<S: Scalar>(k: usize, h: usize, t: usize) -> S {
    S::from_count(k - t) / S::from_count((h + t).min(k))
}

/// Closed-form soft-transfer delivery time at an integral `t = mu_R K`:
///
/// `(K - t) [1/min(H + t, K) + (1 - mu_T)/(H rho)]`.
pub fn soft_ndt<S: Scalar>(h: usize, r: usize, mu_r: &S, mu_t: &S, rho: &S) -> Result<NdtValue<S>> {
    let topo = NetworkTopology::new(h, r)?;
    check_fraction("mu_R", mu_r)?;
    check_fraction("mu_T", mu_t)?;
    let k = topo.k();
    let t_s = mu_r.clone() * S::from_count(k);
    let t = t_s
        .to_integer()
        .ok_or_else(|| Error::NonIntegralCacheParameter { name: "t_U", value: t_s.to_string() })? as usize;
    if t == k {
        return Ok(NdtValue::zero(SchemeId::Soft, "full-cache"));
    }
    let branch = if t + h >= k { "whole-subfile" } else { "chunked" };
    let edge = soft_edge_ideal::<S>(k, h, t);
    let load = S::from_count(k - t) * (S::one() - mu_t.clone()) / S::from_count(h);
    NdtValue::new(load, edge, rho, SchemeId::Soft, branch)
}

/// Delivery time counted from a schedule: one chunk duration per step on the
/// edge, and the delivered cloud-part volume shared by the `H` ENs on the
/// fronthaul.
pub fn structural_ndt(p: &SoftPlacement, steps: &[DeliveryStep], rho: &Rational, scheme: SchemeId) -> Result<NdtValue<Rational>> {
    let f = Rational::from_integer(p.file_size_bits as i128);
    let mut edge_bits = 0u64;
    let mut cloud_bits = 0u64;
    for st in steps {
        let seg = &p.segments[st.segment];
        let chunk_bits = 8 * seg.chunk_bytes() as u64;
        edge_bits += chunk_bits;
        if !seg.local {
            cloud_bits += chunk_bits * st.items.len() as u64;
        }
    }
    let load = Rational::new(cloud_bits as i128, p.h as i128) / f;
    NdtValue::new(load, Rational::from_integer(edge_bits as i128) / f, rho, scheme, "structural")
}

/// Number of steps the schedule must have for one part with parameter `t`.
pub fn expected_steps(k: usize, h: usize, t: usize) -> usize {
    if t >= k {
        0
    } else if t + h >= k {
        binomial_usize(k - 1, t)
    } else {
        binomial_usize(k, k - t - h) * binomial_usize(h + t - 1, t)
    }
}
