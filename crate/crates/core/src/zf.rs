//! Cloud-free zero-forcing delivery: the ENs cache the `mu_T` part of every
//! file, the UEs cache the whole remainder plus subfiles of the EN part, and
//! the ENs zero-force the rest from their own caches.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::library::Library;
use crate::mdsia::check_fraction;
use crate::ndt::{NdtValue, SchemeId};
use crate::placement::Part;
use crate::scalar::Scalar;
use crate::soft::{
    build_placement, part_bits, simulate_with_redraw, soft_schedule, DeliveryStep, SimReport, SoftPlacement,
};
use crate::topology::NetworkTopology;
use crate::Rational;

/// `t_R = (mu_R + mu_T - 1) K / mu_T`, the number of UEs caching each
/// subfile of the EN part.
pub fn zf_param<S: Scalar>(k: usize, mu_r: &S, mu_t: &S) -> Result<S> {
    check_fraction("mu_R", mu_r)?;
    check_fraction("mu_T", mu_t)?;
    if mu_r.clone() + mu_t.clone() < S::one() {
        return Err(Error::RegionViolation(format!(
            "zero-forcing needs mu_R + mu_T >= 1 (mu_R = {mu_r}, mu_T = {mu_t})"
        )));
    }
    if mu_t.is_zero() {
        return Ok(S::from_count(k));
    }
    Ok((mu_r.clone() + mu_t.clone() - S::one()) * S::from_count(k) / mu_t.clone())
}

fn integral_tr<S: Scalar>(k: usize, mu_r: &S, mu_t: &S) -> Result<usize> {
    let t = zf_param(k, mu_r, mu_t)?;
    t.to_integer()
        .map(|v| v as usize)
        .ok_or_else(|| Error::NonIntegralCacheParameter { name: "t_R", value: t.to_string() })
}

/// Closed-form zero-forcing delivery time at an integral `t_R`:
/// `mu_T (K - t_R) / min(H + t_R, K)`, with no fronthaul term.
pub fn zf_ndt<S: Scalar>(h: usize, r: usize, mu_r: &S, mu_t: &S) -> Result<NdtValue<S>> {
    let topo = NetworkTopology::new(h, r)?;
    let k = topo.k();
    let t = integral_tr(k, mu_r, mu_t)?;
    if t == k {
        return Ok(NdtValue::zero(SchemeId::Zf, "full-cache"));
    }
    let edge = mu_t.clone() * S::from_count(k - t) / S::from_count((h + t).min(k));
    let branch = if t + h >= k { "whole-subfile" } else { "chunked" };
    NdtValue::new(S::zero(), edge, &S::one(), SchemeId::Zf, branch)
}

/// Places the EN part (`mu_T F` bits, cut over `t_R`-subsets) and caches the
/// remainder of every file at every UE.
pub fn zf_place(lib: &Library, topo: &NetworkTopology, mu_r: &Rational, mu_t: &Rational) -> Result<SoftPlacement> {
    let k = topo.k();
    let t = integral_tr(k, mu_r, mu_t)?;
    let split = !mu_t.is_zero() && !mu_t.is_one();
    let mut parts = Vec::new();
    if !mu_t.is_zero() {
        parts.push((split.then_some(Part::En), true, t, part_bits(lib, mu_t)?));
    }
    if !mu_t.is_one() {
        let rest = Rational::one() - mu_t;
        parts.push((split.then_some(Part::Cloud), false, k, part_bits(lib, &rest)?));
    }
    build_placement(lib, topo, &parts)
}

#[derive(Debug, Clone)]
pub struct ZfRun {
    pub placement: SoftPlacement,
    pub steps: Vec<DeliveryStep>,
    pub report: SimReport,
}

/// Places, schedules and simulates zero-forcing delivery over a random
/// channel, re-drawing degenerate channels up to `max_draws` times.
pub fn zf_deliver(
    lib: &Library,
    demand: &[usize],
    topo: &NetworkTopology,
    mu_r: &Rational,
    mu_t: &Rational,
    seed: u64,
    max_draws: usize,
) -> Result<ZfRun> {
    let placement = zf_place(lib, topo, mu_r, mu_t)?;
    let steps = soft_schedule(demand, &placement)?;
    let report = simulate_with_redraw::<f64>(lib, demand, &placement, &steps, topo, seed, max_draws)?;
    Ok(ZfRun { placement, steps, report })
}
