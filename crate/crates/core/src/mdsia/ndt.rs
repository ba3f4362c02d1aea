use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::ndt::{NdtValue, SchemeId};
use crate::scalar::Scalar;
use crate::topology::NetworkTopology;
use crate::Rational;

use super::alignment::AlignmentReport;
use super::delivery::MulticastMessage;
use super::placement::MdsiaPlacement;

pub(crate) fn check_fraction<S: Scalar>(name: &str, v: &S) -> Result<()> {
    if *v < S::zero() || *v > S::one() {
        return Err(Error::InvalidParameter(format!("{name} = {v} outside [0, 1]")));
    }
    Ok(())
}

/// Closed-form MDS-IA delivery time at an integral `t_E = mu_R * L`:
///
/// `(L - t)/r * [(r - 1)/L + (1 + (1 - mu_T r)^+ / rho) / (t + 1)]`.
///
/// Defined for `r = 2` or `t_E >= L - 2`, where the alignment construction
/// exists.
pub fn mdsia_ndt<S: Scalar>(h: usize, r: usize, mu_r: &S, mu_t: &S, rho: &S) -> Result<NdtValue<S>> {
    let topo = NetworkTopology::new(h, r)?;
    check_fraction("mu_R", mu_r)?;
    check_fraction("mu_T", mu_t)?;
    let l = topo.l();
    let t_s = mu_r.clone() * S::from_count(l);
    let t = t_s
        .to_integer()
        .ok_or_else(|| Error::NonIntegralCacheParameter { name: "t_E", value: t_s.to_string() })? as usize;
    if r != 2 && t + 2 < l {
        return Err(Error::UnsupportedRegime(format!(
            "MDS-IA needs r = 2 or t_E >= L - 2 (r = {r}, L = {l}, t_E = {t})"
        )));
    }
    let branch = if mu_t.is_zero() {
        "no-en-cache"
    } else if mu_t.clone() * S::from_count(r) >= S::one() {
        "en-local"
    } else {
        "en-split"
    };
    if t == l {
        return Ok(NdtValue::zero(SchemeId::Mdsia, branch));
    }
    let (l_s, r_s, t1) = (S::from_count(l), S::from_count(r), S::from_count(t + 1));
    let scale = (l_s.clone() - S::from_count(t)) / r_s.clone();
    let edge = scale.clone() * ((r_s.clone() - S::one()) / l_s + S::one() / t1.clone());
    let cloud_share = (S::one() - mu_t.clone() * r_s).positive_part();
    let load = scale * cloud_share / t1;
    NdtValue::new(load, edge, rho, SchemeId::Mdsia, branch)
}

/// Delivery time counted from an actual run: the edge time is the busiest
/// UE's number of signal dimensions (desired messages plus aligned
/// interference groups) times the message length, summed over chunk parts;
/// the fronthaul load is the cloud message volume per EN.
pub fn structural_ndt(
    t: &NetworkTopology,
    p: &MdsiaPlacement,
    cloud: &[MulticastMessage],
    local: &[MulticastMessage],
    report: &AlignmentReport,
    rho: &Rational,
) -> Result<NdtValue<Rational>> {
    let f = Rational::from_integer(p.file_size_bits as i128);
    let mut desired = vec![BTreeSet::new(); t.k()];
    for m in cloud.iter().chain(local) {
        for (k, _) in &m.members {
            desired[k - 1].insert(m.id.clone());
        }
    }
    let dims = report
        .per_ue
        .iter()
        .map(|u| desired[u.ue - 1].len() + u.groups)
        .max()
        .unwrap_or(0);
    let message_bits: u64 = if dims == 0 { 0 } else { p.segments.iter().map(|s| 8 * s.piece_bytes as u64).sum() };
    let edge = Rational::from_integer((dims as u64 * message_bits) as i128) / f;
    let mut per_en = vec![0u64; t.h()];
    for m in cloud {
        per_en[m.id.en - 1] += 8 * m.payload.len() as u64;
    }
    let max_en = per_en.into_iter().max().unwrap_or(0);
    let load = Rational::from_integer(max_en as i128) / f;
    NdtValue::new(load, edge, rho, SchemeId::Mdsia, "structural")
}
