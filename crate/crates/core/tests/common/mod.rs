#![allow(dead_code)]

use cachenet_core::library::identity_demand;
use cachenet_core::mdsia::{
    algorithm1, build_interference_matrices, certify_alignment, mdsia_decode_check, mdsia_fronthaul,
    mdsia_local_multicast, mdsia_place, AlignmentReport, MdsiaPlacement, MulticastMessage, UeVerdict,
};
use cachenet_core::soft::{soft_place, soft_schedule, DeliveryStep, SoftPlacement};
use cachenet_core::{mdsia, soft, zf, Library, NetworkTopology, Rational, Result};

pub fn q(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

/// The small networks every scheme is exercised on.
pub const CONFIGS: [(usize, usize); 4] = [(3, 2), (4, 2), (5, 2), (4, 3)];

/// Integral `t_E` values where MDS-IA is defined.
pub fn mdsia_params(topo: &NetworkTopology) -> Vec<usize> {
    let l = topo.l();
    (0..=l).filter(|t| topo.r() == 2 || t + 2 >= l).collect()
}

/// EN cache sizes covering the no-cache, split and EN-local branches.
pub fn mdsia_mu_t(r: usize) -> Vec<Rational> {
    vec![q(0, 1), q(1, 2 * r as i128), q(1, r as i128)]
}

pub struct MdsiaRun {
    pub topo: NetworkTopology,
    pub lib: Library,
    pub placement: MdsiaPlacement,
    pub cloud: Vec<MulticastMessage>,
    pub local: Vec<MulticastMessage>,
    pub report: AlignmentReport,
}

impl MdsiaRun {
    pub fn decode(&self) -> Vec<UeVerdict> {
        mdsia_decode_check(
            &self.lib,
            &identity_demand(self.topo.k()),
            &self.placement,
            &self.cloud,
            &self.local,
            &self.topo,
        )
    }
}

pub fn run_mdsia(h: usize, r: usize, t_e: usize, mu_t: &Rational, seed: u64) -> Result<MdsiaRun> {
    let topo = NetworkTopology::new(h, r)?;
    let mu_r = q(t_e as i128, topo.l() as i128);
    let lib = Library::random(topo.k(), mdsia::file_size_quantum(&topo, t_e, mu_t), seed)?;
    let placement = mdsia_place(&lib, &topo, &mu_r, mu_t)?;
    let demand = identity_demand(topo.k());
    let cloud = mdsia_fronthaul(&demand, &placement, &topo)?;
    let local = mdsia_local_multicast(&demand, &placement, &topo)?;
    let mats = build_interference_matrices(&topo, t_e);
    let plan = algorithm1(&topo, t_e, &mats)?;
    let report = certify_alignment(&plan, &topo, t_e, &mats);
    Ok(MdsiaRun { topo, lib, placement, cloud, local, report })
}

pub struct SoftRun {
    pub topo: NetworkTopology,
    pub lib: Library,
    pub placement: SoftPlacement,
    pub steps: Vec<DeliveryStep>,
}

pub fn run_soft(h: usize, r: usize, t: usize, mu_t: &Rational, seed: u64) -> Result<SoftRun> {
    let topo = NetworkTopology::new(h, r)?;
    let k = topo.k();
    let lib = Library::random(k, soft::file_size_quantum(k, h, t, mu_t), seed)?;
    let placement = soft_place(&lib, &topo, &q(t as i128, k as i128), mu_t)?;
    let steps = soft_schedule(&identity_demand(k), &placement)?;
    Ok(SoftRun { topo, lib, placement, steps })
}

/// `mu_R` giving an integral `t_R` for zero-forcing at EN cache `mu_T`.
pub fn zf_mu_r(k: usize, t_r: usize, mu_t: &Rational) -> Rational {
    q(1, 1) - mu_t + *mu_t * q(t_r as i128, k as i128)
}

pub fn run_zf(h: usize, r: usize, t_r: usize, mu_t: &Rational, seed: u64) -> Result<SoftRun> {
    let topo = NetworkTopology::new(h, r)?;
    let k = topo.k();
    let lib = Library::random(k, soft::file_size_quantum(k, h, t_r, mu_t), seed)?;
    let placement = zf::zf_place(&lib, &topo, &zf_mu_r(k, t_r, mu_t), mu_t)?;
    let steps = soft_schedule(&identity_demand(k), &placement)?;
    Ok(SoftRun { topo, lib, placement, steps })
}
