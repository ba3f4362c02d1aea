use std::collections::HashMap;

use nalgebra::ComplexField;

use crate::channel::{draw_channel, make_beamformer, BeamMode, Beamformer, ChannelMatrix};
use crate::combinatorics::subsets;
use crate::error::{Error, Result};
use crate::library::Library;
use crate::scalar::Real;
use crate::topology::NetworkTopology;

use super::placement::{SoftLabel, SoftPlacement};
use super::schedule::DeliveryStep;

#[derive(Debug, Clone, PartialEq)]
pub struct SimReport {
    pub seed: u64,
    /// Channel draws used, including the successful one.
    pub draws: usize,
    pub steps: usize,
    pub streams: usize,
    pub beamformers: usize,
    /// Largest `|h_j . v|` at a UE the stream was nulled at.
    pub max_residual: f64,
    /// Smallest `|h_k . v|` at a stream's intended UE.
    pub min_desired: f64,
}

/// Runs every delivery step over channel `ch`: each receiver must see its own
/// stream above the desired floor, and every other stream either cancelled
/// from its cache or nulled below the zero-forcing tolerance. Afterwards each
/// UE reassembles its file and it is compared with the library.
pub fn soft_simulate<T: Real>(
    lib: &Library,
    demand: &[usize],
    p: &SoftPlacement,
    steps: &[DeliveryStep],
    ch: &ChannelMatrix<T>,
) -> Result<SimReport> {
    let mut beams: HashMap<Vec<usize>, Beamformer<T>> = HashMap::new();
    let mut received: HashMap<(usize, SoftLabel), Vec<Option<&[u8]>>> = HashMap::new();
    let (mut max_residual, mut min_desired, mut streams) = (0.0f64, f64::INFINITY, 0);
    for st in steps {
        let seg = &p.segments[st.segment];
        for e in &st.items {
            if !beams.contains_key(&e.pi) {
                let mode = if e.pi.len() + 1 == p.h { BeamMode::SingleNull } else { BeamMode::SumOfBasis };
                beams.insert(e.pi.clone(), make_beamformer(ch, &e.pi, mode)?);
            }
        }
        for j in st.receivers() {
            let cache = p.state.ue_cache(j);
            for e in &st.items {
                let mag = ch.coefficient(j, &beams[&e.pi].v).modulus().to_f64().unwrap_or(f64::NAN);
                if e.ue == j {
                    if !(mag >= T::desired_floor().to_f64().unwrap()) {
                        return Err(Error::DegenerateChannel { ue: j, magnitude: mag });
                    }
                    min_desired = min_desired.min(mag);
                } else if cache.contains(&e.label) {
                    continue;
                } else if e.pi.contains(&j) && mag <= T::zf_tolerance().to_f64().unwrap() {
                    max_residual = max_residual.max(mag);
                } else {
                    return Err(Error::InterferenceLeak { ue: j, label: e.label.to_string(), magnitude: mag });
                }
            }
        }
        let cb = seg.chunk_bytes();
        for e in &st.items {
            let payload = p.state.payload(&e.label);
            let slots = received
                .entry((e.ue, e.label.clone()))
                .or_insert_with(|| vec![None; seg.chunks_per_subfile]);
            slots[e.chunk] = Some(&payload[e.chunk * cb..(e.chunk + 1) * cb]);
            streams += 1;
        }
    }
    for k in 1..=p.k {
        let file = demand[k - 1];
        let cache = p.state.ue_cache(k);
        let mut out = Vec::with_capacity(lib.file_size_bytes());
        for seg in &p.segments {
            for sub in subsets(p.k, seg.t) {
                let label = SoftLabel { file, subset: sub, part: seg.part };
                if cache.contains(&label) {
                    out.extend_from_slice(p.state.payload(&label));
                    continue;
                }
                let slots = received.get(&(k, label.clone()));
                for c in 0..seg.chunks_per_subfile {
                    match slots.and_then(|s| s[c]) {
                        Some(bytes) => out.extend_from_slice(bytes),
                        None => {
                            return Err(Error::PeelFailure {
                                ue: k,
                                message: "zero-forced delivery".into(),
                                missing: format!("{label} chunk {c}"),
                            })
                        }
                    }
                }
            }
        }
        if out != lib.file(file) {
            return Err(Error::ReconstructionMismatch { ue: k, file });
        }
    }
    Ok(SimReport {
        seed: ch.seed,
        draws: 1,
        steps: steps.len(),
        streams,
        beamformers: beams.len(),
        max_residual,
        min_desired: if min_desired.is_finite() { min_desired } else { 0.0 },
    })
}

/// [`soft_simulate`] over fresh channel draws until one is non-degenerate.
/// Draw `a` uses seed `seed + a * 0x9E37_79B9`; after `max_draws` the last
/// error is returned.
pub fn simulate_with_redraw<T: Real>(
    lib: &Library,
    demand: &[usize],
    p: &SoftPlacement,
    steps: &[DeliveryStep],
    topo: &NetworkTopology,
    seed: u64,
    max_draws: usize,
) -> Result<SimReport> {
    let mut last = None;
    for a in 0..max_draws.max(1) {
        let s = seed.wrapping_add(a as u64 * 0x9E37_79B9);
        let ch: ChannelMatrix<T> = draw_channel(topo, s);
        match soft_simulate(lib, demand, p, steps, &ch) {
            Ok(mut rep) => {
                rep.draws = a + 1;
                return Ok(rep);
            }
            Err(e @ (Error::DegenerateChannel { .. } | Error::EmptyNullSpace { .. })) => {
                log::warn!("channel seed {s} is degenerate ({e}); redrawing");
                last = Some(e);
            }
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one draw"))
}
