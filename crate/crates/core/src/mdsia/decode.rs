use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::library::Library;
use crate::mds::{CodedChunk, MdsCode};
use crate::placement::Part;
use crate::topology::NetworkTopology;

use super::delivery::{MessageId, MulticastMessage};
use super::placement::{MdsiaPlacement, PieceLabel};

#[derive(Debug, Clone, PartialEq)]
pub struct UeVerdict {
    pub ue: usize,
    pub result: Result<()>,
}

/// Recovers every UE's requested file from its cache and the messages of its
/// ENs, then compares against the library byte for byte.
pub fn mdsia_decode_check(
    lib: &Library,
    demand: &[usize],
    p: &MdsiaPlacement,
    cloud: &[MulticastMessage],
    local: &[MulticastMessage],
    t: &NetworkTopology,
) -> Vec<UeVerdict> {
    let index: HashMap<(&MessageId, Option<Part>), &MulticastMessage> =
        cloud.iter().chain(local).map(|m| ((&m.id, m.part), m)).collect();
    let code = MdsCode::new(t.h(), t.r());
    t.ues()
        .map(|k| {
            let result = code
                .clone()
                .and_then(|code| decode_ue(k, lib, demand, p, &index, t, &code));
            UeVerdict { ue: k, result }
        })
        .collect()
}

fn decode_ue(
    k: usize,
    lib: &Library,
    demand: &[usize],
    p: &MdsiaPlacement,
    index: &HashMap<(&MessageId, Option<Part>), &MulticastMessage>,
    t: &NetworkTopology,
    code: &MdsCode,
) -> Result<()> {
    let file = demand[k - 1];
    let cache = p.state.ue_cache(k);
    let mut chunks = Vec::with_capacity(t.r());
    for &i in t.ens_of(k) {
        let pos = t.index_unchecked(i, k).expect("attached");
        let mut payload = Vec::new();
        for seg in &p.segments {
            for sub in p.chunk_subsets() {
                let label = PieceLabel { file, chunk: i, subset: sub.clone(), part: seg.part };
                if sub.contains(&pos) {
                    if !cache.contains(&label) {
                        return Err(Error::PeelFailure { ue: k, message: "cache".into(), missing: label.to_string() });
                    }
                    payload.extend_from_slice(p.state.payload(&label));
                    continue;
                }
                let mut s = sub.clone();
                s.push(pos);
                s.sort_unstable();
                let id = MessageId::new(i, s);
                let msg = index.get(&(&id, seg.part)).ok_or_else(|| Error::PeelFailure {
                    ue: k,
                    message: id.to_string(),
                    missing: "message not delivered".into(),
                })?;
                let mut piece = msg.payload.clone();
                for (u, other) in &msg.members {
                    if *u == k {
                        continue;
                    }
                    if !cache.contains(other) {
                        return Err(Error::PeelFailure { ue: k, message: id.to_string(), missing: other.to_string() });
                    }
                    for (x, b) in piece.iter_mut().zip(p.state.payload(other)) {
                        *x ^= b;
                    }
                }
                payload.extend_from_slice(&piece);
            }
        }
        chunks.push(CodedChunk { file_id: file, chunk_id: i, payload });
    }
    if code.decode(&chunks)? != lib.file(file) {
        return Err(Error::ReconstructionMismatch { ue: k, file });
    }
    Ok(())
}
