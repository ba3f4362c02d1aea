use std::fmt;

use crate::combinatorics::{difference, fmt_set, subsets};
use crate::error::Result;
use crate::library::validate_demand;
use crate::placement::Part;
use crate::topology::NetworkTopology;

use super::placement::{MdsiaPlacement, PieceLabel};

/// `X_i^S`: the message EN `i` sends for position subset `S`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MessageId {
    pub en: usize,
    pub subset: Vec<usize>,
}

impl MessageId {
    pub fn new(en: usize, subset: Vec<usize>) -> Self {
        Self { en, subset }
    }
}

/// Renders as `X[1|{2,3}]`.
impl fmt::Display for MessageId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "X[{}|{}]", self.en, fmt_set(&self.subset))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MulticastMessage {
    pub id: MessageId,
    pub part: Option<Part>,
    /// `(UE k, piece wanted by k)` for every `k` with `Index(i, k)` in `S`.
    pub members: Vec<(usize, PieceLabel)>,
    pub payload: Vec<u8>,
}

fn build(demand: &[usize], p: &MdsiaPlacement, t: &NetworkTopology, local: bool) -> Result<Vec<MulticastMessage>> {
    validate_demand(demand, t.k(), p.n_files)?;
    let mut out = Vec::new();
    for seg in p.segments.iter().filter(|s| s.local == local) {
        for i in t.ens() {
            for s in subsets(p.l, p.t_e + 1) {
                let mut payload = vec![0u8; seg.piece_bytes];
                let members: Vec<(usize, PieceLabel)> = s
                    .iter()
                    .map(|&pos| {
                        let k = t.ue_at(i, pos);
                        let label = PieceLabel {
                            file: demand[k - 1],
                            chunk: i,
                            subset: difference(&s, &[pos]),
                            part: seg.part,
                        };
                        for (x, b) in payload.iter_mut().zip(p.state.payload(&label)) {
                            *x ^= b;
                        }
                        (k, label)
                    })
                    .collect();
                out.push(MulticastMessage { id: MessageId::new(i, s), part: seg.part, members, payload });
            }
        }
    }
    Ok(out)
}

/// Coded multicast messages the cloud sends each EN over the fronthaul. When
/// the ENs cache part of every chunk only the cloud part is covered here.
pub fn mdsia_fronthaul(demand: &[usize], p: &MdsiaPlacement, t: &NetworkTopology) -> Result<Vec<MulticastMessage>> {
    build(demand, p, t, false)
}

/// Messages each EN forms from its own cache.
pub fn mdsia_local_multicast(
    demand: &[usize],
    p: &MdsiaPlacement,
    t: &NetworkTopology,
) -> Result<Vec<MulticastMessage>> {
    build(demand, p, t, true)
}
