//! MDS-coded placement with interference-aligned edge delivery.
//!
//! Files are MDS-coded into `H` chunks, EN `i` serves chunk `i`, and the UEs
//! attached to EN `i` cache pieces of chunk `i` indexed by `t_E`-subsets of
//! their positions at that EN. Delivery XORs pieces into coded multicast
//! messages; at each UE the interfering messages are grouped into aligned
//! subspaces by the greedy row sweep in [`algorithm1`].

mod alignment;
mod decode;
mod delivery;
mod ndt;
mod placement;

pub use alignment::{
    algorithm1, build_interference_matrices, certify_alignment, AlignmentPlan, AlignmentReport, InterferenceMatrix,
    UeAlignment,
};
pub use decode::{mdsia_decode_check, UeVerdict};
pub use delivery::{mdsia_fronthaul, mdsia_local_multicast, MessageId, MulticastMessage};
pub use ndt::{mdsia_ndt, structural_ndt};

pub(crate) use ndt::check_fraction;
pub(crate) use placement::integral_te;
pub use placement::{file_size_quantum, mdsia_place, MdsiaPlacement, PieceLabel, Segment};

use crate::combinatorics::fmt_set;

/// `f[n|i|{T}]`, with the part appended (`f[n|i|{T}|cloud]`) when the chunk is
/// split between EN and cloud.
pub(crate) fn fmt_piece(file: Option<usize>, chunk: usize, subset: &[usize], part: Option<crate::Part>) -> String {
    let n = file.map_or_else(|| "n".to_string(), |n| n.to_string());
    match part {
        None => format!("f[{n}|{chunk}|{}]", fmt_set(subset)),
        Some(p) => format!("f[{n}|{chunk}|{}|{}]", fmt_set(subset), p.tag()),
    }
}
