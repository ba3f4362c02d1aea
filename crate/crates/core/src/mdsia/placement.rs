use std::fmt;

use num_traits::{One, Zero};

use crate::combinatorics::{binomial_usize, subsets};
use crate::error::{Error, Result};
use crate::library::{split_bytes, Library};
use crate::mds::MdsCode;
use crate::placement::{Part, PlacementState};
use crate::topology::NetworkTopology;
use crate::Rational;

/// Piece `f^i_{n,T}`; `part` is set only when the chunk is split between an
/// EN-cached part and a cloud part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PieceLabel {
    pub file: usize,
    pub chunk: usize,
    pub subset: Vec<usize>,
    pub part: Option<Part>,
}

impl fmt::Display for PieceLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::fmt_piece(Some(self.file), self.chunk, &self.subset, self.part))
    }
}

/// A contiguous region of every coded chunk. Chunks are laid out as the EN
/// part followed by the cloud part; each segment is cut into `C(L, t_E)`
/// pieces in lexicographic subset order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segment {
    pub part: Option<Part>,
    /// Served from EN caches rather than the fronthaul.
    pub local: bool,
    pub piece_bytes: usize,
}

#[derive(Debug, Clone)]
pub struct MdsiaPlacement {
    pub t_e: usize,
    pub l: usize,
    pub n_files: usize,
    pub file_size_bits: u64,
    pub segments: Vec<Segment>,
    pub state: PlacementState<PieceLabel>,
}

impl MdsiaPlacement {
    pub fn chunk_subsets(&self) -> impl Iterator<Item = Vec<usize>> {
        subsets(self.l, self.t_e)
    }
}

/// Integral `t_E = mu_R * L`.
pub(crate) fn integral_te(mu_r: &Rational, l: usize) -> Result<usize> {
    let t = mu_r * Rational::from_integer(l as i128);
    if !t.is_integer() || t < Rational::zero() || t > Rational::from_integer(l as i128) {
        return Err(Error::NonIntegralCacheParameter { name: "t_E", value: t.to_string() });
    }
    Ok(t.to_integer() as usize)
}

fn segments_for(lib_bits: u64, r: usize, l: usize, t_e: usize, mu_t: &Rational) -> Result<Vec<Segment>> {
    if *mu_t < Rational::zero() || *mu_t > Rational::one() {
        return Err(Error::InvalidParameter(format!("mu_T = {mu_t} outside [0, 1]")));
    }
    let pieces = binomial_usize(l, t_e);
    if lib_bits % r as u64 != 0 {
        return Err(Error::IndivisibleFileSize { bits: lib_bits, reason: format!("not divisible by r = {r}") });
    }
    let chunk_bits = lib_bits / r as u64;
    let r_q = Rational::from_integer(r as i128);
    if mu_t.is_zero() || *mu_t * r_q >= Rational::one() {
        let local = !mu_t.is_zero();
        return Ok(vec![Segment { part: None, local, piece_bytes: split_bytes(chunk_bits, pieces, "chunk")? }]);
    }
    let en_bits = *mu_t * Rational::from_integer(lib_bits as i128);
    if !en_bits.is_integer() {
        return Err(Error::IndivisibleFileSize {
            bits: lib_bits,
            reason: format!("EN part mu_T * F = {en_bits} is not a whole number of bits"),
        });
    }
    let en_bits = en_bits.to_integer() as u64;
    Ok(vec![
        Segment { part: Some(Part::En), local: true, piece_bytes: split_bytes(en_bits, pieces, "EN part")? },
        Segment {
            part: Some(Part::Cloud),
            local: false,
            piece_bytes: split_bytes(chunk_bits - en_bits, pieces, "cloud part")?,
        },
    ])
}

/// A file size in bits for which every piece of every chunk part is a whole
/// number of bytes, given `mu_T = p/q`.
pub fn file_size_quantum(t: &NetworkTopology, t_e: usize, mu_t: &Rational) -> u64 {
    8 * (t.r() * binomial_usize(t.l(), t_e)) as u64 * *mu_t.denom() as u64
}

/// MDS-codes every file and distributes pieces to UE and EN caches.
pub fn mdsia_place(lib: &Library, t: &NetworkTopology, mu_r: &Rational, mu_t: &Rational) -> Result<MdsiaPlacement> {
    let l = t.l();
    let t_e = integral_te(mu_r, l)?;
    let segments = segments_for(lib.file_size_bits(), t.r(), l, t_e, mu_t)?;
    let code = MdsCode::new(t.h(), t.r())?;
    let subs: Vec<Vec<usize>> = subsets(l, t_e).collect();
    let mut state = PlacementState::new(t.k(), t.h());
    for n in 1..=lib.n_files() {
        for chunk in code.encode(n, lib.file(n))? {
            let i = chunk.chunk_id;
            let mut offset = 0;
            for seg in &segments {
                for sub in &subs {
                    let label = PieceLabel { file: n, chunk: i, subset: sub.clone(), part: seg.part };
                    let bytes = chunk.payload[offset..offset + seg.piece_bytes].to_vec();
                    offset += seg.piece_bytes;
                    for &pos in sub {
                        state.ue_caches[t.ue_at(i, pos) - 1].insert(label.clone());
                    }
                    if seg.local {
                        state.en_caches[i - 1].insert(label.clone());
                    }
                    state.store.insert(label, bytes);
                }
            }
            debug_assert_eq!(offset, chunk.payload.len());
        }
    }
    Ok(MdsiaPlacement { t_e, l, n_files: lib.n_files(), file_size_bits: lib.file_size_bits(), segments, state })
}
