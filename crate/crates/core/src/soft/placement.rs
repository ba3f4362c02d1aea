use std::fmt;

use num_traits::{One, Zero};

use crate::combinatorics::{binomial_usize, fmt_set, subsets};
use crate::error::{Error, Result};
use crate::library::{split_bytes, Library};
use crate::placement::{Part, PlacementState};
use crate::topology::NetworkTopology;
use crate::Rational;

/// Subfile `W_{n,T}` of one part of file `n`. `part` is `None` when the whole
/// file is a single part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SoftLabel {
    pub file: usize,
    pub subset: Vec<usize>,
    pub part: Option<Part>,
}

/// Renders as `W[1|{2,3}]`, or `W[1|{2,3}|en]` for a split file.
impl fmt::Display for SoftLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.part {
            None => write!(f, "W[{}|{}]", self.file, fmt_set(&self.subset)),
            Some(p) => write!(f, "W[{}|{}|{}]", self.file, fmt_set(&self.subset), p.tag()),
        }
    }
}

/// One part of every file, cut into `C(K, t)` subfiles in lexicographic
/// order. `Part::En` is the part every EN caches; `Part::Cloud` is the rest.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SoftSegment {
    pub part: Option<Part>,
    /// Held by every EN, so delivery needs no fronthaul.
    pub local: bool,
    pub t: usize,
    pub subfile_bytes: usize,
    /// Zero-forcing chunks per missing subfile (1 unless `t < K - H`).
    pub chunks_per_subfile: usize,
}

impl SoftSegment {
    pub fn chunk_bytes(&self) -> usize {
        self.subfile_bytes / self.chunks_per_subfile
    }
}

#[derive(Debug, Clone)]
pub struct SoftPlacement {
    pub k: usize,
    pub h: usize,
    pub n_files: usize,
    pub file_size_bits: u64,
    pub segments: Vec<SoftSegment>,
    pub state: PlacementState<SoftLabel>,
}

pub(crate) fn chunks_per_subfile(k: usize, h: usize, t: usize) -> usize {
    if t >= k || t + h >= k {
        1
    } else {
        binomial_usize(k - t - 1, h - 1)
    }
}

/// Parts as `(tag, local, t, bits)`, with zero-size parts already dropped.
pub(crate) fn build_placement(
    lib: &Library,
    topo: &NetworkTopology,
    parts: &[(Option<Part>, bool, usize, u64)],
) -> Result<SoftPlacement> {
    let (k, h) = (topo.k(), topo.h());
    let mut segments = Vec::new();
    for &(part, local, t, bits) in parts {
        let per = chunks_per_subfile(k, h, t);
        let subfile_bytes = split_bytes(bits, binomial_usize(k, t) * per, "file part")? * per;
        segments.push(SoftSegment { part, local, t, subfile_bytes, chunks_per_subfile: per });
    }
    let mut state = PlacementState::new(k, h);
    for n in 1..=lib.n_files() {
        let file = lib.file(n);
        let mut offset = 0;
        for seg in &segments {
            for sub in subsets(k, seg.t) {
                let label = SoftLabel { file: n, subset: sub.clone(), part: seg.part };
                for &u in &sub {
                    state.ue_caches[u - 1].insert(label.clone());
                }
                if seg.local {
                    for en in state.en_caches.iter_mut() {
                        en.insert(label.clone());
                    }
                }
                state.store.insert(label, file[offset..offset + seg.subfile_bytes].to_vec());
                offset += seg.subfile_bytes;
            }
        }
        debug_assert_eq!(offset, file.len());
    }
    Ok(SoftPlacement { k, h, n_files: lib.n_files(), file_size_bits: lib.file_size_bits(), segments, state })
}

pub(crate) fn integral_param(name: &'static str, value: Rational, max: usize) -> Result<usize> {
    if !value.is_integer() || value < Rational::zero() || value > Rational::from_integer(max as i128) {
        return Err(Error::NonIntegralCacheParameter { name, value: value.to_string() });
    }
    Ok(value.to_integer() as usize)
}

pub(crate) fn part_bits(lib: &Library, frac: &Rational) -> Result<u64> {
    let bits = *frac * Rational::from_integer(lib.file_size_bits() as i128);
    if !bits.is_integer() {
        return Err(Error::IndivisibleFileSize {
            bits: lib.file_size_bits(),
            reason: format!("a {frac} share is not a whole number of bits"),
        });
    }
    Ok(bits.to_integer() as u64)
}

/// Splits every file into an EN part (`mu_T F` bits) and a cloud part, then
/// caches subfile `W_{n,T}` of both parts at every UE in `T`, `|T| = mu_R K`.
pub fn soft_place(lib: &Library, topo: &NetworkTopology, mu_r: &Rational, mu_t: &Rational) -> Result<SoftPlacement> {
    crate::mdsia::check_fraction("mu_T", mu_t)?;
    let k = topo.k();
    let t = integral_param("t_U", *mu_r * Rational::from_integer(k as i128), k)?;
    let mut parts = Vec::new();
    let split = !mu_t.is_zero() && *mu_t != Rational::one();
    if !mu_t.is_zero() {
        parts.push((split.then_some(Part::En), true, t, part_bits(lib, mu_t)?));
    }
    if *mu_t != Rational::one() {
        parts.push((split.then_some(Part::Cloud), false, t, part_bits(lib, &(Rational::one() - mu_t))?));
    }
    build_placement(lib, topo, &parts)
}

/// Labels UE `k` still needs, per UE, in segment then lexicographic order.
pub fn soft_missing(demand: &[usize], p: &SoftPlacement) -> Vec<Vec<SoftLabel>> {
    (1..=p.k)
        .map(|k| {
            p.segments
                .iter()
                .flat_map(|seg| {
                    subsets(p.k, seg.t)
                        .filter(move |s| !s.contains(&k))
                        .map(move |s| SoftLabel { file: demand[k - 1], subset: s, part: seg.part })
                })
                .collect()
        })
        .collect()
}

/// Smallest file size in bits for which every part, subfile and
/// zero-forcing chunk is a whole number of bytes, given `mu_T = p/q`.
pub fn file_size_quantum(k: usize, h: usize, t: usize, mu_t: &Rational) -> u64 {
    let pieces = binomial_usize(k, t) * chunks_per_subfile(k, h, t);
    8 * pieces as u64 * *mu_t.denom() as u64
}
