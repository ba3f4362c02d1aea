//! Labeled cache contents shared by all schemes.

use std::collections::{BTreeMap, BTreeSet};

/// Which part of a file a piece belongs to when the ENs cache part of the
/// library. `En` is served from EN caches, `Cloud` over the fronthaul.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Part {
    En,
    Cloud,
}

impl Part {
    pub fn tag(self) -> &'static str {
        match self {
            Part::En => "en",
            Part::Cloud => "cloud",
        }
    }
}

/// Cache contents of every UE and EN, plus the payload of every piece in the
/// system keyed by label.
#[derive(Debug, Clone)]
pub struct PlacementState<L: Ord> {
    pub ue_caches: Vec<BTreeSet<L>>,
    pub en_caches: Vec<BTreeSet<L>>,
    pub store: BTreeMap<L, Vec<u8>>,
}

impl<L: Ord + Clone> PlacementState<L> {
    pub fn new(k: usize, h: usize) -> Self {
        Self {
            ue_caches: vec![BTreeSet::new(); k],
            en_caches: vec![BTreeSet::new(); h],
            store: BTreeMap::new(),
        }
    }

    /// Cache of UE `k` (1-based).
    pub fn ue_cache(&self, k: usize) -> &BTreeSet<L> {
        &self.ue_caches[k - 1]
    }

    pub fn en_cache(&self, i: usize) -> &BTreeSet<L> {
        &self.en_caches[i - 1]
    }

    pub fn payload(&self, label: &L) -> &[u8] {
        &self.store[label]
    }

    fn bits_of(&self, set: &BTreeSet<L>) -> u64 {
        set.iter().map(|l| 8 * self.store[l].len() as u64).sum()
    }

    pub fn ue_bits(&self, k: usize) -> u64 {
        self.bits_of(self.ue_cache(k))
    }

    pub fn en_bits(&self, i: usize) -> u64 {
        self.bits_of(self.en_cache(i))
    }
}
