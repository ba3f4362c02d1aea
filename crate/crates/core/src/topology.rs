//! H x K combination-network connectivity.
//!
//! UE `j` (1-based) attaches to the `j`-th `r`-subset of the EN set `[H]` in
//! lexicographic order, so UE 1 is served by ENs `{1, ..., r}`. All external
//! indices are 1-based.

use std::fmt;

use crate::combinatorics::{binomial, binomial_usize, subsets};
use crate::error::{Error, Result};

/// Upper bound on the number of UEs accepted by [`NetworkTopology::new`].
pub const MAX_UES: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NetworkTopology {
    h: usize,
    r: usize,
    k: usize,
    l: usize,
    ue_to_ens: Vec<Vec<usize>>,
    en_to_ues: Vec<Vec<usize>>,
}

impl NetworkTopology {
    pub fn new(h: usize, r: usize) -> Result<Self> {
        if r < 1 || r >= h {
            return Err(Error::InvalidConnectivity { h, r });
        }
        if binomial(h, r) > MAX_UES as u128 {
            return Err(Error::TooManyUsers { h, r, limit: MAX_UES });
        }
        let ue_to_ens: Vec<Vec<usize>> = subsets(h, r).collect();
        let mut en_to_ues = vec![Vec::new(); h];
        for (k0, ens) in ue_to_ens.iter().enumerate() {
            for &i in ens {
                en_to_ues[i - 1].push(k0 + 1);
            }
        }
        Ok(Self {
            h,
            r,
            k: ue_to_ens.len(),
            l: binomial_usize(h - 1, r - 1),
            ue_to_ens,
            en_to_ues,
        })
    }

    /// Number of edge nodes `H`.
    pub fn h(&self) -> usize {
        self.h
    }

    /// Receiver connectivity `r`.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Number of UEs `K = C(H, r)`.
    pub fn k(&self) -> usize {
        self.k
    }

    /// UEs per EN, `L = C(H-1, r-1)`.
    pub fn l(&self) -> usize {
        self.l
    }

    /// Ascending EN set `N_k` of UE `k`.
    pub fn ens_of(&self, k: usize) -> &[usize] {
        &self.ue_to_ens[k - 1]
    }

    /// Ascending UE set `K_i` of EN `i`.
    pub fn ues_of(&self, i: usize) -> &[usize] {
        &self.en_to_ues[i - 1]
    }

    pub fn ues(&self) -> impl Iterator<Item = usize> {
        1..=self.k
    }

    pub fn ens(&self) -> impl Iterator<Item = usize> {
        1..=self.h
    }

    /// Relative order of UE `k` among the UEs served by EN `i`, or `None` when
    /// EN `i` does not serve UE `k`.
    pub fn index(&self, i: usize, k: usize) -> Result<Option<usize>> {
        self.check_en(i)?;
        self.check_ue(k)?;
        Ok(self.index_unchecked(i, k))
    }

    pub(crate) fn index_unchecked(&self, i: usize, k: usize) -> Option<usize> {
        self.en_to_ues[i - 1].binary_search(&k).ok().map(|p| p + 1)
    }

    /// UE at position `pos` (1-based) of `K_i`.
    pub fn ue_at(&self, i: usize, pos: usize) -> usize {
        self.en_to_ues[i - 1][pos - 1]
    }

    pub fn check_en(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.h {
            return Err(Error::OutOfRange { what: "EN index", value: i, max: self.h });
        }
        Ok(())
    }

    pub fn check_ue(&self, k: usize) -> Result<()> {
        if k == 0 || k > self.k {
            return Err(Error::OutOfRange { what: "UE index", value: k, max: self.k });
        }
        Ok(())
    }
}

/// Adjacency listing, one line per EN followed by one line per UE.
impl fmt::Display for NetworkTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "H={} r={} K={} L={}", self.h, self.r, self.k, self.l)?;
        for i in self.ens() {
            let ues: Vec<String> = self.ues_of(i).iter().map(|k| format!("UE{k}")).collect();
            writeln!(f, "EN{i}: {}", ues.join(" "))?;
        }
        for k in self.ues() {
            let ens: Vec<String> = self.ens_of(k).iter().map(|i| format!("EN{i}")).collect();
            writeln!(f, "UE{k}: {}", ens.join(" "))?;
        }
        Ok(())
    }
}
