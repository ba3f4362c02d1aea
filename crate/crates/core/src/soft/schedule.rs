use crate::combinatorics::{difference, rank, subsets, subsets_of};
use crate::error::{Error, Result};

use super::placement::{SoftLabel, SoftPlacement, SoftSegment};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleCase {
    /// `t >= K - H`: whole subfiles, one per UE per step.
    WholeSubfile,
    /// `t < K - H`: subfiles cut into chunks indexed by `H - 1` UEs to null.
    Chunked,
}

/// One zero-forced stream: chunk `chunk` of subfile `label`, intended for UE
/// `ue` and nulled at every UE in `pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeliveryItem {
    pub ue: usize,
    pub label: SoftLabel,
    pub pi: Vec<usize>,
    pub chunk: usize,
}

/// Streams sent simultaneously in one slot. Every receiver is either the
/// target of an item, caches it, or sits in its `pi`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeliveryStep {
    pub segment: usize,
    pub case: ScheduleCase,
    /// UEs left out of the step (empty for whole-subfile steps).
    pub idle: Vec<usize>,
    pub items: Vec<DeliveryItem>,
}

impl DeliveryStep {
    pub fn receivers(&self) -> impl Iterator<Item = usize> + '_ {
        self.items.iter().map(|e| e.ue)
    }
}

/// Builds the full delivery schedule, segment by segment, for the UEs'
/// missing subfiles.
pub fn soft_schedule(demand: &[usize], p: &SoftPlacement) -> Result<Vec<DeliveryStep>> {
    if demand.len() != p.k {
        return Err(Error::DemandLengthMismatch { expected: p.k, got: demand.len() });
    }
    let mut steps = Vec::new();
    for (s, seg) in p.segments.iter().enumerate() {
        if seg.t >= p.k {
            continue;
        }
        if seg.t + p.h >= p.k {
            whole_subfile_steps(demand, p.k, s, seg, &mut steps);
        } else {
            chunked_steps(demand, p.k, p.h, s, seg, &mut steps);
        }
    }
    Ok(steps)
}

fn whole_subfile_steps(demand: &[usize], k: usize, s: usize, seg: &SoftSegment, out: &mut Vec<DeliveryStep>) {
    let all: Vec<usize> = (1..=k).collect();
    let missing: Vec<Vec<Vec<usize>>> = (1..=k)
        .map(|u| subsets_of(&difference(&all, &[u]), seg.t).collect())
        .collect();
    for step in 0..missing[0].len() {
        let items = (1..=k)
            .map(|u| {
                let subset = missing[u - 1][step].clone();
                let mut known = subset.clone();
                known.push(u);
                known.sort_unstable();
                DeliveryItem {
                    ue: u,
                    pi: difference(&all, &known),
                    label: SoftLabel { file: demand[u - 1], subset, part: seg.part },
                    chunk: 0,
                }
            })
            .collect();
        out.push(DeliveryStep { segment: s, case: ScheduleCase::WholeSubfile, idle: Vec::new(), items });
    }
}

fn chunked_steps(demand: &[usize], k: usize, h: usize, s: usize, seg: &SoftSegment, out: &mut Vec<DeliveryStep>) {
    let all: Vec<usize> = (1..=k).collect();
    for idle in subsets(k, k - seg.t - h) {
        let active = difference(&all, &idle);
        let per_ue: Vec<Vec<DeliveryItem>> = active
            .iter()
            .map(|&u| {
                let others = difference(&active, &[u]);
                subsets_of(&others, seg.t)
                    .map(|subset| {
                        let pi = difference(&others, &subset);
                        let mut known = subset.clone();
                        known.push(u);
                        known.sort_unstable();
                        let chunk = chunk_index(&difference(&all, &known), &pi);
                        DeliveryItem {
                            ue: u,
                            label: SoftLabel { file: demand[u - 1], subset, part: seg.part },
                            pi,
                            chunk,
                        }
                    })
                    .collect()
            })
            .collect();
        for step in 0..per_ue[0].len() {
            out.push(DeliveryStep {
                segment: s,
                case: ScheduleCase::Chunked,
                idle: idle.clone(),
                items: per_ue.iter().map(|v| v[step].clone()).collect(),
            });
        }
    }
}

/// 0-based lexicographic position of `pi` among the same-size subsets of
/// `ground`.
fn chunk_index(ground: &[usize], pi: &[usize]) -> usize {
    let pos: Vec<usize> = pi.iter().map(|x| ground.binary_search(x).expect("pi within ground") + 1).collect();
    rank(&pos, ground.len()) - 1
}
