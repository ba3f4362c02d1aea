use std::collections::{BTreeMap, BTreeSet};

use crate::combinatorics::{binomial_usize, subsets};
use crate::error::{Error, Result};
use crate::topology::NetworkTopology;

use super::delivery::MessageId;

/// Interference seen at one UE: column `q` lists, in ascending order, the
/// messages of EN `N_k(q)` that UE `k` does not want.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterferenceMatrix {
    pub ue: usize,
    pub columns: Vec<Vec<MessageId>>,
}

impl InterferenceMatrix {
    /// Number of rows `I`.
    pub fn rows(&self) -> usize {
        self.columns.first().map_or(0, Vec::len)
    }

    pub fn entry(&self, row: usize, col: usize) -> &MessageId {
        &self.columns[col][row]
    }

    /// Column holding `m`, if any.
    pub fn column_of(&self, m: &MessageId) -> Option<usize> {
        self.columns.iter().position(|c| c.binary_search(m).is_ok())
    }
}

pub fn build_interference_matrices(t: &NetworkTopology, t_e: usize) -> Vec<InterferenceMatrix> {
    let all: Vec<Vec<usize>> = subsets(t.l(), t_e + 1).collect();
    t.ues()
        .map(|k| {
            let columns = t
                .ens_of(k)
                .iter()
                .map(|&i| {
                    let pos = t.index_unchecked(i, k).expect("UE attached to its EN");
                    all.iter()
                        .filter(|s| !s.contains(&pos))
                        .map(|s| MessageId::new(i, s.clone()))
                        .collect()
                })
                .collect();
            InterferenceMatrix { ue: k, columns }
        })
        .collect()
}

/// Row `g` of the alignment plan: data `B_g` share transmit directions built
/// from the channel coefficients `A_g`, and every pair (more generally every
/// `r`-subset) of `B_g` that interferes at one UE lands in the same subspace
/// there. `C_g` lists those UEs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentPlan {
    /// `(UE, EN)` identifiers of `h_{k,i}`.
    pub a: Vec<Vec<(usize, usize)>>,
    pub b: Vec<Vec<MessageId>>,
    pub c: Vec<Vec<usize>>,
}

impl AlignmentPlan {
    pub fn rows(&self) -> usize {
        self.b.len()
    }
}

/// UEs attached to the message's EN whose position is outside its subset.
fn interfered(t: &NetworkTopology, m: &MessageId) -> Vec<usize> {
    t.ues_of(m.en)
        .iter()
        .enumerate()
        .filter(|(p, _)| !m.subset.contains(&(p + 1)))
        .map(|(_, &k)| k)
        .collect()
}

/// Greedy sweep over the interference matrices producing the `A`, `B`, `C`
/// matrices.
///
/// UEs are visited in order; while UE `k` still has unassigned interference,
/// the first remaining row of its matrix seeds a new `B` row. For `r = 2` the
/// row is extended with, for each further UE hit by both seed entries, the
/// first entry common to the remaining columns those UEs see from their other
/// EN. Entries are removed from every matrix once assigned.
pub fn algorithm1(t: &NetworkTopology, t_e: usize, mats: &[InterferenceMatrix]) -> Result<AlignmentPlan> {
    let (r, l) = (t.r(), t.l());
    if t_e + 1 < l && r != 2 && t_e + 2 != l {
        return Err(Error::UnsupportedRegime(format!(
            "alignment construction needs r = 2 or t_E = L - 2 (r = {r}, L = {l}, t_E = {t_e})"
        )));
    }
    let mut holders: BTreeMap<&MessageId, Vec<(usize, usize)>> = BTreeMap::new();
    for m in mats {
        for (q, col) in m.columns.iter().enumerate() {
            for e in col {
                holders.entry(e).or_default().push((m.ue, q));
            }
        }
    }
    let mut current: Vec<Vec<Vec<MessageId>>> = mats.iter().map(|m| m.columns.clone()).collect();
    let mut plan = AlignmentPlan { a: Vec::new(), b: Vec::new(), c: Vec::new() };

    for k in t.ues() {
        while current[k - 1].iter().any(|c| !c.is_empty()) {
            if current[k - 1].iter().any(Vec::is_empty) {
                return Err(Error::UnsupportedRegime(format!("interference at UE {k} no longer forms full rows")));
            }
            let mut row: Vec<MessageId> = current[k - 1].iter().map(|c| c[0].clone()).collect();
            if r == 2 {
                let js: Vec<Vec<usize>> =
                    row.iter().map(|e| interfered(t, e).into_iter().filter(|&u| u != k).collect()).collect();
                let q_of = |u: usize, e: &MessageId| -> Vec<MessageId> {
                    current[u - 1].iter().find(|c| !c.contains(e)).cloned().unwrap_or_default()
                };
                let mut extra = Vec::new();
                for (u1, u2) in js[0].iter().zip(&js[1]) {
                    let q1 = q_of(*u1, &row[0]);
                    let q2 = q_of(*u2, &row[1]);
                    if let Some(common) = q1.iter().find(|e| q2.contains(e)) {
                        if !row.contains(common) && !extra.contains(common) {
                            extra.push(common.clone());
                        }
                    }
                }
                row.extend(extra);
            }

            let mut c_row: Vec<usize> = Vec::new();
            for pick in subsets(row.len(), r) {
                let chosen: Vec<&MessageId> = pick.iter().map(|&p| &row[p - 1]).collect();
                let Some(first) = holders.get(chosen[0]) else { continue };
                for &(u, _) in first {
                    let mut cols = BTreeSet::new();
                    let all_in = chosen.iter().all(|e| {
                        holders
                            .get(*e)
                            .and_then(|hs| hs.iter().find(|(v, _)| *v == u))
                            .map(|(_, q)| cols.insert(*q))
                            .unwrap_or(false)
                    });
                    if all_in && !c_row.contains(&u) {
                        c_row.push(u);
                    }
                }
            }
            let a_row = c_row.iter().flat_map(|&c| t.ens_of(c).iter().map(move |&i| (c, i))).collect();

            for cols in current.iter_mut() {
                for col in cols.iter_mut() {
                    col.retain(|e| !row.contains(e));
                }
            }
            plan.a.push(a_row);
            plan.b.push(row);
            plan.c.push(c_row);
        }
    }
    Ok(plan)
}

/// Structural alignment checks for one UE.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UeAlignment {
    pub ue: usize,
    /// Aligned groups found (rows of the plan listing this UE in `C`).
    pub groups: usize,
    /// `I`.
    pub expected_groups: usize,
    pub desired: usize,
    pub expected_desired: usize,
    /// Every group holds exactly one entry from each column.
    pub one_per_column: bool,
    /// Groups cover all `rI` interference entries exactly once.
    pub partition: bool,
    /// Desired messages from the same EN sit in pairwise distinct rows, none
    /// of which carries interference this UE hears through that EN.
    pub disjoint: bool,
}

impl UeAlignment {
    pub fn passed(&self) -> bool {
        self.one_per_column
            && self.partition
            && self.disjoint
            && self.groups == self.expected_groups
            && self.desired == self.expected_desired
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlignmentReport {
    pub per_ue: Vec<UeAlignment>,
    /// Every interfering message occupies exactly one cell of `B`.
    pub b_partition: bool,
}

impl AlignmentReport {
    pub fn passed(&self) -> bool {
        self.b_partition && self.per_ue.iter().all(UeAlignment::passed)
    }
}

pub fn certify_alignment(
    plan: &AlignmentPlan,
    t: &NetworkTopology,
    t_e: usize,
    mats: &[InterferenceMatrix],
) -> AlignmentReport {
    let (r, l) = (t.r(), t.l());
    let mut row_of: BTreeMap<&MessageId, Vec<usize>> = BTreeMap::new();
    for (g, row) in plan.b.iter().enumerate() {
        for e in row {
            row_of.entry(e).or_default().push(g);
        }
    }
    let interfering: BTreeSet<&MessageId> = mats.iter().flat_map(|m| m.columns.iter().flatten()).collect();
    let b_partition = row_of.values().all(|g| g.len() == 1)
        && row_of.len() == interfering.len()
        && row_of.keys().all(|e| interfering.contains(e));

    let expected_groups = if t_e + 1 > l { 0 } else { binomial_usize(l, t_e + 1) - binomial_usize(l - 1, t_e) };
    let expected_desired = if t_e + 1 > l { 0 } else { r * binomial_usize(l - 1, t_e) };
    let all_subsets: Vec<Vec<usize>> = subsets(l, t_e + 1).collect();

    let per_ue = mats
        .iter()
        .map(|m| {
            let k = m.ue;
            let mut covered: BTreeMap<&MessageId, usize> = BTreeMap::new();
            let mut groups = 0;
            let mut one_per_column = true;
            for (g, c_row) in plan.c.iter().enumerate() {
                if !c_row.contains(&k) {
                    continue;
                }
                groups += 1;
                if c_row.iter().filter(|&&u| u == k).count() > 1 {
                    one_per_column = false;
                }
                let mut cols: Vec<usize> = Vec::new();
                for e in &plan.b[g] {
                    if let Some(q) = m.column_of(e) {
                        cols.push(q);
                        *covered.entry(e).or_default() += 1;
                    }
                }
                cols.sort_unstable();
                if cols != (0..r).collect::<Vec<_>>() {
                    one_per_column = false;
                }
            }
            let total: usize = m.columns.iter().map(Vec::len).sum();
            let partition = covered.len() == total && covered.values().all(|&c| c == 1);

            let mut desired = 0;
            let mut disjoint = true;
            for (q, &i) in t.ens_of(k).iter().enumerate() {
                let mut desired_rows = BTreeSet::new();
                let pos = t.index_unchecked(i, k).expect("attached");
                let heard: BTreeSet<usize> =
                    m.columns[q].iter().filter_map(|e| row_of.get(e)).flatten().copied().collect();
                for s in all_subsets.iter().filter(|s| s.contains(&pos)) {
                    desired += 1;
                    if let Some(rows) = row_of.get(&MessageId::new(i, s.clone())) {
                        for g in rows {
                            if heard.contains(g) || !desired_rows.insert(*g) {
                                disjoint = false;
                            }
                        }
                    }
                }
            }
            UeAlignment {
                ue: k,
                groups,
                expected_groups,
                desired,
                expected_desired,
                one_per_column,
                partition,
                disjoint,
            }
        })
        .collect();
    AlignmentReport { per_ue, b_partition }
}
