//! Golden-table generation in a plain comma-separated label format.
//!
//! Each line is one table row. Cells are separated by commas at bracket
//! depth zero, so a cell may itself contain commas inside `{}` or `[]`:
//!
//! ```text
//! UE,1,cache,f[n|1|{1}],f[n|2|{1}]
//! X,1,{1,2},f[1|1|{2}],f[2|1|{1}]
//! UE,1,row,1,X[1|{2,3}],X[2|{2,3}]
//! h[1,1],h[1,2],h[4,1],h[4,5],h[7,2],h[7,5]
//! ```
//!
//! Label grammar: `f[file|chunk|{T}]` is an MDS-coded piece (`n` stands for
//! any file), `X[en|{S}]` a coded multicast message, `h[ue,en]` a channel
//! gain, `UE[k]` a user, `W[file|{T}]` an uncoded subfile and
//! `W[file|{T}|{pi}]` a subfile together with the UEs it is nulled at.

use std::fmt;

use crate::combinatorics::{binomial_usize, fmt_set};
use crate::error::{Error, Result};
use crate::library::{identity_demand, Library};
use crate::mdsia::{algorithm1, build_interference_matrices, mdsia_fronthaul, mdsia_place};
use crate::soft::{file_size_quantum, soft_missing, soft_place, soft_schedule, DeliveryItem};
use crate::topology::NetworkTopology;
use crate::Rational;

/// A named table of label rows. Cells from index `sort_from` on are an
/// unordered set and are sorted in canonical form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub name: String,
    pub sort_from: Option<usize>,
    pub rows: Vec<Vec<String>>,
}

/// Known fixture names and where their unordered cells start.
pub const FIXTURES: &[(&str, Option<usize>)] = &[
    ("table1", Some(3)),
    ("table2", Some(3)),
    ("table3", None),
    ("matrix_a", Some(0)),
    ("matrix_b", Some(0)),
    ("matrix_c", Some(0)),
    ("table4", Some(3)),
    ("table5_missing", Some(3)),
    ("table5_zf", Some(3)),
];

impl Fixture {
    pub fn new(name: &str, rows: Vec<Vec<String>>) -> Self {
        let sort_from = FIXTURES.iter().find(|(n, _)| *n == name).and_then(|(_, s)| *s);
        Self { name: name.to_string(), sort_from, rows }
    }

    pub fn parse(name: &str, text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(split_cells)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(name, rows))
    }

    /// Rows with unordered cells sorted, then the rows themselves sorted.
    pub fn canonical(&self) -> Self {
        let mut rows = self.rows.clone();
        if let Some(from) = self.sort_from {
            for r in &mut rows {
                if r.len() > from {
                    r[from..].sort();
                }
            }
        }
        rows.sort();
        Self { name: self.name.clone(), sort_from: self.sort_from, rows }
    }

    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }
}

impl fmt::Display for Fixture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{}", r.join(","))?;
        }
        Ok(())
    }
}

/// Splits a line at commas outside `{}` and `[]`.
pub fn split_cells(line: &str) -> Result<Vec<String>> {
    let mut cells = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for c in line.trim_end().chars() {
        match c {
            '{' | '[' => depth += 1,
            '}' | ']' => {
                depth -= 1;
                if depth < 0 {
                    return Err(Error::Parse(format!("unbalanced brackets in {line:?}")));
                }
            }
            ',' if depth == 0 => {
                cells.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(c);
    }
    if depth != 0 {
        return Err(Error::Parse(format!("unbalanced brackets in {line:?}")));
    }
    cells.push(cur);
    Ok(cells)
}

fn row<I: IntoIterator<Item = String>>(head: &[String], tail: I) -> Vec<String> {
    head.iter().cloned().chain(tail).collect()
}

/// Cache, fronthaul and alignment tables for MDS-IA at `mu_T = 0` under the
/// identity demand.
pub fn mdsia_fixtures(h: usize, r: usize, mu_r: &Rational) -> Result<Vec<Fixture>> {
    let topo = NetworkTopology::new(h, r)?;
    let t_e = crate::mdsia::integral_te(mu_r, topo.l())?;
    let bits = 8 * (r * binomial_usize(topo.l(), t_e)) as u64;
    let lib = Library::random(topo.k(), bits, 0)?;
    let p = mdsia_place(&lib, &topo, mu_r, &Rational::from_integer(0))?;
    let demand = identity_demand(topo.k());

    let table1 = topo
        .ues()
        .map(|k| {
            let cells = p
                .state
                .ue_cache(k)
                .iter()
                .filter(|l| l.file == 1)
                .map(|l| crate::mdsia::fmt_piece(None, l.chunk, &l.subset, l.part));
            row(&["UE".into(), k.to_string(), "cache".into()], cells)
        })
        .collect();

    let table2 = mdsia_fronthaul(&demand, &p, &topo)?
        .iter()
        .map(|m| {
            let head = ["X".into(), m.id.en.to_string(), fmt_set(&m.id.subset)];
            row(&head, m.members.iter().map(|(_, l)| l.to_string()))
        })
        .collect();

    let mats = build_interference_matrices(&topo, t_e);
    let table3 = mats
        .iter()
        .flat_map(|m| {
            (0..m.rows()).map(move |j| {
                let head = ["UE".into(), m.ue.to_string(), "row".into(), (j + 1).to_string()];
                row(&head, m.columns.iter().map(|c| c[j].to_string()))
            })
        })
        .collect();

    let plan = algorithm1(&topo, t_e, &mats)?;
    let a = plan.a.iter().map(|g| g.iter().map(|(k, i)| format!("h[{k},{i}]")).collect()).collect();
    let b = plan.b.iter().map(|g| g.iter().map(|m| m.to_string()).collect()).collect();
    let c = plan.c.iter().map(|g| g.iter().map(|k| format!("UE[{k}]")).collect()).collect();

    Ok(vec![
        Fixture::new("table1", table1),
        Fixture::new("table2", table2),
        Fixture::new("table3", table3),
        Fixture::new("matrix_a", a),
        Fixture::new("matrix_b", b),
        Fixture::new("matrix_c", c),
    ])
}

/// `W[file|{T}|{pi}]`.
pub fn fmt_item(e: &DeliveryItem) -> String {
    match e.label.part {
        None => format!("W[{}|{}|{}]", e.label.file, fmt_set(&e.label.subset), fmt_set(&e.pi)),
        Some(p) => format!("W[{}|{}|{}|{}]", e.label.file, fmt_set(&e.label.subset), p.tag(), fmt_set(&e.pi)),
    }
}

/// Cache and missing-subfile tables for soft-transfer at `mu_T = 0` under the
/// identity demand. The zero-forcing view lists each missing subfile with
/// the UEs it is nulled at.
pub fn soft_fixtures(h: usize, r: usize, mu_r: &Rational) -> Result<Vec<Fixture>> {
    let topo = NetworkTopology::new(h, r)?;
    let k = topo.k();
    let t = crate::soft::integral_param("t_U", mu_r * Rational::from_integer(k as i128), k)?;
    let zero = Rational::from_integer(0);
    let lib = Library::random(k, file_size_quantum(k, h, t, &zero), 0)?;
    let p = soft_place(&lib, &topo, mu_r, &zero)?;
    let demand = identity_demand(k);

    let table4 = topo
        .ues()
        .map(|u| {
            let cells = p
                .state
                .ue_cache(u)
                .iter()
                .filter(|l| l.file == 1)
                .map(|l| format!("W[n|{}]", fmt_set(&l.subset)));
            row(&["UE".into(), u.to_string(), "cache".into()], cells)
        })
        .collect();

    let missing = soft_missing(&demand, &p)
        .into_iter()
        .enumerate()
        .map(|(i, labels)| {
            row(&["UE".into(), (i + 1).to_string(), "missing".into()], labels.iter().map(|l| l.to_string()))
        })
        .collect();

    let steps = soft_schedule(&demand, &p)?;
    let mut per_ue: Vec<Vec<String>> = vec![Vec::new(); k];
    for st in &steps {
        for e in &st.items {
            per_ue[e.ue - 1].push(fmt_item(e));
        }
    }
    let zf = per_ue
        .into_iter()
        .enumerate()
        .map(|(i, cells)| row(&["UE".into(), (i + 1).to_string(), "zf".into()], cells))
        .collect();

    Ok(vec![
        Fixture::new("table4", table4),
        Fixture::new("table5_missing", missing),
        Fixture::new("table5_zf", zf),
    ])
}

/// All golden tables: the MDS-IA example on `H = 5, r = 2, mu_R = 1/4` and
/// the soft-transfer example on `H = 4, r = 2, mu_R = 1/3`.
pub fn all_fixtures() -> Result<Vec<Fixture>> {
    let mut out = mdsia_fixtures(5, 2, &Rational::new(1, 4))?;
    out.extend(soft_fixtures(4, 2, &Rational::new(1, 3))?);
    Ok(out)
}
