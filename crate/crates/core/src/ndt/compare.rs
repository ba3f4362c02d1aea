use std::cmp::Ordering;

use rayon::prelude::*;

use crate::Rational;

use super::{fmt_rational, memory_share, NdtValue, SchemeId};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct GridPoint {
    pub h: usize,
    pub r: usize,
    pub mu_r: Rational,
    pub mu_t: Rational,
    pub rho: Rational,
}

/// One scheme at one point; `value` is `Err` with the reason when the scheme
/// does not apply there.
#[derive(Debug, Clone, PartialEq)]
pub struct SchemeEval {
    pub scheme: SchemeId,
    pub value: std::result::Result<NdtValue<Rational>, String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub point: GridPoint,
    pub eval: SchemeEval,
    pub is_argmin: bool,
}

impl SweepRow {
    pub const HEADER: &'static str =
        "h,r,mu_r,mu_t,rho,scheme,ndt_total,ndt_fronthaul,ndt_edge,alpha,bracket_lo,bracket_hi,is_argmin";

    pub fn csv(&self) -> String {
        let p = &self.point;
        let mut cells = vec![
            p.h.to_string(),
            p.r.to_string(),
            fmt_rational(&p.mu_r),
            fmt_rational(&p.mu_t),
            fmt_rational(&p.rho),
            self.eval.scheme.to_string(),
        ];
        match &self.eval.value {
            Ok(v) => {
                cells.extend([&v.total, &v.fronthaul, &v.edge].map(fmt_rational));
                match &v.provenance.sharing {
                    Some(s) => cells.extend([&s.alpha, &s.mu_lo, &s.mu_hi].map(fmt_rational)),
                    None => cells.extend(["NA", "NA", "NA"].map(String::from)),
                }
            }
            Err(_) => cells.extend(std::iter::repeat_n("NA".to_string(), 6)),
        }
        cells.push(self.is_argmin.to_string());
        cells.join(",")
    }
}

/// Ordering used to pick the best scheme: smaller total first, then the
/// cloud-free scheme, then scheme id.
fn rank(a: &(SchemeId, &Rational), b: &(SchemeId, &Rational)) -> Ordering {
    a.1.cmp(b.1)
        .then_with(|| b.0.is_cloud_free().cmp(&a.0.is_cloud_free()))
        .then_with(|| a.0.cmp(&b.0))
}

/// Evaluates each scheme with memory sharing at one point and returns the
/// evaluations with the index of the minimizer, if any scheme applies.
pub fn evaluate_point(p: &GridPoint, schemes: &[SchemeId]) -> (Vec<SchemeEval>, Option<usize>) {
    let evals: Vec<SchemeEval> = schemes
        .iter()
        .map(|&scheme| SchemeEval {
            scheme,
            value: memory_share(scheme, p.h, p.r, &p.mu_r, &p.mu_t, &p.rho).map_err(|e| e.to_string()),
        })
        .collect();
    let best = evals
        .iter()
        .enumerate()
        .filter_map(|(i, e)| e.value.as_ref().ok().map(|v| (i, (e.scheme, &v.total))))
        .min_by(|a, b| rank(&a.1, &b.1))
        .map(|(i, _)| i);
    (evals, best)
}

/// Evaluates every scheme at every grid point in parallel. Rows come back
/// sorted by point, then scheme.
pub fn compare_schemes(grid: &[GridPoint], schemes: &[SchemeId]) -> Vec<SweepRow> {
    let mut rows: Vec<SweepRow> = grid
        .par_iter()
        .flat_map_iter(|p| {
            let (evals, best) = evaluate_point(p, schemes);
            evals
                .into_iter()
                .enumerate()
                .map(move |(i, eval)| SweepRow { point: p.clone(), eval, is_argmin: Some(i) == best })
                .collect::<Vec<_>>()
        })
        .collect();
    rows.sort_by(|a, b| a.point.cmp(&b.point).then(a.eval.scheme.cmp(&b.eval.scheme)));
    rows
}

/// The minimizing scheme of each point in a sorted sweep.
pub fn argmin_of(rows: &[SweepRow], point: &GridPoint) -> Option<SchemeId> {
    rows.iter().find(|r| &r.point == point && r.is_argmin).map(|r| r.eval.scheme)
}
