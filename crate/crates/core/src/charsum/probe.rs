//! Empirical sweep of `|ω_j| / √q` over small parameter grids, including
//! parameters outside the hypotheses of the bound.

use rayon::prelude::*;

use super::{l_polynomial, spectral_from_lpoly, verify_weil_bound, GSumSpec};
use crate::error::Result;
use crate::field::{Elem, Field};

pub const PROBE_HEADER: &str = "q,u,a,b,min_ratio,max_ratio,hypotheses_ok";

/// Fields and exponents to sweep; `a` and `b` range over all of `F_q^*`.
#[derive(Clone, Debug, Default)]
pub struct ProbeGrid {
    pub fields: Vec<Field>,
    pub us: Vec<u32>,
}

impl ProbeGrid {
    pub fn new(fields: Vec<Field>, us: Vec<u32>) -> Self {
        ProbeGrid { fields, us }
    }

    /// `q ∈ {3, 4, 5, 7, 8, 9}`, `u ∈ {2, 3}`.
    pub fn default_grid() -> Result<Self> {
        let fields = [(3, 1), (2, 2), (5, 1), (7, 1), (2, 3), (3, 2)]
            .iter()
            .map(|&(p, e)| Field::new(p, e))
            .collect::<Result<Vec<_>>>()?;
        Ok(ProbeGrid::new(fields, vec![2, 3]))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ProbeRow {
    pub q: u64,
    pub u: u32,
    pub a: u32,
    pub b: u32,
    pub min_ratio: f64,
    pub max_ratio: f64,
    pub hypotheses_ok: bool,
    /// Only ever set when `hypotheses_ok`.
    pub violation: bool,
}

fn probe_one(field: &Field, u: u32, a: Elem, b: Elem) -> Result<ProbeRow> {
    let spec = GSumSpec::new(field, u, a, b)?;
    let spectral = spectral_from_lpoly(&l_polynomial(&spec, false)?)?;
    let report = verify_weil_bound(&spectral, field.order(), spec.bound_hypothesis());
    Ok(ProbeRow {
        q: field.order(),
        u,
        a: a.0,
        b: b.0,
        min_ratio: report.min_ratio,
        max_ratio: report.max_ratio,
        hypotheses_ok: report.hypotheses_ok,
        violation: report.violation,
    })
}

/// One row per `(q, u, a, b)` in grid order.
pub fn probe_open_question(grid: &ProbeGrid) -> Result<Vec<ProbeRow>> {
    let mut cases = Vec::new();
    for field in &grid.fields {
        for &u in &grid.us {
            for a in field.elements(true) {
                for b in field.elements(true) {
                    cases.push((field, u, a, b));
                }
            }
        }
    }
    cases
        .into_par_iter()
        .map(|(f, u, a, b)| probe_one(f, u, a, b))
        .collect()
}

pub fn probe_csv(rows: &[ProbeRow]) -> String {
    let mut out = String::from(PROBE_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{:.12},{:.12},{}\n",
            r.q, r.u, r.a, r.b, r.min_ratio, r.max_ratio, r.hypotheses_ok
        ));
    }
    out
}
