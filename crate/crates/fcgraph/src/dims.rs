//! Graded dimension table.

use fcgraph_core::fourterm::{FourTermWorkspace, RelationSource};
use fcgraph_core::Palette;
use serde::Serialize;

/// Largest grading computed without an explicit override.
pub const DEFAULT_MAX_N: usize = 6;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimsRow {
    pub n: usize,
    /// Red-only classes on `n` vertices.
    pub classes: usize,
    pub connected: usize,
    pub rank_fc: usize,
    pub dim_lando: usize,
    pub dim_pn: usize,
    pub dim_pbl: usize,
    pub dim_pwl: usize,
}

impl DimsRow {
    pub const HEADER: [&'static str; 8] =
        ["n", "classes", "connected", "rank_fc", "dim_lando", "dim_pn", "dim_pbl", "dim_pwl"];

    pub fn cells(&self) -> [usize; 8] {
        [
            self.n,
            self.classes,
            self.connected,
            self.rank_fc,
            self.dim_lando,
            self.dim_pn,
            self.dim_pbl,
            self.dim_pwl,
        ]
    }
}

pub fn dims_row(ws: &mut FourTermWorkspace, n: usize) -> DimsRow {
    let classes = ws.classes(n, Palette::RED).len();
    let connected = ws.connected_classes(n).len();
    let rank_fc = ws.fc_span(n, RelationSource::RedForm).rank();
    let sub = ws.sub_bialgebra_dims(n);
    DimsRow {
        n,
        classes,
        connected,
        rank_fc,
        dim_lando: classes - rank_fc,
        dim_pn: ws.dim_primitive_intersection(n),
        dim_pbl: sub.pbl,
        dim_pwl: sub.pwl,
    }
}

pub fn dims_table(max_n: usize) -> Vec<DimsRow> {
    let mut ws = FourTermWorkspace::default();
    (0..=max_n).map(|n| dims_row(&mut ws, n)).collect()
}
