use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use super::arrow::arrows;
use super::grid::enumerate_grids;
use super::sn::{s_n_category, SnCategory};
use crate::error::Result;
use crate::waldcat::WaldhausenInstance;

/// A diagram `Ar[n] × Ar[2] -> C`: objects, maps along `Ar[n]` at each `q ∈ Ar[2]`, and
/// maps along `Ar[2]` at each `p ∈ Ar[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleGrid {
    pub n: usize,
    pub objects: Vec<u32>,
    pub along_n: Vec<u32>,
    pub along_2: Vec<u32>,
}

/// Read a grid of length `n` in `S_2 C` as a double grid.
pub fn from_n_of_2(s2: &SnCategory, g: &super::grid::GapGrid) -> DoubleGrid {
    let an = arrows(g.n);
    let mut objects = Vec::new();
    let mut along_2 = Vec::new();
    for p in 0..an.object_count() {
        let inner = s2.grid(g.objects[p]);
        objects.extend_from_slice(&inner.objects);
        along_2.extend_from_slice(&inner.maps);
    }
    let mut along_n = Vec::new();
    for f in 0..an.cat.morphism_count() {
        along_n.extend_from_slice(&s2.data.components[g.maps[f] as usize]);
    }
    DoubleGrid { n: g.n, objects, along_n, along_2 }
}

/// Read a grid of length 2 in `S_n C` as a double grid.
pub fn from_2_of_n(sn: &SnCategory, g: &super::grid::GapGrid) -> DoubleGrid {
    let (an, a2) = (arrows(sn.data.n), arrows(2));
    let np = an.object_count();
    let (nq, nm2) = (a2.object_count(), a2.cat.morphism_count());
    let nmn = an.cat.morphism_count();
    let mut objects = vec![0; np * nq];
    let mut along_n = vec![0; nmn * nq];
    let mut along_2 = vec![0; np * nm2];
    for q in 0..nq {
        let inner = sn.grid(g.objects[q]);
        for p in 0..np {
            objects[p * nq + q] = inner.objects[p];
        }
        for f in 0..nmn {
            along_n[f * nq + q] = inner.maps[f];
        }
    }
    for h in 0..nm2 {
        let comps = &sn.data.components[g.maps[h] as usize];
        for p in 0..np {
            along_2[p * nm2 + h] = comps[p];
        }
    }
    DoubleGrid { n: sn.data.n, objects, along_n, along_2 }
}

#[derive(Clone, Debug, Serialize)]
pub struct TransposeReport {
    pub n: usize,
    pub n_of_s2: usize,
    pub two_of_sn: usize,
    pub identical: bool,
}

/// `𝔰_n S_2 C ≅ 𝔰_2 S_n C`: both sides read as double grids coincide.
pub fn check_transpose(w: &Arc<WaldhausenInstance>, n: usize, budget: usize) -> Result<TransposeReport> {
    let s2 = s_n_category(w, 2, budget)?;
    let sn = s_n_category(w, n, budget)?;
    let left: BTreeSet<DoubleGrid> = enumerate_grids(&s2.instance, n, budget)?.iter().map(|g| from_n_of_2(&s2, g)).collect();
    let right_grids = enumerate_grids(&sn.instance, 2, budget)?;
    let right: BTreeSet<DoubleGrid> = right_grids.iter().map(|g| from_2_of_n(&sn, g)).collect();
    Ok(TransposeReport { n, n_of_s2: left.len(), two_of_sn: right.len(), identical: left == right })
}
