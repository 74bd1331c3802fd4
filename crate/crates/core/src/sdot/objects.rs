use std::sync::Arc;

use super::arrow::arrows;
use super::grid::{enumerate_grids, GapGrid};
use super::sn::{s_n_category, SnCategory};
use crate::error::Result;
use crate::simpset::{diagonal, BiOps, BisimplicialSet, Monotone, SimplicialSet};
use crate::waldcat::WaldhausenInstance;

/// `𝔰•C` truncated at `d`, together with the grids indexing each level.
#[derive(Clone, Debug)]
pub struct ObjectSet {
    pub set: Arc<SimplicialSet>,
    pub grids: Vec<Vec<GapGrid>>,
}

impl ObjectSet {
    pub fn find(&self, g: &GapGrid) -> Option<u32> {
        self.grids[g.n].binary_search(g).ok().map(|k| k as u32)
    }
}

pub fn object_simplicial_set(w: &WaldhausenInstance, d: usize, budget: usize) -> Result<ObjectSet> {
    let levels = (0..=d).map(|n| enumerate_grids(w, n, budget)).collect::<Result<Vec<_>>>()?;
    let (set, grids) = SimplicialSet::from_keys(d, levels, |_, g: &GapGrid, i| g.face(i), |_, g, i| g.degeneracy(i), |g| g.label(), None)?;
    Ok(ObjectSet { set: Arc::new(set), grids })
}

/// A `k`-chain of weak equivalences in `S_n C`: grids and the components of each map.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeqChain {
    pub grids: Vec<GapGrid>,
    pub maps: Vec<Vec<u32>>,
}

impl WeqChain {
    fn reindex(&self, phi: &Monotone) -> WeqChain {
        let n = self.grids[0].n;
        let (objs, _) = arrows(n).reindexing(phi);
        WeqChain {
            grids: self.grids.iter().map(|g| g.reindex(phi)).collect(),
            maps: self.maps.iter().map(|m| objs.iter().map(|&p| m[p as usize]).collect()).collect(),
        }
    }

    fn vface(&self, w: &WaldhausenInstance, i: usize) -> WeqChain {
        let mut out = self.clone();
        let k = self.maps.len();
        if i == 0 {
            out.grids.remove(0);
            out.maps.remove(0);
        } else if i == k {
            out.grids.pop();
            out.maps.pop();
        } else {
            let c = w.cat();
            let composed = self.maps[i].iter().zip(&self.maps[i - 1]).map(|(&g, &f)| c.compose(g, f)).collect();
            out.grids.remove(i);
            out.maps.splice(i - 1..=i, [composed]);
        }
        out
    }

    fn vdeg(&self, w: &WaldhausenInstance, i: usize) -> WeqChain {
        let mut out = self.clone();
        let g = self.grids[i].clone();
        let id = g.objects.iter().map(|&o| w.cat().identity(o)).collect();
        out.grids.insert(i, g);
        out.maps.insert(i, id);
        out
    }
}

fn weq_chains(s: &SnCategory, k: usize) -> Vec<WeqChain> {
    let inst = &s.instance;
    let c = inst.cat();
    let mut out = Vec::new();
    let mut stack: Vec<(Vec<u32>, Vec<u32>)> = (0..c.object_count() as u32).map(|x| (vec![x], vec![])).collect();
    while let Some((objs, mors)) = stack.pop() {
        if mors.len() == k {
            out.push(WeqChain {
                grids: objs.iter().map(|&x| s.grid(x).clone()).collect(),
                maps: mors.iter().map(|&m| s.data.components[m as usize].clone()).collect(),
            });
            continue;
        }
        for &m in c.outgoing(*objs.last().unwrap()) {
            if inst.is_weq(m) {
                let mut o = objs.clone();
                o.push(c.target(m));
                let mut ms = mors.clone();
                ms.push(m);
                stack.push((o, ms));
            }
        }
    }
    out
}

/// The bisimplicial set `(n, k) ↦ N_k(wS_n C)` truncated at `(d, d)`, and its diagonal.
pub fn diagonal_nerve_w(w: &Arc<WaldhausenInstance>, d: usize, budget: usize) -> Result<(BisimplicialSet, SimplicialSet)> {
    let sn: Vec<SnCategory> = (0..=d).map(|n| s_n_category(w, n, budget)).collect::<Result<_>>()?;
    let levels: Vec<Vec<Vec<WeqChain>>> = sn.iter().map(|s| (0..=d).map(|k| weq_chains(s, k)).collect()).collect();
    let base = w.clone();
    let hface = |p: usize, _q: usize, x: &WeqChain, i: usize| x.reindex(&Monotone::coface(p, i));
    let hdeg = |p: usize, _q: usize, x: &WeqChain, i: usize| x.reindex(&Monotone::codegeneracy(p, i));
    let vface = |_p: usize, _q: usize, x: &WeqChain, i: usize| x.vface(&base, i);
    let vdeg = |_p: usize, _q: usize, x: &WeqChain, i: usize| x.vdeg(&base, i);
    let id = |x: &WeqChain| {
        let g: Vec<String> = x.grids.iter().map(|g| g.label()).collect();
        let m: Vec<String> = x.maps.iter().map(|m| m.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")).collect();
        format!("{}/{}", g.join(";"), m.join(";"))
    };
    let ops = BiOps { hface: &hface, hdeg: &hdeg, vface: &vface, vdeg: &vdeg, id: &id };
    let (b, _) = BisimplicialSet::from_keys((d, d), levels, ops)?;
    let diag = diagonal(&b)?;
    Ok((b, diag))
}
