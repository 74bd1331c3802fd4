use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use super::arrow::{arrows, Arrows};
use crate::catkit::FiniteCategory;
use crate::error::{Error, Result};
use crate::simpset::Monotone;
use crate::waldcat::{is_pushout, mediate, WaldhausenInstance};

/// A functor `Ar[n] -> C`, stored on every object and every morphism of `Ar[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GapGrid {
    pub n: usize,
    pub objects: Vec<u32>,
    pub maps: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Operator {
    Face(usize),
    Degeneracy(usize),
}

#[derive(Clone, Debug, Serialize)]
pub struct GridJson {
    pub n: usize,
    pub objects: BTreeMap<String, String>,
    pub arrows: BTreeMap<String, String>,
}

impl GapGrid {
    pub fn arrows(&self) -> std::sync::Arc<Arrows> {
        arrows(self.n)
    }

    pub fn object(&self, i: usize, j: usize) -> u32 {
        self.objects[self.arrows().object(i, j) as usize]
    }

    pub fn map(&self, a: (usize, usize), b: (usize, usize)) -> u32 {
        self.maps[self.arrows().mor(a, b) as usize]
    }

    /// The grid that is `*` everywhere.
    pub fn zero(w: &WaldhausenInstance, n: usize) -> GapGrid {
        let ar = arrows(n);
        let id = w.cat().identity(w.zero);
        GapGrid { n, objects: vec![w.zero; ar.object_count()], maps: vec![id; ar.cat.morphism_count()] }
    }

    /// Precomposition with `Ar[φ]`.
    pub fn reindex(&self, phi: &Monotone) -> GapGrid {
        let (objs, mors) = self.arrows().reindexing(phi);
        GapGrid {
            n: phi.dim(),
            objects: objs.iter().map(|&p| self.objects[p as usize]).collect(),
            maps: mors.iter().map(|&f| self.maps[f as usize]).collect(),
        }
    }

    pub fn face(&self, i: usize) -> GapGrid {
        self.reindex(&Monotone::coface(self.n, i))
    }

    pub fn degeneracy(&self, i: usize) -> GapGrid {
        self.reindex(&Monotone::codegeneracy(self.n, i))
    }

    pub fn apply(&self, op: Operator) -> GapGrid {
        match op {
            Operator::Face(i) => self.face(i),
            Operator::Degeneracy(i) => self.degeneracy(i),
        }
    }

    pub fn label(&self) -> String {
        let o: Vec<String> = self.objects.iter().map(|x| x.to_string()).collect();
        let m: Vec<String> = self.maps.iter().map(|x| x.to_string()).collect();
        format!("{}|{}", o.join("."), m.join("."))
    }

    pub fn to_json(&self, c: &FiniteCategory) -> GridJson {
        let ar = self.arrows();
        let objects = ar.pairs.iter().map(|&(i, j)| (format!("{},{}", i, j), c.object_name(self.object(i, j)).to_string())).collect();
        let arrows = ar
            .generators
            .iter()
            .map(|&g| {
                let (a, b) = (ar.pair(ar.cat.source(g)), ar.pair(ar.cat.target(g)));
                (format!("{},{}>{},{}", a.0, a.1, b.0, b.1), c.morphism_name(self.maps[g as usize]).to_string())
            })
            .collect();
        GridJson { n: self.n, objects, arrows }
    }

    /// Grid conditions: zero diagonal, functoriality, cofibrations along rows and
    /// pushout squares, all checked in `w`.
    pub fn certify(&self, w: &WaldhausenInstance) -> std::result::Result<(), String> {
        let ar = self.arrows();
        let c = w.cat();
        let a = &ar.cat;
        if self.objects.len() != ar.object_count() || self.maps.len() != a.morphism_count() {
            return Err("grid has the wrong shape".into());
        }
        for i in 0..=self.n {
            if self.object(i, i) != w.zero {
                return Err(format!("diagonal entry ({},{}) is not the zero object", i, i));
            }
        }
        for f in 0..a.morphism_count() as u32 {
            let m = self.maps[f as usize];
            if c.source(m) != self.objects[a.source(f) as usize] || c.target(m) != self.objects[a.target(f) as usize] {
                return Err(format!("arrow {} has the wrong endpoints", a.morphism_name(f)));
            }
            if a.is_identity(f) && !c.is_identity(m) {
                return Err(format!("identity at {} not preserved", a.object_name(a.source(f))));
            }
            for &g in a.outgoing(a.target(f)) {
                if self.maps[a.compose(g, f) as usize] != c.compose(self.maps[g as usize], m) {
                    return Err(format!("composite {} after {} not preserved", a.morphism_name(g), a.morphism_name(f)));
                }
            }
        }
        let n = self.n;
        for i in 0..=n {
            for j in i..=n {
                for k in j..=n {
                    let row = self.map((i, j), (i, k));
                    if !w.is_cofibration(row) {
                        return Err(format!("({},{}) -> ({},{}) is not a cofibration", i, j, i, k));
                    }
                    let ok = is_pushout(c, self.map((i, j), (j, j)), row, self.map((j, j), (j, k)), self.map((i, k), (j, k)));
                    if !ok {
                        return Err(format!("square ({},{},{}) is not a pushout", i, j, k));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Apply a face or degeneracy and re-certify the result.
pub fn simplicial_operator(op: Operator, grid: &GapGrid, w: &WaldhausenInstance) -> Result<GapGrid> {
    let ok = match op {
        Operator::Face(i) => grid.n >= 1 && i <= grid.n,
        Operator::Degeneracy(i) => i <= grid.n,
    };
    if !ok {
        return Err(Error::InvalidArgument(format!("{:?} out of range for a grid of length {}", op, grid.n)));
    }
    let out = grid.apply(op);
    out.certify(w).map_err(Error::Certification)?;
    Ok(out)
}

fn chains(w: &WaldhausenInstance, n: usize, budget: usize) -> Result<Vec<Vec<u32>>> {
    let c = w.cat();
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u32>> = vec![Vec::new()];
    while let Some(chain) = stack.pop() {
        if chain.len() == n {
            out.push(chain);
            if out.len() > budget {
                return Err(Error::budget(format!("enumerating cofibration chains of length {} in {}", n, w.name), budget));
            }
            continue;
        }
        let last = chain.last().map(|&m| c.target(m)).unwrap_or(w.zero);
        let next: Vec<u32> = if chain.is_empty() {
            (0..c.object_count() as u32).map(|a| w.from_zero(a)).filter(|&m| w.is_cofibration(m)).collect()
        } else {
            c.outgoing(last).iter().copied().filter(|&m| w.is_cofibration(m)).collect()
        };
        for &m in next.iter().rev() {
            let mut ch = chain.clone();
            ch.push(m);
            stack.push(ch);
        }
    }
    Ok(out)
}

/// Complete a chain `* >-> A_{0,1} >-> ... >-> A_{0,n}` with quotient maps
/// `q_{i,j} : A_{0,j} -> A_{i,j}`; the remaining arrows are induced.
pub fn grid_from_quotients(w: &WaldhausenInstance, chain: &[u32], q: &dyn Fn(usize, usize) -> u32) -> Option<GapGrid> {
    let c = w.cat();
    let n = chain.len();
    let ar = arrows(n);
    let mut row0 = vec![w.zero];
    row0.extend(chain.iter().map(|&m| c.target(m)));
    // composite A_{0,j} -> A_{0,l}
    let comp = |j: usize, l: usize| (j..l).fold(c.identity(row0[j]), |acc, k| c.compose(chain[k], acc));
    let objects: Vec<u32> = ar.pairs.iter().map(|&(i, j)| c.target(q(i, j))).collect();
    let a = &ar.cat;
    let mut maps = Vec::with_capacity(a.morphism_count());
    for f in 0..a.morphism_count() as u32 {
        let ((i, j), (k, l)) = (ar.pair(a.source(f)), ar.pair(a.target(f)));
        let target = c.compose(q(k, l), comp(j, l));
        let qij = q(i, j);
        let m = if c.is_identity(qij) { target } else { mediate(c, c.target(qij), c.target(target), &[(qij, target)])? };
        maps.push(m);
    }
    Some(GapGrid { n, objects, maps })
}

/// The quotient maps `A_{0,j} -> A_{i,j}` of a grid.
pub fn quotient_map(g: &GapGrid, i: usize, j: usize) -> u32 {
    g.map((0, j), (i, j))
}

/// Every grid of length `n`: all cofibration chains from `*`, completed by all certified
/// quotients, in canonical order.
pub fn enumerate_grids(w: &WaldhausenInstance, n: usize, budget: usize) -> Result<Vec<GapGrid>> {
    let c = w.cat();
    let all_chains = chains(w, n, budget)?;
    let per_chain: Vec<Result<Vec<GapGrid>>> = all_chains
        .par_iter()
        .map(|chain| {
            let mut row0 = vec![w.zero];
            row0.extend(chain.iter().map(|&m| c.target(m)));
            let comp = |j: usize, l: usize| (j..l).fold(c.identity(row0[j]), |acc, k| c.compose(chain[k], acc));
            let slots: Vec<(usize, usize)> = (1..n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).collect();
            let options: Vec<std::sync::Arc<Vec<(u32, u32)>>> = slots.iter().map(|&(i, j)| w.quotients(comp(i, j))).collect();
            let mut found = Vec::new();
            let mut pick = vec![0usize; slots.len()];
            if options.iter().any(|o| o.is_empty()) {
                return Ok(found);
            }
            loop {
                let q = |i: usize, j: usize| -> u32 {
                    if i == 0 {
                        c.identity(row0[j])
                    } else if i == j {
                        w.to_zero(row0[j])
                    } else {
                        let s = slots.iter().position(|&x| x == (i, j)).unwrap();
                        options[s][pick[s]].1
                    }
                };
                if let Some(g) = grid_from_quotients(w, chain, &q) {
                    if g.certify(w).is_ok() {
                        found.push(g);
                        if found.len() > budget {
                            return Err(Error::budget(format!("enumerating grids of length {} in {}", n, w.name), budget));
                        }
                    }
                }
                // odometer over quotient choices
                let mut k = 0;
                while k < slots.len() {
                    pick[k] += 1;
                    if pick[k] < options[k].len() {
                        break;
                    }
                    pick[k] = 0;
                    k += 1;
                }
                if k == slots.len() {
                    break;
                }
            }
            Ok(found)
        })
        .collect();
    let mut out = Vec::new();
    for r in per_chain {
        out.extend(r?);
        if out.len() > budget {
            return Err(Error::budget(format!("enumerating grids of length {} in {}", n, w.name), budget));
        }
    }
    out.sort();
    Ok(out)
}
