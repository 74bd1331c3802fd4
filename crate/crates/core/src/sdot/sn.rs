use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::arrow::arrows;
use super::grid::{enumerate_grids, quotient_map, GapGrid};
use crate::catkit::{FiniteCategory, FunctorData, MorphismSpec};
use crate::error::{Error, Result};
use crate::waldcat::{mediate, PushoutChooser, PushoutData, WaldhausenInstance};

pub const DEFAULT_GRID_BUDGET: usize = 200_000;

/// Grids of length `n` and the natural transformations between them.
#[derive(Debug)]
pub struct SnData {
    pub n: usize,
    pub base: Arc<WaldhausenInstance>,
    pub grids: Vec<GapGrid>,
    index: HashMap<GapGrid, u32>,
    /// Components of each morphism, one per object of `Ar[n]`.
    pub components: Vec<Vec<u32>>,
    mor_index: HashMap<(u32, u32, Vec<u32>), u32>,
    pub category: Arc<FiniteCategory>,
}

impl SnData {
    pub fn find_grid(&self, g: &GapGrid) -> Option<u32> {
        self.index.get(g).copied()
    }

    pub fn find_morphism(&self, s: u32, t: u32, comps: &[u32]) -> Option<u32> {
        self.mor_index.get(&(s, t, comps.to_vec())).copied()
    }
}

/// `S_n C` as a Waldhausen category.
#[derive(Clone, Debug)]
pub struct SnCategory {
    pub data: Arc<SnData>,
    pub instance: Arc<WaldhausenInstance>,
}

/// Natural transformations `x -> y`: the top row by backtracking under naturality, the
/// rest induced through the quotient maps.
fn transformations(w: &WaldhausenInstance, x: &GapGrid, y: &GapGrid) -> Vec<Vec<u32>> {
    let c = w.cat();
    let n = x.n;
    let ar = arrows(n);
    let mut rows: Vec<Vec<u32>> = vec![vec![c.identity(w.zero)]];
    for j in 1..=n {
        let mut next = Vec::new();
        for row in &rows {
            let (xs, ys) = (x.map((0, j - 1), (0, j)), y.map((0, j - 1), (0, j)));
            let want = c.compose(ys, row[j - 1]);
            for &f in c.hom(x.object(0, j), y.object(0, j)) {
                if c.compose(f, xs) == want {
                    let mut r = row.clone();
                    r.push(f);
                    next.push(r);
                }
            }
        }
        rows = next;
    }
    let mut out = Vec::new();
    'rows: for row in rows {
        let mut comps = Vec::with_capacity(ar.object_count());
        for &(i, j) in &ar.pairs {
            let m = if i == 0 {
                row[j]
            } else if i == j {
                c.identity(w.zero)
            } else {
                let (qx, qy) = (quotient_map(x, i, j), quotient_map(y, i, j));
                match mediate(c, x.object(i, j), y.object(i, j), &[(qx, c.compose(qy, row[j]))]) {
                    Some(m) => m,
                    None => continue 'rows,
                }
            };
            comps.push(m);
        }
        let a = &ar.cat;
        let natural = ar.generators.iter().all(|&g| {
            let (p, q) = (a.source(g), a.target(g));
            c.compose(y.maps[g as usize], comps[p as usize]) == c.compose(comps[q as usize], x.maps[g as usize])
        });
        if natural {
            out.push(comps);
        }
    }
    out
}

/// Category whose objects are `grids` and whose morphisms are the natural
/// transformations between them.
pub(crate) fn diagram_category(
    w: &WaldhausenInstance,
    grids: &[GapGrid],
    budget: usize,
) -> Result<(FiniteCategory, Vec<Vec<u32>>, HashMap<(u32, u32, Vec<u32>), u32>)> {
    let c = w.cat();
    let k = grids.len();
    let per_source: Vec<Vec<(u32, Vec<u32>)>> = (0..k)
        .into_par_iter()
        .map(|s| {
            let mut v = Vec::new();
            for t in 0..k {
                for comps in transformations(w, &grids[s], &grids[t]) {
                    v.push((t as u32, comps));
                }
            }
            v
        })
        .collect();
    let total: usize = per_source.iter().map(|v| v.len()).sum();
    if total > budget {
        return Err(Error::budget(format!("enumerating grid morphisms in {}", w.name), budget));
    }
    let mut specs = Vec::with_capacity(total);
    let mut components = Vec::with_capacity(total);
    let mut index = HashMap::with_capacity(total);
    for (s, v) in per_source.into_iter().enumerate() {
        let mut count: HashMap<u32, usize> = HashMap::new();
        for (t, comps) in v {
            let e = count.entry(t).or_default();
            specs.push(MorphismSpec::new(format!("{}>{}#{}", s, t, e), s as u32, t));
            *e += 1;
            index.insert((s as u32, t, comps.clone()), components.len() as u32);
            components.push(comps);
        }
    }
    let ids: Vec<u32> = (0..k as u32)
        .map(|s| {
            let comps: Vec<u32> = grids[s as usize].objects.iter().map(|&o| c.identity(o)).collect();
            index[&(s, s, comps)]
        })
        .collect();
    let names = (0..k).map(|s| format!("g{}", s)).collect();
    let cat = FiniteCategory::from_fn(names, specs.clone(), ids, |g, f| {
        let comps: Vec<u32> = components[g as usize].iter().zip(&components[f as usize]).map(|(&b, &a)| c.compose(b, a)).collect();
        index[&(specs[f as usize].source, specs[g as usize].target, comps)]
    })?;
    Ok((cat, components, index))
}

#[derive(Debug)]
struct SnChooser {
    data: Arc<SnData>,
}

impl PushoutChooser for SnChooser {
    fn choose(&self, c: &FiniteCategory, f: u32, i: u32) -> Option<PushoutData> {
        let d = &self.data;
        let w = &d.base;
        let ar = arrows(d.n);
        let (yb, zc) = (&d.grids[c.target(f) as usize], &d.grids[c.target(i) as usize]);
        let (fc, ic) = (&d.components[f as usize], &d.components[i as usize]);
        let mut pts = Vec::with_capacity(ar.object_count());
        for p in 0..ar.object_count() {
            pts.push(w.pushout(fc[p], ic[p]).ok()??);
        }
        let a = &ar.cat;
        let mut maps = Vec::with_capacity(a.morphism_count());
        for g in 0..a.morphism_count() as u32 {
            let (p, q) = (a.source(g) as usize, a.target(g) as usize);
            maps.push(w.induced_map(&pts[p], &pts[q], yb.maps[g as usize], zc.maps[g as usize])?);
        }
        let grid = GapGrid { n: d.n, objects: pts.iter().map(|p| p.object).collect(), maps };
        let obj = d.find_grid(&grid)?;
        let from_b: Vec<u32> = pts.iter().map(|p| p.from_b).collect();
        let from_c: Vec<u32> = pts.iter().map(|p| p.from_c).collect();
        Some(PushoutData {
            object: obj,
            from_b: d.find_morphism(c.target(f), obj, &from_b)?,
            from_c: d.find_morphism(c.target(i), obj, &from_c)?,
        })
    }

    fn name(&self) -> String {
        format!("pointwise({})", self.data.base.chooser_name())
    }
}

/// `S_n C`: all grids, natural transformations, cofibrations the maps whose induced maps
/// `A_{0,j} ∪_{A_{0,j-1}} B_{0,j-1} -> B_{0,j}` are cofibrations, levelwise weak
/// equivalences on the top row, pointwise chosen pushouts.
pub fn s_n_category(w: &Arc<WaldhausenInstance>, n: usize, budget: usize) -> Result<SnCategory> {
    let grids = enumerate_grids(w, n, budget)?;
    let (cat, components, mor_index) = diagram_category(w, &grids, budget.saturating_mul(50))?;
    let index = grids.iter().enumerate().map(|(k, g)| (g.clone(), k as u32)).collect();
    let cat = Arc::new(cat);
    let data = Arc::new(SnData { n, base: w.clone(), grids, index, components, mor_index, category: cat.clone() });
    let c = w.cat();
    let mut cof = Vec::with_capacity(cat.morphism_count());
    let mut weq = Vec::with_capacity(cat.morphism_count());
    let ar = arrows(n);
    for f in 0..cat.morphism_count() as u32 {
        let (x, y) = (&data.grids[cat.source(f) as usize], &data.grids[cat.target(f) as usize]);
        let comps = &data.components[f as usize];
        let top = |j: usize| comps[ar.object(0, j) as usize];
        weq.push((1..=n).all(|j| w.is_weq(top(j))));
        let is_cof = (1..=n).all(|j| {
            let xs = x.map((0, j - 1), (0, j));
            match w.pushout(top(j - 1), xs) {
                Ok(Some(p)) => {
                    let ys = y.map((0, j - 1), (0, j));
                    mediate(c, p.object, y.object(0, j), &[(p.from_b, ys), (p.from_c, top(j))]).is_some_and(|m| w.is_cofibration(m))
                }
                _ => false,
            }
        });
        cof.push(is_cof);
    }
    let zero = data.find_grid(&GapGrid::zero(w, n)).ok_or_else(|| Error::Certification("zero grid missing".into()))?;
    let chooser = Arc::new(SnChooser { data: data.clone() });
    let instance = Arc::new(WaldhausenInstance::new(format!("S{}({})", n, w.name), cat, zero, cof, weq, chooser)?);
    Ok(SnCategory { data, instance })
}

impl SnCategory {
    pub fn grid(&self, x: u32) -> &GapGrid {
        &self.data.grids[x as usize]
    }

    /// `S_n F` for a functor `F` between the base categories, mapping grids entrywise.
    pub fn functor(&self, f: &FunctorData, target: &SnCategory) -> Result<FunctorData> {
        let d = &self.data;
        let objects = d
            .grids
            .iter()
            .map(|g| {
                let img = GapGrid { n: g.n, objects: g.objects.iter().map(|&o| f.object(o)).collect(), maps: g.maps.iter().map(|&m| f.morphism(m)).collect() };
                target.data.find_grid(&img).ok_or_else(|| Error::Certification("image of a grid is not a grid".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        let cat = &d.category;
        let morphisms = (0..cat.morphism_count() as u32)
            .map(|m| {
                let comps: Vec<u32> = d.components[m as usize].iter().map(|&x| f.morphism(x)).collect();
                target
                    .data
                    .find_morphism(objects[cat.source(m) as usize], objects[cat.target(m) as usize], &comps)
                    .ok_or_else(|| Error::Certification("image of a grid morphism is missing".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        FunctorData::new(d.category.clone(), target.data.category.clone(), objects, morphisms)
    }
}

/// The subcategory of weak equivalences, with the morphism inclusion.
pub fn weq_category(w: &WaldhausenInstance) -> (FiniteCategory, Vec<u32>) {
    let c = w.cat();
    let objs: Vec<u32> = (0..c.object_count() as u32).collect();
    let (sub, _, mors) = c.subcategory(&objs, |f| w.is_weq(f)).expect("weak equivalences form a subcategory");
    (sub, mors)
}

/// Restriction of a functor to the weak-equivalence subcategories.
pub fn weq_functor(f: &FunctorData, src: &WaldhausenInstance, tgt: &WaldhausenInstance) -> Result<FunctorData> {
    let (ws, ms) = weq_category(src);
    let (wt, mt) = weq_category(tgt);
    let pre: HashMap<u32, u32> = mt.iter().enumerate().map(|(k, &m)| (m, k as u32)).collect();
    let morphisms = ms
        .iter()
        .map(|&m| pre.get(&f.morphism(m)).copied().ok_or_else(|| Error::Certification("weak equivalence not preserved".into())))
        .collect::<Result<Vec<u32>>>()?;
    FunctorData::new(Arc::new(ws), Arc::new(wt), f.objects.clone(), morphisms)
}
