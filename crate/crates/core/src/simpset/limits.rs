use std::collections::HashMap;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::sset::SimplicialSet;
use crate::error::{Error, Result};

fn joint_bound(a: Option<usize>, b: Option<usize>) -> Option<usize> {
    Some(a?.max(b?))
}

/// Levelwise cartesian product. Simplex `(a, b)` at level `n` has index
/// `a * |Y_n| + b`.
pub fn product(x: &SimplicialSet, y: &SimplicialSet) -> Result<SimplicialSet> {
    if x.trunc_dim() != y.trunc_dim() {
        return Err(Error::TruncationMismatch(x.trunc_dim(), y.trunc_dim()));
    }
    let d = x.trunc_dim();
    let levels: Vec<Vec<(u32, u32)>> = (0..=d)
        .map(|n| {
            let mut lv = Vec::with_capacity(x.count(n) * y.count(n));
            for a in 0..x.count(n) as u32 {
                for b in 0..y.count(n) as u32 {
                    lv.push((a, b));
                }
            }
            lv
        })
        .collect();
    let ids: Vec<(Vec<String>, Vec<String>)> = (0..=d).map(|n| (x.ids(n).to_vec(), y.ids(n).to_vec())).collect();
    // ids are looked up by level through the key itself, so stash the level in the key.
    let keyed: Vec<Vec<(usize, u32, u32)>> =
        levels.into_iter().enumerate().map(|(n, lv)| lv.into_iter().map(|(a, b)| (n, a, b)).collect()).collect();
    let (set, _) = SimplicialSet::from_keys(
        d,
        keyed,
        |n, &(_, a, b), i| (n - 1, x.face(n, a, i), y.face(n, b, i)),
        |n, &(_, a, b), i| (n + 1, x.degen(n, a, i), y.degen(n, b, i)),
        |&(n, a, b)| format!("({},{})", ids[n].0[a as usize], ids[n].1[b as usize]),
        joint_bound(x.coskeletal_bound(), y.coskeletal_bound()),
    )?;
    Ok(set)
}

/// Index of the pair `(a, b)` in `product(x, y)` at level `n`.
pub fn product_index(y: &SimplicialSet, n: usize, a: u32, b: u32) -> u32 {
    a * y.count(n) as u32 + b
}

/// The two projections out of a product.
pub fn product_projections(
    x: Arc<SimplicialSet>,
    y: Arc<SimplicialSet>,
    p: Arc<SimplicialSet>,
) -> Result<(SimplicialMap, SimplicialMap)> {
    let ny: Vec<u32> = (0..=y.trunc_dim()).map(|n| y.count(n) as u32).collect();
    let left = SimplicialMap::from_fn(p.clone(), x, |n, z| z / ny[n])?;
    let right = SimplicialMap::from_fn(p, y, |n, z| z % ny[n])?;
    Ok((left, right))
}

/// `(f, g) : W -> X × Y`.
pub fn pairing(f: &SimplicialMap, g: &SimplicialMap, product_set: Arc<SimplicialSet>) -> Result<SimplicialMap> {
    let y = g.target.clone();
    SimplicialMap::new(
        f.source.clone(),
        product_set,
        (0..=f.source.trunc_dim())
            .map(|n| (0..f.source.count(n) as u32).map(|w| product_index(&y, n, f.at(n, w), g.at(n, w))).collect())
            .collect(),
    )
}

/// A pullback with its projections and the underlying pairs.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub set: Arc<SimplicialSet>,
    pub pairs: Vec<Vec<(u32, u32)>>,
    pub left: SimplicialMap,
    pub right: SimplicialMap,
}

/// Levelwise fiber product of `f : X -> Z` and `g : Y -> Z`.
pub fn pullback(f: &SimplicialMap, g: &SimplicialMap) -> Result<Pullback> {
    if !Arc::ptr_eq(&f.target, &g.target) && *f.target != *g.target {
        return Err(Error::CodomainMismatch("pullback legs have different codomains".into()));
    }
    let (x, y) = (f.source.clone(), g.source.clone());
    if x.trunc_dim() != y.trunc_dim() {
        return Err(Error::TruncationMismatch(x.trunc_dim(), y.trunc_dim()));
    }
    let d = x.trunc_dim();
    let mut levels = Vec::new();
    for n in 0..=d {
        let mut by_image: HashMap<u32, Vec<u32>> = HashMap::new();
        for b in 0..y.count(n) as u32 {
            by_image.entry(g.at(n, b)).or_default().push(b);
        }
        let mut lv = Vec::new();
        for a in 0..x.count(n) as u32 {
            if let Some(bs) = by_image.get(&f.at(n, a)) {
                for &b in bs {
                    lv.push((n, a, b));
                }
            }
        }
        levels.push(lv);
    }
    let bound = joint_bound(joint_bound(x.coskeletal_bound(), y.coskeletal_bound()), f.target.coskeletal_bound());
    let (set, keys) = SimplicialSet::from_keys(
        d,
        levels,
        |n, &(_, a, b), i| (n - 1, x.face(n, a, i), y.face(n, b, i)),
        |n, &(_, a, b), i| (n + 1, x.degen(n, a, i), y.degen(n, b, i)),
        |&(n, a, b)| format!("({},{})", x.id(n, a), y.id(n, b)),
        bound,
    )?;
    let set = Arc::new(set);
    let pairs: Vec<Vec<(u32, u32)>> =
        keys.into_iter().map(|lv| lv.into_iter().map(|(_, a, b)| (a, b)).collect()).collect();
    let left = SimplicialMap::new(set.clone(), x, pairs.iter().map(|lv| lv.iter().map(|p| p.0).collect()).collect())?;
    let right = SimplicialMap::new(set.clone(), y, pairs.iter().map(|lv| lv.iter().map(|p| p.1).collect()).collect())?;
    Ok(Pullback { set, pairs, left, right })
}

impl Pullback {
    /// The unique map `W -> P` induced by a cone `(u : W -> X, v : W -> Y)`, if the
    /// cone commutes.
    pub fn induced(&self, u: &SimplicialMap, v: &SimplicialMap) -> Option<SimplicialMap> {
        let w = u.source.clone();
        let mut assignment = Vec::new();
        for n in 0..=w.trunc_dim() {
            let index: HashMap<(u32, u32), u32> =
                self.pairs[n].iter().enumerate().map(|(i, &p)| (p, i as u32)).collect();
            let mut lv = Vec::new();
            for z in 0..w.count(n) as u32 {
                lv.push(*index.get(&(u.at(n, z), v.at(n, z)))?);
            }
            assignment.push(lv);
        }
        SimplicialMap::new(w, self.set.clone(), assignment).ok()
    }
}
