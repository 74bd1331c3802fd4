use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::catkit::{poset_category, FiniteCategory};
use crate::simpset::Monotone;

/// The poset of pairs `i ≤ j ≤ n` ordered componentwise.
pub fn arrow_category(n: usize) -> FiniteCategory {
    let pairs = arrow_pairs(n);
    let names = pairs.iter().map(|&(i, j)| format!("{},{}", i, j)).collect();
    poset_category(names, |a, b| pairs[a].0 <= pairs[b].0 && pairs[a].1 <= pairs[b].1)
}

fn arrow_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..=n).flat_map(|i| (i..=n).map(move |j| (i, j))).collect()
}

/// `Ar[n]` with lookup tables for objects and the unique morphism between comparable pairs.
#[derive(Debug)]
pub struct Arrows {
    pub n: usize,
    pub cat: Arc<FiniteCategory>,
    pub pairs: Vec<(usize, usize)>,
    object: HashMap<(usize, usize), u32>,
    /// Hasse generators: one step right or one step down.
    pub generators: Vec<u32>,
}

impl Arrows {
    pub fn object(&self, i: usize, j: usize) -> u32 {
        self.object[&(i, j)]
    }

    pub fn pair(&self, p: u32) -> (usize, usize) {
        self.pairs[p as usize]
    }

    /// The morphism `p -> q`, if `p ≤ q`.
    pub fn between(&self, p: u32, q: u32) -> Option<u32> {
        self.cat.hom(p, q).first().copied()
    }

    pub fn mor(&self, a: (usize, usize), b: (usize, usize)) -> u32 {
        self.between(self.object(a.0, a.1), self.object(b.0, b.1)).expect("comparable pairs")
    }

    pub fn object_count(&self) -> usize {
        self.pairs.len()
    }

    /// Tables for precomposition with `Ar[φ]`, `φ : [k] -> [n]`: the image of every object
    /// and morphism of `Ar[k]` in `Ar[n]`.
    pub fn reindexing(&self, phi: &Monotone) -> (Vec<u32>, Vec<u32>) {
        assert_eq!(phi.target, self.n);
        let src = arrows(phi.dim());
        let objs: Vec<u32> = src.pairs.iter().map(|&(i, j)| self.object(phi.at(i), phi.at(j))).collect();
        let c = &src.cat;
        let mors = (0..c.morphism_count() as u32)
            .map(|f| self.between(objs[c.source(f) as usize], objs[c.target(f) as usize]).expect("monotone image"))
            .collect();
        (objs, mors)
    }
}

fn build(n: usize) -> Arrows {
    let cat = Arc::new(arrow_category(n));
    let pairs = arrow_pairs(n);
    let object: HashMap<(usize, usize), u32> = pairs.iter().enumerate().map(|(k, &p)| (p, k as u32)).collect();
    let mut generators = Vec::new();
    for &(i, j) in &pairs {
        if j < n {
            generators.push(cat.hom(object[&(i, j)], object[&(i, j + 1)])[0]);
        }
        if i < j {
            generators.push(cat.hom(object[&(i, j)], object[&(i + 1, j)])[0]);
        }
    }
    Arrows { n, cat, pairs, object, generators }
}

/// Shared `Ar[n]`.
pub fn arrows(n: usize) -> Arc<Arrows> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Arrows>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(a) = cache.lock().unwrap().get(&n) {
        return a.clone();
    }
    let a = Arc::new(build(n));
    cache.lock().unwrap().entry(n).or_insert(a).clone()
}
