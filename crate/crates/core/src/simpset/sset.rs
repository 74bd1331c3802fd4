use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::monotone::{decompose, Elementary, Monotone};
use crate::error::{Error, Result};

/// A finite simplicial set truncated at dimension `D`, with explicit face and
/// degeneracy tables. Simplices are addressed by `(level, index)`; each carries a
/// canonical string id.
#[derive(Debug)]
pub struct SimplicialSet {
    trunc_dim: usize,
    ids: Vec<Vec<String>>,
    // faces[n][x*(n+1)+i], n >= 1
    faces: Vec<Vec<u32>>,
    // degens[n][x*(n+1)+i], n < D
    degens: Vec<Vec<u32>>,
    coskeletal_bound: Option<usize>,
    by_id: OnceLock<Vec<HashMap<String, u32>>>,
    skeleton_index: Vec<OnceLock<HashMap<Vec<u32>, u32>>>,
}

impl Clone for SimplicialSet {
    fn clone(&self) -> Self {
        SimplicialSet::from_parts(
            self.trunc_dim,
            self.ids.clone(),
            self.faces.clone(),
            self.degens.clone(),
            self.coskeletal_bound,
        )
    }
}

impl PartialEq for SimplicialSet {
    fn eq(&self, other: &Self) -> bool {
        self.trunc_dim == other.trunc_dim
            && self.ids == other.ids
            && self.faces == other.faces
            && self.degens == other.degens
            && self.coskeletal_bound == other.coskeletal_bound
    }
}

impl SimplicialSet {
    fn from_parts(
        trunc_dim: usize,
        ids: Vec<Vec<String>>,
        faces: Vec<Vec<u32>>,
        degens: Vec<Vec<u32>>,
        coskeletal_bound: Option<usize>,
    ) -> Self {
        SimplicialSet {
            trunc_dim,
            ids,
            faces,
            degens,
            coskeletal_bound,
            by_id: OnceLock::new(),
            skeleton_index: (0..=trunc_dim).map(|_| OnceLock::new()).collect(),
        }
    }

    /// Build from structured keys. Each level is sorted and deduplicated; the face and
    /// degeneracy functions must land in the key sets of the adjacent level.
    pub fn from_keys<K, F, S, I>(
        trunc_dim: usize,
        mut levels: Vec<Vec<K>>,
        face: F,
        degen: S,
        id: I,
        coskeletal_bound: Option<usize>,
    ) -> Result<(SimplicialSet, Vec<Vec<K>>)>
    where
        K: Ord + Hash + Clone,
        F: Fn(usize, &K, usize) -> K,
        S: Fn(usize, &K, usize) -> K,
        I: Fn(&K) -> String,
    {
        if levels.len() != trunc_dim + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} levels, got {}",
                trunc_dim + 1,
                levels.len()
            )));
        }
        for lv in levels.iter_mut() {
            lv.sort();
            lv.dedup();
        }
        let index: Vec<HashMap<&K, u32>> = levels
            .iter()
            .map(|lv| lv.iter().enumerate().map(|(i, k)| (k, i as u32)).collect())
            .collect();
        let mut faces = vec![Vec::new()];
        for n in 1..=trunc_dim {
            let mut table = Vec::with_capacity(levels[n].len() * (n + 1));
            for key in &levels[n] {
                for i in 0..=n {
                    let f = face(n, key, i);
                    let idx = index[n - 1].get(&f).ok_or_else(|| {
                        Error::Certification(format!("face d_{} of {} at level {} is missing", i, id(key), n))
                    })?;
                    table.push(*idx);
                }
            }
            faces.push(table);
        }
        let mut degens = Vec::new();
        for n in 0..trunc_dim {
            let mut table = Vec::with_capacity(levels[n].len() * (n + 1));
            for key in &levels[n] {
                for i in 0..=n {
                    let s = degen(n, key, i);
                    let idx = index[n + 1].get(&s).ok_or_else(|| {
                        Error::Certification(format!(
                            "degeneracy s_{} of {} at level {} is missing",
                            i,
                            id(key),
                            n
                        ))
                    })?;
                    table.push(*idx);
                }
            }
            degens.push(table);
        }
        drop(index);
        let ids = levels.iter().map(|lv| lv.iter().map(&id).collect()).collect();
        Ok((SimplicialSet::from_parts(trunc_dim, ids, faces, degens, coskeletal_bound), levels))
    }

    pub fn trunc_dim(&self) -> usize {
        self.trunc_dim
    }

    pub fn coskeletal_bound(&self) -> Option<usize> {
        self.coskeletal_bound
    }

    pub fn with_coskeletal_bound(mut self, bound: Option<usize>) -> Self {
        self.coskeletal_bound = bound;
        self
    }

    pub fn count(&self, n: usize) -> usize {
        self.ids[n].len()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.ids.iter().map(|l| l.len()).collect()
    }

    pub fn id(&self, n: usize, x: u32) -> &str {
        &self.ids[n][x as usize]
    }

    pub fn ids(&self, n: usize) -> &[String] {
        &self.ids[n]
    }

    pub fn find(&self, n: usize, id: &str) -> Option<u32> {
        let maps = self.by_id.get_or_init(|| {
            self.ids
                .iter()
                .map(|lv| lv.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect())
                .collect()
        });
        maps.get(n)?.get(id).copied()
    }

    pub fn face(&self, n: usize, x: u32, i: usize) -> u32 {
        debug_assert!(n >= 1 && i <= n);
        self.faces[n][x as usize * (n + 1) + i]
    }

    pub fn degen(&self, n: usize, x: u32, i: usize) -> u32 {
        debug_assert!(n < self.trunc_dim && i <= n);
        self.degens[n][x as usize * (n + 1) + i]
    }

    pub fn is_degenerate(&self, n: usize, x: u32) -> bool {
        if n == 0 {
            return false;
        }
        // x = s_i y forces y = d_i x.
        (0..n).any(|i| self.degen(n - 1, self.face(n, x, i), i) == x)
    }

    pub fn nondegenerate(&self, n: usize) -> Vec<u32> {
        (0..self.count(n) as u32).filter(|&x| !self.is_degenerate(n, x)).collect()
    }

    /// `φ^* x` for an `n`-simplex `x` and `φ : [k] -> [n]`.
    pub fn apply(&self, n: usize, x: u32, phi: &Monotone) -> u32 {
        assert_eq!(phi.target, n);
        let mut cur = x;
        let mut dim = n;
        for op in decompose(phi) {
            match op {
                Elementary::Face(i) => {
                    cur = self.face(dim, cur, i);
                    dim -= 1;
                }
                Elementary::Degeneracy(i) => {
                    cur = self.degen(dim, cur, i);
                    dim += 1;
                }
            }
        }
        cur
    }

    /// Vertex `i` of an `n`-simplex.
    pub fn vertex(&self, n: usize, x: u32, i: usize) -> u32 {
        self.apply(n, x, &Monotone::constant(0, i, n))
    }

    /// The edge `i -> j` of an `n`-simplex (`i <= j`).
    pub fn edge(&self, n: usize, x: u32, i: usize, j: usize) -> u32 {
        self.apply(n, x, &Monotone { images: vec![i, j], target: n })
    }

    /// The 2-faces of an `n`-simplex, one per injection `[2] -> [n]`, or the simplex
    /// itself below dimension 2.
    pub fn skeleton_signature(&self, n: usize, x: u32) -> Vec<u32> {
        if n <= 2 {
            return vec![x];
        }
        Monotone::injections(2, n).iter().map(|phi| self.apply(n, x, phi)).collect()
    }

    /// Look up the `n`-simplex with given 2-faces. Only meaningful for sets flagged
    /// 2-coskeletal, where the lookup is unique.
    pub fn from_skeleton(&self, n: usize, signature: &[u32]) -> Option<u32> {
        if n <= 2 {
            return signature.first().copied().filter(|&x| (x as usize) < self.count(n));
        }
        let map = self.skeleton_index[n].get_or_init(|| {
            (0..self.count(n) as u32).map(|x| (self.skeleton_signature(n, x), x)).collect()
        });
        map.get(signature).copied()
    }

    /// The same set truncated at a lower dimension.
    pub fn truncate(&self, d: usize) -> SimplicialSet {
        assert!(d <= self.trunc_dim);
        let mut degens: Vec<Vec<u32>> = self.degens[..d].to_vec();
        degens.truncate(d);
        SimplicialSet::from_parts(
            d,
            self.ids[..=d].to_vec(),
            self.faces[..=d].to_vec(),
            degens,
            self.coskeletal_bound,
        )
    }

    pub fn to_raw(&self) -> RawSimplicialSet {
        let mut faces = BTreeMap::new();
        for n in 1..=self.trunc_dim {
            let mut m = BTreeMap::new();
            for x in 0..self.count(n) as u32 {
                let fs = (0..=n).map(|i| self.ids[n - 1][self.face(n, x, i) as usize].clone()).collect();
                m.insert(self.ids[n][x as usize].clone(), fs);
            }
            faces.insert(n, m);
        }
        let mut degeneracies = BTreeMap::new();
        for n in 0..self.trunc_dim {
            let mut m = BTreeMap::new();
            for x in 0..self.count(n) as u32 {
                let ss = (0..=n).map(|i| self.ids[n + 1][self.degen(n, x, i) as usize].clone()).collect();
                m.insert(self.ids[n][x as usize].clone(), ss);
            }
            degeneracies.insert(n, m);
        }
        RawSimplicialSet {
            trunc_dim: self.trunc_dim,
            levels: self.ids.clone(),
            faces,
            degeneracies,
            coskeletal_bound: self.coskeletal_bound,
        }
    }

    /// Rebuild from raw tables. Only the shape is checked here; run
    /// `validate_simplicial_identities` for the axioms.
    pub fn from_raw(raw: &RawSimplicialSet) -> Result<SimplicialSet> {
        let d = raw.trunc_dim;
        if raw.levels.len() != d + 1 {
            return Err(Error::InvalidArgument("level count does not match trunc_dim".into()));
        }
        let index: Vec<HashMap<&str, u32>> = raw
            .levels
            .iter()
            .map(|lv| lv.iter().enumerate().map(|(i, s)| (s.as_str(), i as u32)).collect())
            .collect();
        for (n, lv) in index.iter().enumerate() {
            if lv.len() != raw.levels[n].len() {
                return Err(Error::InvalidArgument(format!("duplicate ids at level {}", n)));
            }
        }
        let lookup = |n: usize, s: &str| -> Result<u32> {
            index[n].get(s).copied().ok_or_else(|| Error::InvalidArgument(format!("unknown id {} at level {}", s, n)))
        };
        let mut faces = vec![Vec::new()];
        for n in 1..=d {
            let m = raw.faces.get(&n).ok_or_else(|| Error::InvalidArgument(format!("no faces at level {}", n)))?;
            let mut table = Vec::new();
            for id in &raw.levels[n] {
                let fs = m.get(id).ok_or_else(|| Error::InvalidArgument(format!("no faces for {}", id)))?;
                if fs.len() != n + 1 {
                    return Err(Error::InvalidArgument(format!("wrong face count for {}", id)));
                }
                for f in fs {
                    table.push(lookup(n - 1, f)?);
                }
            }
            faces.push(table);
        }
        let mut degens = Vec::new();
        for n in 0..d {
            let m = raw
                .degeneracies
                .get(&n)
                .ok_or_else(|| Error::InvalidArgument(format!("no degeneracies at level {}", n)))?;
            let mut table = Vec::new();
            for id in &raw.levels[n] {
                let ss = m.get(id).ok_or_else(|| Error::InvalidArgument(format!("no degeneracies for {}", id)))?;
                if ss.len() != n + 1 {
                    return Err(Error::InvalidArgument(format!("wrong degeneracy count for {}", id)));
                }
                for s in ss {
                    table.push(lookup(n + 1, s)?);
                }
            }
            degens.push(table);
        }
        Ok(SimplicialSet::from_parts(d, raw.levels.clone(), faces, degens, raw.coskeletal_bound))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("raw tables serialize")
    }

    pub fn from_json(s: &str) -> Result<SimplicialSet> {
        let raw: RawSimplicialSet = serde_json::from_str(s)?;
        SimplicialSet::from_raw(&raw)
    }

    /// A copy with one face entry overwritten. Intended for building corrupted fixtures.
    pub fn with_face_override(&self, n: usize, x: u32, i: usize, value: u32) -> SimplicialSet {
        let mut faces = self.faces.clone();
        faces[n][x as usize * (n + 1) + i] = value;
        SimplicialSet::from_parts(self.trunc_dim, self.ids.clone(), faces, self.degens.clone(), self.coskeletal_bound)
    }

    /// A copy with one degeneracy entry overwritten.
    pub fn with_degeneracy_override(&self, n: usize, x: u32, i: usize, value: u32) -> SimplicialSet {
        let mut degens = self.degens.clone();
        degens[n][x as usize * (n + 1) + i] = value;
        SimplicialSet::from_parts(self.trunc_dim, self.ids.clone(), self.faces.clone(), degens, self.coskeletal_bound)
    }
}

/// Serialized form: `{trunc_dim, levels, faces, degeneracies, coskeletal_bound}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSimplicialSet {
    pub trunc_dim: usize,
    pub levels: Vec<Vec<String>>,
    pub faces: BTreeMap<usize, BTreeMap<String, Vec<String>>>,
    pub degeneracies: BTreeMap<usize, BTreeMap<String, Vec<String>>>,
    pub coskeletal_bound: Option<usize>,
}
