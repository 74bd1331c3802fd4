use std::sync::Arc;

use super::monotone::Monotone;
use super::sset::SimplicialSet;
use crate::error::{Error, Result};

/// A map of truncated simplicial sets, given levelwise by simplex indices.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub source: Arc<SimplicialSet>,
    pub target: Arc<SimplicialSet>,
    pub assignment: Vec<Vec<u32>>,
}

impl SimplicialMap {
    /// Checked constructor: the assignment must commute with all faces and degeneracies.
    pub fn new(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, assignment: Vec<Vec<u32>>) -> Result<Self> {
        let map = SimplicialMap::new_unchecked(source, target, assignment)?;
        if let Some(w) = map.first_violation() {
            return Err(Error::Certification(w));
        }
        Ok(map)
    }

    /// Shape-checked only.
    pub fn new_unchecked(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        assignment: Vec<Vec<u32>>,
    ) -> Result<Self> {
        if source.trunc_dim() != target.trunc_dim() {
            return Err(Error::TruncationMismatch(source.trunc_dim(), target.trunc_dim()));
        }
        if assignment.len() != source.trunc_dim() + 1 {
            return Err(Error::InvalidArgument("assignment has wrong number of levels".into()));
        }
        for (n, lv) in assignment.iter().enumerate() {
            if lv.len() != source.count(n) {
                return Err(Error::InvalidArgument(format!("assignment level {} has wrong length", n)));
            }
            if lv.iter().any(|&y| y as usize >= target.count(n)) {
                return Err(Error::InvalidArgument(format!("assignment level {} out of range", n)));
            }
        }
        Ok(SimplicialMap { source, target, assignment })
    }

    pub fn from_fn(
        source: Arc<SimplicialSet>,
        target: Arc<SimplicialSet>,
        f: impl Fn(usize, u32) -> u32,
    ) -> Result<Self> {
        let assignment =
            (0..=source.trunc_dim()).map(|n| (0..source.count(n) as u32).map(|x| f(n, x)).collect()).collect();
        SimplicialMap::new(source, target, assignment)
    }

    pub fn identity(x: Arc<SimplicialSet>) -> Self {
        let assignment = (0..=x.trunc_dim()).map(|n| (0..x.count(n) as u32).collect()).collect();
        SimplicialMap { source: x.clone(), target: x, assignment }
    }

    /// The map `Δ[m] -> X` classifying the `m`-simplex `y`.
    pub fn yoneda(delta_m: Arc<SimplicialSet>, m: usize, target: Arc<SimplicialSet>, y: u32) -> Result<Self> {
        let d = delta_m.trunc_dim();
        let mut assignment = Vec::new();
        for k in 0..=d {
            let maps = Monotone::all(k, m);
            if maps.len() != delta_m.count(k) {
                return Err(Error::InvalidArgument("source is not the standard simplex".into()));
            }
            assignment.push(maps.iter().map(|phi| target.apply(m, y, phi)).collect());
        }
        SimplicialMap::new(delta_m, target, assignment)
    }

    /// The constant map at a vertex.
    pub fn constant(source: Arc<SimplicialSet>, target: Arc<SimplicialSet>, v: u32) -> Result<Self> {
        let d = source.trunc_dim();
        let mut assignment = Vec::new();
        for n in 0..=d {
            let y = target.apply(0, v, &Monotone::constant(n, 0, 0));
            assignment.push(vec![y; source.count(n)]);
        }
        SimplicialMap::new(source, target, assignment)
    }

    pub fn at(&self, n: usize, x: u32) -> u32 {
        self.assignment[n][x as usize]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &SimplicialMap) -> Result<SimplicialMap> {
        if !Arc::ptr_eq(&self.target, &other.source) && *self.target != *other.source {
            return Err(Error::CodomainMismatch("composition of maps with mismatched ends".into()));
        }
        let assignment = self
            .assignment
            .iter()
            .enumerate()
            .map(|(n, lv)| lv.iter().map(|&y| other.at(n, y)).collect())
            .collect();
        Ok(SimplicialMap { source: self.source.clone(), target: other.target.clone(), assignment })
    }

    pub fn first_violation(&self) -> Option<String> {
        let (s, t) = (&self.source, &self.target);
        for n in 0..=s.trunc_dim() {
            for x in 0..s.count(n) as u32 {
                let fx = self.at(n, x);
                if n >= 1 {
                    for i in 0..=n {
                        if self.at(n - 1, s.face(n, x, i)) != t.face(n, fx, i) {
                            return Some(format!("map does not commute with d_{} at ({}, {})", i, n, s.id(n, x)));
                        }
                    }
                }
                if n < s.trunc_dim() {
                    for i in 0..=n {
                        if self.at(n + 1, s.degen(n, x, i)) != t.degen(n, fx, i) {
                            return Some(format!("map does not commute with s_{} at ({}, {})", i, n, s.id(n, x)));
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_bijective(&self) -> bool {
        self.assignment.iter().enumerate().all(|(n, lv)| {
            if lv.len() != self.target.count(n) {
                return false;
            }
            let mut seen = vec![false; lv.len()];
            lv.iter().all(|&y| !std::mem::replace(&mut seen[y as usize], true))
        })
    }
}
