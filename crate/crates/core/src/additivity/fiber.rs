use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::simpset::{pullback, standard, Monotone, SimplicialMap, SimplicialSet};

/// The left fiber `f/(m, y)`: simplices `(x, α)` with `α*y = f(x)`.
#[derive(Clone, Debug)]
pub struct LeftFiber {
    pub m: usize,
    pub y: u32,
    pub set: Arc<SimplicialSet>,
    /// Per simplex: the index of `x` and the index of `α` in `Monotone::all(n, m)`.
    pub pairs: Vec<Vec<(u32, u32)>>,
    /// `π`, forgetting `α`.
    pub projection: SimplicialMap,
    alphas: Vec<Vec<Monotone>>,
    index: Vec<HashMap<(u32, u32), u32>>,
}

impl LeftFiber {
    pub fn alpha(&self, n: usize, e: u32) -> &Monotone {
        &self.alphas[n][self.pairs[n][e as usize].1 as usize]
    }

    pub fn source_simplex(&self, n: usize, e: u32) -> u32 {
        self.pairs[n][e as usize].0
    }

    /// The simplex `(x, α)`, if it lies in the fiber.
    pub fn find(&self, n: usize, x: u32, alpha: &Monotone) -> Option<u32> {
        let k = self.alphas[n].binary_search(alpha).ok()? as u32;
        self.index[n].get(&(x, k)).copied()
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.set.level_sizes()
    }
}

/// Pull `f : X -> Y` back along `y : Δ[m] -> Y`.
pub fn left_fiber(f: &SimplicialMap, m: usize, y: u32) -> Result<LeftFiber> {
    let d = f.source.trunc_dim();
    if m > f.target.trunc_dim() || y as usize >= f.target.count(m) {
        return Err(Error::InvalidArgument(format!("{} is not a simplex at level {}", y, m)));
    }
    let delta = Arc::new(standard(m, d));
    let yon = SimplicialMap::yoneda(delta, m, f.target.clone(), y)?;
    let pb = pullback(f, &yon)?;
    let alphas: Vec<Vec<Monotone>> = (0..=d).map(|n| Monotone::all(n, m)).collect();
    let index = pb.pairs.iter().map(|lv| lv.iter().enumerate().map(|(k, &p)| (p, k as u32)).collect()).collect();
    Ok(LeftFiber { m, y, set: pb.set, pairs: pb.pairs, projection: pb.left, alphas, index })
}
