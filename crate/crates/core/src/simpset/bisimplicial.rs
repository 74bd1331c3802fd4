use std::collections::HashMap;
use std::hash::Hash;
use std::sync::Arc;

use super::map::SimplicialMap;
use super::sset::SimplicialSet;
use super::validate::{check_view, IdentityReport, SimplicialView};
use crate::error::{Error, Result};

/// A bisimplicial set truncated at `(D1, D2)`. The first index is horizontal.
#[derive(Clone, Debug, PartialEq)]
pub struct BisimplicialSet {
    dims: (usize, usize),
    ids: Vec<Vec<Vec<String>>>,
    hface: Vec<Vec<Vec<u32>>>,
    hdeg: Vec<Vec<Vec<u32>>>,
    vface: Vec<Vec<Vec<u32>>>,
    vdeg: Vec<Vec<Vec<u32>>>,
}

/// Operator callbacks for `BisimplicialSet::from_keys`.
pub struct BiOps<'a, K> {
    pub hface: &'a dyn Fn(usize, usize, &K, usize) -> K,
    pub hdeg: &'a dyn Fn(usize, usize, &K, usize) -> K,
    pub vface: &'a dyn Fn(usize, usize, &K, usize) -> K,
    pub vdeg: &'a dyn Fn(usize, usize, &K, usize) -> K,
    pub id: &'a dyn Fn(&K) -> String,
}

impl BisimplicialSet {
    pub fn from_keys<K: Ord + Hash + Clone>(
        dims: (usize, usize),
        mut levels: Vec<Vec<Vec<K>>>,
        ops: BiOps<'_, K>,
    ) -> Result<(BisimplicialSet, Vec<Vec<Vec<K>>>)> {
        let (d1, d2) = dims;
        if levels.len() != d1 + 1 || levels.iter().any(|row| row.len() != d2 + 1) {
            return Err(Error::InvalidArgument("bisimplicial level grid has wrong shape".into()));
        }
        for row in levels.iter_mut() {
            for lv in row.iter_mut() {
                lv.sort();
                lv.dedup();
            }
        }
        let index: Vec<Vec<HashMap<&K, u32>>> = levels
            .iter()
            .map(|row| row.iter().map(|lv| lv.iter().enumerate().map(|(i, k)| (k, i as u32)).collect()).collect())
            .collect();
        let look = |p: usize, q: usize, k: &K| -> Result<u32> {
            index[p][q]
                .get(k)
                .copied()
                .ok_or_else(|| Error::Certification(format!("operator image of {} missing at ({}, {})", (ops.id)(k), p, q)))
        };
        let mut hface = vec![vec![Vec::new(); d2 + 1]; d1 + 1];
        let mut hdeg = vec![vec![Vec::new(); d2 + 1]; d1 + 1];
        let mut vface = vec![vec![Vec::new(); d2 + 1]; d1 + 1];
        let mut vdeg = vec![vec![Vec::new(); d2 + 1]; d1 + 1];
        for p in 0..=d1 {
            for q in 0..=d2 {
                for key in &levels[p][q] {
                    if p >= 1 {
                        for i in 0..=p {
                            hface[p][q].push(look(p - 1, q, &(ops.hface)(p, q, key, i))?);
                        }
                    }
                    if p < d1 {
                        for i in 0..=p {
                            hdeg[p][q].push(look(p + 1, q, &(ops.hdeg)(p, q, key, i))?);
                        }
                    }
                    if q >= 1 {
                        for i in 0..=q {
                            vface[p][q].push(look(p, q - 1, &(ops.vface)(p, q, key, i))?);
                        }
                    }
                    if q < d2 {
                        for i in 0..=q {
                            vdeg[p][q].push(look(p, q + 1, &(ops.vdeg)(p, q, key, i))?);
                        }
                    }
                }
            }
        }
        drop(index);
        let ids = levels.iter().map(|row| row.iter().map(|lv| lv.iter().map(|k| (ops.id)(k)).collect()).collect()).collect();
        Ok((BisimplicialSet { dims, ids, hface, hdeg, vface, vdeg }, levels))
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn count(&self, p: usize, q: usize) -> usize {
        self.ids[p][q].len()
    }

    pub fn id(&self, p: usize, q: usize, x: u32) -> &str {
        &self.ids[p][q][x as usize]
    }

    pub fn hface(&self, p: usize, q: usize, x: u32, i: usize) -> u32 {
        self.hface[p][q][x as usize * (p + 1) + i]
    }
    pub fn hdeg(&self, p: usize, q: usize, x: u32, i: usize) -> u32 {
        self.hdeg[p][q][x as usize * (p + 1) + i]
    }
    pub fn vface(&self, p: usize, q: usize, x: u32, i: usize) -> u32 {
        self.vface[p][q][x as usize * (q + 1) + i]
    }
    pub fn vdeg(&self, p: usize, q: usize, x: u32, i: usize) -> u32 {
        self.vdeg[p][q][x as usize * (q + 1) + i]
    }

    /// `B(p, q) = X_p × Y_q`.
    pub fn external_product(x: &SimplicialSet, y: &SimplicialSet) -> Result<BisimplicialSet> {
        let (d1, d2) = (x.trunc_dim(), y.trunc_dim());
        let levels = (0..=d1)
            .map(|p| {
                (0..=d2)
                    .map(|q| {
                        let mut lv = Vec::new();
                        for a in 0..x.count(p) as u32 {
                            for b in 0..y.count(q) as u32 {
                                lv.push((p, q, a, b));
                            }
                        }
                        lv
                    })
                    .collect()
            })
            .collect();
        let ops = BiOps {
            hface: &|p, q, &(_, _, a, b), i| (p - 1, q, x.face(p, a, i), b),
            hdeg: &|p, q, &(_, _, a, b), i| (p + 1, q, x.degen(p, a, i), b),
            vface: &|p, q, &(_, _, a, b), i| (p, q - 1, a, y.face(q, b, i)),
            vdeg: &|p, q, &(_, _, a, b), i| (p, q + 1, a, y.degen(q, b, i)),
            id: &|&(p, q, a, b)| format!("({},{})", x.id(p, a), y.id(q, b)),
        };
        Ok(BisimplicialSet::from_keys((d1, d2), levels, ops)?.0)
    }

    /// The bisimplicial set constant in the horizontal direction: `B(p, q) = X_q`.
    pub fn constant(x: &SimplicialSet, d1: usize) -> Result<BisimplicialSet> {
        let d2 = x.trunc_dim();
        let levels =
            (0..=d1).map(|p| (0..=d2).map(|q| (0..x.count(q) as u32).map(|a| (p, q, a)).collect()).collect()).collect();
        let ops = BiOps {
            hface: &|p, q, &(_, _, a), _| (p - 1, q, a),
            hdeg: &|p, q, &(_, _, a), _| (p + 1, q, a),
            vface: &|p, q, &(_, _, a), i| (p, q - 1, x.face(q, a, i)),
            vdeg: &|p, q, &(_, _, a), i| (p, q + 1, x.degen(q, a, i)),
            id: &|&(_, q, a)| x.id(q, a).to_string(),
        };
        Ok(BisimplicialSet::from_keys((d1, d2), levels, ops)?.0)
    }

    /// Both directions satisfy the simplicial identities and horizontal operators
    /// commute with vertical ones.
    pub fn validate(&self) -> IdentityReport {
        let (d1, d2) = self.dims;
        let mut checked = 0;
        for q in 0..=d2 {
            let r = check_view(&Row { b: self, q });
            checked += r.checked;
            if !r.pass {
                return IdentityReport { checked, ..r };
            }
        }
        for p in 0..=d1 {
            let r = check_view(&Column { b: self, p });
            checked += r.checked;
            if !r.pass {
                return IdentityReport { checked, ..r };
            }
        }
        let bad = |p: usize, q: usize, x: u32, what: String, checked: usize| IdentityReport {
            pass: false,
            checked,
            violation: Some(super::validate::Violation {
                level: p * (d2 + 1) + q,
                simplex: format!("({},{}):{}", p, q, self.id(p, q, x)),
                identity: what,
            }),
        };
        for p in 0..=d1 {
            for q in 0..=d2 {
                for x in 0..self.count(p, q) as u32 {
                    for i in 0..=p {
                        for j in 0..=q {
                            checked += 1;
                            if p >= 1 && q >= 1 {
                                let a = self.vface(p - 1, q, self.hface(p, q, x, i), j);
                                let b = self.hface(p, q - 1, self.vface(p, q, x, j), i);
                                if a != b {
                                    return bad(p, q, x, format!("dh_{i} dv_{j} = dv_{j} dh_{i}"), checked);
                                }
                            }
                            if p < d1 && q < d2 {
                                let a = self.vdeg(p + 1, q, self.hdeg(p, q, x, i), j);
                                let b = self.hdeg(p, q + 1, self.vdeg(p, q, x, j), i);
                                if a != b {
                                    return bad(p, q, x, format!("sh_{i} sv_{j} = sv_{j} sh_{i}"), checked);
                                }
                            }
                            if p >= 1 && q < d2 {
                                let a = self.vdeg(p - 1, q, self.hface(p, q, x, i), j);
                                let b = self.hface(p, q + 1, self.vdeg(p, q, x, j), i);
                                if a != b {
                                    return bad(p, q, x, format!("dh_{i} sv_{j} = sv_{j} dh_{i}"), checked);
                                }
                            }
                            if p < d1 && q >= 1 {
                                let a = self.vface(p + 1, q, self.hdeg(p, q, x, i), j);
                                let b = self.hdeg(p, q - 1, self.vface(p, q, x, j), i);
                                if a != b {
                                    return bad(p, q, x, format!("sh_{i} dv_{j} = dv_{j} sh_{i}"), checked);
                                }
                            }
                        }
                    }
                }
            }
        }
        IdentityReport { pass: true, checked, violation: None }
    }
}

struct Row<'a> {
    b: &'a BisimplicialSet,
    q: usize,
}

impl SimplicialView for Row<'_> {
    fn top(&self) -> usize {
        self.b.dims.0
    }
    fn count(&self, n: usize) -> usize {
        self.b.count(n, self.q)
    }
    fn face(&self, n: usize, x: u32, i: usize) -> u32 {
        self.b.hface(n, self.q, x, i)
    }
    fn degen(&self, n: usize, x: u32, i: usize) -> u32 {
        self.b.hdeg(n, self.q, x, i)
    }
    fn label(&self, n: usize, x: u32) -> String {
        format!("h({},{}):{}", n, self.q, self.b.id(n, self.q, x))
    }
}

struct Column<'a> {
    b: &'a BisimplicialSet,
    p: usize,
}

impl SimplicialView for Column<'_> {
    fn top(&self) -> usize {
        self.b.dims.1
    }
    fn count(&self, n: usize) -> usize {
        self.b.count(self.p, n)
    }
    fn face(&self, n: usize, x: u32, i: usize) -> u32 {
        self.b.vface(self.p, n, x, i)
    }
    fn degen(&self, n: usize, x: u32, i: usize) -> u32 {
        self.b.vdeg(self.p, n, x, i)
    }
    fn label(&self, n: usize, x: u32) -> String {
        format!("v({},{}):{}", self.p, n, self.b.id(self.p, n, x))
    }
}

/// Diagonal: level `n` is `B(n, n)` with `d_i = dh_i dv_i` and `s_i = sh_i sv_i`.
pub fn diagonal(b: &BisimplicialSet) -> Result<SimplicialSet> {
    let (d1, d2) = b.dims();
    if d1 != d2 {
        return Err(Error::TruncationMismatch(d1, d2));
    }
    let levels = (0..=d1).map(|n| (0..b.count(n, n) as u32).map(|x| (n, x)).collect()).collect();
    let (set, _) = SimplicialSet::from_keys(
        d1,
        levels,
        |n, &(_, x), i| (n - 1, b.hface(n, n - 1, b.vface(n, n, x, i), i)),
        |n, &(_, x), i| (n + 1, b.hdeg(n, n + 1, b.vdeg(n, n, x, i), i)),
        |&(n, x)| b.id(n, n, x).to_string(),
        None,
    )?;
    Ok(set)
}

/// A levelwise map of bisimplicial sets.
#[derive(Clone, Debug)]
pub struct BisimplicialMap {
    pub source: Arc<BisimplicialSet>,
    pub target: Arc<BisimplicialSet>,
    pub assignment: Vec<Vec<Vec<u32>>>,
}

impl BisimplicialMap {
    pub fn new(
        source: Arc<BisimplicialSet>,
        target: Arc<BisimplicialSet>,
        assignment: Vec<Vec<Vec<u32>>>,
    ) -> Result<BisimplicialMap> {
        let (d1, d2) = source.dims();
        if target.dims() != source.dims() {
            return Err(Error::TruncationMismatch(d1, target.dims().0));
        }
        let at = |p: usize, q: usize, x: u32| assignment[p][q][x as usize];
        for p in 0..=d1 {
            for q in 0..=d2 {
                if assignment[p][q].len() != source.count(p, q) {
                    return Err(Error::InvalidArgument("bisimplicial assignment has wrong shape".into()));
                }
                for x in 0..source.count(p, q) as u32 {
                    let y = at(p, q, x);
                    let ok = (p == 0 || (0..=p).all(|i| at(p - 1, q, source.hface(p, q, x, i)) == target.hface(p, q, y, i)))
                        && (q == 0 || (0..=q).all(|i| at(p, q - 1, source.vface(p, q, x, i)) == target.vface(p, q, y, i)))
                        && (p == d1 || (0..=p).all(|i| at(p + 1, q, source.hdeg(p, q, x, i)) == target.hdeg(p, q, y, i)))
                        && (q == d2 || (0..=q).all(|i| at(p, q + 1, source.vdeg(p, q, x, i)) == target.vdeg(p, q, y, i)));
                    if !ok {
                        return Err(Error::Certification(format!("bisimplicial map does not commute at ({}, {})", p, q)));
                    }
                }
            }
        }
        Ok(BisimplicialMap { source, target, assignment })
    }

    /// The product map `f ⊠ g` between external products.
    pub fn external(
        f: &SimplicialMap,
        g: &SimplicialMap,
        source: Arc<BisimplicialSet>,
        target: Arc<BisimplicialSet>,
    ) -> Result<BisimplicialMap> {
        let (d1, d2) = source.dims();
        let assignment = (0..=d1)
            .map(|p| {
                (0..=d2)
                    .map(|q| {
                        let nb = g.source.count(q) as u32;
                        let nt = g.target.count(q) as u32;
                        (0..source.count(p, q) as u32).map(|x| f.at(p, x / nb) * nt + g.at(q, x % nb)).collect()
                    })
                    .collect()
            })
            .collect();
        BisimplicialMap::new(source, target, assignment)
    }
}

/// The diagonal of a bisimplicial map, between the given diagonals.
pub fn diagonal_map(
    f: &BisimplicialMap,
    source_diag: Arc<SimplicialSet>,
    target_diag: Arc<SimplicialSet>,
) -> Result<SimplicialMap> {
    let d = f.source.dims().0;
    SimplicialMap::new(source_diag, target_diag, (0..=d).map(|n| f.assignment[n][n].clone()).collect())
}
