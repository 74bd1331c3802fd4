use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use super::snf::{smith_normal_form, SparseMatrix};
use super::sset::SimplicialSet;
use crate::error::{Error, Result};

/// A finitely generated abelian group `ℤ^free_rank ⊕ ⊕ ℤ/t_i`, with the `t_i ≥ 2` in
/// divisibility order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl AbelianGroup {
    pub fn zero() -> Self {
        AbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        AbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Direct sum, renormalized to invariant factors.
    pub fn direct_sum(&self, other: &AbelianGroup) -> AbelianGroup {
        let mut t: Vec<u64> = self.torsion.iter().chain(other.torsion.iter()).copied().collect();
        normalize_invariant_factors(&mut t);
        AbelianGroup { free_rank: self.free_rank + other.free_rank, torsion: t }
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{}", r)),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z/{}", t)));
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn normalize_invariant_factors(t: &mut Vec<u64>) {
    let k = t.len();
    for i in 0..k {
        for j in i + 1..k {
            let g = gcd(t[i], t[j]);
            if g != 0 {
                let l = t[i] / g * t[j];
                t[i] = g;
                t[j] = l;
            }
        }
    }
    t.retain(|&x| x > 1);
    t.sort();
}

/// Integral homology per degree; degrees past the reliable range are `None`
/// ("unknown (truncated)").
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyResult {
    pub trunc_dim: usize,
    pub groups: Vec<Option<AbelianGroup>>,
}

impl HomologyResult {
    pub fn degree(&self, k: usize) -> Option<&AbelianGroup> {
        self.groups.get(k).and_then(|g| g.as_ref())
    }

    pub fn describe(&self) -> Vec<String> {
        self.groups
            .iter()
            .map(|g| match g {
                Some(g) => g.to_string(),
                None => "unknown (truncated)".into(),
            })
            .collect()
    }
}

/// Normalized boundary matrix `∂_n : N_n -> N_{n-1}` on nondegenerate simplices.
/// Rows are indexed by `n`-simplices.
pub fn boundary_matrix(x: &SimplicialSet, n: usize, rows: &[u32], cols: &[u32]) -> SparseMatrix {
    let col_index: HashMap<u32, usize> = cols.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut m = SparseMatrix::new(rows.len(), cols.len());
    for (r, &s) in rows.iter().enumerate() {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for i in 0..=n {
            if let Some(&c) = col_index.get(&x.face(n, s, i)) {
                *acc.entry(c).or_default() += if i % 2 == 0 { 1 } else { -1 };
            }
        }
        let mut entries: Vec<(usize, i64)> = acc.into_iter().collect();
        entries.sort();
        for (c, v) in entries {
            m.push(r, c, v);
        }
    }
    m
}

/// Homology in degrees `0..=max_degree` from the normalized chain complex.
pub fn homology(x: &SimplicialSet, max_degree: usize) -> Result<HomologyResult> {
    let d = x.trunc_dim();
    if d == 0 || max_degree > d - 1 {
        return Err(Error::InvalidArgument(format!(
            "homology up to degree {} needs truncation at least {}, have {}",
            max_degree,
            max_degree + 1,
            d
        )));
    }
    let nondeg: Vec<Vec<u32>> = (0..=max_degree + 1).map(|n| x.nondegenerate(n)).collect();
    // ranks[n] = rank of ∂_n, ∂_0 = 0
    let mut ranks = vec![0usize; max_degree + 2];
    let mut torsion = vec![Vec::new(); max_degree + 2];
    for n in 1..=max_degree + 1 {
        let m = boundary_matrix(x, n, &nondeg[n], &nondeg[n - 1]);
        let snf = smith_normal_form(&m)?;
        ranks[n] = snf.rank;
        torsion[n] = snf.torsion();
    }
    let mut groups = Vec::new();
    for k in 0..=d {
        if k <= max_degree {
            let free = nondeg[k].len() - ranks[k] - ranks[k + 1];
            groups.push(Some(AbelianGroup { free_rank: free, torsion: torsion[k + 1].clone() }));
        } else {
            groups.push(None);
        }
    }
    Ok(HomologyResult { trunc_dim: d, groups })
}

/// Connected components: vertex index -> component representative (smallest vertex).
pub fn components(x: &SimplicialSet) -> Vec<u32> {
    let n0 = x.count(0);
    let mut parent: Vec<u32> = (0..n0 as u32).collect();
    fn find(p: &mut [u32], mut a: u32) -> u32 {
        while p[a as usize] != a {
            p[a as usize] = p[p[a as usize] as usize];
            a = p[a as usize];
        }
        a
    }
    if x.trunc_dim() >= 1 {
        for e in 0..x.count(1) as u32 {
            let a = find(&mut parent, x.face(1, e, 0));
            let b = find(&mut parent, x.face(1, e, 1));
            if a != b {
                let (lo, hi) = if a < b { (a, b) } else { (b, a) };
                parent[hi as usize] = lo;
            }
        }
    }
    (0..n0 as u32).map(|v| find(&mut parent, v)).collect()
}

pub fn component_count(x: &SimplicialSet) -> usize {
    let c = components(x);
    c.iter().enumerate().filter(|(i, &r)| *i as u32 == r).count()
}
