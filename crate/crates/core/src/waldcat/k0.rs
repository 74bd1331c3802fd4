use std::collections::BTreeSet;

use serde::Serialize;

use super::instance::WaldhausenInstance;
use crate::error::Result;
use crate::simpset::{smith_normal_form, AbelianGroup, SparseMatrix};

pub const K0_NOTE: &str = "K0 is computed from the standard presentation: generators are objects, relations \
[B] = [A] + [B/A] for every certified cofiber sequence and [A] = [A'] for every weak equivalence.";

/// Generators and relations for `K₀`, with the invariant factors of the quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct K0Presentation {
    pub generators: Vec<String>,
    /// Sparse rows `(column, coefficient)`.
    pub relations: Vec<Vec<(usize, i64)>>,
    pub group: AbelianGroup,
    /// Nontrivial invariant factors, `0` standing for a free summand.
    pub invariant_factors: Vec<u64>,
}

impl K0Presentation {
    pub fn from_relations(generators: Vec<String>, relations: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        let mut m = SparseMatrix::new(relations.len(), generators.len());
        for (r, row) in relations.iter().enumerate() {
            for &(c, v) in row {
                m.push(r, c, v);
            }
        }
        let snf = smith_normal_form(&m)?;
        let group = AbelianGroup { free_rank: generators.len() - snf.rank, torsion: snf.torsion() };
        let mut invariant_factors = group.torsion.clone();
        invariant_factors.extend(std::iter::repeat(0).take(group.free_rank));
        Ok(K0Presentation { generators, relations, group, invariant_factors })
    }
}

fn row(entries: &[(u32, i64)]) -> Vec<(usize, i64)> {
    let mut v: Vec<(usize, i64)> = Vec::new();
    for &(c, x) in entries {
        match v.iter_mut().find(|(k, _)| *k == c as usize) {
            Some(e) => e.1 += x,
            None => v.push((c as usize, x)),
        }
    }
    v.retain(|&(_, x)| x != 0);
    v.sort();
    v
}

pub fn k0(w: &WaldhausenInstance) -> Result<K0Presentation> {
    let c = w.cat();
    let mut rels: BTreeSet<Vec<(usize, i64)>> = BTreeSet::new();
    for m in w.cofibrations() {
        let (a, b) = (c.source(m), c.target(m));
        for &(q, _) in w.quotients(m).iter() {
            rels.insert(row(&[(b, 1), (a, -1), (q, -1)]));
        }
    }
    for m in w.weqs() {
        rels.insert(row(&[(c.source(m), 1), (c.target(m), -1)]));
    }
    rels.remove(&Vec::new());
    K0Presentation::from_relations(c.object_names().to_vec(), rels.into_iter().collect())
}
