use serde::{Deserialize, Serialize};

use super::monotone::Monotone;
use super::sset::SimplicialSet;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BasicKind {
    Standard,
    Boundary,
    Horn,
    IntervalGroupoid,
}

/// `Δ[n]`, `∂Δ[n]`, `Λ^k[n]` or `J[n]`, truncated at `d`.
pub fn basic_complex(kind: BasicKind, n: usize, k: Option<usize>, d: usize) -> Result<SimplicialSet> {
    match kind {
        BasicKind::Standard => Ok(monotone_subcomplex(n, d, |_| true, Some(2))),
        BasicKind::Boundary => Ok(monotone_subcomplex(n, d, |phi| !covers(phi, n, None), None)),
        BasicKind::Horn => {
            let k = k.ok_or_else(|| Error::InvalidArgument("horn requires k".into()))?;
            if k > n {
                return Err(Error::InvalidArgument(format!("horn index {} out of range for n = {}", k, n)));
            }
            Ok(monotone_subcomplex(n, d, |phi| !covers(phi, n, Some(k)), None))
        }
        BasicKind::IntervalGroupoid => Ok(interval_groupoid(n, d)),
    }
}

pub fn standard(n: usize, d: usize) -> SimplicialSet {
    monotone_subcomplex(n, d, |_| true, Some(2))
}

// Does the image of φ contain every point of [n] except possibly `skip`?
fn covers(phi: &Monotone, n: usize, skip: Option<usize>) -> bool {
    (0..=n).filter(|&p| Some(p) != skip).all(|p| phi.images.contains(&p))
}

fn monotone_subcomplex(n: usize, d: usize, keep: impl Fn(&Monotone) -> bool, cosk: Option<usize>) -> SimplicialSet {
    let levels: Vec<Vec<Monotone>> =
        (0..=d).map(|k| Monotone::all(k, n).into_iter().filter(|phi| keep(phi)).collect()).collect();
    SimplicialSet::from_keys(
        d,
        levels,
        |k, phi, i| phi.compose(&Monotone::coface(k, i)),
        |k, phi, i| phi.compose(&Monotone::codegeneracy(k, i)),
        |phi| phi.label(),
        cosk,
    )
    .expect("subcomplexes of a standard simplex are closed under operators")
    .0
}

/// `J[n]`: nerve of the contractible groupoid on `n+1` objects. Level `k` consists of all
/// functions `[k] -> [n]`.
pub fn interval_groupoid(n: usize, d: usize) -> SimplicialSet {
    let mut levels = Vec::new();
    for k in 0..=d {
        let mut lv = Vec::new();
        let total = (n + 1).pow(k as u32 + 1);
        for code in 0..total {
            let mut c = code;
            let mut seq = vec![0usize; k + 1];
            for slot in seq.iter_mut().rev() {
                *slot = c % (n + 1);
                c /= n + 1;
            }
            lv.push(seq);
        }
        levels.push(lv);
    }
    SimplicialSet::from_keys(
        d,
        levels,
        |_, s: &Vec<usize>, i| {
            let mut t = s.clone();
            t.remove(i);
            t
        },
        |_, s, i| {
            let mut t = s.clone();
            t.insert(i, s[i]);
            t
        },
        |s| format!("j{}", s.iter().map(|x| x.to_string()).collect::<String>()),
        Some(2),
    )
    .expect("J[n] is closed under operators")
    .0
}
