use std::collections::{HashMap, HashSet};
use std::fmt::Debug;

use serde::Serialize;

use crate::catkit::FiniteCategory;

/// A chosen pushout of a span `B <-f- A >-i-> C`: the object `P`, the far leg `B -> P`
/// (the pushed-out cofibration) and the leg `C -> P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PushoutData {
    pub object: u32,
    pub from_b: u32,
    pub from_c: u32,
}

/// Deterministic partial choice of pushouts along cofibrations. `None` means the
/// instance has no pushout for the span within its bound.
pub trait PushoutChooser: Send + Sync + Debug {
    fn choose(&self, c: &FiniteCategory, f: u32, i: u32) -> Option<PushoutData>;
    fn name(&self) -> String;
}

/// Does `u ∘ f = v ∘ i` exhibit `P` as a pushout? Checked by comparing, for every test
/// object `T`, `hom(P, T)` with the set of compatible pairs in `hom(B, T) × hom(C, T)`.
pub fn is_pushout(c: &FiniteCategory, f: u32, i: u32, u: u32, v: u32) -> bool {
    if c.source(f) != c.source(i) || c.source(u) != c.target(f) || c.source(v) != c.target(i) || c.target(u) != c.target(v) {
        return false;
    }
    if c.compose(u, f) != c.compose(v, i) {
        return false;
    }
    let (b, cc, p) = (c.target(f), c.target(i), c.target(u));
    for t in 0..c.object_count() as u32 {
        let mut by_value: HashMap<u32, usize> = HashMap::new();
        for &x in c.hom(b, t) {
            *by_value.entry(c.compose(x, f)).or_default() += 1;
        }
        let mut pairs = 0usize;
        for &y in c.hom(cc, t) {
            pairs += by_value.get(&c.compose(y, i)).copied().unwrap_or(0);
        }
        let homs = c.hom(p, t);
        if homs.len() != pairs {
            return false;
        }
        let mut seen = HashSet::with_capacity(homs.len());
        for &m in homs {
            if !seen.insert((c.compose(m, u), c.compose(m, v))) {
                return false;
            }
        }
    }
    true
}

/// The first `m : P -> T` with `m ∘ leg = target` for every `(leg, target)` pair.
pub fn mediate(c: &FiniteCategory, p: u32, t: u32, legs: &[(u32, u32)]) -> Option<u32> {
    c.hom(p, t).iter().copied().find(|&m| legs.iter().all(|&(leg, x)| c.compose(m, leg) == x))
}

/// All mediating maps; a certified universal cocone yields at most one.
pub fn mediate_all(c: &FiniteCategory, p: u32, t: u32, legs: &[(u32, u32)]) -> Vec<u32> {
    c.hom(p, t).iter().copied().filter(|&m| legs.iter().all(|&(leg, x)| c.compose(m, leg) == x)).collect()
}

/// Exhaustive search: smallest object carrying a pushout, then the lexicographically
/// smallest pair of legs.
pub fn search_pushout(c: &FiniteCategory, f: u32, i: u32) -> Option<PushoutData> {
    let (b, cc) = (c.target(f), c.target(i));
    for p in 0..c.object_count() as u32 {
        for &u in c.hom(b, p) {
            let uf = c.compose(u, f);
            for &v in c.hom(cc, p) {
                if c.compose(v, i) == uf && is_pushout(c, f, i, u, v) {
                    return Some(PushoutData { object: p, from_b: u, from_c: v });
                }
            }
        }
    }
    None
}

/// Search-based chooser, normalized so that pushing out along an identity returns
/// `(B, id, f)`.
#[derive(Debug, Default)]
pub struct SearchChooser;

impl PushoutChooser for SearchChooser {
    fn choose(&self, c: &FiniteCategory, f: u32, i: u32) -> Option<PushoutData> {
        if c.is_identity(i) {
            return Some(PushoutData { object: c.target(f), from_b: c.identity(c.target(f)), from_c: f });
        }
        search_pushout(c, f, i)
    }

    fn name(&self) -> String {
        "search".into()
    }
}
