use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use super::instance::WaldhausenInstance;
use super::pushout::{PushoutChooser, PushoutData};
use crate::catkit::{FiniteCategory, MorphismSpec};

/// Morphisms of a concretely presented category, keyed by (source, target, data).
#[derive(Debug)]
struct Concrete<T> {
    data: Vec<T>,
    index: HashMap<(u32, u32, T), u32>,
}

impl<T: Clone + Eq + std::hash::Hash> Concrete<T> {
    fn find(&self, s: u32, t: u32, x: &T) -> u32 {
        self.index[&(s, t, x.clone())]
    }
}

fn build<T: Clone + Eq + std::hash::Hash>(
    objects: Vec<String>,
    homs: impl Fn(u32, u32) -> Vec<T>,
    name: impl Fn(u32, u32, &T) -> String,
    identity: impl Fn(u32) -> T,
    compose: impl Fn(&T, &T) -> T,
) -> (FiniteCategory, Concrete<T>) {
    let n = objects.len() as u32;
    let mut specs = Vec::new();
    let mut data = Vec::new();
    let mut index = HashMap::new();
    for s in 0..n {
        for t in 0..n {
            for x in homs(s, t) {
                index.insert((s, t, x.clone()), specs.len() as u32);
                specs.push(MorphismSpec::new(name(s, t, &x), s, t));
                data.push(x);
            }
        }
    }
    let concrete = Concrete { data, index };
    let ids = (0..n).map(|a| concrete.find(a, a, &identity(a))).collect();
    let cat = FiniteCategory::from_fn(objects, specs.clone(), ids, |g, f| {
        let h = compose(&concrete.data[g as usize], &concrete.data[f as usize]);
        concrete.find(specs[f as usize].source, specs[g as usize].target, &h)
    })
    .expect("concrete category");
    (cat, concrete)
}

// Pointed sets: object k is {*, 1, .., k}; a map stores the images of 1..k, 0 being *.

fn based_maps(a: usize, b: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..a {
        out = out.into_iter().flat_map(|v| (0..=b as u8).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn is_injective(m: &[u8]) -> bool {
    let mut seen = [false; 256];
    m.iter().all(|&x| x == 0 || !std::mem::replace(&mut seen[x as usize], true)) && !m.contains(&0)
}

#[derive(Debug)]
struct AmalgamChooser {
    maps: Concrete<Vec<u8>>,
    max: usize,
}

impl PushoutChooser for AmalgamChooser {
    fn choose(&self, c: &FiniteCategory, f: u32, i: u32) -> Option<PushoutData> {
        let (fv, iv) = (&self.maps.data[f as usize], &self.maps.data[i as usize]);
        let (b, cc) = (c.target(f), c.target(i));
        // P = B ⊔ (C \ i(A)), the new points labelled in increasing order after B
        let mut from_c = vec![0u8; cc as usize];
        let mut next = b as u8;
        for x in 1..=cc as u8 {
            match iv.iter().position(|&y| y == x) {
                Some(a) => from_c[x as usize - 1] = fv[a],
                None => {
                    next += 1;
                    from_c[x as usize - 1] = next;
                }
            }
        }
        let p = next as u32;
        if p as usize >= self.max {
            return None;
        }
        let from_b: Vec<u8> = (1..=b as u8).collect();
        Some(PushoutData { object: p, from_b: self.maps.find(b, p, &from_b), from_c: self.maps.find(cc, p, &from_c) })
    }

    fn name(&self) -> String {
        "amalgam".into()
    }
}

/// Skeletal pointed sets of cardinality at most `max_card`, all based maps, injective
/// cofibrations, bijective weak equivalences.
pub fn instance_pointed_sets(max_card: usize) -> WaldhausenInstance {
    assert!(max_card >= 1, "max_card must be at least 1");
    let objects = (1..=max_card).map(|k| format!("P{}", k)).collect();
    let (cat, maps) = build(
        objects,
        |s, t| based_maps(s as usize, t as usize),
        |s, t, m| format!("P{}>P{}{:?}", s + 1, t + 1, m),
        |a| (1..=a as u8).collect(),
        |g, f| f.iter().map(|&x| if x == 0 { 0 } else { g[x as usize - 1] }).collect(),
    );
    let cof: Vec<bool> = maps.data.iter().map(|m| is_injective(m)).collect();
    let weq = (0..cat.morphism_count())
        .map(|f| cof[f] && cat.source(f as u32) == cat.target(f as u32))
        .collect();
    let chooser = Arc::new(AmalgamChooser { maps, max: max_card });
    WaldhausenInstance::new(format!("pointed_sets({})", max_card), Arc::new(cat), 0, cof, weq, chooser).expect("pointed sets")
}

// F2-vector spaces: object d is F2^d; a map d -> e stores its d columns as bitmasks.

fn matrices(d: usize, e: usize) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..d {
        out = out.into_iter().flat_map(|v| (0..1u8 << e).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn apply(m: &[u8], v: u8) -> u8 {
    m.iter().enumerate().filter(|(k, _)| v >> k & 1 == 1).fold(0, |acc, (_, &c)| acc ^ c)
}

fn rank(cols: &[u8]) -> usize {
    let mut basis: Vec<u8> = Vec::new();
    for &c in cols {
        let mut v = c;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_by(|a, b| b.cmp(a));
        }
    }
    basis.len()
}

/// Reduced echelon basis of a subspace: each vector's highest bit is its pivot, which
/// is cleared in every other basis vector.
fn rref(span: &[u8]) -> Vec<u8> {
    let mut basis: Vec<u8> = Vec::new();
    for &c in span {
        let mut v = c;
        for &b in &basis {
            let pivot = 1u8 << (7 - b.leading_zeros());
            if v & pivot != 0 {
                v ^= b;
            }
        }
        if v != 0 {
            let pivot = 1u8 << (7 - v.leading_zeros());
            for b in basis.iter_mut() {
                if *b & pivot != 0 {
                    *b ^= v;
                }
            }
            basis.push(v);
        }
    }
    basis.sort();
    basis
}

#[derive(Debug)]
struct CokernelChooser {
    maps: Concrete<Vec<u8>>,
    max: usize,
}

impl PushoutChooser for CokernelChooser {
    fn choose(&self, c: &FiniteCategory, f: u32, i: u32) -> Option<PushoutData> {
        let (fv, iv) = (&self.maps.data[f as usize], &self.maps.data[i as usize]);
        let (a, b, cc) = (c.source(f) as usize, c.target(f) as usize, c.target(i) as usize);
        // P = B ⊕ C/i(A); C/i(A) read off on the non-pivot coordinates after reduction
        let basis = rref(iv);
        let pivots: u8 = basis.iter().fold(0, |acc, &v| acc | 1u8 << (7 - v.leading_zeros()));
        let free: Vec<usize> = (0..cc).filter(|&k| pivots >> k & 1 == 0).collect();
        let p = b + free.len();
        if p > self.max {
            return None;
        }
        let reduce = |v: u8| {
            let mut r = v;
            for &bv in &basis {
                if r & (1u8 << (7 - bv.leading_zeros())) != 0 {
                    r ^= bv;
                }
            }
            r
        };
        // preimage under i of an element of i(A)
        let pre = |w: u8| (0..1u16 << a).map(|x| x as u8).find(|&x| apply(iv, x) == w).expect("element of the image");
        let from_c: Vec<u8> = (0..cc)
            .map(|k| {
                let e = 1u8 << k;
                let r = reduce(e);
                let q = free.iter().enumerate().filter(|(_, &j)| r >> j & 1 == 1).fold(0u8, |acc, (t, _)| acc | 1 << t);
                apply(fv, pre(e ^ r)) | q << b
            })
            .collect();
        let from_b: Vec<u8> = (0..b).map(|k| 1u8 << k).collect();
        Some(PushoutData {
            object: p as u32,
            from_b: self.maps.find(b as u32, p as u32, &from_b),
            from_c: self.maps.find(cc as u32, p as u32, &from_c),
        })
    }

    fn name(&self) -> String {
        "cokernel".into()
    }
}

/// `F2^d` for `d ≤ max_dim`, all linear maps, injective cofibrations, isomorphisms as
/// weak equivalences.
pub fn instance_vect_f2(max_dim: usize) -> WaldhausenInstance {
    assert!(max_dim <= 3, "max_dim must be at most 3");
    let objects = (0..=max_dim).map(|d| format!("V{}", d)).collect();
    let (cat, maps) = build(
        objects,
        |s, t| matrices(s as usize, t as usize),
        |s, t, m| format!("V{}>V{}{:?}", s, t, m),
        |a| (0..a).map(|k| 1u8 << k).collect(),
        |g, f| f.iter().map(|&col| apply(g, col)).collect(),
    );
    let cof: Vec<bool> = maps.data.iter().map(|m| rank(m) == m.len()).collect();
    let weq = (0..cat.morphism_count())
        .map(|f| cof[f] && cat.source(f as u32) == cat.target(f as u32))
        .collect();
    let chooser = Arc::new(CokernelChooser { maps, max: max_dim });
    WaldhausenInstance::new(format!("vect_f2({})", max_dim), Arc::new(cat), 0, cof, weq, chooser).expect("vector spaces")
}

/// The instance with a single object `*`.
pub fn instance_point() -> WaldhausenInstance {
    instance_pointed_sets(1)
}

/// Instance by config descriptor.
pub fn instance_by_name(name: &str, size: usize) -> Option<WaldhausenInstance> {
    match name {
        "pointed_sets" if size >= 1 => Some(instance_pointed_sets(size)),
        "vect_f2" if size <= 3 => Some(instance_vect_f2(size)),
        _ => None,
    }
}

/// A chooser that composes the chosen pushout with a non-trivial automorphism of `P` on
/// every other call. Each answer is a pushout, but repeated requests for the same span
/// disagree.
#[derive(Debug)]
pub struct AlternatingChooser {
    inner: Arc<dyn PushoutChooser>,
    calls: AtomicUsize,
}

impl AlternatingChooser {
    pub fn new(inner: Arc<dyn PushoutChooser>) -> Self {
        AlternatingChooser { inner, calls: AtomicUsize::new(0) }
    }
}

impl PushoutChooser for AlternatingChooser {
    fn choose(&self, c: &FiniteCategory, f: u32, i: u32) -> Option<PushoutData> {
        let p = self.inner.choose(c, f, i)?;
        if self.calls.fetch_add(1, Ordering::SeqCst) % 2 == 0 {
            return Some(p);
        }
        match c.hom(p.object, p.object).iter().copied().find(|&a| !c.is_identity(a) && c.is_isomorphism(a)) {
            Some(a) => Some(PushoutData { object: p.object, from_b: c.compose(a, p.from_b), from_c: c.compose(a, p.from_c) }),
            None => Some(p),
        }
    }

    fn name(&self) -> String {
        format!("alternating({})", self.inner.name())
    }
}

/// Copies of object `a` with the structure transported: the result contains the original
/// instance as a skeleton. Returns the instance and the inclusion of the original.
pub fn inflate(w: &WaldhausenInstance, a: u32, copies: usize) -> (WaldhausenInstance, crate::catkit::FunctorData) {
    let c = w.cat();
    // new objects: originals in order, then extra copies of `a`
    let mut base_of: Vec<u32> = (0..c.object_count() as u32).collect();
    let mut names: Vec<String> = c.object_names().to_vec();
    for k in 1..copies {
        base_of.push(a);
        names.push(format!("{}'{}", c.object_name(a), k));
    }
    let n = base_of.len() as u32;
    let mut specs = Vec::new();
    let mut under = Vec::new();
    let mut index = HashMap::new();
    for s in 0..n {
        for t in 0..n {
            for &f in c.hom(base_of[s as usize], base_of[t as usize]) {
                index.insert((s, t, f), specs.len() as u32);
                specs.push(MorphismSpec::new(format!("{}:{}>{}", c.morphism_name(f), names[s as usize], names[t as usize]), s, t));
                under.push(f);
            }
        }
    }
    let ids = (0..n).map(|s| index[&(s, s, c.identity(base_of[s as usize]))]).collect();
    let cat = FiniteCategory::from_fn(names, specs.clone(), ids, |g, f| {
        index[&(specs[f as usize].source, specs[g as usize].target, c.compose(under[g as usize], under[f as usize]))]
    })
    .expect("inflated category");
    let cat = Arc::new(cat);
    let cof = under.iter().map(|&f| w.is_cofibration(f)).collect();
    let weq = under.iter().map(|&f| w.is_weq(f)).collect();
    let chooser = Arc::new(TransportChooser { inner: w.chooser().clone(), base: w.category.clone(), under, index: index.clone(), specs });
    let inst = WaldhausenInstance::new(format!("{}+{}x{}", w.name, copies, c.object_name(a)), cat.clone(), w.zero, cof, weq, chooser)
        .expect("inflated instance");
    let objects = (0..c.object_count() as u32).collect();
    let morphisms = (0..c.morphism_count() as u32).map(|f| index[&(c.source(f), c.target(f), f)]).collect();
    let inc = crate::catkit::FunctorData::new(w.category.clone(), cat, objects, morphisms).expect("skeleton inclusion");
    (inst, inc)
}

#[derive(Debug)]
struct TransportChooser {
    inner: Arc<dyn PushoutChooser>,
    base: Arc<FiniteCategory>,
    under: Vec<u32>,
    index: HashMap<(u32, u32, u32), u32>,
    specs: Vec<MorphismSpec>,
}

impl PushoutChooser for TransportChooser {
    fn choose(&self, _c: &FiniteCategory, f: u32, i: u32) -> Option<PushoutData> {
        let p = self.inner.choose(&self.base, self.under[f as usize], self.under[i as usize])?;
        // the pushout object is taken to be the original representative
        let (b, cc) = (self.specs[f as usize].target, self.specs[i as usize].target);
        Some(PushoutData {
            object: p.object,
            from_b: self.index[&(b, p.object, p.from_b)],
            from_c: self.index[&(cc, p.object, p.from_c)],
        })
    }

    fn name(&self) -> String {
        format!("transported({})", self.inner.name())
    }
}
