use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite category with explicit composition table.
///
/// Objects and morphisms are addressed by dense `u32` indices. `compose(g, f)` is `g ∘ f`
/// and is defined when `target(f) == source(g)`.
#[derive(Clone, Debug)]
pub struct FiniteCategory {
    objects: Vec<String>,
    names: Vec<String>,
    src: Vec<u32>,
    tgt: Vec<u32>,
    identities: Vec<u32>,
    table: HashMap<(u32, u32), u32>,
    hom: HashMap<(u32, u32), Vec<u32>>,
    out: Vec<Vec<u32>>,
    inc: Vec<Vec<u32>>,
}

impl PartialEq for FiniteCategory {
    fn eq(&self, other: &Self) -> bool {
        self.objects == other.objects
            && self.names == other.names
            && self.src == other.src
            && self.tgt == other.tgt
            && self.identities == other.identities
            && self.table == other.table
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismSpec {
    pub name: String,
    pub source: u32,
    pub target: u32,
}

impl MorphismSpec {
    pub fn new(name: impl Into<String>, source: u32, target: u32) -> Self {
        MorphismSpec { name: name.into(), source, target }
    }
}

static EMPTY: [u32; 0] = [];

impl FiniteCategory {
    /// Build a category from morphism data and a composition function, which is called
    /// once per composable pair `(g, f)`.
    pub fn from_fn(
        objects: Vec<String>,
        morphisms: Vec<MorphismSpec>,
        identities: Vec<u32>,
        compose: impl Fn(u32, u32) -> u32,
    ) -> Result<FiniteCategory> {
        let mut c = FiniteCategory::skeleton(objects, morphisms, identities)?;
        for b in 0..c.objects.len() {
            for &f in &c.inc[b] {
                for &g in &c.out[b] {
                    let h = compose(g, f);
                    if h as usize >= c.names.len() || c.src[h as usize] != c.src[f as usize] || c.tgt[h as usize] != c.tgt[g as usize] {
                        return Err(Error::Certification(format!(
                            "composite of {} and {} has wrong endpoints",
                            c.names[g as usize], c.names[f as usize]
                        )));
                    }
                    c.table.insert((g, f), h);
                }
            }
        }
        Ok(c)
    }

    fn skeleton(objects: Vec<String>, morphisms: Vec<MorphismSpec>, identities: Vec<u32>) -> Result<FiniteCategory> {
        let n = objects.len();
        if identities.len() != n {
            return Err(Error::InvalidArgument("one identity per object required".into()));
        }
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut hom: HashMap<(u32, u32), Vec<u32>> = HashMap::new();
        for (i, m) in morphisms.iter().enumerate() {
            if m.source as usize >= n || m.target as usize >= n {
                return Err(Error::InvalidArgument(format!("morphism {} has an unknown endpoint", m.name)));
            }
            out[m.source as usize].push(i as u32);
            inc[m.target as usize].push(i as u32);
            hom.entry((m.source, m.target)).or_default().push(i as u32);
        }
        for (a, &id) in identities.iter().enumerate() {
            let m = morphisms.get(id as usize).ok_or_else(|| Error::InvalidArgument("identity out of range".into()))?;
            if m.source as usize != a || m.target as usize != a {
                return Err(Error::InvalidArgument(format!("identity of {} is not an endomorphism of it", objects[a])));
            }
        }
        Ok(FiniteCategory {
            objects,
            src: morphisms.iter().map(|m| m.source).collect(),
            tgt: morphisms.iter().map(|m| m.target).collect(),
            names: morphisms.into_iter().map(|m| m.name).collect(),
            identities,
            table: HashMap::new(),
            hom,
            out,
            inc,
        })
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.names.len()
    }

    pub fn object_name(&self, a: u32) -> &str {
        &self.objects[a as usize]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_name(&self, f: u32) -> &str {
        &self.names[f as usize]
    }

    pub fn find_object(&self, name: &str) -> Option<u32> {
        self.objects.iter().position(|o| o == name).map(|i| i as u32)
    }

    pub fn find_morphism(&self, name: &str) -> Option<u32> {
        self.names.iter().position(|o| o == name).map(|i| i as u32)
    }

    pub fn source(&self, f: u32) -> u32 {
        self.src[f as usize]
    }

    pub fn target(&self, f: u32) -> u32 {
        self.tgt[f as usize]
    }

    pub fn identity(&self, a: u32) -> u32 {
        self.identities[a as usize]
    }

    pub fn is_identity(&self, f: u32) -> bool {
        self.identities[self.src[f as usize] as usize] == f
    }

    pub fn hom(&self, a: u32, b: u32) -> &[u32] {
        self.hom.get(&(a, b)).map(|v| v.as_slice()).unwrap_or(&EMPTY)
    }

    pub fn outgoing(&self, a: u32) -> &[u32] {
        &self.out[a as usize]
    }

    pub fn incoming(&self, a: u32) -> &[u32] {
        &self.inc[a as usize]
    }

    /// `g ∘ f`; panics if not composable.
    pub fn compose(&self, g: u32, f: u32) -> u32 {
        match self.table.get(&(g, f)) {
            Some(&h) => h,
            None => panic!("{} and {} are not composable", self.names[g as usize], self.names[f as usize]),
        }
    }

    pub fn try_compose(&self, g: u32, f: u32) -> Option<u32> {
        self.table.get(&(g, f)).copied()
    }

    /// Composite of a path `f_1, ..., f_k` (applied in that order); `None` if the path is
    /// not composable. The empty path is not allowed.
    pub fn compose_path(&self, path: &[u32]) -> Option<u32> {
        let mut acc = *path.first()?;
        for &g in &path[1..] {
            acc = self.try_compose(g, acc)?;
        }
        Some(acc)
    }

    pub fn inverse(&self, f: u32) -> Option<u32> {
        let (a, b) = (self.source(f), self.target(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identity(a) && self.compose(f, g) == self.identity(b))
    }

    pub fn is_isomorphism(&self, f: u32) -> bool {
        self.inverse(f).is_some()
    }

    /// Smallest isomorphism `a -> b`, if any.
    pub fn find_isomorphism(&self, a: u32, b: u32) -> Option<u32> {
        self.hom(a, b).iter().copied().find(|&f| self.is_isomorphism(f))
    }

    /// Exhaustive check of the unit and associativity laws.
    pub fn validate(&self) -> std::result::Result<(), String> {
        for f in 0..self.names.len() as u32 {
            let (a, b) = (self.source(f), self.target(f));
            if self.try_compose(f, self.identity(a)) != Some(f) || self.try_compose(self.identity(b), f) != Some(f) {
                return Err(format!("unit law fails at {}", self.names[f as usize]));
            }
        }
        for f in 0..self.names.len() as u32 {
            for &g in self.outgoing(self.target(f)) {
                let gf = self.compose(g, f);
                for &h in self.outgoing(self.target(g)) {
                    if self.compose(h, gf) != self.compose(self.compose(h, g), f) {
                        return Err(format!(
                            "associativity fails at ({}, {}, {})",
                            self.names[h as usize], self.names[g as usize], self.names[f as usize]
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    /// The subcategory on the given objects and the morphisms accepted by `keep` among
    /// them. Returns the subcategory and the morphism inclusion. Errors if the selection
    /// is not closed under identities and composition.
    pub fn subcategory(&self, objects: &[u32], keep: impl Fn(u32) -> bool) -> Result<(FiniteCategory, Vec<u32>, Vec<u32>)> {
        let mut obj_index = HashMap::new();
        for (i, &a) in objects.iter().enumerate() {
            obj_index.insert(a, i as u32);
        }
        let mut mors = Vec::new();
        let mut mor_index = HashMap::new();
        for f in 0..self.names.len() as u32 {
            if obj_index.contains_key(&self.source(f)) && obj_index.contains_key(&self.target(f)) && keep(f) {
                mor_index.insert(f, mors.len() as u32);
                mors.push(f);
            }
        }
        let mut ids = Vec::new();
        for &a in objects {
            let id = mor_index
                .get(&self.identity(a))
                .ok_or_else(|| Error::Certification(format!("identity of {} not kept", self.objects[a as usize])))?;
            ids.push(*id);
        }
        let specs = mors
            .iter()
            .map(|&f| MorphismSpec::new(self.names[f as usize].clone(), obj_index[&self.source(f)], obj_index[&self.target(f)]))
            .collect();
        for &f in &mors {
            for &g in self.outgoing(self.target(f)) {
                if mor_index.contains_key(&g) && !mor_index.contains_key(&self.compose(g, f)) {
                    return Err(Error::Certification("selection not closed under composition".into()));
                }
            }
        }
        let names = objects.iter().map(|&a| self.objects[a as usize].clone()).collect();
        let sub = FiniteCategory::from_fn(names, specs, ids, |g, f| mor_index[&self.compose(mors[g as usize], mors[f as usize])])?;
        Ok((sub, objects.to_vec(), mors))
    }

    /// Maximal groupoid: same objects, invertible morphisms. Returns the morphism inclusion
    /// alongside.
    pub fn maximal_groupoid(&self) -> (FiniteCategory, Vec<u32>) {
        let objs: Vec<u32> = (0..self.objects.len() as u32).collect();
        let (g, _, mors) = self.subcategory(&objs, |f| self.is_isomorphism(f)).expect("isomorphisms form a subcategory");
        (g, mors)
    }

    pub fn opposite(&self) -> FiniteCategory {
        let specs = (0..self.names.len())
            .map(|f| MorphismSpec::new(format!("{}^op", self.names[f]), self.tgt[f], self.src[f]))
            .collect();
        FiniteCategory::from_fn(self.objects.clone(), specs, self.identities.clone(), |g, f| self.compose(f, g))
            .expect("opposite of a category")
    }

    pub fn to_raw(&self) -> RawCategory {
        let mut composition = BTreeMap::new();
        let mut keys: Vec<_> = self.table.iter().collect();
        keys.sort();
        for (&(g, f), &h) in keys {
            composition.insert(format!("{};{}", self.names[f as usize], self.names[g as usize]), self.names[h as usize].clone());
        }
        RawCategory {
            objects: self.objects.clone(),
            morphisms: (0..self.names.len())
                .map(|f| RawMorphism {
                    name: self.names[f].clone(),
                    source: self.objects[self.src[f] as usize].clone(),
                    target: self.objects[self.tgt[f] as usize].clone(),
                })
                .collect(),
            identities: self.identities.iter().map(|&i| self.names[i as usize].clone()).collect(),
            composition,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("category serializes")
    }

    pub fn from_raw(raw: &RawCategory) -> Result<FiniteCategory> {
        let obj: HashMap<&str, u32> = raw.objects.iter().enumerate().map(|(i, o)| (o.as_str(), i as u32)).collect();
        let mor: HashMap<&str, u32> = raw.morphisms.iter().enumerate().map(|(i, m)| (m.name.as_str(), i as u32)).collect();
        let look_o = |s: &str| obj.get(s).copied().ok_or_else(|| Error::InvalidArgument(format!("unknown object {}", s)));
        let look_m = |s: &str| mor.get(s).copied().ok_or_else(|| Error::InvalidArgument(format!("unknown morphism {}", s)));
        let mut specs = Vec::new();
        for m in &raw.morphisms {
            specs.push(MorphismSpec::new(m.name.clone(), look_o(&m.source)?, look_o(&m.target)?));
        }
        let ids = raw.identities.iter().map(|s| look_m(s)).collect::<Result<Vec<_>>>()?;
        let mut table = HashMap::new();
        for (k, v) in &raw.composition {
            let (f, g) = k.split_once(';').ok_or_else(|| Error::InvalidArgument(format!("bad composition key {}", k)))?;
            table.insert((look_m(g)?, look_m(f)?), look_m(v)?);
        }
        let c = FiniteCategory::from_fn(raw.objects.clone(), specs, ids, |g, f| table.get(&(g, f)).copied().unwrap_or(u32::MAX))?;
        if c.table.len() != table.len() {
            return Err(Error::InvalidArgument("composition table has entries for non-composable pairs".into()));
        }
        Ok(c)
    }

    pub fn from_json(s: &str) -> Result<FiniteCategory> {
        FiniteCategory::from_raw(&serde_json::from_str(s)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub name: String,
    pub source: String,
    pub target: String,
}

/// JSON form; composition keys are `"f;g"` for `g ∘ f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: Vec<String>,
    pub composition: BTreeMap<String, String>,
}

/// A finite poset as a category; `leq(i, j)` must be a partial order.
pub fn poset_category(names: Vec<String>, leq: impl Fn(usize, usize) -> bool) -> FiniteCategory {
    let n = names.len();
    let mut specs = Vec::new();
    let mut index = HashMap::new();
    for i in 0..n {
        for j in 0..n {
            if leq(i, j) {
                index.insert((i, j), specs.len() as u32);
                specs.push(MorphismSpec::new(format!("{}<={}", names[i], names[j]), i as u32, j as u32));
            }
        }
    }
    let ids = (0..n).map(|i| index[&(i, i)]).collect();
    let endpoints: Vec<(usize, usize)> = specs.iter().map(|m| (m.source as usize, m.target as usize)).collect();
    FiniteCategory::from_fn(names, specs, ids, |g, f| index[&(endpoints[f as usize].0, endpoints[g as usize].1)])
        .expect("poset category")
}

/// The ordinal `[n] = {0 < 1 < ... < n}`.
pub fn ordinal(n: usize) -> FiniteCategory {
    poset_category((0..=n).map(|i| i.to_string()).collect(), |i, j| i <= j)
}

pub fn terminal_category() -> FiniteCategory {
    ordinal(0)
}

pub fn discrete_category(n: usize) -> FiniteCategory {
    poset_category((0..n).map(|i| i.to_string()).collect(), |i, j| i == j)
}

/// Contractible groupoid on `n+1` objects (one morphism between any two objects).
pub fn contractible_groupoid(n: usize) -> FiniteCategory {
    poset_category((0..=n).map(|i| i.to_string()).collect(), |_, _| true)
}

/// Cyclic group of order `k` as a one-object category.
pub fn cyclic_group(k: usize) -> FiniteCategory {
    let specs = (0..k).map(|i| MorphismSpec::new(format!("g{}", i), 0, 0)).collect();
    FiniteCategory::from_fn(vec!["*".into()], specs, vec![0], |g, f| ((g + f) as usize % k) as u32).expect("cyclic group")
}

/// Strict pullback `A ×_C B` of functors into a common category.
pub struct CategoryPullback {
    pub category: FiniteCategory,
    pub objects: Vec<(u32, u32)>,
    pub morphisms: Vec<(u32, u32)>,
}

pub fn category_pullback(f: &super::FunctorData, g: &super::FunctorData) -> Result<CategoryPullback> {
    if f.target.as_ref() != g.target.as_ref() {
        return Err(Error::CodomainMismatch("functors have different codomains".into()));
    }
    let (a, b) = (&f.source, &g.source);
    let mut objects = Vec::new();
    let mut obj_index = HashMap::new();
    for x in 0..a.object_count() as u32 {
        for y in 0..b.object_count() as u32 {
            if f.object(x) == g.object(y) {
                obj_index.insert((x, y), objects.len() as u32);
                objects.push((x, y));
            }
        }
    }
    let mut morphisms = Vec::new();
    let mut mor_index = HashMap::new();
    for u in 0..a.morphism_count() as u32 {
        for v in 0..b.morphism_count() as u32 {
            if f.morphism(u) == g.morphism(v) {
                mor_index.insert((u, v), morphisms.len() as u32);
                morphisms.push((u, v));
            }
        }
    }
    let specs = morphisms
        .iter()
        .map(|&(u, v)| {
            MorphismSpec::new(
                format!("({},{})", a.morphism_name(u), b.morphism_name(v)),
                obj_index[&(a.source(u), b.source(v))],
                obj_index[&(a.target(u), b.target(v))],
            )
        })
        .collect();
    let names = objects.iter().map(|&(x, y)| format!("({},{})", a.object_name(x), b.object_name(y))).collect();
    let ids = objects.iter().map(|&(x, y)| mor_index[&(a.identity(x), b.identity(y))]).collect();
    let category = FiniteCategory::from_fn(names, specs, ids, |p, q| {
        let (p1, p2) = morphisms[p as usize];
        let (q1, q2) = morphisms[q as usize];
        mor_index[&(a.compose(p1, q1), b.compose(p2, q2))]
    })?;
    Ok(CategoryPullback { category, objects, morphisms })
}
