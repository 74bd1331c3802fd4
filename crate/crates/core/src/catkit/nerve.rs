use std::collections::HashMap;
use std::sync::Arc;

use super::category::{FiniteCategory, MorphismSpec};
use super::functor::FunctorData;
use crate::error::{Error, Result};
use crate::simpset::{SimplicialMap, SimplicialSet};

/// Nerve of a category together with the chain behind each simplex.
///
/// Level 0 keys are `[object]`; level `n ≥ 1` keys are composable morphism chains
/// `[f_1, ..., f_n]` with `f_1` applied first.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub set: Arc<SimplicialSet>,
    pub chains: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, u32>>,
}

impl Nerve {
    pub fn index_of(&self, n: usize, chain: &[u32]) -> Option<u32> {
        self.index[n].get(chain).copied()
    }

    /// The vertex for object `a`.
    pub fn vertex(&self, a: u32) -> u32 {
        self.index[0][&vec![a]]
    }

    /// Edge for morphism `f`.
    pub fn edge(&self, f: u32) -> u32 {
        self.index[1][&vec![f]]
    }

    /// The `n`-simplex for a chain of objects `c_0 -> ... -> c_n` given by consecutive
    /// morphisms; for `n = 0` pass the object via `vertex`.
    pub fn simplex(&self, chain: &[u32]) -> Option<u32> {
        self.index.get(chain.len())?.get(chain).copied()
    }

    pub fn object_of_vertex(&self, v: u32) -> u32 {
        self.chains[0][v as usize][0]
    }

    pub fn morphism_of_edge(&self, e: u32) -> u32 {
        self.chains[1][e as usize][0]
    }
}

fn vertex_of_chain(c: &FiniteCategory, chain: &[u32], i: usize) -> u32 {
    if i == 0 {
        c.source(chain[0])
    } else {
        c.target(chain[i - 1])
    }
}

fn chains(c: &FiniteCategory, d: usize) -> Vec<Vec<Vec<u32>>> {
    let mut levels: Vec<Vec<Vec<u32>>> = vec![(0..c.object_count() as u32).map(|a| vec![a]).collect()];
    if d >= 1 {
        levels.push((0..c.morphism_count() as u32).map(|f| vec![f]).collect());
    }
    for _ in 2..=d {
        let prev = levels.last().unwrap();
        let mut next = Vec::new();
        for ch in prev {
            let end = c.target(*ch.last().unwrap());
            for &g in c.outgoing(end) {
                let mut x = ch.clone();
                x.push(g);
                next.push(x);
            }
        }
        levels.push(next);
    }
    levels
}

fn chain_face(c: &FiniteCategory, n: usize, ch: &[u32], i: usize) -> Vec<u32> {
    if n == 1 {
        return vec![if i == 0 { c.target(ch[0]) } else { c.source(ch[0]) }];
    }
    let mut out = Vec::with_capacity(n - 1);
    for k in 0..n {
        if i == 0 && k == 0 || i == n && k == n - 1 {
            continue;
        }
        if i > 0 && i < n && k == i {
            continue;
        }
        if i > 0 && i < n && k == i - 1 {
            out.push(c.compose(ch[i], ch[i - 1]));
        } else {
            out.push(ch[k]);
        }
    }
    out
}

fn chain_degen(c: &FiniteCategory, n: usize, ch: &[u32], i: usize) -> Vec<u32> {
    if n == 0 {
        return vec![c.identity(ch[0])];
    }
    let mut out = ch.to_vec();
    out.insert(i, c.identity(vertex_of_chain(c, ch, i)));
    out
}

/// Nerve truncated at `d`, flagged 2-coskeletal.
pub fn nerve_with_chains(c: &FiniteCategory, d: usize) -> Nerve {
    let levels = chains(c, d);
    let (set, keys) = SimplicialSet::from_keys(
        d,
        levels,
        |n, ch, i| chain_face(c, n, ch, i),
        |n, ch, i| chain_degen(c, n, ch, i),
        |ch| ch.iter().map(|&x| x.to_string()).collect::<Vec<_>>().join("."),
        Some(2),
    )
    .expect("nerve is closed under operators");
    let index = keys.iter().map(|lv| lv.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect()).collect();
    Nerve { set: Arc::new(set), chains: keys, index }
}

pub fn nerve(c: &FiniteCategory, d: usize) -> SimplicialSet {
    nerve_with_chains(c, d).set.as_ref().clone()
}

/// Levelwise nerve of a functor.
pub fn nerve_map(f: &FunctorData, source: &Nerve, target: &Nerve) -> Result<SimplicialMap> {
    let d = source.set.trunc_dim();
    let mut assignment = Vec::new();
    for n in 0..=d {
        let lv = source.chains[n]
            .iter()
            .map(|ch| {
                let img: Vec<u32> = if n == 0 { vec![f.object(ch[0])] } else { ch.iter().map(|&g| f.morphism(g)).collect() };
                target.index_of(n, &img).ok_or_else(|| Error::Certification("image chain missing from target nerve".into()))
            })
            .collect::<Result<Vec<u32>>>()?;
        assignment.push(lv);
    }
    SimplicialMap::new(source.set.clone(), target.set.clone(), assignment)
}

pub const DEFAULT_PATH_CAP: usize = 12;
const STATE_CAP: usize = 200_000;

/// The homotopy category `τ₁X` with the data needed to interpret it.
#[derive(Clone, Debug)]
pub struct Tau1 {
    pub category: FiniteCategory,
    /// For each edge of X, the morphism of `τ₁X` it represents.
    pub edge_class: Vec<u32>,
    /// A representing edge path (edge indices of X) for each morphism.
    pub words: Vec<Vec<u32>>,
}

// Right congruence enumeration on paths out of a fixed vertex: states are path classes,
// transitions append an edge, and every 2-simplex and degenerate edge contributes a
// relation at every state.
struct Enumeration<'a> {
    x: &'a SimplicialSet,
    parent: Vec<u32>,
    trans: Vec<HashMap<u32, u32>>,
    end: Vec<u32>,
    word: Vec<Vec<u32>>,
    queue: Vec<(u32, u32)>,
    out_edges: &'a [Vec<u32>],
}

impl<'a> Enumeration<'a> {
    fn find(&mut self, mut s: u32) -> u32 {
        while self.parent[s as usize] != s {
            let p = self.parent[self.parent[s as usize] as usize];
            self.parent[s as usize] = p;
            s = p;
        }
        s
    }

    fn new_state(&mut self, end: u32, word: Vec<u32>) -> Result<u32> {
        if self.parent.len() >= STATE_CAP {
            return Err(Error::ExplorationBound(format!("more than {} path classes", STATE_CAP)));
        }
        let s = self.parent.len() as u32;
        self.parent.push(s);
        self.trans.push(HashMap::new());
        self.end.push(end);
        self.word.push(word);
        Ok(s)
    }

    fn step(&mut self, s: u32, e: u32) -> Result<u32> {
        let s = self.find(s);
        if let Some(&t) = self.trans[s as usize].get(&e) {
            return Ok(self.find(t));
        }
        let mut w = self.word[s as usize].clone();
        w.push(e);
        let t = self.new_state(self.x.face(1, e, 0), w)?;
        self.trans[s as usize].insert(e, t);
        Ok(t)
    }

    fn lookup(&mut self, s: u32, e: u32) -> Option<u32> {
        let s = self.find(s);
        let t = *self.trans[s as usize].get(&e)?;
        Some(self.find(t))
    }

    fn coincide(&mut self, a: u32, b: u32) {
        self.queue.push((a, b));
        while let Some((a, b)) = self.queue.pop() {
            let (a, b) = (self.find(a), self.find(b));
            if a == b {
                continue;
            }
            let (keep, gone) = if a < b { (a, b) } else { (b, a) };
            self.parent[gone as usize] = keep;
            let moved: Vec<(u32, u32)> = self.trans[gone as usize].drain().collect();
            for (e, t) in moved {
                match self.trans[keep as usize].get(&e) {
                    Some(&u) => self.queue.push((u, t)),
                    None => {
                        self.trans[keep as usize].insert(e, t);
                    }
                }
            }
        }
    }

    fn live(&self, s: u32) -> bool {
        self.parent[s as usize] == s
    }
}

/// `τ₁X`: free category on the 1-skeleton modulo the 2-simplex relations
/// `d₁σ = d₀σ ∘ d₂σ` and `s₀v = id`.
///
/// Path classes out of each vertex are enumerated by coincidence closure; a live class
/// whose defining path is longer than `path_cap` aborts with an exploration-bound error.
pub fn tau1(x: &SimplicialSet, path_cap: usize) -> Result<Tau1> {
    if x.trunc_dim() < 2 {
        return Err(Error::InvalidArgument("tau1 needs truncation at least 2".into()));
    }
    let nv = x.count(0);
    let mut out_edges: Vec<Vec<u32>> = vec![Vec::new(); nv];
    for e in 0..x.count(1) as u32 {
        out_edges[x.face(1, e, 1) as usize].push(e);
    }
    // relations grouped by their starting vertex: (lhs path, rhs path)
    let mut relations: Vec<Vec<(Vec<u32>, Vec<u32>)>> = vec![Vec::new(); nv];
    for v in 0..nv as u32 {
        relations[v as usize].push((vec![x.degen(0, v, 0)], Vec::new()));
    }
    for s in 0..x.count(2) as u32 {
        let v0 = x.vertex(2, s, 0);
        relations[v0 as usize].push((vec![x.face(2, s, 2), x.face(2, s, 0)], vec![x.face(2, s, 1)]));
    }

    let mut objects_out: Vec<Vec<(u32, Vec<u32>)>> = Vec::with_capacity(nv);
    let mut tables: Vec<(Vec<u32>, Vec<HashMap<u32, u32>>, HashMap<u32, u32>)> = Vec::new();
    for a in 0..nv as u32 {
        let mut en = Enumeration {
            x,
            parent: Vec::new(),
            trans: Vec::new(),
            end: Vec::new(),
            word: Vec::new(),
            queue: Vec::new(),
            out_edges: &out_edges,
        };
        en.new_state(a, Vec::new())?;
        let mut p = 0u32;
        while (p as usize) < en.parent.len() {
            if en.live(p) {
                if en.word[p as usize].len() > path_cap {
                    return Err(Error::ExplorationBound(format!(
                        "path classes from vertex {} not closed within length {}",
                        x.id(0, a),
                        path_cap
                    )));
                }
                let v = en.end[p as usize];
                for e in en.out_edges[v as usize].clone() {
                    en.step(p, e)?;
                }
                for (lhs, rhs) in relations[v as usize].clone() {
                    let mut l = p;
                    for &e in &lhs {
                        l = en.step(l, e)?;
                    }
                    let mut r = en.find(p);
                    for &e in &rhs {
                        r = en.step(r, e)?;
                    }
                    en.coincide(l, r);
                }
            }
            p += 1;
        }
        // verify closure: every live state satisfies every relation with defined steps
        let live: Vec<u32> = (0..en.parent.len() as u32).filter(|&s| en.live(s)).collect();
        for &s in &live {
            let v = en.end[s as usize];
            for e in &out_edges[v as usize] {
                if en.lookup(s, *e).is_none() {
                    return Err(Error::Certification("path enumeration left a transition undefined".into()));
                }
            }
            for (lhs, rhs) in &relations[v as usize] {
                let trace = |en: &mut Enumeration, w: &[u32]| -> Option<u32> {
                    let mut t = s;
                    for &e in w {
                        t = en.lookup(t, e)?;
                    }
                    Some(en.find(t))
                };
                if trace(&mut en, lhs) != trace(&mut en, rhs) {
                    return Err(Error::Certification("path enumeration does not respect a relation".into()));
                }
            }
        }
        let local: HashMap<u32, u32> = live.iter().enumerate().map(|(i, &s)| (s, i as u32)).collect();
        let mut trans = Vec::new();
        for &s in &live {
            let mut t = HashMap::new();
            for (&e, &u) in en.trans[s as usize].clone().iter() {
                let u = en.find(u);
                t.insert(e, local[&u]);
            }
            trans.push(t);
        }
        objects_out.push(live.iter().map(|&s| (en.end[s as usize], en.word[s as usize].clone())).collect());
        tables.push((live.clone(), trans, local));
    }

    // assemble morphisms: (source a, local index i)
    let mut specs = Vec::new();
    let mut global: Vec<Vec<u32>> = Vec::new();
    let mut words = Vec::new();
    for (a, outs) in objects_out.iter().enumerate() {
        let mut g = Vec::new();
        for (end, w) in outs {
            g.push(specs.len() as u32);
            let name = if w.is_empty() {
                format!("id[{}]", x.id(0, a as u32))
            } else {
                w.iter().map(|&e| x.id(1, e).to_string()).collect::<Vec<_>>().join("*")
            };
            specs.push(MorphismSpec::new(name, a as u32, *end));
            words.push(w.clone());
        }
        global.push(g);
    }
    let trace_local = |a: usize, start: u32, w: &[u32]| -> u32 {
        let mut t = start;
        for e in w {
            t = tables[a].1[t as usize][e];
        }
        t
    };
    let src_of: Vec<(usize, u32)> = global
        .iter()
        .enumerate()
        .flat_map(|(a, g)| g.iter().enumerate().map(move |(i, _)| (a, i as u32)))
        .collect();
    let identities: Vec<u32> = global.iter().map(|g| g[0]).collect();
    let objects = (0..nv as u32).map(|v| x.id(0, v).to_string()).collect();
    let words_ref = &words;
    let category = FiniteCategory::from_fn(objects, specs, identities, |g, f| {
        let (a, i) = src_of[f as usize];
        let t = trace_local(a, i, &words_ref[g as usize]);
        global[a][t as usize]
    })?;
    let edge_class = (0..x.count(1) as u32)
        .map(|e| {
            let a = x.face(1, e, 1) as usize;
            global[a][trace_local(a, 0, &[e]) as usize]
        })
        .collect();
    Ok(Tau1 { category, edge_class, words })
}

/// The comparison functor `τ₁(NC) -> C` sending a path class to its composite.
pub fn tau1_counit(c: &Arc<FiniteCategory>, nerve: &Nerve, tau: &Tau1) -> Result<FunctorData> {
    let t = &tau.category;
    let objects = (0..t.object_count() as u32).map(|v| nerve.object_of_vertex(v)).collect();
    let morphisms = (0..t.morphism_count() as u32)
        .map(|m| {
            let w = &tau.words[m as usize];
            if w.is_empty() {
                c.identity(nerve.object_of_vertex(t.source(m)))
            } else {
                let path: Vec<u32> = w.iter().map(|&e| nerve.morphism_of_edge(e)).collect();
                c.compose_path(&path).expect("edge paths in a nerve compose")
            }
        })
        .collect();
    FunctorData::new(Arc::new(t.clone()), c.clone(), objects, morphisms)
}
