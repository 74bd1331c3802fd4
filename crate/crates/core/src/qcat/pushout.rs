use std::collections::BTreeSet;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::probe::QuasicategoryProbe;
use crate::catkit::{nerve_map, nerve_with_chains, poset_category, FiniteCategory, FunctorData, Nerve};
use crate::error::{Error, Result};
use crate::report::{Clause, Report};
use crate::simpset::{component_count, homology, MapSearch, Monotone, SimplicialSet, TargetIndex};
use crate::waldcat::is_pushout;

pub const DEFAULT_COCONE_BUDGET: usize = 200_000;

// K ⋆ [k] for the span K = (b <- a -> c): objects a, b, c, then the cone points 0..=k.
struct Shape {
    cat: Arc<FiniteCategory>,
    nerve: Nerve,
    offsets: [usize; 4],
}

const A: usize = 0;
const B: usize = 1;
const C: usize = 2;

fn shape(k: usize) -> Shape {
    let mut names: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
    names.extend((0..=k).map(|j| j.to_string()));
    let cat = Arc::new(poset_category(names, |p, q| match (p < 3, q < 3) {
        (true, true) => p == q || p == A,
        (true, false) => true,
        (false, true) => false,
        (false, false) => p <= q,
    }));
    let nerve = nerve_with_chains(&cat, 2);
    let mut offsets = [0usize; 4];
    for l in 0..3 {
        offsets[l + 1] = offsets[l] + nerve.set.count(l);
    }
    Shape { cat, nerve, offsets }
}

fn chain_objects(c: &FiniteCategory, l: usize, chain: &[u32]) -> Vec<usize> {
    if l == 0 {
        return vec![chain[0] as usize];
    }
    let mut objs = vec![c.source(chain[0]) as usize];
    objs.extend(chain.iter().map(|&m| c.target(m) as usize));
    objs
}

/// A cocone under the span, as a map `N(K ⋆ [0]) -> X`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Cocone {
    pub apex: u32,
    /// The edge `b -> p`.
    pub from_b: u32,
    /// The edge `c -> p`.
    pub from_c: u32,
    #[serde(skip)]
    pub values: Vec<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct QcatPushout {
    pub cocones: usize,
    /// Every cocone whose mapping spaces all pass the evidence test.
    pub initial: Vec<Cocone>,
    pub label: &'static str,
}

impl QcatPushout {
    pub fn pushout(&self) -> &Cocone {
        &self.initial[0]
    }
}

struct Under<'a> {
    x: &'a SimplicialSet,
    xi: TargetIndex,
    f: u32,
    i: u32,
    shapes: Vec<Shape>,
    budget: usize,
}

impl<'a> Under<'a> {
    fn new(x: &'a SimplicialSet, f: u32, i: u32, budget: usize) -> Self {
        Under { x, xi: TargetIndex::new(x), f, i, shapes: (0..=3).map(shape).collect(), budget }
    }

    // Value of the span on a simplex of N(K) with object sequence `objs`.
    fn diagram(&self, objs: &[usize]) -> u32 {
        let n = objs.len() - 1;
        let x = self.x;
        let vertex = |o: usize| match o {
            A => x.face(1, self.f, 1),
            B => x.face(1, self.f, 0),
            _ => x.face(1, self.i, 0),
        };
        if objs.iter().all(|&o| o == objs[0]) {
            return x.apply(0, vertex(objs[0]), &Monotone::constant(n, 0, 0));
        }
        let e = if objs.contains(&B) { self.f } else { self.i };
        let theta = Monotone { images: objs.iter().map(|&o| usize::from(o != A)).collect(), target: 1 };
        x.apply(1, e, &theta)
    }

    /// For the functor `K ⋆ [from] -> K ⋆ [to]` fixing `K` and moving cone points by
    /// `top`, the flat position in `to` of each flat position in `from`.
    fn table(&self, from: usize, to: usize, top: impl Fn(usize) -> usize) -> Result<Vec<usize>> {
        let (s, t) = (&self.shapes[from], &self.shapes[to]);
        let objects: Vec<u32> = (0..s.cat.object_count()).map(|o| if o < 3 { o as u32 } else { (3 + top(o - 3)) as u32 }).collect();
        let morphisms: Vec<u32> = (0..s.cat.morphism_count() as u32)
            .map(|m| t.cat.hom(objects[s.cat.source(m) as usize], objects[s.cat.target(m) as usize])[0])
            .collect();
        let fun = FunctorData::new(s.cat.clone(), t.cat.clone(), objects, morphisms)?;
        let map = nerve_map(&fun, &s.nerve, &t.nerve)?;
        Ok((0..3).flat_map(|l| (0..s.nerve.set.count(l) as u32).map(move |z| (l, z))).map(|(l, z)| t.offsets[l] + map.at(l, z) as usize).collect())
    }

    fn search(&self, k: usize, pins: &[(usize, u32)]) -> Result<Vec<Vec<u32>>> {
        let sh = &self.shapes[k];
        let mut ms = MapSearch::new(&sh.nerve.set, self.x, &self.xi, self.budget);
        for l in 0..3 {
            for z in 0..sh.nerve.set.count(l) as u32 {
                let objs = chain_objects(&sh.cat, l, &sh.nerve.chains[l][z as usize]);
                if objs.iter().all(|&o| o < 3) {
                    ms.pin(l, z, self.diagram(&objs));
                }
            }
        }
        for &(pos, v) in pins {
            let l = (0..3).rfind(|&l| sh.offsets[l] <= pos).unwrap();
            ms.pin(l, (pos - sh.offsets[l]) as u32, v);
        }
        ms.run()
    }

    fn cocone(&self, values: Vec<u32>) -> Cocone {
        let sh = &self.shapes[0];
        let top = sh.cat.find_object("0").unwrap();
        let edge = |o: u32| sh.offsets[1] + sh.nerve.edge(sh.cat.hom(o, top)[0]) as usize;
        Cocone { apex: values[sh.nerve.vertex(top) as usize], from_b: values[edge(B as u32)], from_c: values[edge(C as u32)], values }
    }

    /// The mapping space from `v` to `w` in `X_{F/}`: `k`-simplices are `(k+1)`-simplices
    /// with vertex `0` at `v` and `d_0` totally degenerate at `w`. Levels `0..=2`.
    fn mapping_space(&self, v: &Cocone, w: &Cocone, tables: &Tables) -> Result<SimplicialSet> {
        let mut levels = Vec::new();
        for k in 0..=2 {
            let mut pins: Vec<(usize, u32)> = tables.first[k].iter().enumerate().map(|(p, &q)| (q, v.values[p])).collect();
            pins.extend(tables.rest[k].iter().zip(&tables.collapse[k]).map(|(&q, &c)| (q, w.values[c])));
            levels.push(self.search(k + 1, &pins)?);
        }
        let (set, _) = SimplicialSet::from_keys(
            2,
            levels,
            |k, key: &Vec<u32>, i| tables.faces[k][i + 1].iter().map(|&p| key[p]).collect(),
            |k, key: &Vec<u32>, i| tables.degens[k][i + 1].iter().map(|&p| key[p]).collect(),
            |key| format!("{:?}", key),
            None,
        )?;
        Ok(set)
    }
}

// Restriction tables between the shapes used by the mapping spaces.
struct Tables {
    // K ⋆ [0] -> K ⋆ [k+1] onto the point 0
    first: Vec<Vec<usize>>,
    // K ⋆ [k] -> K ⋆ [k+1] onto the points 1..
    rest: Vec<Vec<usize>>,
    // K ⋆ [k] -> K ⋆ [0]
    collapse: Vec<Vec<usize>>,
    // level k of the mapping space lives on K ⋆ [k+1]; faces[k][j] restricts along δ^j
    faces: Vec<Vec<Vec<usize>>>,
    degens: Vec<Vec<Vec<usize>>>,
}

impl Tables {
    fn new(u: &Under) -> Result<Self> {
        let mut t = Tables { first: vec![], rest: vec![], collapse: vec![], faces: vec![vec![]], degens: vec![] };
        for k in 0..=2 {
            t.first.push(u.table(0, k + 1, |_| 0)?);
            t.rest.push(u.table(k, k + 1, |j| j + 1)?);
            t.collapse.push(u.table(k, 0, |_| 0)?);
        }
        for k in 1..=2 {
            t.faces.push((0..=k + 1).map(|j| u.table(k, k + 1, |p| if p < j { p } else { p + 1 })).collect::<Result<_>>()?);
        }
        for k in 0..2 {
            t.degens.push((0..=k + 1).map(|j| u.table(k + 2, k + 1, |p| if p <= j { p } else { p - 1 })).collect::<Result<_>>()?);
        }
        Ok(t)
    }
}

// Contractibility evidence: one component and no H₁.
fn contractible(m: &SimplicialSet) -> Result<bool> {
    if m.count(0) == 0 || component_count(m) != 1 {
        return Ok(false);
    }
    let h = homology(m, 1)?;
    Ok(h.degree(1).map_or(true, |g| g.free_rank == 0 && g.torsion.is_empty()))
}

/// Pushout of `b <-f- a -i-> c` in a simplicial set flagged at most 2-coskeletal: the
/// initial objects of the undercategory `X_{F/}`, tested through their mapping spaces.
pub fn quasicat_pushout(x: &SimplicialSet, f: u32, i: u32, budget: usize) -> Result<QcatPushout> {
    if !matches!(x.coskeletal_bound(), Some(k) if k <= 2) || x.trunc_dim() < 2 {
        return Err(Error::NotCoskeletal("pushout search needs a 2-coskeletal target truncated at 2 or more".into()));
    }
    if x.face(1, f, 1) != x.face(1, i, 1) {
        return Err(Error::InvalidArgument(format!("edges {} and {} do not share a source", x.id(1, f), x.id(1, i))));
    }
    let x2 = x.truncate(2);
    let u = Under::new(&x2, f, i, budget);
    let cocones: Vec<Cocone> = u.search(0, &[])?.into_iter().map(|v| u.cocone(v)).collect();
    let tables = Tables::new(&u)?;
    let flags = cocones
        .par_iter()
        .map(|v| {
            for w in &cocones {
                if !contractible(&u.mapping_space(v, w, &tables)?)? {
                    return Ok(false);
                }
            }
            Ok(true)
        })
        .collect::<Result<Vec<bool>>>()?;
    let initial: Vec<Cocone> = cocones.iter().zip(&flags).filter(|(_, &ok)| ok).map(|(c, _)| c.clone()).collect();
    if initial.is_empty() {
        return Err(Error::Certification(format!("no initial cocone under {} <- {} -> {}", x.id(1, f), x.id(0, x.face(1, f, 1)), x.id(1, i))));
    }
    Ok(QcatPushout { cocones: cocones.len(), initial, label: "evidence" })
}

/// Spans `b <-f- a -i-> c` with `f` an isomorphism, non-identity `f` first.
pub fn equivalence_spans(c: &FiniteCategory) -> Vec<(u32, u32)> {
    let mut out: Vec<(bool, u32, u32)> = Vec::new();
    for f in 0..c.morphism_count() as u32 {
        if c.is_isomorphism(f) {
            for &i in c.outgoing(c.source(f)) {
                out.push((c.is_identity(f), f, i));
            }
        }
    }
    out.sort();
    out.into_iter().map(|(_, f, i)| (f, i)).collect()
}

/// On `N(C)`, the initial cocones are exactly the categorical pushouts.
pub fn check_nerve_pushouts(c: &FiniteCategory, spans: &[(u32, u32)], budget: usize) -> Result<Report> {
    let n = nerve_with_chains(c, 2);
    let mut report = Report::new(format!("pushouts in the nerve of a category with {} objects", c.object_count()));
    let mut agree = Clause::new("initial_cocones_are_categorical_pushouts");
    let mut existence = Clause::new("existence_matches");
    for &(f, i) in spans {
        let categorical: BTreeSet<(u32, u32)> = (0..c.object_count() as u32)
            .flat_map(|p| c.hom(c.target(f), p).iter().flat_map(move |&u| c.hom(c.target(i), p).iter().map(move |&v| (u, v))))
            .filter(|&(u, v)| is_pushout(c, f, i, u, v))
            .collect();
        let at = || format!("{} <- {}", c.morphism_name(f), c.morphism_name(i));
        match quasicat_pushout(&n.set, n.edge(f), n.edge(i), budget) {
            Ok(q) => {
                let found: BTreeSet<(u32, u32)> = q.initial.iter().map(|k| (n.morphism_of_edge(k.from_b), n.morphism_of_edge(k.from_c))).collect();
                agree.check(found == categorical, || format!("{}: {} initial vs {} pushouts", at(), found.len(), categorical.len()));
            }
            Err(Error::Certification(_)) => {
                existence.check(categorical.is_empty(), at);
            }
            Err(e) => return Err(e),
        }
    }
    report.push(agree);
    report.push(existence);
    Ok(report)
}

/// The pushout of an equivalence is an equivalence: for each span with `f` invertible
/// in `τ₁X`, every initial cocone has `c -> p` invertible.
pub fn check_pushout_of_equivalence(probe: &QuasicategoryProbe, spans: &[(u32, u32)], budget: usize) -> Result<Report> {
    let x = &probe.set;
    let mut report = Report::new("pushout of an equivalence");
    let mut pre = Clause::new("spans_have_an_equivalence_leg");
    let mut leg = Clause::new("far_leg_is_an_equivalence");
    for &(f, i) in spans {
        let at = || format!("{} <- {}", x.id(1, f), x.id(1, i));
        if !pre.check(probe.is_equivalence(f), at) {
            continue;
        }
        let q = quasicat_pushout(x, f, i, budget)?;
        for k in &q.initial {
            leg.check(probe.is_equivalence(k.from_c), at);
        }
    }
    report.push(pre);
    report.push(leg);
    Ok(report)
}
