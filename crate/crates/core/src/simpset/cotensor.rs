use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;

use super::constructors::standard;
use super::limits::product;
use super::map::SimplicialMap;
use super::monotone::Monotone;
use super::sset::SimplicialSet;
use crate::error::{Error, Result};

/// Lookup tables over a target simplicial set used by the map search.
pub struct TargetIndex {
    edges_by_ends: HashMap<(u32, u32), Vec<u32>>,
    edges_from: HashMap<u32, Vec<u32>>,
    edges_to: HashMap<u32, Vec<u32>>,
    all_edges: Vec<u32>,
    tris_by_faces: HashMap<(u32, u32, u32), Vec<u32>>,
}

impl TargetIndex {
    pub fn new(x: &SimplicialSet) -> TargetIndex {
        let mut idx = TargetIndex {
            edges_by_ends: HashMap::new(),
            edges_from: HashMap::new(),
            edges_to: HashMap::new(),
            all_edges: Vec::new(),
            tris_by_faces: HashMap::new(),
        };
        if x.trunc_dim() >= 1 {
            for e in 0..x.count(1) as u32 {
                let (s, t) = (x.face(1, e, 1), x.face(1, e, 0));
                idx.edges_by_ends.entry((s, t)).or_default().push(e);
                idx.edges_from.entry(s).or_default().push(e);
                idx.edges_to.entry(t).or_default().push(e);
                idx.all_edges.push(e);
            }
        }
        if x.trunc_dim() >= 2 {
            for t in 0..x.count(2) as u32 {
                let key = (x.face(2, t, 0), x.face(2, t, 1), x.face(2, t, 2));
                idx.tris_by_faces.entry(key).or_default().push(t);
            }
        }
        idx
    }
}

#[derive(Clone, Copy)]
enum Low {
    Nondeg(usize),
    Degen(usize, u32),
}

#[derive(Clone, Copy)]
enum Step {
    Vertex(u32),
    Edge(u32),
    Tri(u32),
}

/// Enumerates maps from the 2-truncation of `k` into `x`, subject to pinned values.
/// A map is returned as its values on all simplices of levels `0..=min(2, D_k)`,
/// concatenated level by level.
pub struct MapSearch<'a> {
    k: &'a SimplicialSet,
    x: &'a SimplicialSet,
    xi: &'a TargetIndex,
    top: usize,
    offsets: [usize; 4],
    level1: Vec<Low>,
    level2: Vec<Low>,
    nondeg_edges: Vec<u32>,
    nondeg_tris: Vec<u32>,
    steps: Vec<Step>,
    pins: HashMap<(usize, u32), u32>,
    budget: usize,
}

impl<'a> MapSearch<'a> {
    pub fn new(k: &'a SimplicialSet, x: &'a SimplicialSet, xi: &'a TargetIndex, budget: usize) -> Self {
        let top = k.trunc_dim().min(2);
        let mut offsets = [0usize; 4];
        for l in 0..3 {
            offsets[l + 1] = offsets[l] + if l <= top { k.count(l) } else { 0 };
        }
        let mut level1 = Vec::new();
        let mut nondeg_edges = Vec::new();
        if top >= 1 {
            for z in 0..k.count(1) as u32 {
                if k.is_degenerate(1, z) {
                    level1.push(Low::Degen(0, k.face(1, z, 0)));
                } else {
                    level1.push(Low::Nondeg(nondeg_edges.len()));
                    nondeg_edges.push(z);
                }
            }
        }
        let mut level2 = Vec::new();
        let mut nondeg_tris = Vec::new();
        if top >= 2 {
            for z in 0..k.count(2) as u32 {
                match (0..2).find(|&i| k.degen(1, k.face(2, z, i), i) == z) {
                    Some(i) => level2.push(Low::Degen(i, k.face(2, z, i))),
                    None => {
                        level2.push(Low::Nondeg(nondeg_tris.len()));
                        nondeg_tris.push(z);
                    }
                }
            }
        }
        let mut s = MapSearch {
            k,
            x,
            xi,
            top,
            offsets,
            level1,
            level2,
            nondeg_edges,
            nondeg_tris,
            steps: Vec::new(),
            pins: HashMap::new(),
            budget,
        };
        s.plan();
        s
    }

    /// Pin the value of a simplex of `k` (level ≤ 2).
    pub fn pin(&mut self, level: usize, z: u32, value: u32) {
        self.pins.insert((level, z), value);
    }

    pub fn offsets(&self) -> [usize; 4] {
        self.offsets
    }

    fn plan(&mut self) {
        let k = self.k;
        let nv = k.count(0);
        let mut incident: Vec<Vec<usize>> = vec![Vec::new(); nv];
        for (slot, &e) in self.nondeg_edges.iter().enumerate() {
            incident[k.face(1, e, 1) as usize].push(slot);
            incident[k.face(1, e, 0) as usize].push(slot);
        }
        let mut steps = Vec::new();
        // determined_at[v] = step index after which vertex v has a value
        let mut vertex_ready = vec![usize::MAX; nv];
        for v in 0..nv {
            if incident[v].is_empty() {
                steps.push(Step::Vertex(v as u32));
                vertex_ready[v] = steps.len();
            }
        }
        let mut edge_ready = vec![usize::MAX; self.nondeg_edges.len()];
        let mut edge_done = vec![false; self.nondeg_edges.len()];
        let mut visited = vec![false; nv];
        for start in 0..nv {
            if visited[start] || incident[start].is_empty() {
                continue;
            }
            visited[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &slot in &incident[v] {
                    if edge_done[slot] {
                        continue;
                    }
                    edge_done[slot] = true;
                    let e = self.nondeg_edges[slot];
                    steps.push(Step::Edge(slot as u32));
                    edge_ready[slot] = steps.len();
                    for w in [k.face(1, e, 1) as usize, k.face(1, e, 0) as usize] {
                        if vertex_ready[w] == usize::MAX {
                            vertex_ready[w] = steps.len();
                        }
                        if !visited[w] {
                            visited[w] = true;
                            queue.push_back(w);
                        }
                    }
                }
            }
        }
        // Insert each triangle right after the step that determines its last face.
        let mut tri_at: Vec<Vec<u32>> = vec![Vec::new(); steps.len() + 1];
        for (slot, &t) in self.nondeg_tris.iter().enumerate() {
            let mut ready = 0;
            for i in 0..3 {
                let f = k.face(2, t, i);
                let r = match self.level1[f as usize] {
                    Low::Nondeg(s) => edge_ready[s],
                    Low::Degen(_, v) => vertex_ready[v as usize],
                };
                ready = ready.max(r);
            }
            tri_at[ready].push(slot as u32);
        }
        let mut planned = Vec::new();
        for t in &tri_at[0] {
            planned.push(Step::Tri(*t));
        }
        for (i, st) in steps.into_iter().enumerate() {
            planned.push(st);
            for t in &tri_at[i + 1] {
                planned.push(Step::Tri(*t));
            }
        }
        self.steps = planned;
    }

    /// Run the search.
    pub fn run(&self) -> Result<Vec<Vec<u32>>> {
        let mut st = State {
            v0: vec![None; self.k.count(0)],
            e1: vec![0; self.nondeg_edges.len()],
            t2: vec![0; self.nondeg_tris.len()],
            out: Vec::new(),
        };
        for (&(l, z), &val) in &self.pins {
            if l == 0 {
                st.v0[z as usize] = Some(val);
            }
        }
        self.recurse(0, &mut st)?;
        Ok(st.out)
    }

    fn val1(&self, st: &State, z: u32) -> u32 {
        match self.level1[z as usize] {
            Low::Nondeg(s) => st.e1[s],
            Low::Degen(_, v) => self.x.degen(0, st.v0[v as usize].expect("vertex assigned"), 0),
        }
    }

    fn val2(&self, st: &State, z: u32) -> u32 {
        match self.level2[z as usize] {
            Low::Nondeg(s) => st.t2[s],
            Low::Degen(i, e) => self.x.degen(1, self.val1(st, e), i),
        }
    }

    fn recurse(&self, pos: usize, st: &mut State) -> Result<()> {
        if pos == self.steps.len() {
            return self.emit(st);
        }
        match self.steps[pos] {
            Step::Vertex(v) => {
                if st.v0[v as usize].is_some() {
                    return self.recurse(pos + 1, st);
                }
                for c in 0..self.x.count(0) as u32 {
                    st.v0[v as usize] = Some(c);
                    self.recurse(pos + 1, st)?;
                }
                st.v0[v as usize] = None;
            }
            Step::Edge(slot) => {
                let e = self.nondeg_edges[slot as usize];
                let (a, b) = (self.k.face(1, e, 1) as usize, self.k.face(1, e, 0) as usize);
                let owned;
                let cands: &[u32] = match (st.v0[a], st.v0[b]) {
                    (Some(p), Some(q)) => self.xi.edges_by_ends.get(&(p, q)).map_or(&[], |v| v.as_slice()),
                    (Some(p), None) => self.xi.edges_from.get(&p).map_or(&[], |v| v.as_slice()),
                    (None, Some(q)) => self.xi.edges_to.get(&q).map_or(&[], |v| v.as_slice()),
                    (None, None) => &self.xi.all_edges,
                };
                let pinned = self.pins.get(&(1, e)).copied();
                if let Some(p) = pinned {
                    owned = if cands.contains(&p) { vec![p] } else { vec![] };
                } else {
                    owned = cands.to_vec();
                }
                let (sa, sb) = (st.v0[a], st.v0[b]);
                for c in owned {
                    let (s, t) = (self.x.face(1, c, 1), self.x.face(1, c, 0));
                    if a == b && s != t {
                        continue;
                    }
                    st.v0[a] = Some(s);
                    st.v0[b] = Some(t);
                    st.e1[slot as usize] = c;
                    self.recurse(pos + 1, st)?;
                }
                st.v0[a] = sa;
                st.v0[b] = sb;
            }
            Step::Tri(slot) => {
                let t = self.nondeg_tris[slot as usize];
                let key = (
                    self.val1(st, self.k.face(2, t, 0)),
                    self.val1(st, self.k.face(2, t, 1)),
                    self.val1(st, self.k.face(2, t, 2)),
                );
                let cands: Vec<u32> = match self.xi.tris_by_faces.get(&key) {
                    None => return Ok(()),
                    Some(v) => match self.pins.get(&(2, t)) {
                        Some(p) => v.iter().copied().filter(|c| c == p).collect(),
                        None => v.clone(),
                    },
                };
                for c in cands {
                    st.t2[slot as usize] = c;
                    self.recurse(pos + 1, st)?;
                }
            }
        }
        Ok(())
    }

    fn emit(&self, st: &mut State) -> Result<()> {
        let mut vals = Vec::with_capacity(self.offsets[3]);
        for v in 0..self.k.count(0) {
            vals.push(st.v0[v].expect("all vertices assigned"));
        }
        if self.top >= 1 {
            for z in 0..self.k.count(1) as u32 {
                vals.push(self.val1(st, z));
            }
        }
        if self.top >= 2 {
            for z in 0..self.k.count(2) as u32 {
                vals.push(self.val2(st, z));
            }
        }
        for (&(l, z), &val) in &self.pins {
            if vals[self.offsets[l] + z as usize] != val {
                return Ok(());
            }
        }
        if st.out.len() >= self.budget {
            return Err(Error::budget("enumerating simplicial maps", self.budget));
        }
        st.out.push(vals);
        Ok(())
    }
}

struct State {
    v0: Vec<Option<u32>>,
    e1: Vec<u32>,
    t2: Vec<u32>,
    out: Vec<Vec<u32>>,
}

/// Pinned values for level `m` of a cotensor, as `(level, simplex of A × Δ[m], value)`.
pub type PinFn<'a> = dyn Fn(usize, &SimplicialSet) -> Vec<(usize, u32, u32)> + Sync + 'a;
/// Filter on maps at level `m`.
pub type KeepFn<'a> = dyn Fn(usize, &[u32]) -> bool + Sync + 'a;

/// `X^A` truncated at `up_to`: level `m` is the set of maps `A × Δ[m] -> X`, each stored
/// by its values on levels `0..=2`.
pub struct Cotensor {
    pub set: Arc<SimplicialSet>,
    pub source: Arc<SimplicialSet>,
    pub target: Arc<SimplicialSet>,
    /// `A × Δ[m]` truncated at 2, for `m = 0..=up_to`.
    pub products: Vec<Arc<SimplicialSet>>,
    /// Level `m`: the maps, in the order of `set`.
    pub maps: Vec<Vec<Vec<u32>>>,
    offsets: Vec<[usize; 4]>,
    delta_index: Vec<Vec<HashMap<Monotone, u32>>>,
}

pub fn cotensor_into_coskeletal(a: &SimplicialSet, x: Arc<SimplicialSet>, up_to: usize, budget: usize) -> Result<Cotensor> {
    cotensor_constrained(a, x, up_to, budget, &|_, _| Vec::new(), &|_, _| true)
}

/// The subcomplex of `X^A` cut out by pins and a filter. The pins and the filter must
/// describe a subcomplex (closed under faces and degeneracies).
pub fn cotensor_constrained(
    a: &SimplicialSet,
    x: Arc<SimplicialSet>,
    up_to: usize,
    budget: usize,
    pins: &PinFn<'_>,
    keep: &KeepFn<'_>,
) -> Result<Cotensor> {
    cotensor_runs(a, x, up_to, budget, &|m, p| vec![pins(m, p)], keep)
}

/// The full subcomplex of `X^A` on the given vertices (maps `A -> X` in the level-0
/// layout of a cotensor). Level `m` is searched once per `(m+1)`-tuple of vertices.
pub fn cotensor_full_on(a: &SimplicialSet, x: Arc<SimplicialSet>, up_to: usize, budget: usize, vertices: &[Vec<u32>]) -> Result<Cotensor> {
    let a2 = a.truncate(a.trunc_dim().min(2));
    let t = a2.trunc_dim();
    let mut base = [0usize; 4];
    for l in 0..3 {
        base[l + 1] = base[l] + if l <= t { a2.count(l) } else { 0 };
    }
    let nv = vertices.len();
    let runs = move |m: usize, _: &SimplicialSet| -> Vec<Vec<(usize, u32, u32)>> {
        let tuples = nv.pow(m as u32 + 1);
        let mut out = Vec::with_capacity(tuples);
        for code in 0..tuples {
            let mut c = code;
            let mut tuple = vec![0usize; m + 1];
            for slot in tuple.iter_mut().rev() {
                *slot = c % nv;
                c /= nv;
            }
            let mut pins = Vec::new();
            for l in 0..=t {
                let monos = Monotone::all(l, m);
                for (tt, &v) in tuple.iter().enumerate() {
                    let j = monos.iter().position(|phi| *phi == Monotone::constant(l, tt, m)).expect("constant map") as u32;
                    for z in 0..a2.count(l) as u32 {
                        pins.push((l, z * monos.len() as u32 + j, vertices[v][base[l] + z as usize]));
                    }
                }
            }
            out.push(pins);
        }
        out
    };
    cotensor_runs(a, x, up_to, budget, &runs, &|_, _| true)
}

/// Alternative pin sets for level `m`; the level is the union of the pinned searches.
pub type RunsFn<'a> = dyn Fn(usize, &SimplicialSet) -> Vec<Vec<(usize, u32, u32)>> + Sync + 'a;

fn cotensor_runs(a: &SimplicialSet, x: Arc<SimplicialSet>, up_to: usize, budget: usize, runs: &RunsFn<'_>, keep: &KeepFn<'_>) -> Result<Cotensor> {
    match x.coskeletal_bound() {
        Some(k) if k <= 2 => {}
        _ => return Err(Error::NotCoskeletal("cotensor target must be at most 2-coskeletal".into())),
    }
    if up_to > x.trunc_dim() {
        return Err(Error::InvalidArgument(format!("up_to {} exceeds target truncation {}", up_to, x.trunc_dim())));
    }
    let a2 = Arc::new(a.truncate(a.trunc_dim().min(2)));
    let t = a2.trunc_dim();
    let xi = TargetIndex::new(&x);
    let mut products = Vec::new();
    let mut delta_index: Vec<Vec<HashMap<Monotone, u32>>> = Vec::new();
    for m in 0..=up_to {
        let dm = standard(m, t);
        products.push(Arc::new(product(&a2, &dm)?));
        delta_index.push(
            (0..=t)
                .map(|l| Monotone::all(l, m).into_iter().enumerate().map(|(i, phi)| (phi, i as u32)).collect())
                .collect(),
        );
    }
    let offsets: Vec<[usize; 4]> = products
        .iter()
        .map(|p| {
            let mut o = [0usize; 4];
            for l in 0..3 {
                o[l + 1] = o[l] + if l <= t { p.count(l) } else { 0 };
            }
            o
        })
        .collect();
    // Flat index maps for faces (P_{m-1} -> P_m) and degeneracies (P_{m+1} -> P_m).
    let flat_map = |from: usize, to: usize, theta: &Monotone| -> Vec<usize> {
        let mut out = Vec::with_capacity(offsets[from][3]);
        for l in 0..=t {
            let monos = Monotone::all(l, from);
            let nd_to = Monotone::all(l, to).len() as u32;
            for ia in 0..a2.count(l) as u32 {
                for phi in &monos {
                    let psi = theta.compose(phi);
                    let j = delta_index[to][l][&psi];
                    out.push(offsets[to][l] + (ia * nd_to + j) as usize);
                }
            }
        }
        out
    };
    let face_maps: Vec<Vec<Vec<usize>>> = (0..=up_to)
        .map(|m| if m == 0 { Vec::new() } else { (0..=m).map(|i| flat_map(m - 1, m, &Monotone::coface(m, i))).collect() })
        .collect();
    let degen_maps: Vec<Vec<Vec<usize>>> =
        (0..up_to).map(|m| (0..=m).map(|i| flat_map(m + 1, m, &Monotone::codegeneracy(m, i))).collect()).collect();

    let mut levels: Vec<Vec<Vec<u32>>> = Vec::new();
    for m in 0..=up_to {
        let pinsets = runs(m, &products[m]);
        let found = pinsets
            .par_iter()
            .map(|pins| {
                let mut search = MapSearch::new(&products[m], &x, &xi, budget);
                for &(l, z, v) in pins {
                    search.pin(l, z, v);
                }
                search.run()
            })
            .collect::<Result<Vec<_>>>()?;
        let lv: Vec<Vec<u32>> = found.into_iter().flatten().filter(|f| keep(m, f)).collect();
        if lv.len() > budget {
            return Err(Error::budget("enumerating simplicial maps", budget));
        }
        levels.push(lv);
    }
    let keyed: Vec<Vec<(usize, Vec<u32>)>> =
        levels.into_iter().enumerate().map(|(m, lv)| lv.into_iter().map(|f| (m, f)).collect()).collect();
    let (set, keys) = SimplicialSet::from_keys(
        up_to,
        keyed,
        |m, (_, f), i| (m - 1, face_maps[m][i].iter().map(|&j| f[j]).collect()),
        |m, (_, f), i| (m + 1, degen_maps[m][i].iter().map(|&j| f[j]).collect()),
        |(_, f)| format!("f[{}]", f.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(".")),
        Some(2),
    )?;
    let maps = keys.into_iter().map(|lv| lv.into_iter().map(|(_, f)| f).collect()).collect();
    Ok(Cotensor { set: Arc::new(set), source: a2, target: x, products, maps, offsets, delta_index })
}

impl Cotensor {
    /// Flat position of the simplex `(a, φ)` of `A × Δ[m]` at level `l ≤ 2`.
    pub fn flat(&self, m: usize, l: usize, a: u32, phi: &Monotone) -> usize {
        let nd = self.delta_index[m][l].len() as u32;
        self.offsets[m][l] + (a * nd + self.delta_index[m][l][phi]) as usize
    }

    /// Value of the `m`-level map `f` on the simplex `(a, φ)` where `φ : [l] -> [m]` and
    /// `a` is an `l`-simplex of `A`, for any `l ≤ D`, using coskeletality above 2.
    pub fn value(&self, m: usize, f: &[u32], l: usize, a_simplex: impl Fn(&Monotone) -> u32, phi: &Monotone) -> Option<u32> {
        if l <= self.source.trunc_dim() {
            return Some(f[self.flat(m, l, a_simplex(&Monotone::identity(l)), phi)]);
        }
        let sig: Vec<u32> = Monotone::injections(2, l)
            .iter()
            .map(|iota| f[self.flat(m, 2, a_simplex(iota), &phi.compose(iota))])
            .collect();
        self.target.from_skeleton(l, &sig)
    }

    /// Evaluation at a vertex `a` of `A`: the map `X^A -> X`.
    pub fn eval_vertex(&self, a: u32) -> Result<SimplicialMap> {
        let d = self.set.trunc_dim();
        let src = &self.source;
        let mut assignment = Vec::new();
        for m in 0..=d {
            let mut lv = Vec::new();
            for f in &self.maps[m] {
                let v = self
                    .value(m, f, m, |iota| src.apply(0, a, &Monotone::constant(iota.dim(), 0, 0)), &Monotone::identity(m))
                    .ok_or_else(|| Error::Certification("evaluation has no value in target".into()))?;
                lv.push(v);
            }
            assignment.push(lv);
        }
        let target = Arc::new(self.target.truncate(d));
        SimplicialMap::new(self.set.clone(), target, assignment)
    }

    /// Restriction `X^A -> X^{A'}` along `i : A' -> A`, landing in `other`.
    pub fn restrict(&self, other: &Cotensor, i: &SimplicialMap) -> Result<SimplicialMap> {
        let d = self.set.trunc_dim();
        let t = other.source.trunc_dim();
        let mut assignment = Vec::new();
        for m in 0..=d {
            let index: HashMap<&Vec<u32>, u32> =
                other.maps[m].iter().enumerate().map(|(j, g)| (g, j as u32)).collect();
            let mut lv = Vec::new();
            for f in &self.maps[m] {
                let mut g = Vec::with_capacity(other.offsets[m][3]);
                for l in 0..=t {
                    for ia in 0..other.source.count(l) as u32 {
                        for phi in Monotone::all(l, m) {
                            g.push(f[self.flat(m, l, i.at(l, ia), &phi)]);
                        }
                    }
                }
                let j = index
                    .get(&g)
                    .ok_or_else(|| Error::Certification("restricted map missing from target cotensor".into()))?;
                lv.push(*j);
            }
            assignment.push(lv);
        }
        SimplicialMap::new(self.set.clone(), other.set.clone(), assignment)
    }
}
