use std::collections::{BTreeSet, HashSet};
use std::sync::Arc;

use serde::Serialize;

use super::probe::{equivalence_subcomplex, EquivMethod, QuasicategoryProbe};
use super::pushout::quasicat_pushout;
use crate::catkit::{nerve_with_chains, Nerve};
use crate::error::{Error, Result};
use crate::report::{Clause, Report};
use crate::sdot::{arrows, s_n_category, weq_category, GapGrid, SnCategory};
use crate::simpset::{cotensor_full_on, cotensor_into_coskeletal, interval_groupoid, Cotensor, Monotone, SimplicialMap, SimplicialSet};
use crate::waldcat::{is_pushout, WaldhausenInstance};

/// `S^∞_n(NC)`: the full sub-simplicial set of `Map(N Ar[n], NC)` on the gap diagrams.
pub struct GapLevel {
    pub n: usize,
    pub set: Arc<SimplicialSet>,
    pub cotensor: Cotensor,
    /// Vertex `v` as a grid.
    pub grids: Vec<GapGrid>,
    pub ar: Nerve,
    pub nc: Nerve,
}

// Values of a level-0 map N Ar[n] -> NC read as a functor Ar[n] -> C.
fn as_grid(n: usize, ar: &Nerve, nc: &Nerve, base: [usize; 3], f: &[u32]) -> GapGrid {
    let a = arrows(n);
    let objects = (0..a.object_count() as u32).map(|p| nc.object_of_vertex(f[base[0] + ar.vertex(p) as usize])).collect();
    let maps = (0..a.cat.morphism_count() as u32).map(|g| nc.morphism_of_edge(f[base[1] + ar.edge(g) as usize])).collect();
    GapGrid { n, objects, maps }
}

/// Zero diagonal, cofibration rows and pushout squares (any pushout, not only the
/// chosen one).
pub fn is_gap_diagram(w: &WaldhausenInstance, g: &GapGrid) -> bool {
    let c = w.cat();
    let n = g.n;
    (0..=n).all(|i| g.object(i, i) == w.zero)
        && (0..=n).all(|i| {
            (i..=n).all(|j| {
                (j..=n).all(|k| {
                    let row = g.map((i, j), (i, k));
                    w.is_cofibration(row) && is_pushout(c, g.map((i, j), (j, j)), row, g.map((j, j), (j, k)), g.map((i, k), (j, k)))
                })
            })
        })
}

fn level_bases(x: &SimplicialSet) -> [usize; 3] {
    let t = x.trunc_dim().min(2);
    let mut b = [0usize; 3];
    for l in 1..3 {
        b[l] = b[l - 1] + if l - 1 <= t { x.count(l - 1) } else { 0 };
    }
    b
}

/// Gap vertices by filtering every functor `Ar[n] -> C`, then the full sub-simplicial set
/// on them through level `k_max`.
pub fn gap_sn_nerve(w: &WaldhausenInstance, n: usize, k_max: usize, budget: usize) -> Result<GapLevel> {
    let a = arrows(n);
    let ar = nerve_with_chains(&a.cat, 2);
    let nc = nerve_with_chains(w.cat(), k_max.max(2));
    let base = level_bases(&ar.set);
    let all = cotensor_into_coskeletal(&ar.set, nc.set.clone(), 0, budget)?;
    let mut vertices = Vec::new();
    let mut grids = Vec::new();
    for f in &all.maps[0] {
        let g = as_grid(n, &ar, &nc, base, f);
        if is_gap_diagram(w, &g) {
            vertices.push(f.clone());
            grids.push(g);
        }
    }
    let cotensor = cotensor_full_on(&ar.set, nc.set.clone(), k_max, budget, &vertices)?;
    // vertex order of the cotensor is the sorted order of the flat vectors
    let grids = cotensor.maps[0].iter().map(|f| as_grid(n, &ar, &nc, base, f)).collect();
    Ok(GapLevel { n, set: cotensor.set.clone(), cotensor, grids, ar, nc })
}

impl GapLevel {
    /// Slice `t` of an `m`-simplex, as a grid.
    pub fn slice(&self, m: usize, f: &[u32], t: usize) -> GapGrid {
        let a = arrows(self.n);
        let co = &self.cotensor;
        let c0 = Monotone::constant(0, t, m);
        let c1 = Monotone::constant(1, t, m);
        let objects = (0..a.object_count() as u32).map(|p| self.nc.object_of_vertex(f[co.flat(m, 0, self.ar.vertex(p), &c0)])).collect();
        let maps = (0..a.cat.morphism_count() as u32).map(|g| self.nc.morphism_of_edge(f[co.flat(m, 1, self.ar.edge(g), &c1)])).collect();
        GapGrid { n: self.n, objects, maps }
    }

    /// Components of the transformation from slice `t` to slice `t + 1`.
    pub fn components(&self, m: usize, f: &[u32], t: usize) -> Vec<u32> {
        let a = arrows(self.n);
        let step = Monotone { images: vec![t, t + 1], target: m };
        (0..a.object_count() as u32)
            .map(|p| {
                let v = self.ar.vertex(p);
                self.nc.morphism_of_edge(f[self.cotensor.flat(m, 1, self.ar.set.degen(0, v, 0), &step)])
            })
            .collect()
    }

    /// `S^∞_n(NC) -> N(S_n C)`, slice by slice.
    pub fn comparison(&self, sn: &SnCategory, nsn: &Nerve) -> Result<SimplicialMap> {
        let d = self.set.trunc_dim();
        let mut assignment = Vec::with_capacity(d + 1);
        for m in 0..=d {
            let mut lv = Vec::with_capacity(self.set.count(m));
            for f in &self.cotensor.maps[m] {
                let objs = (0..=m)
                    .map(|t| sn.data.find_grid(&self.slice(m, f, t)).ok_or_else(|| Error::Certification(format!("slice {} is not a grid of S_n", t))))
                    .collect::<Result<Vec<u32>>>()?;
                let chain: Vec<u32> = if m == 0 {
                    objs
                } else {
                    (0..m)
                        .map(|t| sn.data.find_morphism(objs[t], objs[t + 1], &self.components(m, f, t)).ok_or_else(|| Error::Certification("transformation missing from S_n".into())))
                        .collect::<Result<_>>()?
                };
                lv.push(nsn.index_of(m, &chain).ok_or_else(|| Error::Certification("chain missing from N(S_n C)".into()))?);
            }
            assignment.push(lv);
        }
        SimplicialMap::new_unchecked(self.set.clone(), nsn.set.clone(), assignment)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivComparison {
    pub n: usize,
    pub gap_sizes: Vec<usize>,
    pub equiv_sizes: Vec<usize>,
    pub weq_nerve_sizes: Vec<usize>,
    /// `|SSet(J[m], S^∞_n NC)|` for `m = 0..=m_max`.
    pub j_maps: Vec<usize>,
    pub report: Report,
}

/// The nerve of the weak equivalences of `S_n C` inside `N(S_n C)`, levelwise.
fn weq_nerve_levels(sn: &SnCategory, nsn: &Nerve, d: usize) -> Vec<Vec<u32>> {
    let (wc, mors) = weq_category(&sn.instance);
    let nw = nerve_with_chains(&wc, d);
    (0..=d)
        .map(|k| {
            let mut lv: Vec<u32> = nw.chains[k]
                .iter()
                .map(|ch| {
                    let image: Vec<u32> = if k == 0 { ch.clone() } else { ch.iter().map(|&f| mors[f as usize]).collect() };
                    nsn.index_of(k, &image).expect("chain of weak equivalences")
                })
                .collect();
            lv.sort();
            lv
        })
        .collect()
}

// Signature of a map J[m] × N Ar[n] -> NC: the grid at each vertex of J and the
// components along each edge of J.
type Signature = (Vec<GapGrid>, Vec<Vec<u32>>);

/// `N(S_n C) ≅ S^∞_n(NC)`, `N(wS_n C) ≅ (S^∞_n NC)_equiv` and the `J[m]`-cotensor
/// identity, for categories whose weak equivalences are isomorphisms.
pub fn compare_equiv_constructions(w: &Arc<WaldhausenInstance>, n: usize, k_max: usize, m_max: usize, budget: usize) -> Result<EquivComparison> {
    let c = w.cat();
    if let Some(f) = (0..c.morphism_count() as u32).find(|&f| w.is_weq(f) && !c.is_isomorphism(f)) {
        return Err(Error::Precondition(format!("weak equivalence {} is not an isomorphism", c.morphism_name(f))));
    }
    let k_max = k_max.max(2);
    let gap = gap_sn_nerve(w, n, k_max, budget)?;
    let sn = s_n_category(w, n, budget)?;
    let nsn = nerve_with_chains(&sn.data.category, k_max);
    let mut report = Report::new(format!("equivalences in S{}({})", n, w.name));

    let mut verts = Clause::new("gap_vertices_are_grids");
    let found: BTreeSet<&GapGrid> = gap.grids.iter().collect();
    let expected: BTreeSet<&GapGrid> = sn.data.grids.iter().collect();
    verts.check(found == expected, || format!("{} gap diagrams vs {} grids", found.len(), expected.len()));
    report.push(verts);

    let phi = gap.comparison(&sn, &nsn)?;
    let mut simp = Clause::new("comparison_commutes_with_operators");
    if let Some(v) = phi.first_violation() {
        simp.fail(v);
    }
    report.push(simp);
    let mut bij = Clause::new("comparison_is_levelwise_bijective");
    bij.check(phi.is_bijective(), || format!("{:?} vs {:?}", gap.set.level_sizes(), nsn.set.level_sizes()));
    report.push(bij);

    let probe = QuasicategoryProbe::new(gap.set.clone())?;
    let (tau_sub, _) = equivalence_subcomplex(&probe, EquivMethod::Tau1Full, budget)?;
    let (j_sub, injective) = equivalence_subcomplex(&probe, EquivMethod::JHom, budget)?;
    let mut agree = Clause::new("equivalence_methods_agree");
    agree.check(tau_sub.simplices == j_sub.simplices && injective, || format!("{:?} vs {:?}", tau_sub.level_sizes(), j_sub.level_sizes()));
    report.push(agree);

    let weq_levels = weq_nerve_levels(&sn, &nsn, k_max);
    let mut eq = Clause::new("equiv_is_nerve_of_weqs");
    for k in 0..=k_max {
        let mut image: Vec<u32> = tau_sub.simplices[k].iter().map(|&s| phi.at(k, s)).collect();
        image.sort();
        eq.check(image == weq_levels[k], || format!("level {}: {} equivalence simplices vs {} in N(wS_n C)", k, image.len(), weq_levels[k].len()));
    }
    report.push(eq);

    let mut j_maps = Vec::new();
    for m in 0..=m_max {
        let (left, right) = j_cotensor_sides(w, &gap, &sn, &nsn, &phi, m, budget)?;
        let mut cl = Clause::new(format!("j{}_cotensor_identity", m));
        cl.check(left == right, || format!("{} maps into the cotensor vs {} maps from J[{}]", left.len(), right.len(), m));
        cl.check(right.len() == j_sub.simplices.get(m).map_or(0, |v| v.len()), || format!("{} maps from J[{}] vs equivalence level {}", right.len(), m, m));
        j_maps.push(right.len());
        report.push(cl);
    }

    Ok(EquivComparison {
        n,
        gap_sizes: gap.set.level_sizes(),
        equiv_sizes: tau_sub.level_sizes(),
        weq_nerve_sizes: weq_levels.iter().map(|l| l.len()).collect(),
        j_maps,
        report,
    })
}

// Left: gap diagrams in D^{J[m]} with the pointwise structure. Right: maps J[m] -> S^∞_n.
fn j_cotensor_sides(
    w: &WaldhausenInstance,
    gap: &GapLevel,
    sn: &SnCategory,
    nsn: &Nerve,
    phi: &SimplicialMap,
    m: usize,
    budget: usize,
) -> Result<(HashSet<Signature>, HashSet<Signature>)> {
    let j = interval_groupoid(m, 2);
    let j_edges: Vec<u32> = (0..j.count(1) as u32).collect();
    let id1 = Monotone::identity(1);

    let y = cotensor_into_coskeletal(&j, gap.nc.set.clone(), 2, budget)?;
    let ar = &gap.ar;
    let lifted = cotensor_into_coskeletal(&ar.set, y.set.clone(), 0, budget)?;
    let base = level_bases(&ar.set);
    let a = arrows(gap.n);
    let mut left = HashSet::new();
    for g in &lifted.maps[0] {
        // the vertex of Y at each object of Ar[n], the edge of Y at each morphism
        let at_obj = |p: u32| &y.maps[0][g[base[0] + ar.vertex(p) as usize] as usize];
        let at_mor = |h: u32| &y.maps[1][g[base[1] + ar.edge(h) as usize] as usize];
        let grids: Vec<GapGrid> = (0..j.count(0) as u32)
            .map(|jv| {
                let objects = (0..a.object_count() as u32).map(|p| gap.nc.object_of_vertex(at_obj(p)[y.flat(0, 0, jv, &Monotone::identity(0))])).collect();
                let jdeg = j.degen(0, jv, 0);
                let maps = (0..a.cat.morphism_count() as u32).map(|h| gap.nc.morphism_of_edge(at_mor(h)[y.flat(1, 1, jdeg, &id1)])).collect();
                GapGrid { n: gap.n, objects, maps }
            })
            .collect();
        if !grids.iter().all(|gr| is_gap_diagram(w, gr)) {
            continue;
        }
        let comps: Vec<Vec<u32>> = j_edges
            .iter()
            .map(|&e| (0..a.object_count() as u32).map(|p| gap.nc.morphism_of_edge(at_obj(p)[y.flat(0, 1, e, &Monotone::constant(1, 0, 0))])).collect())
            .collect();
        left.insert((grids, comps));
    }

    let maps_from_j = cotensor_into_coskeletal(&j, gap.set.clone(), 0, budget)?;
    let jb = level_bases(&j);
    let mut right = HashSet::new();
    for f in &maps_from_j.maps[0] {
        let grids = (0..j.count(0) as u32).map(|jv| sn.grid(nsn.object_of_vertex(phi.at(0, f[jb[0] + jv as usize]))).clone()).collect();
        let comps = j_edges.iter().map(|&e| sn.data.components[nsn.morphism_of_edge(phi.at(1, f[jb[1] + e as usize])) as usize].clone()).collect();
        right.insert((grids, comps));
    }
    Ok((left, right))
}

/// The quasicategorical Waldhausen conditions on `NC`, with the cofibration edges
/// those of `C`.
pub fn waldhausen_qcat_probe(w: &WaldhausenInstance, d: usize, budget: usize) -> Result<Report> {
    let c = w.cat();
    let nc = nerve_with_chains(c, d.max(2));
    let x = &nc.set;
    let probe = QuasicategoryProbe::new(x.clone())?;
    let cof = |e: u32| w.is_cofibration(nc.morphism_of_edge(e));
    let mut report = Report::new(format!("{} as a Waldhausen quasicategory", w.name));

    let objs: Vec<u32> = (0..c.object_count() as u32).collect();
    let (cc, _, mors) = c.subcategory(&objs, |f| w.is_cofibration(f))?;
    let ncc = nerve_with_chains(&cc, x.trunc_dim());
    let mut sub = Clause::new("cofibration_subcomplex_is_nerve");
    for k in 0..=x.trunc_dim() {
        let mut want: Vec<u32> = ncc.chains[k].iter().map(|ch| nc.index_of(k, &if k == 0 { ch.clone() } else { ch.iter().map(|&f| mors[f as usize]).collect() }).unwrap()).collect();
        want.sort();
        let have: Vec<u32> = (0..x.count(k) as u32).filter(|&s| (0..=k).all(|i| (i + 1..=k).all(|jj| cof(x.edge(k, s, i, jj))))).collect();
        sub.check(have == want, || format!("level {}", k));
    }
    report.push(sub);

    let mut eqv = Clause::new("equivalences_are_cofibrations");
    let mut from_zero = Clause::new("maps_from_zero_are_cofibrations");
    let mut replete = Clause::new("cofibrations_are_homotopy_replete");
    let z = nc.vertex(w.zero);
    for e in 0..x.count(1) as u32 {
        if probe.is_equivalence(e) {
            eqv.check(cof(e), || x.id(1, e).to_string());
        }
        if x.face(1, e, 1) == z {
            from_zero.check(cof(e), || x.id(1, e).to_string());
        }
        for e2 in 0..x.count(1) as u32 {
            if probe.tau.edge_class[e as usize] == probe.tau.edge_class[e2 as usize] && cof(e) {
                replete.check(cof(e2), || format!("{} ~ {}", x.id(1, e), x.id(1, e2)));
            }
        }
    }
    report.push(eqv);
    report.push(from_zero);
    report.push(replete);

    let mut zero = Clause::new("zero_is_initial_and_terminal");
    let tc = &probe.tau.category;
    let zt = probe.tau.edge_class[x.degen(0, z, 0) as usize];
    let zo = tc.source(zt);
    for o in 0..tc.object_count() as u32 {
        zero.check(tc.hom(zo, o).len() == 1 && tc.hom(o, zo).len() == 1, || tc.object_name(o).to_string());
    }
    report.push(zero);

    let mut pushed = Clause::new("pushouts_along_cofibrations_exist_and_push_cofibrations");
    for i in 0..c.morphism_count() as u32 {
        if !w.is_cofibration(i) {
            continue;
        }
        for &f in c.outgoing(c.source(i)) {
            let categorical = w.pushout(f, i)?;
            match (categorical, quasicat_pushout(x, nc.edge(f), nc.edge(i), budget)) {
                (Some(_), Ok(q)) => {
                    for k in &q.initial {
                        pushed.check(cof(k.from_b), || format!("pushout of {} along {}", c.morphism_name(i), c.morphism_name(f)));
                    }
                }
                (None, Err(Error::Certification(_))) => {}
                (Some(_), Err(e)) => pushed.fail(format!("{} along {}: {}", c.morphism_name(i), c.morphism_name(f), e)),
                (None, Ok(_)) => pushed.fail(format!("{} along {}: initial cocone without a chosen pushout", c.morphism_name(i), c.morphism_name(f))),
                (None, Err(e)) => return Err(e),
            }
        }
    }
    report.push(pushed);
    Ok(report)
}
