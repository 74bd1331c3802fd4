use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::catkit::{nerve_with_chains, tau1, FiniteCategory, NaturalTransformationData, Nerve, Tau1, DEFAULT_PATH_CAP};
use crate::error::{Error, Result};
use crate::report::{Clause, Report};
use crate::simpset::{cotensor_into_coskeletal, interval_groupoid, product, product_index, standard, MapSearch, Monotone, SimplicialMap, SimplicialSet, TargetIndex};

/// A simplicial set with its homotopy category and equivalence edges.
#[derive(Clone, Debug)]
pub struct QuasicategoryProbe {
    pub set: Arc<SimplicialSet>,
    pub tau: Tau1,
    equivalences: Vec<bool>,
}

impl QuasicategoryProbe {
    pub fn new(set: Arc<SimplicialSet>) -> Result<Self> {
        let tau = tau1(&set, DEFAULT_PATH_CAP)?;
        let equivalences = tau.edge_class.iter().map(|&m| tau.category.is_isomorphism(m)).collect();
        Ok(QuasicategoryProbe { set, tau, equivalences })
    }

    /// Is the edge invertible in `τ₁X`?
    pub fn is_equivalence(&self, e: u32) -> bool {
        self.equivalences[e as usize]
    }

    pub fn equivalence_edges(&self) -> &[bool] {
        &self.equivalences
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct HornReport {
    pub pass: bool,
    pub up_to_dim: usize,
    pub horns: usize,
    /// Every fillable horn has exactly one filler.
    pub unique_fillers: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_unfillable: Option<String>,
}

/// Faces `d_i x` for `i ≠ k`, in order.
fn faces_except(x: &SimplicialSet, n: usize, s: u32, k: usize) -> Vec<u32> {
    (0..=n).filter(|&i| i != k).map(|i| x.face(n, s, i)).collect()
}

/// All inner horns `Λ^k[n] -> X` for `2 ≤ n ≤ up_to_dim`, each searched for fillers.
pub fn is_quasicategory(x: &SimplicialSet, up_to_dim: usize) -> Result<HornReport> {
    if up_to_dim > x.trunc_dim() {
        return Err(Error::InvalidArgument(format!("horns up to dimension {} need truncation {}, have {}", up_to_dim, up_to_dim, x.trunc_dim())));
    }
    let mut report = HornReport { pass: true, up_to_dim, horns: 0, unique_fillers: true, first_unfillable: None };
    for n in 2..=up_to_dim {
        // level n-1 simplices by (face index, face)
        let mut by_face: HashMap<(usize, u32), Vec<u32>> = HashMap::new();
        for y in 0..x.count(n - 1) as u32 {
            for i in 0..n {
                by_face.entry((i, x.face(n - 1, y, i))).or_default().push(y);
            }
        }
        for k in 1..n {
            let mut fillers: HashMap<Vec<u32>, usize> = HashMap::new();
            for s in 0..x.count(n) as u32 {
                *fillers.entry(faces_except(x, n, s, k)).or_default() += 1;
            }
            let slots: Vec<usize> = (0..=n).filter(|&j| j != k).collect();
            let mut chosen: Vec<u32> = Vec::with_capacity(slots.len());
            horn_search(x, n, &slots, &by_face, &mut chosen, &mut |horn| {
                report.horns += 1;
                match fillers.get(horn) {
                    None => {
                        report.pass = false;
                        if report.first_unfillable.is_none() {
                            let ids: Vec<&str> = horn.iter().map(|&y| x.id(n - 1, y)).collect();
                            report.first_unfillable = Some(format!("Λ^{}[{}] with faces [{}]", k, n, ids.join(", ")));
                        }
                    }
                    Some(&c) => report.unique_fillers &= c == 1,
                }
            });
        }
    }
    Ok(report)
}

// Compatibility: d_i y_j = d_{j-1} y_i for i < j.
fn horn_search(
    x: &SimplicialSet,
    n: usize,
    slots: &[usize],
    by_face: &HashMap<(usize, u32), Vec<u32>>,
    chosen: &mut Vec<u32>,
    emit: &mut dyn FnMut(&[u32]),
) {
    let pos = chosen.len();
    if pos == slots.len() {
        emit(chosen);
        return;
    }
    let j = slots[pos];
    let constraints: Vec<(usize, u32)> = slots[..pos].iter().zip(chosen.iter()).map(|(&i, &yi)| (i, x.face(n - 1, yi, j - 1))).collect();
    let all: Vec<u32>;
    let cands: &[u32] = match constraints.first() {
        Some(key) => by_face.get(key).map_or(&[], |v| v.as_slice()),
        None => {
            all = (0..x.count(n - 1) as u32).collect();
            &all
        }
    };
    for &y in cands {
        if constraints.iter().all(|&(i, f)| x.face(n - 1, y, i) == f) {
            chosen.push(y);
            horn_search(x, n, slots, by_face, chosen, emit);
            chosen.pop();
        }
    }
}

/// A subcomplex with the indices of its simplices in the ambient set.
#[derive(Clone, Debug)]
pub struct Subcomplex {
    pub set: Arc<SimplicialSet>,
    pub simplices: Vec<Vec<u32>>,
}

impl Subcomplex {
    pub fn level_sizes(&self) -> Vec<usize> {
        self.simplices.iter().map(|l| l.len()).collect()
    }
}

/// The simplices satisfying `keep`, which must be closed under the operators.
pub fn subcomplex(x: &SimplicialSet, keep: impl Fn(usize, u32) -> bool) -> Result<Subcomplex> {
    let d = x.trunc_dim();
    let levels: Vec<Vec<(usize, u32)>> = (0..=d).map(|n| (0..x.count(n) as u32).filter(|&s| keep(n, s)).map(|s| (n, s)).collect()).collect();
    let (set, keys) = SimplicialSet::from_keys(
        d,
        levels,
        |n, &(_, s), i| (n - 1, x.face(n, s, i)),
        |n, &(_, s), i| (n + 1, x.degen(n, s, i)),
        |&(n, s)| x.id(n, s).to_string(),
        x.coskeletal_bound(),
    )?;
    let keys = keys.into_iter().map(|lv| lv.into_iter().map(|(_, s)| s).collect()).collect();
    Ok(Subcomplex { set: Arc::new(set), simplices: keys })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EquivMethod {
    /// Simplices all of whose edges are invertible in `τ₁X`.
    Tau1Full,
    /// Level `n` is the set of maps `J[n] -> X`, read off on `Δ[n] ⊂ J[n]`.
    JHom,
}

/// The simplex `0 -> 1 -> ... -> n` of `J[n]`.
pub fn j_top(jn: &SimplicialSet, n: usize) -> u32 {
    (0..jn.count(n) as u32).find(|&s| (0..=n).all(|i| jn.vertex(n, s, i) == i as u32)).expect("J[n] has its standard simplex")
}

/// `X_equiv`. With `JHom` the result also records whether restriction along
/// `Δ[n] ⊂ J[n]` was injective on maps.
pub fn equivalence_subcomplex(p: &QuasicategoryProbe, method: EquivMethod, budget: usize) -> Result<(Subcomplex, bool)> {
    let x = &p.set;
    match method {
        EquivMethod::Tau1Full => {
            let sub = subcomplex(x, |n, s| (0..=n).all(|i| (i + 1..=n).all(|j| p.is_equivalence(x.edge(n, s, i, j)))))?;
            Ok((sub, true))
        }
        EquivMethod::JHom => {
            if !matches!(x.coskeletal_bound(), Some(k) if k <= 2) {
                return Err(Error::NotCoskeletal("J-hom method needs a target flagged at most 2-coskeletal".into()));
            }
            let mut keep: Vec<Vec<bool>> = (0..=x.trunc_dim()).map(|n| vec![false; x.count(n)]).collect();
            let mut injective = true;
            for (n, lv) in keep.iter_mut().enumerate() {
                let jn = interval_groupoid(n, n.max(2));
                let top = j_top(&jn, n);
                let cot = cotensor_into_coskeletal(&jn, x.clone(), 0, budget)?;
                for f in &cot.maps[0] {
                    let s = cot
                        .value(0, f, n, |iota| jn.apply(n, top, iota), &Monotone::constant(n, 0, 0))
                        .ok_or_else(|| Error::Certification("map J[n] -> X has no top simplex".into()))?;
                    injective &= !lv[s as usize];
                    lv[s as usize] = true;
                }
            }
            Ok((subcomplex(x, |n, s| keep[n][s as usize])?, injective))
        }
    }
}

/// `(NC)_equiv` by both methods against `N(C_iso)`, levelwise through the truncation.
pub fn check_equiv_is_nerve_of_isos(c: &FiniteCategory, d: usize, budget: usize) -> Result<Report> {
    let nc = nerve_with_chains(c, d);
    let probe = QuasicategoryProbe::new(nc.set.clone())?;
    let (g, mors) = c.maximal_groupoid();
    let ng = nerve_with_chains(&g, d);
    let iso_levels: Vec<Vec<u32>> = (0..=d)
        .map(|n| {
            let mut lv: Vec<u32> = ng.chains[n]
                .iter()
                .map(|ch| {
                    let image: Vec<u32> = if n == 0 { ch.clone() } else { ch.iter().map(|&f| mors[f as usize]).collect() };
                    nc.index_of(n, &image).expect("chain of isomorphisms is a chain")
                })
                .collect();
            lv.sort();
            lv
        })
        .collect();
    let mut report = Report::new(format!("(NC)_equiv for {} objects, {} morphisms", c.object_count(), c.morphism_count()));
    let (tau_sub, _) = equivalence_subcomplex(&probe, EquivMethod::Tau1Full, budget)?;
    let (j_sub, injective) = equivalence_subcomplex(&probe, EquivMethod::JHom, budget)?;
    let mut a = Clause::new("tau1_full_is_nerve_of_isos");
    let mut b = Clause::new("j_hom_is_nerve_of_isos");
    let mut r = Clause::new("restriction_to_delta_is_injective");
    for n in 0..=d {
        a.check(tau_sub.simplices[n] == iso_levels[n], || format!("level {}: {} vs {}", n, tau_sub.simplices[n].len(), iso_levels[n].len()));
        b.check(j_sub.simplices[n] == iso_levels[n], || format!("level {}: {} vs {}", n, j_sub.simplices[n].len(), iso_levels[n].len()));
    }
    r.check(injective, || "two maps J[n] -> NC restrict to the same simplex".into());
    report.push(a);
    report.push(b);
    report.push(r);
    Ok(report)
}

/// Index of a monotone sequence `[l] -> [m]` among the sorted monotone maps.
fn delta_index(l: usize, m: usize, seq: &[usize]) -> Option<u32> {
    Monotone::all(l, m).iter().position(|phi| phi.images == seq).map(|k| k as u32)
}

/// The sequence `[l] -> [m]` behind simplex `s` of `J[m]`.
fn j_sequence(j: &SimplicialSet, l: usize, s: u32) -> Vec<usize> {
    (0..=l).map(|i| j.vertex(l, s, i) as usize).collect()
}

/// The component edges `α(s₀x, 0 -> 1)` of a homotopy `α : X × Δ[1] -> Y`.
pub fn components(alpha: &SimplicialMap, x: &SimplicialSet) -> Vec<u32> {
    let d1 = standard(1, x.trunc_dim());
    let id = delta_index(1, 1, &[0, 1]).expect("identity of [1]");
    (0..x.count(0) as u32).map(|v| alpha.at(1, product_index(&d1, 1, x.degen(0, v, 0), id))).collect()
}

/// Components of `α` are equivalences of `Y`; for a target flagged 2-coskeletal the
/// extension along `X × Δ[1] ⊂ X × J[1]` is also searched and must exist exactly when
/// the components are equivalences.
pub fn natural_equivalence_check(alpha: &SimplicialMap, x: &SimplicialSet, y: &QuasicategoryProbe) -> Result<Report> {
    let d = x.trunc_dim();
    let d1 = standard(1, d);
    if alpha.source.level_sizes() != product(x, &d1)?.level_sizes() {
        return Err(Error::InvalidArgument("homotopy source is not X × Δ[1]".into()));
    }
    let mut report = Report::new("natural equivalence");
    let mut comp = Clause::new("components_are_equivalences");
    let comps = components(alpha, x);
    for (v, &e) in comps.iter().enumerate() {
        comp.check(y.is_equivalence(e), || format!("vertex {}: edge {}", x.id(0, v as u32), y.set.id(1, e)));
    }
    let invertible = comp.pass;
    report.push(comp);
    if matches!(y.set.coskeletal_bound(), Some(k) if k <= 2) {
        let t = d.min(2);
        let x2 = x.truncate(t);
        let j1 = interval_groupoid(1, t);
        let src = product(&x2, &j1)?;
        let xi = TargetIndex::new(&y.set);
        let mut search = MapSearch::new(&src, &y.set, &xi, 1);
        let d1t = standard(1, t);
        for l in 0..=t {
            for s in 0..j1.count(l) as u32 {
                if let Some(k) = delta_index(l, 1, &j_sequence(&j1, l, s)) {
                    for a in 0..x2.count(l) as u32 {
                        search.pin(l, product_index(&j1, l, a, s), alpha.at(l, product_index(&d1t, l, a, k)));
                    }
                }
            }
        }
        let extends = match search.run() {
            Ok(found) => !found.is_empty(),
            Err(Error::BudgetExceeded { .. }) => true,
            Err(e) => return Err(e),
        };
        let mut agree = Clause::new("extension_to_j1_iff_components_invertible");
        agree.check(extends == invertible, || format!("extension {} but components invertible {}", extends, invertible));
        report.push(agree);
    } else {
        report.notes.push("target not flagged 2-coskeletal: J[1] extension not searched".into());
    }
    Ok(report)
}

/// `N(C) × Δ[1] -> N(D)` for a natural transformation `η : F => G`.
pub fn nerve_transformation(eta: &NaturalTransformationData, source: &Nerve, target: &Nerve) -> Result<SimplicialMap> {
    let c = eta.source.source.clone();
    let dcat = eta.source.target.clone();
    let d = source.set.trunc_dim();
    let d1 = standard(1, d);
    let prod = Arc::new(product(&source.set, &d1)?);
    let (f, g) = (&eta.source, &eta.target);
    let mut assignment = Vec::new();
    for n in 0..=d {
        let monos = Monotone::all(n, 1);
        let mut lv = Vec::with_capacity(prod.count(n));
        for s in 0..source.set.count(n) as u32 {
            let ch = &source.chains[n][s as usize];
            for phi in &monos {
                let obj = |k: usize| if n == 0 { ch[0] } else if k == 0 { c.source(ch[0]) } else { c.target(ch[k - 1]) };
                let v = if n == 0 {
                    let o = if phi.at(0) == 0 { f.object(obj(0)) } else { g.object(obj(0)) };
                    target.index_of(0, &[o])
                } else {
                    let image: Vec<u32> = (0..n)
                        .map(|k| match (phi.at(k), phi.at(k + 1)) {
                            (0, 0) => f.morphism(ch[k]),
                            (1, 1) => g.morphism(ch[k]),
                            _ => dcat.compose(eta.component(obj(k + 1)), f.morphism(ch[k])),
                        })
                        .collect();
                    target.index_of(n, &image)
                };
                lv.push(v.ok_or_else(|| Error::Certification("image chain missing from target nerve".into()))?);
            }
        }
        assignment.push(lv);
    }
    SimplicialMap::new(prod, target.set.clone(), assignment)
}
