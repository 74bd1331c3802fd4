use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::category::FiniteCategory;
use crate::error::{Error, Result};

fn same(a: &Arc<FiniteCategory>, b: &Arc<FiniteCategory>) -> bool {
    Arc::ptr_eq(a, b) || a.as_ref() == b.as_ref()
}

/// A functor between finite categories, stored as object and morphism maps.
#[derive(Clone, Debug)]
pub struct FunctorData {
    pub source: Arc<FiniteCategory>,
    pub target: Arc<FiniteCategory>,
    pub objects: Vec<u32>,
    pub morphisms: Vec<u32>,
}

impl FunctorData {
    pub fn new(source: Arc<FiniteCategory>, target: Arc<FiniteCategory>, objects: Vec<u32>, morphisms: Vec<u32>) -> Result<Self> {
        let f = FunctorData::new_unchecked(source, target, objects, morphisms);
        match f.first_violation() {
            None => Ok(f),
            Some(v) => Err(Error::Certification(v)),
        }
    }

    pub fn new_unchecked(source: Arc<FiniteCategory>, target: Arc<FiniteCategory>, objects: Vec<u32>, morphisms: Vec<u32>) -> Self {
        FunctorData { source, target, objects, morphisms }
    }

    pub fn identity(c: Arc<FiniteCategory>) -> Self {
        let objects = (0..c.object_count() as u32).collect();
        let morphisms = (0..c.morphism_count() as u32).collect();
        FunctorData { source: c.clone(), target: c, objects, morphisms }
    }

    /// Constant functor at object `b`.
    pub fn constant(source: Arc<FiniteCategory>, target: Arc<FiniteCategory>, b: u32) -> Self {
        let objects = vec![b; source.object_count()];
        let morphisms = vec![target.identity(b); source.morphism_count()];
        FunctorData { source, target, objects, morphisms }
    }

    pub fn object(&self, a: u32) -> u32 {
        self.objects[a as usize]
    }

    pub fn morphism(&self, f: u32) -> u32 {
        self.morphisms[f as usize]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FunctorData) -> Result<FunctorData> {
        if !same(&self.target, &other.source) {
            return Err(Error::CodomainMismatch("functors are not composable".into()));
        }
        Ok(FunctorData {
            source: self.source.clone(),
            target: other.target.clone(),
            objects: self.objects.iter().map(|&a| other.object(a)).collect(),
            morphisms: self.morphisms.iter().map(|&f| other.morphism(f)).collect(),
        })
    }

    pub fn first_violation(&self) -> Option<String> {
        let (c, d) = (&self.source, &self.target);
        if self.objects.len() != c.object_count() || self.morphisms.len() != c.morphism_count() {
            return Some("map sizes do not match the source category".into());
        }
        if self.objects.iter().any(|&b| b as usize >= d.object_count()) || self.morphisms.iter().any(|&g| g as usize >= d.morphism_count()) {
            return Some("map lands outside the target category".into());
        }
        for f in 0..c.morphism_count() as u32 {
            let g = self.morphism(f);
            if d.source(g) != self.object(c.source(f)) || d.target(g) != self.object(c.target(f)) {
                return Some(format!("endpoints of {} not preserved", c.morphism_name(f)));
            }
        }
        for a in 0..c.object_count() as u32 {
            if self.morphism(c.identity(a)) != d.identity(self.object(a)) {
                return Some(format!("identity of {} not preserved", c.object_name(a)));
            }
        }
        for f in 0..c.morphism_count() as u32 {
            for &g in c.outgoing(c.target(f)) {
                if self.morphism(c.compose(g, f)) != d.compose(self.morphism(g), self.morphism(f)) {
                    return Some(format!("composite {} after {} not preserved", c.morphism_name(g), c.morphism_name(f)));
                }
            }
        }
        None
    }

    pub fn is_isomorphism(&self) -> bool {
        let mut seen_o = vec![false; self.target.object_count()];
        let mut seen_m = vec![false; self.target.morphism_count()];
        if seen_o.len() != self.objects.len() || seen_m.len() != self.morphisms.len() {
            return false;
        }
        for &b in &self.objects {
            if std::mem::replace(&mut seen_o[b as usize], true) {
                return false;
            }
        }
        for &g in &self.morphisms {
            if std::mem::replace(&mut seen_m[g as usize], true) {
                return false;
            }
        }
        true
    }
}

/// A natural transformation `F => G` given by components in the common target.
#[derive(Clone, Debug)]
pub struct NaturalTransformationData {
    pub source: FunctorData,
    pub target: FunctorData,
    pub components: Vec<u32>,
}

impl NaturalTransformationData {
    pub fn new(source: FunctorData, target: FunctorData, components: Vec<u32>) -> Result<Self> {
        let t = NaturalTransformationData { source, target, components };
        match t.first_violation() {
            None => Ok(t),
            Some(v) => Err(Error::Certification(v)),
        }
    }

    pub fn new_unchecked(source: FunctorData, target: FunctorData, components: Vec<u32>) -> Self {
        NaturalTransformationData { source, target, components }
    }

    pub fn identity(f: &FunctorData) -> Self {
        let components = f.objects.iter().map(|&b| f.target.identity(b)).collect();
        NaturalTransformationData { source: f.clone(), target: f.clone(), components }
    }

    pub fn component(&self, a: u32) -> u32 {
        self.components[a as usize]
    }

    pub fn first_violation(&self) -> Option<String> {
        let (f, g) = (&self.source, &self.target);
        let c = &f.source;
        let d = &f.target;
        if !same(c, &g.source) || !same(d, &g.target) {
            return Some("functors do not share source and target".into());
        }
        if self.components.len() != c.object_count() {
            return Some("one component per object required".into());
        }
        for a in 0..c.object_count() as u32 {
            let t = self.component(a);
            if t as usize >= d.morphism_count() || d.source(t) != f.object(a) || d.target(t) != g.object(a) {
                return Some(format!("component at {} has wrong endpoints", c.object_name(a)));
            }
        }
        for u in 0..c.morphism_count() as u32 {
            let (a, b) = (c.source(u), c.target(u));
            if d.compose(g.morphism(u), self.component(a)) != d.compose(self.component(b), f.morphism(u)) {
                return Some(format!("naturality square for {} does not commute", c.morphism_name(u)));
            }
        }
        None
    }

    pub fn is_natural_isomorphism(&self) -> bool {
        self.first_violation().is_none() && self.components.iter().all(|&t| self.source.target.is_isomorphism(t))
    }
}

/// Inverse equivalence `G` with `η : Id => G F` and `ε : F G => Id`.
#[derive(Clone, Debug)]
pub struct InverseWitness {
    pub inverse: FunctorData,
    pub unit: NaturalTransformationData,
    pub counit: NaturalTransformationData,
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub fully_faithful: bool,
    pub essentially_surjective: bool,
    pub witness: Option<String>,
    #[serde(skip)]
    pub inverse_witness: Option<InverseWitness>,
}

impl EquivalenceReport {
    pub fn pass(&self) -> bool {
        self.fully_faithful && self.essentially_surjective && self.inverse_witness.is_some()
    }
}

pub fn check_equivalence_of_categories(f: &FunctorData) -> EquivalenceReport {
    let (c, d) = (f.source.clone(), f.target.clone());
    let mut report = EquivalenceReport { fully_faithful: true, essentially_surjective: true, witness: None, inverse_witness: None };
    if let Some(v) = f.first_violation() {
        report.fully_faithful = false;
        report.essentially_surjective = false;
        report.witness = Some(format!("not a functor: {}", v));
        return report;
    }
    // hom(a, b) -> hom(Fa, Fb) bijective
    'ff: for a in 0..c.object_count() as u32 {
        for b in 0..c.object_count() as u32 {
            let src_hom = c.hom(a, b);
            let tgt_hom = d.hom(f.object(a), f.object(b));
            let mut hit: HashMap<u32, u32> = HashMap::new();
            for &u in src_hom {
                if let Some(prev) = hit.insert(f.morphism(u), u) {
                    report.fully_faithful = false;
                    report.witness = Some(format!("not faithful: {} and {} have the same image", c.morphism_name(prev), c.morphism_name(u)));
                    break 'ff;
                }
            }
            if hit.len() != tgt_hom.len() {
                report.fully_faithful = false;
                report.witness = Some(format!("not full on hom({}, {})", c.object_name(a), c.object_name(b)));
                break 'ff;
            }
        }
    }
    // for each d-object: smallest c-object with an isomorphism F(c) -> d
    let mut choice: Vec<Option<(u32, u32)>> = vec![None; d.object_count()];
    for y in 0..d.object_count() as u32 {
        for x in 0..c.object_count() as u32 {
            if let Some(iso) = d.find_isomorphism(f.object(x), y) {
                choice[y as usize] = Some((x, iso));
                break;
            }
        }
        if choice[y as usize].is_none() {
            report.essentially_surjective = false;
            if report.witness.is_none() {
                report.witness = Some(format!("{} is not in the essential image", d.object_name(y)));
            }
        }
    }
    if !report.fully_faithful || !report.essentially_surjective {
        return report;
    }
    let choice: Vec<(u32, u32)> = choice.into_iter().map(|x| x.unwrap()).collect();
    let inv = |g: u32| d.inverse(g).expect("chosen isomorphism");
    let pre = |a: u32, b: u32, g: u32| -> u32 {
        *c.hom(a, b).iter().find(|&&u| f.morphism(u) == g).expect("fully faithful")
    };
    let g_objects: Vec<u32> = choice.iter().map(|&(x, _)| x).collect();
    let g_morphisms: Vec<u32> = (0..d.morphism_count() as u32)
        .map(|v| {
            let (y, z) = (d.source(v), d.target(v));
            let (x1, u1) = choice[y as usize];
            let (x2, u2) = choice[z as usize];
            pre(x1, x2, d.compose(inv(u2), d.compose(v, u1)))
        })
        .collect();
    let g = FunctorData::new_unchecked(d.clone(), c.clone(), g_objects, g_morphisms);
    let gf = f.then(&g).expect("composable");
    let fg = g.then(f).expect("composable");
    let unit_components: Vec<u32> = (0..c.object_count() as u32)
        .map(|x| {
            let (x2, u) = choice[f.object(x) as usize];
            pre(x, x2, inv(u))
        })
        .collect();
    let counit_components: Vec<u32> = choice.iter().map(|&(_, u)| u).collect();
    let unit = NaturalTransformationData::new_unchecked(FunctorData::identity(c.clone()), gf, unit_components);
    let counit = NaturalTransformationData::new_unchecked(fg, FunctorData::identity(d.clone()), counit_components);
    if let Some(v) = g.first_violation() {
        report.witness = Some(format!("constructed inverse is not a functor: {}", v));
        return report;
    }
    if !unit.is_natural_isomorphism() || !counit.is_natural_isomorphism() {
        report.witness = Some("constructed unit or counit is not a natural isomorphism".into());
        return report;
    }
    report.inverse_witness = Some(InverseWitness { inverse: g, unit, counit });
    report
}
