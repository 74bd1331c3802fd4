use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::pushout::{is_pushout, mediate, search_pushout, PushoutChooser, PushoutData};
use crate::catkit::{FiniteCategory, FunctorData};
use crate::error::{Error, Result};

/// A finite category with a zero object, cofibrations, weak equivalences and a chosen
/// pushout along cofibrations. Cofibrations and weak equivalences are stored as flags
/// indexed by morphism.
#[derive(Clone, Debug)]
pub struct WaldhausenInstance {
    pub name: String,
    pub category: Arc<FiniteCategory>,
    pub zero: u32,
    cof: Vec<bool>,
    weq: Vec<bool>,
    chooser: Arc<dyn PushoutChooser>,
    to_zero: Vec<u32>,
    from_zero: Vec<u32>,
    quotient_cache: Arc<Mutex<HashMap<u32, Arc<Vec<(u32, u32)>>>>>,
}

impl WaldhausenInstance {
    pub fn new(
        name: impl Into<String>,
        category: Arc<FiniteCategory>,
        zero: u32,
        cof: Vec<bool>,
        weq: Vec<bool>,
        chooser: Arc<dyn PushoutChooser>,
    ) -> Result<Self> {
        let name = name.into();
        let m = category.morphism_count();
        if cof.len() != m || weq.len() != m {
            return Err(Error::InvalidArgument(format!("{}: one cofibration and weak-equivalence flag per morphism", name)));
        }
        let mut to_zero = Vec::new();
        let mut from_zero = Vec::new();
        for a in 0..category.object_count() as u32 {
            let (out, inc) = (category.hom(a, zero), category.hom(zero, a));
            if out.len() != 1 || inc.len() != 1 {
                return Err(Error::Certification(format!("{}: {} is not a zero object", name, category.object_name(zero))));
            }
            to_zero.push(out[0]);
            from_zero.push(inc[0]);
        }
        Ok(WaldhausenInstance { name, category, zero, cof, weq, chooser, to_zero, from_zero, quotient_cache: Default::default() })
    }

    pub fn cat(&self) -> &FiniteCategory {
        &self.category
    }

    pub fn is_cofibration(&self, f: u32) -> bool {
        self.cof[f as usize]
    }

    pub fn is_weq(&self, f: u32) -> bool {
        self.weq[f as usize]
    }

    pub fn cofibrations(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.cof.len() as u32).filter(|&f| self.cof[f as usize])
    }

    pub fn weqs(&self) -> impl Iterator<Item = u32> + '_ {
        (0..self.weq.len() as u32).filter(|&f| self.weq[f as usize])
    }

    pub fn to_zero(&self, a: u32) -> u32 {
        self.to_zero[a as usize]
    }

    pub fn from_zero(&self, a: u32) -> u32 {
        self.from_zero[a as usize]
    }

    pub fn zero_map(&self, a: u32, b: u32) -> u32 {
        self.category.compose(self.from_zero(b), self.to_zero(a))
    }

    pub fn is_zero_map(&self, f: u32) -> bool {
        f == self.zero_map(self.category.source(f), self.category.target(f))
    }

    pub fn chooser_name(&self) -> String {
        self.chooser.name()
    }

    pub fn chooser(&self) -> &Arc<dyn PushoutChooser> {
        &self.chooser
    }

    /// Chosen pushout of `B <-f- A >-i-> C`. `Ok(None)` when the span has no pushout
    /// inside the instance bound.
    pub fn pushout(&self, f: u32, i: u32) -> Result<Option<PushoutData>> {
        let c = self.cat();
        if c.source(f) != c.source(i) {
            return Err(Error::InvalidArgument("span legs have different sources".into()));
        }
        if !self.is_cofibration(i) {
            return Err(Error::NotCofibration(c.morphism_name(i).to_string()));
        }
        Ok(self.chooser.choose(c, f, i))
    }

    /// Same as [`WaldhausenInstance::pushout`].
    pub fn canonical_pushout(&self, f: u32, i: u32) -> Result<Option<PushoutData>> {
        self.pushout(f, i)
    }

    /// Map between chosen pushouts induced by a map of spans `(a, b, c)` from
    /// `B <- A >-> C` to `B' <- A' >-> C'`.
    pub fn induced_map(&self, p: &PushoutData, q: &PushoutData, b: u32, c: u32) -> Option<u32> {
        let cat = self.cat();
        mediate(cat, p.object, q.object, &[(p.from_b, cat.compose(q.from_b, b)), (p.from_c, cat.compose(q.from_c, c))])
    }

    pub fn is_cofiber(&self, m: u32, q: u32) -> bool {
        let c = self.cat();
        let a = c.source(m);
        c.source(q) == c.target(m) && is_pushout(c, self.to_zero(a), m, self.from_zero(c.target(q)), q)
    }

    /// Every certified cofiber `(Q, q : B -> Q)` of `m : A -> B`. All of them are
    /// `φ ∘ p` for isomorphisms `φ` out of one certified cofiber `p`.
    pub fn quotients(&self, m: u32) -> Arc<Vec<(u32, u32)>> {
        if let Some(v) = self.quotient_cache.lock().unwrap().get(&m) {
            return v.clone();
        }
        let c = self.cat();
        let a = c.source(m);
        let first = if self.is_cofibration(m) { self.chooser.choose(c, self.to_zero(a), m) } else { None }
            .filter(|p| is_pushout(c, self.to_zero(a), m, p.from_b, p.from_c))
            .or_else(|| search_pushout(c, self.to_zero(a), m));
        let mut out = Vec::new();
        if let Some(p) = first {
            for q in 0..c.object_count() as u32 {
                for &phi in c.hom(p.object, q) {
                    if c.is_isomorphism(phi) {
                        out.push((q, c.compose(phi, p.from_c)));
                    }
                }
            }
            out.sort();
        }
        let out = Arc::new(out);
        self.quotient_cache.lock().unwrap().insert(m, out.clone());
        out
    }

    /// The chooser's cofiber of a cofibration.
    pub fn cofiber(&self, m: u32) -> Option<(u32, u32)> {
        let c = self.cat();
        let p = self.chooser.choose(c, self.to_zero(c.source(m)), m)?;
        Some((p.object, p.from_c))
    }

    pub fn with_cofibrations(&self, name: impl Into<String>, cof: impl Fn(u32) -> bool) -> Self {
        let mut w = self.clone();
        w.name = name.into();
        w.cof = (0..self.cof.len() as u32).map(cof).collect();
        w.quotient_cache = Default::default();
        w
    }

    pub fn with_weqs(&self, name: impl Into<String>, weq: impl Fn(u32) -> bool) -> Self {
        let mut w = self.clone();
        w.name = name.into();
        w.weq = (0..self.weq.len() as u32).map(weq).collect();
        w
    }

    pub fn with_chooser(&self, name: impl Into<String>, chooser: Arc<dyn PushoutChooser>) -> Self {
        let mut w = self.clone();
        w.name = name.into();
        w.chooser = chooser;
        w.quotient_cache = Default::default();
        w
    }
}

/// A sub-Waldhausen category: a standalone instance together with its inclusion.
#[derive(Clone, Debug)]
pub struct SubWaldhausen {
    pub instance: Arc<WaldhausenInstance>,
    pub inclusion: FunctorData,
    object_pre: HashMap<u32, u32>,
    morphism_pre: HashMap<u32, u32>,
}

impl SubWaldhausen {
    pub fn new(instance: Arc<WaldhausenInstance>, inclusion: FunctorData) -> Result<Self> {
        if let Some(v) = inclusion.first_violation() {
            return Err(Error::Certification(format!("inclusion is not a functor: {}", v)));
        }
        let mut object_pre = HashMap::new();
        for (a, &b) in inclusion.objects.iter().enumerate() {
            if object_pre.insert(b, a as u32).is_some() {
                return Err(Error::Certification("inclusion is not injective on objects".into()));
            }
        }
        let mut morphism_pre = HashMap::new();
        for (f, &g) in inclusion.morphisms.iter().enumerate() {
            if morphism_pre.insert(g, f as u32).is_some() {
                return Err(Error::Certification("inclusion is not injective on morphisms".into()));
            }
        }
        Ok(SubWaldhausen { instance, inclusion, object_pre, morphism_pre })
    }

    /// The whole instance as a sub-Waldhausen category of itself.
    pub fn whole(w: Arc<WaldhausenInstance>) -> Self {
        let inc = FunctorData::identity(w.category.clone());
        SubWaldhausen::new(w, inc).expect("identity inclusion")
    }

    /// Full subcategory on the objects accepted by `keep`. Cofibrations are the parent's
    /// cofibrations whose cofiber lies in the subcategory up to isomorphism; weak
    /// equivalences are restricted; pushouts are the parent's when they land inside.
    pub fn full(parent: &Arc<WaldhausenInstance>, name: impl Into<String>, keep: impl Fn(u32) -> bool) -> Result<Self> {
        let pc = parent.cat();
        let objects: Vec<u32> = (0..pc.object_count() as u32).filter(|&a| keep(a)).collect();
        if !objects.contains(&parent.zero) {
            return Err(Error::Precondition("a sub-Waldhausen category must contain the zero object".into()));
        }
        let (sub, objs, mors) = pc.subcategory(&objects, |_| true)?;
        let sub = Arc::new(sub);
        let obj_index: HashMap<u32, u32> = objs.iter().enumerate().map(|(i, &a)| (a, i as u32)).collect();
        let mor_index: HashMap<u32, u32> = mors.iter().enumerate().map(|(i, &f)| (f, i as u32)).collect();
        let cof = mors
            .iter()
            .map(|&f| parent.is_cofibration(f) && parent.quotients(f).iter().any(|&(q, _)| obj_index.contains_key(&q)))
            .collect();
        let weq = mors.iter().map(|&f| parent.is_weq(f)).collect();
        let chooser = Arc::new(RestrictedChooser {
            parent: parent.clone(),
            mors: mors.clone(),
            obj_index: obj_index.clone(),
            mor_index,
        });
        let zero = obj_index[&parent.zero];
        let instance = Arc::new(WaldhausenInstance::new(name, sub.clone(), zero, cof, weq, chooser)?);
        let inclusion = FunctorData::new(sub, parent.category.clone(), objs, mors)?;
        SubWaldhausen::new(instance, inclusion)
    }

    pub fn include_object(&self, a: u32) -> u32 {
        self.inclusion.object(a)
    }

    pub fn include_morphism(&self, f: u32) -> u32 {
        self.inclusion.morphism(f)
    }

    pub fn object_preimage(&self, b: u32) -> Option<u32> {
        self.object_pre.get(&b).copied()
    }

    pub fn morphism_preimage(&self, g: u32) -> Option<u32> {
        self.morphism_pre.get(&g).copied()
    }

    /// Cofibrations of the sub are exactly the ambient cofibrations between its objects
    /// whose cofiber lies in it up to isomorphism; the inclusion preserves weak
    /// equivalences and the zero object.
    pub fn first_violation(&self, ambient: &WaldhausenInstance) -> Option<String> {
        let sub = &self.instance;
        let sc = sub.cat();
        if self.include_object(sub.zero) != ambient.zero {
            return Some("inclusion does not preserve the zero object".into());
        }
        for f in 0..sc.morphism_count() as u32 {
            let g = self.include_morphism(f);
            let expected = ambient.is_cofibration(g) && ambient.quotients(g).iter().any(|&(q, _)| self.object_preimage(q).is_some());
            if sub.is_cofibration(f) != expected {
                return Some(format!("cofibration flag of {} disagrees with the ambient rule", sc.morphism_name(f)));
            }
            if sub.is_weq(f) && !ambient.is_weq(g) {
                return Some(format!("weak equivalence {} not preserved", sc.morphism_name(f)));
            }
        }
        None
    }
}

#[derive(Debug)]
struct RestrictedChooser {
    parent: Arc<WaldhausenInstance>,
    mors: Vec<u32>,
    obj_index: HashMap<u32, u32>,
    mor_index: HashMap<u32, u32>,
}

impl PushoutChooser for RestrictedChooser {
    fn choose(&self, _c: &FiniteCategory, f: u32, i: u32) -> Option<PushoutData> {
        let (pf, pi) = (self.mors[f as usize], self.mors[i as usize]);
        let p = self.parent.chooser.choose(self.parent.cat(), pf, pi)?;
        Some(PushoutData {
            object: *self.obj_index.get(&p.object)?,
            from_b: self.mor_index[&p.from_b],
            from_c: self.mor_index[&p.from_c],
        })
    }

    fn name(&self) -> String {
        format!("restricted({})", self.parent.chooser.name())
    }
}
