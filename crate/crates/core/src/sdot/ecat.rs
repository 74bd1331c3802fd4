use std::collections::HashMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::catkit::{FiniteCategory, FunctorData, MorphismSpec};
use crate::error::{Error, Result};
use crate::waldcat::{mediate, PushoutChooser, PushoutData, SubWaldhausen, WaldhausenInstance};

/// A cofiber sequence `A >-i-> C -p->> B` with `A` in the first sub-category and `B` in
/// the second (indices local to the sub-categories), `i` and `p` in the ambient one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CofSeq {
    pub a: u32,
    pub c: u32,
    pub b: u32,
    pub i: u32,
    pub p: u32,
}

#[derive(Debug)]
pub struct EData {
    pub a: SubWaldhausen,
    pub c: Arc<WaldhausenInstance>,
    pub b: SubWaldhausen,
    pub objects: Vec<CofSeq>,
    index: HashMap<CofSeq, u32>,
    /// `(α, γ, β)` per morphism, `α` and `β` local to the sub-categories.
    pub triples: Vec<(u32, u32, u32)>,
    mor_index: HashMap<(u32, u32, u32, u32, u32), u32>,
    pub category: Arc<FiniteCategory>,
}

impl EData {
    pub fn find_object(&self, s: &CofSeq) -> Option<u32> {
        self.index.get(s).copied()
    }

    pub fn find_morphism(&self, s: u32, t: u32, triple: (u32, u32, u32)) -> Option<u32> {
        self.mor_index.get(&(s, t, triple.0, triple.1, triple.2)).copied()
    }

    pub fn object(&self, e: u32) -> &CofSeq {
        &self.objects[e as usize]
    }
}

/// `E(A, C, B)`, the Waldhausen category of cofiber sequences, with its three projections.
#[derive(Clone, Debug)]
pub struct ECat {
    pub data: Arc<EData>,
    pub instance: Arc<WaldhausenInstance>,
    pub s: FunctorData,
    pub middle: FunctorData,
    pub q: FunctorData,
}

#[derive(Debug)]
struct EChooser {
    data: Arc<EData>,
}

impl PushoutChooser for EChooser {
    fn choose(&self, cat: &FiniteCategory, f: u32, i: u32) -> Option<PushoutData> {
        let d = &self.data;
        let (c, cc) = (&d.c, d.c.cat());
        let (fa, fc, fb) = d.triples[f as usize];
        let (ia, ic, ib) = d.triples[i as usize];
        let (eb, ec) = (d.object(cat.target(f)), d.object(cat.target(i)));
        let pa = d.a.instance.pushout(fa, ia).ok()??;
        let pc = c.pushout(fc, ic).ok()??;
        let pb = d.b.instance.pushout(fb, ib).ok()??;
        let (inc_a, inc_b) = (&d.a, &d.b);
        // structure maps of the pushout sequence, induced from the two legs
        let pi = mediate(
            cc,
            inc_a.include_object(pa.object),
            pc.object,
            &[
                (inc_a.include_morphism(pa.from_b), cc.compose(pc.from_b, eb.i)),
                (inc_a.include_morphism(pa.from_c), cc.compose(pc.from_c, ec.i)),
            ],
        )?;
        let pp = mediate(
            cc,
            pc.object,
            inc_b.include_object(pb.object),
            &[
                (pc.from_b, cc.compose(inc_b.include_morphism(pb.from_b), eb.p)),
                (pc.from_c, cc.compose(inc_b.include_morphism(pb.from_c), ec.p)),
            ],
        )?;
        let obj = d.find_object(&CofSeq { a: pa.object, c: pc.object, b: pb.object, i: pi, p: pp })?;
        Some(PushoutData {
            object: obj,
            from_b: d.find_morphism(cat.target(f), obj, (pa.from_b, pc.from_b, pb.from_b))?,
            from_c: d.find_morphism(cat.target(i), obj, (pa.from_c, pc.from_c, pb.from_c))?,
        })
    }

    fn name(&self) -> String {
        format!("levelwise({})", self.data.c.chooser_name())
    }
}

/// Build `E(A, C, B)`. Objects are all certified cofiber sequences; a morphism is a
/// cofibration when its first component is a cofibration of `A` and the induced map
/// `C₁ ∪_{A₁} A₂ -> C₂` is a cofibration of `C`; weak equivalences are levelwise.
pub fn e_category(a: &SubWaldhausen, c: &Arc<WaldhausenInstance>, b: &SubWaldhausen, budget: usize) -> Result<ECat> {
    for (label, sub) in [("first", a), ("last", b)] {
        if let Some(v) = sub.first_violation(c) {
            return Err(Error::Precondition(format!("{} category is not a sub-Waldhausen category: {}", label, v)));
        }
    }
    let cc = c.cat();
    let mut objects = Vec::new();
    for i in c.cofibrations() {
        let Some(ao) = a.object_preimage(cc.source(i)) else { continue };
        for &(q, p) in c.quotients(i).iter() {
            if let Some(bo) = b.object_preimage(q) {
                objects.push(CofSeq { a: ao, c: cc.target(i), b: bo, i, p });
            }
        }
    }
    objects.sort();
    if objects.len() > budget {
        return Err(Error::budget("enumerating cofiber sequences", budget));
    }
    let index: HashMap<CofSeq, u32> = objects.iter().enumerate().map(|(k, &o)| (o, k as u32)).collect();
    let (ac, bc) = (a.instance.cat(), b.instance.cat());
    let k = objects.len();
    let per_source: Vec<Vec<(u32, (u32, u32, u32))>> = (0..k)
        .into_par_iter()
        .map(|s| {
            let x = objects[s];
            let mut v = Vec::new();
            for (t, y) in objects.iter().enumerate() {
                for &g in cc.hom(x.c, y.c) {
                    let gi = cc.compose(g, x.i);
                    let alphas: Vec<u32> = ac.hom(x.a, y.a).iter().copied().filter(|&al| cc.compose(y.i, a.include_morphism(al)) == gi).collect();
                    if alphas.is_empty() {
                        continue;
                    }
                    let pg = cc.compose(y.p, g);
                    for &be in bc.hom(x.b, y.b) {
                        if cc.compose(b.include_morphism(be), x.p) == pg {
                            for &al in &alphas {
                                v.push((t as u32, (al, g, be)));
                            }
                        }
                    }
                }
            }
            v
        })
        .collect();
    let total: usize = per_source.iter().map(|v| v.len()).sum();
    if total > budget.saturating_mul(50) {
        return Err(Error::budget("enumerating maps of cofiber sequences", budget.saturating_mul(50)));
    }
    let mut specs = Vec::with_capacity(total);
    let mut triples = Vec::with_capacity(total);
    let mut mor_index = HashMap::with_capacity(total);
    for (s, v) in per_source.into_iter().enumerate() {
        for (t, tr) in v {
            specs.push(MorphismSpec::new(
                format!("({},{},{}):e{}>e{}", ac.morphism_name(tr.0), cc.morphism_name(tr.1), bc.morphism_name(tr.2), s, t),
                s as u32,
                t,
            ));
            mor_index.insert((s as u32, t, tr.0, tr.1, tr.2), triples.len() as u32);
            triples.push(tr);
        }
    }
    let ids: Vec<u32> = objects
        .iter()
        .enumerate()
        .map(|(s, o)| mor_index[&(s as u32, s as u32, ac.identity(o.a), cc.identity(o.c), bc.identity(o.b))])
        .collect();
    let names = objects
        .iter()
        .enumerate()
        .map(|(s, o)| format!("e{}:{}>{}>{}", s, ac.object_name(o.a), cc.object_name(o.c), bc.object_name(o.b)))
        .collect();
    let cat = FiniteCategory::from_fn(names, specs.clone(), ids, |g, f| {
        let (x, y) = (triples[f as usize], triples[g as usize]);
        let key = (specs[f as usize].source, specs[g as usize].target, ac.compose(y.0, x.0), cc.compose(y.1, x.1), bc.compose(y.2, x.2));
        mor_index[&key]
    })?;
    let cat = Arc::new(cat);
    let zero = index[&CofSeq {
        a: a.instance.zero,
        c: c.zero,
        b: b.instance.zero,
        i: cc.identity(c.zero),
        p: cc.identity(c.zero),
    }];
    let mut cof = Vec::with_capacity(triples.len());
    let mut weq = Vec::with_capacity(triples.len());
    for (m, &(al, g, be)) in triples.iter().enumerate() {
        let (x, y) = (objects[cat.source(m as u32) as usize], objects[cat.target(m as u32) as usize]);
        weq.push(a.instance.is_weq(al) && c.is_weq(g) && b.instance.is_weq(be));
        let induced = match c.pushout(a.include_morphism(al), x.i) {
            Ok(Some(p)) => mediate(cc, p.object, y.c, &[(p.from_b, y.i), (p.from_c, g)]).is_some_and(|u| c.is_cofibration(u)),
            _ => false,
        };
        cof.push(a.instance.is_cofibration(al) && induced);
    }
    let data = Arc::new(EData { a: a.clone(), c: c.clone(), b: b.clone(), objects, index, triples, mor_index, category: cat.clone() });
    let name = format!("E({},{},{})", a.instance.name, c.name, b.instance.name);
    let instance = Arc::new(WaldhausenInstance::new(name, cat.clone(), zero, cof, weq, Arc::new(EChooser { data: data.clone() }))?);
    let proj = |target: Arc<FiniteCategory>, obj: &dyn Fn(&CofSeq) -> u32, mor: &dyn Fn(&(u32, u32, u32)) -> u32| {
        FunctorData::new(cat.clone(), target, data.objects.iter().map(obj).collect(), data.triples.iter().map(mor).collect())
    };
    let s = proj(a.instance.category.clone(), &|o| o.a, &|t| t.0)?;
    let middle = proj(c.category.clone(), &|o| o.c, &|t| t.1)?;
    let q = proj(b.instance.category.clone(), &|o| o.b, &|t| t.2)?;
    Ok(ECat { data, instance, s, middle, q })
}
