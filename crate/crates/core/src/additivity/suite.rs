use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use super::homotopy::{verify_homotopy_identities, AdditivityContext, AdditivityFiber, Formulation, HomotopyCertificate};
use crate::error::{Error, Result};
use crate::report::{Clause, Report};
use crate::simpset::{components, homology, AbelianGroup, SimplicialMap, SimplicialSet};
use crate::waldcat::{
    comparison_hypotheses, instance_by_name, k0, universal_sequence_of, verify_pushout_functoriality, verify_split_exact, SubWaldhausen,
    WaldhausenInstance,
};

/// Size of an object of a corpus instance, read off its name (`P3`, `V2`).
pub fn object_size(w: &WaldhausenInstance, x: u32) -> usize {
    w.cat().object_name(x)[1..].parse().expect("corpus object name")
}

/// The objects of size `≤ size` as a full subcategory of the smallest instance of the
/// same family that holds every extension of two of them.
pub fn extension_closed(name: &str, size: usize) -> Result<(Arc<WaldhausenInstance>, SubWaldhausen)> {
    let big = match name {
        "pointed_sets" => 2 * size.max(1) - 1,
        "vect_f2" => 2 * size,
        _ => 0,
    };
    let c = Arc::new(instance_by_name(name, big).ok_or_else(|| Error::Config(format!("no instance {} with extensions of size {}", name, size)))?);
    let sub = SubWaldhausen::full(&c, format!("{}<= {}", name, size), |x| object_size(&c, x) <= size)?;
    Ok((c, sub))
}

#[derive(Clone, Debug, Serialize)]
pub struct AdditivityBounds {
    pub n_max: usize,
    pub m_max: usize,
    pub formulations: Vec<Formulation>,
    pub budget: usize,
}

impl AdditivityBounds {
    /// Classical `h_j` lands one level up and its degeneracy laws one more.
    pub fn depth(&self) -> usize {
        self.n_max + if self.formulations.contains(&Formulation::Classical) { 2 } else { 1 }
    }
}

/// π₀, H₀ and H₁ of the fiber against `𝔰•B`. Evidence only.
#[derive(Clone, Debug, Serialize)]
pub struct HomologyEvidence {
    pub label: &'static str,
    pub pi0_bijection: bool,
    pub fiber: Vec<AbelianGroup>,
    pub target: Vec<AbelianGroup>,
    pub agree: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FiberReport {
    pub m: usize,
    pub y: String,
    pub fiber_size_by_level: Vec<usize>,
    pub retraction_ok: bool,
    pub identities: Vec<HomotopyCertificate>,
    pub homology_evidence: HomologyEvidence,
}

#[derive(Clone, Debug, Serialize)]
pub struct K0Check {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
    pub e: Vec<u64>,
    pub sum: Vec<u64>,
    pub pass: bool,
}

impl K0Check {
    pub fn new(a: &WaldhausenInstance, b: &WaldhausenInstance, e: &WaldhausenInstance) -> Result<Self> {
        let (ka, kb, ke) = (k0(a)?, k0(b)?, k0(e)?);
        let sum = ka.group.direct_sum(&kb.group);
        let mut factors = sum.torsion.clone();
        factors.extend(std::iter::repeat(0).take(sum.free_rank));
        Ok(K0Check { a: ka.invariant_factors, b: kb.invariant_factors, pass: ke.invariant_factors == factors, e: ke.invariant_factors, sum: factors })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdditivityReport {
    pub subject: String,
    pub bounds: AdditivityBounds,
    pub e_objects: usize,
    pub fibers: Vec<FiberReport>,
    pub k0: K0Check,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub split_k0: Option<K0Check>,
    pub report: Report,
}

fn evidence(fib: &AdditivityFiber) -> Result<HomologyEvidence> {
    let (x, b): (&SimplicialSet, &SimplicialSet) = (&fib.fiber.set, &fib.ctx.sb.set);
    let (cx, cb) = (components(x), components(b));
    let mut image = vec![None; cb.len()];
    let mut pi0 = true;
    for (v, &rep) in cx.iter().enumerate() {
        let target = cb[fib.r.at(0, v as u32) as usize];
        match image[target as usize] {
            None => image[target as usize] = Some(rep),
            Some(r) => pi0 &= r == rep,
        }
    }
    pi0 &= cb.iter().all(|&t| image[t as usize].is_some());
    let (hx, hb) = (homology(x, 1)?, homology(b, 1)?);
    let grab = |h: &crate::simpset::HomologyResult| (0..=1).map(|k| h.degree(k).cloned().unwrap_or_else(AbelianGroup::zero)).collect::<Vec<_>>();
    let (fiber, target) = (grab(&hx), grab(&hb));
    Ok(HomologyEvidence { label: "evidence", pi0_bijection: pi0, agree: fiber == target, fiber, target })
}

fn fiber_report(ctx: &Arc<AdditivityContext>, bounds: &AdditivityBounds, m: usize, y: u32) -> Result<FiberReport> {
    let fib = AdditivityFiber::new(ctx, m, y)?;
    let id = SimplicialMap::identity(ctx.sb.set.clone());
    let retraction_ok = fib.iota.then(&fib.r)?.assignment == id.assignment;
    let identities = bounds.formulations.iter().map(|&f| verify_homotopy_identities(&fib, f, bounds.n_max)).collect();
    Ok(FiberReport {
        m,
        y: ctx.sa.set.id(m, y).to_string(),
        fiber_size_by_level: fib.fiber.level_sizes(),
        retraction_ok,
        identities,
        homology_evidence: evidence(&fib)?,
    })
}

/// Every left fiber `𝔰(s)/(m, A')` for `m ≤ m_max`: retraction, homotopy certificate and
/// homology evidence, plus the K₀ checks.
pub fn additivity_suite(a: &SubWaldhausen, c: &Arc<WaldhausenInstance>, b: &SubWaldhausen, bounds: &AdditivityBounds) -> Result<AdditivityReport> {
    let ctx = Arc::new(AdditivityContext::new(a, c, b, bounds.depth(), bounds.budget)?);
    let mut report = Report::new(format!("additivity for E({}, {}, {})", a.instance.name, c.name, b.instance.name));
    report.merge("prerequisite", verify_pushout_functoriality(c, bounds.budget));

    let jobs: Vec<(usize, u32)> = (0..=bounds.m_max.min(ctx.depth)).flat_map(|m| (0..ctx.sa.set.count(m) as u32).map(move |y| (m, y))).collect();
    let fibers = jobs.par_iter().map(|&(m, y)| fiber_report(&ctx, bounds, m, y)).collect::<Result<Vec<_>>>()?;

    let mut retract = Clause::new("retraction_is_identity");
    let mut evid = Clause::new("evidence_pi0_h0_h1");
    let mut certs: Vec<Clause> = bounds.formulations.iter().map(|f| Clause::new(format!("homotopy_identities_{:?}", f).to_lowercase())).collect();
    for fr in &fibers {
        let at = || format!("m={} y={}", fr.m, fr.y);
        retract.check(fr.retraction_ok, at);
        evid.check(fr.homology_evidence.pi0_bijection && fr.homology_evidence.agree, at);
        for (cl, cert) in certs.iter_mut().zip(&fr.identities) {
            cl.check(cert.pass(), || {
                let first = cert.clauses.iter().find(|c| !c.pass).map(|c| format!("{}: {}", c.name, c.witness.clone().unwrap_or_default()));
                format!("{} {}", at(), first.unwrap_or_default())
            });
        }
    }
    report.push(retract);
    for c in certs {
        report.push(c);
    }
    report.push(evid);

    let k0c = K0Check::new(&a.instance, &b.instance, &ctx.e.instance)?;
    let mut kc = Clause::new("k0_of_e_is_sum");
    kc.check(k0c.pass, || format!("{:?} vs {:?}", k0c.e, k0c.sum));
    report.push(kc);

    let seq = universal_sequence_of(&ctx.e)?;
    let split_ok = verify_split_exact(&seq).pass() && comparison_hypotheses(&seq).iter().all(|c| c.pass);
    let split_k0 = if split_ok { Some(K0Check::new(&seq.a, &seq.b, &seq.e)?) } else { None };
    match &split_k0 {
        Some(k) => {
            let mut sc = Clause::new("split_exact_k0_is_sum");
            sc.check(k.pass, || format!("{:?} vs {:?}", k.e, k.sum));
            report.push(sc);
        }
        None => report.notes.push("universal sequence does not meet the comparison hypotheses; split K0 check skipped".into()),
    }

    Ok(AdditivityReport { subject: report.subject.clone(), bounds: bounds.clone(), e_objects: ctx.e.data.objects.len(), fibers, k0: k0c, split_k0, report })
}
