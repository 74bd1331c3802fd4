use std::collections::BTreeMap;
use std::fs;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use super::config::{InstanceSpec, SuiteConfig};
use crate::additivity::{additivity_suite, extension_closed, AdditivityBounds, K0Check};
use crate::catkit::{nerve_with_chains, small_corpus, tau1, tau1_counit, DEFAULT_PATH_CAP};
use crate::error::{Error, Result};
use crate::qcat::{
    check_equiv_is_nerve_of_isos, check_nerve_pushouts, check_pushout_of_equivalence, compare_equiv_constructions, equivalence_spans, is_quasicategory,
    waldhausen_qcat_probe, QuasicategoryProbe,
};
use crate::report::{Clause, Report};
use crate::sdot::{check_transpose, e_category, object_simplicial_set, s_n_category};
use crate::simpset::validate_simplicial_identities;
use crate::waldcat::{instance_by_name, k0, verify_axioms, verify_pushout_functoriality, SubWaldhausen, WaldhausenInstance, K0_NOTE};

pub const REPORT_SCHEMA: &str = "waldkit-report/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Axioms,
    Sdot,
    Additivity,
    QcatCompare,
    K0,
    All,
}

impl Suite {
    pub fn parts(self) -> Vec<Suite> {
        match self {
            Suite::All => vec![Suite::Axioms, Suite::Sdot, Suite::Additivity, Suite::QcatCompare, Suite::K0],
            s => vec![s],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Suite::Axioms => "axioms",
            Suite::Sdot => "sdot",
            Suite::Additivity => "additivity",
            Suite::QcatCompare => "qcat-compare",
            Suite::K0 => "k0",
            Suite::All => "all",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Section {
    pub suite: &'static str,
    pub instance: String,
    pub report: Report,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub data: Value,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    CheckFailure,
    BudgetExceeded,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::CheckFailure => 1,
            Status::BudgetExceeded => 3,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub schema: &'static str,
    pub k0_note: &'static str,
    pub modules: BTreeMap<&'static str, &'static str>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub header: Header,
    pub suite: Suite,
    pub config: SuiteConfig,
    pub sections: Vec<Section>,
    /// Failing hard clauses, as `suite/instance/clause`.
    pub failures: Vec<String>,
    /// Evidence clauses that did not hold; they never decide the status.
    pub evidence_misses: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub aborted: Option<String>,
    pub status: Status,
}

pub fn module_versions() -> BTreeMap<&'static str, &'static str> {
    let v = env!("CARGO_PKG_VERSION");
    ["simpset", "catkit", "waldcat", "sdot", "additivity", "qcat", "cli"].into_iter().map(|m| (m, v)).collect()
}

/// Evidence clauses are annotated but never gate the exit status.
pub fn is_evidence(clause: &str) -> bool {
    clause.rsplit('.').next().is_some_and(|last| last.starts_with("evidence"))
}

fn instance(spec: &InstanceSpec) -> Result<Arc<WaldhausenInstance>> {
    instance_by_name(&spec.name, spec.size).map(Arc::new).ok_or_else(|| Error::Config(format!("instance {} is out of range", spec.label())))
}

fn section(suite: Suite, instance: impl Into<String>, report: Report, data: Value) -> Section {
    Section { suite: suite.name(), instance: instance.into(), report, data }
}

fn run_axioms(cfg: &SuiteConfig, out: &mut Vec<Section>) -> Result<()> {
    for spec in cfg.instance_specs()? {
        let w = instance(&spec)?;
        let mut r = verify_axioms(&w);
        r.merge("functoriality", verify_pushout_functoriality(&w, cfg.budget));
        out.push(section(Suite::Axioms, spec.label(), r, json!({ "objects": w.cat().object_count(), "morphisms": w.cat().morphism_count() })));
    }
    Ok(())
}

fn run_sdot(cfg: &SuiteConfig, out: &mut Vec<Section>) -> Result<()> {
    for spec in cfg.instance_specs()? {
        let w = instance(&spec)?;
        let mut r = Report::new(format!("S-construction of {}", w.name));
        let obj = object_simplicial_set(&w, cfg.trunc, cfg.budget)?;
        let mut ids = Clause::new("object_set_simplicial_identities");
        let v = validate_simplicial_identities(&obj.set);
        ids.check(v.pass, || format!("{:?}", v.violation));
        r.push(ids);
        let mut sizes = Vec::new();
        for n in 0..=cfg.n_max {
            let sn = s_n_category(&w, n, cfg.budget)?;
            sizes.push(sn.instance.cat().object_count());
            r.merge(&format!("s{}", n), verify_axioms(&sn.instance));
            let t = check_transpose(&w, n, cfg.budget)?;
            let mut tc = Clause::new(format!("transpose_n{}", n));
            tc.check(t.identical, || format!("{} vs {}", t.n_of_s2, t.two_of_sn));
            r.push(tc);
        }
        let whole = SubWaldhausen::whole(w.clone());
        let e = e_category(&whole, &w, &whole, cfg.budget)?;
        r.merge("e", verify_axioms(&e.instance));
        out.push(section(
            Suite::Sdot,
            spec.label(),
            r,
            json!({ "object_set_levels": obj.set.level_sizes(), "s_n_objects": sizes, "e_objects": e.data.objects.len() }),
        ));
    }
    Ok(())
}

fn run_additivity(cfg: &SuiteConfig, out: &mut Vec<Section>) -> Result<()> {
    let bounds = AdditivityBounds { n_max: cfg.n_max, m_max: cfg.m_max, formulations: cfg.formulation.list(), budget: cfg.budget };
    for spec in cfg.instance_specs()? {
        let (c, small) = extension_closed(&spec.name, spec.size)?;
        let point = SubWaldhausen::full(&c, "point", |x| x == c.zero)?;
        for (label, a) in [("A=B", &small), ("A=*", &point)] {
            let rep = additivity_suite(a, &c, &small, &bounds)?;
            let identities: usize = rep.fibers.iter().flat_map(|f| &f.identities).map(|c| c.checked).sum();
            let data = json!({
                "case": label,
                "ambient": c.name,
                "e_objects": rep.e_objects,
                "fibers": rep.fibers,
                "identities_checked": identities,
                "k0": rep.k0,
                "split_k0": rep.split_k0,
            });
            out.push(section(Suite::Additivity, format!("{} {}", spec.label(), label), rep.report, data));
        }
    }
    Ok(())
}

fn run_qcat(cfg: &SuiteConfig, out: &mut Vec<Section>) -> Result<()> {
    let d = cfg.trunc;
    let mut corpus = Report::new("nerves of the small corpus");
    let mut tau = Clause::new("tau1_of_nerve_is_identity");
    let mut horns = Clause::new("nerves_fill_inner_horns_uniquely");
    for (name, c) in small_corpus() {
        let c = Arc::new(c);
        let nv = nerve_with_chains(&c, d);
        let t = tau1(&nv.set, DEFAULT_PATH_CAP)?;
        tau.check(tau1_counit(&c, &nv, &t)?.is_isomorphism(), || name.to_string());
        let h = is_quasicategory(&nv.set, d)?;
        horns.check(h.pass && h.unique_fillers, || name.to_string());
        corpus.merge(name, check_equiv_is_nerve_of_isos(&c, d, cfg.budget)?);
    }
    corpus.push(tau);
    corpus.push(horns);
    out.push(section(Suite::QcatCompare, "corpus", corpus, Value::Null));

    for spec in cfg.instance_specs()? {
        let w = instance(&spec)?;
        let c = w.cat();
        let mut r = Report::new(format!("{} through its nerve", w.name));
        let nv = nerve_with_chains(c, d);
        let mut tc = Clause::new("tau1_of_nerve_is_identity");
        let t = tau1(&nv.set, DEFAULT_PATH_CAP)?;
        tc.check(tau1_counit(&w.category, &nv, &t)?.is_isomorphism(), || w.name.clone());
        r.push(tc);
        r.merge("equiv", check_equiv_is_nerve_of_isos(c, d, cfg.budget)?);
        r.merge("waldhausen", waldhausen_qcat_probe(&w, 2, cfg.budget)?);
        let spans: Vec<(u32, u32)> = (0..c.morphism_count() as u32)
            .filter(|&i| w.is_cofibration(i))
            .flat_map(|i| c.outgoing(c.source(i)).iter().map(move |&f| (f, i)))
            .collect();
        r.merge("pushouts", check_nerve_pushouts(c, &spans, cfg.budget)?);
        let n2 = nerve_with_chains(c, 2);
        let probe = QuasicategoryProbe::new(n2.set.clone())?;
        let eq_spans: Vec<(u32, u32)> = equivalence_spans(c).into_iter().map(|(f, i)| (n2.edge(f), n2.edge(i))).collect();
        r.merge("pushout_of_equivalence", check_pushout_of_equivalence(&probe, &eq_spans, cfg.budget)?);
        let mut comparisons = Vec::new();
        for n in 0..=cfg.n_max.min(2) {
            let cmp = compare_equiv_constructions(&w, n, cfg.k_max, cfg.m_max.min(2), cfg.budget)?;
            r.merge(&format!("example_s{}", n), cmp.report.clone());
            comparisons.push(cmp);
        }
        out.push(section(Suite::QcatCompare, spec.label(), r, json!({ "equivalence_spans": eq_spans.len(), "comparisons": comparisons })));
    }
    Ok(())
}

fn run_k0(cfg: &SuiteConfig, out: &mut Vec<Section>) -> Result<()> {
    for spec in cfg.instance_specs()? {
        let w = instance(&spec)?;
        let mut r = Report::new(format!("K0 of cofiber sequences in {}", w.name));
        let whole = SubWaldhausen::whole(w.clone());
        let point = SubWaldhausen::full(&w, "point", |x| x == w.zero)?;
        let mut checks = BTreeMap::new();
        for (label, a) in [("(C,C,C)", &whole), ("(*,C,C)", &point)] {
            let e = e_category(a, &w, &whole, cfg.budget)?;
            let k = K0Check::new(&a.instance, &whole.instance, &e.instance)?;
            let mut cl = Clause::new(format!("k0_of_e_is_sum {}", label));
            cl.check(k.pass, || format!("{:?} vs {:?}", k.e, k.sum));
            r.push(cl);
            checks.insert(label, k);
        }
        out.push(section(Suite::K0, spec.label(), r, json!({ "k0": k0(&w)?.invariant_factors, "checks": checks })));
    }
    Ok(())
}

/// Run a suite. Budget overflows stop the run and keep what finished; other errors
/// are returned.
pub fn run_suite(cfg: &SuiteConfig, suite: Suite) -> Result<SuiteReport> {
    cfg.validate()?;
    let mut sections = Vec::new();
    let mut aborted = None;
    for part in suite.parts() {
        let res = match part {
            Suite::Axioms => run_axioms(cfg, &mut sections),
            Suite::Sdot => run_sdot(cfg, &mut sections),
            Suite::Additivity => run_additivity(cfg, &mut sections),
            Suite::QcatCompare => run_qcat(cfg, &mut sections),
            Suite::K0 => run_k0(cfg, &mut sections),
            Suite::All => unreachable!(),
        };
        match res {
            Ok(()) => {}
            Err(e @ (Error::BudgetExceeded { .. } | Error::ExplorationBound(_))) => {
                aborted = Some(format!("{}: {}", part.name(), e));
                break;
            }
            Err(e) => return Err(e),
        }
    }
    let mut failures = Vec::new();
    let mut evidence_misses = Vec::new();
    for s in &sections {
        for c in s.report.clauses.iter().filter(|c| !c.pass) {
            let key = format!("{}/{}/{}", s.suite, s.instance, c.name);
            if is_evidence(&c.name) {
                evidence_misses.push(key);
            } else {
                failures.push(key);
            }
        }
    }
    let status = if aborted.is_some() {
        Status::BudgetExceeded
    } else if failures.is_empty() {
        Status::Pass
    } else {
        Status::CheckFailure
    };
    Ok(SuiteReport {
        header: Header { schema: REPORT_SCHEMA, k0_note: K0_NOTE, modules: module_versions() },
        suite,
        config: cfg.clone(),
        sections,
        failures,
        evidence_misses,
        aborted,
        status,
    })
}

impl SuiteReport {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    pub fn summary(&self) -> String {
        let mut s = format!("waldkit {} ({})\n{}\n\n", self.suite.name(), self.header.schema, self.header.k0_note);
        for sec in &self.sections {
            let total: usize = sec.report.clauses.iter().map(|c| c.checked).sum();
            let bad = sec.report.clauses.iter().filter(|c| !c.pass).count();
            s += &format!("[{}] {} / {}: {} clauses, {} checks, {} failing\n", sec.suite, sec.instance, sec.report.subject, sec.report.clauses.len(), total, bad);
            for c in sec.report.clauses.iter().filter(|c| !c.pass) {
                let tag = if is_evidence(&c.name) { "evidence" } else { "FAIL" };
                s += &format!("    {} {}: {}\n", tag, c.name, c.witness.clone().unwrap_or_default());
            }
        }
        if let Some(a) = &self.aborted {
            s += &format!("\naborted: {}\n", a);
        }
        s += &format!("\nstatus: {:?}\n", self.status);
        s
    }

    /// Write `<suite>.json` and `<suite>.txt` under the configured directory.
    pub fn write(&self) -> Result<()> {
        fs::create_dir_all(&self.config.out)?;
        fs::write(self.config.out.join(format!("{}.json", self.suite.name())), self.to_json()?)?;
        fs::write(self.config.out.join(format!("{}.txt", self.suite.name())), self.summary())?;
        Ok(())
    }
}
