//! One line per acceptance criterion. Every tolerance is exact equality except the
//! runtime bound on criterion 1.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use waldkit::additivity::*;
use waldkit::catkit::{nerve_with_chains, small_corpus, tau1, tau1_counit, FiniteCategory, DEFAULT_PATH_CAP};
use waldkit::qcat::*;
use waldkit::sdot::{e_category, DEFAULT_GRID_BUDGET};
use waldkit::simpset::{basic_complex, product, standard, validate_simplicial_identities, BasicKind};
use waldkit::waldcat::*;
use waldkit::{Error, Result};

const BUDGET: usize = DEFAULT_GRID_BUDGET;
const CRITERION_1_LIMIT: Duration = Duration::from_secs(300);

type Outcome = Result<(bool, String)>;

fn corpus() -> Vec<(String, FiniteCategory)> {
    let mut v: Vec<(String, FiniteCategory)> = small_corpus().into_iter().map(|(n, c)| (n.to_string(), c)).collect();
    for w in [instance_pointed_sets(3), instance_vect_f2(2)] {
        v.push((w.name.clone(), w.cat().clone()));
    }
    v
}

fn pointed_two_suite() -> Result<(AdditivityReport, Duration)> {
    let t = Instant::now();
    let (c, small) = extension_closed("pointed_sets", 2)?;
    let bounds = AdditivityBounds { n_max: 2, m_max: 1, formulations: vec![Formulation::Modern, Formulation::Classical], budget: BUDGET };
    let r = additivity_suite(&small, &c, &small, &bounds)?;
    Ok((r, t.elapsed()))
}

fn criterion_1(r: &AdditivityReport, took: Duration) -> Outcome {
    let certs: Vec<&HomotopyCertificate> = r.fibers.iter().flat_map(|f| &f.identities).collect();
    let checked: usize = certs.iter().map(|c| c.checked).sum();
    let failed: usize = certs.iter().map(|c| c.failed).sum();
    let both = [Formulation::Modern, Formulation::Classical].iter().all(|f| certs.iter().any(|c| c.formulation == *f && c.checked > 0));
    Ok((failed == 0 && checked > 0 && both && took < CRITERION_1_LIMIT, format!("{} fibers, {} identities, {} failed, {:.1}s", r.fibers.len(), checked, failed, took.as_secs_f64())))
}

fn criterion_2(r: &AdditivityReport) -> Outcome {
    let retract = r.fibers.iter().all(|f| f.retraction_ok);
    let mut ends = 0;
    let mut ok = retract;
    for cert in r.fibers.iter().flat_map(|f| &f.identities).filter(|c| c.formulation == Formulation::Modern) {
        for name in ["h0_is_iota_r", "top_is_identity"] {
            let cl = cert.clauses.iter().find(|c| c.name == name);
            ok &= cl.is_some_and(|c| c.pass && c.checked > 0);
            ends += cl.map_or(0, |c| c.checked);
        }
    }
    Ok((ok, format!("r ι = Id on {} fibers, {} boundary checks", r.fibers.len(), ends)))
}

fn criterion_3() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for w in [instance_pointed_sets(3), instance_vect_f2(2)] {
        let w = Arc::new(w);
        let whole = SubWaldhausen::whole(w.clone());
        let point = SubWaldhausen::full(&w, "point", |x| x == w.zero)?;
        for (label, a) in [("C,C,C", &whole), ("*,C,C", &point)] {
            let e = e_category(a, &w, &whole, BUDGET)?;
            let k = K0Check::new(&a.instance, &whole.instance, &e.instance)?;
            ok &= k.pass;
            // the sum, for pointed sets ℤ ⊕ ℤ and ℤ ⊕ 0 with A = *
            if w.name.starts_with("pointed") && label == "C,C,C" {
                ok &= k.e == [0, 0];
            }
            detail.push(format!("{} ({}): {:?}", w.name, label, k.e));
        }
    }
    Ok((ok, detail.join("; ")))
}

fn criterion_4() -> Outcome {
    let mut bad = Vec::new();
    let all = corpus();
    for (name, c) in &all {
        let c = Arc::new(c.clone());
        let n = nerve_with_chains(&c, 3);
        let t = tau1(&n.set, DEFAULT_PATH_CAP)?;
        if !tau1_counit(&c, &n, &t)?.is_isomorphism() {
            bad.push(name.clone());
        }
    }
    Ok((bad.is_empty(), format!("{} categories, failing {:?}", all.len(), bad)))
}

fn criterion_5() -> Outcome {
    let mut bad = Vec::new();
    let all = corpus();
    for (name, c) in &all {
        let r = check_equiv_is_nerve_of_isos(c, 3, BUDGET)?;
        if !r.pass() {
            bad.push(format!("{}: {:?}", name, r.failures()));
        }
    }
    Ok((bad.is_empty(), format!("{} categories through D = 3, failing {:?}", all.len(), bad)))
}

fn criterion_6() -> Outcome {
    let w = Arc::new(instance_pointed_sets(2));
    let mut ok = true;
    let mut detail = Vec::new();
    for n in 0..=2 {
        let cmp = compare_equiv_constructions(&w, n, 2, 2, BUDGET)?;
        ok &= cmp.report.pass() && (0..=2).all(|m| cmp.report.clause(&format!("j{}_cotensor_identity", m)).is_some_and(|c| c.pass));
        detail.push(format!("n={}: levels {:?}, equiv {:?}, J maps {:?}", n, cmp.gap_sizes, cmp.equiv_sizes, cmp.j_maps));
    }
    Ok((ok, detail.join("; ")))
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut spans_checked = 0;
    for k in [2, 3] {
        let w = instance_pointed_sets(k);
        let c = w.cat();
        let spans: Vec<(u32, u32)> = (0..c.morphism_count() as u32)
            .filter(|&i| w.is_cofibration(i))
            .flat_map(|i| c.outgoing(c.source(i)).iter().map(move |&f| (f, i)))
            .collect();
        spans_checked += spans.len();
        ok &= check_nerve_pushouts(c, &spans, BUDGET)?.pass();
    }
    let w = instance_pointed_sets(3);
    let n = nerve_with_chains(w.cat(), 2);
    let probe = QuasicategoryProbe::new(n.set.clone())?;
    let eq: Vec<(u32, u32)> = equivalence_spans(w.cat()).into_iter().map(|(f, i)| (n.edge(f), n.edge(i))).collect();
    let r = check_pushout_of_equivalence(&probe, &eq, BUDGET)?;
    ok &= r.pass() && eq.len() >= 10;
    Ok((ok, format!("{} spans against categorical pushouts, {} equivalence spans", spans_checked, eq.len())))
}

fn gate(r: Result<PhiComparison>) -> String {
    match r {
        Err(Error::Hypothesis { gate, .. }) => gate,
        Err(e) => format!("error: {}", e),
        Ok(_) => "none".into(),
    }
}

fn criterion_8() -> Outcome {
    let w = Arc::new(instance_pointed_sets(3));
    let whole = SubWaldhausen::whole(w.clone());
    let base = build_universal_sequence(&whole, &w, &whole, BUDGET)?;
    let cmp = phi_comparison(&base, BUDGET)?;
    let mut ok = cmp.report.pass() && cmp.report.clause("waldhausen_equivalence.equivalence_of_categories").is_some_and(|c| c.pass);
    let ec = base.e.cat().clone();

    let mut gates = Vec::new();
    let c = (0..ec.object_count() as u32).map(|x| base.counit_ij.component(x)).find(|&m| !ec.is_isomorphism(m)).unwrap();
    let mut s = base.clone();
    s.e = Arc::new(s.e.with_cofibrations("no-counit", |m| m != c && base.e.is_cofibration(m)));
    gates.push(("counit_components_are_cofibrations", gate(phi_comparison(&s, BUDGET))));

    let counits: Vec<u32> = (0..ec.object_count() as u32).map(|x| base.counit_ij.component(x)).collect();
    let induced = base.e.cofibrations().filter_map(|u| base.induced_counit_map(u).filter(|&m| m != u)).find(|&m| !ec.is_identity(m) && !counits.contains(&m)).unwrap();
    let mut s = base.clone();
    s.e = Arc::new(s.e.with_cofibrations("no-induced", |m| m != induced && base.e.is_cofibration(m)));
    gates.push(("induced_maps_are_cofibrations", gate(phi_comparison(&s, BUDGET))));

    let mut s = base.clone();
    let collapse = s.a.cat().find_morphism("P2>P1[0]").unwrap();
    s.a = Arc::new(s.a.with_cofibrations("collapse", |m| m == collapse || base.a.is_cofibration(m)));
    gates.push(("cofibers_onto_zero_are_isomorphisms", gate(phi_comparison(&s, BUDGET))));

    ok &= gates.iter().all(|(want, got)| want == got);
    Ok((ok, format!("unmutated passes; mutants stop at {:?}", gates.iter().map(|g| g.1.as_str()).collect::<Vec<_>>())))
}

fn criterion_9() -> Outcome {
    let boundary = basic_complex(BasicKind::Boundary, 2, None, 2)?;
    let horn = !is_quasicategory(&boundary, 2)?.pass;
    let x = product(&standard(1, 3), &standard(1, 3))?;
    let corrupt = !validate_simplicial_identities(&x.with_face_override(2, 0, 1, 3)).pass && !validate_simplicial_identities(&x.with_degeneracy_override(0, 0, 0, 5)).pass;
    let c = Arc::new(instance_pointed_sets(3));
    let small = SubWaldhausen::full(&c, "small", |x| object_size(&c, x) <= 2)?;
    let ctx = Arc::new(AdditivityContext::new(&small, &c, &small, 4, BUDGET)?);
    let alt = Arc::new(c.with_chooser("alternating", Arc::new(AlternatingChooser::new(c.chooser().clone()))));
    let mut broken = 0;
    for y in 0..ctx.sa.set.count(1) as u32 {
        let fib = AdditivityFiber::with_pushouts(&ctx, 1, y, alt.clone())?;
        broken += verify_homotopy_identities(&fib, Formulation::Modern, 2).failed;
    }
    Ok((horn && corrupt && broken > 0, format!("∂Δ[2] rejected: {}, corrupted sets rejected: {}, identities broken by the alternating chooser: {}", horn, corrupt, broken)))
}

fn criterion_10() -> Outcome {
    let dir = std::env::temp_dir().join(format!("waldkit-acceptance-{}", std::process::id()));
    let run = || -> Result<(Option<i32>, Vec<u8>)> {
        let o = Command::new(env!("CARGO_BIN_EXE_waldkit")).args(["run", "all", "--out"]).arg(&dir).output()?;
        Ok((o.status.code(), std::fs::read(dir.join("all.json"))?))
    };
    let (c1, a) = run()?;
    let (c2, b) = run()?;
    let _ = std::fs::remove_dir_all(&dir);
    Ok((a == b && c1 == Some(0) && c2 == Some(0), format!("exit {:?}/{:?}, {} bytes, identical: {}", c1, c2, a.len(), a == b)))
}

fn main() -> ExitCode {
    let suite = pointed_two_suite();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("homotopy identities, pointed sets <= 2, both lists", Box::new(|| suite.as_ref().map_err(|e| Error::Certification(e.to_string())).and_then(|(r, t)| criterion_1(r, *t)))),
        ("retraction and boundary homotopies are strict", Box::new(|| suite.as_ref().map_err(|e| Error::Certification(e.to_string())).and_then(|(r, _)| criterion_2(r)))),
        ("K0 of E is K0(A) + K0(B)", Box::new(criterion_3)),
        ("tau1 of the nerve is the identity", Box::new(criterion_4)),
        ("(NC)_equiv = N(C_iso)", Box::new(criterion_5)),
        ("gap construction against S_n and wS_n, J[m] cotensor", Box::new(criterion_6)),
        ("pushouts in nerves, pushout of an equivalence", Box::new(criterion_7)),
        ("comparison functor on the universal sequence and its mutants", Box::new(criterion_8)),
        ("negative controls", Box::new(criterion_9)),
        ("run all is byte-identical across runs", Box::new(criterion_10)),
    ];
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let (pass, detail) = match f() {
            Ok(x) => x,
            Err(e) => (false, format!("error: {}", e)),
        };
        failed += usize::from(!pass);
        println!("criterion {:>2} {} {}: {}", k + 1, if pass { "PASS" } else { "FAIL" }, name, detail);
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
