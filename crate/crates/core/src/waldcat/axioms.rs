use std::collections::BTreeMap;

use super::instance::WaldhausenInstance;
use super::pushout::{is_pushout, mediate_all, search_pushout, PushoutData};
use crate::catkit::{check_equivalence_of_categories, FunctorData};
use crate::report::{Clause, Report};

/// A span `B <-f- A >-i-> C` with its chosen pushout, when there is one.
#[derive(Clone, Copy, Debug)]
pub struct Span {
    pub f: u32,
    pub i: u32,
    pub pushout: Option<PushoutData>,
}

/// All spans along cofibrations, in morphism order.
pub fn spans(w: &WaldhausenInstance) -> Vec<Span> {
    let c = w.cat();
    let mut out = Vec::new();
    for i in w.cofibrations() {
        for &f in c.outgoing(c.source(i)) {
            out.push(Span { f, i, pushout: w.pushout(f, i).expect("cofibration leg") });
        }
    }
    out
}

/// Maps of spans `(a, b, c)` from `s` to `t` whose components satisfy `keep`.
pub fn span_maps(w: &WaldhausenInstance, s: &Span, t: &Span, keep: impl Fn(u32) -> bool) -> Vec<(u32, u32, u32)> {
    let c = w.cat();
    let mut out = Vec::new();
    for &a in c.hom(c.source(s.f), c.source(t.f)) {
        if !keep(a) {
            continue;
        }
        let (fa, ia) = (c.compose(t.f, a), c.compose(t.i, a));
        for &b in c.hom(c.target(s.f), c.target(t.f)) {
            if !keep(b) || c.compose(b, s.f) != fa {
                continue;
            }
            for &cc in c.hom(c.target(s.i), c.target(t.i)) {
                if keep(cc) && c.compose(cc, s.i) == ia {
                    out.push((a, b, cc));
                }
            }
        }
    }
    out
}

/// Exhaustive check of the Waldhausen axioms. Spans whose pushout leaves the instance
/// bound are counted separately and excluded, after confirming that no pushout exists
/// inside the bound.
pub fn verify_axioms(w: &WaldhausenInstance) -> Report {
    let c = w.cat();
    let mut report = Report::new(format!("axioms of {}", w.name));
    let nm = |f: u32| c.morphism_name(f).to_string();

    let mut isos = Clause::new("isomorphisms_are_cofibrations_and_weqs");
    for f in 0..c.morphism_count() as u32 {
        if c.is_isomorphism(f) {
            isos.check(w.is_cofibration(f) && w.is_weq(f), || nm(f));
        }
    }
    report.push(isos);

    for (label, pred) in [("cofibrations_form_subcategory", 0), ("weqs_form_subcategory", 1)] {
        let has = |f: u32| if pred == 0 { w.is_cofibration(f) } else { w.is_weq(f) };
        let mut cl = Clause::new(label);
        for a in 0..c.object_count() as u32 {
            cl.check(has(c.identity(a)), || format!("identity of {}", c.object_name(a)));
        }
        for f in 0..c.morphism_count() as u32 {
            if !has(f) {
                continue;
            }
            for &g in c.outgoing(c.target(f)) {
                if has(g) {
                    cl.check(has(c.compose(g, f)), || format!("{} after {}", nm(g), nm(f)));
                }
            }
        }
        report.push(cl);
    }

    let mut init = Clause::new("maps_from_zero_are_cofibrations");
    for a in 0..c.object_count() as u32 {
        init.check(w.is_cofibration(w.from_zero(a)), || format!("* -> {}", c.object_name(a)));
    }
    report.push(init);

    let all = spans(w);
    let mut po = Clause::new("pushouts_exist_and_are_universal");
    let mut far = Clause::new("pushed_out_cofibrations_are_cofibrations");
    let mut outside = 0usize;
    for s in &all {
        match s.pushout {
            Some(p) => {
                po.check(is_pushout(c, s.f, s.i, p.from_b, p.from_c), || format!("chosen square for ({}, {})", nm(s.f), nm(s.i)));
                far.check(w.is_cofibration(p.from_b), || format!("{} pushed out along {}", nm(s.i), nm(s.f)));
            }
            None => {
                outside += 1;
                po.check(search_pushout(c, s.f, s.i).is_none(), || format!("chooser missed the pushout of ({}, {})", nm(s.f), nm(s.i)));
            }
        }
    }
    report.push(po);
    report.push(far);
    if outside > 0 {
        report.notes.push(format!("{} of {} spans have no pushout inside the instance bound", outside, all.len()));
    }

    let mut glue = Clause::new("gluing_lemma");
    let inside: Vec<&Span> = all.iter().filter(|s| s.pushout.is_some()).collect();
    for s in &inside {
        for t in &inside {
            for (_, b, cc) in span_maps(w, s, t, |f| w.is_weq(f)) {
                let (p, q) = (s.pushout.unwrap(), t.pushout.unwrap());
                let ok = w.induced_map(&p, &q, b, cc).is_some_and(|m| w.is_weq(m));
                glue.check(ok, || format!("span ({}, {}) to ({}, {})", nm(s.f), nm(s.i), nm(t.f), nm(t.i)));
            }
        }
    }
    report.push(glue);
    report
}

/// Functoriality of the chosen pushouts: asking twice gives the same square, every map of
/// spans induces exactly one map, and induced maps compose.
pub fn verify_pushout_functoriality(w: &WaldhausenInstance, budget: usize) -> Report {
    let c = w.cat();
    let mut report = Report::new(format!("pushout functoriality of {}", w.name));
    let nm = |f: u32| c.morphism_name(f).to_string();
    let all: Vec<Span> = spans(w).into_iter().filter(|s| s.pushout.is_some()).collect();

    let mut stable = Clause::new("choice_is_stable");
    for s in &all {
        let first = w.pushout(s.f, s.i).expect("cofibration leg");
        let again = w.pushout(s.f, s.i).expect("cofibration leg");
        let ok = first
            .zip(again)
            .and_then(|(p, q)| w.induced_map(&p, &q, c.identity(c.target(s.f)), c.identity(c.target(s.i))));
        stable.check(ok.is_some_and(|m| c.is_identity(m)), || format!("span ({}, {})", nm(s.f), nm(s.i)));
    }
    report.push(stable);

    let mut unique = Clause::new("unique_induced_maps");
    let mut induced: Vec<Vec<BTreeMap<(u32, u32, u32), u32>>> = vec![vec![BTreeMap::new(); all.len()]; all.len()];
    let mut total = 0usize;
    'outer: for (x, s) in all.iter().enumerate() {
        for (y, t) in all.iter().enumerate() {
            let (p, q) = (s.pushout.unwrap(), t.pushout.unwrap());
            for (a, b, cc) in span_maps(w, s, t, |_| true) {
                let legs = [(p.from_b, c.compose(q.from_b, b)), (p.from_c, c.compose(q.from_c, cc))];
                let m = mediate_all(c, p.object, q.object, &legs);
                if unique.check(m.len() == 1, || format!("({}, {}) to ({}, {})", nm(s.f), nm(s.i), nm(t.f), nm(t.i))) {
                    induced[x][y].insert((a, b, cc), m[0]);
                }
                total += 1;
                if total >= budget {
                    report.notes.push(format!("span-map enumeration stopped at budget {}", budget));
                    break 'outer;
                }
            }
        }
    }
    report.push(unique);

    let mut comp = Clause::new("induced_maps_compose");
    let mut pairs = 0usize;
    'comp: for x in 0..all.len() {
        for y in 0..all.len() {
            for z in 0..all.len() {
                for (&(a1, b1, c1), &m1) in &induced[x][y] {
                    for (&(a2, b2, c2), &m2) in &induced[y][z] {
                        let key = (c.compose(a2, a1), c.compose(b2, b1), c.compose(c2, c1));
                        let m = induced[x][z].get(&key).copied();
                        comp.check(m == Some(c.compose(m2, m1)), || format!("composite through span {}", y));
                        pairs += 1;
                        if pairs >= budget {
                            report.notes.push(format!("composition check stopped at budget {}", budget));
                            break 'comp;
                        }
                    }
                }
            }
        }
    }
    report.push(comp);
    report
}

/// `F` preserves the zero object, cofibrations, weak equivalences and chosen pushout
/// squares.
pub fn verify_exact_functor(f: &FunctorData, src: &WaldhausenInstance, tgt: &WaldhausenInstance) -> Report {
    let (c, d) = (src.cat(), tgt.cat());
    let mut report = Report::new(format!("exactness of a functor {} -> {}", src.name, tgt.name));
    let mut func = Clause::new("is_functor");
    if let Some(v) = f.first_violation() {
        func.fail(v);
    }
    let ok_functor = func.pass;
    report.push(func);
    if !ok_functor {
        return report;
    }
    let mut zero = Clause::new("preserves_zero");
    let z = f.object(src.zero);
    zero.check((0..d.object_count() as u32).all(|a| d.hom(z, a).len() == 1 && d.hom(a, z).len() == 1), || d.object_name(z).to_string());
    report.push(zero);
    let mut cof = Clause::new("preserves_cofibrations");
    let mut weq = Clause::new("preserves_weqs");
    for m in 0..c.morphism_count() as u32 {
        if src.is_cofibration(m) {
            cof.check(tgt.is_cofibration(f.morphism(m)), || c.morphism_name(m).to_string());
        }
        if src.is_weq(m) {
            weq.check(tgt.is_weq(f.morphism(m)), || c.morphism_name(m).to_string());
        }
    }
    report.push(cof);
    report.push(weq);
    let mut po = Clause::new("preserves_pushouts");
    for s in spans(src) {
        if let Some(p) = s.pushout {
            let ok = is_pushout(d, f.morphism(s.f), f.morphism(s.i), f.morphism(p.from_b), f.morphism(p.from_c));
            po.check(ok, || format!("image of the square on ({}, {})", c.morphism_name(s.f), c.morphism_name(s.i)));
        }
    }
    report.push(po);
    report
}

/// Exact, reflects weak equivalences and cofibrations, an equivalence of categories, and
/// the constructed inverse is exact.
pub fn check_waldhausen_equivalence(f: &FunctorData, src: &WaldhausenInstance, tgt: &WaldhausenInstance) -> Report {
    let c = src.cat();
    let mut report = Report::new(format!("Waldhausen equivalence {} -> {}", src.name, tgt.name));
    let exact = verify_exact_functor(f, src, tgt);
    let functor_ok = exact.clause("is_functor").is_some_and(|c| c.pass);
    report.merge("exact", exact);
    if !functor_ok {
        return report;
    }
    let mut rw = Clause::new("reflects_weqs");
    let mut rc = Clause::new("reflects_cofibrations");
    for m in 0..c.morphism_count() as u32 {
        if tgt.is_weq(f.morphism(m)) {
            rw.check(src.is_weq(m), || c.morphism_name(m).to_string());
        }
        if tgt.is_cofibration(f.morphism(m)) {
            rc.check(src.is_cofibration(m), || c.morphism_name(m).to_string());
        }
    }
    report.push(rw);
    report.push(rc);
    let eq = check_equivalence_of_categories(f);
    let mut ec = Clause::new("equivalence_of_categories");
    ec.check(eq.pass(), || eq.witness.clone().unwrap_or_else(|| "no inverse".into()));
    report.push(ec);
    if let Some(w) = eq.inverse_witness {
        report.merge("inverse_exact", verify_exact_functor(&w.inverse, tgt, src));
    }
    report
}
