use std::sync::Arc;

use waldkit::catkit::{contractible_groupoid, nerve_with_chains, ordinal, FunctorData, NaturalTransformationData};
use waldkit::qcat::*;
use waldkit::sdot::DEFAULT_GRID_BUDGET;
use waldkit::simpset::{basic_complex, interval_groupoid, BasicKind};
use waldkit::waldcat::{instance_pointed_sets, instance_vect_f2};
use waldkit::Error;

const BUDGET: usize = 200_000;

#[test]
fn nerves_are_quasicategories_with_unique_fillers() {
    let cats = [instance_pointed_sets(3).category.as_ref().clone(), instance_vect_f2(1).category.as_ref().clone(), ordinal(3), contractible_groupoid(2)];
    for c in &cats {
        let n = nerve_with_chains(c, 3);
        let r = is_quasicategory(&n.set, 3).unwrap();
        assert!(r.pass && r.unique_fillers, "{:?}", r.first_unfillable);
        assert!(r.horns > 0);
    }
}

#[test]
fn boundary_of_a_triangle_is_not_a_quasicategory() {
    let b = basic_complex(BasicKind::Boundary, 2, None, 2).unwrap();
    let r = is_quasicategory(&b, 2).unwrap();
    assert!(!r.pass);
    assert!(r.first_unfillable.unwrap().starts_with("Λ^1[2]"));
}

#[test]
fn interval_groupoid_is_a_quasicategory() {
    let j = interval_groupoid(1, 3);
    let r = is_quasicategory(&j, 3).unwrap();
    assert!(r.pass && r.unique_fillers);
    let p = QuasicategoryProbe::new(Arc::new(j)).unwrap();
    assert!(p.equivalence_edges().iter().all(|&e| e));
}

#[test]
fn equivalences_of_a_nerve_are_the_nerve_of_isomorphisms() {
    let cats = [instance_pointed_sets(3).category.as_ref().clone(), instance_vect_f2(2).category.as_ref().clone(), ordinal(2), contractible_groupoid(1)];
    for c in &cats {
        let r = check_equiv_is_nerve_of_isos(c, 3, BUDGET).unwrap();
        assert!(r.pass(), "{:?}", r.failures());
    }
}

#[test]
fn natural_equivalences() {
    // identity on pointed sets
    let c = instance_pointed_sets(3).category.clone();
    let id = FunctorData::identity(c.clone());
    let n = nerve_with_chains(&c, 2);
    let alpha = nerve_transformation(&NaturalTransformationData::identity(&id), &n, &n).unwrap();
    assert!(alpha.first_violation().is_none());
    let probe = QuasicategoryProbe::new(n.set.clone()).unwrap();
    let r = natural_equivalence_check(&alpha, &n.set, &probe).unwrap();
    assert!(r.pass(), "{:?}", r.failures());

    // the two constant functors on a groupoid with two objects, and on [1]
    for (g, expect) in [(Arc::new(contractible_groupoid(1)), true), (Arc::new(ordinal(1)), false)] {
        let f0 = FunctorData::constant(g.clone(), g.clone(), 0);
        let f1 = FunctorData::constant(g.clone(), g.clone(), 1);
        let e = g.hom(0, 1)[0];
        let eta = NaturalTransformationData::new(f0, f1, vec![e, e]).unwrap();
        let n = nerve_with_chains(&g, 2);
        let alpha = nerve_transformation(&eta, &n, &n).unwrap();
        assert!(alpha.first_violation().is_none());
        let probe = QuasicategoryProbe::new(n.set.clone()).unwrap();
        let r = natural_equivalence_check(&alpha, &n.set, &probe).unwrap();
        assert_eq!(r.clause("components_are_equivalences").unwrap().pass, expect);
        assert!(r.clause("extension_to_j1_iff_components_invertible").unwrap().pass);
    }
}

#[test]
fn nerve_pushouts_are_categorical_pushouts() {
    for k in [2, 3] {
        let w = instance_pointed_sets(k);
        let c = w.cat();
        let spans: Vec<(u32, u32)> = (0..c.morphism_count() as u32)
            .filter(|&i| w.is_cofibration(i))
            .flat_map(|i| c.outgoing(c.source(i)).iter().map(move |&f| (f, i)))
            .collect();
        let r = check_nerve_pushouts(c, &spans, BUDGET).unwrap();
        assert!(r.pass(), "k={}: {:?}", k, r.failures());
    }
}

#[test]
fn pushout_of_an_equivalence_is_an_equivalence() {
    let w = instance_pointed_sets(3);
    let spans = equivalence_spans(w.cat());
    assert!(spans.len() >= 10);
    let n = nerve_with_chains(w.cat(), 2);
    let probe = QuasicategoryProbe::new(n.set.clone()).unwrap();
    let edges: Vec<(u32, u32)> = spans.iter().take(12).map(|&(f, i)| (n.edge(f), n.edge(i))).collect();
    let r = check_pushout_of_equivalence(&probe, &edges, BUDGET).unwrap();
    assert!(r.pass(), "{:?}", r.failures());
    assert!(r.clause("far_leg_is_an_equivalence").unwrap().checked >= 12);
}

#[test]
fn wedge_outside_the_bound_has_no_pushout() {
    let w = instance_pointed_sets(2);
    let c = w.cat();
    let p2 = c.find_object("P2").unwrap();
    let n = nerve_with_chains(c, 2);
    let e = n.edge(w.from_zero(p2));
    assert!(matches!(quasicat_pushout(&n.set, e, e, BUDGET), Err(Error::Certification(_))));
    // one object bigger, the wedge P3 is the pushout, up to its swap
    let w3 = instance_pointed_sets(3);
    let n3 = nerve_with_chains(w3.cat(), 2);
    let e3 = n3.edge(w3.from_zero(w3.cat().find_object("P2").unwrap()));
    let q = quasicat_pushout(&n3.set, e3, e3, BUDGET).unwrap();
    assert_eq!(q.initial.len(), 2);
    assert!(q.initial.iter().all(|k| w3.cat().object_name(n3.object_of_vertex(k.apex)) == "P3"));
}

#[test]
fn gap_construction_matches_sn_on_small_pointed_sets() {
    let w = Arc::new(instance_pointed_sets(2));
    for n in 0..=2 {
        let cmp = compare_equiv_constructions(&w, n, 2, 2, DEFAULT_GRID_BUDGET).unwrap();
        assert!(cmp.report.pass(), "n={}: {:?}", n, cmp.report.failures());
        assert_eq!(cmp.equiv_sizes, cmp.weq_nerve_sizes);
        assert_eq!(cmp.j_maps.len(), 3);
    }
}

#[test]
fn gap_vertices_are_exactly_the_grids() {
    // every functor Ar[2] -> pointed(3) is past the budget, so n = 2 only at size 2
    for (k, n) in [(2, 1), (2, 2), (3, 1)] {
        let w = instance_pointed_sets(k);
        let g = gap_sn_nerve(&w, n, 2, BUDGET).unwrap();
        let mut grids = waldkit::sdot::enumerate_grids(&w, n, BUDGET).unwrap();
        grids.sort();
        let mut found = g.grids.clone();
        found.sort();
        assert_eq!(found, grids);
    }
}

#[test]
fn dropping_a_weak_equivalence_breaks_the_comparison_at_level_one() {
    let base = instance_pointed_sets(3);
    let c = base.cat();
    let p3 = c.find_object("P3").unwrap();
    let swap = *c.hom(p3, p3).iter().find(|&&m| c.is_isomorphism(m) && !c.is_identity(m)).unwrap();
    let w = Arc::new(base.with_weqs("no-swap", |m| m != swap && base.is_weq(m)));
    let cmp = compare_equiv_constructions(&w, 1, 2, 0, DEFAULT_GRID_BUDGET).unwrap();
    assert_eq!(cmp.report.failures(), vec!["equiv_is_nerve_of_weqs"]);
    let cl = cmp.report.clause("equiv_is_nerve_of_weqs").unwrap();
    assert!(cl.witness.as_deref().unwrap().starts_with("level 1"));
}

#[test]
fn weak_equivalences_beyond_isomorphisms_are_refused() {
    let base = instance_pointed_sets(2);
    let w = Arc::new(base.with_weqs("all", |_| true));
    assert!(matches!(compare_equiv_constructions(&w, 1, 2, 0, BUDGET), Err(Error::Precondition(_))));
}

#[test]
fn pointed_sets_are_a_waldhausen_quasicategory() {
    for k in [2, 3] {
        let r = waldhausen_qcat_probe(&instance_pointed_sets(k), 2, BUDGET).unwrap();
        assert!(r.pass(), "k={}: {:?}", k, r.failures());
    }
}
