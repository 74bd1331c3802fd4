use std::sync::Arc;

use waldkit::catkit::{FunctorData, NaturalTransformationData};
use waldkit::sdot::DEFAULT_GRID_BUDGET;
use waldkit::waldcat::*;
use waldkit::Error;

fn universal(k: usize) -> SplitExactSequenceData {
    let w = Arc::new(instance_pointed_sets(k));
    let whole = SubWaldhausen::whole(w.clone());
    build_universal_sequence(&whole, &w, &whole, DEFAULT_GRID_BUDGET).unwrap()
}

fn gate(r: Result<PhiComparison, Error>) -> String {
    match r {
        Err(Error::Hypothesis { gate, .. }) => gate,
        Err(e) => panic!("unexpected error {}", e),
        Ok(c) => panic!("comparison went through: {:?}", c.report.failures()),
    }
}

#[test]
fn universal_sequence_is_split_exact() {
    for k in [2, 3] {
        let s = universal(k);
        let r = verify_split_exact(&s);
        assert!(r.pass(), "k={}: {:?}", k, r.failures());
        // s ε and ε at i(A) are identities
        let ec = s.e.cat();
        for x in 0..ec.object_count() as u32 {
            assert!(s.a.cat().is_identity(s.j.morphism(s.counit_ij.component(x))));
        }
        for a in 0..s.a.cat().object_count() as u32 {
            assert!(ec.is_identity(s.counit_ij.component(s.i.object(a))));
        }
        // every object of E/A is isomorphic to some * >-> B ->> B
        for x in s.quotient_objects() {
            assert!((0..s.b.cat().object_count() as u32).any(|b| ec.find_isomorphism(s.g.object(b), x).is_some()));
        }
    }
}

#[test]
fn sequence_with_point_subcategory() {
    let w = Arc::new(instance_pointed_sets(3));
    let point = SubWaldhausen::full(&w, "point", |a| a == w.zero).unwrap();
    let whole = SubWaldhausen::whole(w.clone());
    let s = build_universal_sequence(&point, &w, &whole, DEFAULT_GRID_BUDGET).unwrap();
    // one object per certified cofiber of * >-> C, that is |Aut(C)| per C
    let c = w.cat();
    let autos: usize = (0..c.object_count() as u32).map(|x| c.hom(x, x).iter().filter(|&&m| c.is_isomorphism(m)).count()).sum();
    assert_eq!(s.e.cat().object_count(), autos);
    assert!(verify_split_exact(&s).pass());
}

#[test]
fn degenerate_split() {
    let w = Arc::new(instance_pointed_sets(3));
    let p = Arc::new(instance_point());
    let (wc, pc) = (w.category.clone(), p.category.clone());
    let id = FunctorData::identity(wc.clone());
    let f = FunctorData::constant(wc.clone(), pc.clone(), p.zero);
    let g = FunctorData::constant(pc.clone(), wc.clone(), w.zero);
    let s = SplitExactSequenceData {
        a: w.clone(),
        e: w.clone(),
        b: p.clone(),
        i: id.clone(),
        f: f.clone(),
        j: id.clone(),
        g: g.clone(),
        unit_ij: NaturalTransformationData::identity(&id),
        counit_ij: NaturalTransformationData::identity(&id),
        unit_fg: NaturalTransformationData::new(id.clone(), f.then(&g).unwrap(), (0..wc.object_count() as u32).map(|a| w.to_zero(a)).collect()).unwrap(),
        counit_fg: NaturalTransformationData::identity(&FunctorData::identity(pc.clone())),
    };
    let r = verify_split_exact(&s);
    assert!(r.pass(), "{:?}", r.failures());
}

#[test]
fn non_natural_counit_is_caught() {
    let mut s = universal(3);
    let bc = s.b.cat().clone();
    let p3 = bc.find_object("P3").unwrap();
    let swap = *bc.hom(p3, p3).iter().find(|&&m| bc.is_isomorphism(m) && !bc.is_identity(m)).unwrap();
    let mut comps = s.counit_fg.components.clone();
    comps[p3 as usize] = swap;
    s.counit_fg = NaturalTransformationData::new_unchecked(s.counit_fg.source.clone(), s.counit_fg.target.clone(), comps);
    let r = verify_split_exact(&s);
    assert_eq!(r.failures(), vec!["counit_fg_natural", "triangle_identities_fg"]);
}

#[test]
fn comparison_on_universal_sequence() {
    let s = universal(3);
    let cmp = phi_comparison(&s, DEFAULT_GRID_BUDGET).unwrap();
    assert!(cmp.report.pass(), "{:?}", cmp.report.failures());
    let phi = cmp.phi.unwrap();
    assert_eq!(phi.then(&cmp.target.middle).unwrap().objects, (0..s.e.cat().object_count() as u32).collect::<Vec<_>>());
    assert!(cmp.report.clause("waldhausen_equivalence.equivalence_of_categories").unwrap().pass);
}

#[test]
fn comparison_gate_mutants() {
    let base = universal(3);
    let ec = base.e.cat().clone();

    // a counit component that is not an isomorphism, dropped from the cofibrations
    let mut s = base.clone();
    let c = (0..ec.object_count() as u32).map(|x| s.counit_ij.component(x)).find(|&m| !ec.is_isomorphism(m)).unwrap();
    s.e = Arc::new(s.e.with_cofibrations("no-counit", |m| m != c && base.e.is_cofibration(m)));
    assert_eq!(gate(phi_comparison(&s, DEFAULT_GRID_BUDGET)), "counit_components_are_cofibrations");

    // an induced map other than a counit component or the cofibration inducing it; at
    // this size all of them are isomorphisms
    let counits: Vec<u32> = (0..ec.object_count() as u32).map(|x| base.counit_ij.component(x)).collect();
    let induced = base
        .e
        .cofibrations()
        .filter_map(|u| base.induced_counit_map(u).filter(|&m| m != u))
        .find(|&m| !ec.is_identity(m) && !counits.contains(&m))
        .unwrap();
    let mut s = base.clone();
    s.e = Arc::new(s.e.with_cofibrations("no-induced", |m| m != induced && base.e.is_cofibration(m)));
    assert_eq!(gate(phi_comparison(&s, DEFAULT_GRID_BUDGET)), "induced_maps_are_cofibrations");

    // P2 >-> * declared a cofibration of A
    let mut s = base.clone();
    let collapse = s.a.cat().find_morphism("P2>P1[0]").unwrap();
    s.a = Arc::new(s.a.with_cofibrations("collapse", |m| m == collapse || base.a.is_cofibration(m)));
    assert_eq!(gate(phi_comparison(&s, DEFAULT_GRID_BUDGET)), "cofibers_onto_zero_are_isomorphisms");
}
