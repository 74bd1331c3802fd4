use std::sync::Arc;

use waldkit::catkit::FunctorData;
use waldkit::waldcat::*;

fn mor(w: &WaldhausenInstance, name: &str) -> u32 {
    w.cat().find_morphism(name).unwrap_or_else(|| panic!("no morphism {}", name))
}

#[test]
fn pointed_set_counts() {
    // based maps {*,1..a} -> {*,1..b} number (b+1)^a
    let w = instance_pointed_sets(2);
    assert_eq!(w.cat().object_count(), 2);
    assert_eq!(w.cat().morphism_count(), 5);
    let w3 = instance_pointed_sets(3);
    assert_eq!(w3.cat().morphism_count(), 1 + 1 + 1 + 1 + 2 + 3 + 1 + 4 + 9);
    assert_eq!(w3.cofibrations().count(), 3 + 1 + 2 + 2);
    w3.cat().validate().unwrap();
}

#[test]
fn vect_counts() {
    let v1 = instance_vect_f2(1);
    assert_eq!(v1.cat().object_count(), 2);
    assert_eq!(v1.cat().hom(1, 1).len(), 2);
    let v2 = instance_vect_f2(2);
    assert_eq!(v2.cat().hom(2, 2).len(), 16);
    // GL2(F2) has order 6
    assert_eq!(v2.cat().hom(2, 2).iter().filter(|&&f| v2.is_weq(f)).count(), 6);
    v2.cat().validate().unwrap();
}

#[test]
fn pointed_set_pushouts() {
    let w = instance_pointed_sets(3);
    let c = w.cat();
    let inc = w.from_zero(1);
    let p = w.pushout(inc, inc).unwrap().unwrap();
    assert_eq!(c.object_name(p.object), "P3");
    assert_eq!(p.from_b, mor(&w, "P2>P3[1]"));
    assert_eq!(p.from_c, mor(&w, "P2>P3[2]"));
    // collapse along the identity cofibration: B itself
    let collapse = mor(&w, "P2>P2[0]");
    let id = c.identity(1);
    let p = w.pushout(collapse, id).unwrap().unwrap();
    assert_eq!((p.object, p.from_b, p.from_c), (1, id, collapse));
    // P3 ⊔ P3 does not fit
    let z3 = w.from_zero(2);
    assert!(w.pushout(z3, z3).unwrap().is_none());
    assert!(w.pushout(inc, collapse).is_err());
}

#[test]
fn vect_pushouts_are_direct_sums_over_zero() {
    let v = instance_vect_f2(2);
    let z = v.from_zero(1);
    let p = v.pushout(z, z).unwrap().unwrap();
    assert_eq!(p.object, 2);
    assert!(is_pushout(v.cat(), z, z, p.from_b, p.from_c));
    // every chosen square certifies
    for s in spans(&v) {
        if let Some(p) = s.pushout {
            assert!(is_pushout(v.cat(), s.f, s.i, p.from_b, p.from_c));
        }
    }
}

#[test]
fn axioms_hold_on_instances() {
    for w in [instance_pointed_sets(2), instance_pointed_sets(3), instance_vect_f2(1), instance_vect_f2(2)] {
        let r = verify_axioms(&w);
        assert!(r.pass(), "{}: {:?}", w.name, r.failures());
        assert!(verify_pushout_functoriality(&w, 1 << 20).pass());
    }
}

#[test]
fn axiom_mutants() {
    let w = instance_pointed_sets(3);
    let removed = mor(&w, "P2>P3[1]");
    let m = w.with_cofibrations("drop one injection", |f| w.is_cofibration(f) && f != removed);
    let r = verify_axioms(&m);
    assert!(!r.pass());
    assert!(r.failures().contains(&"pushed_out_cofibrations_are_cofibrations"));

    // every map a weak equivalence: all axioms still hold
    let all = w.with_weqs("all maps", |_| true);
    assert!(verify_axioms(&all).pass());
}

#[test]
fn alternating_chooser_is_not_functorial() {
    let w = instance_pointed_sets(3);
    let alt = w.with_chooser("alternating", Arc::new(AlternatingChooser::new(w.chooser().clone())));
    let r = verify_pushout_functoriality(&alt, 1 << 16);
    assert!(!r.clause("choice_is_stable").unwrap().pass);
}

#[test]
fn k0_examples() {
    let g = |w: &WaldhausenInstance| k0(w).unwrap().group.to_string();
    assert_eq!(g(&instance_pointed_sets(3)), "Z");
    assert_eq!(g(&instance_pointed_sets(4)), "Z");
    assert_eq!(g(&instance_vect_f2(2)), "Z");
    assert_eq!(g(&instance_point()), "0");
    // weak equivalences = all maps kill everything
    let w = instance_pointed_sets(3);
    assert_eq!(g(&w.with_weqs("all", |_| true)), "0");
}

#[test]
fn exact_functors() {
    let w = instance_pointed_sets(2);
    let id = FunctorData::identity(w.category.clone());
    assert!(verify_exact_functor(&id, &w, &w).pass());
    assert!(check_waldhausen_equivalence(&id, &w, &w).pass());
    // collapse to * on pointed sets ≤ 2: no non-iso weak equivalences, exact
    let pt = instance_point();
    let k = FunctorData::constant(w.category.clone(), pt.category.clone(), 0);
    assert!(verify_exact_functor(&k, &w, &pt).pass());
}

#[test]
fn skeleton_inclusion_is_a_waldhausen_equivalence() {
    let w = instance_pointed_sets(3);
    let (big, inc) = inflate(&w, 1, 3);
    assert_eq!(big.cat().object_count(), 5);
    assert!(verify_axioms(&big).pass());
    let r = check_waldhausen_equivalence(&inc, &w, &big);
    assert!(r.pass(), "{:?}", r.failures());
    assert_eq!(k0(&w).unwrap().invariant_factors, k0(&big).unwrap().invariant_factors);

    let extra = w.with_cofibrations("more cofibrations", |f| w.is_cofibration(f) || w.is_zero_map(f));
    let id = FunctorData::identity(w.category.clone());
    let r = check_waldhausen_equivalence(&id, &w, &extra);
    assert!(!r.clause("reflects_cofibrations").unwrap().pass);
}
