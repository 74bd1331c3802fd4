use std::sync::Arc;

use waldkit::sdot::*;
use waldkit::simpset::{homology, validate_simplicial_identities, AbelianGroup};
use waldkit::waldcat::*;

const BUDGET: usize = DEFAULT_GRID_BUDGET;

fn pointed(k: usize) -> Arc<WaldhausenInstance> {
    Arc::new(instance_pointed_sets(k))
}

/// Number of (cofibration A >-> B, certified cofiber) pairs: each cofibration contributes
/// |Aut(B/A)|, counted here by brute force over isomorphisms.
fn cofiber_sequence_count(w: &WaldhausenInstance) -> usize {
    let c = w.cat();
    w.cofibrations()
        .map(|m| {
            let (q, _) = w.cofiber(m).expect("cofiber inside the bound");
            c.hom(q, q).iter().filter(|&&a| c.is_isomorphism(a)).count()
        })
        .sum()
}

#[test]
fn arrow_category_sizes() {
    assert_eq!(arrow_category(0).object_count(), 1);
    assert_eq!(arrow_category(2).object_count(), 6);
    assert_eq!(arrow_category(3).object_count(), 10);
    assert_eq!(arrows(3).generators.len(), 12);
}

#[test]
fn grid_counts() {
    let w = pointed(2);
    assert_eq!(enumerate_grids(&w, 0, BUDGET).unwrap().len(), 1);
    assert_eq!(enumerate_grids(&w, 1, BUDGET).unwrap().len(), w.cat().object_count());
    assert_eq!(enumerate_grids(&w, 2, BUDGET).unwrap().len(), 3);
    let w3 = pointed(3);
    assert_eq!(enumerate_grids(&w3, 2, BUDGET).unwrap().len(), cofiber_sequence_count(&w3));
    assert_eq!(cofiber_sequence_count(&w3), 9);
    let v = Arc::new(instance_vect_f2(2));
    assert_eq!(enumerate_grids(&v, 2, BUDGET).unwrap().len(), 18);
    for g in enumerate_grids(&w3, 3, BUDGET).unwrap() {
        g.certify(&w3).unwrap();
    }
}

#[test]
fn grid_faces() {
    let w = pointed(3);
    for g in enumerate_grids(&w, 2, BUDGET).unwrap() {
        // d0: the cofiber; d2: the first object; d1: the composite
        let d0 = simplicial_operator(Operator::Face(0), &g, &w).unwrap();
        assert_eq!(d0.object(0, 1), g.object(1, 2));
        let d2 = simplicial_operator(Operator::Face(2), &g, &w).unwrap();
        assert_eq!(d2.object(0, 1), g.object(0, 1));
        let d1 = simplicial_operator(Operator::Face(1), &g, &w).unwrap();
        assert_eq!(d1.object(0, 1), g.object(0, 2));
        let s0 = simplicial_operator(Operator::Degeneracy(0), &g, &w).unwrap();
        assert_eq!(s0.face(0), g);
        assert_eq!(s0.object(0, 1), w.zero);
    }
}

#[test]
fn object_simplicial_sets_satisfy_identities() {
    for w in [pointed(2), pointed(3), Arc::new(instance_vect_f2(1))] {
        let s = object_simplicial_set(&w, 3, BUDGET).unwrap();
        assert_eq!(s.set.count(0), 1);
        assert_eq!(s.set.count(1), w.cat().object_count());
        assert!(validate_simplicial_identities(&s.set).pass);
    }
}

#[test]
fn s_n_categories_are_waldhausen() {
    for w in [pointed(2), pointed(3), Arc::new(instance_vect_f2(1))] {
        for n in 0..=2 {
            let s = s_n_category(&w, n, BUDGET).unwrap();
            let r = verify_axioms(&s.instance);
            assert!(r.pass(), "{} n={}: {:?}", w.name, n, r.failures());
        }
    }
    let s0 = s_n_category(&pointed(3), 0, BUDGET).unwrap();
    assert_eq!(s0.instance.cat().object_count(), 1);
}

#[test]
fn s_n_weqs_and_cofibrations_componentwise() {
    let w = pointed(3);
    for n in 1..=2 {
        let s = s_n_category(&w, n, BUDGET).unwrap();
        for f in 0..s.instance.cat().morphism_count() as u32 {
            let comps = &s.data.components[f as usize];
            assert_eq!(s.instance.is_weq(f), comps.iter().all(|&m| w.is_weq(m)));
            if s.instance.is_cofibration(f) {
                assert!(comps.iter().all(|&m| w.is_cofibration(m)));
            }
        }
    }
    // for pointed sets the converse also holds: injective on every quotient means
    // X_{0,2} ∩ Y_{0,1} = X_{0,1}
    let s = s_n_category(&w, 2, BUDGET).unwrap();
    let strict = (0..s.instance.cat().morphism_count() as u32)
        .filter(|&f| !s.instance.is_cofibration(f) && s.data.components[f as usize].iter().all(|&m| w.is_cofibration(m)))
        .count();
    assert_eq!(strict, 0);
}

#[test]
fn cofiber_sequence_categories() {
    let w = pointed(3);
    let whole = SubWaldhausen::whole(w.clone());
    let e = e_category(&whole, &w, &whole, BUDGET).unwrap();
    assert_eq!(e.data.objects.len(), enumerate_grids(&w, 2, BUDGET).unwrap().len());
    let r = verify_axioms(&e.instance);
    assert!(r.pass(), "{:?}", r.failures());
    for (proj, tgt) in [(&e.s, &w), (&e.middle, &w), (&e.q, &w)] {
        assert!(verify_exact_functor(proj, &e.instance, tgt).pass());
    }

    let point = SubWaldhausen::full(&w, "point", |a| a == w.zero).unwrap();
    let e0 = e_category(&point, &w, &whole, BUDGET).unwrap();
    assert!(e0.data.objects.iter().all(|o| point.include_object(o.a) == w.zero));
    assert!(verify_axioms(&e0.instance).pass());
}

#[test]
fn transpose_identity() {
    let w = pointed(2);
    for n in 0..=2 {
        let r = check_transpose(&w, n, BUDGET).unwrap();
        assert!(r.identical, "{:?}", r);
        assert_eq!(r.n_of_s2, r.two_of_sn);
    }
}

#[test]
fn weq_nerve_diagonal() {
    let w = pointed(2);
    let (b, diag) = diagonal_nerve_w(&w, 2, BUDGET).unwrap();
    assert!(b.validate().pass);
    for k in 0..=2 {
        assert_eq!(b.count(0, k), 1);
        // only identities are bijections in the skeleton
        assert_eq!(b.count(1, k), 2);
    }
    let h = homology(&diag, 1).unwrap();
    assert_eq!(h.degree(0), Some(&AbelianGroup::free(1)));
}

#[test]
fn waldhausen_equivalences_induce_equivalences_on_weq_grids() {
    let w = pointed(3);
    let (big, inc) = inflate(&w, 1, 2);
    let big = Arc::new(big);
    for n in 0..=2 {
        let (s, t) = (s_n_category(&w, n, BUDGET).unwrap(), s_n_category(&big, n, BUDGET).unwrap());
        let f = s.functor(&inc, &t).unwrap();
        let wf = weq_functor(&f, &s.instance, &t.instance).unwrap();
        assert!(waldkit::catkit::check_equivalence_of_categories(&wf).pass(), "n={}", n);
    }
}
