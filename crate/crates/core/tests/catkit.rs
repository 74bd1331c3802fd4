use std::sync::Arc;

use proptest::prelude::*;
use waldkit::catkit::*;
use waldkit::simpset::*;

fn corpus() -> Vec<FiniteCategory> {
    vec![
        terminal_category(),
        ordinal(1),
        ordinal(2),
        ordinal(3),
        contractible_groupoid(1),
        contractible_groupoid(2),
        discrete_category(2),
        cyclic_group(2),
        cyclic_group(3),
        poset_category(vec!["a".into(), "b".into(), "c".into(), "d".into()], |i, j| i == j || (i == 0 && j > 0)),
    ]
}

#[test]
fn corpus_categories_are_valid_and_round_trip() {
    for c in corpus() {
        c.validate().unwrap();
        let back = FiniteCategory::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }
}

#[test]
fn nerve_examples() {
    let n = nerve(&terminal_category(), 4);
    assert_eq!(n.level_sizes(), vec![1; 5]);
    let n1 = nerve(&ordinal(1), 4);
    assert_eq!(n1.level_sizes(), standard(1, 4).level_sizes());
    let j = nerve(&contractible_groupoid(1), 4);
    assert_eq!(j.level_sizes(), interval_groupoid(1, 4).level_sizes());
    for c in corpus() {
        let x = nerve(&c, 4);
        assert!(validate_simplicial_identities(&x).pass);
        assert_eq!(eilenberg_zilber_defects(&x), 0);
        assert_eq!(x.coskeletal_bound(), Some(2));
    }
}

#[test]
fn nerve_of_ordinal_is_isomorphic_to_standard_simplex() {
    // match simplices through their vertex sequences
    for n in 0..4 {
        let nv = nerve_with_chains(&ordinal(n), 3);
        let d = standard(n, 3);
        for k in 0..=3 {
            let mut a: Vec<Vec<u32>> =
                (0..nv.set.count(k) as u32).map(|s| (0..=k).map(|i| nv.set.vertex(k, s, i)).collect()).collect();
            let mut b: Vec<Vec<u32>> = (0..d.count(k) as u32).map(|s| (0..=k).map(|i| d.vertex(k, s, i)).collect()).collect();
            a.sort();
            b.sort();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn tau1_of_nerve_recovers_the_category() {
    for c in corpus() {
        let c = Arc::new(c);
        let nv = nerve_with_chains(&c, 3);
        let t = tau1(&nv.set, DEFAULT_PATH_CAP).unwrap();
        let counit = tau1_counit(&c, &nv, &t).unwrap();
        assert!(counit.is_isomorphism(), "{:?}", c.object_names());
        t.category.validate().unwrap();
    }
}

#[test]
fn tau1_examples() {
    let t = tau1(&standard(1, 3), DEFAULT_PATH_CAP).unwrap();
    assert_eq!(t.category.object_count(), 2);
    assert_eq!(t.category.morphism_count(), 3);
    let j = tau1(&interval_groupoid(1, 3), DEFAULT_PATH_CAP).unwrap();
    assert_eq!(j.category.object_count(), 2);
    assert_eq!(j.category.morphism_count(), 4);
    for f in 0..4 {
        assert!(j.category.is_isomorphism(f));
    }
    for a in 0..2 {
        for b in 0..2 {
            assert_eq!(j.category.hom(a, b).len(), 1);
        }
    }
    // the boundary of Δ[2] has no 2-simplex relation: paths 0->1->2 and 0->2 differ
    let b = tau1(&basic_complex(BasicKind::Boundary, 2, None, 3).unwrap(), DEFAULT_PATH_CAP).unwrap();
    assert_eq!(b.category.hom(0, 2).len(), 2);
}

// Δ[1]/∂Δ[1]: constant maps collapse to the base point
fn simplicial_circle(d: usize) -> SimplicialSet {
    let norm = |phi: Monotone| if phi.is_surjective() { Some(phi) } else { None };
    let levels = (0..=d).map(|k| Monotone::all(k, 1).into_iter().map(norm).collect()).collect();
    SimplicialSet::from_keys(
        d,
        levels,
        |k, x: &Option<Monotone>, i| x.as_ref().and_then(|p| norm(p.compose(&Monotone::coface(k, i)))),
        |k, x: &Option<Monotone>, i| x.as_ref().map(|p| p.compose(&Monotone::codegeneracy(k, i))),
        |x| x.as_ref().map(|p| p.label()).unwrap_or_else(|| "*".into()),
        None,
    )
    .unwrap()
    .0
}

#[test]
fn tau1_of_a_free_loop_hits_the_bound() {
    let s1 = simplicial_circle(3);
    assert!(validate_simplicial_identities(&s1).pass);
    assert!(matches!(tau1(&s1, 6), Err(waldkit::Error::ExplorationBound(_))));
}

#[test]
fn maximal_groupoid_examples() {
    let g = contractible_groupoid(2);
    assert_eq!(g.maximal_groupoid().0, g);
    let (m, _) = ordinal(1).maximal_groupoid();
    assert_eq!(m.morphism_count(), 2);
    let z3 = cyclic_group(3);
    assert_eq!(z3.maximal_groupoid().0.morphism_count(), 3);
}

#[test]
fn equivalence_examples() {
    for c in corpus() {
        let c = Arc::new(c);
        assert!(check_equivalence_of_categories(&FunctorData::identity(c)).pass());
    }
    // skeleton inclusion: one object into the contractible groupoid on three
    let g = Arc::new(contractible_groupoid(2));
    let pt = Arc::new(terminal_category());
    let inc = FunctorData::new(pt.clone(), g.clone(), vec![1], vec![g.identity(1)]).unwrap();
    let r = check_equivalence_of_categories(&inc);
    assert!(r.pass());
    let w = r.inverse_witness.unwrap();
    assert!(w.unit.is_natural_isomorphism() && w.counit.is_natural_isomorphism());

    let disc = Arc::new(discrete_category(2));
    let k = FunctorData::constant(Arc::new(ordinal(1)), disc, 0);
    let r = check_equivalence_of_categories(&k);
    assert!(!r.essentially_surjective);
    assert!(!r.pass());
    // [1] -> J[1] is bijective on objects but not full
    let j = Arc::new(contractible_groupoid(1));
    let o = Arc::new(ordinal(1));
    let morph = (0..o.morphism_count() as u32)
        .map(|f| j.hom(o.source(f), o.target(f))[0])
        .collect();
    let inc = FunctorData::new(o, j, vec![0, 1], morph).unwrap();
    assert!(!check_equivalence_of_categories(&inc).fully_faithful);
}

#[test]
fn equivalences_compose() {
    let g = Arc::new(contractible_groupoid(2));
    let g1 = Arc::new(contractible_groupoid(1));
    let pt = Arc::new(terminal_category());
    let a = FunctorData::new(pt.clone(), g1.clone(), vec![0], vec![g1.identity(0)]).unwrap();
    let b = FunctorData::new(
        g1.clone(),
        g.clone(),
        vec![0, 2],
        (0..g1.morphism_count() as u32)
            .map(|f| {
                let s = [0u32, 2][g1.source(f) as usize];
                let t = [0u32, 2][g1.target(f) as usize];
                g.hom(s, t)[0]
            })
            .collect(),
    )
    .unwrap();
    assert!(check_equivalence_of_categories(&a).pass());
    assert!(check_equivalence_of_categories(&b).pass());
    assert!(check_equivalence_of_categories(&a.then(&b).unwrap()).pass());
}

#[test]
fn nerve_preserves_pullbacks() {
    // [1] -> [0] <- J[1]: the product [1] × J[1]
    let o = Arc::new(ordinal(1));
    let j = Arc::new(contractible_groupoid(1));
    let pt = Arc::new(terminal_category());
    let f = FunctorData::constant(o.clone(), pt.clone(), 0);
    let g = FunctorData::constant(j.clone(), pt.clone(), 0);
    let pb = category_pullback(&f, &g).unwrap();
    pb.category.validate().unwrap();
    let npb = nerve(&pb.category, 3);
    let prod = product(&nerve(&o, 3), &nerve(&j, 3)).unwrap();
    assert_eq!(npb.level_sizes(), prod.level_sizes());

    // a non-trivial cospan [1] -> [2] <- [1] hitting 0<=1 and 1<=2: pullback is the point 1
    let o2 = Arc::new(ordinal(2));
    let h = |lo: u32| {
        let objs = vec![lo, lo + 1];
        let mors = (0..o.morphism_count() as u32)
            .map(|m| o2.hom(objs[o.source(m) as usize], objs[o.target(m) as usize])[0])
            .collect();
        FunctorData::new(o.clone(), o2.clone(), objs, mors).unwrap()
    };
    let pb = category_pullback(&h(0), &h(1)).unwrap();
    assert_eq!(pb.category.object_count(), 1);
    let n_pb = nerve(&pb.category, 3);
    let s_pb = pullback(
        &nerve_map(&h(0), &nerve_with_chains(&o, 3), &nerve_with_chains(&o2, 3)).unwrap(),
        &nerve_map(&h(1), &nerve_with_chains(&o, 3), &nerve_with_chains(&o2, 3)).unwrap(),
    )
    .unwrap();
    assert_eq!(n_pb.level_sizes(), s_pb.set.level_sizes());
}

#[test]
fn natural_transformation_checks() {
    let o = Arc::new(ordinal(1));
    let j = Arc::new(contractible_groupoid(1));
    let f = FunctorData::constant(o.clone(), j.clone(), 0);
    let g = FunctorData::constant(o.clone(), j.clone(), 1);
    let iso = j.hom(0, 1)[0];
    let t = NaturalTransformationData::new(f.clone(), g.clone(), vec![iso, iso]).unwrap();
    assert!(t.is_natural_isomorphism());
    assert!(NaturalTransformationData::new(f, g, vec![iso, j.identity(0)]).is_err());
}

proptest! {
    #[test]
    fn random_posets_round_trip_through_tau1(bits in proptest::collection::vec(any::<bool>(), 6)) {
        // an order on 4 points generated by the selected pairs i<j, closed transitively
        let mut rel = [[false; 4]; 4];
        let mut k = 0;
        for i in 0..4 {
            rel[i][i] = true;
            for j in i + 1..4 {
                rel[i][j] = bits[k];
                k += 1;
            }
        }
        for m in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    if rel[i][m] && rel[m][j] {
                        rel[i][j] = true;
                    }
                }
            }
        }
        let c = Arc::new(poset_category((0..4).map(|i| i.to_string()).collect(), |i, j| rel[i][j]));
        let nv = nerve_with_chains(&c, 3);
        let t = tau1(&nv.set, DEFAULT_PATH_CAP).unwrap();
        prop_assert!(tau1_counit(&c, &nv, &t).unwrap().is_isomorphism());
    }
}
