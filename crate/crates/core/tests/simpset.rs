use std::sync::Arc;

use proptest::prelude::*;
use waldkit::simpset::*;

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn standard_one_simplex_level_sizes() {
    let d1 = basic_complex(BasicKind::Standard, 1, None, 3).unwrap();
    assert_eq!(d1.level_sizes(), vec![2, 3, 4, 5]);
}

#[test]
fn standard_simplex_sizes_match_binomials() {
    for n in 0..4 {
        let x = standard(n, 4);
        for k in 0..=4 {
            assert_eq!(x.count(k), binom(n + k + 1, k + 1));
        }
    }
}

#[test]
fn boundary_of_two_simplex_is_a_circle() {
    let b = basic_complex(BasicKind::Boundary, 2, None, 3).unwrap();
    assert!(b.nondegenerate(2).is_empty());
    assert!(b.nondegenerate(3).is_empty());
    let h = homology(&b, 2).unwrap();
    assert_eq!(h.degree(0), Some(&AbelianGroup::free(1)));
    assert_eq!(h.degree(1), Some(&AbelianGroup::free(1)));
    assert_eq!(h.degree(2), Some(&AbelianGroup::zero()));
    assert_eq!(h.groups[3], None);
}

#[test]
fn interval_groupoid_level_sizes() {
    let j = basic_complex(BasicKind::IntervalGroupoid, 1, None, 4).unwrap();
    for n in 0..=4 {
        assert_eq!(j.count(n), 1 << (n + 1));
    }
}

#[test]
fn horn_errors() {
    assert!(basic_complex(BasicKind::Horn, 2, None, 3).is_err());
    assert!(basic_complex(BasicKind::Horn, 2, Some(3), 3).is_err());
    let h = basic_complex(BasicKind::Horn, 2, Some(1), 3).unwrap();
    // Λ¹[2]: three vertices, two nondegenerate edges
    assert_eq!(h.count(0), 3);
    assert_eq!(h.nondegenerate(1).len(), 2);
}

#[test]
fn constructors_satisfy_identities_and_eilenberg_zilber() {
    let sets = vec![
        standard(0, 4),
        standard(2, 4),
        basic_complex(BasicKind::Boundary, 3, None, 4).unwrap(),
        basic_complex(BasicKind::Horn, 3, Some(1), 4).unwrap(),
        interval_groupoid(1, 4),
        interval_groupoid(2, 3),
    ];
    for x in &sets {
        let r = validate_simplicial_identities(x);
        assert!(r.pass, "{:?}", r.violation);
        assert_eq!(eilenberg_zilber_defects(x), 0);
    }
}

#[test]
fn homology_of_simplices_vanishes() {
    for n in 0..=4 {
        let x = standard(n, 4);
        let h = homology(&x, 3).unwrap();
        assert_eq!(h.degree(0), Some(&AbelianGroup::free(1)));
        for k in 1..=3 {
            assert!(h.degree(k).unwrap().is_trivial(), "Δ[{}] H_{}", n, k);
        }
    }
}

#[test]
fn interval_groupoid_is_contractible_within_truncation() {
    let j = interval_groupoid(1, 3);
    let h = homology(&j, 2).unwrap();
    assert_eq!(h.degree(0), Some(&AbelianGroup::free(1)));
    assert!(h.degree(1).unwrap().is_trivial());
    assert!(h.degree(2).unwrap().is_trivial());
}

#[test]
fn homology_degree_bound_is_enforced() {
    assert!(homology(&standard(1, 3), 3).is_err());
}

#[test]
fn boundary_of_three_simplex_is_a_sphere() {
    let b = basic_complex(BasicKind::Boundary, 3, None, 4).unwrap();
    let h = homology(&b, 3).unwrap();
    assert_eq!(h.describe(), vec!["Z", "0", "Z", "0", "unknown (truncated)"]);
}

#[test]
fn product_examples() {
    let d1 = standard(1, 3);
    let p = product(&d1, &d1).unwrap();
    // pairs of monotone maps [n] -> [1]
    assert_eq!(p.count(1), 9);
    assert_eq!(p.count(2), 16);
    assert_eq!(p.nondegenerate(2).len(), 2);
    assert!(validate_simplicial_identities(&p).pass);
    let h = homology(&p, 2).unwrap();
    assert_eq!(h.degree(0), Some(&AbelianGroup::free(1)));
    assert!(h.degree(1).unwrap().is_trivial());

    let pt = standard(0, 3);
    let c = basic_complex(BasicKind::Boundary, 2, None, 3).unwrap();
    let pc = product(&c, &pt).unwrap();
    assert_eq!(pc.level_sizes(), c.level_sizes());
    assert_eq!(homology(&pc, 1).unwrap().degree(1), Some(&AbelianGroup::free(1)));
    assert!(product(&d1, &standard(1, 2)).is_err());
}

#[test]
fn pullback_of_identities_is_the_set() {
    let x = Arc::new(product(&standard(1, 3), &standard(1, 3)).unwrap());
    let id = SimplicialMap::identity(x.clone());
    let pb = pullback(&id, &id).unwrap();
    assert_eq!(pb.set.level_sizes(), x.level_sizes());
    assert!(pb.left.is_bijective());
}

#[test]
fn pullback_along_constant_map() {
    // preimage of the degeneracies of a vertex v under a projection X × Y -> X
    let x = Arc::new(standard(1, 3));
    let y = Arc::new(interval_groupoid(1, 3));
    let p = Arc::new(product(&x, &y).unwrap());
    let (pr, _) = product_projections(x.clone(), y.clone(), p.clone()).unwrap();
    let pt = Arc::new(standard(0, 3));
    let v = SimplicialMap::constant(pt, x.clone(), 1).unwrap();
    let pb = pullback(&pr, &v).unwrap();
    for n in 0..=3 {
        let deg_v = x.apply(0, 1, &Monotone::constant(n, 0, 0));
        let expected = (0..p.count(n) as u32).filter(|&z| pr.at(n, z) == deg_v).count();
        assert_eq!(pb.set.count(n), expected);
        assert_eq!(pb.set.count(n), y.count(n));
    }
}

#[test]
fn pullback_rejects_mismatched_codomains() {
    let a = Arc::new(standard(1, 2));
    let b = Arc::new(standard(2, 2));
    let f = SimplicialMap::identity(a);
    let g = SimplicialMap::identity(b);
    assert!(pullback(&f, &g).is_err());
}

#[test]
fn pullback_universal_property_on_cones() {
    // X = Δ[1], Z = Δ[0], pullback = X × X; cones from Δ[1] are pairs of maps.
    let x = Arc::new(standard(1, 2));
    let z = Arc::new(standard(0, 2));
    let f = SimplicialMap::constant(x.clone(), z.clone(), 0).unwrap();
    let pb = pullback(&f, &f).unwrap();
    let w = Arc::new(standard(1, 2));
    let maps: Vec<SimplicialMap> = (0..3u32)
        .map(|e| SimplicialMap::yoneda(w.clone(), 1, x.clone(), e).unwrap())
        .collect();
    for u in &maps {
        for v in &maps {
            let ind = pb.induced(u, v).expect("cone factors");
            assert_eq!(ind.then(&pb.left).unwrap().assignment, u.assignment);
            assert_eq!(ind.then(&pb.right).unwrap().assignment, v.assignment);
        }
    }
}

#[test]
fn diagonal_examples() {
    let d1 = standard(1, 3);
    let ext = BisimplicialSet::external_product(&d1, &d1).unwrap();
    assert!(ext.validate().pass);
    let diag = diagonal(&ext).unwrap();
    let prod = product(&d1, &d1).unwrap();
    assert_eq!(diag.to_raw().levels, prod.to_raw().levels);
    assert_eq!(diag.to_raw().faces, prod.to_raw().faces);
    assert_eq!(diag.to_raw().degeneracies, prod.to_raw().degeneracies);

    let j = interval_groupoid(1, 3);
    let c = BisimplicialSet::constant(&j, 3).unwrap();
    assert!(c.validate().pass);
    let dc = diagonal(&c).unwrap();
    assert_eq!(dc.to_raw().faces, j.to_raw().faces);
}

#[test]
fn diagonal_commutes_with_levelwise_maps() {
    let d1 = Arc::new(standard(1, 3));
    let d2 = Arc::new(standard(2, 3));
    let src = Arc::new(BisimplicialSet::external_product(&d1, &d1).unwrap());
    let tgt = Arc::new(BisimplicialSet::external_product(&d2, &d2).unwrap());
    for e in 0..3u32 {
        for e2 in 0..3u32 {
            let f = SimplicialMap::yoneda(d1.clone(), 1, d2.clone(), e).unwrap();
            let g = SimplicialMap::yoneda(d1.clone(), 1, d2.clone(), e2).unwrap();
            let fg = BisimplicialMap::external(&f, &g, src.clone(), tgt.clone()).unwrap();
            let sd = Arc::new(diagonal(&src).unwrap());
            let td = Arc::new(diagonal(&tgt).unwrap());
            let dm = diagonal_map(&fg, sd.clone(), td.clone()).unwrap();
            // diagonal of f ⊠ g is f × g on the product
            let p1 = product(&d1, &d1).unwrap();
            for n in 0..=3 {
                for z in 0..p1.count(n) as u32 {
                    let (a, b) = (z / d1.count(n) as u32, z % d1.count(n) as u32);
                    assert_eq!(dm.at(n, z), f.at(n, a) * d2.count(n) as u32 + g.at(n, b));
                }
            }
        }
    }
}

#[test]
fn corrupted_sets_fail_validation() {
    let x = product(&standard(1, 3), &standard(1, 3)).unwrap();
    let bad = x.with_face_override(2, 0, 1, 3);
    let r = validate_simplicial_identities(&bad);
    assert!(!r.pass);
    let v = r.violation.unwrap();
    assert!(v.level <= 3 && !v.identity.is_empty());
    let bad2 = x.with_degeneracy_override(0, 0, 0, 5);
    assert!(!validate_simplicial_identities(&bad2).pass);
}

#[test]
fn json_round_trip() {
    let x = product(&standard(1, 3), &interval_groupoid(1, 3)).unwrap();
    let s = x.to_json();
    let y = SimplicialSet::from_json(&s).unwrap();
    assert_eq!(x, y);
    assert_eq!(y.to_json(), s);
}

#[test]
fn cotensor_examples() {
    let j1 = interval_groupoid(1, 3);
    let x = Arc::new(standard(2, 3));
    let pt = standard(0, 3);
    let c0 = cotensor_into_coskeletal(&pt, x.clone(), 3, 1 << 20).unwrap();
    assert_eq!(c0.set.level_sizes(), x.level_sizes());
    assert!(validate_simplicial_identities(&c0.set).pass);
    // Δ[2] is the nerve of a poset: its only invertible arrows are identities.
    let cj = cotensor_into_coskeletal(&j1, x.clone(), 2, 1 << 20).unwrap();
    assert_eq!(cj.set.count(0), 3);
    assert!(cotensor_into_coskeletal(&pt, Arc::new(basic_complex(BasicKind::Boundary, 2, None, 3).unwrap()), 2, 100).is_err());
}

#[test]
fn mapping_space_of_a_standard_simplex() {
    // Δ[2](0, 2) is a point; Δ[2](2, 0) is empty.
    let x = Arc::new(standard(2, 3));
    let d1 = standard(1, 3);
    let cot = cotensor_into_coskeletal(&d1, x.clone(), 3, 1 << 20).unwrap();
    let s = cot.eval_vertex(0).unwrap();
    let t = cot.eval_vertex(1).unwrap();
    let xx = Arc::new(product(&s.target, &t.target).unwrap());
    let st = pairing(&s, &t, xx.clone()).unwrap();
    let pt = Arc::new(standard(0, 3));
    for (a, b, size) in [(0u32, 2u32, 1usize), (2, 0, 0), (1, 1, 1)] {
        let v = SimplicialMap::constant(pt.clone(), xx.clone(), product_index(&t.target, 0, a, b)).unwrap();
        let pb = pullback(&v, &st).unwrap();
        assert_eq!(pb.set.count(0), size);
        for n in 0..=3 {
            assert_eq!(pb.set.count(n), size);
        }
    }
}

proptest! {
    #[test]
    fn decomposed_operators_agree_with_monotone_composition(n in 0usize..4, seed in 0usize..1000) {
        let x = standard(n, 4);
        let k = seed % 5;
        let maps = Monotone::all(k, n);
        let phi = &maps[seed % maps.len()];
        // the top simplex of Δ[n] pulled back along φ is φ itself
        let top = x.find(n, &Monotone::identity(n).label()).unwrap();
        let z = x.apply(n, top, phi);
        prop_assert_eq!(x.id(k, z), phi.label());
    }

    #[test]
    fn product_sizes_multiply(a in 0usize..3, b in 0usize..3) {
        let x = standard(a, 3);
        let y = interval_groupoid(b, 3);
        let p = product(&x, &y).unwrap();
        for n in 0..=3 {
            prop_assert_eq!(p.count(n), x.count(n) * y.count(n));
        }
        prop_assert!(validate_simplicial_identities(&p).pass);
    }

    #[test]
    fn snf_is_row_order_independent(entries in proptest::collection::vec((0usize..5, 0usize..5, -4i64..5), 0..20), rot in 0usize..5) {
        let mut m = SparseMatrix::new(5, 5);
        let mut m2 = SparseMatrix::new(5, 5);
        for &(r, c, v) in &entries {
            m.push(r, c, v);
            m2.push((r + rot) % 5, c, v);
        }
        prop_assert_eq!(smith_normal_form(&m).unwrap(), smith_normal_form(&m2).unwrap());
    }
}
