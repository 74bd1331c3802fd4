use std::sync::Arc;

use waldkit::additivity::*;
use waldkit::sdot::DEFAULT_GRID_BUDGET;
use waldkit::simpset::{standard, SimplicialMap};
use waldkit::waldcat::*;

fn context(k: usize, depth: usize) -> Arc<AdditivityContext> {
    let c = Arc::new(instance_pointed_sets(2 * k - 1));
    let small = SubWaldhausen::full(&c, "small", |x| c.cat().object_name(x).trim_start_matches('P').parse::<usize>().unwrap() <= k).unwrap();
    Arc::new(AdditivityContext::new(&small, &c, &small, depth, DEFAULT_GRID_BUDGET).unwrap())
}

#[test]
fn pointed_two_all_identities() {
    let ctx = context(2, 4);
    // * >-> * ->> *, * >-> P2 ->> P2, P2 >-> P2 ->> *, and two sequences P2 >-> P3 ->> P2
    assert_eq!(ctx.e.data.objects.len(), 5);
    for m in 0..=1 {
        for y in 0..ctx.sa.set.count(m) as u32 {
            let fib = AdditivityFiber::new(&ctx, m, y).unwrap();
            for f in [Formulation::Modern, Formulation::Classical] {
                let c = verify_homotopy_identities(&fib, f, 2);
                let bad: Vec<_> = c.clauses.iter().filter(|c| !c.pass).collect();
                assert!(c.pass(), "m={} y={} {:?}: {:?}", m, y, f, bad);
                assert!(c.checked > 0);
            }
        }
    }
}

#[test]
fn boundary_values() {
    let ctx = context(2, 3);
    for m in 0..=1 {
        for y in 0..ctx.sa.set.count(m) as u32 {
            let fib = AdditivityFiber::new(&ctx, m, y).unwrap();
            // r ι = Id, h^0 = ι r and h^{n+1} = Id
            assert!(fib.iota.then(&fib.r).unwrap().assignment == SimplicialMap::identity(ctx.sb.set.clone()).assignment);
            assert!(fib.iota.first_violation().is_none() && fib.r.first_violation().is_none());
            for n in 0..=3 {
                for e in 0..fib.fiber.set.count(n) as u32 {
                    assert_eq!(fib.h(n, 0, e), Some(fib.iota_r(n, e)));
                    assert_eq!(fib.h(n, n + 1, e), Some(e));
                }
            }
        }
    }
}

#[test]
fn point_subcategory_fiber_is_the_target() {
    // A = {*}: the fiber over the only vertex is 𝔰•B and r is an isomorphism as long as
    // cofibers are unique; with P3 the two quotients * >-> P3 ->> P3 both survive
    for k in [2, 3] {
        let c = Arc::new(instance_pointed_sets(k));
        let point = SubWaldhausen::full(&c, "point", |x| x == c.zero).unwrap();
        let whole = SubWaldhausen::whole(c.clone());
        let ctx = Arc::new(AdditivityContext::new(&point, &c, &whole, 3, DEFAULT_GRID_BUDGET).unwrap());
        let fib = AdditivityFiber::new(&ctx, 0, 0).unwrap();
        assert_eq!(fib.r.is_bijective(), k == 2);
        assert!((0..=3).all(|n| fib.r.assignment[n].len() >= ctx.sb.set.count(n)));
        assert!(verify_homotopy_identities(&fib, Formulation::Modern, 2).pass());
        assert!(verify_homotopy_identities(&fib, Formulation::Classical, 1).pass());
    }
}

#[test]
fn non_functorial_chooser_breaks_an_identity() {
    let ctx = context(2, 4);
    let c = ctx.e.data.c.clone();
    let alt = Arc::new(c.with_chooser("alternating", Arc::new(AlternatingChooser::new(c.chooser().clone()))));
    let mut broken = 0;
    for y in 0..ctx.sa.set.count(1) as u32 {
        let fib = AdditivityFiber::with_pushouts(&ctx, 1, y, alt.clone()).unwrap();
        broken += verify_homotopy_identities(&fib, Formulation::Modern, 2).failed;
    }
    assert!(broken > 0);
}

#[test]
fn generic_left_fibers() {
    let x = Arc::new(standard(2, 3));
    // identity map, y a vertex: level 0 is the preimage of y
    let id = SimplicialMap::identity(x.clone());
    let f = left_fiber(&id, 0, 1).unwrap();
    assert_eq!(f.set.count(0), 1);
    // constant map at a vertex, y that vertex at m = 0: the fiber is the source
    let pt = Arc::new(standard(0, 3));
    let k = SimplicialMap::constant(x.clone(), pt, 0).unwrap();
    let f = left_fiber(&k, 0, 0).unwrap();
    assert_eq!(f.level_sizes(), x.level_sizes());
    assert!(left_fiber(&k, 1, 5).is_err());
}

#[test]
fn suite_on_both_instances() {
    let bounds = AdditivityBounds { n_max: 2, m_max: 1, formulations: vec![Formulation::Modern, Formulation::Classical], budget: DEFAULT_GRID_BUDGET };
    for (name, size, rank) in [("pointed_sets", 2, 2), ("vect_f2", 1, 2)] {
        let (c, small) = extension_closed(name, size).unwrap();
        let r = additivity_suite(&small, &c, &small, &bounds).unwrap();
        assert!(r.report.pass(), "{}: {:?}", name, r.report.failures());
        assert_eq!(r.k0.e, vec![0; rank]);
        let point = SubWaldhausen::full(&c, "point", |x| x == c.zero).unwrap();
        let r = additivity_suite(&point, &c, &small, &bounds).unwrap();
        assert!(r.report.pass(), "{} point: {:?}", name, r.report.failures());
        assert_eq!(r.k0.e, r.k0.sum);
    }
}
