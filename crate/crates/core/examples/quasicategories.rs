//! Inner horns, pushouts in a nerve and the gap construction against S_n.

use std::sync::Arc;

use waldkit::catkit::nerve_with_chains;
use waldkit::qcat::{compare_equiv_constructions, is_quasicategory, quasicat_pushout, DEFAULT_COCONE_BUDGET};
use waldkit::sdot::DEFAULT_GRID_BUDGET;
use waldkit::simpset::{basic_complex, BasicKind};
use waldkit::waldcat::instance_pointed_sets;

fn main() -> waldkit::Result<()> {
    let w = instance_pointed_sets(3);
    let n = nerve_with_chains(w.cat(), 3);
    let r = is_quasicategory(&n.set, 3)?;
    println!("N(pointed sets <= 3): {} horns, fillers unique {}", r.horns, r.unique_fillers);
    let b = is_quasicategory(&basic_complex(BasicKind::Boundary, 2, None, 2)?, 2)?;
    println!("∂Δ[2]: pass {}, first unfillable {:?}", b.pass, b.first_unfillable);

    // the wedge of two copies of P2 over the base point
    let p2 = w.cat().find_object("P2").unwrap();
    let e = n.edge(w.from_zero(p2));
    let q = quasicat_pushout(&n.set, e, e, DEFAULT_COCONE_BUDGET)?;
    for k in &q.initial {
        println!("initial cocone at {}", w.cat().object_name(n.object_of_vertex(k.apex)));
    }

    let w2 = Arc::new(instance_pointed_sets(2));
    for level in 0..=2 {
        let cmp = compare_equiv_constructions(&w2, level, 2, 2, DEFAULT_GRID_BUDGET)?;
        println!("n = {}: gap levels {:?}, equivalences {:?}, pass {}", level, cmp.gap_sizes, cmp.equiv_sizes, cmp.report.pass());
    }
    Ok(())
}
