//! The categories S_n C of gap grids, and the transpose S_n S_2 = S_2 S_n.

use std::sync::Arc;

use waldkit::sdot::{check_transpose, s_n_category, DEFAULT_GRID_BUDGET};
use waldkit::waldcat::{instance_pointed_sets, verify_axioms};

fn main() -> waldkit::Result<()> {
    let w = Arc::new(instance_pointed_sets(2));
    for n in 0..=3 {
        let sn = s_n_category(&w, n, DEFAULT_GRID_BUDGET)?;
        let c = sn.instance.cat();
        println!("S_{} objects {:3} morphisms {:4} axioms {}", n, c.object_count(), c.morphism_count(), verify_axioms(&sn.instance).pass());
        if n == 2 {
            for x in 0..c.object_count().min(4) as u32 {
                println!("    {}", sn.grid(x).label());
            }
        }
    }
    for n in 1..=2 {
        let t = check_transpose(&w, n, DEFAULT_GRID_BUDGET)?;
        println!("S_{} S_2 vs S_2 S_{}: {} and {} objects, identical {}", n, n, t.n_of_s2, t.two_of_sn, t.identical);
    }
    Ok(())
}
