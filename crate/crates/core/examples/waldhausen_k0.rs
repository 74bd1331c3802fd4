//! Waldhausen axioms and K₀ of the two bundled instances.

use waldkit::waldcat::{instance_pointed_sets, instance_vect_f2, k0, verify_axioms, K0_NOTE};

fn main() -> waldkit::Result<()> {
    println!("{}\n", K0_NOTE);
    for w in [instance_pointed_sets(2), instance_pointed_sets(3), instance_vect_f2(1), instance_vect_f2(2)] {
        let axioms = verify_axioms(&w);
        let k = k0(&w)?;
        println!("{:16} objects {:3}  axioms {}  K0 = {}  ({} relations)", w.name, w.cat().object_count(), if axioms.pass() { "hold" } else { "FAIL" }, k.group, k.relations.len());
        for f in axioms.failures() {
            println!("  failed: {}", f);
        }
    }
    Ok(())
}
