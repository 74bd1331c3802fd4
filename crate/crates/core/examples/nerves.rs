//! Nerves of the bundled small categories and the counit τ₁ N C → C.

use std::sync::Arc;

use waldkit::catkit::{nerve_with_chains, small_corpus, tau1, tau1_counit, DEFAULT_PATH_CAP};

fn main() -> waldkit::Result<()> {
    for (name, c) in small_corpus() {
        let c = Arc::new(c);
        let n = nerve_with_chains(&c, 3);
        let t = tau1(&n.set, DEFAULT_PATH_CAP)?;
        let iso = tau1_counit(&c, &n, &t)?.is_isomorphism();
        let counts: Vec<usize> = (0..=3).map(|k| n.set.count(k)).collect();
        println!("{:12} objects {:2} morphisms {:3} nerve {:?} counit iso {}", name, c.object_count(), c.morphism_count(), counts, iso);
    }
    Ok(())
}
