//! The additivity check on pointed sets with at most two points.

use waldkit::additivity::{additivity_suite, extension_closed, AdditivityBounds, Formulation};
use waldkit::sdot::DEFAULT_GRID_BUDGET;

fn main() -> waldkit::Result<()> {
    let (c, small) = extension_closed("pointed_sets", 2)?;
    let bounds = AdditivityBounds { n_max: 2, m_max: 1, formulations: vec![Formulation::Modern, Formulation::Classical], budget: DEFAULT_GRID_BUDGET };
    let r = additivity_suite(&small, &c, &small, &bounds)?;
    println!("{}: E has {} objects, {} fibers", r.subject, r.e_objects, r.fibers.len());
    for f in &r.fibers {
        for cert in &f.identities {
            println!("  {:?} n <= {}: {} identities, {} failed", cert.formulation, cert.n_max, cert.checked, cert.failed);
        }
    }
    println!("K0: A {:?} B {:?} E {:?} pass {}", r.k0.a, r.k0.b, r.k0.e, r.k0.pass);
    println!("overall {}", if r.report.pass() { "pass" } else { "FAIL" });
    for name in r.report.failures() {
        println!("  failed: {}", name);
    }
    Ok(())
}
