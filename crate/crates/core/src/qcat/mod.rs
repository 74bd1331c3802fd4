//! Quasicategory probes: inner horns, equivalences, pushouts in `X_{F/}` and the gap
//! construction on nerves.

pub mod gap;
pub mod probe;
pub mod pushout;

pub use gap::{compare_equiv_constructions, gap_sn_nerve, is_gap_diagram, waldhausen_qcat_probe, EquivComparison, GapLevel};
pub use probe::{
    check_equiv_is_nerve_of_isos, components, equivalence_subcomplex, is_quasicategory, j_top, natural_equivalence_check, nerve_transformation, subcomplex,
    EquivMethod, HornReport, QuasicategoryProbe, Subcomplex,
};
pub use pushout::{check_nerve_pushouts, check_pushout_of_equivalence, equivalence_spans, quasicat_pushout, Cocone, QcatPushout, DEFAULT_COCONE_BUDGET};
