//! Waldhausen structures on finite categories: instances, verifiers, `K₀`, split-exact
//! sequences and the comparison functor.

pub mod axioms;
pub mod instance;
pub mod instances;
pub mod k0;
pub mod pushout;
pub mod split;

pub use axioms::{check_waldhausen_equivalence, span_maps, spans, verify_axioms, verify_exact_functor, verify_pushout_functoriality, Span};
pub use instance::{SubWaldhausen, WaldhausenInstance};
pub use instances::{inflate, instance_by_name, instance_point, instance_pointed_sets, instance_vect_f2, AlternatingChooser};
pub use k0::{k0, K0Presentation, K0_NOTE};
pub use pushout::{is_pushout, mediate, mediate_all, search_pushout, PushoutChooser, PushoutData, SearchChooser};
pub use split::{build_universal_sequence, comparison_hypotheses, phi_comparison, universal_sequence_of, verify_split_exact, PhiComparison, SplitExactSequenceData};
