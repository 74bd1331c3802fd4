//! Left fibers of `𝔰(s)`, the explicit homotopy on them, and the additivity suite.

pub mod fiber;
pub mod homotopy;
pub mod suite;

pub use fiber::{left_fiber, LeftFiber};
pub use homotopy::{verify_homotopy_identities, AdditivityContext, AdditivityFiber, Formulation, HomotopyCertificate};


pub use suite::{additivity_suite, extension_closed, object_size, AdditivityBounds, AdditivityReport, FiberReport, HomologyEvidence, K0Check};
