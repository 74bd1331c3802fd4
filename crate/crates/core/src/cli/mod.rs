//! Config-driven suite runner behind the `waldkit` binary.

pub mod config;
pub mod run;

pub use config::{FormulationFlag, InstanceSpec, SuiteConfig};
pub use run::{is_evidence, module_versions, run_suite, Section, Status, Suite, SuiteReport, REPORT_SCHEMA};
