//! Finite Waldhausen categories, the S-construction, and machine-checked additivity.

pub mod additivity;
pub mod catkit;
pub mod cli;
pub mod error;
pub mod qcat;
pub mod report;
pub mod sdot;
pub mod simpset;
pub mod waldcat;

pub use error::{Error, Result};
