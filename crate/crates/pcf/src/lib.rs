//! File formats, validation, reports, curve sampling and the HTTP service
//! around the `pcf-core` engine.

pub mod curves;
pub mod diagnostics;
pub mod document;
pub mod report;
pub mod service;
pub mod validate;

pub use diagnostics::{Code, Diagnostic, Severity};
pub use document::{ModelDocument, ScenarioDocument};
pub use validate::{load_model, LoadedModel};
