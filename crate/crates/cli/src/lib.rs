//! Model loading, check orchestration and report emission for `pncalc`.

pub mod model;
pub mod report;
pub mod run;

pub use model::{load_model, parse_model, LoadError, ModelFile, ModelKind, Payload};
pub use report::{emit_report, read_report, Format, Report};
pub use run::run_checks;
