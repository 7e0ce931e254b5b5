//! Property checks for measure-valued maps, the classification fit, and the
//! randomized suite runner.

pub mod checks;
pub mod fit;
pub mod kind;
pub mod random;
pub mod report;
pub mod suite;

pub use checks::{TOL_EXACT, TOL_FD, TOL_FLOAT};
pub use fit::{default_probes, fit_classification, fit_measures, FitResult};
pub use kind::{MapRegistry, MeasureMapKind, Term};
pub use report::CheckReport;
pub use suite::{run_suite, Suite, SuiteConfig, SuiteReport};
