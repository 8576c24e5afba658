//! Instance checks of the structural results on constructed modules, with a
//! built-in corpus, negative controls, and a parallel runner.

pub mod checks;
pub mod corpus;
pub mod report;
pub mod suite;

pub use checks::*;
pub use corpus::{corpus, CorpusEntry, Instance};
pub use report::{timed, CheckReport, Verdict};
pub use suite::{resolve_suites, run_suites, thread_pool, SuiteOptions, SUITES, THREADS_ENV};
