//! Front end for `defcyc`: group resolution, the verification suites and
//! their reports.

pub mod commands;
pub mod report;
pub mod suites;

pub use report::{Case, Report, Summary, Verdict};
pub use suites::{run_suite, Suite, VerifyOptions};

/// Reads `DEFCYC_BUDGET`, which overrides both search budgets.
pub fn budget_from_env() -> Result<Option<u64>, String> {
    match std::env::var("DEFCYC_BUDGET") {
        Ok(v) => v.trim().parse().map(Some).map_err(|_| format!("DEFCYC_BUDGET={v:?} is not a node count")),
        Err(_) => Ok(None),
    }
}
