//! Driver behind the `mqh` binary: configuration, sampling, suite execution
//! and report rendering.

pub mod config;
pub mod error;
pub mod output;
pub mod run;
pub mod sampler;
pub mod table;

pub use config::{ConfigFile, Format, Overrides, RunConfig, Suite};
pub use error::CliError;

/// Exit status when every check passed (skipped points allowed).
pub const EXIT_OK: i32 = 0;
/// Exit status when at least one identity failed.
pub const EXIT_FAILURE: i32 = 1;

pub struct VerifyOutcome {
    pub runs: Vec<run::ContextRun>,
    pub rendered: String,
    pub exit_code: i32,
}

/// `EXIT_FAILURE` as soon as any check failed, `EXIT_OK` otherwise.
pub fn exit_code(runs: &[run::ContextRun]) -> i32 {
    if runs.iter().any(|r| r.report.any_failed()) {
        EXIT_FAILURE
    } else {
        EXIT_OK
    }
}

pub fn cmd_verify(cfg: &RunConfig) -> VerifyOutcome {
    let runs = run::run_all(cfg);
    let rendered = match cfg.format {
        Format::Human => output::render_human(&runs),
        Format::Structured => output::render_structured(&runs),
    };
    let exit_code = exit_code(&runs);
    VerifyOutcome { runs, rendered, exit_code }
}
