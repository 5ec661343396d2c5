//! Human-readable and line-delimited JSON renderings of a run.

use std::fmt::Write as _;

use mqh_core::{Check, Status};
use serde::{Deserialize, Serialize};

use crate::config::ContextSpec;
use crate::run::ContextRun;

/// One line of the structured report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "record", rename_all = "lowercase")]
pub enum Record {
    Context {
        index: usize,
        origin: String,
        #[serde(flatten)]
        spec: ContextSpec,
    },
    Check {
        context: usize,
        suite: String,
        name: String,
        status: String,
        points: usize,
        failures: usize,
        skipped: usize,
        #[serde(skip_serializing_if = "Option::is_none")]
        location: Option<String>,
        /// `[name, exact value]` pairs of the first failing point.
        #[serde(skip_serializing_if = "Vec::is_empty", default)]
        operands: Vec<(String, String)>,
        #[serde(skip_serializing_if = "Option::is_none")]
        skip_reason: Option<String>,
    },
    Summary {
        contexts: usize,
        checks: usize,
        pass: usize,
        fail: usize,
        skipped: usize,
    },
}

fn check_record(context: usize, c: &Check) -> Record {
    let (location, operands) = match &c.counterexample {
        Some(ce) => (Some(ce.location.clone()), ce.operands.clone()),
        None => (None, Vec::new()),
    };
    Record::Check {
        context,
        suite: c.suite.clone(),
        name: c.name.clone(),
        status: c.status.as_str().to_string(),
        points: c.points,
        failures: c.failures,
        skipped: c.skipped,
        location,
        operands,
        skip_reason: c.skip_reason.clone(),
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub contexts: usize,
    pub checks: usize,
    pub pass: usize,
    pub fail: usize,
    pub skipped: usize,
}

pub fn summarize(runs: &[ContextRun]) -> Summary {
    let mut s = Summary { contexts: runs.len(), ..Default::default() };
    for r in runs {
        for c in &r.report.checks {
            s.checks += 1;
            match c.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Skipped => s.skipped += 1,
            }
        }
    }
    s
}

pub fn records(runs: &[ContextRun]) -> Vec<Record> {
    let mut out = Vec::new();
    for r in runs {
        out.push(Record::Context {
            index: r.index,
            origin: r.origin.as_str().into(),
            spec: ContextSpec::from_context(&r.ctx),
        });
        out.extend(r.report.checks.iter().map(|c| check_record(r.index, c)));
    }
    let s = summarize(runs);
    out.push(Record::Summary {
        contexts: s.contexts,
        checks: s.checks,
        pass: s.pass,
        fail: s.fail,
        skipped: s.skipped,
    });
    out
}

pub fn render_structured(runs: &[ContextRun]) -> String {
    let mut s = String::new();
    for rec in records(runs) {
        s.push_str(&serde_json::to_string(&rec).expect("records serialize"));
        s.push('\n');
    }
    s
}

pub fn parse_structured(text: &str) -> serde_json::Result<Vec<Record>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(serde_json::from_str).collect()
}

pub fn render_human(runs: &[ContextRun]) -> String {
    let mut s = String::new();
    for r in runs {
        let c = &r.ctx;
        let _ = writeln!(
            s,
            "context #{} ({}): q={} t_alpha={} t_beta={} t_mu={} N={}",
            r.index,
            r.origin.as_str(),
            c.q,
            c.t_alpha,
            c.t_beta,
            c.t_mu,
            c.n
        );
        for ch in &r.report.checks {
            let _ =
                write!(s, "  {:<7} {}/{} ({} points", ch.status.as_str().to_uppercase(), ch.suite, ch.name, ch.points);
            if ch.skipped > 0 {
                let _ = write!(s, ", {} skipped", ch.skipped);
            }
            s.push(')');
            if let Some(ce) = &ch.counterexample {
                let _ = write!(s, " at {}:", ce.location);
                for (k, v) in &ce.operands {
                    let _ = write!(s, " {k}={v}");
                }
            } else if let Some(reason) = &ch.skip_reason {
                let _ = write!(s, " first skip: {reason}");
            }
            s.push('\n');
        }
    }
    let sm = summarize(runs);
    let _ = writeln!(
        s,
        "{} contexts, {} checks: {} pass, {} fail, {} skipped",
        sm.contexts, sm.checks, sm.pass, sm.fail, sm.skipped
    );
    s
}
