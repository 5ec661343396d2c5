//! Pass/fail bookkeeping shared by every verification routine.

use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::qcore::QScalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    /// Every evaluated point agreed but at least one point hit a vanishing
    /// denominator in a closed form (non-generic parameters).
    Skipped,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Exact operands of the first failing point of a check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Counterexample {
    pub location: String,
    pub operands: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub suite: String,
    pub name: String,
    pub status: Status,
    pub points: usize,
    pub failures: usize,
    pub skipped: usize,
    pub counterexample: Option<Counterexample>,
    pub skip_reason: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }

    pub fn count(&self, s: Status) -> usize {
        self.checks.iter().filter(|c| c.status == s).count()
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status == Status::Pass)
    }

    pub fn any_failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failed(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }
}

/// Accumulates comparisons for a single named check.
pub struct CheckBuilder {
    suite: String,
    name: String,
    points: usize,
    failures: usize,
    skipped: usize,
    counterexample: Option<Counterexample>,
    skip_reason: Option<String>,
}

impl CheckBuilder {
    pub fn new(suite: &str, name: &str) -> Self {
        CheckBuilder {
            suite: suite.to_string(),
            name: name.to_string(),
            points: 0,
            failures: 0,
            skipped: 0,
            counterexample: None,
            skip_reason: None,
        }
    }

    fn fail(&mut self, location: String, operands: Vec<(String, String)>) {
        self.failures += 1;
        if self.counterexample.is_none() {
            self.counterexample = Some(Counterexample { location, operands });
        }
    }

    /// Records an evaluation error: degenerate errors skip the point, anything
    /// else is a failure.
    pub fn error(&mut self, location: &str, e: &Error) {
        self.points += 1;
        if e.is_degenerate() {
            self.skipped += 1;
            if self.skip_reason.is_none() {
                self.skip_reason = Some(format!("{location}: {e}"));
            }
        } else {
            self.fail(location.to_string(), vec![("error".into(), e.to_string())]);
        }
    }

    pub fn eq(&mut self, location: &str, lhs: Result<QScalar>, rhs: Result<QScalar>) -> bool {
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                self.points += 1;
                if l != r {
                    self.fail(location.to_string(), vec![("lhs".into(), l.to_string()), ("rhs".into(), r.to_string())]);
                    return false;
                }
                true
            }
            (Err(e), _) | (_, Err(e)) => {
                self.error(location, &e);
                false
            }
        }
    }

    pub fn eq_matrix(&mut self, location: &str, lhs: Result<QMatrix>, rhs: Result<QMatrix>) -> bool {
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                self.points += 1;
                if l.dim() != r.dim() {
                    self.fail(location.to_string(), vec![("dims".into(), format!("{} vs {}", l.dim(), r.dim()))]);
                    return false;
                }
                if let Some((i, j)) = l.first_difference(&r) {
                    self.fail(
                        format!("{location} entry ({i},{j})"),
                        vec![("lhs".into(), l[(i, j)].to_string()), ("rhs".into(), r[(i, j)].to_string())],
                    );
                    return false;
                }
                true
            }
            (Err(e), _) | (_, Err(e)) => {
                self.error(location, &e);
                false
            }
        }
    }

    /// A boolean property with the operands that document it.
    pub fn holds(&mut self, location: &str, cond: Result<bool>, operands: Vec<(String, String)>) -> bool {
        match cond {
            Ok(true) => {
                self.points += 1;
                true
            }
            Ok(false) => {
                self.points += 1;
                self.fail(location.to_string(), operands);
                false
            }
            Err(e) => {
                self.error(location, &e);
                false
            }
        }
    }

    pub fn finish(self) -> Check {
        let status = if self.failures > 0 {
            Status::Fail
        } else if self.skipped > 0 {
            Status::Skipped
        } else {
            Status::Pass
        };
        Check {
            suite: self.suite,
            name: self.name,
            status,
            points: self.points,
            failures: self.failures,
            skipped: self.skipped,
            counterexample: self.counterexample,
            skip_reason: self.skip_reason,
        }
    }
}

/// Operand list helper: `ops![("m", m), ("x", x)]`.
#[macro_export]
macro_rules! ops {
    ($(($k:expr, $v:expr)),* $(,)?) => {
        vec![$(($k.to_string(), $v.to_string())),*]
    };
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::rat;

    #[test]
    fn status_aggregation() {
        let mut b = CheckBuilder::new("s", "c");
        b.eq("p0", Ok(rat(1, 2)), Ok(rat(1, 2)));
        assert_eq!(b.finish().status, Status::Pass);

        let mut b = CheckBuilder::new("s", "c");
        b.eq("p0", Ok(rat(1, 2)), Ok(rat(1, 2)));
        b.eq("p1", Err(Error::DivisionByZero("x".into())), Ok(rat(1, 1)));
        let c = b.finish();
        assert_eq!(c.status, Status::Skipped);
        assert_eq!(c.skipped, 1);

        let mut b = CheckBuilder::new("s", "c");
        b.eq("p1", Err(Error::DivisionByZero("x".into())), Ok(rat(1, 1)));
        b.eq("p2", Ok(rat(1, 3)), Ok(rat(1, 2)));
        b.eq("p3", Ok(rat(1, 5)), Ok(rat(1, 2)));
        let c = b.finish();
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.failures, 2);
        let ce = c.counterexample.unwrap();
        assert_eq!(ce.location, "p2");
        assert_eq!(ce.operands[0].1, "1/3");
    }

    #[test]
    fn non_degenerate_errors_fail() {
        let mut b = CheckBuilder::new("s", "c");
        b.eq("p", Err(Error::NonIntegralExponent("1/2".into())), Ok(rat(1, 1)));
        assert_eq!(b.finish().status, Status::Fail);
    }
}
