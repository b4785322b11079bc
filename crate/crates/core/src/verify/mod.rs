//! Identity suites and their reports.
//!
//! A suite evaluates a list of identities `lhs = rhs` over a parameter range
//! and records the first nonzero difference as its witness. Failures are
//! reports, not errors; only invalid parameters produce an [`Error`].

mod suites;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Value};

use crate::{Element, Error};

pub use suites::{
    suite_closed_forms, suite_commutation, suite_dolan_grady, suite_root_relations, suite_series,
    suite_z_forms,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    DolanGrady,
    ClosedForms,
    Series,
    RootRelations,
    ZForms,
    Commutation,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::DolanGrady,
        Suite::ClosedForms,
        Suite::Series,
        Suite::RootRelations,
        Suite::ZForms,
        Suite::Commutation,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::DolanGrady => "dolan-grady",
            Suite::ClosedForms => "closed-forms",
            Suite::Series => "series",
            Suite::RootRelations => "root-relations",
            Suite::ZForms => "z-forms",
            Suite::Commutation => "commutation",
        }
    }

    /// Default value of the suite's main bound (`None` for the fixed suite).
    pub fn default_max(self) -> Option<i64> {
        match self {
            Suite::DolanGrady => None,
            Suite::ClosedForms => Some(12),
            Suite::Series => Some(16),
            Suite::RootRelations | Suite::ZForms => Some(6),
            Suite::Commutation => Some(8),
        }
    }

    fn min_max(self) -> i64 {
        match self {
            Suite::DolanGrady | Suite::ClosedForms => 0,
            Suite::RootRelations | Suite::ZForms => 1,
            Suite::Series | Suite::Commutation => 2,
        }
    }

    pub fn uses_range(self) -> bool {
        matches!(self, Suite::RootRelations | Suite::ZForms)
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Usage(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

pub const DEFAULT_RANGE: (i64, i64) = (-3, 3);

/// One suite invocation with its bounds resolved.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteRequest {
    pub suite: Suite,
    pub max: Option<i64>,
    pub range: (i64, i64),
}

impl SuiteRequest {
    /// Fills in defaults and validates. `max` is ignored by the fixed suite.
    pub fn new(suite: Suite, max: Option<i64>, range: Option<(i64, i64)>) -> Result<Self, Error> {
        let max = suite.default_max().map(|d| max.unwrap_or(d));
        if let Some(m) = max {
            if m < suite.min_max() {
                return Err(Error::Usage(format!(
                    "suite {suite} needs max >= {}, got {m}",
                    suite.min_max()
                )));
            }
        }
        let range = range.unwrap_or(DEFAULT_RANGE);
        if range.0 > range.1 {
            return Err(Error::Usage(format!(
                "empty range {}..{}",
                range.0, range.1
            )));
        }
        Ok(SuiteRequest { suite, max, range })
    }

    pub fn run(&self) -> CheckReport {
        let m = self.max.unwrap_or(0);
        match self.suite {
            Suite::DolanGrady => suite_dolan_grady(),
            Suite::ClosedForms => suite_closed_forms(m),
            Suite::Series => suite_series(m as usize),
            Suite::RootRelations => suite_root_relations(m, self.range),
            Suite::ZForms => suite_z_forms(m, self.range),
            Suite::Commutation => suite_commutation(m),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
        }
    }
}

/// The first identity found not to hold.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub identity: String,
    pub params: String,
    /// `lhs - rhs`, or `None` when the sides could not be built at all.
    pub difference: Option<Element>,
    pub note: Option<String>,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub suite: String,
    pub params: String,
    pub status: Status,
    pub witness: Option<Witness>,
    pub checks: usize,
    pub elapsed_ms: u128,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        let (witness, failure) = match &self.witness {
            Some(w) => (
                w.difference.as_ref().map_or(Value::Null, Element::to_json),
                json!({ "identity": w.identity, "params": w.params, "note": w.note }),
            ),
            None => (Value::Null, Value::Null),
        };
        json!({
            "suite": self.suite,
            "params": self.params,
            "status": self.status.as_str(),
            "witness": witness,
            "elapsed_ms": self.elapsed_ms as u64,
            "checks": self.checks,
            "failure": failure,
        })
    }
}

impl fmt::Display for CheckReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} [{}] {} checks in {} ms",
            self.status.as_str().to_uppercase(),
            self.suite,
            self.params,
            self.checks,
            self.elapsed_ms
        )?;
        if let Some(w) = &self.witness {
            write!(f, "\n  failed: {} at {}", w.identity, w.params)?;
            if let Some(d) = &w.difference {
                write!(f, "\n  lhs - rhs = {d}")?;
            }
            if let Some(n) = &w.note {
                write!(f, "\n  note: {n}")?;
            }
        }
        Ok(())
    }
}

/// Collects identity checks for one suite, stopping at the first failure.
pub(crate) struct Checker {
    suite: &'static str,
    params: String,
    start: Instant,
    checks: usize,
    witness: Option<Witness>,
}

impl Checker {
    pub(crate) fn new(suite: Suite, params: String) -> Self {
        Checker {
            suite: suite.name(),
            params,
            start: Instant::now(),
            checks: 0,
            witness: None,
        }
    }

    pub(crate) fn failed(&self) -> bool {
        self.witness.is_some()
    }

    /// Checks `lhs = rhs` unless an earlier check already failed.
    pub(crate) fn equal(
        &mut self,
        identity: &str,
        params: impl FnOnce() -> String,
        sides: impl FnOnce() -> (Element, Element),
    ) {
        if self.failed() {
            return;
        }
        self.checks += 1;
        let (lhs, rhs) = sides();
        let diff = lhs - rhs;
        if !diff.is_zero() {
            log::debug!("{}: {identity} fails", self.suite);
            self.witness = Some(Witness {
                identity: identity.to_string(),
                params: params(),
                difference: Some(diff),
                note: None,
            });
        }
    }

    pub(crate) fn zero(
        &mut self,
        identity: &str,
        params: impl FnOnce() -> String,
        value: impl FnOnce() -> Element,
    ) {
        self.equal(identity, params, || (value(), Element::zero()));
    }

    /// Records a failure that has no difference element, e.g. an error
    /// raised while building one side.
    pub(crate) fn error(&mut self, identity: &str, params: String, err: &Error) {
        if self.failed() {
            return;
        }
        self.checks += 1;
        self.witness = Some(Witness {
            identity: identity.to_string(),
            params,
            difference: None,
            note: Some(err.to_string()),
        });
    }

    pub(crate) fn finish(self) -> CheckReport {
        CheckReport {
            suite: self.suite.to_string(),
            params: self.params,
            status: if self.witness.is_some() {
                Status::Fail
            } else {
                Status::Pass
            },
            witness: self.witness,
            checks: self.checks,
            elapsed_ms: self.start.elapsed().as_millis(),
        }
    }
}

/// Runs the requests on at most `jobs` worker threads. Each suite builds its
/// own elements, so workers share nothing. Reports come back sorted by
/// suite name, whatever the completion order.
pub fn run_suites(requests: &[SuiteRequest], jobs: usize) -> Vec<CheckReport> {
    let jobs = jobs.max(1).min(requests.len().max(1));
    let next = std::sync::atomic::AtomicUsize::new(0);
    let mut reports: Vec<(usize, CheckReport)> = std::thread::scope(|scope| {
        let workers: Vec<_> = (0..jobs)
            .map(|_| {
                scope.spawn(|| {
                    let mut done = Vec::new();
                    loop {
                        let i = next.fetch_add(1, std::sync::atomic::Ordering::SeqCst);
                        let Some(req) = requests.get(i) else { break };
                        log::info!("running {}", req.suite);
                        done.push((i, req.run()));
                    }
                    done
                })
            })
            .collect();
        workers
            .into_iter()
            .flat_map(|w| w.join().expect("suite worker panicked"))
            .collect()
    });
    reports.sort_by(|a, b| a.1.suite.cmp(&b.1.suite).then(a.0.cmp(&b.0)));
    reports.into_iter().map(|(_, r)| r).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::torus::{with_twist, Twist};

    #[test]
    fn requests_validate_bounds() {
        assert!(SuiteRequest::new(Suite::Series, Some(1), None).is_err());
        assert!(SuiteRequest::new(Suite::ClosedForms, Some(0), None).is_ok());
        assert!(SuiteRequest::new(Suite::ZForms, None, Some((2, 1))).is_err());
        let r = SuiteRequest::new(Suite::DolanGrady, Some(99), None).unwrap();
        assert_eq!(r.max, None);
        assert_eq!(
            SuiteRequest::new(Suite::Commutation, None, None)
                .unwrap()
                .max,
            Some(8)
        );
    }

    #[test]
    fn edge_bounds_pass() {
        assert!(suite_closed_forms(0).passed());
        assert!(suite_commutation(2).passed());
        assert!(suite_series(2).passed());
    }

    #[test]
    fn corrupted_twist_gives_witness() {
        let r = with_twist(Twist::HALVED, suite_dolan_grady);
        assert_eq!(r.status, Status::Fail);
        let w = r.witness.as_ref().unwrap();
        assert!(!w.difference.as_ref().unwrap().is_zero());
        assert_eq!(r.to_json()["status"], "fail");
        assert!(r.to_json()["witness"]["terms"].is_array());
        assert!(suite_dolan_grady().passed());
    }

    #[test]
    fn aggregation_is_sorted_by_name() {
        let reqs: Vec<_> = [Suite::Series, Suite::DolanGrady, Suite::Commutation]
            .into_iter()
            .map(|s| SuiteRequest::new(s, Some(2), None).unwrap())
            .collect();
        let names: Vec<_> = run_suites(&reqs, 3).into_iter().map(|r| r.suite).collect();
        assert_eq!(names, ["commutation", "dolan-grady", "series"]);
    }
}
