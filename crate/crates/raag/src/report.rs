//! Machine-readable run records.

use serde::Serialize;

/// Failure records kept per check; the count covers all of them.
pub const MAX_RECORDED_FAILURES: usize = 20;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct RunConfig {
    pub graph: String,
    pub seed: u64,
    pub samples: usize,
    pub max_len: usize,
    pub interval_cap: usize,
    pub conj_cap: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { graph: String::new(), seed: 0, samples: 1000, max_len: 8, interval_cap: 20_000, conj_cap: 100_000 }
    }
}

/// Outcome of one instance of a law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The inputs, as `name=word` strings.
    Fail(Vec<String>),
    Inconclusive,
}

#[derive(Clone, Debug, Default, Serialize, PartialEq, Eq)]
pub struct CheckReport {
    pub axiom: String,
    pub samples: usize,
    pub failure_count: usize,
    pub failures: Vec<Vec<String>>,
    pub inconclusive: usize,
}

impl CheckReport {
    pub fn new(axiom: &str) -> Self {
        CheckReport { axiom: axiom.to_string(), ..Default::default() }
    }

    pub fn record(&mut self, outcome: Outcome) {
        self.samples += 1;
        match outcome {
            Outcome::Pass => {}
            Outcome::Inconclusive => self.inconclusive += 1,
            Outcome::Fail(words) => {
                self.failure_count += 1;
                if self.failures.len() < MAX_RECORDED_FAILURES {
                    self.failures.push(words);
                }
            }
        }
    }

    pub fn merge(&mut self, other: CheckReport) {
        self.samples += other.samples;
        self.inconclusive += other.inconclusive;
        self.failure_count += other.failure_count;
        let room = MAX_RECORDED_FAILURES - self.failures.len();
        self.failures.extend(other.failures.into_iter().take(room));
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckReport>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Report {
    pub suites: Vec<SuiteReport>,
    pub total_failures: usize,
    pub total_inconclusive: usize,
}

impl Report {
    pub fn new(suites: Vec<SuiteReport>) -> Self {
        let checks = || suites.iter().flat_map(|s| &s.checks);
        let total_failures = checks().map(|c| c.failure_count).sum();
        let total_inconclusive = checks().map(|c| c.inconclusive).sum();
        Report { suites, total_failures, total_inconclusive }
    }

    pub fn check(&self, axiom: &str) -> Option<&CheckReport> {
        self.suites.iter().flat_map(|s| &s.checks).find(|c| c.axiom == axiom)
    }
}

/// `{command, config, result}` or `{command, config, report}`.
#[derive(Serialize)]
pub struct Document<'a, C: Serialize, R: Serialize> {
    pub command: &'a str,
    pub config: C,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result: Option<R>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<&'a Report>,
}
