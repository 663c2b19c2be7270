//! Suite reports: one line per case, deterministic order, JSON-friendly.

use std::collections::VecDeque;
use std::sync::Mutex;

use serde::Serialize;

#[derive(Clone, Debug, Serialize)]
pub struct CaseResult {
    pub id: String,
    pub pass: bool,
    pub lhs: String,
    pub rhs: String,
    /// "exact" for structural equality, otherwise the absolute deviation.
    pub deviation: String,
}

impl CaseResult {
    pub fn exact(id: impl Into<String>, pass: bool, lhs: String, rhs: String) -> Self {
        CaseResult {
            id: id.into(),
            pass,
            lhs,
            rhs,
            deviation: "exact".into(),
        }
    }

    pub fn numeric(
        id: impl Into<String>,
        pass: bool,
        lhs: String,
        rhs: String,
        deviation: f64,
    ) -> Self {
        CaseResult {
            id: id.into(),
            pass,
            lhs,
            rhs,
            deviation: format!("{deviation:.3e}"),
        }
    }

    pub fn error(id: impl Into<String>, err: impl std::fmt::Display) -> Self {
        CaseResult {
            id: id.into(),
            pass: false,
            lhs: format!("error: {err}"),
            rhs: String::new(),
            deviation: "error".into(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub failed: usize,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, cases: Vec<CaseResult>) -> Self {
        let passed = cases.iter().filter(|c| c.pass).count();
        let failed = cases.len() - passed;
        SuiteReport {
            suite: suite.into(),
            cases,
            passed,
            failed,
        }
    }

    pub fn pass(&self) -> bool {
        self.failed == 0
    }

    pub fn print_lines(&self) {
        for case in &self.cases {
            let status = if case.pass { "PASS" } else { "FAIL" };
            if case.pass {
                println!("{status} {} [{}]", case.id, case.deviation);
            } else {
                println!(
                    "{status} {} [{}] lhs={} rhs={}",
                    case.id, case.deviation, case.lhs, case.rhs
                );
            }
        }
        println!(
            "suite {}: {} passed, {} failed",
            self.suite, self.passed, self.failed
        );
    }
}

pub type Job = Box<dyn FnOnce() -> CaseResult + Send>;

/// Runs cases across worker threads (`MULTIZETA_THREADS` caps the count),
/// assembling results in submission order.
pub fn run_cases(jobs: Vec<Job>) -> Vec<CaseResult> {
    let workers = worker_count().min(jobs.len().max(1));
    if workers <= 1 {
        return jobs.into_iter().map(|job| job()).collect();
    }
    let queue: Mutex<VecDeque<(usize, Job)>> = Mutex::new(jobs.into_iter().enumerate().collect());
    let results: Mutex<Vec<(usize, CaseResult)>> = Mutex::new(Vec::new());
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let next = queue.lock().unwrap().pop_front();
                let Some((idx, job)) = next else { break };
                let result = job();
                results.lock().unwrap().push((idx, result));
            });
        }
    });
    let mut results = results.into_inner().unwrap();
    results.sort_by_key(|(idx, _)| *idx);
    results.into_iter().map(|(_, r)| r).collect()
}

pub fn worker_count() -> usize {
    if let Ok(v) = std::env::var("MULTIZETA_THREADS") {
        if let Ok(n) = v.trim().parse::<usize>() {
            return n.max(1);
        }
    }
    std::thread::available_parallelism()
        .map(|n| n.get())
        .unwrap_or(1)
}
