//! Batch verification: each suite turns instance strings into exact
//! pass/fail records.

mod oracle;
mod perm;
mod suites;

use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use crate::dsl::DslError;
use crate::par::{self, Exec};
use crate::poly::{
    is_unit_interval_rooted, isolate_real_roots, sturm_real_root_count, ExactPoly, PolyError,
    RootRange,
};
use crate::poset::Poset;
use crate::report::{CheckReport, Verdict};

pub use oracle::{brute_force_oracle, rank3_counts, rank3_discriminant, rank3_formula, ORACLE_MAX};
pub use perm::{
    counterexample_search, eulerian, q_eulerian, CounterexampleSearch, PermStats, MAX_PERM_N,
};
pub use suites::{default_instances, truncation_identity};

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("{0}")]
    Param(String),
    #[error(transparent)]
    Dsl(#[from] DslError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

pub const SUITES: &[&str] = &[
    "rank3",
    "paving",
    "dowling",
    "designs",
    "triangular",
    "ordinal-sum",
    "see",
    "diamond",
    "counterexample",
    "incidence",
    "oracle",
];

/// Runs `suite` on every instance (in parallel under [`Exec::Parallel`]) and
/// returns the reports sorted by instance string. Property order within an
/// instance is kept.
pub fn suite_run(
    suite: &str,
    instances: &[String],
    exec: Exec,
) -> Result<Vec<CheckReport>, VerifyError> {
    let run = suites::runner(suite).ok_or_else(|| VerifyError::UnknownSuite(suite.to_string()))?;
    let results = par::map(exec, instances, |inst| {
        let mut c = Checker::new(suite, inst);
        run(inst, &mut c).map(|()| c.into_reports())
    });
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    out.sort_by(|a, b| a.instance.cmp(&b.instance));
    Ok(out)
}

/// Collects one report per property with its runtime.
pub struct Checker {
    suite: String,
    instance: String,
    reports: Vec<CheckReport>,
}

type CheckResult = Result<(bool, Value), String>;

impl Checker {
    pub fn new(suite: &str, instance: &str) -> Checker {
        Checker {
            suite: suite.to_string(),
            instance: instance.to_string(),
            reports: Vec::new(),
        }
    }

    /// Runs `f`, recording pass/fail with its witness, or an error verdict
    /// for `Err`. Returns whether the property passed.
    pub fn check(&mut self, property: &str, f: impl FnOnce() -> CheckResult) -> bool {
        let start = Instant::now();
        let report = match f() {
            Ok((ok, w)) => CheckReport::new(
                &self.suite,
                &self.instance,
                property,
                Verdict::from_bool(ok),
                w,
            ),
            Err(msg) => CheckReport::error(&self.suite, &self.instance, property, msg),
        };
        let ok = report.passed();
        self.reports.push(report.with_runtime(start.elapsed()));
        ok
    }

    pub fn push(&mut self, r: CheckReport) {
        let r = r.with_suite(&self.suite).with_instance(&self.instance);
        self.reports.push(r);
    }

    pub fn reports(&self) -> &[CheckReport] {
        &self.reports
    }

    pub fn into_reports(self) -> Vec<CheckReport> {
        self.reports
    }
}

/// Coefficients, distinct real root count and isolating intervals.
pub fn poly_witness(p: &ExactPoly) -> Value {
    let real = sturm_real_root_count(p, &RootRange::Whole).ok();
    let roots = isolate_real_roots(p).ok().map(|iso| {
        iso.intervals
            .iter()
            .zip(&iso.multiplicities)
            .map(|((a, b), m)| json!({"lo": a.to_string(), "hi": b.to_string(), "mult": m}))
            .collect::<Vec<_>>()
    });
    json!({
        "poly": p.to_string(),
        "degree": p.degree(),
        "distinct_real_roots": real,
        "roots": roots,
    })
}

/// `[-1, 0]`-rootedness check with a root witness.
pub fn rooted_check(p: &ExactPoly) -> CheckResult {
    match is_unit_interval_rooted(p) {
        Ok(ok) => Ok((ok, poly_witness(p))),
        Err(PolyError::NotRealRooted) => Ok((false, poly_witness(p))),
        Err(e) => Err(e.to_string()),
    }
}

/// Chain polynomial with its witness, for reports about posets.
pub fn chain_check(p: &Poset) -> CheckResult {
    rooted_check(&p.chain_polynomial())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_suite_is_an_error() {
        assert!(matches!(
            suite_run("nope", &[], Exec::Sequential),
            Err(VerifyError::UnknownSuite(_))
        ));
    }

    #[test]
    fn malformed_instance_is_an_error() {
        assert!(matches!(
            suite_run("paving", &["boolean:x".to_string()], Exec::Sequential),
            Err(VerifyError::Dsl(_))
        ));
    }

    #[test]
    fn reports_sorted_by_instance() {
        let inst = vec!["boolean:3".to_string(), "boolean:2".to_string()];
        let r = suite_run("incidence", &inst, Exec::Parallel).unwrap();
        assert!(r.windows(2).all(|w| w[0].instance <= w[1].instance));
        assert!(r.iter().all(|x| x.passed()), "{r:?}");
    }
}
