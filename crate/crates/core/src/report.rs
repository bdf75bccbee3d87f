//! Verdict records shared by the suites and the CLI.

use std::io::{self, Write};
use std::time::Duration;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Error => "error",
        }
    }

    pub fn from_bool(ok: bool) -> Verdict {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub suite: String,
    pub instance: String,
    pub property: String,
    pub verdict: Verdict,
    /// Polynomials, matrices, root intervals or obstruction data that let the
    /// verdict be reproduced.
    pub witness: serde_json::Value,
    pub runtime_ms: u64,
}

impl CheckReport {
    pub fn new(
        suite: &str,
        instance: &str,
        property: &str,
        verdict: Verdict,
        witness: serde_json::Value,
    ) -> CheckReport {
        CheckReport {
            suite: suite.to_string(),
            instance: instance.to_string(),
            property: property.to_string(),
            verdict,
            witness,
            runtime_ms: 0,
        }
    }

    pub fn error(suite: &str, instance: &str, property: &str, msg: impl ToString) -> CheckReport {
        Self::new(
            suite,
            instance,
            property,
            Verdict::Error,
            serde_json::json!({ "error": msg.to_string() }),
        )
    }

    pub fn with_instance(mut self, instance: &str) -> CheckReport {
        self.instance = instance.to_string();
        self
    }

    pub fn with_suite(mut self, suite: &str) -> CheckReport {
        self.suite = suite.to_string();
        self
    }

    pub fn with_runtime(mut self, d: Duration) -> CheckReport {
        self.runtime_ms = d.as_millis() as u64;
        self
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// One JSON object per line.
pub fn write_jsonl<W: Write>(mut w: W, reports: &[CheckReport]) -> io::Result<()> {
    for r in reports {
        serde_json::to_writer(&mut w, r)?;
        writeln!(w)?;
    }
    Ok(())
}

/// Summary table: one row per report, witness omitted.
pub fn write_csv<W: Write>(w: W, reports: &[CheckReport]) -> io::Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(["suite", "instance", "property", "verdict", "runtime_ms"])?;
    for r in reports {
        out.write_record([
            r.suite.as_str(),
            r.instance.as_str(),
            r.property.as_str(),
            r.verdict.as_str(),
            &r.runtime_ms.to_string(),
        ])?;
    }
    out.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jsonl_round_trip() {
        let r = CheckReport::new(
            "rank3",
            "boolean:3",
            "real-rooted",
            Verdict::Pass,
            serde_json::json!({"c": "1 7 12 6"}),
        );
        let mut buf = Vec::new();
        write_jsonl(&mut buf, std::slice::from_ref(&r)).unwrap();
        let back: CheckReport = serde_json::from_slice(&buf).unwrap();
        assert_eq!(back, r);
        assert!(String::from_utf8(buf)
            .unwrap()
            .contains("\"verdict\":\"pass\""));
    }

    #[test]
    fn csv_has_header_and_rows() {
        let r = CheckReport::error("paving", "vamos", "unit-interval", "boom");
        let mut buf = Vec::new();
        write_csv(&mut buf, &[r]).unwrap();
        let s = String::from_utf8(buf).unwrap();
        assert_eq!(s.lines().count(), 2);
        assert!(s.lines().nth(1).unwrap().ends_with(",error,0"));
    }
}
