use serde::{Deserialize, Serialize};
use weiljet::verify::CheckOutcome;

/// Bumped whenever a field of [`Report`] changes meaning or is removed.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub id: String,
    pub anchor: String,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub elapsed_ms: u64,
}

impl Record {
    pub fn pass(id: impl Into<String>, anchor: impl Into<String>) -> Self {
        Record {
            id: id.into(),
            anchor: anchor.into(),
            verdict: Verdict::Pass,
            witness: None,
            elapsed_ms: 0,
        }
    }

    /// A failure always carries a witness.
    pub fn fail(
        id: impl Into<String>,
        anchor: impl Into<String>,
        witness: impl Into<String>,
    ) -> Self {
        Record {
            id: id.into(),
            anchor: anchor.into(),
            verdict: Verdict::Fail,
            witness: Some(witness.into()),
            elapsed_ms: 0,
        }
    }

    pub fn from_outcome(o: CheckOutcome) -> Self {
        let verdict = if o.passed {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        let witness = match verdict {
            Verdict::Fail => Some(o.witness.unwrap_or_else(|| "no witness reported".into())),
            _ => o.witness,
        };
        Record {
            id: o.id,
            anchor: o.anchor,
            verdict,
            witness,
            elapsed_ms: o.elapsed_ms,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub total: usize,
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    /// The command, as printed back from its syntax tree.
    pub command: String,
    pub suite: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub records: Vec<Record>,
    pub summary: Summary,
    /// The computed value, for commands that compute one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<serde_json::Value>,
    /// Human-readable form of `value`.
    #[serde(skip)]
    pub text: Option<String>,
}

impl Report {
    /// Sorts the records by id and tallies them.
    pub fn new(
        command: String,
        suite: impl Into<String>,
        seed: Option<u64>,
        mut records: Vec<Record>,
    ) -> Self {
        records.sort_by(|a, b| a.id.cmp(&b.id));
        let mut summary = Summary {
            total: records.len(),
            ..Summary::default()
        };
        for r in &records {
            match r.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Skip => summary.skip += 1,
            }
        }
        Report {
            schema_version: SCHEMA_VERSION,
            command,
            suite: suite.into(),
            seed,
            records,
            summary,
            value: None,
            text: None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        if self.summary.fail == 0 {
            0
        } else {
            1
        }
    }

    /// Zeroes every timing, for comparisons against stored reports.
    pub fn without_timings(mut self) -> Self {
        for r in &mut self.records {
            r.elapsed_ms = 0;
        }
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        if let Some(t) = &self.text {
            out.push_str(t);
            out.push('\n');
            for r in self.records.iter().filter(|r| r.verdict == Verdict::Fail) {
                out.push_str(&format!("error: {}\n", r.witness.as_deref().unwrap_or("")));
            }
            return out;
        }
        for r in &self.records {
            match r.verdict {
                Verdict::Pass => out.push_str(&format!("PASS {}\n", r.id)),
                Verdict::Skip => out.push_str(&format!("SKIP {}\n", r.id)),
                Verdict::Fail => out.push_str(&format!(
                    "FAIL {}  [{}]\n     {}\n",
                    r.id,
                    r.anchor,
                    r.witness.as_deref().unwrap_or("")
                )),
            }
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed, {} skipped\n",
            self.suite, self.summary.pass, self.summary.fail, self.summary.skip
        ));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn records_are_sorted_and_counted() {
        let r = Report::new(
            "check x".into(),
            "x",
            None,
            vec![Record::fail("b", "", "w"), Record::pass("a", "")],
        );
        assert_eq!(r.records[0].id, "a");
        assert_eq!(
            r.summary,
            Summary {
                total: 2,
                pass: 1,
                fail: 1,
                skip: 0
            }
        );
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn failed_outcomes_always_have_witnesses() {
        let r = Record::from_outcome(CheckOutcome {
            id: "x".into(),
            anchor: "a".into(),
            passed: false,
            witness: None,
            elapsed_ms: 3,
        });
        assert!(r.witness.is_some());
    }
}
