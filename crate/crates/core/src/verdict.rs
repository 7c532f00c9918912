//! Machine-checkable result records.

use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    Pass,
    Fail,
    Indeterminate,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Indeterminate => "INDETERMINATE",
        };
        f.write_str(s)
    }
}

/// One checked claim: what was computed, what was expected, and the inputs
/// (seeds, windows, sample points) needed to replay it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub computed: Value,
    pub expected: Option<Value>,
    pub status: Status,
    #[serde(default)]
    pub provenance: Map<String, Value>,
}

impl Verdict {
    /// Pass iff `computed == expected`.
    pub fn compare(
        claim: impl Into<String>,
        computed: impl Serialize,
        expected: impl Serialize,
    ) -> Self {
        let computed = to_value(computed);
        let expected = to_value(expected);
        let status = if computed == expected {
            Status::Pass
        } else {
            Status::Fail
        };
        Self {
            claim: claim.into(),
            computed,
            expected: Some(expected),
            status,
            provenance: Map::new(),
        }
    }

    /// A predicate that should hold; `detail` is recorded as the computed value.
    pub fn holds(claim: impl Into<String>, ok: bool, detail: impl Serialize) -> Self {
        Self {
            claim: claim.into(),
            computed: to_value(detail),
            expected: None,
            status: if ok { Status::Pass } else { Status::Fail },
            provenance: Map::new(),
        }
    }

    pub fn indeterminate(claim: impl Into<String>, detail: impl Serialize) -> Self {
        Self {
            claim: claim.into(),
            computed: to_value(detail),
            expected: None,
            status: Status::Indeterminate,
            provenance: Map::new(),
        }
    }

    pub fn with(mut self, key: &str, value: impl Serialize) -> Self {
        self.provenance.insert(key.to_string(), to_value(value));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

/// Overall status of a list of verdicts: Fail dominates Indeterminate, which
/// dominates Pass.
pub fn combine(verdicts: &[Verdict]) -> Status {
    if verdicts.iter().any(|v| v.status == Status::Fail) {
        Status::Fail
    } else if verdicts.iter().any(|v| v.status == Status::Indeterminate) {
        Status::Indeterminate
    } else {
        Status::Pass
    }
}

/// Render verdicts as a `claim | computed | expected | status` table.
pub fn render_table(verdicts: &[Verdict]) -> String {
    let rows: Vec<[String; 4]> = verdicts
        .iter()
        .map(|v| {
            [
                v.claim.clone(),
                v.computed.to_string(),
                v.expected
                    .as_ref()
                    .map_or("-".to_string(), Value::to_string),
                v.status.to_string(),
            ]
        })
        .collect();
    let header = ["claim", "computed", "expected", "status"];
    let mut widths = header.map(str::len);
    for r in &rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count()).min(70);
        }
    }
    let mut out = String::new();
    let line = |cells: [&str; 4], out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{:<w$}", truncate(c, 70), w = w))
            .collect();
        out.push_str(parts.join(" | ").trim_end());
        out.push('\n');
    };
    line(header, &mut out);
    for r in &rows {
        line([&r[0], &r[1], &r[2], &r[3]], &mut out);
    }
    out
}

fn truncate(s: &str, max: usize) -> String {
    if s.chars().count() <= max {
        s.to_string()
    } else {
        let mut t: String = s.chars().take(max - 3).collect();
        t.push_str("...");
        t
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_sets_status() {
        assert!(Verdict::compare("x", 3, 3).passed());
        assert_eq!(Verdict::compare("x", 3, 4).status, Status::Fail);
    }

    #[test]
    fn combine_prefers_failures() {
        let p = Verdict::holds("a", true, ());
        let i = Verdict::indeterminate("b", ());
        let f = Verdict::holds("c", false, ());
        assert_eq!(combine(std::slice::from_ref(&p)), Status::Pass);
        assert_eq!(combine(&[p.clone(), i.clone()]), Status::Indeterminate);
        assert_eq!(combine(&[p, i, f]), Status::Fail);
    }

    #[test]
    fn table_has_header_and_rows() {
        let t = render_table(&[Verdict::compare("rank", 3, 3)]);
        assert!(t.starts_with("claim"));
        assert!(t.contains("PASS"));
    }
}
