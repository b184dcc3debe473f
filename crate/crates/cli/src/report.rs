//! Suite results, rendered either as JSON or as a plain-text table.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Skip,
}

impl Verdict {
    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skip => "skip",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Case {
    pub name: String,
    /// `None` for the infinite groups of the `Z x Z_m` and `Q` suites.
    pub order: Option<u64>,
    pub verdict: Verdict,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub millis: u64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub skip: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub suite: String,
    pub version: String,
    pub cases: Vec<Case>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: impl Into<String>, cases: Vec<Case>) -> Self {
        let mut summary = Summary::default();
        for c in &cases {
            match c.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::Fail => summary.fail += 1,
                Verdict::Skip => summary.skip += 1,
            }
        }
        Report { suite: suite.into(), version: VERSION.to_string(), cases, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0 && self.summary.skip == 0
    }

    /// 0 when every case passed, 1 on any failure, 3 when the only
    /// problems are budget skips.
    pub fn exit_code(&self) -> i32 {
        if self.summary.fail > 0 {
            1
        } else if self.summary.skip > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_table(&self) -> String {
        let order = |c: &Case| c.order.map_or("inf".to_string(), |o| o.to_string());
        let name_w = self.cases.iter().map(|c| c.name.len()).max().unwrap_or(0).max(4);
        let order_w = self.cases.iter().map(|c| order(c).len()).max().unwrap_or(0).max(5);
        let mut out = String::new();
        let _ = writeln!(out, "suite {} (defcyc {})", self.suite, self.version);
        let _ = writeln!(out, "{:<name_w$}  {:>order_w$}  verdict  detail", "case", "order");
        for c in &self.cases {
            let detail = match (&c.witness, &c.reason) {
                (Some(w), Some(r)) => format!("{w}; {r}"),
                (Some(w), None) => w.clone(),
                (None, Some(r)) => r.clone(),
                (None, None) => String::new(),
            };
            let line = format!("{:<name_w$}  {:>order_w$}  {:<7}  {detail}", c.name, order(c), c.verdict.label());
            let _ = writeln!(out, "{}", line.trim_end());
        }
        let s = &self.summary;
        let _ = writeln!(out, "pass {}  fail {}  skip {}", s.pass, s.fail, s.skip);
        out
    }
}
