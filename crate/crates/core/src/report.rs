//! Versioned JSON reports produced by every CLI command.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

/// Overall reading of a command; determines the process exit code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RunVerdict {
    Verified,
    Found,
    None,
    Refuted,
    BudgetExhausted,
    /// Holds by an argument that relies on an external classification
    /// because the exhaustive search ran out of budget.
    Conditional,
    InputError,
}

impl RunVerdict {
    pub fn exit_code(self) -> i32 {
        match self {
            RunVerdict::Verified | RunVerdict::Found => 0,
            RunVerdict::None | RunVerdict::Refuted => 1,
            RunVerdict::BudgetExhausted | RunVerdict::Conditional => 2,
            RunVerdict::InputError => 3,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CheckVerdict {
    Pass,
    Fail,
    Found,
    None,
    BudgetExhausted,
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub verdict: CheckVerdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
    /// The statement this check tests.
    pub claim: String,
}

impl Check {
    pub fn new(name: &str, verdict: CheckVerdict, claim: &str) -> Self {
        Check {
            name: name.into(),
            verdict,
            witness: None,
            claim: claim.into(),
        }
    }

    pub fn pass_fail(name: &str, ok: bool, claim: &str) -> Self {
        Check::new(name, if ok { CheckVerdict::Pass } else { CheckVerdict::Fail }, claim)
    }

    pub fn with_witness(mut self, w: Value) -> Self {
        self.witness = Some(w);
        self
    }
}

/// Timing and effort; excluded from determinism comparisons.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Stats {
    pub nodes: u64,
    pub elapsed_ms: u64,
    pub threads: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub verdict: RunVerdict,
    pub checks: Vec<Check>,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub stats: Stats,
}

impl Report {
    pub fn new(command: &str, verdict: RunVerdict, checks: Vec<Check>, result: Value) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            command: command.into(),
            verdict,
            checks,
            result,
            error: None,
            stats: Stats::default(),
        }
    }

    pub fn input_error(command: &str, message: String) -> Self {
        let mut r = Report::new(command, RunVerdict::InputError, Vec::new(), Value::Null);
        r.error = Some(message);
        r
    }

    pub fn exit_code(&self) -> i32 {
        self.verdict.exit_code()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// The report without its `stats` block, for reproducibility checks.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(map) = &mut v {
            map.remove("stats");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }

    /// One line per check plus the overall verdict.
    pub fn summary(&self) -> String {
        let mut out = format!("{}: {:?}\n", self.command, self.verdict);
        for c in &self.checks {
            out.push_str(&format!("  [{:?}] {} - {}\n", c.verdict, c.name, c.claim));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("  error: {e}\n"));
        }
        out
    }
}
