use serde::Serialize;

/// Outcome of one named verification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), pass: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), pass: false, witness: Some(witness.into()) }
    }

    /// Passes when `failures` is empty; otherwise the first few failures
    /// become the witness.
    pub fn from_failures(name: impl Into<String>, failures: &[String]) -> Self {
        if failures.is_empty() {
            return Check::pass(name);
        }
        let shown: Vec<&str> = failures.iter().take(5).map(String::as_str).collect();
        let more = if failures.len() > 5 { format!(" (+{} more)", failures.len() - 5) } else { String::new() };
        Check::fail(name, format!("{}{more}", shown.join("; ")))
    }
}

/// Machine-readable verification report: `{params, checks}`.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub params: serde_json::Value,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(params: serde_json::Value) -> Self {
        Report { params, checks: Vec::new() }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}
