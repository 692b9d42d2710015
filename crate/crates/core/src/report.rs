use serde::Serialize;

/// One named check at one truncation.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub residual: f64,
    pub pass: bool,
    pub window: i64,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Record a residual that passes when `≤ tol`.
    pub fn residual(&mut self, name: &str, residual: f64, tol: f64, window: i64, n: usize) -> &mut CheckResult {
        self.flag(name, residual <= tol, residual, window, n)
    }

    pub fn flag(&mut self, name: &str, pass: bool, residual: f64, window: i64, n: usize) -> &mut CheckResult {
        self.checks.push(CheckResult { name: name.to_string(), residual, pass, window, n, detail: None });
        self.checks.last_mut().unwrap()
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl CheckResult {
    pub fn detail(&mut self, d: impl Into<String>) -> &mut Self {
        self.detail = Some(d.into());
        self
    }
}
