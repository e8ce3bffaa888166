use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Outcome of checking one identity on a batch of instances.
///
/// A failed report carries the first counterexample as `witness`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub anchor: String,
    pub instances_checked: usize,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl IdentityReport {
    pub fn new(identity: impl Into<String>, anchor: impl Into<String>) -> Self {
        IdentityReport {
            identity: identity.into(),
            anchor: anchor.into(),
            instances_checked: 0,
            status: Status::Pass,
            witness: None,
            detail: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn pass_instance(&mut self) {
        self.instances_checked += 1;
    }

    /// Counts the failing instance, marks the report failed and records the
    /// witness.
    pub fn fail(mut self, witness: impl Into<String>) -> Self {
        self.instances_checked += 1;
        self.status = Status::Fail;
        self.witness = Some(witness.into());
        self
    }

    /// Records one instance; on the first failure stores the witness.
    pub fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances_checked += 1;
        if !ok && self.status == Status::Pass {
            self.status = Status::Fail;
            self.witness = Some(witness());
        }
    }

    /// Attaches measured values or other context that is not a witness.
    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}
