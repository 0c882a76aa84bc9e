use serde::{Deserialize, Serialize};

/// One recorded step of a construction or proof pipeline.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub stage: String,
    pub detail: String,
}

impl TraceStep {
    pub fn new(stage: impl Into<String>, detail: impl Into<String>) -> Self {
        Self { stage: stage.into(), detail: detail.into() }
    }
}
