use serde::{Deserialize, Serialize};

use crate::constructions::ConstructionTrace;
use crate::labeling::Labeling;
use crate::search::{SearchBudget, SearchStats};

/// Outcome of asking whether a family has a graceful difference labeling.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Status {
    Gdl { labeling: Labeling },
    NoGdlExhaustive { stats: SearchStats },
    Unsupported { reason: String, exception: bool },
    Timeout { budget: SearchBudget },
}

/// How a certificate was obtained.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Construction(ConstructionTrace),
    Search(SearchStats),
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    #[serde(flatten)]
    pub status: Status,
    pub provenance: Provenance,
}

impl Certificate {
    pub fn labeling(&self) -> Option<&Labeling> {
        match &self.status {
            Status::Gdl { labeling } => Some(labeling),
            _ => None,
        }
    }

    /// A family known to have no gdl (either exception marker or exhaustion).
    pub fn is_known_nonexistent(&self) -> bool {
        matches!(
            self.status,
            Status::NoGdlExhaustive { .. } | Status::Unsupported { exception: true, .. }
        )
    }

    pub fn construction_trace(&self) -> Option<&ConstructionTrace> {
        match &self.provenance {
            Provenance::Construction(t) => Some(t),
            _ => None,
        }
    }

    /// True when any triangle construction in the trace needed the fallback resolver.
    pub fn fallback_used(&self) -> bool {
        self.construction_trace().is_some_and(|t| t.fallback_used())
    }
}
