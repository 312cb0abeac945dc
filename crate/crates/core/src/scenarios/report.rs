use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

use super::{Outcome, Status};

pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportInputs {
    /// SHA-256 of the serialized instance list, lowercase hex.
    pub digest: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub verified: usize,
    pub refuted: usize,
    pub inconclusive: usize,
    pub hypothesis_not_met: usize,
    /// Refutations of checks whose claim is a theorem.
    pub theorem_refutations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub version: String,
    pub inputs: ReportInputs,
    pub outcomes: Vec<Outcome>,
    pub summary: Summary,
}

impl Report {
    pub fn new(mut outcomes: Vec<Outcome>) -> Self {
        outcomes.sort_by_cached_key(|o| o.sort_key());
        let mut hasher = Sha256::new();
        for o in &outcomes {
            hasher.update(o.check.to_string().as_bytes());
            hasher.update(serde_json::to_vec(&o.instance).unwrap_or_default());
            hasher.update(b"\n");
        }
        let mut summary = Summary::default();
        for o in &outcomes {
            match o.status {
                Status::Verified => summary.verified += 1,
                Status::Refuted => summary.refuted += 1,
                Status::Inconclusive => summary.inconclusive += 1,
                Status::HypothesisNotMet => summary.hypothesis_not_met += 1,
            }
            if o.is_theorem_refutation() {
                summary.theorem_refutations += 1;
            }
        }
        Report {
            version: REPORT_VERSION.into(),
            inputs: ReportInputs { digest: hex::encode(hasher.finalize()) },
            outcomes,
            summary,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Parse { position: e.column(), message: e.to_string() })
    }

    /// 3 when a theorem was refuted, 2 when anything is inconclusive, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.summary.theorem_refutations > 0 {
            3
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let width = self.outcomes.iter().map(|o| o.instance.name.len()).max().unwrap_or(8).max(8);
        let mut s = String::new();
        for o in &self.outcomes {
            let _ = write!(s, "{:<4} {:<width$} {:<18}", o.check.to_string(), o.instance.name, o.status.to_string());
            if let Some(ms) = o.millis {
                let _ = write!(s, " {ms} ms");
            }
            s.push('\n');
        }
        let m = &self.summary;
        let _ = writeln!(
            s,
            "verified {}, refuted {}, inconclusive {}, hypothesis not met {}",
            m.verified, m.refuted, m.inconclusive, m.hypothesis_not_met
        );
        s
    }
}
