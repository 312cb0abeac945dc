use serde::{Deserialize, Serialize};

use crate::closure::{ClosureStatus, ClosureVerdict};

/// An element and its closure-membership verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ElementVerdict {
    pub element: String,
    pub verdict: ClosureVerdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyEntry {
    pub index: usize,
    pub vanishing: bool,
    pub annihilator: Vec<String>,
}

/// `I : c` against `𝔪I : c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColonCheck {
    pub element: String,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurchStep {
    pub t: usize,
    /// `J_t = Ann Tor_t(R/I, M)`.
    pub annihilator: Vec<String>,
    pub hypothesis: ClosureStatus,
    pub entries: Vec<ElementVerdict>,
    /// The remaining fields are present only when the hypothesis certified.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub socle_meets_image: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub image_in_ideal_multiple: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annihilator_in_image: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorEntry {
    pub t: usize,
    pub tor_vanishes: bool,
    pub pd_below_t: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EscapeStep {
    pub t: usize,
    /// An entry of `φ_t` outside the closure, when one was found.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<ElementVerdict>,
    pub entries_checked: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProbeStep {
    pub j: usize,
    pub elements: Vec<String>,
    pub double_colon: Vec<String>,
    pub annihilator: Vec<String>,
    pub contained: bool,
    pub verdicts: Vec<ElementVerdict>,
}

/// Evidence backing an outcome. Ideals are lists of canonical generators.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    AnnihilatorEquality {
        annihilator: Vec<String>,
        equal: bool,
    },
    SocleClosure {
        h1_vanishes: bool,
        candidates: Vec<ElementVerdict>,
        colon_checks: Vec<ColonCheck>,
    },
    ContentColon {
        annihilator: Vec<String>,
        content: Vec<String>,
        colon: Vec<String>,
        syzygetic: bool,
        contained: bool,
        equal: bool,
    },
    ColonPower {
        colon: Vec<String>,
        projective_dimension: usize,
        power: u32,
        contained: bool,
    },
    HomologyAnnihilators {
        entries: Vec<HomologyEntry>,
    },
    SocleKillsHomology {
        socle: Vec<String>,
        killing: Vec<bool>,
    },
    PfaffianClosure {
        annihilator: Vec<String>,
        products: Vec<ElementVerdict>,
        a: u32,
        b: u32,
        fractional: Vec<ElementVerdict>,
    },
    DoubleColon {
        regular_sequence: Vec<String>,
        double_colon: Vec<String>,
        annihilator: Vec<String>,
        equal: bool,
        verdicts: Vec<ElementVerdict>,
    },
    BurchSocle {
        steps: Vec<BurchStep>,
    },
    TorVanishing {
        projective_dimension: usize,
        entries: Vec<TorEntry>,
    },
    ConditionalContainment {
        target: Vec<String>,
        hypothesis: ClosureStatus,
        verdicts: Vec<ElementVerdict>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        contained: Option<bool>,
    },
    EntryEscapes {
        steps: Vec<EscapeStep>,
    },
    Faithfulness {
        perfect: bool,
        almost_complete_intersection: bool,
        content: Vec<String>,
        content_is_complete_intersection: bool,
        square_colon: Vec<String>,
        faithful: bool,
    },
    ProductClosure {
        factors: Vec<Vec<String>>,
        power: usize,
        verdicts: Vec<ElementVerdict>,
    },
    GeneralColons {
        steps: Vec<ProbeStep>,
    },
    Aborted {
        reason: String,
    },
}

pub(crate) fn aggregate<'a>(vs: impl IntoIterator<Item = &'a ElementVerdict>) -> ClosureStatus {
    let mut all_member = true;
    for v in vs {
        match v.verdict.status {
            ClosureStatus::NonMember => return ClosureStatus::NonMember,
            ClosureStatus::Inconclusive => all_member = false,
            ClosureStatus::Member => {}
        }
    }
    if all_member {
        ClosureStatus::Member
    } else {
        ClosureStatus::Inconclusive
    }
}
