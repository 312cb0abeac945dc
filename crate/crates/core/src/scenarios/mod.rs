//! Checkable claims as named procedures. Each run yields a three-valued
//! outcome (plus "hypothesis not met") and a certificate that can be
//! re-verified from the outcome record alone.

mod certificate;
mod checks;
mod file;
mod instances;
mod report;
mod suite;
mod verify;

use std::fmt;

use serde::{Deserialize, Serialize};

pub use certificate::{
    BurchStep, Certificate, ColonCheck, ElementVerdict, EscapeStep, HomologyEntry, ProbeStep, TorEntry,
};
pub use checks::run_check;
pub use file::{CheckBlock, NamedIdeal, NamedModule, RecipeBlock, ScenarioFile};
pub use report::{Report, ReportInputs, Summary, REPORT_VERSION};
pub use suite::{default_suite, plane_modules, probe_suite, run_request, run_suite, CheckRequest, SuiteOptions};
pub use verify::{failing_certificates, verify_certificate};
pub use instances::{
    example_instance, module_instance, recipe_instance, residue_field_instance, Instance, ModuleSpec, Params,
};


#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum CheckId {
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
    C11,
    C12,
    C13,
    C14,
}

impl CheckId {
    pub const ALL: [CheckId; 14] = [
        CheckId::C1,
        CheckId::C2,
        CheckId::C3,
        CheckId::C4,
        CheckId::C5,
        CheckId::C6,
        CheckId::C7,
        CheckId::C8,
        CheckId::C9,
        CheckId::C10,
        CheckId::C11,
        CheckId::C12,
        CheckId::C13,
        CheckId::C14,
    ];

    pub fn parse(s: &str) -> Option<CheckId> {
        Self::ALL.into_iter().find(|c| c.to_string().eq_ignore_ascii_case(s.trim()))
    }

    pub fn info(&self) -> Check {
        registry().into_iter().find(|c| c.id == *self).expect("every id is registered")
    }

    pub fn severity(&self) -> Severity {
        self.info().severity
    }
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Whether a refutation is a bug (or a discovery) or an acceptable answer
/// to an open question.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Severity {
    Theorem,
    Probe,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: CheckId,
    pub title: &'static str,
    pub claim: &'static str,
    pub requirements: &'static str,
    pub severity: Severity,
}

pub fn registry() -> Vec<Check> {
    use CheckId::*;
    use Severity::*;
    let c = |id, title, claim, requirements, severity| Check { id, title, claim, requirements, severity };
    vec![
        c(
            C1,
            "closed-ideal-annihilator",
            "an integrally closed m-primary ideal is the annihilator of its first Koszul homology",
            "polynomial ring; monomial m-primary ideal equal to its closure; not a complete intersection",
            Theorem,
        ),
        c(
            C2,
            "socle-annihilator-in-closure",
            "an element of I:m killing H_1(I) is integral over I, and every c killing H_1 with c not in I has I:c = mI:c",
            "polynomial ring; m-primary ideal that is not a complete intersection",
            Theorem,
        ),
        c(
            C3,
            "annihilator-in-content-colon",
            "Ann H_1(I) lies in I : I_1(phi), with equality for syzygetic ideals",
            "graded ideal with a minimal presentation phi",
            Theorem,
        ),
        c(
            C4,
            "content-colon-power",
            "(I : I_1(phi))^(p+1) lies in I where p is the projective dimension of I",
            "graded ideal of a polynomial ring",
            Theorem,
        ),
        c(
            C5,
            "height-two-perfect-rigidity",
            "for a height two perfect ideal every nonvanishing Koszul homology module has annihilator I",
            "polynomial ring; perfect ideal of height two",
            Theorem,
        ),
        c(
            C6,
            "gorenstein-socle-kills-h1",
            "for an m-primary Gorenstein ideal that is not a complete intersection, I:m kills H_1(I)",
            "polynomial ring; m-primary Gorenstein ideal, not a complete intersection",
            Theorem,
        ),
        c(
            C7,
            "pfaffian-square-in-closure",
            "for a height three Gorenstein ideal with n = 2k+1 >= 5 generators, (Ann H_1)^2 lies in the closure of I and Ann H_1 lies in the closure of I^((k-1)/k)",
            "polynomial ring of characteristic other than 2; height three Gorenstein ideal with at least five generators",
            Theorem,
        ),
        c(
            C8,
            "last-homology-double-colon",
            "for a complete intersection J in I of the same height, Ann H_(n-g)(I) = J:(J:I) and J:(J:I) lies in the closure of I",
            "polynomial ring; m-primary ideal",
            Theorem,
        ),
        c(
            C9,
            "resolution-socle-test",
            "if the entries of phi_t lie in the closure of m J_t with J_t = Ann Tor_t(R/I,M), then image(phi_t) meets the socle of F_(t-1)/IF_(t-1) trivially, image(phi_t) lies in IF_(t-1) and J_t F_t lies in image(phi_(t+1))",
            "polynomial ring; integrally closed m-primary monomial ideal I; graded module M",
            Theorem,
        ),
        c(
            C10,
            "tor-detects-projective-dimension",
            "for integrally closed m-primary I, Tor_t(R/I,M) = 0 exactly when pd M < t",
            "polynomial ring; integrally closed m-primary monomial ideal I; graded module M",
            Theorem,
        ),
        c(
            C11,
            "closure-colon-containment",
            "if J lies in the closure of m(IJ : I meet J) for integrally closed m-primary I, then J lies in I",
            "polynomial ring; integrally closed m-primary monomial ideal I; second ideal J",
            Probe,
        ),
        c(
            C12,
            "residue-field-entries-escape",
            "over a reduced ring that is not regular, each map of the minimal resolution of k has an entry outside the closure of m^2",
            "quotient by squarefree monomials of degree at least two; M the residue field",
            Theorem,
        ),
        c(
            C13,
            "conormal-faithful",
            "a Cohen-Macaulay almost complete intersection whose I_1(phi) is a complete intersection has I^2 : I = I",
            "polynomial ring; graded ideal",
            Theorem,
        ),
        c(
            C14,
            "koszul-annihilator-probes",
            "question 1: J_1...J_(n-d) lies in the closure of I^(n-d); question 2: Ann H_(n-j) lies in J_j:(J_j:I), which lies in the closure of I",
            "polynomial ring; m-primary ideal",
            Probe,
        ),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Refuted,
    Inconclusive,
    HypothesisNotMet,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Verified => "verified",
            Status::Refuted => "refuted",
            Status::Inconclusive => "inconclusive",
            Status::HypothesisNotMet => "hypothesis_not_met",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub check: CheckId,
    pub instance: Instance,
    pub status: Status,
    pub certificate: Certificate,
    pub millis: Option<u64>,
}

impl Outcome {
    /// Refutation of a proved statement.
    pub fn is_theorem_refutation(&self) -> bool {
        self.status == Status::Refuted && self.check.severity() == Severity::Theorem
    }

    pub(crate) fn sort_key(&self) -> (CheckId, String, String) {
        (self.check, self.instance.name.clone(), serde_json::to_string(&self.instance).unwrap_or_default())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_round_trip_and_every_id_has_an_entry() {
        for id in CheckId::ALL {
            assert_eq!(CheckId::parse(&id.to_string()), Some(id));
            assert_eq!(id.info().id, id);
        }
        assert_eq!(CheckId::parse("c14"), Some(CheckId::C14));
        assert_eq!(CheckId::parse("C15"), None);
        assert_eq!(CheckId::C11.severity(), Severity::Probe);
    }
}
