use serde::{Deserialize, Serialize};

use crate::closure::{is_integral_over, monomial_closure, ClosureCertificate, ClosureStatus};
use crate::error::Result;
use crate::koszul::{build_koszul, homology, homology_with_coefficients, presentation_and_content};
use crate::modops::{colon, dimension_and_height, ideal_power, IdealHandle};
use crate::polyring::{Field, Polynomial, Ring};
use crate::resolutions::matlis_dual;
use crate::text::{parse_polynomial, parse_polynomial_list, RingSpec};

/// How an expected value was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FactOrigin {
    /// Stated in a published worked example.
    WorkedExample,
    /// Immediate from the definitions.
    Elementary,
    /// Computed here and confirmed by an independent route.
    CrossChecked,
}

/// A checkable property of an example. Ideals are comma-separated generator
/// lists in the polynomial grammar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "fact", rename_all = "snake_case")]
pub enum Fact {
    /// `Ann H_index(I) = ideal`.
    HomologyAnnihilator { index: usize, ideal: String },
    Height { value: usize },
    /// `element ∈ Ī` with a determinant-trick witness `m ≤ max_witness`.
    IntegralWithWitness { element: String, max_witness: u32 },
    /// `I² : I = ideal`.
    SquareColon { ideal: String },
    /// `I₁(φ) = ideal` for a minimal presentation `φ`.
    PresentationContent { ideal: String },
    /// `μ(I)` and `μ(I₁(φ))`.
    MinimalGenerators { ideal: usize, content: usize },
    /// `I : I₁(φ) = ideal`.
    ContentColon { ideal: String },
    /// `(I : I₁(φ))^power ⊆ I`.
    ContentColonPower { power: u32 },
    /// `I` equals its integral closure.
    IntegrallyClosed,
    /// Whether `element` kills `H_index(I; E)` with `E` the Matlis dual of the ring.
    InjectiveHullAnnihilation { index: usize, element: String, annihilates: bool },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedFact {
    #[serde(flatten)]
    pub fact: Fact,
    pub origin: FactOrigin,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExampleRecord {
    pub name: String,
    pub summary: String,
    pub ring: RingSpec,
    pub generators: Vec<String>,
    pub facts: Vec<ExpectedFact>,
}

/// Result of evaluating one fact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactCheck {
    pub holds: bool,
    pub observed: String,
}

fn fact(f: Fact, origin: FactOrigin) -> ExpectedFact {
    ExpectedFact { fact: f, origin }
}

fn strings(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

/// The frozen registry of worked examples.
pub fn worked_examples() -> Vec<ExampleRecord> {
    use Fact::*;
    use FactOrigin::*;
    let binomial = "x^2 - x*y, -x*y + y^2, z^2 - z*w, -z*w + w^2";
    vec![
        ExampleRecord {
            name: "binomial".into(),
            summary: "four binomials in four variables whose first Koszul homology is killed by an element integral over the ideal".into(),
            ring: RingSpec::polynomial(&["x", "y", "z", "w"], Field::Rational),
            generators: strings(&["x^2 - x*y", "-x*y + y^2", "z^2 - z*w", "-z*w + w^2"]),
            facts: vec![
                fact(HomologyAnnihilator { index: 1, ideal: format!("{binomial}, x*z - y*z - x*w + y*w") }, WorkedExample),
                fact(HomologyAnnihilator { index: 2, ideal: "x - y, z - w".into() }, WorkedExample),
                fact(Height { value: 2 }, WorkedExample),
                fact(IntegralWithWitness { element: "x*z - y*z - x*w + y*w".into(), max_witness: 10 }, WorkedExample),
            ],
        },
        ExampleRecord {
            name: "square-of-maximal".into(),
            summary: "the square of the maximal ideal of a plane, where I : I₁(φ) is the maximal ideal".into(),
            ring: RingSpec::polynomial(&["x", "y"], Field::Rational),
            generators: strings(&["x^2", "x*y", "y^2"]),
            facts: vec![
                fact(ContentColon { ideal: "x, y".into() }, WorkedExample),
                fact(ContentColonPower { power: 2 }, WorkedExample),
                fact(IntegrallyClosed, Elementary),
                fact(HomologyAnnihilator { index: 1, ideal: "x^2, x*y, y^2".into() }, CrossChecked),
            ],
        },
        ExampleRecord {
            name: "aci-quintic".into(),
            summary: "an almost complete intersection of quintics whose conormal module is not faithful".into(),
            ring: RingSpec::polynomial(&["x", "y"], Field::Rational),
            generators: strings(&["x^5 - y^5", "x^4*y", "x*y^4"]),
            facts: vec![
                fact(SquareColon { ideal: "x^5 - y^5, x^4*y, x*y^4, x^3*y^3".into() }, WorkedExample),
                fact(PresentationContent { ideal: "x^2, x*y, y^2".into() }, WorkedExample),
                fact(MinimalGenerators { ideal: 3, content: 3 }, WorkedExample),
            ],
        },
        ExampleRecord {
            name: "injective-hull-n2".into(),
            summary: "Koszul homology of (x, y) with coefficients in the injective hull of k over k[x,y,z]/(x,y,z)³".into(),
            ring: RingSpec {
                relations: strings(&["x^3", "x^2*y", "x^2*z", "x*y^2", "x*y*z", "x*z^2", "y^3", "y^2*z", "y*z^2", "z^3"]),
                ..RingSpec::polynomial(&["x", "y", "z"], Field::Rational)
            },
            generators: strings(&["x", "y"]),
            facts: vec![
                fact(InjectiveHullAnnihilation { index: 1, element: "z".into(), annihilates: true }, WorkedExample),
                fact(InjectiveHullAnnihilation { index: 2, element: "z^2".into(), annihilates: false }, WorkedExample),
            ],
        },
    ]
}

pub fn find_example(name: &str) -> Option<ExampleRecord> {
    worked_examples().into_iter().find(|r| r.name == name)
}

impl ExampleRecord {
    pub fn ring(&self) -> Result<Ring> {
        self.ring.build()
    }

    pub fn polynomials(&self, ring: &Ring) -> Result<Vec<Polynomial>> {
        self.generators.iter().map(|g| parse_polynomial(g, ring.base())).collect()
    }

    pub fn ideal(&self) -> Result<IdealHandle> {
        let ring = self.ring()?;
        IdealHandle::new(&ring, &self.polynomials(&ring)?)
    }

    pub fn check(&self, f: &Fact) -> Result<FactCheck> {
        let ring = self.ring()?;
        let gens = self.polynomials(&ring)?;
        let i = IdealHandle::new(&ring, &gens)?;
        let parse = |s: &str| -> Result<IdealHandle> { IdealHandle::new(&ring, &parse_polynomial_list(s, ring.base())?) };
        let equal = |got: &IdealHandle, want: &str| -> Result<FactCheck> {
            Ok(FactCheck { holds: got.equals(&parse(want)?), observed: got.to_string() })
        };
        match f {
            Fact::HomologyAnnihilator { index, ideal } => {
                let k = build_koszul(&gens, &ring)?;
                equal(&homology(&k, *index)?.annihilator, ideal)
            }
            Fact::Height { value } => {
                let h = dimension_and_height(&i)?.1;
                Ok(FactCheck { holds: h == *value, observed: h.to_string() })
            }
            Fact::IntegralWithWitness { element, max_witness } => {
                let c = parse_polynomial(element, ring.base())?;
                let v = is_integral_over(&c, &i, *max_witness)?;
                let holds = v.status == ClosureStatus::Member
                    && matches!(v.certificate, ClosureCertificate::Witness { m } if m <= *max_witness);
                Ok(FactCheck { holds, observed: serde_json::to_string(&v).unwrap_or_default() })
            }
            Fact::SquareColon { ideal } => equal(&colon(&ideal_power(&i, 2)?, &i)?, ideal),
            Fact::PresentationContent { ideal } => equal(&presentation_and_content(&gens, &ring)?.1, ideal),
            Fact::MinimalGenerators { ideal, content } => {
                let a = i.mu()?;
                let b = presentation_and_content(&gens, &ring)?.1.mu()?;
                Ok(FactCheck { holds: (a, b) == (*ideal, *content), observed: format!("{a}, {b}") })
            }
            Fact::ContentColon { ideal } => equal(&colon(&i, &presentation_and_content(&gens, &ring)?.1)?, ideal),
            Fact::ContentColonPower { power } => {
                let c = colon(&i, &presentation_and_content(&gens, &ring)?.1)?;
                let p = ideal_power(&c, *power)?;
                Ok(FactCheck { holds: i.contains_ideal(&p), observed: p.to_string() })
            }
            Fact::IntegrallyClosed => {
                let c = monomial_closure(&i)?;
                Ok(FactCheck { holds: c.equals(&i), observed: c.to_string() })
            }
            Fact::InjectiveHullAnnihilation { index, element, annihilates } => {
                let e = matlis_dual(&ring)?;
                let h = homology_with_coefficients(&gens, &e, *index)?;
                let c = ring.normalize(&parse_polynomial(element, ring.base())?);
                let kills = h.annihilated_by(&c);
                Ok(FactCheck { holds: kills == *annihilates, observed: kills.to_string() })
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_names_are_unique_and_resolve() {
        let all = worked_examples();
        assert!(all.len() >= 4);
        for r in &all {
            assert_eq!(all.iter().filter(|o| o.name == r.name).count(), 1);
            assert!(r.ideal().is_ok(), "{}", r.name);
            assert!(!r.facts.is_empty());
        }
        assert!(find_example("binomial").is_some());
        assert!(find_example("nonexistent").is_none());
    }

    #[test]
    fn cheap_facts_hold() {
        for name in ["square-of-maximal", "aci-quintic"] {
            let r = find_example(name).unwrap();
            for f in &r.facts {
                assert!(r.check(&f.fact).unwrap().holds, "{name}: {:?}", f.fact);
            }
        }
    }
}
