use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polyring::{Field, MonomialOrder, PolyRing, Polynomial, QuotientRing, Ring};

use super::grammar::{parse_polynomial_list, print_polynomial};

/// `q` or `fp:<p>`.
pub fn parse_field(text: &str) -> Result<Field> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("q") {
        return Ok(Field::Rational);
    }
    match t.strip_prefix("fp:") {
        Some(p) => {
            let p: u32 = p.trim().parse().map_err(|_| Error::InvalidField(format!("bad modulus in {t:?}")))?;
            Field::prime(p)
        }
        None => Err(Error::InvalidField(format!("expected q or fp:<p>, got {t:?}"))),
    }
}

pub fn parse_order(text: &str) -> Result<MonomialOrder> {
    match text.trim() {
        "grevlex" => Ok(MonomialOrder::GradedReverseLex),
        "lex" => Ok(MonomialOrder::Lex),
        "glex" => Ok(MonomialOrder::GradedLex),
        other => Err(Error::InvalidArgument(format!("unknown monomial order {other:?}"))),
    }
}

/// Textual description of a ring: variables, field, order and optional
/// relations of a quotient.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingSpec {
    pub vars: Vec<String>,
    pub field: String,
    pub order: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
}

impl RingSpec {
    pub fn polynomial(vars: &[&str], field: Field) -> Self {
        RingSpec {
            vars: vars.iter().map(|v| v.to_string()).collect(),
            field: field.to_string(),
            order: "grevlex".into(),
            relations: Vec::new(),
        }
    }

    pub fn of(ring: &Ring) -> Self {
        let base = ring.base();
        RingSpec {
            vars: base.vars().to_vec(),
            field: base.field().to_string(),
            order: base.order().name().to_string(),
            relations: ring.relations().iter().map(print_polynomial).collect(),
        }
    }

    pub fn build(&self) -> Result<Ring> {
        let base = PolyRing::new(&self.vars, parse_field(&self.field)?, parse_order(&self.order)?)?;
        if self.relations.is_empty() {
            return Ok(Ring::Poly(base));
        }
        let rels: Vec<Polynomial> =
            self.relations.iter().map(|r| parse_polynomial_list(r, &base)).collect::<Result<Vec<_>>>()?.concat();
        Ok(Ring::Quotient(QuotientRing::new(base, &rels)?))
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field, self.vars.join(","))?;
        if !self.relations.is_empty() {
            write!(f, "/({})", self.relations.join(", "))?;
        }
        if self.order != "grevlex" {
            write!(f, " {}", self.order)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields_and_orders() {
        assert_eq!(parse_field("q").unwrap(), Field::Rational);
        assert_eq!(parse_field("fp:101").unwrap(), Field::Prime(101));
        assert!(parse_field("fp:100").is_err());
        assert!(parse_field("z").is_err());
        assert_eq!(parse_order("lex").unwrap(), MonomialOrder::Lex);
        assert!(parse_order("revlex").is_err());
    }

    #[test]
    fn spec_round_trips_through_ring() {
        let spec = RingSpec {
            vars: vec!["x".into(), "y".into()],
            field: "fp:7".into(),
            order: "glex".into(),
            relations: vec!["x^2".into(), "x*y".into()],
        };
        let ring = spec.build().unwrap();
        assert!(ring.is_quotient());
        assert_eq!(RingSpec::of(&ring), spec);
    }
}
