use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner;

use super::{Field, MonomialOrder, Polynomial};

/// Polynomial ring `k[x_1..x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    vars: Vec<String>,
    field: Field,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S], field: Field, order: MonomialOrder) -> Result<Arc<Self>> {
        let vars: Vec<String> = vars.iter().map(|v| v.as_ref().trim().to_string()).collect();
        for (i, v) in vars.iter().enumerate() {
            let mut chars = v.chars();
            let ok = matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(Error::InvalidRing(format!("duplicate variable {v}")));
            }
        }
        if let MonomialOrder::Elimination { block } = order {
            if block > vars.len() {
                return Err(Error::InvalidRing("elimination block exceeds variable count".into()));
            }
        }
        Ok(Arc::new(PolyRing { vars, field, order }))
    }

    /// `k[x_1..x_n]` over the rationals in graded reverse lex order.
    pub fn rational<S: AsRef<str>>(vars: &[S]) -> Arc<Self> {
        Self::new(vars, Field::Rational, MonomialOrder::GradedReverseLex).expect("valid variable names")
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// Same variables and field with another order.
    pub fn with_order(&self, order: MonomialOrder) -> Arc<Self> {
        Arc::new(PolyRing { vars: self.vars.clone(), field: self.field, order })
    }

    /// Prepends tag variables and switches to an elimination order for them.
    pub fn with_tags(&self, tags: &[&str]) -> Arc<Self> {
        let mut vars: Vec<String> = tags.iter().map(|t| t.to_string()).collect();
        for v in &self.vars {
            vars.push(v.clone());
        }
        Arc::new(PolyRing { vars, field: self.field, order: MonomialOrder::Elimination { block: tags.len() } })
    }

    pub fn same(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
        Arc::ptr_eq(a, b) || **a == **b
    }
}

/// `S/J` with `J` stored as a reduced Gröbner basis over `S`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientRing {
    base: Arc<PolyRing>,
    relations: Vec<Polynomial>,
}

impl QuotientRing {
    pub fn new(base: Arc<PolyRing>, gens: &[Polynomial]) -> Result<Arc<Self>> {
        for g in gens {
            if !PolyRing::same(g.ring(), &base) {
                return Err(Error::RingMismatch);
            }
        }
        let relations = groebner::reduced_basis_of_polys(&base, gens)?;
        Ok(Arc::new(QuotientRing { base, relations }))
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        &self.base
    }

    pub fn relations(&self) -> &[Polynomial] {
        &self.relations
    }

    /// Normal form modulo the defining ideal.
    pub fn normalize(&self, f: &Polynomial) -> Polynomial {
        groebner::normal_form_poly(f, &self.relations)
    }
}

/// The ambient ring of a computation: a polynomial ring or one of its quotients.
#[derive(Clone, Debug)]
pub enum Ring {
    Poly(Arc<PolyRing>),
    Quotient(Arc<QuotientRing>),
}

impl Ring {
    pub fn base(&self) -> &Arc<PolyRing> {
        match self {
            Ring::Poly(r) => r,
            Ring::Quotient(q) => q.base(),
        }
    }

    pub fn relations(&self) -> &[Polynomial] {
        match self {
            Ring::Poly(_) => &[],
            Ring::Quotient(q) => q.relations(),
        }
    }

    pub fn is_quotient(&self) -> bool {
        matches!(self, Ring::Quotient(_))
    }

    pub fn field(&self) -> Field {
        self.base().field()
    }

    pub fn nvars(&self) -> usize {
        self.base().nvars()
    }

    pub fn normalize(&self, f: &Polynomial) -> Polynomial {
        match self {
            Ring::Poly(_) => f.clone(),
            Ring::Quotient(q) => q.normalize(f),
        }
    }

    pub fn same(&self, other: &Ring) -> bool {
        match (self, other) {
            (Ring::Poly(a), Ring::Poly(b)) => PolyRing::same(a, b),
            (Ring::Quotient(a), Ring::Quotient(b)) => Arc::ptr_eq(a, b) || **a == **b,
            _ => false,
        }
    }

    pub fn check_same(&self, other: &Ring) -> Result<()> {
        if self.same(other) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn variable(&self, i: usize) -> Polynomial {
        self.normalize(&Polynomial::var(self.base(), i))
    }
}

impl From<Arc<PolyRing>> for Ring {
    fn from(r: Arc<PolyRing>) -> Self {
        Ring::Poly(r)
    }
}

impl From<Arc<QuotientRing>> for Ring {
    fn from(q: Arc<QuotientRing>) -> Self {
        Ring::Quotient(q)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.base();
        write!(f, "{}[{}]", base.field(), base.vars().join(","))?;
        if let Ring::Quotient(q) = self {
            let rels: Vec<String> = q.relations().iter().map(|p| p.to_string()).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        Ok(())
    }
}
