use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::polyring::{Field, Monomial, MonomialOrder, PolyRing, Polynomial, Scalar};

/// Position rule for free-module terms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Position {
    PositionOverTerm,
    TermOverPosition,
}

/// Monomial order extended to terms `m e_i`. Lower component indices rank higher.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub monomial: MonomialOrder,
    pub position: Position,
}

impl ModuleOrder {
    pub fn pot(monomial: MonomialOrder) -> Self {
        ModuleOrder { monomial, position: Position::PositionOverTerm }
    }

    pub fn of(ring: &PolyRing) -> Self {
        Self::pot(ring.order())
    }

    pub fn cmp(&self, ac: usize, am: &Monomial, bc: usize, bm: &Monomial) -> Ordering {
        match self.position {
            Position::PositionOverTerm => bc.cmp(&ac).then_with(|| self.monomial.cmp(am, bm)),
            Position::TermOverPosition => self.monomial.cmp(am, bm).then_with(|| bc.cmp(&ac)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModTerm {
    pub comp: usize,
    pub mono: Monomial,
    pub coef: Scalar,
}

/// Element of a free module `R^rank`; terms strictly descending in a module order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleElement {
    rank: usize,
    terms: Vec<ModTerm>,
}

impl ModuleElement {
    pub fn zero(rank: usize) -> Self {
        ModuleElement { rank, terms: Vec::new() }
    }

    /// Standard basis vector `e_index`.
    pub fn unit(rank: usize, index: usize, nvars: usize, field: Field) -> Self {
        ModuleElement { rank, terms: vec![ModTerm { comp: index, mono: Monomial::one(nvars), coef: field.one() }] }
    }

    pub fn from_terms(rank: usize, mut terms: Vec<ModTerm>, order: ModuleOrder) -> Self {
        assert!(terms.iter().all(|t| t.comp < rank), "component out of range");
        terms.sort_by(|a, b| order.cmp(b.comp, &b.mono, a.comp, &a.mono));
        let mut out: Vec<ModTerm> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.comp == t.comp && last.mono == t.mono => last.coef = last.coef.add(&t.coef),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coef.is_zero());
        ModuleElement { rank, terms: out }
    }

    pub(crate) fn from_sorted(rank: usize, terms: Vec<ModTerm>) -> Self {
        ModuleElement { rank, terms }
    }

    /// Vector with the given polynomial entries.
    pub fn from_polys(entries: &[Polynomial], order: ModuleOrder) -> Self {
        let terms = entries
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().iter().map(move |(m, c)| ModTerm { comp: i, mono: m.clone(), coef: c.clone() }))
            .collect();
        Self::from_terms(entries.len(), terms, order)
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        let terms = p.terms().iter().map(|(m, c)| ModTerm { comp: 0, mono: m.clone(), coef: c.clone() }).collect();
        ModuleElement { rank: 1, terms }
    }

    /// `p * e_index` in `R^rank`.
    pub fn from_poly_at(p: &Polynomial, rank: usize, index: usize) -> Self {
        let terms = p.terms().iter().map(|(m, c)| ModTerm { comp: index, mono: m.clone(), coef: c.clone() }).collect();
        ModuleElement { rank, terms }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn terms(&self) -> &[ModTerm] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&ModTerm> {
        self.terms.first()
    }

    pub(crate) fn pop_lead(&mut self) -> Option<ModTerm> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Largest `degree + twist` over all terms.
    pub fn max_degree(&self, twists: &[i64]) -> Option<i64> {
        self.terms.iter().map(|t| Self::term_degree(t, twists)).max()
    }

    pub fn resort(&self, order: ModuleOrder) -> Self {
        Self::from_terms(self.rank, self.terms.clone(), order)
    }

    pub fn component(&self, i: usize, ring: &Arc<PolyRing>) -> Polynomial {
        let terms = self.terms.iter().filter(|t| t.comp == i).map(|t| (t.mono.clone(), t.coef.clone())).collect();
        Polynomial::from_terms(ring, terms)
    }

    pub fn to_polys(&self, ring: &Arc<PolyRing>) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Scalar)>> = vec![Vec::new(); self.rank];
        for t in &self.terms {
            buckets[t.comp].push((t.mono.clone(), t.coef.clone()));
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(ring, b)).collect()
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, other: &ModuleElement, c: &Scalar, m: &Monomial, order: ModuleOrder) -> ModuleElement {
        debug_assert_eq!(self.rank, other.rank);
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let a = &self.terms;
        let mut out = Vec::with_capacity(a.len() + other.terms.len());
        let mut i = 0;
        let mut bi = other
            .terms
            .iter()
            .map(|t| ModTerm { comp: t.comp, mono: t.mono.mul(m), coef: t.coef.mul(c) })
            .peekable();
        while i < a.len() {
            let Some(b) = bi.peek() else { break };
            match order.cmp(a[i].comp, &a[i].mono, b.comp, &b.mono) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => out.push(bi.next().unwrap()),
                Ordering::Equal => {
                    let b = bi.next().unwrap();
                    let s = a[i].coef.add(&b.coef);
                    if !s.is_zero() {
                        out.push(ModTerm { comp: b.comp, mono: b.mono, coef: s });
                    }
                    i += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend(bi);
        ModuleElement { rank: self.rank, terms: out }
    }

    pub fn add(&self, other: &ModuleElement, order: ModuleOrder) -> ModuleElement {
        match other.terms.first() {
            None => self.clone(),
            Some(t) => {
                let one = t.coef.field().one();
                self.add_scaled(other, &one, &Monomial::one(t.mono.nvars()), order)
            }
        }
    }

    pub fn sub(&self, other: &ModuleElement, order: ModuleOrder) -> ModuleElement {
        match other.terms.first() {
            None => self.clone(),
            Some(t) => {
                let m1 = t.coef.field().one().neg();
                self.add_scaled(other, &m1, &Monomial::one(t.mono.nvars()), order)
            }
        }
    }

    pub fn scale_term(&self, c: &Scalar, m: &Monomial) -> ModuleElement {
        if c.is_zero() {
            return ModuleElement::zero(self.rank);
        }
        let terms = self.terms.iter().map(|t| ModTerm { comp: t.comp, mono: t.mono.mul(m), coef: t.coef.mul(c) }).collect();
        ModuleElement { rank: self.rank, terms }
    }

    pub fn mul_poly(&self, p: &Polynomial, order: ModuleOrder) -> ModuleElement {
        let mut acc = ModuleElement::zero(self.rank);
        for (m, c) in p.terms() {
            acc = acc.add_scaled(self, c, m, order);
        }
        acc
    }

    pub fn monic(&self) -> ModuleElement {
        match self.terms.first() {
            Some(t) if !t.coef.is_one() => {
                let inv = t.coef.inv().expect("nonzero");
                let terms = self.terms.iter().map(|s| ModTerm { comp: s.comp, mono: s.mono.clone(), coef: s.coef.mul(&inv) }).collect();
                ModuleElement { rank: self.rank, terms }
            }
            _ => self.clone(),
        }
    }

    /// Keeps components `[start, start + len)`, renumbered from zero.
    pub fn slice(&self, start: usize, len: usize) -> ModuleElement {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.comp >= start && t.comp < start + len)
            .map(|t| ModTerm { comp: t.comp - start, mono: t.mono.clone(), coef: t.coef.clone() })
            .collect();
        ModuleElement { rank: len, terms }
    }

    /// Places this element at components `offset..` of a free module of rank `rank`.
    pub fn embed(&self, rank: usize, offset: usize, order: ModuleOrder) -> ModuleElement {
        let terms = self
            .terms
            .iter()
            .map(|t| ModTerm { comp: t.comp + offset, mono: t.mono.clone(), coef: t.coef.clone() })
            .collect();
        if offset == 0 {
            ModuleElement { rank, terms }
        } else {
            ModuleElement::from_terms(rank, terms, order)
        }
    }

    /// Degree of a term given the degrees of the basis vectors.
    pub fn term_degree(t: &ModTerm, twists: &[i64]) -> i64 {
        t.mono.degree() as i64 + twists[t.comp]
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self, twists: &[i64]) -> Option<i64> {
        let d = Self::term_degree(self.terms.first()?, twists);
        self.terms.iter().all(|t| Self::term_degree(t, twists) == d).then_some(d)
    }

    pub fn is_homogeneous(&self, twists: &[i64]) -> bool {
        self.is_zero() || self.homogeneous_degree(twists).is_some()
    }

    /// Sparse coordinate vector keyed by `(component, exponents)`.
    pub fn coordinates(&self) -> BTreeMap<(usize, Vec<u32>), Scalar> {
        self.terms.iter().map(|t| ((t.comp, t.mono.exponents().to_vec()), t.coef.clone())).collect()
    }

    /// Prepends zero exponents for tag variables.
    pub fn with_tags(&self, count: usize, order: ModuleOrder) -> ModuleElement {
        let terms = self
            .terms
            .iter()
            .map(|t| ModTerm { comp: t.comp, mono: t.mono.prepend_zeros(count), coef: t.coef.clone() })
            .collect();
        ModuleElement::from_terms(self.rank, terms, order)
    }

    pub fn display(&self, ring: &Arc<PolyRing>) -> String {
        let polys = self.to_polys(ring);
        let mut s = String::from("(");
        for (i, p) in polys.iter().enumerate() {
            if i > 0 {
                s.push_str(", ");
            }
            let _ = write!(s, "{p}");
        }
        s.push(')');
        s
    }
}
