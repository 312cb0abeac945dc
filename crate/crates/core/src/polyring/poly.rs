use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

use super::linalg::Matrix;
use super::{Monomial, MonomialOrder, PolyRing, Scalar};

pub type Term = (Monomial, Scalar);

/// Sparse polynomial: terms strictly descending in the ring order, no zero coefficients.
#[derive(Clone)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<Term>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl PartialEq for Polynomial {
    fn eq(&self, other: &Self) -> bool {
        PolyRing::same(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Polynomial {}

impl std::hash::Hash for Polynomial {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Arc<PolyRing>, c: Scalar) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<PolyRing>, index: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), index), ring.field().one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(ring);
        }
        Polynomial { ring: ring.clone(), terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms (any order, duplicates allowed).
    pub fn from_terms(ring: &Arc<PolyRing>, terms: Vec<Term>) -> Self {
        Polynomial { ring: ring.clone(), terms: normalize_terms(terms, ring.order()) }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn leading_term(&self) -> Option<&Term> {
        self.terms.first()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|t| &t.1)
    }

    /// Maximum total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Minimum total degree of a term (the order at the origin).
    pub fn order_at_origin(&self) -> Option<u64> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m, _)) => self.terms.iter().all(|(n, _)| n.degree() == m.degree()),
        }
    }

    /// Homogeneous component of the given degree.
    pub fn component(&self, degree: u64) -> Polynomial {
        let terms = self.terms.iter().filter(|(m, _)| m.degree() == degree).cloned().collect();
        Polynomial { ring: self.ring.clone(), terms }
    }

    pub fn combine(&self, other: &Polynomial, op: ArithOp) -> Result<Polynomial> {
        if !PolyRing::same(&self.ring, &other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(match op {
            ArithOp::Add => self.add(other),
            ArithOp::Sub => self.sub(other),
            ArithOp::Mul => self.mul(other),
        })
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let one = self.ring.field().one();
        let unit = Monomial::one(self.ring.nvars());
        Polynomial {
            ring: self.ring.clone(),
            terms: add_scaled(&self.terms, &other.terms, &one, &unit, self.ring.order()),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let m1 = self.ring.field().one().neg();
        let unit = Monomial::one(self.ring.nvars());
        Polynomial {
            ring: self.ring.clone(),
            terms: add_scaled(&self.terms, &other.terms, &m1, &unit, self.ring.order()),
        }
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect() }
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(n, a)| (n.mul(m), a.mul(c))).collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let (small, large) = if self.terms.len() <= other.terms.len() { (self, other) } else { (other, self) };
        let mut acc: Vec<Term> = Vec::new();
        for (m, c) in &small.terms {
            acc = add_scaled(&acc, &large.terms, c, m, self.ring.order());
        }
        Polynomial { ring: self.ring.clone(), terms: acc }
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Scales so that the leading coefficient is 1.
    pub fn monic(&self) -> Polynomial {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv().expect("nonzero")),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        let (lm, lc) = d.leading_term()?;
        let lc_inv = lc.inv()?;
        let order = self.ring.order();
        let mut rem = self.terms.clone();
        let mut quot: Vec<Term> = Vec::new();
        while let Some((m, c)) = rem.first().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let q = lm.quotient_of(&m);
            let qc = c.mul(&lc_inv);
            rem = add_scaled(&rem, &d.terms, &qc.neg(), &q, order);
            quot.push((q, qc));
        }
        Some(Polynomial { ring: self.ring.clone(), terms: quot })
    }

    /// Substitutes `x_i -> sum_j a[i][j] x_j`; `a` must be invertible.
    pub fn apply_linear_change(&self, a: &[Vec<Scalar>]) -> Result<Polynomial> {
        let n = self.ring.nvars();
        if a.len() != n || a.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!("substitution matrix must be {n}x{n}")));
        }
        let field = self.ring.field();
        if a.iter().flatten().any(|s| !field.contains(s)) {
            return Err(Error::RingMismatch);
        }
        if Matrix::from_rows(field, a.to_vec()).rank() < n {
            return Err(Error::SingularMatrix);
        }
        let images: Vec<Polynomial> = a
            .iter()
            .map(|row| {
                let terms = row.iter().enumerate().map(|(j, c)| (Monomial::var(n, j), c.clone())).collect();
                Polynomial::from_terms(&self.ring, terms)
            })
            .collect();
        let mut power_cache: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Polynomial::one(&self.ring), p.clone()]).collect();
        let mut out = Polynomial::zero(&self.ring);
        for (m, c) in &self.terms {
            let mut t = Polynomial::constant(&self.ring, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                let cache = &mut power_cache[i];
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap().mul(&images[i]);
                    cache.push(next);
                }
                t = t.mul(&cache[e as usize]);
            }
            out = out.add(&t);
        }
        Ok(out)
    }

    /// Maps into another ring with the same variables (e.g. a different order).
    pub fn reinterpret(&self, ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial::from_terms(ring, self.terms.clone())
    }
}

/// `a + c * m * b` on canonical term lists.
pub(crate) fn add_scaled(a: &[Term], b: &[Term], c: &Scalar, m: &Monomial, order: MonomialOrder) -> Vec<Term> {
    if c.is_zero() || b.is_empty() {
        return a.to_vec();
    }
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut bi = b.iter().map(|(n, d)| (n.mul(m), d.mul(c))).peekable();
    while i < a.len() {
        match bi.peek() {
            None => break,
            Some((bm, _)) => match order.cmp(&a[i].0, bm) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => out.push(bi.next().unwrap()),
                Ordering::Equal => {
                    let (bm, bc) = bi.next().unwrap();
                    let s = a[i].1.add(&bc);
                    if !s.is_zero() {
                        out.push((bm, s));
                    }
                    i += 1;
                }
            },
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend(bi);
    out
}

pub(crate) fn normalize_terms(mut terms: Vec<Term>, order: MonomialOrder) -> Vec<Term> {
    terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
    let mut out: Vec<Term> = Vec::with_capacity(terms.len());
    for (m, c) in terms {
        match out.last_mut() {
            Some((lm, lc)) if *lm == m => *lc = lc.add(&c),
            _ => out.push((m, c)),
        }
    }
    out.retain(|t| !t.1.is_zero());
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative_repr();
            let abs = if negative { c.neg() } else { c.clone() };
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (v, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.ring.vars()[v].clone()),
                    _ => factors.push(format!("{}^{}", self.ring.vars()[v], e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
