use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
    degree: u64,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial { exps: SmallVec::from_elem(0, nvars), degree: 0 }
    }

    pub fn var(nvars: usize, index: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        let degree = exps.iter().map(|&e| e as u64).sum();
        Monomial { exps: SmallVec::from_slice(exps), degree }
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    /// Product; exponent overflow past `u32::MAX` is a hard error.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let mut exps = SmallVec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            exps.push(a.checked_add(*b)?);
        }
        Some(Monomial { exps, degree: self.degree + other.degree })
    }

    pub fn pow(&self, e: u32) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self
            .exps
            .iter()
            .map(|a| a.checked_mul(e).expect("monomial exponent overflow"))
            .collect();
        Monomial::from_exponents(&exps)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming divisibility.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect();
        Monomial { exps, degree: other.degree - self.degree }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        Monomial::from_exponents(&exps)
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        Monomial::from_exponents(&exps)
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Variables with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| i)
    }

    /// Inserts `count` zero exponents in front (used for tag variables).
    pub fn prepend_zeros(&self, count: usize) -> Monomial {
        let mut exps: SmallVec<[u32; 8]> = SmallVec::from_elem(0, count);
        exps.extend_from_slice(&self.exps);
        Monomial { exps, degree: self.degree }
    }

    /// Drops the first `count` exponents, which must be zero.
    pub fn drop_leading(&self, count: usize) -> Monomial {
        debug_assert!(self.exps[..count].iter().all(|e| *e == 0));
        Monomial { exps: SmallVec::from_slice(&self.exps[count..]), degree: self.degree }
    }
}

/// Global monomial orders. `Elimination { block }` compares the degree in
/// the first `block` variables first and breaks ties by graded reverse lex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GradedLex,
    GradedReverseLex,
    Elimination { block: usize },
}

impl MonomialOrder {
    pub fn cmp(&self, u: &Monomial, v: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => lex(u, v),
            MonomialOrder::GradedLex => u.degree.cmp(&v.degree).then_with(|| lex(u, v)),
            MonomialOrder::GradedReverseLex => grevlex(u, v),
            MonomialOrder::Elimination { block } => {
                let du: u64 = u.exps[..*block].iter().map(|&e| e as u64).sum();
                let dv: u64 = v.exps[..*block].iter().map(|&e| e as u64).sum();
                du.cmp(&dv).then_with(|| grevlex(u, v))
            }
        }
    }

    pub fn is_degree_compatible(&self) -> bool {
        matches!(self, MonomialOrder::GradedLex | MonomialOrder::GradedReverseLex)
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Lex => "lex",
            MonomialOrder::GradedLex => "glex",
            MonomialOrder::GradedReverseLex => "grevlex",
            MonomialOrder::Elimination { .. } => "elim",
        }
    }
}

fn lex(u: &Monomial, v: &Monomial) -> Ordering {
    for (a, b) in u.exps.iter().zip(&v.exps) {
        match a.cmp(b) {
            Ordering::Equal => continue,
            o => return o,
        }
    }
    Ordering::Equal
}

fn grevlex(u: &Monomial, v: &Monomial) -> Ordering {
    match u.degree.cmp(&v.degree) {
        Ordering::Equal => {}
        o => return o,
    }
    for (a, b) in u.exps.iter().zip(&v.exps).rev() {
        match a.cmp(b) {
            Ordering::Equal => continue,
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.exps.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "]")
    }
}
