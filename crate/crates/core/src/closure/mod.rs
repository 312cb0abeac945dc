//! Integral closure: exact for monomial ideals through the Newton
//! polyhedron, a witness search for everything else.

mod polyhedron;

use serde::{Deserialize, Serialize};

pub use polyhedron::{facets_by_enumeration, Facet, NewtonPolyhedron};

use crate::deadline;
use crate::error::{Error, Result};
use crate::modops::{ideal_power, ideals_equal, product, sum, IdealHandle};
use crate::polyring::{Monomial, Polynomial, Ring};

pub const DEFAULT_MMAX: u32 = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosureStatus {
    Member,
    NonMember,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClosureCertificate {
    /// `(I + (c))^(m+1) = I·(I + (c))^m`.
    Witness { m: u32 },
    /// Monomial `I`: every monomial of `c` satisfies every valid inequality.
    Polyhedron,
    /// Monomial `I`: a monomial of `c` violates a valid inequality.
    Facet { exponent: Vec<u32>, facet: Facet },
    /// `I ⊆ 𝔪^bound` while the lowest form of `c`, of degree `order < bound`,
    /// is nonzero in a reduced graded ring.
    OrderBound { order: u64, bound: u64 },
    /// No witness up to `m_max`.
    Exhausted { m_max: u32 },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureVerdict {
    pub status: ClosureStatus,
    pub certificate: ClosureCertificate,
}

impl ClosureVerdict {
    fn member(m: u32) -> Self {
        ClosureVerdict { status: ClosureStatus::Member, certificate: ClosureCertificate::Witness { m } }
    }

    pub fn is_member(&self) -> bool {
        self.status == ClosureStatus::Member
    }
}

/// Exponent vectors of the minimal generators of a monomial ideal in a
/// polynomial ring.
pub fn monomial_exponents(i: &IdealHandle) -> Result<Vec<Vec<u32>>> {
    if i.ring().is_quotient() {
        return Err(Error::NotMonomial);
    }
    i.canonical_generators()
        .iter()
        .map(|g| if g.is_monomial() { Ok(g.terms()[0].0.exponents().to_vec()) } else { Err(Error::NotMonomial) })
        .collect()
}

pub fn is_monomial_ideal(i: &IdealHandle) -> bool {
    monomial_exponents(i).is_ok()
}

pub fn newton_polyhedron(i: &IdealHandle) -> Result<NewtonPolyhedron> {
    let gens = monomial_exponents(i)?;
    if gens.is_empty() {
        return Err(Error::InvalidArgument("the zero ideal has no Newton polyhedron".into()));
    }
    Ok(NewtonPolyhedron::new(i.ring().nvars(), &gens))
}

/// Closure of a monomial ideal: the monomials with exponent in the Newton polyhedron.
pub fn monomial_closure(i: &IdealHandle) -> Result<IdealHandle> {
    let gens = monomial_exponents(i)?;
    if gens.is_empty() || i.is_unit() {
        return Ok(i.clone());
    }
    let p = NewtonPolyhedron::new(i.ring().nvars(), &gens);
    let base = i.base();
    let monos: Vec<Polynomial> = p
        .minimal_lattice_points()
        .into_iter()
        .map(|u| Polynomial::monomial(base, Monomial::from_exponents(&u), base.field().one()))
        .collect();
    IdealHandle::new(i.ring(), &monos)
}

/// True for polynomial rings and for quotients by squarefree monomial ideals.
pub fn certified_reduced(ring: &Ring) -> bool {
    match ring {
        Ring::Poly(_) => true,
        Ring::Quotient(q) => q
            .relations()
            .iter()
            .all(|r| r.is_monomial() && r.terms()[0].0.exponents().iter().all(|&e| e <= 1)),
    }
}

fn order_of_ideal(i: &IdealHandle) -> Option<u64> {
    i.canonical_generators().iter().filter_map(|g| g.order_at_origin()).min()
}

/// Membership of `c` in the integral closure of `I`.
pub fn is_integral_over(c: &Polynomial, i: &IdealHandle, m_max: u32) -> Result<ClosureVerdict> {
    let ring = i.ring();
    let c = ring.normalize(c);
    if i.contains(&c) {
        return Ok(ClosureVerdict::member(0));
    }
    if let Ok(gens) = monomial_exponents(i) {
        if !gens.is_empty() {
            let p = NewtonPolyhedron::new(ring.nvars(), &gens);
            for (m, _) in c.terms() {
                if let Some(f) = p.violated_facet(m.exponents()) {
                    return Ok(ClosureVerdict {
                        status: ClosureStatus::NonMember,
                        certificate: ClosureCertificate::Facet { exponent: m.exponents().to_vec(), facet: f.clone() },
                    });
                }
            }
            if let Some(m) = search_witness(&c, i, m_max)? {
                return Ok(ClosureVerdict::member(m));
            }
            return Ok(ClosureVerdict { status: ClosureStatus::Member, certificate: ClosureCertificate::Polyhedron });
        }
    }
    if let Some(v) = order_certificate(&c, i) {
        return Ok(v);
    }
    if let Some(m) = search_witness(&c, i, m_max)? {
        return Ok(ClosureVerdict::member(m));
    }
    Ok(ClosureVerdict { status: ClosureStatus::Inconclusive, certificate: ClosureCertificate::Exhausted { m_max } })
}

fn order_certificate(c: &Polynomial, i: &IdealHandle) -> Option<ClosureVerdict> {
    let ring = i.ring();
    if !certified_reduced(ring) || ring.relations().iter().any(|r| !r.is_homogeneous()) {
        return None;
    }
    let order = c.order_at_origin()?;
    let bound = order_of_ideal(i).unwrap_or(order + 1);
    if order >= bound || ring.normalize(&c.component(order)).is_zero() {
        return None;
    }
    Some(ClosureVerdict { status: ClosureStatus::NonMember, certificate: ClosureCertificate::OrderBound { order, bound } })
}

/// Smallest `m` in `1..=m_max` with `c^(m+1) ∈ I·(I + (c))^m`.
fn search_witness(c: &Polynomial, i: &IdealHandle, m_max: u32) -> Result<Option<u32>> {
    if m_max == 0 || i.is_zero() {
        return Ok(None);
    }
    let k = sum(i, &IdealHandle::principal(i.ring(), c)?)?;
    let mut km = k.clone();
    let mut cpow = c.mul(c);
    for m in 1..=m_max {
        deadline::checkpoint()?;
        let ikm = product(i, &km)?;
        if ikm.contains(&cpow) {
            return Ok(Some(m));
        }
        if m < m_max {
            km = product(&km, &k)?;
            cpow = i.ring().normalize(&cpow.mul(c));
        }
    }
    Ok(None)
}

/// `c ∈ closure(I^(a/b))`, decided as `c^b ∈ closure(I^a)`.
pub fn fractional_membership(c: &Polynomial, i: &IdealHandle, a: u32, b: u32, m_max: u32) -> Result<ClosureVerdict> {
    if a == 0 || b == 0 {
        return Err(Error::InvalidArgument("fractional exponent needs positive a and b".into()));
    }
    let ia = if a == 1 { i.clone() } else { ideal_power(i, a)? };
    is_integral_over(&c.pow(b), &ia, m_max)
}

/// Per-generator verdicts for `A ⊆ Ī`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContainmentSummary {
    pub status: ClosureStatus,
    pub verdicts: Vec<(String, ClosureVerdict)>,
}

fn summarize(verdicts: Vec<(String, ClosureVerdict)>) -> ContainmentSummary {
    let status = if verdicts.iter().any(|(_, v)| v.status == ClosureStatus::NonMember) {
        ClosureStatus::NonMember
    } else if verdicts.iter().all(|(_, v)| v.status == ClosureStatus::Member) {
        ClosureStatus::Member
    } else {
        ClosureStatus::Inconclusive
    };
    ContainmentSummary { status, verdicts }
}

/// `A ⊆ Ī`, generator by generator.
pub fn ideal_integral_containment(a: &IdealHandle, i: &IdealHandle, m_max: u32) -> Result<ContainmentSummary> {
    a.ring().check_same(i.ring())?;
    let mut verdicts = Vec::new();
    for g in a.small_generators() {
        verdicts.push((g.to_string(), is_integral_over(&g, i, m_max)?));
    }
    Ok(summarize(verdicts))
}

/// `A² ⊆ Ī`, tested on every product of two generators of `A`.
pub fn square_integral_containment(a: &IdealHandle, i: &IdealHandle, m_max: u32) -> Result<ContainmentSummary> {
    a.ring().check_same(i.ring())?;
    let gens = a.small_generators();
    let mut verdicts = Vec::new();
    for (k, f) in gens.iter().enumerate() {
        for g in &gens[k..] {
            let p = a.ring().normalize(&f.mul(g));
            verdicts.push((p.to_string(), is_integral_over(&p, i, m_max)?));
        }
    }
    Ok(summarize(verdicts))
}

/// Re-checks a verdict from its certificate alone, by routes independent of
/// the ones that produced it.
pub fn verify_verdict(c: &Polynomial, i: &IdealHandle, v: &ClosureVerdict) -> Result<bool> {
    let ring = i.ring();
    let c = ring.normalize(c);
    match (&v.status, &v.certificate) {
        (ClosureStatus::Member, ClosureCertificate::Witness { m }) => {
            if *m == 0 {
                return Ok(i.contains(&c));
            }
            let k = sum(i, &IdealHandle::principal(ring, &c)?)?;
            let lhs = ideal_power(&k, m + 1)?;
            let rhs = product(i, &ideal_power(&k, *m)?)?;
            Ok(ideals_equal(&lhs, &rhs))
        }
        (ClosureStatus::Member, ClosureCertificate::Polyhedron) => {
            let Ok(gens) = monomial_exponents(i) else { return Ok(false) };
            let facets = facets_by_enumeration(ring.nvars(), &gens);
            Ok(!gens.is_empty() && c.terms().iter().all(|(m, _)| facets.iter().all(|f| f.holds(m.exponents()))))
        }
        (ClosureStatus::NonMember, ClosureCertificate::Facet { exponent, facet }) => {
            let Ok(gens) = monomial_exponents(i) else { return Ok(false) };
            let valid = facet.normal.len() == ring.nvars()
                && facet.normal.iter().all(|&a| a >= 0)
                && gens.iter().all(|g| facet.holds(g));
            Ok(valid && !facet.holds(exponent) && c.terms().iter().any(|(m, _)| m.exponents() == exponent.as_slice()))
        }
        (ClosureStatus::NonMember, ClosureCertificate::OrderBound { order, bound }) => {
            let ideal_ok = i.canonical_generators().iter().all(|g| g.order_at_origin().is_some_and(|o| o >= *bound));
            Ok(certified_reduced(ring)
                && ring.relations().iter().all(|r| r.is_homogeneous())
                && ideal_ok
                && order < bound
                && c.order_at_origin() == Some(*order)
                && !ring.normalize(&c.component(*order)).is_zero())
        }
        (ClosureStatus::Inconclusive, ClosureCertificate::Exhausted { .. }) => Ok(true),
        _ => Ok(false),
    }
}
