//! Ideal and module calculus over polynomial rings and their quotients.

mod ideal;
mod subquotient;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use ideal::IdealHandle;
pub use subquotient::{monomials_of_degree, monomials_up_to, SubquotientModule};

use crate::deadline;
use crate::error::{Error, Result};
use crate::groebner::{relation_columns, syzygies, GroebnerBasis, ModuleElement, ModuleOrder};
use crate::polyring::{Monomial, PolyRing, Polynomial, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealOp {
    Sum,
    Product,
    Intersection,
}

pub fn ideal_combine(a: &IdealHandle, b: &IdealHandle, op: IdealOp) -> Result<IdealHandle> {
    a.ring().check_same(b.ring())?;
    match op {
        IdealOp::Sum => sum(a, b),
        IdealOp::Product => product(a, b),
        IdealOp::Intersection => intersection(a, b),
    }
}

pub fn sum(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    a.ring().check_same(b.ring())?;
    let gens = [a.gens(), b.gens()].concat();
    IdealHandle::new(a.ring(), &gens)
}

pub fn product(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    a.ring().check_same(b.ring())?;
    let (ga, gb) = (a.small_generators(), b.small_generators());
    let mut gens = Vec::with_capacity(ga.len() * gb.len());
    for f in &ga {
        for g in &gb {
            gens.push(f.mul(g));
        }
    }
    IdealHandle::new(a.ring(), &gens)
}

/// Intersection via a tag variable `t`: eliminate `t` from `t·A + (1−t)·B`.
pub fn intersection(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    a.ring().check_same(b.ring())?;
    let base = a.base();
    let lifted_a = lift(a);
    let lifted_b = lift(b);
    let gens = intersect_lifted(base, &lifted_a, &lifted_b)?;
    IdealHandle::new(a.ring(), &gens)
}

/// Generators of `A + J` over the base ring.
fn lift(a: &IdealHandle) -> Vec<Polynomial> {
    [a.gens(), a.ring().relations()].concat()
}

fn intersect_lifted(base: &Arc<PolyRing>, a: &[Polynomial], b: &[Polynomial]) -> Result<Vec<Polynomial>> {
    let tagged = base.with_tags(&["_t"]);
    let t = Polynomial::var(&tagged, 0);
    let one_minus_t = Polynomial::one(&tagged).sub(&t);
    let embed = |f: &Polynomial| {
        Polynomial::from_terms(&tagged, f.terms().iter().map(|(m, c)| (m.prepend_zeros(1), c.clone())).collect())
    };
    let mut gens: Vec<Polynomial> = a.iter().map(|f| t.mul(&embed(f))).collect();
    gens.extend(b.iter().map(|f| one_minus_t.mul(&embed(f))));
    let gb = GroebnerBasis::of_ideal(&Ring::Poly(tagged.clone()), &gens)?;
    Ok(gb
        .polys()
        .into_iter()
        .filter(|g| g.terms().iter().all(|(m, _)| m.exponents()[0] == 0))
        .map(|g| Polynomial::from_terms(base, g.into_terms().into_iter().map(|(m, c)| (m.drop_leading(1), c)).collect()))
        .collect())
}

/// Intersection of submodules of `R^rank` from the syzygies of `[N1 | N2]`.
pub fn submodule_intersection(ring: &Ring, rank: usize, n1: &[ModuleElement], n2: &[ModuleElement]) -> Result<Vec<ModuleElement>> {
    let order = ModuleOrder::of(ring.base());
    let rel = relation_columns(ring, rank);
    let mut gens: Vec<ModuleElement> = n1.to_vec();
    gens.extend_from_slice(n2);
    gens.extend(rel.iter().cloned());
    if n1.is_empty() || n2.is_empty() {
        return Ok(Vec::new());
    }
    let syz = syzygies(&gens, ring.base())?;
    let mut out = Vec::new();
    for c in &syz.columns {
        let coeffs = c.slice(0, n1.len());
        let v = crate::groebner::apply_columns(n1, &coeffs, rank, order);
        let v = crate::groebner::normalize_element(ring, &v);
        if !v.is_zero() && !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

/// Ideal intersection through module syzygies; an independent route to
/// [`intersection`].
pub fn intersection_via_syzygies(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    a.ring().check_same(b.ring())?;
    let n1: Vec<ModuleElement> = a.gens().iter().map(ModuleElement::from_poly).collect();
    let n2: Vec<ModuleElement> = b.gens().iter().map(ModuleElement::from_poly).collect();
    let v = submodule_intersection(a.ring(), 1, &n1, &n2)?;
    let gens: Vec<Polynomial> = v.iter().map(|e| e.component(0, a.base())).collect();
    IdealHandle::new(a.ring(), &gens)
}

pub fn ideal_power(a: &IdealHandle, m: u32) -> Result<IdealHandle> {
    if m == 0 {
        return Err(Error::InvalidArgument("power must be positive".into()));
    }
    let mut acc = a.clone();
    for _ in 1..m {
        deadline::checkpoint()?;
        acc = product(&acc, a)?;
    }
    Ok(acc)
}

/// `A : (f)`, as `(A ∩ (f)) / f` computed over the base ring.
pub fn colon_element(a: &IdealHandle, f: &Polynomial) -> Result<IdealHandle> {
    let f = a.ring().normalize(f);
    if f.is_zero() {
        return Ok(IdealHandle::unit(a.ring()));
    }
    let base = a.base();
    let inter = intersect_lifted(base, &lift(a), std::slice::from_ref(&f))?;
    let mut gens = Vec::with_capacity(inter.len());
    for g in inter {
        gens.push(g.exact_div(&f).ok_or_else(|| Error::InvalidArgument("intersection with (f) not divisible by f".into()))?);
    }
    IdealHandle::new(a.ring(), &gens)
}

/// `A : B = ∩_b (A : b)` over generators `b` of `B`.
pub fn colon(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    a.ring().check_same(b.ring())?;
    let mut acc = IdealHandle::unit(a.ring());
    for g in b.small_generators() {
        if a.contains(&g) {
            continue;
        }
        let c = colon_element(a, &g)?;
        acc = if acc.is_unit() { c } else { intersection(&acc, &c)? };
    }
    Ok(acc)
}

/// `A : B` by elimination on `R^2`; an independent route to [`colon`].
pub fn colon_via_elimination(a: &IdealHandle, b: &IdealHandle) -> Result<IdealHandle> {
    let ring = a.ring();
    let mut acc = IdealHandle::unit(ring);
    for g in b.small_generators() {
        let z = ModuleElement::from_poly(&g);
        let bnd: Vec<ModuleElement> = a.gens().iter().map(ModuleElement::from_poly).collect();
        let c = module_colon(ring, 1, &z, &bnd)?;
        acc = intersection(&acc, &c)?;
    }
    Ok(acc)
}

/// `{r : r·z ∈ span(B)}` in `R^rank`, via a Gröbner basis of `(z, 1), (b, 0)`
/// in `R^(rank+1)` under position-over-term.
pub fn module_colon(ring: &Ring, rank: usize, z: &ModuleElement, bnd: &[ModuleElement]) -> Result<IdealHandle> {
    let order = ModuleOrder::of(ring.base());
    let nv = ring.nvars();
    let field = ring.field();
    let mut gens = Vec::with_capacity(bnd.len() + 1);
    gens.push(z.embed(rank + 1, 0, order).add(&ModuleElement::unit(rank + 1, rank, nv, field), order));
    gens.extend(bnd.iter().map(|b| b.embed(rank + 1, 0, order)));
    let gb = GroebnerBasis::compute(ring, rank + 1, &gens)?;
    let base = ring.base();
    let polys: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|g| g.leading().is_some_and(|t| t.comp == rank))
        .map(|g| g.component(rank, base))
        .collect();
    IdealHandle::new(ring, &polys)
}

/// `Ann(Z/B) = ∩_z (B : z)`.
pub fn annihilator(m: &SubquotientModule) -> Result<IdealHandle> {
    let ring = m.ring();
    let bb = m.boundary_basis()?;
    let mut acc = IdealHandle::unit(ring);
    for z in m.cycles() {
        deadline::checkpoint()?;
        if bb.contains(z) {
            continue;
        }
        let c = module_colon(ring, m.rank(), z, m.boundaries())?;
        acc = if acc.is_unit() { c } else { intersection(&acc, &c)? };
    }
    Ok(acc)
}

/// Minimal generators and their number.
pub fn minimal_generators(a: &IdealHandle) -> Result<(Vec<Polynomial>, usize)> {
    let g = a.minimal_generators()?;
    let n = g.len();
    Ok((g, n))
}

/// `(dim R/A, height A)`. In a quotient ring the height is taken relative to
/// the ambient quotient: `dim R − dim R/A`.
pub fn dimension_and_height(a: &IdealHandle) -> Result<(usize, usize)> {
    let d = a.dimension().ok_or(Error::UnitIdeal)?;
    let ambient = IdealHandle::zero(a.ring()).dimension().unwrap_or(0);
    Ok((d, ambient.saturating_sub(d)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Length {
    Finite(u64),
    Infinite,
}

/// Length of `R/A` by counting standard monomials.
pub fn length(a: &IdealHandle) -> Length {
    match a.dimension() {
        None => Length::Finite(0),
        Some(d) if d > 0 => Length::Infinite,
        Some(_) => Length::Finite(standard_monomials(a).len() as u64),
    }
}

/// Monomials outside the leading-term ideal; requires `dim R/A = 0`.
pub fn standard_monomials(a: &IdealHandle) -> Vec<Monomial> {
    let leads = a.leading_monomials();
    let n = a.ring().nvars();
    let mut out = Vec::new();
    if a.is_unit() {
        return out;
    }
    for d in 0.. {
        let fresh: Vec<Monomial> =
            monomials_of_degree(n, d).into_iter().filter(|m| !leads.iter().any(|l| l.divides(m))).collect();
        if fresh.is_empty() {
            break;
        }
        out.extend(fresh);
    }
    out
}

pub fn socle_colon(a: &IdealHandle) -> Result<IdealHandle> {
    colon(a, &IdealHandle::maximal(a.ring()))
}

pub fn ideals_equal(a: &IdealHandle, b: &IdealHandle) -> bool {
    a.equals(b)
}

/// `(a) : ((a) : A)` for an element `a ∈ A`.
pub fn bidual_via_colon(a_ideal: &IdealHandle, a: &Polynomial) -> Result<IdealHandle> {
    if !a_ideal.contains(a) {
        return Err(Error::NotInIdeal(a.to_string()));
    }
    let p = IdealHandle::principal(a_ideal.ring(), a)?;
    let inner = colon(&p, a_ideal)?;
    colon(&p, &inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::QuotientRing;

    fn ring(vars: &[&str]) -> Ring {
        Ring::Poly(PolyRing::rational(vars))
    }

    fn x(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r.base(), i)
    }

    fn ideal(r: &Ring, g: &[Polynomial]) -> IdealHandle {
        IdealHandle::new(r, g).unwrap()
    }

    #[test]
    fn intersection_of_coprime_principals() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, &[x(&r, 0)]);
        let b = ideal(&r, &[x(&r, 1)]);
        let c = intersection(&a, &b).unwrap();
        assert!(c.equals(&ideal(&r, &[x(&r, 0).mul(&x(&r, 1))])));
        assert!(intersection_via_syzygies(&a, &b).unwrap().equals(&c));
    }

    #[test]
    fn product_and_power() {
        let r = ring(&["x", "y"]);
        let m = IdealHandle::maximal(&r);
        let m2 = ideal_power(&m, 2).unwrap();
        assert_eq!(m2.mu().unwrap(), 3);
        assert!(ideal_power(&m, 1).unwrap().equals(&m));
        let a = ideal(&r, &[x(&r, 0)]);
        assert!(product(&a, &a).unwrap().equals(&ideal(&r, &[x(&r, 0).pow(2)])));
    }

    #[test]
    fn colon_basics() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, &[x(&r, 0).pow(2)]);
        let b = ideal(&r, &[x(&r, 0)]);
        assert!(colon(&a, &b).unwrap().equals(&b));
        assert!(colon(&a, &IdealHandle::unit(&r)).unwrap().equals(&a));
        let m = IdealHandle::maximal(&r);
        assert!(colon(&m, &m).unwrap().is_unit());
    }

    #[test]
    fn socle_of_squares() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, &[x(&r, 0).pow(2), x(&r, 1).pow(2)]);
        let s = socle_colon(&a).unwrap();
        let expected = ideal(&r, &[x(&r, 0).pow(2), x(&r, 1).pow(2), x(&r, 0).mul(&x(&r, 1))]);
        assert!(s.equals(&expected));
        assert!(colon_via_elimination(&a, &IdealHandle::maximal(&r)).unwrap().equals(&expected));
    }

    #[test]
    fn dimension_height_length() {
        let r = ring(&["x", "y"]);
        let m = IdealHandle::maximal(&r);
        assert_eq!(dimension_and_height(&m).unwrap(), (0, 2));
        assert_eq!(dimension_and_height(&ideal(&r, &[x(&r, 0)])).unwrap(), (1, 1));
        assert_eq!(length(&ideal_power(&m, 2).unwrap()), Length::Finite(3));
        assert_eq!(length(&ideal(&r, &[x(&r, 0).pow(2), x(&r, 1).pow(3)])), Length::Finite(6));
        assert_eq!(length(&ideal(&r, &[x(&r, 0)])), Length::Infinite);
        let r1 = ring(&["x"]);
        assert_eq!(length(&ideal(&r1, &[x(&r1, 0).pow(5)])), Length::Finite(5));
        assert!(dimension_and_height(&IdealHandle::unit(&r)).is_err());
    }

    #[test]
    fn annihilators_of_cyclic_and_zero_modules() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, &[x(&r, 0).pow(2), x(&r, 0).mul(&x(&r, 1))]);
        assert!(annihilator(&SubquotientModule::cyclic(&a)).unwrap().equals(&a));
        let zero = SubquotientModule::new(&r, 1, vec![], vec![]).unwrap();
        assert!(annihilator(&zero).unwrap().is_unit());
        let r1 = ring(&["x"]);
        let m = SubquotientModule::new(
            &r1,
            1,
            vec![ModuleElement::from_poly(&x(&r1, 0))],
            vec![ModuleElement::from_poly(&x(&r1, 0).pow(2))],
        )
        .unwrap();
        assert!(annihilator(&m).unwrap().equals(&ideal(&r1, &[x(&r1, 0)])));
    }

    #[test]
    fn quotient_ring_colon() {
        let base = PolyRing::rational(&["x", "y"]);
        let q = QuotientRing::new(base.clone(), &[Polynomial::var(&base, 0).mul(&Polynomial::var(&base, 1))]).unwrap();
        let r = Ring::Quotient(q);
        // in k[x,y]/(xy): 0 : x = (y)
        let zero = IdealHandle::zero(&r);
        let c = colon_element(&zero, &x(&r, 0)).unwrap();
        assert!(c.equals(&ideal(&r, &[x(&r, 1)])));
    }

    #[test]
    fn minimal_generators_counts() {
        let r = ring(&["x", "y"]);
        let a = ideal(&r, &[x(&r, 0).pow(2), x(&r, 0).mul(&x(&r, 1)), x(&r, 1).pow(2), x(&r, 0).pow(3)]);
        assert_eq!(minimal_generators(&a).unwrap().1, 3);
        assert_eq!(IdealHandle::unit(&r).mu().unwrap(), 1);
        let nh = ideal(&r, &[x(&r, 0).add(&x(&r, 1).pow(2))]);
        assert!(matches!(nh.minimal_generators(), Err(Error::NotHomogeneous(_))));
        assert!(ideals_equal(&ideal(&r, &[x(&r, 0), x(&r, 1)]), &ideal(&r, &[x(&r, 1), x(&r, 0).add(&x(&r, 1))])));
    }

    #[test]
    fn bidual_of_principal_is_itself() {
        let r = ring(&["x", "y"]);
        let f = x(&r, 0).mul(&x(&r, 1));
        let a = ideal(&r, &[f.clone()]);
        assert!(bidual_via_colon(&a, &f).unwrap().equals(&a));
        assert!(bidual_via_colon(&a, &x(&r, 0)).is_err());
    }
}
