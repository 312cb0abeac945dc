//! Gröbner bases of ideals and submodules of free modules, over polynomial
//! rings and their quotients.

mod buchberger;
mod element;
mod syzygy;

use std::sync::Arc;

pub use element::{ModTerm, ModuleElement, ModuleOrder, Position};
pub use syzygy::{kernel_generators, kernel_of_map, minimalize, syzygies, SyzygyMatrix};

pub(crate) use buchberger::divide;
use buchberger::{reduce_full, Engine};

use crate::error::{Error, Result};
use crate::polyring::{PolyRing, Polynomial, Ring};

/// Reduced Gröbner basis of a submodule of `R^rank`. Over a quotient ring
/// `S/J` the basis lives in `S^rank` and includes `J·S^rank`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Ring,
    rank: usize,
    order: ModuleOrder,
    elements: Vec<ModuleElement>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank && self.order == other.order && self.elements == other.elements
    }
}

/// `J·e_k` for every relation and every basis vector.
pub(crate) fn relation_columns(ring: &Ring, rank: usize) -> Vec<ModuleElement> {
    let mut out = Vec::new();
    for k in 0..rank {
        for r in ring.relations() {
            out.push(ModuleElement::from_poly_at(r, rank, k));
        }
    }
    out
}

impl GroebnerBasis {
    pub fn compute(ring: &Ring, rank: usize, gens: &[ModuleElement]) -> Result<Self> {
        Self::compute_with_order(ring, rank, gens, ModuleOrder::of(ring.base()))
    }

    pub fn compute_with_order(ring: &Ring, rank: usize, gens: &[ModuleElement], order: ModuleOrder) -> Result<Self> {
        for g in gens {
            if g.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: g.rank() });
            }
        }
        let mut all: Vec<ModuleElement> = gens.iter().map(|g| g.resort(order)).collect();
        all.extend(relation_columns(ring, rank).into_iter().map(|g| g.resort(order)));
        let base = ring.base();
        let out = Engine::new(rank, base.nvars(), base.field(), order).run(&all, false)?;
        Ok(GroebnerBasis { ring: ring.clone(), rank, order, elements: out.basis })
    }

    /// Ideal generated by `gens`.
    pub fn of_ideal(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        for g in gens {
            if !PolyRing::same(g.ring(), ring.base()) {
                return Err(Error::RingMismatch);
            }
        }
        let gens: Vec<ModuleElement> = gens.iter().map(ModuleElement::from_poly).collect();
        Self::compute(ring, 1, &gens)
    }

    /// Basis together with each element written in terms of `gens`
    /// (relation columns over a quotient ring are not tracked separately:
    /// they are appended after `gens`).
    pub fn tracked(ring: &Ring, rank: usize, gens: &[ModuleElement]) -> Result<(Self, Vec<ModuleElement>)> {
        let order = ModuleOrder::of(ring.base());
        let mut all: Vec<ModuleElement> = gens.to_vec();
        all.extend(relation_columns(ring, rank));
        let base = ring.base();
        let out = Engine::new(rank, base.nvars(), base.field(), order).run(&all, true)?;
        let gb = GroebnerBasis { ring: ring.clone(), rank, order, elements: out.basis };
        Ok((gb, out.reps.unwrap_or_default()))
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        self.ring.base()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn order(&self) -> ModuleOrder {
        self.order
    }

    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// True when the submodule is the whole free module.
    pub fn is_everything(&self) -> bool {
        (0..self.rank).all(|k| self.elements.iter().any(|g| g.leading().is_some_and(|t| t.comp == k && t.mono.is_one())))
    }

    pub fn normal_form(&self, v: &ModuleElement) -> ModuleElement {
        let divisors: Vec<(&ModuleElement, Option<&ModuleElement>)> = self.elements.iter().map(|g| (g, None)).collect();
        reduce_full(v.resort(self.order), None, &divisors, self.order).0
    }

    pub fn contains(&self, v: &ModuleElement) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn contains_all(&self, vs: &[ModuleElement]) -> bool {
        vs.iter().all(|v| self.contains(v))
    }

    /// Containment of submodules, given by bases over the same ring.
    pub fn is_submodule_of(&self, other: &GroebnerBasis) -> bool {
        self.rank == other.rank && self.elements.iter().all(|g| other.contains(g))
    }

    /// Ideal-case helpers.
    pub fn polys(&self) -> Vec<Polynomial> {
        assert_eq!(self.rank, 1, "not an ideal");
        self.elements.iter().map(|g| g.component(0, self.base())).collect()
    }

    /// Basis elements that are nonzero modulo the defining relations.
    pub fn generators_mod_relations(&self) -> Vec<ModuleElement> {
        if !self.ring.is_quotient() {
            return self.elements.clone();
        }
        let rel = relation_basis(&self.ring, self.rank);
        self.elements.iter().filter(|g| !rel.contains(g)).cloned().collect()
    }

    pub fn normal_form_poly(&self, f: &Polynomial) -> Polynomial {
        self.normal_form(&ModuleElement::from_poly(f)).component(0, self.base())
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        self.normal_form_poly(f).is_zero()
    }

    /// Expresses each basis element's leading-term data for staircase computations.
    pub fn leading_terms(&self) -> Vec<(usize, crate::polyring::Monomial)> {
        self.elements.iter().map(|g| {
            let t = g.leading().unwrap();
            (t.comp, t.mono.clone())
        }).collect()
    }
}

/// Basis of `J·S^rank` for a quotient ring.
pub(crate) fn relation_basis(ring: &Ring, rank: usize) -> GroebnerBasis {
    GroebnerBasis::compute(&Ring::Poly(ring.base().clone()), rank, &relation_columns(ring, rank))
        .expect("relation basis without deadline pressure")
}

pub fn ideal_membership(f: &Polynomial, g: &GroebnerBasis) -> bool {
    g.contains_poly(f)
}

/// Reduced monic basis of the ideal generated by `gens`, sorted descending.
pub fn reduced_basis_of_polys(base: &Arc<PolyRing>, gens: &[Polynomial]) -> Result<Vec<Polynomial>> {
    Ok(GroebnerBasis::of_ideal(&Ring::Poly(base.clone()), gens)?.polys())
}

/// Normal form of `f` with respect to a Gröbner basis given as polynomials.
pub fn normal_form_poly(f: &Polynomial, basis: &[Polynomial]) -> Polynomial {
    let order = ModuleOrder::of(f.ring());
    let elems: Vec<ModuleElement> = basis.iter().map(ModuleElement::from_poly).collect();
    let divisors: Vec<(&ModuleElement, Option<&ModuleElement>)> = elems.iter().map(|g| (g, None)).collect();
    reduce_full(ModuleElement::from_poly(f), None, &divisors, order).0.component(0, f.ring())
}

/// `Σ v_j · columns_j`.
pub fn apply_columns(columns: &[ModuleElement], v: &ModuleElement, target_rank: usize, order: ModuleOrder) -> ModuleElement {
    let mut acc = ModuleElement::zero(target_rank);
    for t in v.terms() {
        acc = acc.add_scaled(&columns[t.comp], &t.coef, &t.mono, order);
    }
    acc
}

/// Reduces each entry modulo the defining relations.
pub fn normalize_element(ring: &Ring, v: &ModuleElement) -> ModuleElement {
    if !ring.is_quotient() {
        return v.clone();
    }
    let base = ring.base();
    let polys: Vec<Polynomial> = v.to_polys(base).iter().map(|p| ring.normalize(p)).collect();
    ModuleElement::from_polys(&polys, ModuleOrder::of(base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Field, MonomialOrder};

    fn ring4() -> Arc<PolyRing> {
        PolyRing::rational(&["x", "y", "z", "w"])
    }

    fn p(r: &Arc<PolyRing>, terms: &[(i64, &[u32])]) -> Polynomial {
        let f = r.field();
        Polynomial::from_terms(
            r,
            terms.iter().map(|(c, e)| (crate::polyring::Monomial::from_exponents(e), f.from_i64(*c))).collect(),
        )
    }

    #[test]
    fn binomial_ideal_golden_basis() {
        let r = ring4();
        let gens = vec![
            p(&r, &[(1, &[2, 0, 0, 0]), (-1, &[1, 1, 0, 0])]),
            p(&r, &[(-1, &[1, 1, 0, 0]), (1, &[0, 2, 0, 0])]),
            p(&r, &[(1, &[0, 0, 2, 0]), (-1, &[0, 0, 1, 1])]),
            p(&r, &[(-1, &[0, 0, 1, 1]), (1, &[0, 0, 0, 2])]),
        ];
        let gb = reduced_basis_of_polys(&r, &gens).unwrap();
        // Reference values computed independently with sympy (grevlex, x > y > z > w).
        let expected = vec![
            p(&r, &[(1, &[2, 0, 0, 0]), (-1, &[0, 2, 0, 0])]),
            p(&r, &[(1, &[1, 1, 0, 0]), (-1, &[0, 2, 0, 0])]),
            p(&r, &[(1, &[0, 0, 2, 0]), (-1, &[0, 0, 0, 2])]),
            p(&r, &[(1, &[0, 0, 1, 1]), (-1, &[0, 0, 0, 2])]),
        ];
        assert_eq!(gb, expected);
        let c = p(&r, &[(1, &[1, 0, 1, 0]), (-1, &[0, 1, 1, 0]), (-1, &[1, 0, 0, 1]), (1, &[0, 1, 0, 1])]);
        assert!(!normal_form_poly(&c, &gb).is_zero());
    }

    #[test]
    fn principal_ideal_is_made_monic() {
        let r = PolyRing::rational(&["x"]);
        let gb = reduced_basis_of_polys(&r, &[p(&r, &[(3, &[2])])]).unwrap();
        assert_eq!(gb, vec![p(&r, &[(1, &[2])])]);
    }

    #[test]
    fn zero_input_gives_empty_basis() {
        let r = PolyRing::rational(&["x"]);
        assert!(reduced_basis_of_polys(&r, &[Polynomial::zero(&r)]).unwrap().is_empty());
        assert!(reduced_basis_of_polys(&r, &[]).unwrap().is_empty());
    }

    #[test]
    fn example_four_three_basis() {
        let r = PolyRing::rational(&["x", "y"]);
        let gens = vec![
            p(&r, &[(1, &[5, 0]), (-1, &[0, 5])]),
            p(&r, &[(1, &[4, 1])]),
            p(&r, &[(1, &[1, 4])]),
        ];
        let gb = reduced_basis_of_polys(&r, &gens).unwrap();
        let expected = vec![
            p(&r, &[(1, &[0, 6])]),
            p(&r, &[(1, &[5, 0]), (-1, &[0, 5])]),
            p(&r, &[(1, &[4, 1])]),
            p(&r, &[(1, &[1, 4])]),
        ];
        let mut a = gb.clone();
        let mut b = expected;
        a.sort_by_key(|f| f.to_string());
        b.sort_by_key(|f| f.to_string());
        assert_eq!(a, b);
    }

    #[test]
    fn membership_basics() {
        let r = ring4();
        let i = GroebnerBasis::of_ideal(
            &Ring::Poly(r.clone()),
            &[p(&r, &[(1, &[1, 0, 0, 0]), (-1, &[0, 1, 0, 0])]), p(&r, &[(1, &[0, 0, 1, 0]), (-1, &[0, 0, 0, 1])])],
        )
        .unwrap();
        assert!(ideal_membership(&p(&r, &[(1, &[1, 0, 0, 0]), (-1, &[0, 1, 0, 0])]), &i));
        let m = GroebnerBasis::of_ideal(&Ring::Poly(r.clone()), &[Polynomial::var(&r, 0), Polynomial::var(&r, 1)]).unwrap();
        assert!(!ideal_membership(&Polynomial::one(&r), &m));
    }

    #[test]
    fn lex_and_prime_field() {
        let r = PolyRing::new(&["x", "y"], Field::prime(101).unwrap(), MonomialOrder::Lex).unwrap();
        let gens = vec![p(&r, &[(1, &[2, 0]), (-1, &[0, 1])]), p(&r, &[(1, &[1, 1]), (-1, &[0, 0])])];
        let gb = reduced_basis_of_polys(&r, &gens).unwrap();
        // x^2 - y, xy - 1 gives x - y^2 and y^3 - 1 under lex
        assert_eq!(gb.len(), 2);
        assert_eq!(gb[0], p(&r, &[(1, &[1, 0]), (-1, &[0, 2])]));
        assert_eq!(gb[1], p(&r, &[(1, &[0, 3]), (-1, &[0, 0])]));
    }
}
