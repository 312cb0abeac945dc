use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::groebner::{minimalize, GroebnerBasis, ModuleElement};
use crate::polyring::{Monomial, PolyRing, Polynomial, Ring};

struct Inner {
    ring: Ring,
    gens: Vec<Polynomial>,
    basis: GroebnerBasis,
    dimension: OnceLock<Option<usize>>,
    mingens: OnceLock<Result<Vec<Polynomial>>>,
}

/// An ideal with its reduced Gröbner basis and lazily filled invariants.
/// Cloning is cheap.
#[derive(Clone)]
pub struct IdealHandle(Arc<Inner>);

impl IdealHandle {
    pub fn new(ring: &Ring, gens: &[Polynomial]) -> Result<Self> {
        for g in gens {
            if !PolyRing::same(g.ring(), ring.base()) {
                return Err(Error::RingMismatch);
            }
        }
        let gens: Vec<Polynomial> = gens.iter().map(|g| ring.normalize(g)).filter(|g| !g.is_zero()).collect();
        let basis = GroebnerBasis::of_ideal(ring, &gens)?;
        Ok(Self::assemble(ring.clone(), gens, basis))
    }

    pub(crate) fn assemble(ring: Ring, gens: Vec<Polynomial>, basis: GroebnerBasis) -> Self {
        IdealHandle(Arc::new(Inner { ring, gens, basis, dimension: OnceLock::new(), mingens: OnceLock::new() }))
    }

    pub fn principal(ring: &Ring, f: &Polynomial) -> Result<Self> {
        Self::new(ring, std::slice::from_ref(f))
    }

    pub fn unit(ring: &Ring) -> Self {
        Self::new(ring, &[Polynomial::one(ring.base())]).expect("unit ideal")
    }

    pub fn zero(ring: &Ring) -> Self {
        Self::new(ring, &[]).expect("zero ideal")
    }

    /// The ideal of all variables.
    pub fn maximal(ring: &Ring) -> Self {
        let vars: Vec<Polynomial> = (0..ring.nvars()).map(|i| Polynomial::var(ring.base(), i)).collect();
        Self::new(ring, &vars).expect("maximal ideal")
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn base(&self) -> &Arc<PolyRing> {
        self.0.ring.base()
    }

    /// Generators as supplied, reduced modulo the ring's relations.
    pub fn gens(&self) -> &[Polynomial] {
        &self.0.gens
    }

    pub fn basis(&self) -> &GroebnerBasis {
        &self.0.basis
    }

    /// Reduced basis with the ring's own relations removed: the canonical
    /// printed form.
    pub fn canonical_generators(&self) -> Vec<Polynomial> {
        let base = self.base();
        self.0.basis.generators_mod_relations().iter().map(|g| g.component(0, base)).collect()
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.0.basis.contains_poly(f)
    }

    pub fn contains_ideal(&self, other: &IdealHandle) -> bool {
        other.gens().iter().all(|g| self.contains(g))
    }

    pub fn equals(&self, other: &IdealHandle) -> bool {
        self.ring().same(other.ring()) && self.0.basis == other.0.basis
    }

    pub fn is_unit(&self) -> bool {
        self.0.basis.is_everything()
    }

    pub fn is_zero(&self) -> bool {
        self.0.gens.is_empty()
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.0.basis.normal_form_poly(f)
    }

    /// True when every user generator is homogeneous (and so is the ring).
    pub fn is_homogeneous(&self) -> bool {
        self.ring().relations().iter().all(|r| r.is_homogeneous()) && self.canonical_generators().iter().all(|g| g.is_homogeneous())
    }

    /// Leading monomials of the basis over the base ring (relations included).
    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.0.basis.leading_terms().into_iter().map(|(_, m)| m).collect()
    }

    /// Krull dimension of the quotient; `None` for the unit ideal.
    pub fn dimension(&self) -> Option<usize> {
        *self.0.dimension.get_or_init(|| {
            if self.is_unit() {
                return None;
            }
            Some(dimension_of_leads(&self.leading_monomials(), self.ring().nvars()))
        })
    }

    pub fn is_m_primary(&self) -> bool {
        self.dimension() == Some(0)
    }

    /// Minimal homogeneous generators.
    pub fn minimal_generators(&self) -> Result<Vec<Polynomial>> {
        self.0.mingens.get_or_init(|| self.compute_minimal_generators()).clone()
    }

    pub fn mu(&self) -> Result<usize> {
        Ok(self.minimal_generators()?.len())
    }

    fn compute_minimal_generators(&self) -> Result<Vec<Polynomial>> {
        if self.is_unit() {
            return Ok(vec![Polynomial::one(self.base())]);
        }
        if self.is_zero() {
            return Ok(Vec::new());
        }
        if self.ring().relations().iter().any(|r| !r.is_homogeneous()) {
            return Err(Error::NotHomogeneous("ring relations".into()));
        }
        let candidates = if self.gens().iter().all(|g| g.is_homogeneous()) {
            self.gens().to_vec()
        } else {
            let c = self.canonical_generators();
            if !c.iter().all(|g| g.is_homogeneous()) {
                return Err(Error::NotHomogeneous(format!("ideal {self}")));
            }
            c
        };
        let cols: Vec<ModuleElement> = candidates.iter().map(ModuleElement::from_poly).collect();
        let min = minimalize(&cols, &[0], self.ring())?;
        let base = self.base();
        Ok(min.iter().map(|c| c.component(0, base)).collect())
    }

    /// Generators suited to iterated constructions: minimal when graded.
    pub fn small_generators(&self) -> Vec<Polynomial> {
        match self.minimal_generators() {
            Ok(g) => g,
            Err(_) => self.canonical_generators(),
        }
    }
}

/// Largest set of variables containing the support of no leading monomial.
pub(crate) fn dimension_of_leads(leads: &[Monomial], nvars: usize) -> usize {
    let supports: Vec<u64> = leads.iter().map(|m| m.support().fold(0u64, |acc, i| acc | (1 << i))).collect();
    let mut best = 0;
    for mask in 0u64..(1u64 << nvars) {
        let size = mask.count_ones() as usize;
        if size > best && supports.iter().all(|s| s & !mask != 0) {
            best = size;
        }
    }
    best
}

impl fmt::Display for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.canonical_generators().iter().map(|g| g.to_string()).collect();
        write!(f, "({})", gens.join(", "))
    }
}

impl fmt::Debug for IdealHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IdealHandle{self}")
    }
}
