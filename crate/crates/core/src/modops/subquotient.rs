use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::groebner::{normalize_element, GroebnerBasis, ModuleElement, ModuleOrder};
use crate::polyring::{Monomial, Polynomial, Ring};

use super::ideal::IdealHandle;

/// The module `Z/B` for submodules `B ⊆ Z` of a free module `R^rank`.
#[derive(Clone, Debug)]
pub struct SubquotientModule {
    ring: Ring,
    rank: usize,
    cycles: Vec<ModuleElement>,
    boundaries: Vec<ModuleElement>,
}

impl SubquotientModule {
    /// Checks that every boundary lies in the span of the cycles.
    pub fn new(ring: &Ring, rank: usize, cycles: Vec<ModuleElement>, boundaries: Vec<ModuleElement>) -> Result<Self> {
        let m = Self::new_unchecked(ring, rank, cycles, boundaries)?;
        let z = GroebnerBasis::compute(ring, rank, &m.cycles)?;
        if let Some(b) = m.boundaries.iter().find(|b| !z.contains(b)) {
            return Err(Error::InvalidArgument(format!(
                "boundary {} is not in the span of the cycles",
                b.display(ring.base())
            )));
        }
        Ok(m)
    }

    /// Builds without the containment check (callers that know `B ⊆ Z`).
    pub fn new_unchecked(ring: &Ring, rank: usize, cycles: Vec<ModuleElement>, boundaries: Vec<ModuleElement>) -> Result<Self> {
        for v in cycles.iter().chain(&boundaries) {
            if v.rank() != rank {
                return Err(Error::RankMismatch { expected: rank, found: v.rank() });
            }
        }
        let clean = |vs: Vec<ModuleElement>| -> Vec<ModuleElement> {
            vs.iter().map(|v| normalize_element(ring, v)).filter(|v| !v.is_zero()).collect()
        };
        Ok(SubquotientModule { ring: ring.clone(), rank, cycles: clean(cycles), boundaries: clean(boundaries) })
    }

    /// The cyclic module `R/A` as `R/A ⊆ R^1`.
    pub fn cyclic(a: &IdealHandle) -> Self {
        let ring = a.ring().clone();
        let one = ModuleElement::unit(1, 0, ring.nvars(), ring.field());
        let b = a.gens().iter().map(ModuleElement::from_poly).collect();
        SubquotientModule { ring, rank: 1, cycles: vec![one], boundaries: b }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn cycles(&self) -> &[ModuleElement] {
        &self.cycles
    }

    pub fn boundaries(&self) -> &[ModuleElement] {
        &self.boundaries
    }

    pub fn boundary_basis(&self) -> Result<GroebnerBasis> {
        GroebnerBasis::compute(&self.ring, self.rank, &self.boundaries)
    }

    /// True when every cycle is a boundary.
    pub fn is_zero(&self) -> Result<bool> {
        if self.cycles.is_empty() {
            return Ok(true);
        }
        let b = self.boundary_basis()?;
        Ok(self.cycles.iter().all(|z| b.contains(z)))
    }

    /// Cycles that are not boundaries.
    pub fn nonzero_cycles(&self) -> Result<Vec<ModuleElement>> {
        let b = self.boundary_basis()?;
        Ok(self.cycles.iter().filter(|z| !b.contains(z)).cloned().collect())
    }

    /// Whether `f` kills the module.
    pub fn annihilated_by(&self, f: &Polynomial) -> Result<bool> {
        let b = self.boundary_basis()?;
        let order = ModuleOrder::of(self.ring.base());
        Ok(self.cycles.iter().all(|z| b.contains(&z.mul_poly(f, order))))
    }

    /// `{r : r·Z ⊆ B}`.
    pub fn annihilator(&self) -> Result<IdealHandle> {
        super::annihilator(self)
    }

    /// Length of a graded finite-length subquotient, where `e_k` has degree
    /// `twists[k]`. Returns `None` when the length is infinite.
    pub fn length(&self, twists: &[i64]) -> Result<Option<u64>> {
        if self.is_zero()? {
            return Ok(Some(0));
        }
        let ann = self.annihilator()?;
        if !ann.is_m_primary() {
            return Ok(None);
        }
        let n = self.ring.nvars();
        // every monomial of degree >= top is in the annihilator
        let top = (0..)
            .find(|&d| monomials_of_degree(n, d).iter().all(|m| ann.leading_monomials().iter().any(|l| l.divides(m))))
            .expect("m-primary annihilator");
        let zmax = self
            .cycles
            .iter()
            .filter_map(|z| z.max_degree(twists))
            .max()
            .unwrap_or(0);
        let zmin = self.cycles.iter().filter_map(|z| z.terms().iter().map(|t| ModuleElement::term_degree(t, twists)).min()).min().unwrap_or(0);
        let zb = GroebnerBasis::compute(&self.ring, self.rank, &[self.cycles.clone(), self.boundaries.clone()].concat())?;
        let bb = self.boundary_basis()?;
        let mut total: i64 = 0;
        for d in zmin..=zmax + top as i64 {
            total += standard_count(&bb, twists, d, n) as i64 - standard_count(&zb, twists, d, n) as i64;
        }
        Ok(Some(total as u64))
    }
}

/// Number of terms `m·e_k` of degree `d` not divisible by any leading term.
fn standard_count(gb: &GroebnerBasis, twists: &[i64], d: i64, n: usize) -> usize {
    let leads = gb.leading_terms();
    let mut count = 0;
    for (k, &tw) in twists.iter().enumerate() {
        let md = d - tw;
        if md < 0 {
            continue;
        }
        for m in monomials_of_degree(n, md as u64) {
            if !leads.iter().any(|(c, l)| *c == k && l.divides(&m)) {
                count += 1;
            }
        }
    }
    count
}

/// All monomials of total degree `d` in `n` variables.
pub fn monomials_of_degree(n: usize, d: u64) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(i: usize, left: u64, exps: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        let n = exps.len();
        if n == 0 {
            if left == 0 {
                out.push(Monomial::from_exponents(exps));
            }
            return;
        }
        if i == n - 1 {
            exps[i] = left as u32;
            out.push(Monomial::from_exponents(exps));
            exps[i] = 0;
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e as u32;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, d, &mut exps, &mut out);
    out
}

/// Distinct monomials of degree at most `d`.
pub fn monomials_up_to(n: usize, d: u64) -> BTreeSet<Vec<u32>> {
    (0..=d).flat_map(|k| monomials_of_degree(n, k)).map(|m| m.exponents().to_vec()).collect()
}

impl fmt::Display for SubquotientModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = self.ring.base();
        let z: Vec<String> = self.cycles.iter().map(|v| v.display(base)).collect();
        let b: Vec<String> = self.boundaries.iter().map(|v| v.display(base)).collect();
        write!(f, "<{}> / <{}>", z.join(", "), b.join(", "))
    }
}
