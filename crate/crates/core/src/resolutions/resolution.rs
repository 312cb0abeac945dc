use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::deadline;
use crate::error::{Error, Result};
use crate::groebner::{kernel_generators, minimalize, normalize_element, ModuleElement, ModuleOrder};
use crate::modops::{dimension_and_height, IdealHandle};
use crate::polyring::{Polynomial, Ring};

pub const DEFAULT_MAX_LENGTH: usize = 6;

/// A graded module `R^r(−twists) / span(relations)`.
#[derive(Clone, Debug)]
pub struct ModulePresentation {
    ring: Ring,
    twists: Vec<i64>,
    relations: Vec<ModuleElement>,
}

impl ModulePresentation {
    pub fn new(ring: &Ring, twists: Vec<i64>, relations: Vec<ModuleElement>) -> Result<Self> {
        let r = twists.len();
        let mut clean = Vec::with_capacity(relations.len());
        for v in &relations {
            if v.rank() != r {
                return Err(Error::RankMismatch { expected: r, found: v.rank() });
            }
            let v = normalize_element(ring, v);
            if v.is_zero() {
                continue;
            }
            if !v.is_homogeneous(&twists) {
                return Err(Error::NotHomogeneous(v.display(ring.base())));
            }
            clean.push(v);
        }
        if ring.relations().iter().any(|g| !g.is_homogeneous()) {
            return Err(Error::NotHomogeneous("ring relations".into()));
        }
        Ok(ModulePresentation { ring: ring.clone(), twists, relations: clean })
    }

    /// `R/I`.
    pub fn cyclic(i: &IdealHandle) -> Result<Self> {
        let rels = i.gens().iter().map(ModuleElement::from_poly).collect();
        Self::new(i.ring(), vec![0], rels)
    }

    pub fn free(ring: &Ring, twists: Vec<i64>) -> Result<Self> {
        Self::new(ring, twists, Vec::new())
    }

    /// Cokernel of a matrix given by its columns.
    pub fn cokernel(ring: &Ring, twists: Vec<i64>, columns: &[Vec<Polynomial>]) -> Result<Self> {
        let order = ModuleOrder::of(ring.base());
        let rels = columns.iter().map(|c| ModuleElement::from_polys(c, order)).collect();
        Self::new(ring, twists, rels)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    pub fn relations(&self) -> &[ModuleElement] {
        &self.relations
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    /// Splits off unit entries until no relation has a constant entry.
    pub fn pruned(&self) -> ModulePresentation {
        let base = self.ring.base();
        let order = ModuleOrder::of(base);
        let mut twists = self.twists.clone();
        let mut cols: Vec<Vec<Polynomial>> = self.relations.iter().map(|c| c.to_polys(base)).collect();
        while let Some((j, r)) = find_unit(&cols) {
            let pivot = cols[j][r].clone();
            let inv = pivot.leading_coefficient().unwrap().inv().unwrap();
            let pcol = cols.remove(j);
            for col in cols.iter_mut() {
                let e = col[r].clone();
                if e.is_zero() {
                    continue;
                }
                let factor = e.scale(&inv);
                for (k, entry) in col.iter_mut().enumerate() {
                    *entry = self.ring.normalize(&entry.sub(&factor.mul(&pcol[k])));
                }
            }
            for col in cols.iter_mut() {
                col.remove(r);
            }
            twists.remove(r);
        }
        let relations = cols
            .iter()
            .map(|c| ModuleElement::from_polys(c, order))
            .filter(|v: &ModuleElement| !v.is_zero())
            .collect();
        ModulePresentation { ring: self.ring.clone(), twists, relations }
    }
}

fn find_unit(cols: &[Vec<Polynomial>]) -> Option<(usize, usize)> {
    for (j, c) in cols.iter().enumerate() {
        for (r, e) in c.iter().enumerate() {
            if e.is_constant() && !e.is_zero() {
                return Some((j, r));
            }
        }
    }
    None
}

/// `0 ← F_0 ← F_1 ← …` with `φ_t : F_t → F_(t−1)` stored as columns.
#[derive(Clone, Debug)]
pub struct GradedFreeResolution {
    ring: Ring,
    twists: Vec<Vec<i64>>,
    maps: Vec<Vec<ModuleElement>>,
    minimal: bool,
    truncation: Option<usize>,
}

/// Minimal graded free resolution, computed up to `max_length` maps. The
/// result is complete when the last kernel vanishes within that range.
pub fn minimal_resolution(m: &ModulePresentation, max_length: usize) -> Result<GradedFreeResolution> {
    if max_length == 0 {
        return Err(Error::InvalidArgument("max_length must be at least 1".into()));
    }
    let ring = m.ring().clone();
    let pres = m.pruned();
    let mut twists = vec![pres.twists.clone()];
    let mut maps: Vec<Vec<ModuleElement>> = Vec::new();
    let mut pending = minimalize(&pres.relations, &pres.twists, &ring)?;
    let mut truncation = None;
    loop {
        deadline::checkpoint()?;
        if pending.is_empty() {
            break;
        }
        let prev = twists.last().unwrap().clone();
        let degs: Vec<i64> = pending
            .iter()
            .map(|c| c.homogeneous_degree(&prev).ok_or_else(|| Error::NotHomogeneous("resolution column".into())))
            .collect::<Result<_>>()?;
        let rows = prev.len();
        let kernel = kernel_generators(&pending, rows, &ring)?;
        maps.push(pending);
        twists.push(degs.clone());
        if kernel.is_empty() {
            break;
        }
        if maps.len() == max_length {
            truncation = Some(max_length);
            break;
        }
        pending = minimalize(&kernel, &degs, &ring)?;
    }
    Ok(GradedFreeResolution { ring, twists, maps, minimal: true, truncation })
}

impl GradedFreeResolution {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Number of computed maps.
    pub fn computed_length(&self) -> usize {
        self.maps.len()
    }

    pub fn is_complete(&self) -> bool {
        self.truncation.is_none()
    }

    pub fn truncation(&self) -> Option<usize> {
        self.truncation
    }

    pub fn is_minimal_flag(&self) -> bool {
        self.minimal
    }

    /// Rank of `F_t`; zero past the end of a complete resolution. Panics for
    /// positions beyond a truncation.
    pub fn rank(&self, t: usize) -> usize {
        self.twists(t).len()
    }

    pub fn twists(&self, t: usize) -> &[i64] {
        if t < self.twists.len() {
            &self.twists[t]
        } else {
            assert!(self.is_complete(), "position {t} beyond truncation");
            &[]
        }
    }

    /// Columns of `φ_t` (`t ≥ 1`).
    pub fn map(&self, t: usize) -> Result<&[ModuleElement]> {
        if t == 0 {
            return Err(Error::InvalidArgument("maps are indexed from 1".into()));
        }
        if t <= self.maps.len() {
            Ok(&self.maps[t - 1])
        } else if self.is_complete() {
            Ok(&[])
        } else {
            Err(Error::TruncationTooShort { requested: t, available: self.maps.len() })
        }
    }

    /// `φ_t` as a `rank(t−1) × rank(t)` table of polynomials.
    pub fn matrix(&self, t: usize) -> Result<Vec<Vec<Polynomial>>> {
        let base = self.ring.base();
        let cols: Vec<Vec<Polynomial>> = self.map(t)?.iter().map(|c| c.to_polys(base)).collect();
        let rows = self.rank(t - 1);
        Ok((0..rows).map(|r| cols.iter().map(|c| c[r].clone()).collect()).collect())
    }

    /// Largest `t` with `F_t ≠ 0` among computed terms.
    pub fn length(&self) -> usize {
        (0..self.twists.len()).rev().find(|&t| !self.twists[t].is_empty()).unwrap_or(0)
    }

    /// `φ_t ∘ φ_(t+1) = 0` for every computed pair.
    pub fn is_complex(&self) -> bool {
        let order = ModuleOrder::of(self.ring.base());
        self.maps.windows(2).all(|w| {
            w[1].iter().all(|col| {
                let mut acc = ModuleElement::zero(w[0].first().map_or(0, |c| c.rank()));
                for t in col.terms() {
                    acc = acc.add_scaled(&w[0][t.comp], &t.coef, &t.mono, order);
                }
                normalize_element(&self.ring, &acc).is_zero()
            })
        })
    }

    /// Every entry of every map lies in the irrelevant ideal.
    pub fn entries_in_maximal_ideal(&self) -> bool {
        self.maps.iter().flatten().all(|c| c.terms().iter().all(|t| !t.mono.is_one()))
    }

    pub fn betti(&self) -> BettiTable {
        let mut entries = BTreeMap::new();
        for (t, tw) in self.twists.iter().enumerate() {
            for &d in tw {
                *entries.entry((t, d)).or_insert(0) += 1;
            }
        }
        BettiTable { entries, truncated: !self.is_complete() }
    }
}

/// Graded Betti numbers `β_(t, d)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiTable {
    pub entries: BTreeMap<(usize, i64), usize>,
    pub truncated: bool,
}

impl BettiTable {
    /// Total ranks `β_t`.
    pub fn ranks(&self) -> Vec<usize> {
        let top = self.entries.keys().map(|(t, _)| *t).max();
        let Some(top) = top else { return Vec::new() };
        (0..=top).map(|t| self.entries.iter().filter(|((s, _), _)| *s == t).map(|(_, v)| v).sum()).collect()
    }
}

impl fmt::Display for BettiTable {
    /// Rows indexed by `d − t`, columns by `t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ranks = self.ranks();
        if ranks.is_empty() {
            return writeln!(f, "zero module");
        }
        let shifts: Vec<i64> = self.entries.keys().map(|(t, d)| d - *t as i64).collect();
        let (lo, hi) = (*shifts.iter().min().unwrap(), *shifts.iter().max().unwrap());
        write!(f, "{:>6}:", "")?;
        for t in 0..ranks.len() {
            write!(f, " {t:>4}")?;
        }
        writeln!(f)?;
        write!(f, "{:>6}:", "total")?;
        for r in &ranks {
            write!(f, " {r:>4}")?;
        }
        writeln!(f)?;
        for s in lo..=hi {
            write!(f, "{s:>6}:")?;
            for t in 0..ranks.len() {
                match self.entries.get(&(t, s + t as i64)) {
                    Some(v) => write!(f, " {v:>4}")?,
                    None => write!(f, " {:>4}", ".")?,
                }
            }
            writeln!(f)?;
        }
        if self.truncated {
            writeln!(f, "(truncated)")?;
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProjectiveDimension {
    Exact(usize),
    AtLeast(usize),
}

impl fmt::Display for ProjectiveDimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectiveDimension::Exact(p) => write!(f, "{p}"),
            ProjectiveDimension::AtLeast(p) => write!(f, "≥ {p}"),
        }
    }
}

/// Exact when the minimal resolution ends within `bound` maps.
pub fn projective_dimension(m: &ModulePresentation, bound: usize) -> Result<ProjectiveDimension> {
    let res = minimal_resolution(m, bound.max(1))?;
    Ok(pd_of(&res))
}

pub fn pd_of(res: &GradedFreeResolution) -> ProjectiveDimension {
    if res.is_complete() {
        ProjectiveDimension::Exact(res.length())
    } else {
        ProjectiveDimension::AtLeast(res.computed_length() + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealClass {
    pub height: usize,
    pub mu: usize,
    pub projective_dimension: usize,
    pub perfect: bool,
    pub gorenstein_quotient: bool,
    pub complete_intersection: bool,
    pub almost_complete_intersection: bool,
}

/// Structural flags of a graded ideal in a polynomial ring.
pub fn classify(i: &IdealHandle) -> Result<IdealClass> {
    if i.ring().is_quotient() {
        return Err(Error::InvalidRing("classification needs a polynomial ring".into()));
    }
    let (_, height) = dimension_and_height(i)?;
    let mu = i.mu()?;
    let res = minimal_resolution(&ModulePresentation::cyclic(i)?, i.ring().nvars() + 1)?;
    let pd = res.length();
    let perfect = pd == height;
    let last = res.rank(pd);
    Ok(IdealClass {
        height,
        mu,
        projective_dimension: pd,
        perfect,
        gorenstein_quotient: perfect && last == 1,
        complete_intersection: mu == height,
        almost_complete_intersection: mu == height + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PolyRing, QuotientRing};
    use crate::text::parse_polynomial_list;

    fn ideal(vars: &[&str], gens: &str) -> IdealHandle {
        let base = PolyRing::rational(vars);
        let g = parse_polynomial_list(gens, &base).unwrap();
        IdealHandle::new(&Ring::Poly(base), &g).unwrap()
    }

    #[test]
    fn residue_field_of_plane() {
        let m = ideal(&["x", "y"], "x, y");
        let res = minimal_resolution(&ModulePresentation::cyclic(&m).unwrap(), 6).unwrap();
        assert_eq!(res.betti().ranks(), vec![1, 2, 1]);
        assert!(res.is_complete() && res.is_complex() && res.entries_in_maximal_ideal());
        assert_eq!(pd_of(&res), ProjectiveDimension::Exact(2));
    }

    #[test]
    fn residue_field_over_dual_numbers_is_periodic() {
        let base = PolyRing::rational(&["x"]);
        let x = crate::polyring::Polynomial::var(&base, 0);
        let ring = Ring::Quotient(QuotientRing::new(base.clone(), &[x.pow(2)]).unwrap());
        let k = IdealHandle::maximal(&ring);
        let res = minimal_resolution(&ModulePresentation::cyclic(&k).unwrap(), 5).unwrap();
        assert_eq!(res.betti().ranks(), vec![1; 6]);
        assert!(res.is_complex());
        assert_eq!(pd_of(&res), ProjectiveDimension::AtLeast(6));
    }

    #[test]
    fn unit_entries_are_split_off() {
        let base = PolyRing::rational(&["x", "y"]);
        let ring = Ring::Poly(base.clone());
        let p = |s: &str| parse_polynomial_list(s, &base).unwrap();
        // R(−1) ⊕ R modulo (1, x), (0, y) is R/(y)
        let m = ModulePresentation::cokernel(&ring, vec![1, 0], &[p("1, x"), p("0, y")]).unwrap();
        let res = minimal_resolution(&m, 4).unwrap();
        assert_eq!(res.betti().ranks(), vec![1, 1]);
    }

    #[test]
    fn classification_flags() {
        let ci = classify(&ideal(&["x", "y"], "x^2, y^3")).unwrap();
        assert!(ci.complete_intersection && ci.perfect && ci.gorenstein_quotient);
        let aci = classify(&ideal(&["x", "y"], "x^5 - y^5, x^4*y, x*y^4")).unwrap();
        assert!(aci.almost_complete_intersection && aci.perfect && !aci.gorenstein_quotient);
        assert_eq!((aci.height, aci.mu), (2, 3));
    }
}
