use std::collections::BTreeMap;

use crate::closure::{is_integral_over, ClosureStatus, ClosureVerdict};
use crate::error::{Error, Result};
use crate::groebner::{GroebnerBasis, ModTerm, ModuleElement, ModuleOrder};
use crate::modops::{product, socle_colon, standard_monomials, IdealHandle};
use crate::polyring::linalg::Matrix;
use crate::polyring::{Monomial, Polynomial, Scalar};

use super::resolution::GradedFreeResolution;
use super::tor::tor;

/// Outcome of testing `image(φ_t ⊗ R/I) ∩ socle(F_(t−1)/I·F_(t−1)) = 0`
/// under the hypothesis that the entries of `φ_t` lie in `closure(𝔪·J_t)`.
#[derive(Clone, Debug)]
pub struct BurchReport {
    pub t: usize,
    pub jt: IdealHandle,
    pub hypothesis: ClosureStatus,
    pub entry_verdicts: Vec<(String, ClosureVerdict)>,
    /// `None` when the hypothesis did not certify.
    pub intersection_zero: Option<bool>,
    pub socle_witnesses: Vec<ModuleElement>,
}

/// `J_t = Ann Tor_t(R/I, M)`.
pub fn tor_annihilator(res: &GradedFreeResolution, i: &IdealHandle, t: usize) -> Result<IdealHandle> {
    let m = tor(res, i, t)?;
    if m.cycles().is_empty() || m.is_zero()? {
        return Ok(IdealHandle::unit(res.ring()));
    }
    m.annihilator()
}

/// Distinct nonzero entries of `φ_t`.
fn entries(res: &GradedFreeResolution, t: usize) -> Result<Vec<Polynomial>> {
    let base = res.ring().base();
    let mut out: Vec<Polynomial> = Vec::new();
    for col in res.map(t)? {
        for p in col.to_polys(base) {
            if !p.is_zero() && !out.contains(&p) {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// Whether every entry of `φ_t` lies in `closure(𝔪·J)`.
pub fn entries_in_closure(res: &GradedFreeResolution, j: &IdealHandle, t: usize, m_max: u32) -> Result<(ClosureStatus, Vec<(String, ClosureVerdict)>)> {
    let mj = product(&IdealHandle::maximal(res.ring()), j)?;
    let mut verdicts = Vec::new();
    for e in entries(res, t)? {
        verdicts.push((e.to_string(), is_integral_over(&e, &mj, m_max)?));
    }
    let status = if verdicts.iter().any(|(_, v)| v.status == ClosureStatus::NonMember) {
        ClosureStatus::NonMember
    } else if verdicts.iter().all(|(_, v)| v.status == ClosureStatus::Member) {
        ClosureStatus::Member
    } else {
        ClosureStatus::Inconclusive
    };
    Ok((status, verdicts))
}

pub fn burch_socle_check(res: &GradedFreeResolution, i: &IdealHandle, t: usize, m_max: u32) -> Result<BurchReport> {
    if t == 0 {
        return Err(Error::InvalidArgument("the socle check needs t ≥ 1".into()));
    }
    let jt = tor_annihilator(res, i, t)?;
    let (hypothesis, entry_verdicts) = entries_in_closure(res, &jt, t, m_max)?;
    let mut report = BurchReport { t, jt, hypothesis, entry_verdicts, intersection_zero: None, socle_witnesses: Vec::new() };
    if hypothesis == ClosureStatus::Member {
        let w = socle_image_intersection(res, i, t)?;
        report.intersection_zero = Some(w.is_empty());
        report.socle_witnesses = w;
    }
    Ok(report)
}

/// A basis of `image(φ_t ⊗ R/I) ∩ socle(F_(t−1)/I·F_(t−1))`, by linear algebra
/// on the finite-dimensional `F_(t−1)/I·F_(t−1)`.
pub fn socle_image_intersection(res: &GradedFreeResolution, i: &IdealHandle, t: usize) -> Result<Vec<ModuleElement>> {
    let ring = res.ring();
    let cols = res.map(t)?;
    let r = res.rank(t - 1);
    if cols.is_empty() || r == 0 {
        return Ok(Vec::new());
    }
    if !i.is_m_primary() {
        if socle_colon(i)?.equals(i) {
            return Ok(Vec::new());
        }
        return Err(Error::Requirement("socle intersection needs an m-primary ideal or a zero socle".into()));
    }
    let base = ring.base();
    let field = ring.field();
    let n = ring.nvars();
    let order = ModuleOrder::of(base);
    let std = standard_monomials(i);
    let index: BTreeMap<Vec<u32>, usize> = std.iter().enumerate().map(|(k, m)| (m.exponents().to_vec(), k)).collect();
    let s = std.len();
    let dim = r * s;
    let to_vec = |v: &ModuleElement| -> Vec<Scalar> {
        let mut out = vec![field.zero(); dim];
        for (k, p) in v.to_polys(base).iter().enumerate() {
            for (m, c) in i.normal_form(p).terms() {
                out[k * s + index[m.exponents()]] = c.clone();
            }
        }
        out
    };
    let basis_elem = |k: usize, m: &Monomial| -> ModuleElement {
        ModuleElement::from_terms(r, vec![ModTerm { comp: k, mono: m.clone(), coef: field.one() }], order)
    };

    let mut image_cols = Vec::new();
    for col in cols {
        for m in &std {
            image_cols.push(to_vec(&col.scale_term(&field.one(), m)));
        }
    }
    let image = Matrix::from_columns(field, dim, &image_cols).column_space();

    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for v in 0..n {
        let x = Monomial::var(n, v);
        let images: Vec<Vec<Scalar>> =
            (0..r).flat_map(|k| std.iter().map(move |m| (k, m))).map(|(k, m)| to_vec(&basis_elem(k, &m.mul(&x)))).collect();
        for row in 0..dim {
            rows.push(images.iter().map(|c| c[row].clone()).collect());
        }
    }
    let socle = Matrix::from_rows(field, rows).kernel();
    if image.is_empty() || socle.is_empty() {
        return Ok(Vec::new());
    }

    let mut joint = image.clone();
    joint.extend(socle.iter().map(|v| v.iter().map(|c| c.neg()).collect()));
    let rel = Matrix::from_columns(field, dim, &joint).kernel();
    let mut witnesses: Vec<Vec<Scalar>> = Vec::new();
    for alpha in rel {
        let mut w = vec![field.zero(); dim];
        for (a, col) in alpha.iter().zip(&image) {
            for (slot, c) in w.iter_mut().zip(col) {
                *slot = slot.add(&a.mul(c));
            }
        }
        if w.iter().any(|c| !c.is_zero()) {
            witnesses.push(w);
        }
    }
    let reduced = if witnesses.is_empty() { Vec::new() } else { Matrix::from_columns(field, dim, &witnesses).column_space() };
    Ok(reduced
        .iter()
        .map(|w| {
            let terms: Vec<ModTerm> = w
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| ModTerm { comp: k / s, mono: std[k % s].clone(), coef: c.clone() })
                .collect();
            ModuleElement::from_terms(r, terms, order)
        })
        .collect())
}

/// `image(φ_t) ⊆ I·F_(t−1)`.
pub fn image_in_ideal_multiple(res: &GradedFreeResolution, i: &IdealHandle, t: usize) -> Result<bool> {
    let base = res.ring().base();
    Ok(res.map(t)?.iter().all(|c| c.to_polys(base).iter().all(|p| i.contains(p))))
}

/// `J·F_t ⊆ image(φ_(t+1))`.
pub fn ideal_times_free_in_image(res: &GradedFreeResolution, j: &IdealHandle, t: usize) -> Result<bool> {
    let rank = res.rank(t);
    if rank == 0 {
        return Ok(true);
    }
    let gb = GroebnerBasis::compute(res.ring(), rank, res.map(t + 1)?)?;
    let gens = j.small_generators();
    Ok((0..rank).all(|k| gens.iter().all(|g| gb.contains(&ModuleElement::from_poly_at(g, rank, k)))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{PolyRing, Ring};
    use crate::resolutions::{minimal_resolution, ModulePresentation};
    use crate::text::parse_polynomial_list;

    fn setup(gens_m: &str) -> (Ring, IdealHandle, GradedFreeResolution) {
        let base = PolyRing::rational(&["x", "y"]);
        let ring = Ring::Poly(base.clone());
        let i = IdealHandle::new(&ring, &parse_polynomial_list("x^2, x*y, y^2", &base).unwrap()).unwrap();
        let j = IdealHandle::new(&ring, &parse_polynomial_list(gens_m, &base).unwrap()).unwrap();
        let res = minimal_resolution(&ModulePresentation::cyclic(&j).unwrap(), 4).unwrap();
        (ring, i, res)
    }

    #[test]
    fn free_module_has_nothing_to_check() {
        let base = PolyRing::rational(&["x", "y"]);
        let ring = Ring::Poly(base.clone());
        let i = IdealHandle::new(&ring, &parse_polynomial_list("x^2, x*y, y^2", &base).unwrap()).unwrap();
        let res = minimal_resolution(&ModulePresentation::free(&ring, vec![0, 1]).unwrap(), 3).unwrap();
        let rep = burch_socle_check(&res, &i, 1, 4).unwrap();
        assert_eq!(rep.intersection_zero, Some(true));
    }

    #[test]
    fn residue_field_entries_escape_the_closure() {
        // J_1 = 𝔪 and the linear entries are not in closure(𝔪²)
        let (_, i, res) = setup("x, y");
        let rep = burch_socle_check(&res, &i, 1, 4).unwrap();
        assert_eq!(rep.hypothesis, ClosureStatus::NonMember);
        assert!(rep.jt.equals(&IdealHandle::maximal(res.ring())));
    }

    #[test]
    fn hypothesis_holds_or_fails() {
        // Tor_1(R/I, R/(x^3)) ≅ R/I, so J_1 = I and x^3 ∈ 𝔪·I
        let (_, i, res) = setup("x^3");
        let rep = burch_socle_check(&res, &i, 1, 4).unwrap();
        assert_eq!(rep.hypothesis, ClosureStatus::Member);
        assert_eq!(rep.intersection_zero, Some(true));
        let (_, i2, res2) = setup("x");
        let rep2 = burch_socle_check(&res2, &i2, 1, 4).unwrap();
        assert_eq!(rep2.hypothesis, ClosureStatus::NonMember);
        assert_eq!(rep2.intersection_zero, None);
    }
}
