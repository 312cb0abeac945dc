use crate::error::{Error, Result};
use crate::groebner::{kernel_generators, ModuleElement, ModuleOrder};
use crate::modops::{IdealHandle, SubquotientModule};
use crate::polyring::{Polynomial, Ring};

use super::resolution::{minimal_resolution, GradedFreeResolution, ModulePresentation};

/// `{v ∈ R^source : Σ v_j·cols_j ∈ N}` where `N ⊆ R^rows` is spanned by `extra`.
fn preimage(cols: &[ModuleElement], rows: usize, extra: &[ModuleElement], ring: &Ring) -> Result<Vec<ModuleElement>> {
    let source = cols.len();
    let mut all = cols.to_vec();
    all.extend(extra.iter().cloned());
    let ker = kernel_generators(&all, rows, ring)?;
    Ok(ker.iter().map(|v| v.slice(0, source)).filter(|v| !v.is_zero()).collect())
}

/// `I·R^rank`.
fn ideal_times_free(i: &IdealHandle, rank: usize) -> Vec<ModuleElement> {
    let gens = i.small_generators();
    (0..rank).flat_map(|k| gens.iter().map(move |g| ModuleElement::from_poly_at(g, rank, k))).collect()
}

/// `Tor_t(R/I, M)` as the homology of `F ⊗ R/I` at position `t`, a subquotient
/// of `F_t`.
pub fn tor(res: &GradedFreeResolution, i: &IdealHandle, t: usize) -> Result<SubquotientModule> {
    let ring = res.ring();
    ring.check_same(i.ring())?;
    if !res.is_complete() && t + 1 > res.computed_length() {
        return Err(Error::TruncationTooShort { requested: t + 1, available: res.computed_length() });
    }
    let rank = res.rank(t);
    if rank == 0 {
        return SubquotientModule::new_unchecked(ring, 0, Vec::new(), Vec::new());
    }
    let i_ft = ideal_times_free(i, rank);
    let mut cycles = if t == 0 {
        (0..rank).map(|k| ModuleElement::unit(rank, k, ring.nvars(), ring.field())).collect()
    } else {
        let i_prev = ideal_times_free(i, res.rank(t - 1));
        preimage(res.map(t)?, res.rank(t - 1), &i_prev, ring)?
    };
    cycles.extend(i_ft.iter().cloned());
    let mut boundaries = res.map(t + 1)?.to_vec();
    boundaries.extend(i_ft);
    SubquotientModule::new_unchecked(ring, rank, cycles, boundaries)
}

/// Degrees of the basis of `F_t`, for lengths of Tor modules.
pub fn tor_twists(res: &GradedFreeResolution, t: usize) -> Vec<i64> {
    res.twists(t).to_vec()
}

/// `Tor_t(R/I, M)` computed the other way round: resolve `R/I` and tensor
/// with the presentation of `M`. Returns the module and the degrees of its
/// ambient free module.
pub fn tor_by_resolving_quotient(m: &ModulePresentation, i: &IdealHandle, t: usize) -> Result<(SubquotientModule, Vec<i64>)> {
    let ring = m.ring();
    ring.check_same(i.ring())?;
    let g = minimal_resolution(&ModulePresentation::cyclic(i)?, t + 1)?;
    if !g.is_complete() && t + 1 > g.computed_length() {
        return Err(Error::TruncationTooShort { requested: t + 1, available: g.computed_length() });
    }
    let r0 = m.rank();
    let base = ring.base();
    let order = ModuleOrder::of(base);
    let bt = g.rank(t);
    let twists: Vec<i64> = g.twists(t).iter().flat_map(|&a| m.twists().iter().map(move |&b| a + b)).collect();
    if bt == 0 || r0 == 0 {
        return Ok((SubquotientModule::new_unchecked(ring, 0, Vec::new(), Vec::new())?, Vec::new()));
    }
    // blocks of the presentation of M, one per basis vector of G_s
    let blocks = |s: usize| -> Vec<ModuleElement> {
        let b = g.rank(s);
        (0..b).flat_map(|k| m.relations().iter().map(move |rel| rel.embed(b * r0, k * r0, order))).collect()
    };
    // ψ ⊗ 1_M for ψ : G_s → G_(s−1)
    let tensor = |s: usize| -> Result<Vec<ModuleElement>> {
        let cols = g.map(s)?;
        let rows = g.rank(s - 1);
        let mut out = Vec::new();
        for col in cols {
            let entries: Vec<Polynomial> = col.to_polys(base);
            for a in 0..r0 {
                let mut v: Vec<Polynomial> = vec![Polynomial::zero(base); rows * r0];
                for (row, e) in entries.iter().enumerate() {
                    v[row * r0 + a] = e.clone();
                }
                out.push(ModuleElement::from_polys(&v, order));
            }
        }
        Ok(out)
    };
    let own = blocks(t);
    let mut cycles = if t == 0 {
        (0..bt * r0).map(|k| ModuleElement::unit(bt * r0, k, ring.nvars(), ring.field())).collect()
    } else {
        preimage(&tensor(t)?, g.rank(t - 1) * r0, &blocks(t - 1), ring)?
    };
    cycles.extend(own.iter().cloned());
    let mut boundaries = if g.rank(t + 1) == 0 { Vec::new() } else { tensor(t + 1)? };
    boundaries.extend(own);
    Ok((SubquotientModule::new_unchecked(ring, bt * r0, cycles, boundaries)?, twists))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::PolyRing;
    use crate::text::parse_polynomial_list;

    #[test]
    fn tor_one_of_line_with_itself() {
        let base = PolyRing::rational(&["x"]);
        let ring = Ring::Poly(base.clone());
        let i = IdealHandle::new(&ring, &parse_polynomial_list("x", &base).unwrap()).unwrap();
        let m = ModulePresentation::cyclic(&i).unwrap();
        let res = minimal_resolution(&m, 4).unwrap();
        let t1 = tor(&res, &i, 1).unwrap();
        assert!(!t1.is_zero().unwrap());
        assert_eq!(t1.length(&tor_twists(&res, 1)).unwrap(), Some(1));
        assert!(tor(&res, &i, 2).unwrap().is_zero().unwrap());
        let (other, tw) = tor_by_resolving_quotient(&m, &i, 1).unwrap();
        assert_eq!(other.length(&tw).unwrap(), Some(1));
    }

    #[test]
    fn tor_zero_is_m_mod_im() {
        let base = PolyRing::rational(&["x", "y"]);
        let ring = Ring::Poly(base.clone());
        let i = IdealHandle::new(&ring, &parse_polynomial_list("x^2, x*y, y^2", &base).unwrap()).unwrap();
        let j = IdealHandle::new(&ring, &parse_polynomial_list("x", &base).unwrap()).unwrap();
        let m = ModulePresentation::cyclic(&j).unwrap();
        let res = minimal_resolution(&m, 4).unwrap();
        // R/(x, y^2) has length 2
        assert_eq!(tor(&res, &i, 0).unwrap().length(&tor_twists(&res, 0)).unwrap(), Some(2));
        let (other, tw) = tor_by_resolving_quotient(&m, &i, 0).unwrap();
        assert_eq!(other.length(&tw).unwrap(), Some(2));
    }
}
