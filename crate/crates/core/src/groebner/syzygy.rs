use std::collections::BTreeMap;
use std::sync::Arc;

use crate::deadline;
use crate::error::Result;
use crate::polyring::linalg::SparseEchelon;
use crate::polyring::{PolyRing, Polynomial, Ring, Scalar};

use super::{apply_columns, divide, normalize_element, relation_columns, GroebnerBasis, ModuleElement, ModuleOrder};

/// Relations among `target_rank` generators, one per column.
#[derive(Clone, Debug, PartialEq)]
pub struct SyzygyMatrix {
    pub target_rank: usize,
    pub columns: Vec<ModuleElement>,
}

impl SyzygyMatrix {
    pub fn source_rank(&self) -> usize {
        self.columns.len()
    }

    /// Nonzero entries, column by column.
    pub fn entries(&self, base: &Arc<PolyRing>) -> Vec<Polynomial> {
        self.columns.iter().flat_map(|c| c.to_polys(base)).filter(|p| !p.is_zero()).collect()
    }
}

/// Generators of the syzygy module of `gens` over the polynomial ring `base`,
/// by Schreyer's construction from a tracked Gröbner basis.
pub fn syzygies(gens: &[ModuleElement], base: &Arc<PolyRing>) -> Result<SyzygyMatrix> {
    let s = gens.len();
    let order = ModuleOrder::of(base);
    let field = base.field();
    let nvars = base.nvars();
    let rank = gens.first().map_or(1, |g| g.rank());
    let gens: Vec<ModuleElement> = gens.iter().map(|g| g.resort(order)).collect();
    let ring = Ring::Poly(base.clone());
    let (gb, reps) = GroebnerBasis::tracked(&ring, rank, &gens)?;
    let g = gb.elements();

    let mut columns: Vec<ModuleElement> = Vec::new();
    for (i, f) in gens.iter().enumerate() {
        if f.is_zero() {
            columns.push(ModuleElement::unit(s, i, nvars, field));
        }
    }

    let leads: Vec<_> = g.iter().map(|e| e.leading().unwrap().clone()).collect();
    let one = field.one();
    for i in 0..g.len() {
        for j in i + 1..g.len() {
            if leads[i].comp != leads[j].comp {
                continue;
            }
            deadline::checkpoint()?;
            let lcm = leads[i].mono.lcm(&leads[j].mono);
            let redundant = (0..g.len()).any(|k| {
                k != i
                    && k != j
                    && leads[k].comp == leads[i].comp
                    && leads[k].mono.divides(&lcm)
                    && leads[k].mono.lcm(&leads[i].mono) != lcm
                    && leads[k].mono.lcm(&leads[j].mono) != lcm
            });
            if redundant {
                continue;
            }
            let mi = leads[i].mono.quotient_of(&lcm);
            let mj = leads[j].mono.quotient_of(&lcm);
            let spoly = g[i].scale_term(&one, &mi).add_scaled(&g[j], &one.neg(), &mj, order);
            let (q, r) = divide(spoly, g, order);
            debug_assert!(r.is_zero(), "S-element of a Gröbner basis must reduce to zero");
            let sigma = ModuleElement::from_terms(
                g.len(),
                vec![
                    super::ModTerm { comp: i, mono: mi, coef: one.clone() },
                    super::ModTerm { comp: j, mono: mj, coef: one.neg() },
                ],
                order,
            )
            .sub(&q, order);
            let col = apply_columns(&reps, &sigma, s, order);
            if !col.is_zero() {
                columns.push(col);
            }
        }
    }

    for (i, f) in gens.iter().enumerate() {
        if f.is_zero() {
            continue;
        }
        deadline::checkpoint()?;
        let (b, r) = divide(f.clone(), g, order);
        debug_assert!(r.is_zero());
        let col = ModuleElement::unit(s, i, nvars, field).sub(&apply_columns(&reps, &b, s, order), order);
        if !col.is_zero() {
            columns.push(col);
        }
    }
    let mut seen = std::collections::HashSet::new();
    columns.retain(|c| seen.insert(c.clone()));
    Ok(SyzygyMatrix { target_rank: s, columns })
}

/// Generators of the kernel of the map `ring^m → ring^rows` whose columns are
/// given. Over `S/J` the relation columns `J·e_k` are appended before taking
/// syzygies, and the result is projected and reduced modulo `J`.
pub fn kernel_generators(columns: &[ModuleElement], rows: usize, ring: &Ring) -> Result<Vec<ModuleElement>> {
    let m = columns.len();
    let mut gens = columns.to_vec();
    gens.extend(relation_columns(ring, rows));
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let syz = syzygies(&gens, ring.base())?;
    let mut out: Vec<ModuleElement> = Vec::new();
    for c in syz.columns {
        let v = normalize_element(ring, &c.slice(0, m));
        if !v.is_zero() && !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

pub fn kernel_of_map(columns: &[ModuleElement], rows: usize, ring: &Ring) -> Result<GroebnerBasis> {
    let gens = kernel_generators(columns, rows, ring)?;
    GroebnerBasis::compute(ring, columns.len(), &gens)
}

/// Minimal generating subset of the submodule spanned by `cols`, where the
/// basis vector `e_k` has degree `twists[k]`. Graded input is processed degree
/// by degree; ties go to the earlier column. Non-graded input falls back to
/// dropping columns that lie in the span of the others.
pub fn minimalize(cols: &[ModuleElement], twists: &[i64], ring: &Ring) -> Result<Vec<ModuleElement>> {
    let nonzero: Vec<(usize, &ModuleElement)> = cols.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
    let Some(rank) = nonzero.first().map(|(_, c)| c.rank()) else {
        return Ok(Vec::new());
    };
    let degrees: Option<Vec<i64>> = nonzero.iter().map(|(_, c)| c.homogeneous_degree(twists)).collect();
    let Some(degrees) = degrees else {
        return irredundant(&nonzero.iter().map(|(_, c)| (*c).clone()).collect::<Vec<_>>(), ring, rank);
    };
    let mut idx: Vec<usize> = (0..nonzero.len()).collect();
    idx.sort_by_key(|&k| (degrees[k], nonzero[k].0));
    let mut kept: Vec<ModuleElement> = Vec::new();
    let mut start = 0;
    while start < idx.len() {
        let d = degrees[idx[start]];
        let end = start + idx[start..].iter().take_while(|&&k| degrees[k] == d).count();
        let gb = GroebnerBasis::compute(ring, rank, &kept)?;
        let mut echelon: SparseEchelon<(usize, Vec<u32>)> = SparseEchelon::new();
        let mut fresh = Vec::new();
        for &k in &idx[start..end] {
            deadline::checkpoint()?;
            let c = nonzero[k].1;
            let nf = gb.normal_form(c);
            if nf.is_zero() {
                continue;
            }
            let coords: BTreeMap<(usize, Vec<u32>), Scalar> = nf.coordinates();
            if echelon.insert(coords) {
                fresh.push(c.clone());
            }
        }
        kept.extend(fresh);
        start = end;
    }
    Ok(kept)
}

fn irredundant(cols: &[ModuleElement], ring: &Ring, rank: usize) -> Result<Vec<ModuleElement>> {
    let mut keep: Vec<bool> = vec![true; cols.len()];
    for i in 0..cols.len() {
        let others: Vec<ModuleElement> =
            cols.iter().enumerate().filter(|(j, _)| *j != i && keep[*j]).map(|(_, c)| c.clone()).collect();
        if GroebnerBasis::compute(ring, rank, &others)?.contains(&cols[i]) {
            keep[i] = false;
        }
    }
    Ok(cols.iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c.clone()).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::{Monomial, QuotientRing};

    fn var(r: &Arc<PolyRing>, i: usize) -> Polynomial {
        Polynomial::var(r, i)
    }

    fn check_syzygies(gens: &[ModuleElement], syz: &SyzygyMatrix, order: ModuleOrder) {
        let rank = gens[0].rank();
        for c in &syz.columns {
            assert!(apply_columns(gens, c, rank, order).is_zero());
        }
    }

    #[test]
    fn regular_pair_has_koszul_syzygy() {
        let r = PolyRing::rational(&["x", "y"]);
        let gens = vec![ModuleElement::from_poly(&var(&r, 0)), ModuleElement::from_poly(&var(&r, 1))];
        let syz = syzygies(&gens, &r).unwrap();
        let order = ModuleOrder::of(&r);
        check_syzygies(&gens, &syz, order);
        let min = minimalize(&syz.columns, &[1, 1], &Ring::Poly(r.clone())).unwrap();
        assert_eq!(min.len(), 1);
        assert_eq!(min[0].to_polys(&r), vec![var(&r, 1), var(&r, 0).neg()]);
    }

    #[test]
    fn regular_sequence_of_three() {
        let r = PolyRing::rational(&["x", "y", "z"]);
        let gens: Vec<ModuleElement> = (0..3).map(|i| ModuleElement::from_poly(&var(&r, i).pow(2))).collect();
        let syz = syzygies(&gens, &r).unwrap();
        check_syzygies(&gens, &syz, ModuleOrder::of(&r));
        let min = minimalize(&syz.columns, &[2, 2, 2], &Ring::Poly(r.clone())).unwrap();
        assert_eq!(min.len(), 3);
    }

    #[test]
    fn kernel_over_quotient_sees_zero_divisor() {
        let r = PolyRing::rational(&["x"]);
        let q = QuotientRing::new(r.clone(), &[var(&r, 0).pow(2)]).unwrap();
        let ring = Ring::Quotient(q);
        let cols = vec![ModuleElement::from_poly(&var(&r, 0))];
        let k = kernel_of_map(&cols, 1, &ring).unwrap();
        let polys: Vec<Polynomial> = k.generators_mod_relations().iter().map(|g| g.component(0, &r)).collect();
        assert_eq!(polys, vec![var(&r, 0)]);
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        let r = PolyRing::rational(&["x", "y"]);
        let order = ModuleOrder::of(&r);
        let one = Polynomial::one(&r);
        let zero = Polynomial::zero(&r);
        let cols = vec![
            ModuleElement::from_polys(&[one.clone(), zero.clone()], order),
            ModuleElement::from_polys(&[zero, one], order),
        ];
        assert!(kernel_generators(&cols, 2, &Ring::Poly(r)).unwrap().is_empty());
    }

    #[test]
    fn zero_generator_contributes_unit_syzygy() {
        let r = PolyRing::rational(&["x"]);
        let gens = vec![ModuleElement::from_poly(&Polynomial::zero(&r)), ModuleElement::from_poly(&var(&r, 0))];
        let syz = syzygies(&gens, &r).unwrap();
        assert!(syz.columns.contains(&ModuleElement::unit(2, 0, 1, r.field())));
        let _ = Monomial::one(1);
    }
}
