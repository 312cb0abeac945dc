//! Koszul complexes on generating sets, their homology, and the invariants
//! built from it.

mod coefficients;

use std::sync::Arc;

pub use coefficients::{homology_with_coefficients, CoefficientHomology};

use crate::error::{Error, Result};
use crate::groebner::{kernel_generators, minimalize, normalize_element, ModuleElement, ModuleOrder, SyzygyMatrix};
use crate::modops::{annihilator, submodule_intersection, IdealHandle, SubquotientModule};
use crate::polyring::{PolyRing, Polynomial, Ring};

/// Increasing `i`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(i);
    fn rec(start: usize, n: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == i {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            if n - j < i - cur.len() {
                break;
            }
            cur.push(j);
            rec(j + 1, n, i, cur, out);
            cur.pop();
        }
    }
    rec(0, n, i, &mut cur, &mut out);
    out
}

/// `∂(e_J) = Σ_t (−1)^(t+1) a_(j_t) e_(J∖j_t)` as signed coefficients: for each
/// column `J` the list of `(row index, generator index, sign)`.
pub(crate) fn differential_pattern(n: usize, i: usize) -> Vec<Vec<(usize, usize, bool)>> {
    let rows = subsets(n, i - 1);
    subsets(n, i)
        .iter()
        .map(|set| {
            set.iter()
                .enumerate()
                .map(|(t, &j)| {
                    let mut face = set.clone();
                    face.remove(t);
                    let row = rows.binary_search(&face).expect("face is a subset");
                    (row, j, t % 2 == 0)
                })
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct KoszulComplex {
    ring: Ring,
    gens: Vec<Polynomial>,
    differentials: Vec<Vec<ModuleElement>>,
}

impl KoszulComplex {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn rank(&self, i: usize) -> usize {
        binomial(self.gens.len(), i)
    }

    /// Columns of `∂_i : K_i → K_(i−1)`, for `1 ≤ i ≤ n`.
    pub fn differential(&self, i: usize) -> &[ModuleElement] {
        &self.differentials[i - 1]
    }

    /// Degrees of the basis of `K_i` when the generators are homogeneous.
    pub fn twists(&self, i: usize) -> Vec<i64> {
        let degs: Vec<i64> = self.gens.iter().map(|g| g.degree().unwrap_or(0) as i64).collect();
        subsets(self.gens.len(), i).iter().map(|s| s.iter().map(|&j| degs[j]).sum()).collect()
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn build_koszul(gens: &[Polynomial], ring: &Ring) -> Result<KoszulComplex> {
    if gens.is_empty() {
        return Err(Error::InvalidArgument("Koszul complex needs at least one generator".into()));
    }
    if gens.iter().any(|g| !PolyRing::same(g.ring(), ring.base())) {
        return Err(Error::RingMismatch);
    }
    let base = ring.base();
    let order = ModuleOrder::of(base);
    let gens: Vec<Polynomial> = gens.iter().map(|g| ring.normalize(g)).collect();
    let n = gens.len();
    let mut differentials = Vec::with_capacity(n);
    for i in 1..=n {
        let rows = binomial(n, i - 1);
        let cols: Vec<ModuleElement> = differential_pattern(n, i)
            .into_iter()
            .map(|col| {
                let mut entries = vec![Polynomial::zero(base); rows];
                for (row, j, positive) in col {
                    entries[row] = if positive { gens[j].clone() } else { gens[j].neg() };
                }
                ModuleElement::from_polys(&entries, order)
            })
            .collect();
        differentials.push(cols);
    }
    let k = KoszulComplex { ring: ring.clone(), gens, differentials };
    for i in 2..=n {
        let prev = k.differential(i - 1);
        for c in k.differential(i) {
            let img = crate::groebner::apply_columns(prev, c, k.rank(i - 2), order);
            if !normalize_element(ring, &img).is_zero() {
                return Err(Error::InvalidArgument("Koszul differentials do not compose to zero".into()));
            }
        }
    }
    Ok(k)
}

#[derive(Clone, Debug)]
pub struct HomologyRecord {
    pub index: usize,
    pub module: SubquotientModule,
    pub annihilator: IdealHandle,
    pub vanishing: bool,
}

/// Cycles and boundaries at position `i`.
pub fn homology_module(k: &KoszulComplex, i: usize) -> Result<SubquotientModule> {
    let n = k.len();
    if i > n {
        return Err(Error::InvalidArgument(format!("homology index {i} exceeds {n}")));
    }
    let ring = k.ring();
    let field = ring.field();
    let nv = ring.nvars();
    let rank = k.rank(i);
    let cycles = if i == 0 {
        vec![ModuleElement::unit(1, 0, nv, field)]
    } else {
        kernel_generators(k.differential(i), k.rank(i - 1), ring)?
    };
    let boundaries = if i == n { Vec::new() } else { k.differential(i + 1).to_vec() };
    SubquotientModule::new_unchecked(ring, rank, cycles, boundaries)
}

pub fn homology(k: &KoszulComplex, i: usize) -> Result<HomologyRecord> {
    let module = homology_module(k, i)?;
    let vanishing = module.is_zero()?;
    let annihilator = if vanishing { IdealHandle::unit(k.ring()) } else { annihilator(&module)? };
    Ok(HomologyRecord { index: i, module, annihilator, vanishing })
}

/// Rejects generating sets that are not minimal (graded case).
pub fn ensure_minimal(gens: &[Polynomial], ring: &Ring) -> Result<IdealHandle> {
    let ideal = IdealHandle::new(ring, gens)?;
    if gens.iter().any(|g| ring.normalize(g).is_zero()) {
        return Err(Error::NotMinimal { given: gens.len(), minimal: ideal.mu().unwrap_or(0) });
    }
    match ideal.mu() {
        Ok(mu) if mu != gens.len() => Err(Error::NotMinimal { given: gens.len(), minimal: mu }),
        Ok(_) | Err(Error::NotHomogeneous(_)) => Ok(ideal),
        Err(e) => Err(e),
    }
}

pub fn ann_h1(gens: &[Polynomial], ring: &Ring) -> Result<IdealHandle> {
    ensure_minimal(gens, ring)?;
    let k = build_koszul(gens, ring)?;
    Ok(homology(&k, 1)?.annihilator)
}

/// Minimal presentation matrix of the ideal and the ideal of its entries.
pub fn presentation_and_content(gens: &[Polynomial], ring: &Ring) -> Result<(SyzygyMatrix, IdealHandle)> {
    ensure_minimal(gens, ring)?;
    let phi = presentation(gens, ring)?;
    let entries = phi.entries(ring.base());
    let content = IdealHandle::new(ring, &entries)?;
    Ok((phi, content))
}

/// Syzygies of the generators over the ring, minimalized when graded.
pub fn presentation(gens: &[Polynomial], ring: &Ring) -> Result<SyzygyMatrix> {
    let cols: Vec<ModuleElement> = gens.iter().map(ModuleElement::from_poly).collect();
    let ker = kernel_generators(&cols, 1, ring)?;
    let twists: Vec<i64> = gens.iter().map(|g| g.degree().unwrap_or(0) as i64).collect();
    let min = minimalize(&ker, &twists, ring)?;
    Ok(SyzygyMatrix { target_rank: gens.len(), columns: min })
}

/// `δ(I) = (Z₁ ∩ I·Rⁿ + B₁)/B₁` and whether it vanishes.
pub fn delta_invariant(gens: &[Polynomial], ring: &Ring) -> Result<(SubquotientModule, bool)> {
    if gens.iter().all(|g| ring.normalize(g).is_zero()) {
        return Err(Error::InvalidArgument("the zero ideal has no Koszul invariants".into()));
    }
    ensure_minimal(gens, ring)?;
    let k = build_koszul(gens, ring)?;
    let n = gens.len();
    let h1 = homology_module(&k, 1)?;
    let i_free: Vec<ModuleElement> =
        (0..n).flat_map(|c| gens.iter().map(move |g| ModuleElement::from_poly_at(g, n, c))).collect();
    let mut cycles = submodule_intersection(ring, n, h1.cycles(), &i_free)?;
    cycles.extend(h1.boundaries().iter().cloned());
    let delta = SubquotientModule::new_unchecked(ring, n, cycles, h1.boundaries().to_vec())?;
    let zero = delta.is_zero()?;
    Ok((delta, zero))
}

/// `J_i = Ann(H^i) = Ann(H_(n−i))` for `i = 1..n`, through self-duality.
pub fn cohomology_annihilators(gens: &[Polynomial], ring: &Ring) -> Result<Vec<IdealHandle>> {
    ensure_minimal(gens, ring)?;
    let k = build_koszul(gens, ring)?;
    let n = gens.len();
    (1..=n).map(|i| Ok(homology(&k, n - i)?.annihilator)).collect()
}

/// Cohomology of the dual complex computed directly: an independent route
/// used to cross-check the duality on small inputs.
pub fn cohomology_annihilator_direct(gens: &[Polynomial], ring: &Ring, i: usize) -> Result<IdealHandle> {
    let k = build_koszul(gens, ring)?;
    let n = k.len();
    let base: &Arc<PolyRing> = ring.base();
    let order = ModuleOrder::of(base);
    // coboundary δ^i : K^i → K^(i+1) is the transpose of ∂_(i+1)
    let transpose = |cols: &[ModuleElement], rows: usize| -> Vec<ModuleElement> {
        let polys: Vec<Vec<Polynomial>> = cols.iter().map(|c| c.to_polys(base)).collect();
        (0..rows)
            .map(|r| ModuleElement::from_polys(&polys.iter().map(|c| c[r].clone()).collect::<Vec<_>>(), order))
            .collect()
    };
    let cycles = if i == n {
        (0..k.rank(n)).map(|c| ModuleElement::unit(k.rank(n), c, ring.nvars(), ring.field())).collect()
    } else {
        let delta = transpose(k.differential(i + 1), k.rank(i));
        kernel_generators(&delta, k.rank(i + 1), ring)?
    };
    let boundaries = if i == 0 { Vec::new() } else { transpose(k.differential(i), k.rank(i - 1)) };
    let m = SubquotientModule::new_unchecked(ring, k.rank(i), cycles, boundaries)?;
    if m.is_zero()? {
        return Ok(IdealHandle::unit(ring));
    }
    annihilator(&m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modops::ideal_power;

    fn ring(vars: &[&str]) -> Ring {
        Ring::Poly(PolyRing::rational(vars))
    }

    fn x(r: &Ring, i: usize) -> Polynomial {
        Polynomial::var(r.base(), i)
    }

    #[test]
    fn subsets_are_lex_ordered() {
        assert_eq!(subsets(3, 2), vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(binomial(5, 2), 10);
    }

    #[test]
    fn two_generator_sign_rule() {
        let r = ring(&["x", "y"]);
        let k = build_koszul(&[x(&r, 0), x(&r, 1)], &r).unwrap();
        let d2 = k.differential(2);
        assert_eq!(d2.len(), 1);
        // ∂(e1∧e2) = a1 e2 − a2 e1
        assert_eq!(d2[0].to_polys(r.base()), vec![x(&r, 1).neg(), x(&r, 0)]);
    }

    #[test]
    fn regular_sequence_is_acyclic() {
        let r = ring(&["x", "y", "z"]);
        let gens = vec![x(&r, 0).pow(2), x(&r, 1).pow(2), x(&r, 2)];
        let k = build_koszul(&gens, &r).unwrap();
        for i in 1..=3 {
            assert!(homology(&k, i).unwrap().vanishing);
        }
        let h0 = homology(&k, 0).unwrap();
        assert!(h0.annihilator.equals(&IdealHandle::new(&r, &gens).unwrap()));
    }

    #[test]
    fn square_of_maximal_ideal() {
        let r = ring(&["x", "y"]);
        let m2 = ideal_power(&IdealHandle::maximal(&r), 2).unwrap();
        let gens = m2.minimal_generators().unwrap();
        let ann = ann_h1(&gens, &r).unwrap();
        assert!(ann.equals(&m2));
        let mut bad = gens.clone();
        bad.push(x(&r, 0).pow(3));
        assert!(matches!(ann_h1(&bad, &r), Err(Error::NotMinimal { .. })));
    }

    #[test]
    fn complete_intersection_is_syzygetic() {
        let r = ring(&["x", "y"]);
        let (_, syzygetic) = delta_invariant(&[x(&r, 0).pow(2), x(&r, 1).pow(3)], &r).unwrap();
        assert!(syzygetic);
    }

    #[test]
    fn cohomology_duality_matches_direct_route() {
        let r = ring(&["x", "y"]);
        let gens = vec![x(&r, 0).pow(2), x(&r, 0).mul(&x(&r, 1)), x(&r, 1).pow(2)];
        let via_duality = cohomology_annihilators(&gens, &r).unwrap();
        for i in 1..=3 {
            let direct = cohomology_annihilator_direct(&gens, &r, i).unwrap();
            assert!(direct.equals(&via_duality[i - 1]), "index {i}");
        }
    }
}
