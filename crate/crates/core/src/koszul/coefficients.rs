use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::modops::IdealHandle;
use crate::polyring::linalg::{Matrix, SparseEchelon};
use crate::polyring::{PolyRing, Polynomial, Scalar};
use crate::resolutions::{annihilator_of_action, ActionModule};

use super::{binomial, differential_pattern};

/// Homology of `K(a) ⊗ M` for a finite-dimensional module `M`, computed by
/// linear algebra over the coefficient field.
#[derive(Clone, Debug)]
pub struct CoefficientHomology {
    pub index: usize,
    pub dimension: usize,
    blocks: usize,
    module: ActionModule,
    cycles: Vec<Vec<Scalar>>,
    boundaries: SparseEchelon<usize>,
}

fn scalar_differential(a: &[Matrix], m: &ActionModule, i: usize) -> Matrix {
    let n = a.len();
    let d = m.dim();
    let field = m.field();
    let rows = binomial(n, i - 1) * d;
    let cols = binomial(n, i) * d;
    let mut out = Matrix::zeros(field, rows, cols);
    for (c, col) in differential_pattern(n, i).into_iter().enumerate() {
        for (r, j, positive) in col {
            for p in 0..d {
                for q in 0..d {
                    let s = a[j].get(p, q);
                    if !s.is_zero() {
                        out.set(r * d + p, c * d + q, if positive { s.clone() } else { s.neg() });
                    }
                }
            }
        }
    }
    out
}

pub fn homology_with_coefficients(gens: &[Polynomial], m: &ActionModule, i: usize) -> Result<CoefficientHomology> {
    let n = gens.len();
    if n == 0 || i > n {
        return Err(Error::InvalidArgument(format!("homology index {i} out of range for {n} generators")));
    }
    if gens.iter().any(|g| !PolyRing::same(g.ring(), m.ring().base())) {
        return Err(Error::RingMismatch);
    }
    let field = m.field();
    let d = m.dim();
    let a: Vec<Matrix> = gens.iter().map(|g| m.eval(g)).collect();
    let blocks = binomial(n, i);
    let cycles = if i == 0 {
        (0..blocks * d)
            .map(|k| (0..blocks * d).map(|j| if j == k { field.one() } else { field.zero() }).collect())
            .collect()
    } else {
        scalar_differential(&a, m, i).kernel()
    };
    let mut boundaries = SparseEchelon::new();
    if i < n {
        for col in scalar_differential(&a, m, i + 1).column_space() {
            boundaries.insert(to_map(&col));
        }
    }
    let dimension = cycles.len() - boundaries.rank();
    Ok(CoefficientHomology { index: i, dimension, blocks, module: m.clone(), cycles, boundaries })
}

fn to_map(v: &[Scalar]) -> BTreeMap<usize, Scalar> {
    v.iter().enumerate().filter(|(_, s)| !s.is_zero()).map(|(k, s)| (k, s.clone())).collect()
}

impl CoefficientHomology {
    pub fn is_zero(&self) -> bool {
        self.dimension == 0
    }

    fn reduce(&self, v: Vec<Scalar>) -> Vec<Scalar> {
        let field = self.module.field();
        let len = v.len();
        let r = self.boundaries.reduce(to_map(&v));
        let mut out = vec![field.zero(); len];
        for (k, s) in r {
            out[k] = s;
        }
        out
    }

    fn apply_blockwise(&self, mat: &Matrix, v: &[Scalar]) -> Vec<Scalar> {
        let d = self.module.dim();
        (0..self.blocks).flat_map(|b| mat.mul_vec(&v[b * d..(b + 1) * d])).collect()
    }

    /// Whether `f` kills the homology.
    pub fn annihilated_by(&self, f: &Polynomial) -> bool {
        let mat = self.module.eval(f);
        self.cycles.iter().all(|z| self.reduce(self.apply_blockwise(&mat, z)).iter().all(|s| s.is_zero()))
    }

    pub fn annihilator(&self) -> Result<IdealHandle> {
        let ring = self.module.ring();
        if self.is_zero() {
            return Ok(IdealHandle::unit(ring));
        }
        let gens: Vec<Vec<Scalar>> = self
            .cycles
            .iter()
            .map(|z| self.reduce(z.clone()))
            .filter(|z| z.iter().any(|s| !s.is_zero()))
            .collect();
        let actions = self.module.actions();
        annihilator_of_action(ring, &gens, |var, v| self.apply_blockwise(&actions[var], v), |v| self.reduce(v))
    }
}
