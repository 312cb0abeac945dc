use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::modops::{standard_monomials, IdealHandle};
use crate::polyring::linalg::{Matrix, SparseEchelon};
use crate::polyring::{Field, Monomial, Polynomial, Ring, Scalar};

/// A finite-dimensional module given by one action matrix per variable,
/// acting on column vectors.
#[derive(Clone, Debug)]
pub struct ActionModule {
    ring: Ring,
    labels: Vec<String>,
    actions: Vec<Matrix>,
    degrees: Vec<i64>,
}

impl ActionModule {
    /// Validates shapes, pairwise commutation and that the ring relations act by zero.
    pub fn new(ring: &Ring, labels: Vec<String>, actions: Vec<Matrix>, degrees: Vec<i64>) -> Result<Self> {
        let d = labels.len();
        if actions.len() != ring.nvars() {
            return Err(Error::InconsistentAction(format!("{} action matrices for {} variables", actions.len(), ring.nvars())));
        }
        if degrees.len() != d {
            return Err(Error::InconsistentAction("degree list length differs from dimension".into()));
        }
        if actions.iter().any(|a| a.rows() != d || a.cols() != d || a.field() != ring.field()) {
            return Err(Error::InconsistentAction("action matrices must be square of the module dimension".into()));
        }
        for i in 0..actions.len() {
            for j in i + 1..actions.len() {
                if actions[i].mul(&actions[j]) != actions[j].mul(&actions[i]) {
                    return Err(Error::InconsistentAction(format!("actions of variables {i} and {j} do not commute")));
                }
            }
        }
        let m = ActionModule { ring: ring.clone(), labels, actions, degrees };
        for r in ring.relations() {
            if !m.eval(r).is_zero() {
                return Err(Error::InconsistentAction(format!("relation {r} does not act by zero")));
            }
        }
        Ok(m)
    }

    /// `R/A` on its standard-monomial basis, for `A` of finite colength.
    pub fn of_quotient(a: &IdealHandle) -> Result<Self> {
        if a.dimension().is_some_and(|d| d > 0) {
            return Err(Error::PositiveDimension);
        }
        let basis = standard_monomials(a);
        let ring = a.ring();
        let base = ring.base();
        let field = ring.field();
        let index: BTreeMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(k, m)| (m.exponents().to_vec(), k)).collect();
        let n = basis.len();
        let mut actions = Vec::with_capacity(ring.nvars());
        for v in 0..ring.nvars() {
            let mut mat = Matrix::zeros(field, n, n);
            for (col, m) in basis.iter().enumerate() {
                let prod = a.normal_form(&Polynomial::monomial(base, m.mul(&Monomial::var(ring.nvars(), v)), field.one()));
                for (mono, c) in prod.terms() {
                    mat.set(index[mono.exponents()], col, c.clone());
                }
            }
            actions.push(mat);
        }
        let labels = basis.iter().map(|m| Polynomial::monomial(base, m.clone(), field.one()).to_string()).collect();
        let degrees = basis.iter().map(|m| m.degree() as i64).collect();
        ActionModule::new(ring, labels, actions, degrees)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn field(&self) -> Field {
        self.ring.field()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn actions(&self) -> &[Matrix] {
        &self.actions
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    /// The matrix by which `f` acts.
    pub fn eval(&self, f: &Polynomial) -> Matrix {
        let field = self.field();
        let d = self.dim();
        let mut out = Matrix::zeros(field, d, d);
        for (m, c) in f.terms() {
            let mut acc = Matrix::identity(field, d);
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    acc = self.actions[i].mul(&acc);
                }
            }
            out = out.add(&acc.scale(c));
        }
        out
    }

    /// Vector-space dual with transposed actions.
    pub fn dual(&self) -> ActionModule {
        ActionModule {
            ring: self.ring.clone(),
            labels: self.labels.iter().map(|l| format!("({l})*")).collect(),
            actions: self.actions.iter().map(|a| a.transpose()).collect(),
            degrees: self.degrees.iter().map(|d| -d).collect(),
        }
    }

    /// Annihilator of the module.
    pub fn annihilator(&self) -> Result<IdealHandle> {
        let d = self.dim();
        let field = self.field();
        let gens: Vec<Vec<Scalar>> = (0..d)
            .map(|k| (0..d).map(|i| if i == k { field.one() } else { field.zero() }).collect())
            .collect();
        annihilator_of_action(&self.ring, &gens, |v, x| self.actions[v].mul_vec(x), |x| x)
    }
}

/// Matlis dual of a zero-dimensional quotient ring.
pub fn matlis_dual(ring: &Ring) -> Result<ActionModule> {
    let zero = IdealHandle::zero(ring);
    if zero.dimension() != Some(0) {
        return Err(Error::PositiveDimension);
    }
    Ok(ActionModule::of_quotient(&zero)?.dual())
}

/// Annihilator of the module generated by vectors `gens` under commuting
/// variable actions `act`, modulo an action-stable subspace whose canonical
/// remainder map is `reduce`. Monomials are enumerated in increasing order and
/// linear dependencies among their images give a Gröbner basis of the result.
pub(crate) fn annihilator_of_action<A, R>(ring: &Ring, gens: &[Vec<Scalar>], act: A, reduce: R) -> Result<IdealHandle>
where
    A: Fn(usize, &[Scalar]) -> Vec<Scalar>,
    R: Fn(Vec<Scalar>) -> Vec<Scalar>,
{
    let base = ring.base();
    let order = base.order();
    let field = base.field();
    let n = base.nvars();
    // key (1, block, index) for data, (0, 0, k) for tracked monomials
    type Key = (u8, usize, usize);
    let image_key = |v: &[Vec<Scalar>]| -> BTreeMap<Key, Scalar> {
        let mut out = BTreeMap::new();
        for (b, vec) in v.iter().enumerate() {
            for (i, s) in vec.iter().enumerate() {
                if !s.is_zero() {
                    out.insert((1, b, i), s.clone());
                }
            }
        }
        out
    };
    let start: Vec<Vec<Scalar>> = gens.iter().map(|g| reduce(g.clone())).collect();
    let mut echelon: SparseEchelon<Key> = SparseEchelon::new();
    let mut standard: Vec<(Monomial, Vec<Vec<Scalar>>)> = Vec::new();
    let mut leads: Vec<Monomial> = Vec::new();
    let mut relations: Vec<Polynomial> = Vec::new();
    let mut candidates: Vec<(Monomial, Vec<Vec<Scalar>>)> = vec![(Monomial::one(n), start)];
    while !candidates.is_empty() {
        crate::deadline::checkpoint()?;
        let k = (0..candidates.len())
            .min_by(|&a, &b| order.cmp(&candidates[a].0, &candidates[b].0))
            .unwrap();
        let (m, img) = candidates.swap_remove(k);
        if leads.iter().any(|l| l.divides(&m)) || standard.iter().any(|(s, _)| *s == m) {
            continue;
        }
        let slot = standard.len();
        let mut v = image_key(&img);
        v.insert((0, 0, slot), field.one());
        let r = echelon.reduce(v);
        if r.keys().all(|k| k.0 == 0) {
            // dependency: the tracked part is a polynomial killing the module
            let terms: Vec<(Monomial, Scalar)> = r
                .into_iter()
                .map(|((_, _, s), c)| if s == slot { (m.clone(), c) } else { (standard[s].0.clone(), c) })
                .collect();
            relations.push(Polynomial::from_terms(base, terms));
            leads.push(m);
            continue;
        }
        echelon.insert(r);
        for var in 0..n {
            let next = m.mul(&Monomial::var(n, var));
            if candidates.iter().any(|(c, _)| *c == next) {
                continue;
            }
            let nimg: Vec<Vec<Scalar>> = img.iter().map(|x| reduce(act(var, x))).collect();
            candidates.push((next, nimg));
        }
        standard.push((m, img));
    }
    IdealHandle::new(ring, &relations)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::modops::ideal_power;
    use crate::polyring::{PolyRing, QuotientRing};

    #[test]
    fn dual_has_same_dimension_and_annihilator() {
        let base = PolyRing::rational(&["x", "y"]);
        let m = IdealHandle::maximal(&Ring::Poly(base.clone()));
        let m3 = ideal_power(&m, 3).unwrap();
        let q = QuotientRing::new(base.clone(), m3.gens()).unwrap();
        let ring = Ring::Quotient(q);
        let e = matlis_dual(&ring).unwrap();
        assert_eq!(e.dim(), 6);
        let ann = e.annihilator().unwrap();
        assert!(ann.is_zero() || ann.canonical_generators().is_empty());
    }

    #[test]
    fn quotient_module_annihilator_is_the_ideal() {
        let base = PolyRing::rational(&["x", "y"]);
        let r = Ring::Poly(base.clone());
        let x = Polynomial::var(&base, 0);
        let y = Polynomial::var(&base, 1);
        let a = IdealHandle::new(&r, &[x.pow(2), y.pow(3), x.mul(&y)]).unwrap();
        let m = ActionModule::of_quotient(&a).unwrap();
        assert_eq!(m.dim(), 4);
        assert!(m.annihilator().unwrap().equals(&a));
    }

    #[test]
    fn non_commuting_actions_rejected() {
        let base = PolyRing::rational(&["x", "y"]);
        let f = base.field();
        let r = Ring::Poly(base);
        let a = Matrix::from_rows(f, vec![vec![f.zero(), f.one()], vec![f.zero(), f.zero()]]);
        let b = a.transpose();
        let err = ActionModule::new(&r, vec!["u".into(), "v".into()], vec![a, b], vec![0, 0]);
        assert!(matches!(err, Err(Error::InconsistentAction(_))));
    }
}
