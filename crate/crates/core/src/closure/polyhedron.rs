use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::polyring::linalg::Matrix;
use crate::polyring::{Field, Scalar};

/// An inequality `normal · u ≥ rhs` with a non-negative integral normal.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Facet {
    pub normal: Vec<i64>,
    pub rhs: i64,
}

impl Facet {
    pub fn value(&self, u: &[u32]) -> i64 {
        self.normal.iter().zip(u).map(|(a, &b)| a * b as i64).sum()
    }

    pub fn holds(&self, u: &[u32]) -> bool {
        self.value(u) >= self.rhs
    }
}

/// `conv(exponents) + ℝⁿ₊` described by its facets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolyhedron {
    nvars: usize,
    generators: Vec<Vec<u32>>,
    facets: Vec<Facet>,
    bounds: Vec<u32>,
}

impl NewtonPolyhedron {
    /// Facets from the extreme rays of `{(a, b) : a ≥ 0, a·v ≥ b}`, found by
    /// double description. `generators` must be non-empty.
    pub fn new(nvars: usize, generators: &[Vec<u32>]) -> Self {
        assert!(!generators.is_empty(), "Newton polyhedron of the zero ideal");
        let facets = facets_by_double_description(nvars, generators);
        let bounds = (0..nvars).map(|i| generators.iter().map(|g| g[i]).max().unwrap_or(0)).collect();
        NewtonPolyhedron { nvars, generators: generators.to_vec(), facets, bounds }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Vec<u32>] {
        &self.generators
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Coordinate bounds: minimal lattice points of the polyhedron lie in the box.
    pub fn bounds(&self) -> &[u32] {
        &self.bounds
    }

    pub fn contains(&self, u: &[u32]) -> bool {
        self.violated_facet(u).is_none()
    }

    pub fn violated_facet(&self, u: &[u32]) -> Option<&Facet> {
        self.facets.iter().find(|f| !f.holds(u))
    }

    /// Minimal lattice points, sorted.
    pub fn minimal_lattice_points(&self) -> Vec<Vec<u32>> {
        let mut inside: Vec<Vec<u32>> = Vec::new();
        let mut u = vec![0u32; self.nvars];
        loop {
            if self.contains(&u) {
                inside.push(u.clone());
            }
            let mut k = 0;
            while k < self.nvars && u[k] == self.bounds[k] {
                u[k] = 0;
                k += 1;
            }
            if k == self.nvars {
                break;
            }
            u[k] += 1;
        }
        let mut minimal: Vec<Vec<u32>> = inside
            .iter()
            .filter(|u| !inside.iter().any(|v| v != *u && v.iter().zip(u.iter()).all(|(a, b)| a <= b)))
            .cloned()
            .collect();
        minimal.sort();
        minimal
    }
}

type Ray = Vec<BigInt>;

fn normalize(mut r: Ray) -> Ray {
    let g = r.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if !g.is_zero() {
        for x in r.iter_mut() {
            *x /= &g;
        }
    }
    r
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn facets_by_double_description(n: usize, gens: &[Vec<u32>]) -> Vec<Facet> {
    // coordinates (a_1..a_n, b); constraint rows c with c·(a, b) ≥ 0
    let row = |v: &[u32]| -> Ray {
        let mut r: Ray = v.iter().map(|&e| BigInt::from(e)).collect();
        r.push(BigInt::from(-1));
        r
    };
    let mut constraints: Vec<Ray> = (0..n)
        .map(|i| (0..=n).map(|j| BigInt::from((i == j) as i64)).collect())
        .collect();
    constraints.extend(gens.iter().map(|g| row(g)));

    // the cone cut out by a ≥ 0 and the first generator is simplicial
    let first = &gens[0];
    let mut rays: Vec<Ray> = (0..n)
        .map(|i| {
            let mut r: Ray = vec![BigInt::zero(); n + 1];
            r[i] = BigInt::from(1);
            r[n] = BigInt::from(first[i]);
            r
        })
        .collect();
    let mut down = vec![BigInt::zero(); n + 1];
    down[n] = BigInt::from(-1);
    rays.push(down);

    let tight = |r: &Ray, upto: usize, cons: &[Ray]| -> BTreeSet<usize> {
        (0..upto).filter(|&k| dot(&cons[k], r).is_zero()).collect()
    };
    for k in n + 1..constraints.len() {
        let c = &constraints[k];
        let vals: Vec<BigInt> = rays.iter().map(|r| dot(c, r)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i].is_negative()).collect();
        if neg.is_empty() {
            continue;
        }
        let zsets: Vec<BTreeSet<usize>> = rays.iter().map(|r| tight(r, k, &constraints)).collect();
        let mut next: Vec<Ray> = (0..rays.len()).filter(|&i| !vals[i].is_negative()).map(|i| rays[i].clone()).collect();
        for &p in &pos {
            for &q in &neg {
                let common: BTreeSet<usize> = zsets[p].intersection(&zsets[q]).copied().collect();
                if common.len() + 2 < n + 1 {
                    continue;
                }
                let adjacent = (0..rays.len()).all(|o| o == p || o == q || !common.is_subset(&zsets[o]));
                if !adjacent {
                    continue;
                }
                let r: Ray = rays[p].iter().zip(&rays[q]).map(|(x, y)| x * (-&vals[q]) + y * &vals[p]).collect();
                next.push(normalize(r));
            }
        }
        next.sort();
        next.dedup();
        rays = next;
    }

    let mut facets: Vec<Facet> = rays
        .into_iter()
        .filter(|r| r[..n].iter().any(|x| !x.is_zero()))
        .map(|r| Facet {
            normal: r[..n].iter().map(|x| i64::try_from(x).expect("facet coefficient fits in i64")).collect(),
            rhs: i64::try_from(&r[n]).expect("facet coefficient fits in i64"),
        })
        .collect();
    facets.sort();
    facets.dedup();
    facets
}

/// Facets found by trying every hyperplane through `n` of the generators and
/// coordinate directions. Exponential; meant for small inputs and as a check
/// on the double description.
pub fn facets_by_enumeration(n: usize, gens: &[Vec<u32>]) -> Vec<Facet> {
    let q = Field::Rational;
    // items: generators (affine points) then directions e_i
    let items: Vec<(bool, Vec<i64>)> = gens
        .iter()
        .map(|g| (true, g.iter().map(|&e| e as i64).collect()))
        .chain((0..n).map(|i| (false, (0..n).map(|j| (i == j) as i64).collect())))
        .collect();
    let mut out: BTreeSet<Facet> = BTreeSet::new();
    let mut choice: Vec<usize> = (0..n).collect();
    if items.len() < n {
        return Vec::new();
    }
    loop {
        if choice.iter().any(|&k| items[k].0) {
            // rows (v, -1) for points and (e_i, 0) for directions; kernel gives (a, b)
            let rows: Vec<Vec<Scalar>> = choice
                .iter()
                .map(|&k| {
                    let (point, v) = &items[k];
                    let mut r: Vec<Scalar> = v.iter().map(|&x| q.from_i64(x)).collect();
                    r.push(q.from_i64(if *point { -1 } else { 0 }));
                    r
                })
                .collect();
            let ker = Matrix::from_rows(q, rows).kernel();
            if ker.len() == 1 {
                if let Some(f) = integral_facet(&ker[0], n) {
                    for cand in [f.clone(), Facet { normal: f.normal.iter().map(|x| -x).collect(), rhs: -f.rhs }] {
                        if cand.normal.iter().all(|&x| x >= 0)
                            && cand.normal.iter().any(|&x| x > 0)
                            && gens.iter().all(|g| cand.holds(g))
                        {
                            out.insert(cand);
                        }
                    }
                }
            }
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out.into_iter().collect();
            }
            i -= 1;
            if choice[i] < items.len() - n + i {
                break;
            }
        }
        choice[i] += 1;
        for j in i + 1..n {
            choice[j] = choice[j - 1] + 1;
        }
    }
}

fn integral_facet(v: &[Scalar], n: usize) -> Option<Facet> {
    let rats: Vec<BigRational> = v
        .iter()
        .map(|s| match s {
            Scalar::Rational(r) => r.clone(),
            Scalar::Modular { .. } => unreachable!("rational kernel"),
        })
        .collect();
    let den = rats.iter().fold(BigInt::from(1), |acc, r| acc.lcm(r.denom()));
    let ints: Ray = rats.iter().map(|r| (r * BigRational::from_integer(den.clone())).to_integer()).collect();
    let ints = normalize(ints);
    let normal = ints[..n].iter().map(|x| i64::try_from(x).ok()).collect::<Option<Vec<i64>>>()?;
    let rhs = i64::try_from(&ints[n]).ok()?;
    Some(Facet { normal, rhs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_pure_powers() {
        let p = NewtonPolyhedron::new(2, &[vec![3, 0], vec![0, 3]]);
        assert!(p.facets().contains(&Facet { normal: vec![1, 1], rhs: 3 }));
        assert_eq!(p.minimal_lattice_points(), vec![vec![0, 3], vec![1, 2], vec![2, 1], vec![3, 0]]);
    }

    #[test]
    fn principal_monomial() {
        let p = NewtonPolyhedron::new(1, &[vec![4]]);
        assert_eq!(p.facets(), &[Facet { normal: vec![1], rhs: 4 }]);
        assert!(!p.contains(&[3]));
    }

    #[test]
    fn non_primary_ideal_has_coordinate_facets() {
        let p = NewtonPolyhedron::new(3, &[vec![2, 0, 0], vec![0, 2, 0]]);
        assert!(p.contains(&[1, 1, 5]));
        assert!(!p.contains(&[1, 0, 9]));
        assert_eq!(p.minimal_lattice_points(), vec![vec![0, 2, 0], vec![1, 1, 0], vec![2, 0, 0]]);
    }

    #[test]
    fn enumeration_matches_double_description() {
        let cases: Vec<(usize, Vec<Vec<u32>>)> = vec![
            (2, vec![vec![5, 0], vec![2, 1], vec![0, 4]]),
            (2, vec![vec![3, 0], vec![0, 3]]),
            (3, vec![vec![4, 0, 0], vec![0, 3, 0], vec![0, 0, 2], vec![1, 1, 1]]),
            (3, vec![vec![2, 0, 0], vec![0, 2, 0]]),
        ];
        for (n, g) in cases {
            let p = NewtonPolyhedron::new(n, &g);
            assert_eq!(p.facets(), facets_by_enumeration(n, &g).as_slice(), "{g:?}");
        }
    }
}
