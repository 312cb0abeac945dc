use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::modops::{dimension_and_height, IdealHandle};
use crate::polyring::Polynomial;

use super::recipes::{random_form, random_nonzero_scalar, MAX_ATTEMPTS};

/// `j` random homogeneous combinations of the minimal generators of `I`.
///
/// The degrees of the new elements form a sub-multiset of the generator
/// degrees. Candidates are tried smallest first, which mimics a general
/// choice in the local ring where low-order terms dominate. Each element
/// combines the generators of degree at most its target, with random form
/// coefficients and a nonzero scalar on generators of the target degree. A
/// candidate is accepted when `μ = j` and the height is `min(j, height I)`;
/// with `j = μ(I)` the result must equal `I`.
pub fn general_elements(i: &IdealHandle, j: usize, seed: u64) -> Result<IdealHandle> {
    let mut gens = i.minimal_generators()?;
    let mu = gens.len();
    if j == 0 || j > mu {
        return Err(Error::InvalidArgument(format!("need 1 ≤ j ≤ μ = {mu}, got j = {j}")));
    }
    gens.sort_by_key(|g| g.degree().unwrap_or(0));
    let degrees: Vec<u64> = gens.iter().map(|g| g.degree().unwrap_or(0)).collect();
    let height = dimension_and_height(i)?.1;
    let ring = i.ring();
    let base = ring.base();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let candidates = degree_choices(&degrees, j);
    let per = (MAX_ATTEMPTS / candidates.len()).max(2);
    for targets in &candidates {
        for _ in 0..per {
            crate::deadline::checkpoint()?;
            let elems: Vec<Polynomial> = targets
                .iter()
                .map(|&t| {
                    let mut acc = Polynomial::zero(base);
                    for (g, &d) in gens.iter().zip(&degrees) {
                        if d > t {
                            continue;
                        }
                        let coef = if d == t {
                            Polynomial::constant(base, random_nonzero_scalar(&mut rng, base.field()))
                        } else {
                            random_form(&mut rng, base, t - d)
                        };
                        acc = acc.add(&coef.mul(g));
                    }
                    ring.normalize(&acc)
                })
                .collect();
            if elems.iter().any(|e| e.is_zero()) {
                continue;
            }
            let jdeal = IdealHandle::new(ring, &elems)?;
            if jdeal.mu()? != j {
                continue;
            }
            let ok = if j == mu { jdeal.equals(i) } else { dimension_and_height(&jdeal)?.1 == j.min(height) };
            if ok {
                return Ok(jdeal);
            }
        }
    }
    Err(Error::RetriesExhausted(MAX_ATTEMPTS))
}

/// Distinct size-`j` sub-multisets of the sorted `degrees`, in increasing
/// lexicographic order.
fn degree_choices(degrees: &[u64], j: usize) -> Vec<Vec<u64>> {
    fn walk(degrees: &[u64], j: usize, from: usize, cur: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if cur.len() == j {
            if !out.contains(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for k in from..degrees.len() {
            if degrees.len() - k < j - cur.len() {
                break;
            }
            cur.push(degrees[k]);
            walk(degrees, j, k + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    walk(degrees, j, 0, &mut Vec::new(), &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::koszul::{build_koszul, homology};
    use crate::polyring::{PolyRing, Ring};
    use crate::text::parse_polynomial_list;

    fn ideal(gens: &str) -> IdealHandle {
        let base = PolyRing::rational(&["x", "y"]);
        IdealHandle::new(&Ring::Poly(base.clone()), &parse_polynomial_list(gens, &base).unwrap()).unwrap()
    }

    #[test]
    fn all_generators_recover_the_ideal() {
        let i = ideal("x^3, x^2*y, y^4");
        let j = general_elements(&i, 3, 5).unwrap();
        assert!(j.equals(&i));
    }

    #[test]
    fn height_many_elements_form_a_regular_sequence() {
        let i = ideal("x^3, x^2*y, x*y^2, y^4");
        let j = general_elements(&i, 2, 9).unwrap();
        assert!(j.is_m_primary());
        let k = build_koszul(j.gens(), j.ring()).unwrap();
        assert!(homology(&k, 1).unwrap().vanishing);
    }

    #[test]
    fn low_degrees_are_preferred_when_they_reach_the_height() {
        let i = ideal("x^2, x*y, y^5");
        let j = general_elements(&i, 2, 1).unwrap();
        let mut d: Vec<u64> = j.gens().iter().map(|g| g.degree().unwrap()).collect();
        d.sort();
        assert_eq!(d, vec![2, 5]);
        assert_eq!(degree_choices(&[1, 3, 3, 5], 2), vec![vec![1, 3], vec![1, 5], vec![3, 3], vec![3, 5]]);
    }

    #[test]
    fn reproducible() {
        let i = ideal("x^2, x*y, y^3");
        assert_eq!(general_elements(&i, 2, 4).unwrap().gens(), general_elements(&i, 2, 4).unwrap().gens());
        assert!(general_elements(&i, 4, 4).is_err());
    }
}
