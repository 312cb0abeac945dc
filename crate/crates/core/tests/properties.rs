use std::sync::Arc;

use proptest::prelude::*;

use koszul_core::closure::{is_integral_over, monomial_closure, verify_verdict, ClosureStatus};
use koszul_core::corpus::pfaffian;
use koszul_core::groebner::{kernel_generators, ModuleElement};
use koszul_core::koszul::{build_koszul, cohomology_annihilator_direct, homology};
use koszul_core::modops::{colon, colon_via_elimination, intersection, intersection_via_syzygies, product, IdealHandle};
use koszul_core::polyring::{PolyRing, Polynomial, Ring};
use koszul_core::resolutions::{minimal_resolution, tor, tor_by_resolving_quotient, ModulePresentation};
use koszul_core::text::{parse_polynomial, print_polynomial};

const VARS: [&str; 3] = ["x", "y", "z"];

fn ring(n: usize) -> (Arc<PolyRing>, Ring) {
    let base = PolyRing::rational(&VARS[..n]);
    (base.clone(), Ring::Poly(base))
}

/// Renders terms `(coefficient, exponents)` as input text.
fn render(terms: &[(i64, Vec<u32>)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let parts: Vec<String> = terms
        .iter()
        .map(|(c, e)| {
            let mut s = format!("({c})");
            for (v, &k) in e.iter().enumerate() {
                if k > 0 {
                    s.push_str(&format!("*{}^{k}", VARS[v]));
                }
            }
            s
        })
        .collect();
    parts.join(" + ")
}

fn poly_text(n: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = String> {
    prop::collection::vec((-4i64..=4, prop::collection::vec(0..=max_deg, n)), 0..=max_terms).prop_map(|t| render(&t))
}

fn parse(base: &Arc<PolyRing>, s: &str) -> Polynomial {
    parse_polynomial(s, base).unwrap()
}

fn monomial_gens(n: usize, max_deg: u32) -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0..=max_deg, n), 1..=4)
        .prop_filter("no unit monomial", |g| g.iter().all(|e| e.iter().any(|&k| k > 0)))
}

fn monomial_ideal(base: &Arc<PolyRing>, ring: &Ring, exps: &[Vec<u32>]) -> IdealHandle {
    let gens: Vec<Polynomial> = exps.iter().map(|e| parse(base, &render(&[(1, e.clone())]))).collect();
    IdealHandle::new(ring, &gens).unwrap()
}

/// Determinant as a signed sum over permutations.
fn leibniz(m: &[Vec<Polynomial>], base: &Arc<PolyRing>) -> Polynomial {
    fn go(m: &[Vec<Polynomial>], row: usize, used: &mut Vec<bool>, sign: bool, acc: Polynomial, out: &mut Polynomial) {
        if row == m.len() {
            *out = if sign { out.sub(&acc) } else { out.add(&acc) };
            return;
        }
        for c in 0..m.len() {
            if used[c] {
                continue;
            }
            let inversions = used[c + 1..].iter().filter(|&&u| u).count();
            used[c] = true;
            go(m, row + 1, used, sign ^ (inversions % 2 == 1), acc.mul(&m[row][c]), out);
            used[c] = false;
        }
    }
    let mut out = Polynomial::zero(base);
    go(m, 0, &mut vec![false; m.len()], false, Polynomial::one(base), &mut out);
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn printed_polynomials_parse_back(s in poly_text(3, 5, 6)) {
        let (base, _) = ring(3);
        let f = parse(&base, &s);
        prop_assert_eq!(parse(&base, &print_polynomial(&f)), f);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn reduced_basis_ignores_generator_presentation(
        a in poly_text(2, 3, 3), b in poly_text(2, 3, 3), h in poly_text(2, 2, 2),
    ) {
        let (base, r) = ring(2);
        let (f, g, h) = (parse(&base, &a), parse(&base, &b), parse(&base, &h));
        let one = IdealHandle::new(&r, &[f.clone(), g.clone()]).unwrap();
        let other = IdealHandle::new(&r, &[g.clone(), f.add(&h.mul(&g)), f.scale(&base.field().from_i64(-3))]).unwrap();
        prop_assert!(one.equals(&other));
        prop_assert_eq!(one.canonical_generators(), other.canonical_generators());
    }

    #[test]
    fn normal_form_is_a_sound_reduction(
        a in poly_text(2, 3, 3), b in poly_text(2, 3, 3), p in poly_text(2, 4, 5), q in poly_text(2, 2, 3),
    ) {
        let (base, r) = ring(2);
        let i = IdealHandle::new(&r, &[parse(&base, &a), parse(&base, &b)]).unwrap();
        let f = parse(&base, &p);
        let nf = i.normal_form(&f);
        prop_assert!(i.contains(&f.sub(&nf)));
        prop_assert_eq!(i.normal_form(&nf), nf.clone());
        prop_assert_eq!(nf.is_zero(), i.contains(&f));
        let inside = parse(&base, &q).mul(&parse(&base, &a));
        prop_assert!(i.normal_form(&inside).is_zero());
    }

    #[test]
    fn syzygies_kill_the_generators(gs in prop::collection::vec(poly_text(3, 2, 3), 1..=3)) {
        let (base, r) = ring(3);
        let gens: Vec<Polynomial> = gs.iter().map(|s| parse(&base, s)).collect();
        let cols: Vec<ModuleElement> = gens.iter().map(ModuleElement::from_poly).collect();
        for z in kernel_generators(&cols, 1, &r).unwrap() {
            let z = z.to_polys(&base);
            let total = z.iter().zip(&gens).fold(Polynomial::zero(&base), |acc, (c, g)| acc.add(&c.mul(g)));
            prop_assert!(total.is_zero());
        }
        // Koszul relations lie in the module they generate.
        if gens.len() == 2 && !gens[0].is_zero() && !gens[1].is_zero() {
            let gb = koszul_core::groebner::GroebnerBasis::compute(&r, 2, &kernel_generators(&cols, 1, &r).unwrap()).unwrap();
            let order = koszul_core::groebner::ModuleOrder::of(&base);
            prop_assert!(gb.contains(&ModuleElement::from_polys(&[gens[1].clone(), gens[0].neg()], order)));
        }
    }

    #[test]
    fn colon_satisfies_adjunction(i in monomial_gens(2, 4), j in monomial_gens(2, 3), h in poly_text(2, 2, 2)) {
        let (base, r) = ring(2);
        let mut ig: Vec<Polynomial> = monomial_ideal(&base, &r, &i).gens().to_vec();
        ig[0] = ig[0].add(&parse(&base, &h).mul(&ig[0]));
        let i = IdealHandle::new(&r, &ig).unwrap();
        let j = monomial_ideal(&base, &r, &j);
        let q = colon(&i, &j).unwrap();
        prop_assert!(q.equals(&colon_via_elimination(&i, &j).unwrap()));
        prop_assert!(i.contains_ideal(&product(&q, &j).unwrap()));
        prop_assert!(q.contains_ideal(&i));
        for g in j.gens() {
            let single = colon(&i, &IdealHandle::principal(&r, g).unwrap()).unwrap();
            prop_assert!(single.contains_ideal(&q));
        }
    }

    #[test]
    fn intersection_routes_agree(a in poly_text(2, 3, 3), b in poly_text(2, 3, 3), m in monomial_gens(2, 3)) {
        let (base, r) = ring(2);
        let i = IdealHandle::new(&r, &[parse(&base, &a), parse(&base, &b)]).unwrap();
        let j = monomial_ideal(&base, &r, &m);
        let both = intersection(&i, &j).unwrap();
        prop_assert!(both.equals(&intersection_via_syzygies(&i, &j).unwrap()));
        prop_assert!(i.contains_ideal(&both) && j.contains_ideal(&both));
        prop_assert!(both.contains_ideal(&product(&i, &j).unwrap()));
    }

    #[test]
    fn monomial_closure_is_a_closure_operation(a in monomial_gens(2, 6), b in monomial_gens(2, 6)) {
        let (base, r) = ring(2);
        let i = monomial_ideal(&base, &r, &a);
        let bigger = IdealHandle::new(&r, &[i.gens(), monomial_ideal(&base, &r, &b).gens()].concat()).unwrap();
        let c = monomial_closure(&i).unwrap();
        prop_assert!(c.contains_ideal(&i));
        prop_assert!(monomial_closure(&c).unwrap().equals(&c));
        prop_assert!(monomial_closure(&bigger).unwrap().contains_ideal(&c));
        // sandwiched between I and its radical
        let rad_gens: Vec<Polynomial> = a
            .iter()
            .map(|e| parse(&base, &render(&[(1, e.iter().map(|&k| k.min(1)).collect())])))
            .collect();
        prop_assert!(IdealHandle::new(&r, &rad_gens).unwrap().contains_ideal(&c));
    }

    #[test]
    fn membership_verdicts_agree_with_monomial_closure(a in monomial_gens(2, 5), e in prop::collection::vec(0u32..=5, 2)) {
        let (base, r) = ring(2);
        let i = monomial_ideal(&base, &r, &a);
        let f = parse(&base, &render(&[(1, e)]));
        let v = is_integral_over(&f, &i, 10).unwrap();
        prop_assert!(verify_verdict(&f, &i, &v).unwrap());
        let inside = monomial_closure(&i).unwrap().contains(&f);
        match v.status {
            ClosureStatus::Member => prop_assert!(inside),
            ClosureStatus::NonMember => prop_assert!(!inside),
            ClosureStatus::Inconclusive => {}
        }
    }

    #[test]
    fn pfaffian_squares_to_determinant(entries in prop::collection::vec(poly_text(2, 1, 2), 6)) {
        let (base, _) = ring(2);
        let mut m = vec![vec![Polynomial::zero(&base); 4]; 4];
        let mut k = 0;
        for i in 0..4 {
            for j in i + 1..4 {
                let p = parse(&base, &entries[k]);
                m[j][i] = p.neg();
                m[i][j] = p;
                k += 1;
            }
        }
        let pf = pfaffian(&m, &base).unwrap();
        prop_assert_eq!(pf.mul(&pf), leibniz(&m, &base));
    }

    #[test]
    fn resolution_maps_compose_to_zero(a in monomial_gens(3, 2)) {
        let (base, r) = ring(3);
        let i = monomial_ideal(&base, &r, &a);
        let res = minimal_resolution(&ModulePresentation::cyclic(&i).unwrap(), 4).unwrap();
        for t in 1..res.computed_length() {
            let outer = res.matrix(t).unwrap();
            let inner = res.matrix(t + 1).unwrap();
            for row in &outer {
                for c in 0..res.rank(t + 1) {
                    let s = row.iter().enumerate().fold(Polynomial::zero(&base), |acc, (k, e)| acc.add(&e.mul(&inner[k][c])));
                    prop_assert!(s.is_zero());
                }
            }
        }
    }

    #[test]
    fn tor_routes_agree(a in monomial_gens(2, 3), b in monomial_gens(2, 3), t in 0usize..=3) {
        let (base, r) = ring(2);
        let i = monomial_ideal(&base, &r, &a);
        let m = ModulePresentation::cyclic(&monomial_ideal(&base, &r, &b)).unwrap();
        let res = minimal_resolution(&m, t + 1).unwrap();
        let one = tor(&res, &i, t).unwrap();
        let (two, _) = tor_by_resolving_quotient(&m, &i, t).unwrap();
        prop_assert_eq!(one.is_zero().unwrap(), two.is_zero().unwrap());
        if !one.is_zero().unwrap() {
            prop_assert!(one.annihilator().unwrap().equals(&two.annihilator().unwrap()));
        }
    }

    #[test]
    fn koszul_homology_matches_dual_cohomology(a in monomial_gens(3, 2)) {
        let (base, r) = ring(3);
        let gens = monomial_ideal(&base, &r, &a).minimal_generators().unwrap();
        let k = build_koszul(&gens, &r).unwrap();
        let n = gens.len();
        for i in 1..n {
            let direct = cohomology_annihilator_direct(&gens, &r, n - i).unwrap();
            prop_assert!(homology(&k, i).unwrap().annihilator.equals(&direct));
        }
    }
}
