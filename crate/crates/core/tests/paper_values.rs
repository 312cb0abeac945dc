use koszul_core::koszul::{build_koszul, homology, homology_with_coefficients, presentation_and_content};
use koszul_core::modops::{colon, dimension_and_height, ideal_power, IdealHandle};
use koszul_core::polyring::{PolyRing, QuotientRing, Ring};
use koszul_core::resolutions::matlis_dual;
use koszul_core::text::parse_polynomial_list;

fn ideal(ring: &Ring, text: &str) -> IdealHandle {
    let gens = parse_polynomial_list(text, ring.base()).unwrap();
    IdealHandle::new(ring, &gens).unwrap()
}

#[test]
fn binomial_annihilators_and_height() {
    let base = PolyRing::rational(&["x", "y", "z", "w"]);
    let ring = Ring::Poly(base.clone());
    let gens = parse_polynomial_list("x^2 - x*y, -x*y + y^2, z^2 - z*w, -z*w + w^2", &base).unwrap();
    let i = IdealHandle::new(&ring, &gens).unwrap();
    let k = build_koszul(&gens, &ring).unwrap();
    let ann1 = homology(&k, 1).unwrap().annihilator;
    let ann2 = homology(&k, 2).unwrap().annihilator;
    let closure = ideal(&ring, "x^2 - x*y, -x*y + y^2, z^2 - z*w, -z*w + w^2, x*z - y*z - x*w + y*w");
    assert!(ann1.equals(&closure));
    assert!(ann2.equals(&ideal(&ring, "x - y, z - w")));
    assert_eq!(dimension_and_height(&i).unwrap().1, 2);
}

#[test]
fn almost_complete_intersection_example() {
    let base = PolyRing::rational(&["x", "y"]);
    let ring = Ring::Poly(base.clone());
    let gens = parse_polynomial_list("x^5 - y^5, x^4*y, x*y^4", &base).unwrap();
    let i = IdealHandle::new(&ring, &gens).unwrap();
    let sq = ideal_power(&i, 2).unwrap();
    let c = colon(&sq, &i).unwrap();
    assert!(c.equals(&ideal(&ring, "x^5 - y^5, x^4*y, x*y^4, x^3*y^3")));
    let (_, content) = presentation_and_content(&gens, &ring).unwrap();
    assert!(content.equals(&ideal(&ring, "x^2, x*y, y^2")));
    assert_eq!(i.mu().unwrap(), 3);
    assert_eq!(content.mu().unwrap(), 3);
}

#[test]
fn square_of_maximal_ideal_colon_content() {
    let base = PolyRing::rational(&["x", "y"]);
    let ring = Ring::Poly(base.clone());
    let gens = parse_polynomial_list("x^2, x*y, y^2", &base).unwrap();
    let i = IdealHandle::new(&ring, &gens).unwrap();
    let (_, content) = presentation_and_content(&gens, &ring).unwrap();
    let c = colon(&i, &content).unwrap();
    assert!(c.equals(&ideal(&ring, "x, y")));
    assert!(i.contains_ideal(&ideal_power(&c, 2).unwrap()));
}

#[test]
fn injective_hull_annihilators_are_not_rigid() {
    let base = PolyRing::rational(&["x", "y", "z"]);
    let cube = parse_polynomial_list("x, y, z", &base).unwrap();
    let m = IdealHandle::new(&Ring::Poly(base.clone()), &cube).unwrap();
    let q = QuotientRing::new(base.clone(), ideal_power(&m, 3).unwrap().gens()).unwrap();
    let ring = Ring::Quotient(q);
    let e = matlis_dual(&ring).unwrap();
    let xy = parse_polynomial_list("x, y", &base).unwrap();
    let z = parse_polynomial_list("z", &base).unwrap().remove(0);
    let h1 = homology_with_coefficients(&xy, &e, 1).unwrap();
    let h2 = homology_with_coefficients(&xy, &e, 2).unwrap();
    assert!(!h1.is_zero());
    assert!(h1.annihilated_by(&z));
    assert!(!h2.annihilated_by(&z.pow(2)));
}
