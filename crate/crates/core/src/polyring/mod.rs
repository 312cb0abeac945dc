//! Scalars, monomials, monomial orders, sparse polynomials and ring descriptors.

pub mod linalg;
mod monomial;
mod poly;
mod ring;
mod scalar;

pub use monomial::{Monomial, MonomialOrder};
pub use poly::{ArithOp, Polynomial, Term};
pub use ring::{PolyRing, QuotientRing, Ring};
pub use scalar::{Field, Scalar, DEFAULT_PRIME};

/// Normal form of `f` in `S/J`.
pub fn quotient_normalize(f: &Polynomial, q: &QuotientRing) -> crate::Result<Polynomial> {
    if !PolyRing::same(f.ring(), q.base()) {
        return Err(crate::Error::RingMismatch);
    }
    Ok(q.normalize(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normalize_examples() {
        let s = PolyRing::rational(&["x"]);
        let x = Polynomial::var(&s, 0);
        let q = QuotientRing::new(s.clone(), &[x.pow(2)]).unwrap();
        assert!(quotient_normalize(&x.pow(3), &q).unwrap().is_zero());

        let s = PolyRing::new(&["x", "y"], Field::Rational, MonomialOrder::Lex).unwrap();
        let x = Polynomial::var(&s, 0);
        let y = Polynomial::var(&s, 1);
        let q = QuotientRing::new(s.clone(), &[x.sub(&y)]).unwrap();
        let nf = quotient_normalize(&x.add(&y), &q).unwrap();
        assert_eq!(nf, y.scale(&Field::Rational.from_i64(2)));
        assert_eq!(quotient_normalize(&nf, &q).unwrap(), nf);
    }
}
