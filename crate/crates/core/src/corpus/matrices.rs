use std::sync::Arc;

use crate::error::{Error, Result};
use crate::polyring::{PolyRing, Polynomial};

fn minor(m: &[Vec<Polynomial>], rows: &[usize], cols: &[usize]) -> Vec<Vec<Polynomial>> {
    rows.iter().map(|&r| cols.iter().map(|&c| m[r][c].clone()).collect()).collect()
}

fn check_square(m: &[Vec<Polynomial>]) -> Result<usize> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidArgument("matrix is not square".into()));
    }
    Ok(n)
}

/// Determinant by expansion along the first row.
pub fn determinant(m: &[Vec<Polynomial>], base: &Arc<PolyRing>) -> Result<Polynomial> {
    let n = check_square(m)?;
    if n == 0 {
        return Ok(Polynomial::one(base));
    }
    if n == 1 {
        return Ok(m[0][0].clone());
    }
    let rest: Vec<usize> = (1..n).collect();
    let mut acc = Polynomial::zero(base);
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let cols: Vec<usize> = (0..n).filter(|&c| c != j).collect();
        let term = m[0][j].mul(&determinant(&minor(m, &rest, &cols), base)?);
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    Ok(acc)
}

/// Pfaffian of a skew-symmetric matrix of even size, expanding along the
/// first row.
pub fn pfaffian(m: &[Vec<Polynomial>], base: &Arc<PolyRing>) -> Result<Polynomial> {
    let n = check_square(m).map_err(|_| Error::NotSkewSymmetric)?;
    if n % 2 == 1 {
        return Err(Error::NotSkewSymmetric);
    }
    for i in 0..n {
        if !m[i][i].is_zero() {
            return Err(Error::NotSkewSymmetric);
        }
        for j in i + 1..n {
            if !m[i][j].add(&m[j][i]).is_zero() {
                return Err(Error::NotSkewSymmetric);
            }
        }
    }
    Ok(pfaffian_unchecked(m, base))
}

fn pfaffian_unchecked(m: &[Vec<Polynomial>], base: &Arc<PolyRing>) -> Polynomial {
    let n = m.len();
    if n == 0 {
        return Polynomial::one(base);
    }
    let mut acc = Polynomial::zero(base);
    for j in 1..n {
        if m[0][j].is_zero() {
            continue;
        }
        let keep: Vec<usize> = (1..n).filter(|&c| c != j).collect();
        let term = m[0][j].mul(&pfaffian_unchecked(&minor(m, &keep, &keep), base));
        acc = if j % 2 == 1 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}

/// Signed maximal minors of an `n × (n−1)` matrix: the `i`-th deletes row `i`.
pub fn maximal_minors(m: &[Vec<Polynomial>], base: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    let n = m.len();
    if n == 0 || m.iter().any(|row| row.len() + 1 != n) {
        return Err(Error::InvalidArgument("maximal minors need an n × (n−1) matrix".into()));
    }
    let cols: Vec<usize> = (0..n - 1).collect();
    (0..n)
        .map(|i| {
            let rows: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let d = determinant(&minor(m, &rows, &cols), base)?;
            Ok(if i % 2 == 0 { d } else { d.neg() })
        })
        .collect()
}

/// Signed Pfaffians of the principal submatrices deleting one row and column.
pub fn maximal_pfaffians(m: &[Vec<Polynomial>], base: &Arc<PolyRing>) -> Result<Vec<Polynomial>> {
    let n = m.len();
    if n % 2 == 0 {
        return Err(Error::NotSkewSymmetric);
    }
    (0..n)
        .map(|i| {
            let keep: Vec<usize> = (0..n).filter(|&r| r != i).collect();
            let p = pfaffian(&minor(m, &keep, &keep), base)?;
            Ok(if i % 2 == 0 { p } else { p.neg() })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::parse_polynomial;

    fn mat(base: &Arc<PolyRing>, rows: &[&[&str]]) -> Vec<Vec<Polynomial>> {
        rows.iter().map(|r| r.iter().map(|s| parse_polynomial(s, base).unwrap()).collect()).collect()
    }

    #[test]
    fn two_by_two() {
        let base = PolyRing::rational(&["a"]);
        let m = mat(&base, &[&["0", "a"], &["-a", "0"]]);
        assert_eq!(pfaffian(&m, &base).unwrap(), parse_polynomial("a", &base).unwrap());
    }

    #[test]
    fn generic_four_by_four() {
        let base = PolyRing::rational(&["a", "b", "c", "d", "e", "f"]);
        let m = mat(
            &base,
            &[&["0", "a", "b", "c"], &["-a", "0", "d", "e"], &["-b", "-d", "0", "f"], &["-c", "-e", "-f", "0"]],
        );
        assert_eq!(pfaffian(&m, &base).unwrap(), parse_polynomial("a*f - b*e + c*d", &base).unwrap());
    }

    #[test]
    fn rejects_non_skew() {
        let base = PolyRing::rational(&["a"]);
        assert_eq!(pfaffian(&mat(&base, &[&["0", "a"], &["a", "0"]]), &base), Err(Error::NotSkewSymmetric));
        assert_eq!(pfaffian(&mat(&base, &[&["0"]]), &base), Err(Error::NotSkewSymmetric));
    }

    #[test]
    fn minors_of_a_three_by_two() {
        let base = PolyRing::rational(&["x", "y", "z"]);
        let m = mat(&base, &[&["x", "0"], &["y", "x"], &["0", "y"]]);
        let g = maximal_minors(&m, &base).unwrap();
        let want: Vec<Polynomial> = ["y^2", "-x*y", "x^2"].iter().map(|s| parse_polynomial(s, &base).unwrap()).collect();
        assert_eq!(g, want);
    }
}
