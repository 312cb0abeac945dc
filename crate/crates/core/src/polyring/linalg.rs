//! Dense and sparse exact linear algebra over the coefficient field.

use std::collections::BTreeMap;

use super::{Field, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Vec<Scalar>>,
}

impl Matrix {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![vec![field.zero(); cols]; rows] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i][i] = field.one();
        }
        m
    }

    pub fn from_rows(field: Field, data: Vec<Vec<Scalar>>) -> Self {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        assert!(data.iter().all(|r| r.len() == cols), "ragged matrix");
        Matrix { field, rows, cols, data }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(field: Field, rows: usize, columns: &[Vec<Scalar>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            for (i, s) in c.iter().enumerate() {
                m.data[i][j] = s.clone();
            }
        }
        m
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: Scalar) {
        self.data[i][j] = s;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i]
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        self.data.iter().map(|r| r[j].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().flatten().all(|s| s.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j][i] = self.data[i][j].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self.data[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other.data[k][j];
                    if !b.is_zero() {
                        out.data[i][j] = out.data[i][j].add(&a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        self.data
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.add(y)).collect())
            .collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        let data = self.data.iter().map(|r| r.iter().map(|x| x.mul(c)).collect()).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.data[i][c].is_zero()) else {
                continue;
            };
            m.data.swap(r, p);
            let inv = m.data[r][c].inv().expect("nonzero pivot");
            for x in m.data[r].iter_mut() {
                *x = x.mul(&inv);
            }
            for i in 0..m.rows {
                if i != r && !m.data[i][c].is_zero() {
                    let f = m.data[i][c].clone();
                    let pivot_row = m.data[r].clone();
                    for (x, p) in m.data[i].iter_mut().zip(&pivot_row) {
                        if !p.is_zero() {
                            *x = x.sub(&f.mul(p));
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : A v = 0}`.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![self.field.zero(); self.cols];
                v[f] = self.field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = r.data[row][f].neg();
                }
                v
            })
            .collect()
    }

    /// Basis of the column space (a subset of the columns).
    pub fn column_space(&self) -> Vec<Vec<Scalar>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&c| self.column(c)).collect()
    }

    pub fn determinant(&self) -> Scalar {
        assert_eq!(self.rows, self.cols, "determinant of non-square matrix");
        let mut m = self.data.clone();
        let n = self.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
                return self.field.zero();
            };
            if p != c {
                m.swap(p, c);
                det = det.neg();
            }
            det = det.mul(&m[c][c]);
            let inv = m[c][c].inv().unwrap();
            for i in c + 1..n {
                if !m[i][c].is_zero() {
                    let f = m[i][c].mul(&inv);
                    let pivot_row = m[c].clone();
                    for (x, p) in m[i].iter_mut().zip(&pivot_row) {
                        *x = x.sub(&f.mul(p));
                    }
                }
            }
        }
        det
    }
}

/// Incremental echelon form over sparse vectors with ordered keys. The pivot
/// of a stored row is its largest key.
#[derive(Clone, Debug)]
pub struct SparseEchelon<K: Ord + Clone> {
    rows: BTreeMap<K, BTreeMap<K, Scalar>>,
}

impl<K: Ord + Clone> Default for SparseEchelon<K> {
    fn default() -> Self {
        SparseEchelon { rows: BTreeMap::new() }
    }
}

impl<K: Ord + Clone> SparseEchelon<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, mut v: BTreeMap<K, Scalar>) -> BTreeMap<K, Scalar> {
        v.retain(|_, s| !s.is_zero());
        loop {
            let hit = v.iter().rev().find(|(k, _)| self.rows.contains_key(*k)).map(|(k, s)| (k.clone(), s.clone()));
            let Some((k, c)) = hit else { break };
            for (rk, rs) in &self.rows[&k] {
                let e = v.entry(rk.clone()).or_insert_with(|| c.field().zero());
                *e = e.sub(&c.mul(rs));
                if e.is_zero() {
                    v.remove(rk);
                }
            }
        }
        v
    }

    pub fn contains(&self, v: BTreeMap<K, Scalar>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Adds `v`; returns false when it was already in the span.
    pub fn insert(&mut self, v: BTreeMap<K, Scalar>) -> bool {
        let r = self.reduce(v);
        let Some((k, c)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = c.inv().expect("nonzero");
        let row = r.into_iter().map(|(k, s)| (k, s.mul(&inv))).collect();
        self.rows.insert(k, row);
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(v: i64) -> Scalar {
        Field::Rational.from_i64(v)
    }

    #[test]
    fn rank_and_kernel() {
        let m = Matrix::from_rows(Field::Rational, vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)]]);
        assert_eq!(m.rank(), 1);
        let k = m.kernel();
        assert_eq!(k.len(), 2);
        for v in k {
            assert!(m.mul_vec(&v).iter().all(|s| s.is_zero()));
        }
    }

    #[test]
    fn determinant_matches_cofactor() {
        let m = Matrix::from_rows(
            Field::Rational,
            vec![vec![q(2), q(0), q(1)], vec![q(1), q(3), q(2)], vec![q(1), q(1), q(1)]],
        );
        // 2*(3-2) - 0 + 1*(1-3) = 0
        assert!(m.determinant().is_zero());
        assert_eq!(Matrix::identity(Field::Rational, 3).determinant(), q(1));
    }

    #[test]
    fn sparse_echelon_detects_dependence() {
        let mut e: SparseEchelon<u32> = SparseEchelon::new();
        let v1: BTreeMap<u32, Scalar> = [(1, q(1)), (2, q(1))].into_iter().collect();
        let v2: BTreeMap<u32, Scalar> = [(2, q(2)), (1, q(2))].into_iter().collect();
        let v3: BTreeMap<u32, Scalar> = [(0, q(5))].into_iter().collect();
        assert!(e.insert(v1));
        assert!(!e.insert(v2));
        assert!(e.insert(v3));
        assert_eq!(e.rank(), 2);
    }
}
