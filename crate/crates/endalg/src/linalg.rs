//! Exact dense linear algebra over any [`Field`].
//!
//! Matrices carry their field context so operations need no extra argument.
//! Everything is plain Gaussian elimination — dimensions here are tiny
//! (an algebra of dimension d gives d x d or d^2 x d systems at worst), so
//! clarity wins over asymptotics.

use crate::error::AlgebraError;
use crate::scalar::Field;

/// A dense `rows x cols` matrix over the field `F`, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<F: Field> {
    pub f: F,
    pub rows: usize,
    pub cols: usize,
    data: Vec<F::El>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(f: F, rows: usize, cols: usize) -> Self {
        let data = vec![f.zero(); rows * cols];
        Mat { f, rows, cols, data }
    }

    pub fn identity(f: F, n: usize) -> Self {
        let mut m = Mat::zeros(f, n, n);
        for i in 0..n {
            let one = m.f.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_rows(f: F, rows: Vec<Vec<F::El>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::DimensionMismatch(
                "ragged rows in matrix literal".into(),
            ));
        }
        Ok(Mat {
            f,
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, i: usize, j: usize) -> &F::El {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::El) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F::El] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F::El> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Mat::zeros(self.f.clone(), self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.f.add(a, b))
            .collect();
        Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| self.f.sub(a, b))
            .collect();
        Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &F::El) -> Self {
        let data = self.data.iter().map(|a| self.f.mul(a, c)).collect();
        Mat { f: self.f.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matmul shape mismatch");
        let mut out = Mat::zeros(self.f.clone(), self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let aik = self.get(i, k);
                if self.f.is_zero(aik) {
                    continue;
                }
                for j in 0..other.cols {
                    let add = self.f.mul(aik, other.get(k, j));
                    let cur = self.f.add(out.get(i, j), &add);
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Matrix-vector product.
    pub fn apply(&self, v: &[F::El]) -> Vec<F::El> {
        assert_eq!(self.cols, v.len(), "apply shape mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = self.f.zero();
                for j in 0..self.cols {
                    acc = self.f.add(&acc, &self.f.mul(self.get(i, j), &v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|a| self.f.is_zero(a))
    }

    /// Reduced row echelon form, returning the pivot column indices.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let f = m.f.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r >= m.rows {
                break;
            }
            // find a nonzero pivot at or below row r
            let Some(pr) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else {
                continue;
            };
            if pr != r {
                for j in 0..m.cols {
                    let a = m.get(r, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(r, j, b);
                    m.set(pr, j, a);
                }
            }
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            for j in 0..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in 0..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
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

    /// A basis of the right nullspace `{ v : Mv = 0 }`.
    ///
    /// Free variables are set to one in turn, in increasing column order, so
    /// the basis is deterministic.
    pub fn nullspace(&self) -> Vec<Vec<F::El>> {
        let f = self.f.clone();
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Vec::with_capacity(free.len());
        for &fc in &free {
            let mut v = vec![f.zero(); self.cols];
            v[fc] = f.one();
            for (prow, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(r.get(prow, fc));
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `M x = b`; `None` when inconsistent. With free variables the
    /// particular solution sets them to zero.
    pub fn solve(&self, b: &[F::El]) -> Option<Vec<F::El>> {
        assert_eq!(self.rows, b.len(), "solve shape mismatch");
        let f = self.f.clone();
        let mut aug = Mat::zeros(f.clone(), self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None; // a row 0 = 1
        }
        let mut x = vec![f.zero(); self.cols];
        for (prow, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(prow, self.cols).clone();
        }
        Some(x)
    }

    /// Inverse of a square matrix; `None` when singular.
    pub fn inverse(&self) -> Option<Self> {
        assert_eq!(self.rows, self.cols, "inverse of non-square matrix");
        let n = self.rows;
        let f = self.f.clone();
        let mut aug = Mat::zeros(f.clone(), n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, f.one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).ne((0..n).collect::<Vec<_>>().iter()) {
            return None;
        }
        let mut inv = Mat::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, r.get(i, n + j).clone());
            }
        }
        Some(inv)
    }

    /// Determinant by elimination with row swaps.
    pub fn det(&self) -> F::El {
        assert_eq!(self.rows, self.cols, "det of non-square matrix");
        let f = self.f.clone();
        let mut m = self.clone();
        let n = m.rows;
        let mut det = f.one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else {
                return f.zero();
            };
            if pr != c {
                for j in 0..n {
                    let a = m.get(c, j).clone();
                    let b = m.get(pr, j).clone();
                    m.set(c, j, b);
                    m.set(pr, j, a);
                }
                det = f.neg(&det);
            }
            let pivot = m.get(c, c).clone();
            det = f.mul(&det, &pivot);
            let inv = f.inv(&pivot).expect("pivot nonzero");
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    pub fn trace(&self) -> F::El {
        assert_eq!(self.rows, self.cols, "trace of non-square matrix");
        let mut t = self.f.zero();
        for i in 0..self.rows {
            t = self.f.add(&t, self.get(i, i));
        }
        t
    }
}

/// Reduces a spanning list of vectors to a deterministic basis (the nonzero
/// rows of the RREF of the stacked vectors).
pub fn span_basis<F: Field>(f: F, vectors: &[Vec<F::El>], dim: usize) -> Vec<Vec<F::El>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_rows(f.clone(), vectors.to_vec()).expect("uniform dimension");
    assert_eq!(m.cols, dim);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Is `v` in the span of `basis` (given as RREF-reduced or arbitrary vectors)?
pub fn in_span<F: Field>(f: F, basis: &[Vec<F::El>], v: &[F::El]) -> bool {
    if v.iter().all(|c| f.is_zero(c)) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let dim = v.len();
    let before = span_basis(f.clone(), &rows, dim).len();
    rows.push(v.to_vec());
    let after = span_basis(f, &rows, dim).len();
    before == after
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{PrimeField, Rationals};
    use num::BigRational;

    fn q(s: &str) -> BigRational {
        crate::scalar::parse_rational(s).unwrap()
    }

    fn qmat(rows: &[&[&str]]) -> Mat<Rationals> {
        Mat::from_rows(
            Rationals,
            rows.iter()
                .map(|r| r.iter().map(|s| q(s)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rref_and_rank() {
        let m = qmat(&[&["1", "2", "3"], &["2", "4", "6"], &["0", "1", "1"]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 1]);
        assert_eq!(m.rank(), 2);
        // row 0 = e1 + 0*e2 + 1*e3 after reduction
        assert_eq!(r.get(0, 0), &q("1"));
        assert_eq!(r.get(0, 1), &q("0"));
        assert_eq!(r.get(0, 2), &q("1"));
    }

    #[test]
    fn nullspace_is_kernel() {
        let m = qmat(&[&["1", "2", "3"], &["2", "4", "6"], &["0", "1", "1"]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 1);
        for v in &ns {
            let mv = m.apply(v);
            assert!(mv.iter().all(|c| c == &q("0")));
        }
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = qmat(&[&["1", "1"], &["1", "-1"]]);
        let x = m.solve(&[q("3"), q("1")]).unwrap();
        assert_eq!(x, vec![q("2"), q("1")]);

        let sing = qmat(&[&["1", "1"], &["2", "2"]]);
        assert!(sing.solve(&[q("0"), q("1")]).is_none());
        assert!(sing.solve(&[q("1"), q("2")]).is_some());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = qmat(&[&["2", "1"], &["1", "1"]]);
        let inv = m.inverse().unwrap();
        let prod = m.matmul(&inv);
        assert_eq!(prod, Mat::identity(Rationals, 2));
        let sing = qmat(&[&["1", "2"], &["2", "4"]]);
        assert!(sing.inverse().is_none());
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = qmat(&[&["1", "2", "0"], &["3", "4", "1"], &["0", "1", "5"]]);
        // cofactor along first row: 1*(20-1) - 2*(15-0) + 0 = -11
        assert_eq!(m.det(), q("-11"));
        assert_eq!(Mat::identity(Rationals, 4).det(), q("1"));
    }

    #[test]
    fn prime_field_solve() {
        let f = PrimeField::new(5).unwrap();
        let m = Mat::from_rows(f, vec![vec![2u64, 1], vec![1, 1]]).unwrap();
        let x = m.solve(&[0, 1]).unwrap();
        // 2x + y = 0, x + y = 1 over GF(5): x = 4, y = 2
        assert_eq!(x, vec![4, 2]);
        assert_eq!(m.det(), 1);
        let inv = m.inverse().unwrap();
        assert_eq!(m.matmul(&inv), Mat::identity(PrimeField::new(5).unwrap(), 2));
    }

    #[test]
    fn span_membership() {
        let b = vec![vec![q("1"), q("0"), q("1")], vec![q("0"), q("1"), q("0")]];
        let basis = span_basis(Rationals, &b, 3);
        assert_eq!(basis.len(), 2);
        assert!(in_span(Rationals, &basis, &[q("2"), q("3"), q("2")]));
        assert!(!in_span(Rationals, &basis, &[q("1"), q("0"), q("0")]));
        assert!(in_span(Rationals, &basis, &[q("0"), q("0"), q("0")]));
    }
}
