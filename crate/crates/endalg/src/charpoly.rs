//! Characteristic polynomials over commutative rings.
//!
//! Two algorithms, deliberately independent so they can cross-check each
//! other: Faddeev-LeVerrier (needs exact division by small integers, so
//! characteristic zero) and the division-free Samuelson-Berkowitz scheme
//! (works over any commutative ring, in particular GF(p)).

use num::{BigInt, BigRational};

use crate::poly::Poly;
use crate::scalar::Field;

/// A commutative ring of characteristic zero with exact division by small
/// integers — what the Faddeev-LeVerrier recurrence needs. Implemented for
/// rationals and for rational polynomials (matrix entries along a family).
pub trait CharZeroRing: Clone + PartialEq + std::fmt::Debug {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn ring_add(&self, other: &Self) -> Self;
    fn ring_mul(&self, other: &Self) -> Self;
    fn ring_neg(&self) -> Self;
    /// Exact division by a nonzero integer.
    fn ring_div_int(&self, k: i64) -> Self;
}

impl CharZeroRing for BigRational {
    fn ring_zero() -> Self {
        num::Zero::zero()
    }
    fn ring_one() -> Self {
        num::One::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        self + other
    }
    fn ring_mul(&self, other: &Self) -> Self {
        self * other
    }
    fn ring_neg(&self) -> Self {
        -self
    }
    fn ring_div_int(&self, k: i64) -> Self {
        self / BigRational::from_integer(BigInt::from(k))
    }
}

impl CharZeroRing for Poly {
    fn ring_zero() -> Self {
        Poly::zero()
    }
    fn ring_one() -> Self {
        Poly::one()
    }
    fn ring_add(&self, other: &Self) -> Self {
        Poly::add(self, other)
    }
    fn ring_mul(&self, other: &Self) -> Self {
        Poly::mul(self, other)
    }
    fn ring_neg(&self) -> Self {
        Poly::neg(self)
    }
    fn ring_div_int(&self, k: i64) -> Self {
        self.scale(&BigRational::new(num::One::one(), BigInt::from(k)))
    }
}

/// Characteristic polynomial of an `n x n` matrix via the Faddeev-LeVerrier
/// recurrence. Returns the monic coefficients `c_0 .. c_n` low-degree-first,
/// so `p(x) = sum c_k x^k` with `c_n = 1` and `p(x) = det(xI - M)`.
pub fn charpoly_faddeev<R: CharZeroRing>(
    n: usize,
    entry: impl Fn(usize, usize) -> R,
) -> Vec<R> {
    if n == 0 {
        return vec![R::ring_one()];
    }
    let a: Vec<Vec<R>> = (0..n)
        .map(|i| (0..n).map(|j| entry(i, j)).collect())
        .collect();
    let matmul = |x: &Vec<Vec<R>>, y: &Vec<Vec<R>>| -> Vec<Vec<R>> {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = R::ring_zero();
                        for k in 0..n {
                            acc = acc.ring_add(&x[i][k].ring_mul(&y[k][j]));
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    };
    let trace = |x: &Vec<Vec<R>>| -> R {
        let mut t = R::ring_zero();
        for (i, row) in x.iter().enumerate() {
            t = t.ring_add(&row[i]);
        }
        t
    };
    let mut coeffs = vec![R::ring_zero(); n + 1];
    coeffs[n] = R::ring_one();
    let mut m = a.clone(); // M_1 = A
    coeffs[n - 1] = trace(&m).ring_neg();
    for k in 2..=n {
        // M_k = A (M_{k-1} + c_{n-k+1} I)
        let mut shifted = m.clone();
        for (i, row) in shifted.iter_mut().enumerate() {
            row[i] = row[i].ring_add(&coeffs[n - k + 1]);
        }
        m = matmul(&a, &shifted);
        coeffs[n - k] = trace(&m).ring_neg().ring_div_int(k as i64);
    }
    coeffs
}

/// Characteristic polynomial by the division-free Samuelson-Berkowitz
/// algorithm, valid over any [`Field`] context — in particular over GF(p)
/// where Faddeev-LeVerrier's integer divisions break down. Same coefficient
/// convention as [`charpoly_faddeev`].
pub fn charpoly_berkowitz<F: Field>(
    f: &F,
    n: usize,
    entry: impl Fn(usize, usize) -> F::El,
) -> Vec<F::El> {
    if n == 0 {
        return vec![f.one()];
    }
    let a: Vec<Vec<F::El>> = (0..n)
        .map(|i| (0..n).map(|j| entry(i, j)).collect())
        .collect();
    // Process trailing principal submatrices, smallest first. `v` holds the
    // char-poly coefficients of the current submatrix, leading-first.
    let mut v: Vec<F::El> = vec![f.one(), f.neg(&a[n - 1][n - 1])];
    for r in (0..n.saturating_sub(1)).rev() {
        // submatrix rows/cols r..n; partition with pivot a[r][r], row
        // vector R = a[r][r+1..], column C = a[r+1..][r], block M.
        let size = n - r; // new submatrix size
        let pivot = a[r][r].clone();
        let row: Vec<F::El> = (r + 1..n).map(|j| a[r][j].clone()).collect();
        let col: Vec<F::El> = (r + 1..n).map(|i| a[i][r].clone()).collect();
        // moments: mom[k] = R * M^k * C for k = 0 .. size-2
        let mut moments = Vec::with_capacity(size.saturating_sub(1));
        let mut cur = col.clone();
        for _ in 0..size.saturating_sub(1) {
            let mut dot = f.zero();
            for (x, y) in row.iter().zip(cur.iter()) {
                dot = f.add(&dot, &f.mul(x, y));
            }
            moments.push(dot);
            // cur = M * cur
            let mut next = vec![f.zero(); cur.len()];
            for (i, ni) in next.iter_mut().enumerate() {
                for (j, cj) in cur.iter().enumerate() {
                    *ni = f.add(ni, &f.mul(&a[r + 1 + i][r + 1 + j], cj));
                }
            }
            cur = next;
        }
        // Toeplitz multiply: new_v[i] = sum_k t[k] * v[i-k], where
        // t[0] = 1, t[1] = -pivot, t[k+1] = -moments[k-1].
        let mut t = vec![f.one(), f.neg(&pivot)];
        for mk in &moments {
            t.push(f.neg(mk));
        }
        let mut new_v = vec![f.zero(); size + 1];
        for (i, nv) in new_v.iter_mut().enumerate() {
            for (k, tk) in t.iter().enumerate() {
                if k > i {
                    break;
                }
                if let Some(vv) = v.get(i - k) {
                    *nv = f.add(nv, &f.mul(tk, vv));
                }
            }
        }
        v = new_v;
    }
    // convert leading-first (length n+1) to low-degree-first
    v.reverse();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{parse_rational, PrimeField, Rationals};

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    #[test]
    fn faddeev_charpoly_2x2() {
        // [[1, 2], [3, 4]]: x^2 - 5x - 2
        let c = charpoly_faddeev(2, |i, j| {
            q(match (i, j) {
                (0, 0) => "1",
                (0, 1) => "2",
                (1, 0) => "3",
                _ => "4",
            })
        });
        assert_eq!(c, vec![q("-2"), q("-5"), q("1")]);
    }

    #[test]
    fn berkowitz_matches_faddeev_over_rationals() {
        // a fixed 4x4 with varied entries
        let entries = |i: usize, j: usize| -> BigRational {
            q(&format!("{}", (3 * i + 5 * j + i * j) as i64 % 7 - 3))
        };
        let fl = charpoly_faddeev(4, entries);
        let bk = charpoly_berkowitz(&Rationals, 4, entries);
        assert_eq!(fl, bk);
    }

    #[test]
    fn berkowitz_over_prime_field() {
        let f = PrimeField::new(2).unwrap();
        // [[1,1],[0,1]] over GF(2): (x-1)^2 = x^2 + 1 mod 2
        let c = charpoly_berkowitz(&f, 2, |i, j| u64::from(i <= j));
        assert_eq!(c, vec![1, 0, 1]);
        // nilpotent [[0,1],[0,0]]: x^2
        let c = charpoly_berkowitz(&f, 2, |i, j| u64::from(i == 0 && j == 1));
        assert_eq!(c, vec![0, 0, 1]);
    }

    #[test]
    fn charpoly_along_a_polynomial_family() {
        // M(t) = [[t, 1], [0, 2t]]: char poly x^2 - 3t x + 2t^2
        let c = charpoly_faddeev(2, |i, j| match (i, j) {
            (0, 0) => Poly::x(),
            (0, 1) => Poly::one(),
            (1, 1) => Poly::x().scale(&q("2")),
            _ => Poly::zero(),
        });
        assert_eq!(c[2], Poly::one());
        assert_eq!(c[1], Poly::x().scale(&q("-3")));
        assert_eq!(c[0], Poly::x().pow(2).scale(&q("2")));
    }

    #[test]
    fn determinant_term_matches_matrix_determinant() {
        use crate::linalg::Mat;
        // constant coefficient of det(xI - M) is (-1)^n det(M)
        let rows: Vec<Vec<BigRational>> = vec![
            vec![q("1"), q("2"), q("0")],
            vec![q("3"), q("4"), q("1")],
            vec![q("0"), q("1"), q("5")],
        ];
        let m = Mat::from_rows(Rationals, rows.clone()).unwrap();
        let c = charpoly_faddeev(3, |i, j| rows[i][j].clone());
        assert_eq!(c[0], -m.det());
    }
}
