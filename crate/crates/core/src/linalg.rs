//! Small exact linear algebra: span membership by Gaussian elimination and
//! dense square matrices over any ring.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::symop::GaussianRational;

pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
}

impl<T> Ring for T where
    T: Clone
        + PartialEq
        + fmt::Debug
        + Zero
        + One
        + Add<Output = T>
        + Sub<Output = T>
        + Mul<Output = T>
        + Neg<Output = T>
{
}

/// Sparse coordinate vector over the Gaussian rationals.
pub type SparseVector<K> = BTreeMap<K, GaussianRational>;

/// Reduced row echelon form of the augmented system `[basis | target]`.
struct Echelon {
    rows: Vec<Vec<GaussianRational>>,
    pivots: Vec<usize>,
}

fn echelon(mut rows: Vec<Vec<GaussianRational>>, n_cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..n_cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inverse().expect("nonzero pivot");
        for x in rows[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for c in 0..rows[i].len() {
                    let delta = &factor * &rows[r][c];
                    rows[i][c] -= &delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Echelon { rows, pivots }
}

fn dense_rows<K: Ord + Clone>(
    columns: &[&SparseVector<K>],
) -> (Vec<Vec<GaussianRational>>, usize) {
    let keys: BTreeSet<&K> = columns.iter().flat_map(|c| c.keys()).collect();
    let rows = keys
        .iter()
        .map(|k| {
            columns
                .iter()
                .map(|c| c.get(*k).cloned().unwrap_or_else(GaussianRational::zero))
                .collect()
        })
        .collect();
    (rows, columns.len())
}

/// Coefficients `c` with `Σ cᵢ·basisᵢ = target`, or `None` when the target
/// lies outside the span. Free variables are set to zero when the basis is
/// dependent.
pub fn express_in_span<K: Ord + Clone>(
    basis: &[SparseVector<K>],
    target: &SparseVector<K>,
) -> Option<Vec<GaussianRational>> {
    let mut columns: Vec<&SparseVector<K>> = basis.iter().collect();
    columns.push(target);
    let (rows, n) = dense_rows(&columns);
    let n_basis = n - 1;
    let ech = echelon(rows, n_basis);
    let rank = ech.pivots.len();
    if ech.rows.iter().skip(rank).any(|row| !row[n_basis].is_zero()) {
        return None;
    }
    let mut coeffs = vec![GaussianRational::zero(); n_basis];
    for (r, &col) in ech.pivots.iter().enumerate() {
        coeffs[col] = ech.rows[r][n_basis].clone();
    }
    Some(coeffs)
}

pub fn rank<K: Ord + Clone>(vectors: &[SparseVector<K>]) -> usize {
    let columns: Vec<&SparseVector<K>> = vectors.iter().collect();
    let (rows, n) = dense_rows(&columns);
    echelon(rows, n).pivots.len()
}

/// Dense `n × n` matrix, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Ring> SquareMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![T::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> &T {
        &self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, v: T) {
        self.data[row * self.n + col] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &T) -> Self {
        Self { n: self.n, data: self.data.iter().map(|x| x.clone() * s.clone()).collect() }
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j).clone() + a.clone() * rhs.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.matmul(rhs) - rhs.matmul(self)
    }
}

impl<T: Ring> Add for SquareMatrix<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let data = self.data.into_iter().zip(rhs.data).map(|(a, b)| a + b).collect();
        Self { n: self.n, data }
    }
}

impl<T: Ring> Sub for SquareMatrix<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        assert_eq!(self.n, rhs.n, "dimension mismatch");
        let data = self.data.into_iter().zip(rhs.data).map(|(a, b)| a - b).collect();
        Self { n: self.n, data }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(entries: &[(u8, i64)]) -> SparseVector<u8> {
        entries.iter().map(|&(k, c)| (k, GaussianRational::real(c))).collect()
    }

    #[test]
    fn span_membership() {
        let basis = vec![v(&[(0, 1), (1, 1)]), v(&[(1, 1)])];
        let c = express_in_span(&basis, &v(&[(0, 2), (1, 5)])).unwrap();
        assert_eq!(c, vec![GaussianRational::real(2), GaussianRational::real(3)]);
        assert!(express_in_span(&basis, &v(&[(2, 1)])).is_none());
        assert_eq!(express_in_span(&basis, &v(&[])).unwrap(), vec![GaussianRational::zero(); 2]);
    }

    #[test]
    fn dependent_basis_still_solves() {
        let basis = vec![v(&[(0, 1)]), v(&[(0, 2)]), v(&[(1, 1)])];
        assert_eq!(rank(&basis), 2);
        let c = express_in_span(&basis, &v(&[(0, 4), (1, -1)])).unwrap();
        let rebuilt: Vec<GaussianRational> = (0..2u8)
            .map(|k| {
                basis.iter().zip(&c).fold(GaussianRational::zero(), |acc, (b, ci)| {
                    acc + b.get(&k).cloned().unwrap_or_default() * ci.clone()
                })
            })
            .collect();
        assert_eq!(rebuilt, vec![GaussianRational::real(4), GaussianRational::real(-1)]);
    }

    #[test]
    fn matrix_commutator() {
        let mut e12 = SquareMatrix::<GaussianRational>::zeros(2);
        e12.set(0, 1, GaussianRational::one());
        let mut e21 = SquareMatrix::zeros(2);
        e21.set(1, 0, GaussianRational::one());
        let h = e12.commutator(&e21);
        assert_eq!(h.get(0, 0), &GaussianRational::real(1));
        assert_eq!(h.get(1, 1), &GaussianRational::real(-1));
        assert!(SquareMatrix::<GaussianRational>::identity(3).commutator(&SquareMatrix::identity(3)).is_zero());
    }
}
