//! Exact Gaussian elimination over a field (rationals or `Q(sqrt(d))`).

use alloc::vec::Vec;
use core::ops::Div;

use crate::error::{Error, Result};
use crate::matrix::{Matrix, Ring};

pub trait Field: Ring + Div<Output = Self> {}

impl<T: Ring + Div<Output = T>> Field for T {}

/// Reduced row echelon form and the pivot columns.
pub fn rref<T: Field>(m: &Matrix<T>) -> (Matrix<T>, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols() {
        if r == a.rows() {
            break;
        }
        let Some(p) = (r..a.rows()).find(|&i| !a.get(i, c).is_zero()) else {
            continue;
        };
        a.swap_rows(r, p);
        let inv = T::one() / a.get(r, c).clone();
        for j in c..a.cols() {
            let v = a.get(r, j).clone() * inv.clone();
            a.set(r, j, v);
        }
        for i in 0..a.rows() {
            if i == r || a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone();
            for j in c..a.cols() {
                let v = a.get(i, j).clone() - f.clone() * a.get(r, j).clone();
                a.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank<T: Field>(m: &Matrix<T>) -> usize {
    rref(m).1.len()
}

pub fn det<T: Field>(m: &Matrix<T>) -> Result<T> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
    }
    let n = m.rows();
    let mut a = m.clone();
    let mut acc = T::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !a.get(i, c).is_zero()) else {
            return Ok(T::zero());
        };
        if p != c {
            a.swap_rows(p, c);
            acc = -acc;
        }
        let pivot = a.get(c, c).clone();
        acc = acc * pivot.clone();
        for i in c + 1..n {
            if a.get(i, c).is_zero() {
                continue;
            }
            let f = a.get(i, c).clone() / pivot.clone();
            for j in c..n {
                let v = a.get(i, j).clone() - f.clone() * a.get(c, j).clone();
                a.set(i, j, v);
            }
        }
    }
    Ok(acc)
}

/// Inverse of a square matrix; `Ok(None)` when singular.
pub fn inverse<T: Field>(m: &Matrix<T>) -> Result<Option<Matrix<T>>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("inverse of a non-square matrix".into()));
    }
    let n = m.rows();
    let aug = m.hstack(&Matrix::identity(n))?;
    let (r, pivots) = rref(&aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return Ok(None);
    }
    Ok(Some(r.block(0, n, n, n)))
}

/// A solution of `m x = b`, or `Ok(None)` if the system is inconsistent.
/// Free variables are set to zero, so the solution is unique whenever `m` has
/// full column rank.
pub fn solve<T: Field>(m: &Matrix<T>, b: &[T]) -> Result<Option<Vec<T>>> {
    if b.len() != m.rows() {
        return Err(Error::DimensionMismatch(alloc::format!(
            "right-hand side has length {}, matrix has {} rows",
            b.len(),
            m.rows()
        )));
    }
    let rhs = Matrix::new(b.len(), 1, b.to_vec())?;
    let aug = m.hstack(&rhs)?;
    let (r, pivots) = rref(&aug);
    let n = m.cols();
    if pivots.last() == Some(&n) {
        return Ok(None);
    }
    let mut x = alloc::vec![T::zero(); n];
    for (row, &c) in pivots.iter().enumerate() {
        x[c] = r.get(row, n).clone();
    }
    Ok(Some(x))
}

/// Basis of the right nullspace `{x : m x = 0}` over the field.
pub fn nullspace<T: Field>(m: &Matrix<T>) -> Vec<Vec<T>> {
    let (r, pivots) = rref(m);
    let n = m.cols();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = alloc::vec![T::zero(); n];
            v[f] = T::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -r.get(row, f).clone();
            }
            v
        })
        .collect()
}
