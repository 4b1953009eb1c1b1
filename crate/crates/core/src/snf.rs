//! Smith and Hermite normal forms over `Z`, and saturated integer kernels.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::Result;
use crate::matrix::{IntMatrix, IntVector, Matrix, ScalarMatrix};

/// `u * m * v = d` with `u`, `v` unimodular and `d` diagonal,
/// `d_1 | d_2 | ... | d_k >= 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1, ..., d_min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows().min(self.d.cols())).map(|i| self.d.get(i, i).clone()).collect()
    }

    /// Nonzero invariant factors.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        self.diagonal().into_iter().filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    v: IntMatrix,
}

impl Reducer {
    fn add_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols() {
                let x = m.get(dst, j) + k * m.get(src, j);
                m.set(dst, j, x);
            }
        }
    }

    fn add_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for m in [&mut self.a, &mut self.v] {
            for i in 0..m.rows() {
                let x = m.get(i, dst) + k * m.get(i, src);
                m.set(i, dst, x);
            }
        }
    }

    fn swap_rows(&mut self, x: usize, y: usize) {
        self.a.swap_rows(x, y);
        self.u.swap_rows(x, y);
    }

    fn swap_cols(&mut self, x: usize, y: usize) {
        self.a.swap_cols(x, y);
        self.v.swap_cols(x, y);
    }

    fn negate_row(&mut self, r: usize) {
        for m in [&mut self.a, &mut self.u] {
            for j in 0..m.cols() {
                let x = -m.get(r, j).clone();
                m.set(r, j, x);
            }
        }
    }

    /// Smallest nonzero |entry| in the trailing submatrix starting at `t`.
    fn smallest(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows() {
            for j in t..self.a.cols() {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < self.a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn process(&mut self) {
        let (rows, cols) = (self.a.rows(), self.a.cols());
        for t in 0..rows.min(cols) {
            let Some((pi, pj)) = self.smallest(t) else { return };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let pivot = self.a.get(t, t).clone();
                let mut dirty = false;
                for i in t + 1..rows {
                    let q = self.a.get(i, t).div_floor(&pivot);
                    if !q.is_zero() {
                        self.add_row(i, t, &-q);
                    }
                    if !self.a.get(i, t).is_zero() {
                        dirty = true;
                    }
                }
                for j in t + 1..cols {
                    let q = self.a.get(t, j).div_floor(&pivot);
                    if !q.is_zero() {
                        self.add_col(j, t, &-q);
                    }
                    if !self.a.get(t, j).is_zero() {
                        dirty = true;
                    }
                }
                if dirty {
                    // a remainder smaller than the pivot survived; move it in
                    let mut best = (t, t);
                    for i in t + 1..rows {
                        let x = self.a.get(i, t);
                        if !x.is_zero() && x.abs() < self.a.get(best.0, best.1).abs() {
                            best = (i, t);
                        }
                    }
                    for j in t + 1..cols {
                        let x = self.a.get(t, j);
                        if !x.is_zero() && x.abs() < self.a.get(best.0, best.1).abs() {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // row and column are clear; enforce divisibility of the rest
                let offender = (t + 1..rows)
                    .find_map(|i| (t + 1..cols).find(|&j| !self.a.get(i, j).is_multiple_of(&pivot)).map(|_| i));
                match offender {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a.get(t, t).is_negative() {
                self.negate_row(t);
            }
        }
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    let mut r = Reducer { a: m.clone(), u: IntMatrix::identity(m.rows()), v: IntMatrix::identity(m.cols()) };
    r.process();
    let out = SmithForm { u: r.u, d: r.a, v: r.v };
    debug_assert!(check_smith(m, &out), "Smith form postcondition failed");
    out
}

/// Verifies every Smith form postcondition exactly.
pub fn check_smith(m: &IntMatrix, s: &SmithForm) -> bool {
    if &(&s.u * m) * &s.v != s.d {
        return false;
    }
    for i in 0..s.d.rows() {
        for j in 0..s.d.cols() {
            if i != j && !s.d.get(i, j).is_zero() {
                return false;
            }
        }
    }
    let diag = s.diagonal();
    if diag.iter().any(|x| x.is_negative()) {
        return false;
    }
    for w in diag.windows(2) {
        let ok = if w[0].is_zero() { w[1].is_zero() } else { w[1].is_multiple_of(&w[0]) };
        if !ok {
            return false;
        }
    }
    int_det(&s.u).abs().is_one() && int_det(&s.v).abs().is_one()
}

/// Determinant of a square integer matrix by fraction-free (Bareiss) elimination.
pub fn int_det(m: &IntMatrix) -> BigInt {
    assert!(m.is_square(), "determinant of a non-square matrix");
    let n = m.rows();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.clone();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return BigInt::zero();
            };
            a.swap_rows(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let x = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, x);
            }
        }
        prev = a.get(k, k).clone();
    }
    sign * a.get(n - 1, n - 1)
}

/// Row-style Hermite normal form: pivots positive, entries above each pivot
/// reduced into `[0, pivot)`, zero rows dropped.
pub fn hermite_rows(m: &IntMatrix) -> IntMatrix {
    let mut a = m.clone();
    let (rows, cols) = (a.rows(), a.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let nonzero: Vec<usize> = (r..rows).filter(|&i| !a.get(i, c).is_zero()).collect();
            if nonzero.is_empty() {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| a.get(i, c).abs()).unwrap();
            a.swap_rows(r, p);
            if nonzero.len() == 1 {
                break;
            }
            let pivot = a.get(r, c).clone();
            for i in r + 1..rows {
                let q = a.get(i, c).div_floor(&pivot);
                if q.is_zero() {
                    continue;
                }
                for j in 0..cols {
                    let x = a.get(i, j) - &q * a.get(r, j);
                    a.set(i, j, x);
                }
            }
        }
        if a.get(r, c).is_zero() {
            continue;
        }
        if a.get(r, c).is_negative() {
            for j in 0..cols {
                let x = -a.get(r, j).clone();
                a.set(r, j, x);
            }
        }
        let pivot = a.get(r, c).clone();
        for i in 0..r {
            let q = a.get(i, c).div_floor(&pivot);
            if q.is_zero() {
                continue;
            }
            for j in 0..cols {
                let x = a.get(i, j) - &q * a.get(r, j);
                a.set(i, j, x);
            }
        }
        r += 1;
    }
    a.block(0, 0, r, cols)
}

/// Splits every scalar row into its rational and `sqrt(d)` coordinates and
/// clears denominators row by row.
fn integer_system(m: &ScalarMatrix) -> IntMatrix {
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for i in 0..m.rows() {
        let entries = m.row(i);
        let parts: [Vec<_>; 2] = [
            entries.iter().map(|x| x.rational_part().clone()).collect(),
            entries.iter().map(|x| x.surd_part().clone()).collect(),
        ];
        for part in parts {
            if part.iter().all(|x| x.is_zero()) {
                continue;
            }
            let lcm = part.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            rows.push(part.iter().map(|x| (x * &lcm).to_integer()).collect());
        }
    }
    if rows.is_empty() {
        return Matrix::zeros(1, m.cols());
    }
    Matrix::from_rows(rows).expect("rows share the column count")
}

/// Saturated basis of `{x in Z^cols : m x = 0}`, in Hermite normal form order.
pub fn integer_kernel(m: &ScalarMatrix) -> Vec<IntVector> {
    let sys = integer_system(m);
    let s = smith_normal_form(&sys);
    let r = s.rank();
    let n = sys.cols();
    if r == n {
        return Vec::new();
    }
    let basis = s.v.block(0, r, n, n - r).transpose();
    let h = hermite_rows(&basis);
    (0..h.rows()).map(|i| h.row(i).to_vec()).collect()
}

/// Solves `m x = b` over `Z` if an integer solution exists.
pub fn integer_solve(m: &IntMatrix, b: &[BigInt]) -> Result<Option<IntVector>> {
    let s = smith_normal_form(m);
    let ub = s.u.mul_vec(b)?;
    let mut y = alloc::vec![BigInt::zero(); m.cols()];
    for (i, c) in ub.iter().enumerate() {
        let d = if i < m.cols() { s.d.get(i, i).clone() } else { BigInt::zero() };
        if d.is_zero() {
            if !c.is_zero() {
                return Ok(None);
            }
        } else if c.is_multiple_of(&d) {
            y[i] = c / d;
        } else {
            return Ok(None);
        }
    }
    Ok(Some(s.v.mul_vec(&y)?))
}
