//! Dense integer matrices and Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of machine integers; every row must have the same length.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            let row = row.as_ref();
            if row.len() != cols {
                return Err(Error::Linalg(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().map(|&x| BigInt::from(x)));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Linalg(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[source]
    fn add_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let s = &self.data[source * self.cols + j];
            if !s.is_zero() {
                let delta = s * factor;
                self.data[target * self.cols + j] += delta;
            }
        }
    }

    /// col[target] += factor * col[source]
    fn add_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let s = &self.data[i * self.cols + source];
            if !s.is_zero() {
                let delta = s * factor;
                self.data[i * self.cols + target] += delta;
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = std::mem::take(&mut self.data[i * self.cols + j]);
            self.data[i * self.cols + j] = -v;
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Invariant factors `d1 | d2 | ... | d_rank` of an integer matrix (nonzero ones only).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithForm {
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithForm {
    /// Invariant factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }
}

/// Smith normal form together with unimodular `left`, `right` such that
/// `left * M * right` is diagonal with the invariant factors leading.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub form: SmithForm,
    pub left: IntMatrix,
    pub right: IntMatrix,
}

/// Invariant factors of `m`. Elimination with minimal-absolute-value pivots.
pub fn smith_normal_form(m: &IntMatrix) -> SmithForm {
    run_smith(m.clone(), false).0
}

/// Like [`smith_normal_form`] but also returns the transformation matrices.
pub fn smith_decomposition(m: &IntMatrix) -> SmithDecomposition {
    let (form, transforms) = run_smith(m.clone(), true);
    let (left, right) = transforms.expect("transforms requested");
    SmithDecomposition { form, left, right }
}

fn run_smith(mut a: IntMatrix, track: bool) -> (SmithForm, Option<(IntMatrix, IntMatrix)>) {
    let (rows, cols) = (a.rows, a.cols);
    let mut left = track.then(|| IntMatrix::identity(rows));
    let mut right = track.then(|| IntMatrix::identity(cols));
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t, t) else {
            break;
        };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        if let Some(l) = left.as_mut() {
            l.swap_rows(t, pi);
        }
        if let Some(r) = right.as_mut() {
            r.swap_cols(t, pj);
        }

        loop {
            let pivot = a.get(t, t).clone();
            let mut clean = true;
            for i in t + 1..rows {
                let v = a.get(i, t);
                if v.is_zero() {
                    continue;
                }
                let q = -v.div_floor(&pivot);
                a.add_row_multiple(i, t, &q);
                if let Some(l) = left.as_mut() {
                    l.add_row_multiple(i, t, &q);
                }
                if !a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let v = a.get(t, j);
                if v.is_zero() {
                    continue;
                }
                let q = -v.div_floor(&pivot);
                a.add_col_multiple(j, t, &q);
                if let Some(r) = right.as_mut() {
                    r.add_col_multiple(j, t, &q);
                }
                if !a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                // a smaller remainder sits in row t or column t: make it the pivot
                let (bi, bj) = min_abs_in_cross(&a, t);
                a.swap_rows(t, bi);
                a.swap_cols(t, bj);
                if let Some(l) = left.as_mut() {
                    l.swap_rows(t, bi);
                }
                if let Some(r) = right.as_mut() {
                    r.swap_cols(t, bj);
                }
                continue;
            }
            // row and column are clear; enforce divisibility of the trailing block
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a.get(i, j).is_multiple_of(&pivot)));
            match offender {
                Some(i) => {
                    let one = BigInt::one();
                    a.add_row_multiple(t, i, &one);
                    if let Some(l) = left.as_mut() {
                        l.add_row_multiple(t, i, &one);
                    }
                }
                None => break,
            }
        }

        if a.get(t, t).is_negative() {
            a.negate_row(t);
            if let Some(l) = left.as_mut() {
                l.negate_row(t);
            }
        }
        diagonal.push(a.get(t, t).clone());
    }

    let rank = diagonal.len();
    let form = SmithForm { diagonal, rank };
    (form, left.zip(right))
}

fn min_abs_entry(a: &IntMatrix, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in r0..a.rows {
        for j in c0..a.cols {
            let v = a.get(i, j);
            if v.is_zero() {
                continue;
            }
            let better = match best {
                None => true,
                Some((bi, bj)) => v.abs() < a.get(bi, bj).abs(),
            };
            if better {
                best = Some((i, j));
                if v.abs().is_one() {
                    return best;
                }
            }
        }
    }
    best
}

fn min_abs_in_cross(a: &IntMatrix, t: usize) -> (usize, usize) {
    let mut best = (t, t);
    let mut best_abs: Option<BigInt> = None;
    let candidates = (t + 1..a.rows)
        .map(|i| (i, t))
        .chain((t + 1..a.cols).map(|j| (t, j)));
    for (i, j) in candidates {
        let v = a.get(i, j);
        if v.is_zero() {
            continue;
        }
        let abs = v.abs();
        if best_abs.as_ref().is_none_or(|b| abs < *b) {
            best = (i, j);
            best_abs = Some(abs);
        }
    }
    best
}
