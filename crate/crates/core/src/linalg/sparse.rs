//! Smith normal form for large sparse integer matrices (boundary maps).
//!
//! Unit entries are eliminated first: a pivot `±1` at `(r, c)` splits off an
//! invariant factor 1, and the rest of the matrix becomes the Schur complement
//! `M' = M - col_c * row_r / pivot`, which stays integral. Pivots are taken
//! from the sparsest columns first to limit fill-in. Whatever survives (no
//! unit entries left) goes through the dense algorithm.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap};

use num_bigint::BigInt;
use num_traits::One;

use super::int_matrix::{smith_normal_form, IntMatrix, SmithForm};

/// Coordinate-format integer matrix.
#[derive(Clone, Debug, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, i64)>,
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    /// Adds `value` at `(row, col)`; duplicate coordinates are summed.
    pub fn push(&mut self, row: usize, col: usize, value: i64) {
        assert!(row < self.rows && col < self.cols, "entry out of bounds");
        if value != 0 {
            self.entries.push((row, col, value));
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for &(i, j, v) in &self.entries {
            let cur = m.get(i, j).clone();
            m.set(i, j, cur + v);
        }
        m
    }
}

struct Eliminator {
    rows: Vec<BTreeMap<usize, i64>>,
    cols: Vec<BTreeSet<usize>>,
    row_alive: Vec<bool>,
    col_alive: Vec<bool>,
    heap: BinaryHeap<Reverse<(usize, usize)>>,
    unit_pivots: usize,
}

struct Overflow;

impl Eliminator {
    fn new(m: &SparseIntMatrix) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows];
        for &(i, j, v) in &m.entries {
            *rows[i].entry(j).or_insert(0) += v;
        }
        let mut cols = vec![BTreeSet::new(); m.cols];
        for (i, row) in rows.iter_mut().enumerate() {
            row.retain(|_, v| *v != 0);
            for &j in row.keys() {
                cols[j].insert(i);
            }
        }
        let heap = cols
            .iter()
            .enumerate()
            .map(|(j, c)| Reverse((c.len(), j)))
            .collect();
        Eliminator {
            row_alive: vec![true; m.rows],
            col_alive: vec![true; m.cols],
            rows,
            cols,
            heap,
            unit_pivots: 0,
        }
    }

    fn run(&mut self) -> Result<(), Overflow> {
        while let Some(Reverse((len, c))) = self.heap.pop() {
            if !self.col_alive[c] || self.cols[c].len() != len {
                continue;
            }
            if len == 0 {
                self.col_alive[c] = false;
                continue;
            }
            let pivot_row = self.cols[c]
                .iter()
                .copied()
                .filter(|&r| self.rows[r][&c].abs() == 1)
                .min_by_key(|&r| (self.rows[r].len(), r));
            // columns without a unit are revisited only if fill-in changes them
            if let Some(r) = pivot_row {
                self.eliminate(r, c)?;
            }
        }
        Ok(())
    }

    fn eliminate(&mut self, r: usize, c: usize) -> Result<(), Overflow> {
        let pivot = self.rows[r][&c];
        let pivot_row: Vec<(usize, i64)> = self.rows[r].iter().map(|(&j, &v)| (j, v)).collect();
        let targets: Vec<usize> = self.cols[c].iter().copied().filter(|&i| i != r).collect();
        for i in targets {
            // pivot is a unit, so 1/pivot == pivot
            let factor = self.rows[i][&c].checked_mul(pivot).ok_or(Overflow)?;
            let mut updated = self.rows[i].clone();
            for &(j, v) in &pivot_row {
                let delta = factor.checked_mul(v).ok_or(Overflow)?;
                let cur = updated.get(&j).copied().unwrap_or(0);
                let new = cur.checked_sub(delta).ok_or(Overflow)?;
                if new == 0 {
                    updated.remove(&j);
                } else {
                    updated.insert(j, new);
                }
            }
            for &(j, _) in &pivot_row {
                let had = self.rows[i].contains_key(&j);
                let has = updated.contains_key(&j);
                if had != has {
                    if has {
                        self.cols[j].insert(i);
                    } else {
                        self.cols[j].remove(&i);
                    }
                    if j != c {
                        self.heap.push(Reverse((self.cols[j].len(), j)));
                    }
                }
            }
            self.rows[i] = updated;
        }
        for &(j, _) in &pivot_row {
            self.cols[j].remove(&r);
            if j != c {
                self.heap.push(Reverse((self.cols[j].len(), j)));
            }
        }
        self.rows[r].clear();
        self.row_alive[r] = false;
        self.col_alive[c] = false;
        self.cols[c].clear();
        self.unit_pivots += 1;
        Ok(())
    }

    fn residual(&self) -> IntMatrix {
        let live_rows: Vec<usize> = (0..self.rows.len())
            .filter(|&i| self.row_alive[i] && !self.rows[i].is_empty())
            .collect();
        let live_cols: Vec<usize> = (0..self.cols.len())
            .filter(|&j| !self.cols[j].is_empty())
            .collect();
        let col_pos: BTreeMap<usize, usize> =
            live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
        let mut m = IntMatrix::zeros(live_rows.len(), live_cols.len());
        for (k, &i) in live_rows.iter().enumerate() {
            for (&j, &v) in &self.rows[i] {
                m.set(k, col_pos[&j], BigInt::from(v));
            }
        }
        m
    }
}

/// Invariant factors of a sparse integer matrix.
pub fn sparse_smith_normal_form(m: &SparseIntMatrix) -> SmithForm {
    let mut elim = Eliminator::new(m);
    // on overflow the partially reduced matrix is still equivalent to the input
    let _ = elim.run();
    let rest = smith_normal_form(&elim.residual());
    let mut diagonal = vec![BigInt::one(); elim.unit_pivots];
    diagonal.extend(rest.diagonal);
    let rank = diagonal.len();
    SmithForm { diagonal, rank }
}
