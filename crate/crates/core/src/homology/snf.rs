//! Smith normal form over a Euclidean integer type.
//!
//! Large sparse boundary matrices are first reduced by eliminating unit
//! pivots (each contributes an invariant factor 1); whatever is left is
//! diagonalized densely with smallest-absolute-value pivoting.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::scalar::EuclideanInt;

/// Dense row-major integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<R> {
    rows: usize,
    cols: usize,
    data: Vec<R>,
}

impl<R: EuclideanInt> IntMatrix<R> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![R::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, R::one());
        }
        m
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, R::from(x));
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: R) {
        self.data[i * self.cols + j] = v;
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for i in 0..self.rows {
                self.data.swap(i * self.cols + a, i * self.cols + b);
            }
        }
    }

    /// `row[target] += k · row[source]`.
    pub fn add_row_multiple(&mut self, target: usize, source: usize, k: &R) {
        for j in 0..self.cols {
            let v = self.get(source, j).clone() * k.clone();
            if !v.is_zero() {
                let t = self.get(target, j).clone() + v;
                self.set(target, j, t);
            }
        }
    }

    /// `col[target] += k · col[source]`.
    pub fn add_col_multiple(&mut self, target: usize, source: usize, k: &R) {
        for i in 0..self.rows {
            let v = self.get(i, source).clone() * k.clone();
            if !v.is_zero() {
                let t = self.get(i, target).clone() + v;
                self.set(i, target, t);
            }
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }
}

/// Invariant factors `d_1 | d_2 | … | d_k` (all positive) of a matrix; `k`
/// is its rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult<R> {
    pub factors: Vec<R>,
    pub rows: usize,
    pub cols: usize,
}

impl<R: EuclideanInt> SnfResult<R> {
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// Factors greater than one: the torsion of the cokernel.
    pub fn torsion(&self) -> impl Iterator<Item = &R> {
        self.factors.iter().filter(|f| !f.is_one())
    }

    pub fn divisibility_holds(&self) -> bool {
        self.factors.iter().all(|f| *f > R::zero())
            && self.factors.windows(2).all(|w| (w[1].clone() % w[0].clone()).is_zero())
    }
}

pub fn smith_normal_form<R: EuclideanInt>(m: &IntMatrix<R>) -> SnfResult<R> {
    let mut a = m.clone();
    let factors = diagonalize(&mut a);
    SnfResult { factors, rows: m.rows, cols: m.cols }
}

/// In-place dense diagonalization; returns the positive invariant factors.
fn diagonalize<R: EuclideanInt>(a: &mut IntMatrix<R>) -> Vec<R> {
    let (rows, cols) = (a.rows, a.cols);
    let mut factors = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(a, t, t) else { break };
        a.swap_rows(t, pi);
        a.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let q = a.get(i, t).div_floor(a.get(t, t));
                a.add_row_multiple(i, t, &-q);
                if !a.get(i, t).is_zero() {
                    dirty = true;
                }
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let q = a.get(t, j).div_floor(a.get(t, t));
                a.add_col_multiple(j, t, &-q);
                if !a.get(t, j).is_zero() {
                    dirty = true;
                }
            }
            if dirty {
                // a smaller remainder appeared in row or column t: move it to the pivot
                let (pi, pj) = min_abs_in_cross(a, t);
                a.swap_rows(t, pi);
                a.swap_cols(t, pj);
                continue;
            }
            let pivot = a.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(a.get(i, j).clone() % pivot.clone()).is_zero());
            match offender {
                Some((i, _)) => a.add_row_multiple(t, i, &R::one()),
                None => break,
            }
        }
        if a.get(t, t) < &R::zero() {
            a.negate_row(t);
        }
        factors.push(a.get(t, t).clone());
        t += 1;
    }
    factors
}

fn min_abs_entry<R: EuclideanInt>(a: &IntMatrix<R>, r0: usize, c0: usize) -> Option<(usize, usize)> {
    let mut best: Option<(R, usize, usize)> = None;
    for i in r0..a.rows {
        for j in c0..a.cols {
            let v = a.get(i, j).abs();
            if v.is_zero() {
                continue;
            }
            if best.as_ref().is_none_or(|(b, _, _)| v < *b) {
                let unit = v.is_one();
                best = Some((v, i, j));
                if unit {
                    return best.map(|(_, i, j)| (i, j));
                }
            }
        }
    }
    best.map(|(_, i, j)| (i, j))
}

fn min_abs_in_cross<R: EuclideanInt>(a: &IntMatrix<R>, t: usize) -> (usize, usize) {
    let mut best = (a.get(t, t).abs(), t, t);
    let mut consider = |v: &R, i: usize, j: usize| {
        let v = v.abs();
        if !v.is_zero() && (best.0.is_zero() || v < best.0) {
            best = (v, i, j);
        }
    };
    for i in t..a.rows {
        consider(a.get(i, t), i, t);
    }
    for j in t..a.cols {
        consider(a.get(t, j), t, j);
    }
    (best.1, best.2)
}

/// Sparse integer matrix stored by rows.
#[derive(Clone, Debug, Default)]
pub struct SparseMatrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<BTreeMap<usize, R>>,
}

impl<R: EuclideanInt> SparseMatrix<R> {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: vec![BTreeMap::new(); rows] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Adds `v` to entry `(i, j)`.
    pub fn add(&mut self, i: usize, j: usize, v: R) {
        assert!(i < self.rows && j < self.cols, "entry out of range");
        let slot = self.entries[i].entry(j).or_insert_with(R::zero);
        *slot = slot.clone() + v;
        if slot.is_zero() {
            self.entries[i].remove(&j);
        }
    }

    pub fn get(&self, i: usize, j: usize) -> R {
        self.entries[i].get(&j).cloned().unwrap_or_else(R::zero)
    }

    pub fn nnz(&self) -> usize {
        self.entries.iter().map(BTreeMap::len).sum()
    }

    pub fn row(&self, i: usize) -> impl Iterator<Item = (usize, &R)> {
        self.entries[i].iter().map(|(&j, v)| (j, v))
    }

    pub fn to_dense(&self) -> IntMatrix<R> {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (&j, v) in row {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn from_dense(m: &IntMatrix<R>) -> Self {
        let mut s = Self::new(m.rows(), m.cols());
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                if !m.get(i, j).is_zero() {
                    s.add(i, j, m.get(i, j).clone());
                }
            }
        }
        s
    }

    /// `self · other`, used to check `∂∂ = 0`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out = Self::new(self.rows, other.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (&k, a) in row {
                for (&j, b) in &other.entries[k] {
                    out.add(i, j, a.clone() * b.clone());
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(BTreeMap::is_empty)
    }
}

/// Invariant factors of a sparse matrix.
pub fn sparse_smith_normal_form<R: EuclideanInt>(m: &SparseMatrix<R>) -> SnfResult<R> {
    let mut rows = m.entries.clone();
    let mut col_rows: Vec<std::collections::BTreeSet<usize>> = vec![Default::default(); m.cols];
    for (i, row) in rows.iter().enumerate() {
        for &j in row.keys() {
            col_rows[j].insert(i);
        }
    }
    let mut row_alive = vec![true; m.rows];
    let mut col_alive = vec![true; m.cols];
    let mut units = 0usize;

    loop {
        let mut progress = false;
        for j in 0..m.cols {
            if !col_alive[j] || col_rows[j].is_empty() {
                continue;
            }
            // unit pivot in the sparsest row of this column
            let pivot_row = col_rows[j]
                .iter()
                .copied()
                .filter(|&i| rows[i][&j].abs().is_one())
                .min_by_key(|&i| rows[i].len());
            let Some(p) = pivot_row else { continue };
            let u = rows[p][&j].clone();
            let pivot_entries: Vec<(usize, R)> = rows[p].iter().map(|(&k, v)| (k, v.clone())).collect();
            let others: Vec<usize> = col_rows[j].iter().copied().filter(|&i| i != p).collect();
            for r in others {
                let factor = rows[r][&j].clone() * u.clone();
                for (k, v) in &pivot_entries {
                    let slot = rows[r].entry(*k).or_insert_with(R::zero);
                    *slot = slot.clone() - factor.clone() * v.clone();
                    if slot.is_zero() {
                        rows[r].remove(k);
                        col_rows[*k].remove(&r);
                    } else {
                        col_rows[*k].insert(r);
                    }
                }
            }
            for (k, _) in &pivot_entries {
                col_rows[*k].remove(&p);
            }
            rows[p].clear();
            row_alive[p] = false;
            col_alive[j] = false;
            units += 1;
            progress = true;
        }
        if !progress {
            break;
        }
    }

    let live_rows: Vec<usize> = (0..m.rows).filter(|&i| row_alive[i] && !rows[i].is_empty()).collect();
    let live_cols: Vec<usize> = (0..m.cols).filter(|&j| col_alive[j] && !col_rows[j].is_empty()).collect();
    let col_pos: std::collections::HashMap<usize, usize> =
        live_cols.iter().enumerate().map(|(k, &j)| (j, k)).collect();
    let mut rest = IntMatrix::zeros(live_rows.len(), live_cols.len());
    for (ri, &i) in live_rows.iter().enumerate() {
        for (&j, v) in &rows[i] {
            rest.set(ri, col_pos[&j], v.clone());
        }
    }
    let mut factors = vec![R::one(); units];
    let mut tail = diagonalize(&mut rest);
    // dense factors are already a divisibility chain starting at >= 1
    factors.append(&mut tail);
    factors.sort();
    SnfResult { factors, rows: m.rows, cols: m.cols }
}
