//! Sparse exact linear algebra by incremental column reduction.
//!
//! Columns are fed one at a time. Each new column is reduced against the
//! pivots found so far; if it survives it becomes a pivot (keyed by its
//! lowest nonzero row), otherwise the recorded combination is a kernel vector.
//! Solutions returned by [`ColumnReducer::solve`] are supported on pivot
//! columns only.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::linear::LinComb;
use crate::rational::Q;

pub type SparseVec = BTreeMap<usize, Q>;

fn axpy(dst: &mut SparseVec, a: &Q, src: &SparseVec) {
    for (&i, v) in src {
        let e = dst.entry(i).or_insert_with(Q::zero);
        *e += a * v;
        if e.is_zero() {
            dst.remove(&i);
        }
    }
}

/// Bijection between row keys and dense row indices, assigned on first use.
#[derive(Clone, Debug)]
pub struct Coords<K: Ord + Clone> {
    index: BTreeMap<K, usize>,
    keys: Vec<K>,
}

impl<K: Ord + Clone> Default for Coords<K> {
    fn default() -> Self {
        Coords { index: BTreeMap::new(), keys: Vec::new() }
    }
}

impl<K: Ord + Clone> Coords<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn index(&mut self, k: &K) -> usize {
        if let Some(&i) = self.index.get(k) {
            return i;
        }
        let i = self.keys.len();
        self.index.insert(k.clone(), i);
        self.keys.push(k.clone());
        i
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.index.get(k).copied()
    }

    pub fn key(&self, i: usize) -> &K {
        &self.keys[i]
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn vector(&mut self, v: &LinComb<K>) -> SparseVec {
        v.iter().map(|(k, c)| (self.index(k), c.clone())).collect()
    }

    pub fn lincomb(&self, v: &SparseVec) -> LinComb<K> {
        v.iter().map(|(&i, c)| (self.keys[i].clone(), c.clone())).collect()
    }
}

#[derive(Clone, Debug, Default)]
pub struct ColumnReducer {
    /// lead row -> slot in `reduced`
    pivots: BTreeMap<usize, usize>,
    reduced: Vec<SparseVec>,
    combos: Vec<SparseVec>,
    pivot_cols: Vec<usize>,
    kernel: Vec<SparseVec>,
    ncols: usize,
}

impl ColumnReducer {
    pub fn new() -> Self {
        Self::default()
    }

    /// Eliminates pivot rows from `v`, accumulating the multipliers into
    /// `combo` (in original column coordinates). Stops early at the first
    /// non-pivot row when `full` is false.
    fn eliminate(&self, v: &mut SparseVec, combo: &mut SparseVec, full: bool) {
        let mut cursor = 0usize;
        loop {
            let Some((&r, c)) = v.range(cursor..).next() else { return };
            match self.pivots.get(&r) {
                Some(&slot) => {
                    let f = -c.clone();
                    axpy(v, &f, &self.reduced[slot]);
                    axpy(combo, &f, &self.combos[slot]);
                }
                None if !full => return,
                None => {}
            }
            cursor = r + 1;
        }
    }

    /// Adds a column; returns true if it is independent of the previous ones.
    pub fn push(&mut self, col: SparseVec) -> bool {
        let j = self.ncols;
        self.ncols += 1;
        let mut v = col;
        let mut combo = SparseVec::new();
        combo.insert(j, Q::from_integer(1.into()));
        self.eliminate(&mut v, &mut combo, false);
        match v.iter().next() {
            None => {
                self.kernel.push(combo);
                false
            }
            Some((&lead, c)) => {
                let inv = c.recip();
                for x in v.values_mut() {
                    *x *= &inv;
                }
                for x in combo.values_mut() {
                    *x *= &inv;
                }
                self.pivots.insert(lead, self.reduced.len());
                self.reduced.push(v);
                self.combos.push(combo);
                self.pivot_cols.push(j);
                true
            }
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.reduced.len()
    }

    pub fn pivot_columns(&self) -> &[usize] {
        &self.pivot_cols
    }

    /// One kernel vector per dependent column, in column order.
    pub fn kernel(&self) -> &[SparseVec] {
        &self.kernel
    }

    pub fn contains(&self, b: &SparseVec) -> bool {
        let mut v = b.clone();
        let mut scratch = SparseVec::new();
        self.eliminate(&mut v, &mut scratch, true);
        v.is_empty()
    }

    /// Some `x` with `Σ x_j col_j = b`, zero on non-pivot columns.
    pub fn solve(&self, b: &SparseVec) -> Option<SparseVec> {
        let mut v = b.clone();
        let mut combo = SparseVec::new();
        self.eliminate(&mut v, &mut combo, true);
        if !v.is_empty() {
            return None;
        }
        for x in combo.values_mut() {
            *x = -x.clone();
        }
        Some(combo)
    }
}

/// Rank of a set of columns.
pub fn rank<I: IntoIterator<Item = SparseVec>>(cols: I) -> usize {
    let mut r = ColumnReducer::new();
    for c in cols {
        r.push(c);
    }
    r.rank()
}
