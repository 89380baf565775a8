//! Sparse matrices over an exact field, used for every operator acting on a
//! representation space.

use std::collections::BTreeMap;
use std::fmt;

use super::field::{Additive, Field};

/// Row-major sparse matrix. No explicit zeros are ever stored.
#[derive(Clone, PartialEq)]
pub struct SparseOp<T> {
    nrows: usize,
    ncols: usize,
    rows: Vec<BTreeMap<usize, T>>,
}

impl<T: Field> SparseOp<T> {
    pub fn zero(nrows: usize, ncols: usize) -> Self {
        SparseOp {
            nrows,
            ncols,
            rows: vec![BTreeMap::new(); nrows],
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::scalar(dim, T::one())
    }

    pub fn scalar(dim: usize, c: T) -> Self {
        let mut op = Self::zero(dim, dim);
        if !c.is_zero() {
            for i in 0..dim {
                op.rows[i].insert(i, c.clone());
            }
        }
        op
    }

    pub fn from_triplets(
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, T)>,
    ) -> Self {
        let mut op = Self::zero(nrows, ncols);
        for (r, c, v) in entries {
            op.add_entry(r, c, v);
        }
        op
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(BTreeMap::is_empty)
    }

    pub fn get(&self, r: usize, c: usize) -> T {
        self.rows[r].get(&c).cloned().unwrap_or_else(T::zero)
    }

    /// Adds `v` to entry `(r, c)`, removing it if the sum vanishes.
    pub fn add_entry(&mut self, r: usize, c: usize, v: T) {
        assert!(r < self.nrows && c < self.ncols, "entry out of range");
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[r];
        match row.get_mut(&c) {
            Some(x) => {
                *x = x.clone() + v;
                if x.is_zero() {
                    row.remove(&c);
                }
            }
            None => {
                row.insert(c, v);
            }
        }
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &T)> {
        self.rows[r].iter().map(|(c, v)| (*c, v))
    }

    /// All stored entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(c, v)| (r, *c, v)))
    }

    pub fn scale(&self, s: &T) -> Self {
        if s.is_zero() {
            return Self::zero(self.nrows, self.ncols);
        }
        SparseOp {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|(c, v)| (*c, v.clone() * s.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.axpy(&T::one(), o)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.axpy(&-T::one(), o)
    }

    /// `self + s·o`
    pub fn axpy(&self, s: &T, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_assign(s, o);
        out
    }

    pub fn add_scaled_assign(&mut self, s: &T, o: &Self) {
        assert_eq!(
            (self.nrows, self.ncols),
            (o.nrows, o.ncols),
            "dimension mismatch"
        );
        if s.is_zero() {
            return;
        }
        for (r, row) in o.rows.iter().enumerate() {
            for (c, v) in row {
                self.add_entry(r, *c, v.clone() * s.clone());
            }
        }
    }

    /// Operator composition `self · o` (apply `o` first).
    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ncols, o.nrows, "dimension mismatch in composition");
        let mut out = Self::zero(self.nrows, o.ncols);
        for (r, row) in self.rows.iter().enumerate() {
            let acc = &mut out.rows[r];
            for (k, a) in row {
                for (c, b) in &o.rows[*k] {
                    let p = a.clone() * b.clone();
                    match acc.get_mut(c) {
                        Some(x) => *x = x.clone() + p,
                        None => {
                            acc.insert(*c, p);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn transpose(&self) -> Self {
        let mut out = Self::zero(self.ncols, self.nrows);
        for (r, c, v) in self.entries() {
            out.rows[c].insert(r, v.clone());
        }
        out
    }

    /// Kronecker product `self ⊗ o`, basis index `i·dim(o) + j`.
    pub fn kron(&self, o: &Self) -> Self {
        let mut out = Self::zero(self.nrows * o.nrows, self.ncols * o.ncols);
        for (r1, c1, v1) in self.entries() {
            for (r2, c2, v2) in o.entries() {
                out.rows[r1 * o.nrows + r2].insert(c1 * o.ncols + c2, v1.clone() * v2.clone());
            }
        }
        out
    }

    pub fn apply(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.ncols);
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .fold(T::zero(), |acc, (c, a)| acc + a.clone() * v[*c].clone())
            })
            .collect()
    }

    /// Submatrix on the given row and column index lists.
    pub fn restrict(&self, rows: &[usize], cols: &[usize]) -> Self {
        let col_pos: BTreeMap<usize, usize> =
            cols.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let mut out = Self::zero(rows.len(), cols.len());
        for (i, r) in rows.iter().enumerate() {
            for (c, v) in &self.rows[*r] {
                if let Some(&j) = col_pos.get(c) {
                    out.rows[i].insert(j, v.clone());
                }
            }
        }
        out
    }

    /// Keeps only the given columns (others are zeroed).
    pub fn mask_columns(&self, cols: &[usize]) -> Self {
        let keep: std::collections::BTreeSet<usize> = cols.iter().copied().collect();
        SparseOp {
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|row| {
                    row.iter()
                        .filter(|(c, _)| keep.contains(c))
                        .map(|(c, v)| (*c, v.clone()))
                        .collect()
                })
                .collect(),
        }
    }

    /// Exact equality restricted to the given columns.
    pub fn eq_on_columns(&self, o: &Self, cols: &[usize]) -> bool {
        self.first_difference(o, cols).is_none()
    }

    /// First `(row, col)` (column-major over `cols`, then row) where the two
    /// operators differ, with the difference `self − o`.
    pub fn first_difference(&self, o: &Self, cols: &[usize]) -> Option<(usize, usize, T)> {
        let a = self.transpose();
        let b = o.transpose();
        for &c in cols {
            let (ra, rb) = (&a.rows[c], &b.rows[c]);
            let keys: std::collections::BTreeSet<&usize> = ra.keys().chain(rb.keys()).collect();
            for r in keys {
                let d = ra.get(r).cloned().unwrap_or_else(T::zero)
                    - rb.get(r).cloned().unwrap_or_else(T::zero);
                if !d.is_zero() {
                    return Some((*r, c, d));
                }
            }
        }
        None
    }

    /// If the operator acts as `c·Id` on the given columns (rows unrestricted),
    /// returns `c`. An operator vanishing on those columns yields zero.
    pub fn scalar_on_columns(&self, cols: &[usize]) -> Option<T> {
        let Some(&first) = cols.first() else {
            return Some(T::zero());
        };
        let c = self.get(first, first);
        let target = Self::scalar(self.nrows.min(self.ncols), c.clone());
        if self.nrows != self.ncols {
            return None;
        }
        self.eq_on_columns(&target, cols).then_some(c)
    }

    /// Scalar value `c` if the operator equals `c·Id` exactly.
    pub fn as_scalar(&self) -> Option<T> {
        let all: Vec<usize> = (0..self.ncols).collect();
        self.scalar_on_columns(&all)
    }

    pub fn map<S: Field>(&self, f: impl Fn(&T) -> S) -> SparseOp<S> {
        let mut out = SparseOp::zero(self.nrows, self.ncols);
        for (r, c, v) in self.entries() {
            out.add_entry(r, c, f(v));
        }
        out
    }
}

impl<T: Field> Additive for SparseOp<T> {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        self.add_scaled_assign(&T::one(), other);
    }

    fn negated(&self) -> Self {
        self.scale(&-T::one())
    }
}

impl<T: Field> fmt::Debug for SparseOp<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseOp({}x{}) {{", self.nrows, self.ncols)?;
        for (r, c, v) in self.entries() {
            write!(f, " ({r},{c}): {v:?};")?;
        }
        f.write_str(" }")
    }
}
