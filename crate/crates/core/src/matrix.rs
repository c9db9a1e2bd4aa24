//! Sparse matrices over a ring, stored by column.
//!
//! Complexes built from telescopes are overwhelmingly sparse (inclusions,
//! augmentations and their Kronecker products), so storage is column lists of
//! `(row, value)` pairs with no explicit zeros. Elimination kernels densify.

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    /// Per column, `(row, value)` sorted by row; values are nonzero.
    data: Vec<Vec<(usize, E)>>,
}

impl<E: Clone + PartialEq> Matrix<E> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![Vec::new(); cols] }
    }

    pub fn identity<R: Ring<Elem = E>>(ring: &R, n: usize) -> Self {
        Matrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, ring.one())]).collect() }
    }

    /// Identity scaled by `c`.
    pub fn scalar<R: Ring<Elem = E>>(ring: &R, n: usize, c: &E) -> Self {
        if ring.is_zero(c) {
            return Self::zeros(n, n);
        }
        Matrix { rows: n, cols: n, data: (0..n).map(|i| vec![(i, c.clone())]).collect() }
    }

    /// From row-major dense rows.
    pub fn from_rows<R: Ring<Elem = E>>(ring: &R, rows: usize, cols: usize, entries: &[Vec<E>]) -> Result<Self> {
        if entries.len() != rows || entries.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch(format!("expected a {rows}x{cols} matrix")));
        }
        let mut m = Self::zeros(rows, cols);
        for (i, row) in entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if !ring.is_zero(x) {
                    m.data[j].push((i, x.clone()));
                }
            }
        }
        Ok(m)
    }

    /// From `(row, col, value)` triples; repeated positions are summed.
    pub fn from_triplets<R: Ring<Elem = E>>(
        ring: &R,
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, E)>,
    ) -> Self {
        let mut data: Vec<Vec<(usize, E)>> = vec![Vec::new(); cols];
        for (i, j, x) in triplets {
            debug_assert!(i < rows && j < cols);
            data[j].push((i, x));
        }
        for col in &mut data {
            col.sort_by_key(|(i, _)| *i);
            let mut merged: Vec<(usize, E)> = Vec::with_capacity(col.len());
            for (i, x) in col.drain(..) {
                match merged.last_mut() {
                    Some((k, y)) if *k == i => *y = ring.add(y, &x),
                    _ => merged.push((i, x)),
                }
            }
            merged.retain(|(_, x)| !ring.is_zero(x));
            *col = merged;
        }
        Matrix { rows, cols, data }
    }

    pub fn from_columns<R: Ring<Elem = E>>(ring: &R, rows: usize, columns: &[Vec<E>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            m.data[j] = c.iter().enumerate().filter(|(_, x)| !ring.is_zero(x)).map(|(i, x)| (i, x.clone())).collect();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn column(&self, j: usize) -> &[(usize, E)] {
        &self.data[j]
    }

    pub fn get(&self, i: usize, j: usize) -> Option<&E> {
        let col = &self.data[j];
        col.binary_search_by_key(&i, |(r, _)| *r).ok().map(|k| &col[k].1)
    }

    pub fn entry<R: Ring<Elem = E>>(&self, ring: &R, i: usize, j: usize) -> E {
        self.get(i, j).cloned().unwrap_or_else(|| ring.zero())
    }

    /// Iterates over nonzero entries as `(row, col, value)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &E)> {
        self.data.iter().enumerate().flat_map(|(j, c)| c.iter().map(move |(i, x)| (*i, j, x)))
    }

    pub fn to_dense<R: Ring<Elem = E>>(&self, ring: &R) -> Vec<Vec<E>> {
        let mut out = vec![vec![ring.zero(); self.cols]; self.rows];
        for (i, j, x) in self.iter() {
            out[i][j] = x.clone();
        }
        out
    }

    pub fn dense_column<R: Ring<Elem = E>>(&self, ring: &R, j: usize) -> Vec<E> {
        let mut v = vec![ring.zero(); self.rows];
        for (i, x) in &self.data[j] {
            v[*i] = x.clone();
        }
        v
    }

    pub fn transpose(&self) -> Self {
        let mut data: Vec<Vec<(usize, E)>> = vec![Vec::new(); self.rows];
        for (i, j, x) in self.iter() {
            data[i].push((j, x.clone()));
        }
        Matrix { rows: self.cols, cols: self.rows, data }
    }

    pub fn mul<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(ring, other))
    }

    pub(crate) fn mul_unchecked<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut data = Vec::with_capacity(other.cols);
        let mut acc: Vec<Option<E>> = vec![None; self.rows];
        let mut touched = Vec::new();
        for col in &other.data {
            for (k, y) in col {
                for (i, x) in &self.data[*k] {
                    let p = ring.mul(x, y);
                    match &mut acc[*i] {
                        Some(v) => *v = ring.add(v, &p),
                        slot @ None => {
                            *slot = Some(p);
                            touched.push(*i);
                        }
                    }
                }
            }
            touched.sort_unstable();
            let mut out = Vec::with_capacity(touched.len());
            for &i in &touched {
                let v = acc[i].take().unwrap();
                if !ring.is_zero(&v) {
                    out.push((i, v));
                }
            }
            touched.clear();
            data.push(out);
        }
        Matrix { rows: self.rows, cols: other.cols, data }
    }

    pub fn mul_vec<R: Ring<Elem = E>>(&self, ring: &R, v: &[E]) -> Vec<E> {
        assert_eq!(v.len(), self.cols, "matrix-vector shape");
        let mut out = vec![ring.zero(); self.rows];
        for (j, col) in self.data.iter().enumerate() {
            if ring.is_zero(&v[j]) {
                continue;
            }
            for (i, x) in col {
                let s = ring.add(&out[*i], &ring.mul(x, &v[j]));
                out[*i] = s;
            }
        }
        out
    }

    pub fn add<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        assert_eq!(self.shape(), other.shape(), "matrix sum shape");
        let trip = self.iter().chain(other.iter()).map(|(i, j, x)| (i, j, x.clone()));
        Self::from_triplets(ring, self.rows, self.cols, trip.collect::<Vec<_>>())
    }

    pub fn sub<R: Ring<Elem = E>>(&self, ring: &R, other: &Self) -> Self {
        self.add(ring, &other.neg(ring))
    }

    pub fn neg<R: Ring<Elem = E>>(&self, ring: &R) -> Self {
        self.map(|x| ring.neg(x))
    }

    pub fn scale<R: Ring<Elem = E>>(&self, ring: &R, c: &E) -> Self {
        if ring.is_zero(c) {
            return Self::zeros(self.rows, self.cols);
        }
        let mut m = self.map(|x| ring.mul(x, c));
        for col in &mut m.data {
            col.retain(|(_, x)| !ring.is_zero(x));
        }
        m
    }

    /// Applies `f` entrywise; `f` must send nonzero entries to nonzero entries.
    fn map(&self, f: impl Fn(&E) -> E) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|c| c.iter().map(|(i, x)| (*i, f(x))).collect()).collect(),
        }
    }

    /// Kronecker product: entry `((i1, i2), (j1, j2))` is `a[i1, j1] * b[i2, j2]`,
    /// with pairs flattened first-index-major.
    pub fn kron<R: Ring<Elem = E>>(ring: &R, a: &Self, b: &Self) -> Self {
        let rows = a.rows * b.rows;
        let cols = a.cols * b.cols;
        let mut data = vec![Vec::new(); cols];
        for (j1, ca) in a.data.iter().enumerate() {
            for (j2, cb) in b.data.iter().enumerate() {
                let col = &mut data[j1 * b.cols + j2];
                for (i1, x) in ca {
                    for (i2, y) in cb {
                        let p = ring.mul(x, y);
                        if !ring.is_zero(&p) {
                            col.push((i1 * b.rows + i2, p));
                        }
                    }
                }
            }
        }
        Matrix { rows, cols, data }
    }

    /// Places `block` with its top-left corner at `(r0, c0)` by adding entries.
    pub fn add_block<R: Ring<Elem = E>>(&mut self, ring: &R, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for (j, col) in block.data.iter().enumerate() {
            if col.is_empty() {
                continue;
            }
            let target = &mut self.data[c0 + j];
            if target.is_empty() || target.last().is_some_and(|(i, _)| *i < r0) {
                target.extend(col.iter().map(|(i, x)| (r0 + i, x.clone())));
                continue;
            }
            let mut merged: Vec<(usize, E)> = Vec::with_capacity(target.len() + col.len());
            let mut a = std::mem::take(target).into_iter().peekable();
            let mut b = col.iter().map(|(i, x)| (r0 + i, x.clone())).peekable();
            loop {
                match (a.peek(), b.peek()) {
                    (Some((ia, _)), Some((ib, _))) if ia == ib => {
                        let (i, x) = a.next().unwrap();
                        let (_, y) = b.next().unwrap();
                        let s = ring.add(&x, &y);
                        if !ring.is_zero(&s) {
                            merged.push((i, s));
                        }
                    }
                    (Some((ia, _)), Some((ib, _))) => {
                        if ia < ib {
                            merged.push(a.next().unwrap());
                        } else {
                            merged.push(b.next().unwrap());
                        }
                    }
                    (Some(_), None) => merged.push(a.next().unwrap()),
                    (None, Some(_)) => merged.push(b.next().unwrap()),
                    (None, None) => break,
                }
            }
            *target = merged;
        }
    }

    pub fn hstack<R: Ring<Elem = E>>(ring: &R, parts: &[&Self]) -> Self {
        let rows = parts.first().map_or(0, |p| p.rows);
        let cols = parts.iter().map(|p| p.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let mut c0 = 0;
        for p in parts {
            m.add_block(ring, 0, c0, p);
            c0 += p.cols;
        }
        m
    }

    pub fn vstack<R: Ring<Elem = E>>(ring: &R, parts: &[&Self]) -> Self {
        let cols = parts.first().map_or(0, |p| p.cols);
        let rows = parts.iter().map(|p| p.rows).sum();
        let mut m = Self::zeros(rows, cols);
        let mut r0 = 0;
        for p in parts {
            m.add_block(ring, r0, 0, p);
            r0 += p.rows;
        }
        m
    }

    /// Rows `r0..r1` of the matrix.
    pub fn row_slice(&self, r0: usize, r1: usize) -> Self {
        Matrix {
            rows: r1 - r0,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|c| c.iter().filter(|(i, _)| *i >= r0 && *i < r1).map(|(i, x)| (i - r0, x.clone())).collect())
                .collect(),
        }
    }

    /// Columns `c0..c1` of the matrix.
    pub fn col_slice(&self, c0: usize, c1: usize) -> Self {
        Matrix { rows: self.rows, cols: c1 - c0, data: self.data[c0..c1].to_vec() }
    }

    /// Keeps only the listed columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Matrix { rows: self.rows, cols: cols.len(), data: cols.iter().map(|&j| self.data[j].clone()).collect() }
    }

    /// Drops zero columns.
    pub fn nonzero_columns(&self) -> Self {
        let data: Vec<_> = self.data.iter().filter(|c| !c.is_empty()).cloned().collect();
        Matrix { rows: self.rows, cols: data.len(), data }
    }

    /// Converts entries into another ring's elements.
    pub fn convert<F: Clone + PartialEq>(&self, f: impl Fn(&E) -> F, is_zero: impl Fn(&F) -> bool) -> Matrix<F> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .map(|c| c.iter().map(|(i, x)| (*i, f(x))).filter(|(_, y)| !is_zero(y)).collect())
                .collect(),
        }
    }

    /// Formats as nested row lists using the ring's element printer.
    pub fn format<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        let rows: Vec<String> = self
            .to_dense(ring)
            .iter()
            .map(|r| format!("[{}]", r.iter().map(|x| ring.format_elem(x)).collect::<Vec<_>>().join(", ")))
            .collect();
        format!("[{}]", rows.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{Integers, IntegersMod};
    use num_bigint::BigInt;

    fn z(rows: &[&[i64]]) -> Matrix<BigInt> {
        let r = Integers;
        let e: Vec<Vec<BigInt>> = rows.iter().map(|row| row.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Matrix::from_rows(&r, e.len(), e.first().map_or(0, |x| x.len()), &e).unwrap()
    }

    #[test]
    fn product_and_transpose() {
        let r = Integers;
        let a = z(&[&[1, 2], &[0, 3]]);
        let b = z(&[&[4], &[5]]);
        assert_eq!(a.mul(&r, &b).unwrap(), z(&[&[14], &[15]]));
        assert_eq!(a.transpose(), z(&[&[1, 0], &[2, 3]]));
        assert!(b.mul(&r, &a).is_err());
    }

    #[test]
    fn kron_layout() {
        let r = Integers;
        let a = z(&[&[1, 2]]);
        let b = z(&[&[0, 1], &[1, 0]]);
        assert_eq!(Matrix::kron(&r, &a, &b), z(&[&[0, 1, 0, 2], &[1, 0, 2, 0]]));
    }

    #[test]
    fn cancellation_drops_zeros() {
        let r = IntegersMod::new(4).unwrap();
        let a = Matrix::from_rows(&r, 1, 2, &[vec![2, 1]]).unwrap();
        let s = a.add(&r, &a.scale(&r, &3));
        assert_eq!(s.nnz(), 0);
        assert!(s.is_zero());
        let mut m = Matrix::zeros(2, 2);
        m.add_block(&r, 0, 0, &Matrix::identity(&r, 2));
        m.add_block(&r, 1, 1, &Matrix::scalar(&r, 1, &3));
        assert_eq!(m.get(1, 1), None);
        assert_eq!(m.get(0, 0), Some(&1));
    }
}
