//! Smith normal form over elementary-divisor rings by gcd row/column steps.

use crate::matrix::Matrix;
use crate::ring::EdRing;

/// `u * m * v = d` with `d` diagonal and each diagonal entry dividing the next.
#[derive(Clone, Debug)]
pub struct SmithForm<E> {
    pub u: Matrix<E>,
    pub d: Matrix<E>,
    pub v: Matrix<E>,
    pub rank: usize,
}

impl<E: Clone + PartialEq> SmithForm<E> {
    pub fn diagonal(&self) -> Vec<E> {
        (0..self.rank).map(|i| self.d.get(i, i).cloned().expect("nonzero pivot")).collect()
    }
}

/// Dense working state; `left` mirrors row operations, `right` mirrors column
/// operations (stored row-major, so a column op touches every row).
pub(crate) struct Reducer<'a, R: EdRing> {
    ring: &'a R,
    pub a: Vec<Vec<R::Elem>>,
    pub left: Option<Vec<Vec<R::Elem>>>,
    pub right: Option<Vec<Vec<R::Elem>>>,
    rows: usize,
    cols: usize,
}

impl<'a, R: EdRing> Reducer<'a, R> {
    pub fn new(ring: &'a R, m: &Matrix<R::Elem>) -> Self {
        Reducer { ring, a: m.to_dense(ring), left: None, right: None, rows: m.rows(), cols: m.cols() }
    }

    pub fn with_left(mut self, left: Vec<Vec<R::Elem>>) -> Self {
        self.left = Some(left);
        self
    }

    pub fn with_right_identity(mut self) -> Self {
        let r = self.ring;
        let n = self.cols;
        self.right = Some((0..n).map(|i| (0..n).map(|j| if i == j { r.one() } else { r.zero() }).collect()).collect());
        self
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i != k {
            self.a.swap(i, k);
            if let Some(l) = &mut self.left {
                l.swap(i, k);
            }
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j != k {
            for row in &mut self.a {
                row.swap(j, k);
            }
            if let Some(rt) = &mut self.right {
                for row in rt {
                    row.swap(j, k);
                }
            }
        }
    }

    fn row_combine(rows: &mut [Vec<R::Elem>], ring: &R, t: usize, i: usize, bz: &(R::Elem, R::Elem, R::Elem, R::Elem), from: usize) {
        let (s, tt, u, v) = bz;
        let (lo, hi) = rows.split_at_mut(i);
        let rt = &mut lo[t];
        let ri = &mut hi[0];
        for j in from..rt.len() {
            let (x, y) = (&rt[j], &ri[j]);
            if ring.is_zero(x) && ring.is_zero(y) {
                continue;
            }
            let nx = ring.add(&ring.mul(s, x), &ring.mul(tt, y));
            let ny = ring.add(&ring.mul(u, x), &ring.mul(v, y));
            rt[j] = nx;
            ri[j] = ny;
        }
    }

    /// row_i -= q * row_t
    fn row_axpy(rows: &mut [Vec<R::Elem>], ring: &R, t: usize, i: usize, q: &R::Elem, from: usize) {
        let (lo, hi) = if t < i { rows.split_at_mut(i) } else { unreachable!() };
        let rt = &lo[t];
        let ri = &mut hi[0];
        for j in from..rt.len() {
            if !ring.is_zero(&rt[j]) {
                ri[j] = ring.sub(&ri[j], &ring.mul(q, &rt[j]));
            }
        }
    }

    fn col_combine(rows: &mut [Vec<R::Elem>], ring: &R, t: usize, j: usize, bz: &(R::Elem, R::Elem, R::Elem, R::Elem), from: usize) {
        let (s, tt, u, v) = bz;
        for row in rows.iter_mut().skip(from) {
            let (x, y) = (&row[t], &row[j]);
            if ring.is_zero(x) && ring.is_zero(y) {
                continue;
            }
            let nx = ring.add(&ring.mul(s, x), &ring.mul(tt, y));
            let ny = ring.add(&ring.mul(u, x), &ring.mul(v, y));
            row[t] = nx;
            row[j] = ny;
        }
    }

    fn col_axpy(rows: &mut [Vec<R::Elem>], ring: &R, t: usize, j: usize, q: &R::Elem, from: usize) {
        for row in rows.iter_mut().skip(from) {
            if !ring.is_zero(&row[t]) {
                let y = ring.sub(&row[j], &ring.mul(q, &row[t]));
                row[j] = y;
            }
        }
    }

    fn find_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let r = self.ring;
        let mut best: Option<(u64, usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let s = r.size(&self.a[i][j]);
                if s > 0 && best.is_none_or(|(b, _, _)| s < b) {
                    best = Some((s, i, j));
                    if s == 1 {
                        return Some((i, j));
                    }
                }
            }
        }
        best.map(|(_, i, j)| (i, j))
    }

    /// Diagonalizes in place; returns the number of nonzero pivots.
    pub fn reduce(&mut self) -> usize {
        let r = self.ring;
        let n = self.rows.min(self.cols);
        let mut t = 0;
        while t < n {
            let Some((pi, pj)) = self.find_pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // clear column t below the pivot
                for i in t + 1..self.rows {
                    if r.is_zero(&self.a[i][t]) {
                        continue;
                    }
                    match r.divide(&self.a[i][t], &self.a[t][t]) {
                        Some(q) => {
                            Self::row_axpy(&mut self.a, r, t, i, &q, t);
                            if let Some(l) = &mut self.left {
                                Self::row_axpy(l, r, t, i, &q, 0);
                            }
                        }
                        None => {
                            let b = r.bezout(&self.a[t][t], &self.a[i][t]);
                            let bz = (b.s, b.t, b.u, b.v);
                            Self::row_combine(&mut self.a, r, t, i, &bz, t);
                            if let Some(l) = &mut self.left {
                                Self::row_combine(l, r, t, i, &bz, 0);
                            }
                        }
                    }
                }
                // clear row t right of the pivot
                let mut dirty = false;
                for j in t + 1..self.cols {
                    if r.is_zero(&self.a[t][j]) {
                        continue;
                    }
                    match r.divide(&self.a[t][j], &self.a[t][t]) {
                        Some(q) => {
                            Self::col_axpy(&mut self.a, r, t, j, &q, t);
                            if let Some(rt) = &mut self.right {
                                Self::col_axpy(rt, r, t, j, &q, 0);
                            }
                        }
                        None => {
                            let b = r.bezout(&self.a[t][t], &self.a[t][j]);
                            let bz = (b.s, b.t, b.u, b.v);
                            Self::col_combine(&mut self.a, r, t, j, &bz, t);
                            if let Some(rt) = &mut self.right {
                                Self::col_combine(rt, r, t, j, &bz, 0);
                            }
                            dirty = true;
                        }
                    }
                }
                if dirty && (t + 1..self.rows).any(|i| !r.is_zero(&self.a[i][t])) {
                    continue;
                }
                // the pivot must divide the remaining block
                let bad = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !r.is_zero(&self.a[i][j]) && r.divide(&self.a[i][j], &self.a[t][t]).is_none())
                });
                match bad {
                    Some(i) => {
                        let one = r.neg(&r.one());
                        Self::row_add_to_pivot(&mut self.a, r, t, i, &one);
                        if let Some(l) = &mut self.left {
                            Self::row_add_to_pivot(l, r, t, i, &one);
                        }
                    }
                    None => break,
                }
            }
            let w = r.normalizer(&self.a[t][t]);
            if !r.is_one(&w) {
                for x in &mut self.a[t] {
                    *x = r.mul(x, &w);
                }
                if let Some(l) = &mut self.left {
                    for x in &mut l[t] {
                        *x = r.mul(x, &w);
                    }
                }
            }
            t += 1;
        }
        t
    }

    /// row_t -= q * row_i (with i > t)
    fn row_add_to_pivot(rows: &mut [Vec<R::Elem>], ring: &R, t: usize, i: usize, q: &R::Elem) {
        let (lo, hi) = rows.split_at_mut(i);
        let rt = &mut lo[t];
        let ri = &hi[0];
        for j in 0..rt.len() {
            if !ring.is_zero(&ri[j]) {
                rt[j] = ring.sub(&rt[j], &ring.mul(q, &ri[j]));
            }
        }
    }

    pub fn pivot(&self, t: usize) -> &R::Elem {
        &self.a[t][t]
    }
}

pub fn smith_normal_form<R: EdRing>(ring: &R, m: &Matrix<R::Elem>) -> SmithForm<R::Elem> {
    let n = m.rows();
    let ident: Vec<Vec<R::Elem>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { ring.one() } else { ring.zero() }).collect()).collect();
    let mut red = Reducer::new(ring, m).with_left(ident).with_right_identity();
    let rank = red.reduce();
    let u = Matrix::from_rows(ring, n, n, red.left.as_ref().unwrap()).unwrap();
    let v = Matrix::from_rows(ring, m.cols(), m.cols(), red.right.as_ref().unwrap()).unwrap();
    let d = Matrix::from_rows(ring, m.rows(), m.cols(), &red.a).unwrap();
    SmithForm { u, d, v, rank }
}

/// Generators of the kernel as matrix columns.
pub(crate) fn kernel<R: EdRing>(ring: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let mut red = Reducer::new(ring, m).with_right_identity();
    let rank = red.reduce();
    let v = red.right.take().unwrap();
    let c = m.cols();
    let mut cols = Vec::new();
    for k in 0..c {
        let scale = if k < rank { ring.annihilator(red.pivot(k)) } else { ring.one() };
        if ring.is_zero(&scale) {
            continue;
        }
        cols.push((0..c).map(|i| ring.mul(&v[i][k], &scale)).collect::<Vec<_>>());
    }
    Matrix::from_columns(ring, c, &cols).nonzero_columns()
}

/// Solves `a x = b` column by column; `None` if some column has no solution.
pub(crate) fn solve<R: EdRing>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Option<Matrix<R::Elem>> {
    let mut red = Reducer::new(ring, a).with_left(b.to_dense(ring)).with_right_identity();
    let rank = red.reduce();
    let ub = red.left.take().unwrap();
    let v = red.right.take().unwrap();
    let c = a.cols();
    let mut cols = Vec::with_capacity(b.cols());
    for col in 0..b.cols() {
        if (rank..a.rows()).any(|i| !ring.is_zero(&ub[i][col])) {
            return None;
        }
        let mut y = Vec::with_capacity(rank);
        for k in 0..rank {
            y.push(ring.divide(&ub[k][col], red.pivot(k))?);
        }
        let x: Vec<R::Elem> = (0..c)
            .map(|i| {
                y.iter().enumerate().fold(ring.zero(), |acc, (k, yk)| {
                    if ring.is_zero(yk) {
                        acc
                    } else {
                        ring.add(&acc, &ring.mul(&v[i][k], yk))
                    }
                })
            })
            .collect();
        cols.push(x);
    }
    Some(Matrix::from_columns(ring, c, &cols))
}

/// Canonical nonunit diagonal entries of the Smith form, plus the rank.
pub(crate) fn elementary_divisors<R: EdRing>(ring: &R, m: &Matrix<R::Elem>) -> (usize, Vec<R::Elem>) {
    let mut red = Reducer::new(ring, m);
    let rank = red.reduce();
    let divisors = (0..rank)
        .map(|k| ring.canonical(red.pivot(k)))
        .filter(|d| !ring.is_unit(d))
        .collect();
    (rank, divisors)
}
