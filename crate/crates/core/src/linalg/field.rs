//! Sparse row elimination over fields.

use std::collections::BTreeMap;

use crate::matrix::Matrix;
use crate::ring::Field;

/// Rank by forward elimination.
pub(crate) fn rank_dense<F: Field>(f: &F, mut rows: Vec<Vec<F::Elem>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !f.is_zero(&rows[i][c])) else { continue };
        rows.swap(r, p);
        let inv = f.inv(&rows[r][c]);
        let support: Vec<usize> = (c..ncols).filter(|&j| !f.is_zero(&rows[r][j])).collect();
        let (top, rest) = rows.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in rest.iter_mut() {
            if f.is_zero(&row[c]) {
                continue;
            }
            let q = f.mul(&row[c], &inv);
            for &j in &support {
                row[j] = f.sub(&row[j], &f.mul(&q, &pivot_row[j]));
            }
        }
        r += 1;
    }
    r
}

type Row<E> = Vec<(usize, E)>;

fn sparse_rows<F: Field>(f: &F, parts: &[&Matrix<F::Elem>]) -> Vec<Row<F::Elem>> {
    let rows = parts.first().map_or(0, |m| m.rows());
    let mut out = vec![Vec::new(); rows];
    let mut off = 0;
    for m in parts {
        for j in 0..m.cols() {
            for (i, x) in m.column(j) {
                if !f.is_zero(x) {
                    out[*i].push((off + j, x.clone()));
                }
            }
        }
        off += m.cols();
    }
    out
}

/// `row - q * pivot`, merging sorted supports.
fn axpy<F: Field>(f: &F, row: &Row<F::Elem>, q: &F::Elem, pivot: &Row<F::Elem>) -> Row<F::Elem> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut a, mut b) = (row.iter().peekable(), pivot.iter().peekable());
    loop {
        match (a.peek(), b.peek()) {
            (Some((i, x)), Some((j, y))) if i == j => {
                let v = f.sub(x, &f.mul(q, y));
                if !f.is_zero(&v) {
                    out.push((*i, v));
                }
                a.next();
                b.next();
            }
            (Some((i, x)), Some((j, _))) if i < j => {
                out.push((*i, x.clone()));
                a.next();
            }
            (_, Some((j, y))) => {
                out.push((*j, f.neg(&f.mul(q, y))));
                b.next();
            }
            (Some((i, x)), None) => {
                out.push((*i, x.clone()));
                a.next();
            }
            (None, None) => break,
        }
    }
    out
}

/// Row echelon form with pivots restricted to columns `< limit`; pivot rows
/// are normalized to leading coefficient one. Also returns the nonzero rows
/// whose support lies entirely at or beyond `limit`.
fn echelon<F: Field>(
    f: &F,
    mut rows: Vec<Row<F::Elem>>,
    limit: usize,
) -> (BTreeMap<usize, Row<F::Elem>>, Vec<Row<F::Elem>>) {
    rows.sort_by_key(Vec::len);
    let mut pivots: BTreeMap<usize, Row<F::Elem>> = BTreeMap::new();
    let mut rest = Vec::new();
    for mut row in rows {
        while let Some((c, v)) = row.first() {
            if *c >= limit {
                break;
            }
            match pivots.get(c) {
                Some(p) => row = axpy(f, &row, &v.clone(), p),
                None => break,
            }
        }
        let Some((c, v)) = row.first() else { continue };
        if *c >= limit {
            rest.push(row);
            continue;
        }
        let c = *c;
        let inv = f.inv(v);
        if !f.is_one(&inv) {
            for (_, x) in row.iter_mut() {
                *x = f.mul(x, &inv);
            }
        }
        pivots.insert(c, row);
    }
    (pivots, rest)
}

/// Clears every non-leading pivot column, working down from the last pivot.
fn back_reduce<F: Field>(f: &F, pivots: &mut BTreeMap<usize, Row<F::Elem>>, limit: usize) {
    let cols: Vec<usize> = pivots.keys().rev().copied().collect();
    for p in cols {
        let row = pivots[&p].clone();
        let hits: Vec<(usize, F::Elem)> =
            row.iter().skip(1).filter(|(j, _)| *j < limit && pivots.contains_key(j)).cloned().collect();
        if hits.is_empty() {
            continue;
        }
        let mut row = row;
        for (j, _) in hits {
            let Some(v) = row.iter().find(|(k, _)| *k == j).map(|(_, v)| v.clone()) else { continue };
            row = axpy(f, &row, &v, &pivots[&j]);
        }
        pivots.insert(p, row);
    }
}

pub fn rank<F: Field>(f: &F, m: &Matrix<F::Elem>) -> usize {
    if m.is_zero() {
        return 0;
    }
    echelon(f, sparse_rows(f, &[m]), m.cols()).0.len()
}

pub(crate) fn kernel<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let c = m.cols();
    let (mut pivots, _) = echelon(f, sparse_rows(f, &[m]), c);
    back_reduce(f, &mut pivots, c);
    let mut index = vec![usize::MAX; c];
    let mut n = 0;
    for j in (0..c).filter(|j| !pivots.contains_key(j)) {
        index[j] = n;
        n += 1;
    }
    let mut trip = Vec::new();
    for j in 0..c {
        if index[j] != usize::MAX {
            trip.push((j, index[j], f.one()));
        }
    }
    for (p, row) in &pivots {
        for (j, v) in row.iter().skip(1) {
            trip.push((*p, index[*j], f.neg(v)));
        }
    }
    Matrix::from_triplets(f, c, n, trip)
}

/// Whether `a x = b` is solvable.
pub(crate) fn consistent<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> bool {
    b.is_zero() || echelon(f, sparse_rows(f, &[a, b]), a.cols()).1.is_empty()
}

pub(crate) fn solve<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Option<Matrix<F::Elem>> {
    let c = a.cols();
    let (mut pivots, rest) = echelon(f, sparse_rows(f, &[a, b]), c);
    if !rest.is_empty() {
        return None;
    }
    back_reduce(f, &mut pivots, c);
    let mut trip = Vec::new();
    for (p, row) in &pivots {
        for (j, v) in row.iter().filter(|(j, _)| *j >= c) {
            trip.push((*p, j - c, v.clone()));
        }
    }
    Some(Matrix::from_triplets(f, c, b.cols(), trip))
}
