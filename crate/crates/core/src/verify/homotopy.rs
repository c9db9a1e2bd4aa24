//! Linear solving for an ind-homotopy inverse of `f_j = u_j ⊗ id: T_j⊗T_j -> T_j`.
//!
//! Unknowns: a chain map `g: T_k -> T_k'⊗T_k'` and degree -1 maps `s`, `t` with
//! `g ι f_j - ι⊗ι = d s + s d` and `f_k' g - ι = d t + t d`.

use std::sync::Arc;

use serde::Serialize;

use crate::complex::{ComplexMap, FreeComplex};
use crate::error::{Error, Result};
use crate::linalg::ExactRing;
use crate::matrix::Matrix;
use crate::ops::{tensor, tensor_map};
use crate::qis::is_homotopy;
use crate::telescope::TelescopeTower;

/// An explicit solution, kept as matrices.
#[derive(Clone, Debug)]
pub struct HomotopyInverse<R: ExactRing> {
    pub j: usize,
    pub k: usize,
    pub k_prime: usize,
    /// `f_j: T_j⊗T_j -> T_j`.
    pub f: ComplexMap<R>,
    /// `g: T_k -> T_k'⊗T_k'`.
    pub g: ComplexMap<R>,
    /// Homotopy `g ι f_j ≃ ι⊗ι`, indexed from the lowest degree of `T_j⊗T_j`.
    pub s: Vec<Matrix<R::Elem>>,
    /// Homotopy `f_k' g ≃ ι`, indexed from the lowest degree of `T_k`.
    pub t: Vec<Matrix<R::Elem>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomotopySummary {
    pub j: usize,
    pub k: usize,
    pub k_prime: usize,
    pub unknowns: usize,
    pub equations: usize,
    pub g_nonzeros: usize,
    pub reverified: bool,
}

struct System<E> {
    blocks: Vec<(usize, usize, Matrix<E>)>,
    rhs: Vec<(usize, Matrix<E>)>,
    rows: usize,
}

impl<E: Clone> System<E> {
    fn eq_rows(&mut self, n: usize) -> usize {
        let r = self.rows;
        self.rows += n;
        r
    }
}

// Row-major vec: vec(A X B) = (A ⊗ B^T) vec(X).
fn left<R: ExactRing>(r: &R, a: &Matrix<R::Elem>, cols: usize) -> Matrix<R::Elem> {
    Matrix::kron(r, a, &Matrix::identity(r, cols))
}

fn right<R: ExactRing>(r: &R, rows: usize, b: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    Matrix::kron(r, &Matrix::identity(r, rows), &b.transpose())
}

fn vec_of<R: ExactRing>(r: &R, m: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    let trip: Vec<_> = m.iter().map(|(i, j, e)| (i * m.cols() + j, 0, e.clone())).collect();
    Matrix::from_triplets(r, m.rows() * m.cols(), 1, trip)
}

fn unvec<R: ExactRing>(r: &R, x: &Matrix<R::Elem>, off: usize, rows: usize, cols: usize) -> Matrix<R::Elem> {
    let trip: Vec<_> = x
        .column(0)
        .iter()
        .filter(|(i, _)| *i >= off && *i < off + rows * cols)
        .map(|(i, e)| ((i - off) / cols, (i - off) % cols, e.clone()))
        .collect();
    Matrix::from_triplets(r, rows, cols, trip)
}

/// Degree-indexed block offsets for unknown maps `x^n: src^n -> tgt^{n+shift}`.
fn layout<R: ExactRing>(src: &FreeComplex<R>, tgt: &FreeComplex<R>, shift: i32, start: usize) -> (Vec<usize>, usize) {
    let mut offs = Vec::new();
    let mut o = start;
    for n in src.degrees() {
        offs.push(o);
        o += tgt.rank(n + shift) * src.rank(n);
    }
    (offs, o)
}

/// Tries to solve for `(g, s, t)` at levels `j <= k <= k'`.
pub fn solve_inverse<R: ExactRing>(
    tower: &TelescopeTower<R>,
    j: usize,
    k: usize,
    k_prime: usize,
) -> Result<Option<(HomotopyInverse<R>, HomotopySummary)>> {
    let r = tower.ring().clone();
    let tj = tower.level(j);
    let x = tower.level(k).clone();
    let z = tower.level(k_prime).clone();
    let w = Arc::new(tensor(tj, tj)?);
    let y = Arc::new(tensor(&z, &z)?);
    let f = tensor_map(&tower.augmentation(j), &ComplexMap::identity(tj.clone()))?;
    let f_top = tensor_map(&tower.augmentation(k_prime), &ComplexMap::identity(z.clone()))?;
    let c = tower.inclusion(j, k).compose(&f)?;
    let iota = tower.inclusion(j, k_prime);
    let iw = tensor_map(&iota, &iota)?;
    let ix = tower.inclusion(k, k_prime);

    let (g_off, end) = layout(&x, &y, 0, 0);
    let (s_off, end) = layout(&w, &y, -1, end);
    let (t_off, unknowns) = layout(&x, &z, -1, end);
    let at = |offs: &[usize], src: &FreeComplex<R>, n: i32| -> Option<usize> {
        (n >= src.lo() && n <= src.hi()).then(|| offs[(n - src.lo()) as usize])
    };

    let mut sys = System { blocks: Vec::new(), rhs: Vec::new(), rows: 0 };
    // d g = g d
    for n in x.degrees() {
        let (rr, cc) = (y.rank(n + 1), x.rank(n));
        let row = sys.eq_rows(rr * cc);
        if let Some(o) = at(&g_off, &x, n) {
            sys.blocks.push((row, o, left(&r, &y.d(n), cc)));
        }
        if let Some(o) = at(&g_off, &x, n + 1) {
            sys.blocks.push((row, o, right(&r, rr, &x.d(n)).neg(&r)));
        }
    }
    // g c - d s - s d = ι⊗ι
    for n in w.degrees() {
        let (rr, cc) = (y.rank(n), w.rank(n));
        let row = sys.eq_rows(rr * cc);
        if let Some(o) = at(&g_off, &x, n) {
            sys.blocks.push((row, o, right(&r, rr, &c.component(n))));
        }
        if let Some(o) = at(&s_off, &w, n) {
            sys.blocks.push((row, o, left(&r, &y.d(n - 1), cc).neg(&r)));
        }
        if let Some(o) = at(&s_off, &w, n + 1) {
            sys.blocks.push((row, o, right(&r, rr, &w.d(n)).neg(&r)));
        }
        sys.rhs.push((row, vec_of(&r, &iw.component(n))));
    }
    // f' g - d t - t d = ι
    for n in x.degrees() {
        let (rr, cc) = (z.rank(n), x.rank(n));
        let row = sys.eq_rows(rr * cc);
        if let Some(o) = at(&g_off, &x, n) {
            sys.blocks.push((row, o, left(&r, &f_top.component(n), cc)));
        }
        if let Some(o) = at(&t_off, &x, n) {
            sys.blocks.push((row, o, left(&r, &z.d(n - 1), cc).neg(&r)));
        }
        if let Some(o) = at(&t_off, &x, n + 1) {
            sys.blocks.push((row, o, right(&r, rr, &x.d(n)).neg(&r)));
        }
        sys.rhs.push((row, vec_of(&r, &ix.component(n))));
    }

    let mut a = Matrix::zeros(sys.rows, unknowns);
    for (row, col, b) in &sys.blocks {
        a.add_block(&r, *row, *col, b);
    }
    let mut b = Matrix::zeros(sys.rows, 1);
    for (row, v) in &sys.rhs {
        b.add_block(&r, *row, 0, v);
    }
    let Some(sol) = r.solve(&a, &b)? else {
        return Ok(None);
    };

    let g_comps = x.degrees().map(|n| unvec(&r, &sol, g_off[(n - x.lo()) as usize], y.rank(n), x.rank(n))).collect();
    let g = ComplexMap::new(x.clone(), y.clone(), g_comps)?;
    let s = w.degrees().map(|n| unvec(&r, &sol, s_off[(n - w.lo()) as usize], y.rank(n - 1), w.rank(n))).collect();
    let t = x.degrees().map(|n| unvec(&r, &sol, t_off[(n - x.lo()) as usize], z.rank(n - 1), x.rank(n))).collect();
    let inv = HomotopyInverse { j, k, k_prime, f, g, s, t };
    let reverified = recheck(tower, &inv)?;
    if !reverified {
        return Err(Error::InvalidMap("solver returned a non-solution".into()));
    }
    let g_nonzeros = inv.g.source().degrees().map(|n| inv.g.component(n).nnz()).sum();
    let summary = HomotopySummary { j, k, k_prime, unknowns, equations: sys.rows, g_nonzeros, reverified };
    Ok(Some((inv, summary)))
}

/// Re-checks both homotopies by matrix substitution.
pub fn recheck<R: ExactRing>(tower: &TelescopeTower<R>, h: &HomotopyInverse<R>) -> Result<bool> {
    let iota = tower.inclusion(h.j, h.k_prime);
    let c = tower.inclusion(h.j, h.k).compose(&h.f)?;
    let gcf = h.g.compose(&c)?;
    let first = is_homotopy(&gcf, &tensor_map(&iota, &iota)?, &h.s);
    let z = tower.level(h.k_prime).clone();
    let f_top = tensor_map(&tower.augmentation(h.k_prime), &ComplexMap::identity(z))?;
    let second = is_homotopy(&f_top.compose(&h.g)?, &tower.inclusion(h.k, h.k_prime), &h.t);
    Ok(first && second)
}

/// Least lag `s <= max_lag` with a solution at `(j, j+s, j+2s)`.
pub fn search_inverse<R: ExactRing>(
    tower: &TelescopeTower<R>,
    j: usize,
    max_lag: usize,
) -> Result<Option<(HomotopyInverse<R>, HomotopySummary)>> {
    for s in 0..=max_lag {
        if j + 2 * s > tower.jmax() {
            break;
        }
        if let Some(found) = solve_inverse(tower, j, j + s, j + 2 * s)? {
            return Ok(Some(found));
        }
    }
    Ok(None)
}
