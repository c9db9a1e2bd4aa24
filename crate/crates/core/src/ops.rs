//! Tensor, Hom, cone and adjunction on complexes and chain maps.
//!
//! Conventions: `d(x⊗y) = dx⊗y + (-1)^i x⊗dy` for `x` of degree `i`;
//! `Hom^n = ∏_i Hom(X^i, Y^{i+n})` with `d(f) = d_Y f - (-1)^n f d_X`.
//! Basis of `(X⊗Y)^n`: blocks by ascending `i`, `x`-major within a block.
//! Basis of `Hom^n`: blocks by ascending `i`, each block an `r_Y × r_X`
//! matrix flattened row-major.

use std::sync::Arc;

use crate::complex::{ComplexMap, FreeComplex};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

fn same_ring<R: Ring>(a: &FreeComplex<R>, b: &FreeComplex<R>) -> Result<()> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(a.ring().name(), b.ring().name()));
    }
    Ok(())
}

fn sign<R: Ring>(r: &R, negative: bool) -> R::Elem {
    r.signed(&r.one(), negative)
}

/// Offsets of the `(i, n-i)` blocks in `(X⊗Y)^n`, ascending in `i`.
pub fn tensor_blocks<R: Ring>(x: &FreeComplex<R>, y: &FreeComplex<R>, n: i32) -> Vec<(i32, usize)> {
    let mut out = Vec::new();
    let mut off = 0;
    for i in x.degrees() {
        let b = x.rank(i) * y.rank(n - i);
        if b > 0 {
            out.push((i, off));
            off += b;
        }
    }
    out
}

fn tensor_rank<R: Ring>(x: &FreeComplex<R>, y: &FreeComplex<R>, n: i32) -> usize {
    x.degrees().map(|i| x.rank(i) * y.rank(n - i)).sum()
}

fn tensor_offset<R: Ring>(x: &FreeComplex<R>, y: &FreeComplex<R>, n: i32, i: i32) -> usize {
    x.degrees().take_while(|&k| k < i).map(|k| x.rank(k) * y.rank(n - k)).sum()
}

pub fn tensor<R: Ring>(x: &FreeComplex<R>, y: &FreeComplex<R>) -> Result<FreeComplex<R>> {
    same_ring(x, y)?;
    let r = x.ring();
    if x.is_zero() || y.is_zero() {
        return Ok(FreeComplex::zero(r.clone()));
    }
    let (lo, hi) = (x.lo() + y.lo(), x.hi() + y.hi());
    Ok(FreeComplex::from_fn(
        r,
        lo,
        hi,
        |n| tensor_rank(x, y, n),
        |n| {
            let mut m = Matrix::zeros(tensor_rank(x, y, n + 1), tensor_rank(x, y, n));
            for i in x.degrees() {
                let j = n - i;
                if x.rank(i) * y.rank(j) == 0 {
                    continue;
                }
                let col = tensor_offset(x, y, n, i);
                if x.rank(i + 1) > 0 {
                    let b = Matrix::kron(r, &x.d(i), &Matrix::identity(r, y.rank(j)));
                    m.add_block(r, tensor_offset(x, y, n + 1, i + 1), col, &b);
                }
                if y.rank(j + 1) > 0 {
                    let b = Matrix::kron(r, &Matrix::identity(r, x.rank(i)), &y.d(j)).scale(r, &sign(r, i % 2 != 0));
                    m.add_block(r, tensor_offset(x, y, n + 1, i), col, &b);
                }
            }
            m
        },
    ))
}

fn hom_rank<R: Ring>(x: &FreeComplex<R>, y: &FreeComplex<R>, n: i32) -> usize {
    x.degrees().map(|i| x.rank(i) * y.rank(i + n)).sum()
}

fn hom_offset<R: Ring>(x: &FreeComplex<R>, y: &FreeComplex<R>, n: i32, i: i32) -> usize {
    x.degrees().take_while(|&k| k < i).map(|k| x.rank(k) * y.rank(k + n)).sum()
}

pub fn hom<R: Ring>(x: &FreeComplex<R>, y: &FreeComplex<R>) -> Result<FreeComplex<R>> {
    same_ring(x, y)?;
    let r = x.ring();
    if x.is_zero() || y.is_zero() {
        return Ok(FreeComplex::zero(r.clone()));
    }
    let (lo, hi) = (y.lo() - x.hi(), y.hi() - x.lo());
    Ok(FreeComplex::from_fn(
        r,
        lo,
        hi,
        |n| hom_rank(x, y, n),
        |n| {
            let mut m = Matrix::zeros(hom_rank(x, y, n + 1), hom_rank(x, y, n));
            for i in x.degrees() {
                let (rx, ry) = (x.rank(i), y.rank(i + n));
                if rx * ry == 0 {
                    continue;
                }
                let col = hom_offset(x, y, n, i);
                // d_Y ∘ f lands in Hom(X^i, Y^{i+n+1})
                if y.rank(i + n + 1) > 0 {
                    let b = Matrix::kron(r, &y.d(i + n), &Matrix::identity(r, rx));
                    m.add_block(r, hom_offset(x, y, n + 1, i), col, &b);
                }
                // -(-1)^n f ∘ d_X lands in Hom(X^{i-1}, Y^{i+n})
                if x.rank(i - 1) > 0 {
                    let b = Matrix::kron(r, &Matrix::identity(r, ry), &x.d(i - 1).transpose())
                        .scale(r, &sign(r, n % 2 == 0));
                    m.add_block(r, hom_offset(x, y, n + 1, i - 1), col, &b);
                }
            }
            m
        },
    ))
}

/// `f ⊗ g: X⊗Y -> X'⊗Y'`.
pub fn tensor_map<R: Ring>(f: &ComplexMap<R>, g: &ComplexMap<R>) -> Result<ComplexMap<R>> {
    let (x, y) = (f.source(), g.source());
    let (x2, y2) = (f.target(), g.target());
    let s = Arc::new(tensor(x, y)?);
    let t = Arc::new(tensor(x2, y2)?);
    let r = x.ring().clone();
    Ok(ComplexMap::from_fn(s, t, |n| {
        let mut m = Matrix::zeros(tensor_rank(x2, y2, n), tensor_rank(x, y, n));
        for i in x.degrees() {
            if x.rank(i) * y.rank(n - i) == 0 || x2.rank(i) * y2.rank(n - i) == 0 {
                continue;
            }
            let b = Matrix::kron(&r, &f.component(i), &g.component(n - i));
            m.add_block(&r, tensor_offset(x2, y2, n, i), tensor_offset(x, y, n, i), &b);
        }
        m
    }))
}

/// `Hom(f, g): Hom(X, Y) -> Hom(X', Y')` for `f: X' -> X`, `g: Y -> Y'`,
/// sending `φ` to `g ∘ φ ∘ f`.
pub fn hom_map<R: Ring>(f: &ComplexMap<R>, g: &ComplexMap<R>) -> Result<ComplexMap<R>> {
    let (x, x2) = (f.target(), f.source());
    let (y, y2) = (g.source(), g.target());
    let s = Arc::new(hom(x, y)?);
    let t = Arc::new(hom(x2, y2)?);
    let r = x.ring().clone();
    Ok(ComplexMap::from_fn(s, t, |n| {
        let mut m = Matrix::zeros(hom_rank(x2, y2, n), hom_rank(x, y, n));
        for i in x.degrees() {
            if x.rank(i) * y.rank(i + n) == 0 || x2.rank(i) * y2.rank(i + n) == 0 {
                continue;
            }
            let b = Matrix::kron(&r, &g.component(i + n), &f.component(i).transpose());
            m.add_block(&r, hom_offset(x2, y2, n, i), hom_offset(x, y, n, i), &b);
        }
        m
    }))
}

/// Mapping cone: `cone^n = X^{n+1} ⊕ Y^n`, `d = [[-d_X, 0], [f, d_Y]]`.
pub fn cone<R: Ring>(f: &ComplexMap<R>) -> FreeComplex<R> {
    let (x, y) = (f.source(), f.target());
    let r = x.ring();
    let lo = (x.lo() - 1).min(y.lo());
    let hi = (x.hi() - 1).max(y.hi());
    if x.is_zero() && y.is_zero() {
        return FreeComplex::zero(r.clone());
    }
    let lo = if x.is_zero() { y.lo() } else if y.is_zero() { x.lo() - 1 } else { lo };
    let hi = if x.is_zero() { y.hi() } else if y.is_zero() { x.hi() - 1 } else { hi };
    FreeComplex::from_fn(
        r,
        lo,
        hi,
        |n| x.rank(n + 1) + y.rank(n),
        |n| {
            let mut m = Matrix::zeros(x.rank(n + 2) + y.rank(n + 1), x.rank(n + 1) + y.rank(n));
            m.add_block(r, 0, 0, &x.d(n + 1).neg(r));
            m.add_block(r, x.rank(n + 2), 0, &f.component(n + 1));
            m.add_block(r, x.rank(n + 2), x.rank(n + 1), &y.d(n));
            m
        },
    )
}

/// `x⊗y ↦ (-1)^{|x||y|} y⊗x`.
pub fn swap<R: Ring>(x: &FreeComplex<R>, y: &FreeComplex<R>) -> Result<ComplexMap<R>> {
    let s = Arc::new(tensor(x, y)?);
    let t = Arc::new(tensor(y, x)?);
    let r = x.ring().clone();
    Ok(ComplexMap::from_fn(s, t, |n| {
        let mut trip = Vec::new();
        for i in x.degrees() {
            let j = n - i;
            let (rx, ry) = (x.rank(i), y.rank(j));
            if rx * ry == 0 {
                continue;
            }
            let (src, dst) = (tensor_offset(x, y, n, i), tensor_offset(y, x, n, j));
            let e = sign(&r, (i * j) % 2 != 0);
            for a in 0..rx {
                for b in 0..ry {
                    trip.push((dst + b * rx + a, src + a * ry + b, e.clone()));
                }
            }
        }
        Matrix::from_triplets(&r, tensor_rank(y, x, n), tensor_rank(x, y, n), trip)
    }))
}

/// The adjunction isomorphism `Hom(X⊗Y, Z) -> Hom(X, Hom(Y, Z))`,
/// `f ↦ (x ↦ (y ↦ f(x⊗y)))`, and its inverse.
pub fn hom_tensor_adjunction<R: Ring>(
    x: &FreeComplex<R>,
    y: &FreeComplex<R>,
    z: &FreeComplex<R>,
) -> Result<(ComplexMap<R>, ComplexMap<R>)> {
    same_ring(x, y)?;
    same_ring(y, z)?;
    let xy = tensor(x, y)?;
    let yz = hom(y, z)?;
    let left = Arc::new(hom(&xy, z)?);
    let right = Arc::new(hom(x, &yz)?);
    let r = x.ring().clone();
    let perm = |n: i32| {
        let mut trip = Vec::new();
        for i in x.degrees() {
            for j in y.degrees() {
                let (rx, ry, rz) = (x.rank(i), y.rank(j), z.rank(i + j + n));
                if rx * ry * rz == 0 {
                    continue;
                }
                let m = i + j;
                // Hom(X⊗Y, Z)^n: block for (X⊗Y)^m, entry (z, x⊗y)
                let rxy = tensor_rank(x, y, m);
                let l0 = hom_offset(&xy, z, n, m);
                let inner = tensor_offset(x, y, m, i);
                // Hom(X, Hom(Y,Z))^n: block for X^i into Hom(Y,Z)^{i+n}; entry (h, x)
                // with h in the block for Y^j, entry (z, y)
                let r0 = hom_offset(x, &yz, n, i);
                let h0 = hom_offset(y, z, i + n, j);
                for a in 0..rx {
                    for b in 0..ry {
                        for c in 0..rz {
                            let li = l0 + c * rxy + inner + a * ry + b;
                            let h = h0 + c * ry + b;
                            let ri = r0 + h * rx + a;
                            trip.push((ri, li, r.one()));
                        }
                    }
                }
            }
        }
        Matrix::from_triplets(&r, right.rank(n), left.rank(n), trip)
    };
    let comps: Vec<Matrix<R::Elem>> = left.degrees().map(perm).collect();
    let inv_comps = right.degrees().map(|n| {
        if n >= left.lo() && n <= left.hi() {
            comps[(n - left.lo()) as usize].transpose()
        } else {
            Matrix::zeros(left.rank(n), right.rank(n))
        }
    });
    let inv_comps: Vec<_> = inv_comps.collect();
    let fwd = ComplexMap::new(left.clone(), right.clone(), comps)?;
    let inv = ComplexMap::new(right, left, inv_comps)?;
    Ok((fwd, inv))
}
