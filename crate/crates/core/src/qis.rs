//! Quasi-isomorphism certificates and cohomology-level tests on chain maps.

use crate::complex::{ComplexMap, FreeComplex};
use crate::linalg::{ExactRing, Invariants};
use crate::matrix::Matrix;
use crate::ops::cone;

/// Cone cohomology of a chain map; the map is a quasi-isomorphism iff all vanish.
#[derive(Clone, Debug, PartialEq)]
pub struct QisCertificate<E> {
    pub qis: bool,
    /// `(degree, H^degree(cone))` over the cone's support.
    pub evidence: Vec<(i32, Invariants<E>)>,
}

impl<E> QisCertificate<E> {
    /// Degrees where the cone has nonzero cohomology.
    pub fn obstructions(&self) -> impl Iterator<Item = &(i32, Invariants<E>)> {
        self.evidence.iter().filter(|(_, h)| !h.is_zero())
    }
}

pub fn is_quasi_iso<R: ExactRing>(f: &ComplexMap<R>) -> QisCertificate<R::Elem> {
    let c = cone(f);
    let evidence = c.cohomology_all();
    let qis = evidence.iter().all(|(_, h)| h.is_zero());
    QisCertificate { qis, evidence }
}

/// Whether `H^i(f) = 0`: the image of the cycles lies in the boundaries.
pub fn induces_zero_at<R: ExactRing>(f: &ComplexMap<R>, i: i32) -> bool {
    let r = f.ring();
    let (x, y) = (f.source(), f.target());
    if x.rank(i) == 0 || y.rank(i) == 0 {
        return true;
    }
    let z = r.kernel(&x.d(i));
    let img = f.component(i).mul_unchecked(r, &z);
    r.spans(&y.d(i - 1), &img)
}

/// Whether `f` induces the zero map on cohomology in every degree.
pub fn induces_zero<R: ExactRing>(f: &ComplexMap<R>) -> bool {
    let lo = f.source().lo().max(f.target().lo());
    let hi = f.source().hi().min(f.target().hi());
    (lo..=hi).all(|i| induces_zero_at(f, i))
}

/// Degrees (within `x`'s support) where `H^i(x)` is nonzero.
pub fn nonzero_degrees<R: ExactRing>(x: &FreeComplex<R>) -> Vec<i32> {
    x.cohomology_all().into_iter().filter(|(_, h)| !h.is_zero()).map(|(i, _)| i).collect()
}

/// Whether `f - g = d h + h d` for the given degree -1 map `h`, where
/// `h[k]` maps degree `lo + k` of the source to degree `lo + k - 1` of the target.
pub fn is_homotopy<R: ExactRing>(f: &ComplexMap<R>, g: &ComplexMap<R>, h: &[Matrix<R::Elem>]) -> bool {
    let r = f.ring();
    let (x, y) = (f.source(), f.target());
    if g.source() != x || g.target() != y || h.len() != x.ranks().len() {
        return false;
    }
    let hk = |i: i32| -> Matrix<R::Elem> {
        if i >= x.lo() && i <= x.hi() {
            h[(i - x.lo()) as usize].clone()
        } else {
            Matrix::zeros(y.rank(i - 1), x.rank(i))
        }
    };
    for i in x.degrees() {
        if hk(i).shape() != (y.rank(i - 1), x.rank(i)) {
            return false;
        }
        let diff = f.component(i).sub(r, &g.component(i));
        let dh = y.d(i - 1).mul_unchecked(r, &hk(i));
        let hd = hk(i + 1).mul_unchecked(r, &x.d(i));
        if diff != dh.add(r, &hd) {
            return false;
        }
    }
    true
}

/// Whether `H^i(f)` is injective.
pub fn induces_injective_at<R: ExactRing>(f: &ComplexMap<R>, i: i32) -> bool {
    let r = f.ring();
    let (x, y) = (f.source(), f.target());
    if x.rank(i) == 0 {
        return true;
    }
    let z = r.kernel(&x.d(i));
    if z.cols() == 0 {
        return true;
    }
    let fz = f.component(i).mul_unchecked(r, &z);
    let by = y.d(i - 1);
    // combinations c of cycles with f(z c) a boundary
    let syz = r.kernel(&Matrix::hstack(r, &[&fz, &by]));
    let c = syz.row_slice(0, z.cols());
    r.spans(&x.d(i - 1), &z.mul_unchecked(r, &c))
}

/// Whether `H^i(f)` is surjective.
pub fn induces_surjective_at<R: ExactRing>(f: &ComplexMap<R>, i: i32) -> bool {
    let r = f.ring();
    let (x, y) = (f.source(), f.target());
    if y.rank(i) == 0 {
        return true;
    }
    let zy = r.kernel(&y.d(i));
    let fz = if x.rank(i) == 0 {
        Matrix::zeros(y.rank(i), 0)
    } else {
        f.component(i).mul_unchecked(r, &r.kernel(&x.d(i)))
    };
    r.spans(&Matrix::hstack(r, &[&fz, &y.d(i - 1)]), &zy)
}
