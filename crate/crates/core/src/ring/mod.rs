//! Computable commutative rings.
//!
//! Every ring is a small context object (`Z/8`, `F2[t]`, a structure-constant
//! algebra, ...) and elements are plain values interpreted through it. Elements
//! are always kept in canonical form, so `==` on elements is ring equality.

mod algebra;
mod integers;
mod modular;
mod parse;
mod poly;
mod rationals;
mod spec;

use std::fmt::Debug;

use crate::error::Result;

pub use algebra::FiniteAlgebra;
pub use integers::Integers;
pub use modular::{IntegersMod, PrimeField};
pub use poly::UniPoly;
pub use rationals::Rationals;
pub use spec::{AlgebraFile, AnyRing, RingSpec};

pub trait Ring: Clone + PartialEq + Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn is_unit(&self, a: &Self::Elem) -> bool;

    /// Short name used in reports, e.g. `Z/8` or `F2[t]`.
    fn name(&self) -> String;
    fn format_elem(&self, a: &Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> Result<Self::Elem>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn pow(&self, a: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn signed(&self, a: &Self::Elem, negative: bool) -> Self::Elem {
        if negative {
            self.neg(a)
        } else {
            a.clone()
        }
    }

    /// Smallest `e >= 1` with `a^e = 0`, searching up to `cap`.
    fn nilpotency_index(&self, a: &Self::Elem, cap: u32) -> Option<u32> {
        let mut p = a.clone();
        for e in 1..=cap {
            if self.is_zero(&p) {
                return Some(e);
            }
            p = self.mul(&p, a);
        }
        None
    }
}

/// Result of an extended gcd step: `s*a + t*b = g`, `u*a + v*b = 0` and
/// `s*v - t*u = 1`, so the 2x2 matrix `[[s, t], [u, v]]` is invertible.
#[derive(Clone, Debug)]
pub struct Bezout<E> {
    pub g: E,
    pub s: E,
    pub t: E,
    pub u: E,
    pub v: E,
}

/// Rings in which every matrix has a Smith normal form computable by
/// gcd steps: Z, Z/m, fields, and polynomials over a field.
pub trait EdRing: Ring {
    fn bezout(&self, a: &Self::Elem, b: &Self::Elem) -> Bezout<Self::Elem>;
    /// Some `q` with `b * q = a`, if one exists.
    fn divide(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;
    /// A unit `w` such that `a * w` is the canonical associate of `a`.
    fn normalizer(&self, a: &Self::Elem) -> Self::Elem;
    /// Generator of the annihilator ideal of `a`.
    fn annihilator(&self, a: &Self::Elem) -> Self::Elem;
    /// Size used to choose pivots; zero only for the zero element.
    fn size(&self, a: &Self::Elem) -> u64;

    fn canonical(&self, a: &Self::Elem) -> Self::Elem {
        self.mul(a, &self.normalizer(a))
    }

    fn divides(&self, b: &Self::Elem, a: &Self::Elem) -> bool {
        self.divide(a, b).is_some()
    }
}

pub trait Field: EdRing {
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn characteristic(&self) -> u64;
}

/// Default `Bezout` for fields.
pub(crate) fn field_bezout<F: Field>(f: &F, a: &F::Elem, b: &F::Elem) -> Bezout<F::Elem> {
    if !f.is_zero(a) {
        let ia = f.inv(a);
        Bezout {
            g: f.one(),
            s: ia.clone(),
            t: f.zero(),
            u: f.neg(b),
            v: a.clone(),
        }
    } else if !f.is_zero(b) {
        Bezout {
            g: f.one(),
            s: f.zero(),
            t: f.inv(b),
            u: f.neg(b),
            v: f.zero(),
        }
    } else {
        Bezout {
            g: f.zero(),
            s: f.one(),
            t: f.zero(),
            u: f.zero(),
            v: f.one(),
        }
    }
}
