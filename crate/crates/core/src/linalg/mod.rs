//! Kernels, linear systems and module invariants over the supported rings.

pub mod field;
mod snf;

use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{FiniteAlgebra, Field, Integers, IntegersMod, PrimeField, Rationals, Ring, UniPoly};

pub use snf::{smith_normal_form, SmithForm};

/// Isomorphism type of a finitely presented module.
#[derive(Clone, Debug, PartialEq)]
pub enum Invariants<E> {
    /// `R^free_rank + sum R/(d)` with canonical nonunit `d`, each dividing the next.
    Elementary { free_rank: usize, torsion: Vec<E> },
    /// Dimension over the base field, for rings without elementary divisors.
    Dimension(usize),
}

impl<E> Invariants<E> {
    pub fn is_zero(&self) -> bool {
        match self {
            Invariants::Elementary { free_rank, torsion } => *free_rank == 0 && torsion.is_empty(),
            Invariants::Dimension(d) => *d == 0,
        }
    }

    pub fn describe<R: Ring<Elem = E>>(&self, ring: &R) -> String {
        let name = ring.name();
        match self {
            _ if self.is_zero() => "0".to_string(),
            Invariants::Dimension(d) => format!("dim {d}"),
            Invariants::Elementary { free_rank, torsion } => {
                let mut parts: Vec<String> = torsion
                    .iter()
                    .map(|d| {
                        let d = ring.format_elem(d);
                        if name == "Z" || name.starts_with("Z/") {
                            format!("Z/{d}")
                        } else {
                            format!("{name}/({d})")
                        }
                    })
                    .collect();
                match *free_rank {
                    0 => {}
                    1 => parts.push(name.clone()),
                    k if name.contains('/') => parts.push(format!("({name})^{k}")),
                    k => parts.push(format!("{name}^{k}")),
                }
                parts.join(" + ")
            }
        }
    }
}

impl<E: fmt::Debug> fmt::Display for Invariants<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Invariants::Elementary { free_rank, torsion } => write!(f, "free {free_rank}, torsion {torsion:?}"),
            Invariants::Dimension(d) => write!(f, "dim {d}"),
        }
    }
}

/// Rings with exact kernel, solve and cokernel computations on matrices.
pub trait ExactRing: Ring {
    /// Generators of `ker m` as columns.
    fn kernel(&self, m: &Matrix<Self::Elem>) -> Matrix<Self::Elem>;
    /// Some `x` with `a x = b`, or `None`.
    fn solve_unchecked(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Option<Matrix<Self::Elem>>;
    /// Invariants of `R^rows / colspan(rel)`.
    fn cokernel_invariants(&self, rel: &Matrix<Self::Elem>) -> Invariants<Self::Elem>;

    fn solve(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Result<Option<Matrix<Self::Elem>>> {
        if a.rows() != b.rows() {
            return Err(Error::DimensionMismatch(format!(
                "system has {} equations but right side has {} rows",
                a.rows(),
                b.rows()
            )));
        }
        Ok(self.solve_unchecked(a, b))
    }

    /// Whether every column of `b` lies in the column span of `a`.
    fn spans(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> bool {
        b.is_zero() || (a.rows() == b.rows() && self.solve_unchecked(a, b).is_some())
    }

    /// `ker d_out / im d_in` where `d_in: C^{n-1} -> C^n`, `d_out: C^n -> C^{n+1}`.
    fn cohomology(&self, d_in: &Matrix<Self::Elem>, d_out: &Matrix<Self::Elem>) -> Invariants<Self::Elem> {
        let k = self.kernel(d_out);
        if k.cols() == 0 {
            return self.cokernel_invariants(&Matrix::zeros(0, 0));
        }
        let syz = self.kernel(&k);
        let pre = if d_in.is_zero() {
            Matrix::zeros(k.cols(), 0)
        } else {
            self.solve_unchecked(&k, d_in).expect("image lies in the kernel")
        };
        self.cokernel_invariants(&Matrix::hstack(self, &[&syz, &pre]))
    }
}

macro_rules! ed_exact {
    ($t:ty $(, $g:ident)?) => {
        impl$(<$g: Field>)? ExactRing for $t {
            fn kernel(&self, m: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
                snf::kernel(self, m)
            }
            fn solve_unchecked(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Option<Matrix<Self::Elem>> {
                snf::solve(self, a, b)
            }
            fn cokernel_invariants(&self, rel: &Matrix<Self::Elem>) -> Invariants<Self::Elem> {
                let (rank, torsion) = snf::elementary_divisors(self, rel);
                Invariants::Elementary { free_rank: rel.rows() - rank, torsion }
            }
        }
    };
}

macro_rules! field_exact {
    ($t:ty) => {
        impl ExactRing for $t {
            fn kernel(&self, m: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
                field::kernel(self, m)
            }
            fn solve_unchecked(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Option<Matrix<Self::Elem>> {
                field::solve(self, a, b)
            }
            fn spans(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> bool {
                b.is_zero() || (a.rows() == b.rows() && field::consistent(self, a, b))
            }
            fn cokernel_invariants(&self, rel: &Matrix<Self::Elem>) -> Invariants<Self::Elem> {
                Invariants::Elementary { free_rank: rel.rows() - field::rank(self, rel), torsion: Vec::new() }
            }
            fn cohomology(&self, d_in: &Matrix<Self::Elem>, d_out: &Matrix<Self::Elem>) -> Invariants<Self::Elem> {
                let n = d_out.cols();
                let free_rank = n - field::rank(self, d_out) - field::rank(self, d_in);
                Invariants::Elementary { free_rank, torsion: Vec::new() }
            }
        }
    };
}

ed_exact!(Integers);
ed_exact!(IntegersMod);
ed_exact!(UniPoly<F>, F);
field_exact!(PrimeField);
field_exact!(Rationals);

impl<F: Field> FiniteAlgebra<F> {
    /// Matrix of the base-field linear map underlying `m`.
    pub fn expand(&self, m: &Matrix<Vec<F::Elem>>) -> Matrix<F::Elem> {
        let d = self.dim();
        let mut trip = Vec::new();
        for (i, j, a) in m.iter() {
            for (r, row) in self.mul_operator(a).into_iter().enumerate() {
                for (c, x) in row.into_iter().enumerate() {
                    if !self.base().is_zero(&x) {
                        trip.push((i * d + r, j * d + c, x));
                    }
                }
            }
        }
        Matrix::from_triplets(self.base(), m.rows() * d, m.cols() * d, trip)
    }

    fn flatten(&self, m: &Matrix<Vec<F::Elem>>) -> Matrix<F::Elem> {
        let d = self.dim();
        let trip = m.iter().flat_map(|(i, j, a)| {
            a.iter().enumerate().filter(|(_, x)| !self.base().is_zero(x)).map(move |(r, x)| (i * d + r, j, x.clone()))
        });
        Matrix::from_triplets(self.base(), m.rows() * d, m.cols(), trip.collect::<Vec<_>>())
    }

    fn unflatten(&self, v: &Matrix<F::Elem>) -> Matrix<Vec<F::Elem>> {
        let d = self.dim();
        let n = v.rows() / d;
        let b = self.base();
        let mut trip = Vec::new();
        for j in 0..v.cols() {
            let mut current: Option<(usize, Vec<F::Elem>)> = None;
            for (i, x) in v.column(j) {
                let (blk, r) = (i / d, i % d);
                if current.as_ref().is_some_and(|(c, _)| *c != blk) {
                    let (c, e) = current.take().expect("checked");
                    trip.push((c, j, e));
                }
                current.get_or_insert_with(|| (blk, vec![b.zero(); d])).1[r] = x.clone();
            }
            if let Some((c, e)) = current {
                trip.push((c, j, e));
            }
        }
        Matrix::from_triplets(self, n, v.cols(), trip)
    }
}

impl<F: Field + ExactRing> ExactRing for FiniteAlgebra<F> {
    fn kernel(&self, m: &Matrix<Self::Elem>) -> Matrix<Self::Elem> {
        let k = self.base().kernel(&self.expand(m));
        self.unflatten(&k).nonzero_columns()
    }

    fn solve_unchecked(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> Option<Matrix<Self::Elem>> {
        let x = self.base().solve_unchecked(&self.expand(a), &self.flatten(b))?;
        Some(self.unflatten(&x))
    }

    fn spans(&self, a: &Matrix<Self::Elem>, b: &Matrix<Self::Elem>) -> bool {
        b.is_zero() || (a.rows() == b.rows() && field::consistent(self.base(), &self.expand(a), &self.flatten(b)))
    }

    fn cokernel_invariants(&self, rel: &Matrix<Self::Elem>) -> Invariants<Self::Elem> {
        Invariants::Dimension(rel.rows() * self.dim() - field::rank(self.base(), &self.expand(rel)))
    }

    fn cohomology(&self, d_in: &Matrix<Self::Elem>, d_out: &Matrix<Self::Elem>) -> Invariants<Self::Elem> {
        let b = self.base();
        let n = d_out.cols() * self.dim();
        Invariants::Dimension(n - field::rank(b, &self.expand(d_out)) - field::rank(b, &self.expand(d_in)))
    }
}
