//! Truncated telescope complexes `T_j` of a sequence, with inclusions and the
//! augmentation to the ring.

use std::sync::Arc;

use rayon::prelude::*;

use crate::complex::{ComplexMap, FreeComplex};
use crate::error::{Error, Result};
use crate::linalg::{ExactRing, Invariants};
use crate::matrix::Matrix;
use crate::module::FpModule;
use crate::ops::{tensor, tensor_map};
use crate::ring::Ring;

/// Single-element truncation: degrees 0 and 1 free on `δ_0..δ_j`,
/// `d(δ_0) = a δ_0`, `d(δ_i) = a δ_i - δ_{i-1}`.
pub fn single_telescope<R: Ring>(ring: &R, a: &R::Elem, j: usize) -> FreeComplex<R> {
    let n = j + 1;
    let mut trip = Vec::with_capacity(2 * n);
    for i in 0..n {
        trip.push((i, i, a.clone()));
        if i > 0 {
            trip.push((i - 1, i, ring.neg(&ring.one())));
        }
    }
    let d = Matrix::from_triplets(ring, n, n, trip);
    FreeComplex::new(ring.clone(), 0, vec![n, n], vec![d]).expect("telescope differential")
}

fn single_inclusion<R: Ring>(ring: &R, from: &Arc<FreeComplex<R>>, to: &Arc<FreeComplex<R>>) -> ComplexMap<R> {
    ComplexMap::from_fn(from.clone(), to.clone(), |i| {
        let (r, c) = (to.rank(i), from.rank(i));
        Matrix::from_triplets(ring, r, c, (0..c).map(|k| (k, k, ring.one())))
    })
}

fn single_augmentation<R: Ring>(ring: &R, t: &Arc<FreeComplex<R>>, unit: &Arc<FreeComplex<R>>) -> ComplexMap<R> {
    ComplexMap::from_fn(t.clone(), unit.clone(), |i| {
        let c = t.rank(i);
        if i == 0 {
            Matrix::from_triplets(ring, 1, c, [(0, 0, ring.one())])
        } else {
            Matrix::zeros(unit.rank(i), c)
        }
    })
}

/// `⊗_i (A --a_i^m--> A)` in degrees `0..n`.
pub fn dual_koszul<R: Ring>(ring: &R, seq: &[R::Elem], m: u32) -> Result<FreeComplex<R>> {
    if seq.is_empty() {
        return Err(Error::EmptySequence);
    }
    let mut out = FreeComplex::unit(ring.clone());
    for a in seq {
        let f = FreeComplex::two_term(ring.clone(), 0, Matrix::scalar(ring, 1, &ring.pow(a, m)))?;
        out = tensor(&out, &f)?;
    }
    Ok(out)
}

/// The levels `T_0..T_jmax` of the telescope of a sequence.
#[derive(Clone, Debug)]
pub struct TelescopeTower<R: Ring> {
    ring: R,
    seq: Vec<R::Elem>,
    unit: Arc<FreeComplex<R>>,
    /// `singles[i][j]` is the truncation of `a_i` at level `j`.
    singles: Vec<Vec<Arc<FreeComplex<R>>>>,
    levels: Vec<Arc<FreeComplex<R>>>,
}

impl<R: ExactRing> TelescopeTower<R> {
    /// Builds `T_0..T_jmax` and verifies `u_{j+1} ∘ ι_j = u_j`; for a single
    /// element also checks `H^0 ≅ Ann(a^{j+1})` and `H^1 ≅ A/(a^{j+1})`.
    pub fn new(ring: R, seq: Vec<R::Elem>, jmax: usize) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::EmptySequence);
        }
        let singles: Vec<Vec<Arc<FreeComplex<R>>>> = seq
            .iter()
            .map(|a| (0..=jmax).map(|j| Arc::new(single_telescope(&ring, a, j))).collect())
            .collect();
        let levels: Vec<Arc<FreeComplex<R>>> = (0..=jmax)
            .into_par_iter()
            .map(|j| {
                let mut t = singles[0][j].as_ref().clone();
                for s in &singles[1..] {
                    t = tensor(&t, &s[j]).expect("same ring");
                }
                Arc::new(t)
            })
            .collect();
        let tower = TelescopeTower { unit: Arc::new(FreeComplex::unit(ring.clone())), ring, seq, singles, levels };
        tower.verify()?;
        Ok(tower)
    }

    fn verify(&self) -> Result<()> {
        for j in 0..self.jmax() {
            let lhs = self.augmentation(j + 1).compose(&self.inclusion(j, j + 1))?;
            if lhs != self.augmentation(j) {
                return Err(Error::InvalidMap(format!("u_{} ∘ ι_{j} differs from u_{j}", j + 1)));
            }
        }
        if self.seq.len() == 1 {
            let r = &self.ring;
            for j in 0..=self.jmax() {
                let p = r.pow(&self.seq[0], j as u32 + 1);
                let t = self.level(j);
                let quotient = FpModule::cyclic(r.clone(), &p);
                let ann = FpModule::free(r.clone(), 1).submodule(&r.kernel(&Matrix::scalar(r, 1, &p)));
                if &t.cohomology(1) != quotient.invariants() || &t.cohomology(0) != ann.invariants() {
                    return Err(Error::InvalidComplex(format!("telescope cohomology at level {j}")));
                }
            }
        }
        Ok(())
    }
}

impl<R: Ring> TelescopeTower<R> {
    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn sequence(&self) -> &[R::Elem] {
        &self.seq
    }

    pub fn jmax(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level(&self, j: usize) -> &Arc<FreeComplex<R>> {
        &self.levels[j]
    }

    /// The ring in degree 0, target of the augmentation.
    pub fn unit(&self) -> &Arc<FreeComplex<R>> {
        &self.unit
    }

    /// `ι_{j→k}: T_j -> T_k` for `j <= k`.
    pub fn inclusion(&self, j: usize, k: usize) -> ComplexMap<R> {
        assert!(j <= k, "inclusion goes up in level");
        if j == k {
            return ComplexMap::identity(self.levels[j].clone());
        }
        let mut maps = self.singles.iter().map(|s| single_inclusion(&self.ring, &s[j], &s[k]));
        let mut f = maps.next().expect("nonempty sequence");
        for g in maps {
            f = tensor_map(&f, &g).expect("same ring");
        }
        f
    }

    /// `u_j: T_j -> A`.
    pub fn augmentation(&self, j: usize) -> ComplexMap<R> {
        let mut maps = self.singles.iter().map(|s| single_augmentation(&self.ring, &s[j], &self.unit));
        let mut f = maps.next().expect("nonempty sequence");
        for g in maps {
            f = tensor_map(&f, &g).expect("same ring");
        }
        f
    }

    /// `ε_k: A -> T_k`, `1 ↦ ⊗_i Σ_l a_i^l δ_l`; a chain map once every
    /// `a_i^{k+1} = 0`, and then `u_k ∘ ε_k = id`.
    pub fn section(&self, k: usize) -> Result<ComplexMap<R>> {
        let r = &self.ring;
        let mut f: Option<ComplexMap<R>> = None;
        for (a, s) in self.seq.iter().zip(&self.singles) {
            let t = &s[k];
            let col: Vec<(usize, usize, R::Elem)> = (0..=k).map(|l| (l, 0, r.pow(a, l as u32))).collect();
            let comps = vec![Matrix::from_triplets(r, t.rank(0), 1, col)];
            let e = ComplexMap::new(self.unit.clone(), t.clone(), comps)
                .map_err(|_| Error::NotNilpotent(format!("{} at level {k}", r.format_elem(a))))?;
            f = Some(match f {
                None => e,
                Some(prev) => tensor_map(&prev, &e)?,
            });
        }
        Ok(f.expect("nonempty sequence"))
    }
}

/// Smallest `e` with `a_i^e = 0` for every `i`, searching up to `cap`.
pub fn nilpotency_exponent<R: Ring>(ring: &R, seq: &[R::Elem], cap: u32) -> Option<u32> {
    seq.iter().map(|a| ring.nilpotency_index(a, cap)).try_fold(0, |acc, e| e.map(|e| acc.max(e)))
}

/// `H^i(T_j)` for every level and degree.
pub fn level_cohomology<R: ExactRing>(tower: &TelescopeTower<R>) -> Vec<Vec<(i32, Invariants<R::Elem>)>> {
    (0..=tower.jmax()).into_par_iter().map(|j| tower.level(j).cohomology_all()).collect()
}
