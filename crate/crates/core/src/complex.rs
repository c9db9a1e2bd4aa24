//! Bounded cochain complexes of finitely generated free modules and chain maps.

use std::borrow::Cow;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{ExactRing, Invariants};
use crate::matrix::Matrix;
use crate::ring::Ring;

static DD_CHECKS: AtomicUsize = AtomicUsize::new(0);
static CHAIN_CHECKS: AtomicUsize = AtomicUsize::new(0);

/// Number of complexes whose `d∘d = 0` has been verified in this process.
pub fn dd_checks() -> usize {
    DD_CHECKS.load(Ordering::Relaxed)
}

/// Number of chain maps whose commutation with differentials has been verified.
pub fn chain_checks() -> usize {
    CHAIN_CHECKS.load(Ordering::Relaxed)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FreeComplex<R: Ring> {
    ring: R,
    lo: i32,
    ranks: Vec<usize>,
    /// `diffs[k]` is `d^{lo+k}`, for `k + 1 < ranks.len()`.
    diffs: Vec<Matrix<R::Elem>>,
}

impl<R: Ring> FreeComplex<R> {
    /// Builds a complex from its ranks in degrees `lo, lo+1, ...` and the
    /// differentials between consecutive degrees; checks shapes and `d∘d = 0`.
    pub fn new(ring: R, lo: i32, ranks: Vec<usize>, diffs: Vec<Matrix<R::Elem>>) -> Result<Self> {
        if diffs.len() + 1 != ranks.len().max(1) {
            return Err(Error::InvalidComplex(format!(
                "{} degrees need {} differentials, got {}",
                ranks.len(),
                ranks.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[k + 1], ranks[k]) {
                return Err(Error::InvalidComplex(format!(
                    "d^{} has shape {:?}, expected {:?}",
                    lo + k as i32,
                    d.shape(),
                    (ranks[k + 1], ranks[k])
                )));
            }
        }
        for (k, w) in diffs.windows(2).enumerate() {
            if !w[1].mul_unchecked(&ring, &w[0]).is_zero() {
                return Err(Error::InvalidComplex(format!("d^{} ∘ d^{} is not zero", lo + k as i32 + 1, lo + k as i32)));
            }
        }
        DD_CHECKS.fetch_add(1, Ordering::Relaxed);
        Ok(FreeComplex { ring, lo, ranks, diffs }.trimmed())
    }

    fn trimmed(mut self) -> Self {
        while self.ranks.last() == Some(&0) {
            self.ranks.pop();
            self.diffs.pop();
        }
        while self.ranks.first() == Some(&0) {
            self.ranks.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.ranks.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
        self
    }

    pub fn zero(ring: R) -> Self {
        FreeComplex { ring, lo: 0, ranks: Vec::new(), diffs: Vec::new() }
    }

    /// `R^n` concentrated in degree `deg`.
    pub fn free(ring: R, deg: i32, n: usize) -> Self {
        FreeComplex { ring, lo: deg, ranks: vec![n], diffs: Vec::new() }.trimmed()
    }

    /// The ring itself in degree 0.
    pub fn unit(ring: R) -> Self {
        Self::free(ring, 0, 1)
    }

    /// `R --m--> R^` in degrees `deg, deg+1` for a square matrix `m`.
    pub fn two_term(ring: R, deg: i32, m: Matrix<R::Elem>) -> Result<Self> {
        let ranks = vec![m.cols(), m.rows()];
        Self::new(ring, deg, ranks, vec![m])
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Lowest degree of the support (0 for the zero complex).
    pub fn lo(&self) -> i32 {
        self.lo
    }

    /// Highest degree of the support (`lo - 1` for the zero complex).
    pub fn hi(&self) -> i32 {
        self.lo + self.ranks.len() as i32 - 1
    }

    pub fn degrees(&self) -> std::ops::RangeInclusive<i32> {
        self.lo..=self.hi()
    }

    pub fn is_zero(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn rank(&self, i: i32) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn total_rank(&self) -> usize {
        self.ranks.iter().sum()
    }

    /// The differential `d^i: X^i -> X^{i+1}`.
    pub fn d(&self, i: i32) -> Cow<'_, Matrix<R::Elem>> {
        if i >= self.lo && i < self.hi() {
            Cow::Borrowed(&self.diffs[(i - self.lo) as usize])
        } else {
            Cow::Owned(Matrix::zeros(self.rank(i + 1), self.rank(i)))
        }
    }

    /// `X[k]^n = X^{n+k}` with differential `(-1)^k d`.
    pub fn shift(&self, k: i32) -> Self {
        let diffs = if k % 2 == 0 { self.diffs.clone() } else { self.diffs.iter().map(|d| d.neg(&self.ring)).collect() };
        FreeComplex { ring: self.ring.clone(), lo: self.lo - k, ranks: self.ranks.clone(), diffs }.trimmed()
    }

    /// Builds a complex from a rank function and differential function over
    /// the degree range `lo..=hi`; `d(i)` must map degree `i` to `i+1`.
    pub(crate) fn from_fn(
        ring: &R,
        lo: i32,
        hi: i32,
        rank: impl Fn(i32) -> usize,
        d: impl Fn(i32) -> Matrix<R::Elem>,
    ) -> Self {
        if hi < lo {
            return Self::zero(ring.clone());
        }
        let ranks: Vec<usize> = (lo..=hi).map(&rank).collect();
        let diffs: Vec<Matrix<R::Elem>> = (lo..hi).map(d).collect();
        Self::new(ring.clone(), lo, ranks, diffs).expect("constructed complex satisfies d∘d = 0")
    }
}

impl<R: ExactRing> FreeComplex<R> {
    pub fn cohomology(&self, i: i32) -> Invariants<R::Elem> {
        self.ring.cohomology(&self.d(i - 1), &self.d(i))
    }

    /// Cohomology in every degree of the support.
    pub fn cohomology_all(&self) -> Vec<(i32, Invariants<R::Elem>)> {
        self.degrees().map(|i| (i, self.cohomology(i))).collect()
    }

    pub fn is_acyclic(&self) -> bool {
        self.degrees().all(|i| self.cohomology(i).is_zero())
    }
}

/// A degree-preserving chain map.
#[derive(Clone, Debug)]
pub struct ComplexMap<R: Ring> {
    source: Arc<FreeComplex<R>>,
    target: Arc<FreeComplex<R>>,
    /// Components for degrees `source.lo()..=source.hi()`.
    comps: Vec<Matrix<R::Elem>>,
}

impl<R: Ring> PartialEq for ComplexMap<R> {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source
            && self.target == other.target
            && self.source.degrees().all(|i| self.component(i) == other.component(i))
    }
}

impl<R: Ring> ComplexMap<R> {
    /// Builds a map from components in degrees `source.lo()..=source.hi()`;
    /// checks shapes and `d f = f d`.
    pub fn new(source: Arc<FreeComplex<R>>, target: Arc<FreeComplex<R>>, comps: Vec<Matrix<R::Elem>>) -> Result<Self> {
        let f = Self::new_unchecked(source, target, comps)?;
        if let Some(i) = f.commutation_failure() {
            return Err(Error::InvalidMap(format!("d f != f d at degree {i}")));
        }
        CHAIN_CHECKS.fetch_add(1, Ordering::Relaxed);
        Ok(f)
    }

    /// Shape-checked construction without the commutation check.
    pub fn new_unchecked(
        source: Arc<FreeComplex<R>>,
        target: Arc<FreeComplex<R>>,
        comps: Vec<Matrix<R::Elem>>,
    ) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(source.ring().name(), target.ring().name()));
        }
        if comps.len() != source.ranks().len() {
            return Err(Error::InvalidMap(format!(
                "expected {} components, got {}",
                source.ranks().len(),
                comps.len()
            )));
        }
        for (i, c) in source.degrees().zip(&comps) {
            if c.shape() != (target.rank(i), source.rank(i)) {
                return Err(Error::InvalidMap(format!(
                    "component in degree {i} has shape {:?}, expected {:?}",
                    c.shape(),
                    (target.rank(i), source.rank(i))
                )));
            }
        }
        Ok(ComplexMap { source, target, comps })
    }

    /// Builds a map from a component function; panics if it is not a chain map.
    pub(crate) fn from_fn(
        source: Arc<FreeComplex<R>>,
        target: Arc<FreeComplex<R>>,
        comp: impl Fn(i32) -> Matrix<R::Elem>,
    ) -> Self {
        let comps = source.degrees().map(comp).collect();
        Self::new(source, target, comps).expect("constructed map is a chain map")
    }

    pub fn identity(x: Arc<FreeComplex<R>>) -> Self {
        let r = x.ring().clone();
        let comps = x.degrees().map(|i| Matrix::identity(&r, x.rank(i))).collect();
        ComplexMap { source: x.clone(), target: x, comps }
    }

    pub fn zero(source: Arc<FreeComplex<R>>, target: Arc<FreeComplex<R>>) -> Self {
        let comps = source.degrees().map(|i| Matrix::zeros(target.rank(i), source.rank(i))).collect();
        ComplexMap { source, target, comps }
    }

    pub fn source(&self) -> &Arc<FreeComplex<R>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FreeComplex<R>> {
        &self.target
    }

    pub fn ring(&self) -> &R {
        self.source.ring()
    }

    pub fn component(&self, i: i32) -> Cow<'_, Matrix<R::Elem>> {
        if i >= self.source.lo() && i <= self.source.hi() {
            Cow::Borrowed(&self.comps[(i - self.source.lo()) as usize])
        } else {
            Cow::Owned(Matrix::zeros(self.target.rank(i), self.source.rank(i)))
        }
    }

    fn commutation_failure(&self) -> Option<i32> {
        let r = self.ring();
        let lo = self.source.lo().min(self.target.lo()) - 1;
        let hi = self.source.hi().max(self.target.hi());
        (lo..=hi).find(|&i| {
            let left = self.target.d(i).mul_unchecked(r, &self.component(i));
            let right = self.component(i + 1).mul_unchecked(r, &self.source.d(i));
            left != right
        })
    }

    pub fn is_chain_map(&self) -> bool {
        self.commutation_failure().is_none()
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ComplexMap<R>) -> Result<Self> {
        if first.target != self.source {
            return Err(Error::InvalidMap("composable maps need matching middle complex".into()));
        }
        let r = self.ring();
        let comps = first.source.degrees().map(|i| self.component(i).mul_unchecked(r, &first.component(i))).collect();
        Ok(ComplexMap { source: first.source.clone(), target: self.target.clone(), comps })
    }

    pub fn add(&self, other: &ComplexMap<R>) -> Result<Self> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidMap("sum of maps with different endpoints".into()));
        }
        let r = self.ring();
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(r, b)).collect();
        Ok(ComplexMap { source: self.source.clone(), target: self.target.clone(), comps })
    }

    pub fn neg(&self) -> Self {
        let r = self.ring();
        ComplexMap {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self.comps.iter().map(|c| c.neg(r)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    /// Whether every component is an identity matrix.
    pub fn is_identity(&self) -> bool {
        self.source == self.target
            && self.source.degrees().all(|i| *self.component(i) == Matrix::identity(self.ring(), self.source.rank(i)))
    }

    /// `f[k]: X[k] -> Y[k]`.
    pub fn shift(&self, k: i32) -> Self {
        ComplexMap {
            source: Arc::new(self.source.shift(k)),
            target: Arc::new(self.target.shift(k)),
            comps: self.comps.clone(),
        }
    }
}
