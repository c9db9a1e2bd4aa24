//! Finitely presented modules `R^g / colspan(relations)` and maps between them.

use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::linalg::{ExactRing, Invariants};
use crate::matrix::Matrix;

#[derive(Clone, Debug)]
pub struct FpModule<R: ExactRing> {
    ring: R,
    relations: Matrix<R::Elem>,
    invariants: OnceLock<Invariants<R::Elem>>,
}

impl<R: ExactRing> FpModule<R> {
    /// `R^g / colspan(relations)`; `relations` has `g` rows.
    pub fn new(ring: R, relations: Matrix<R::Elem>) -> Self {
        FpModule { ring, relations, invariants: OnceLock::new() }
    }

    pub fn free(ring: R, g: usize) -> Self {
        Self::new(ring, Matrix::zeros(g, 0))
    }

    /// `R / (c)`.
    pub fn cyclic(ring: R, c: &R::Elem) -> Self {
        let rel = Matrix::scalar(&ring, 1, c);
        Self::new(ring, rel)
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn generators(&self) -> usize {
        self.relations.rows()
    }

    pub fn relations(&self) -> &Matrix<R::Elem> {
        &self.relations
    }

    pub fn invariants(&self) -> &Invariants<R::Elem> {
        self.invariants.get_or_init(|| self.ring.cokernel_invariants(&self.relations))
    }

    pub fn is_zero(&self) -> bool {
        self.invariants().is_zero()
    }

    /// Whether every column of `v` (vectors in `R^g`) is zero in the module.
    pub fn contains_zero(&self, v: &Matrix<R::Elem>) -> bool {
        self.ring.spans(&self.relations, v)
    }

    /// Whether the columns of `sub` together with the relations generate `R^g`.
    pub fn generated_by(&self, sub: &Matrix<R::Elem>) -> bool {
        let g = self.generators();
        let all = Matrix::hstack(&self.ring, &[sub, &self.relations]);
        self.ring.spans(&all, &Matrix::identity(&self.ring, g))
    }

    /// The submodule generated by the columns of `gens`, as its own presentation.
    pub fn submodule(&self, gens: &Matrix<R::Elem>) -> FpModule<R> {
        let r = &self.ring;
        let t = gens.cols();
        let syz = r.kernel(&Matrix::hstack(r, &[gens, &self.relations]));
        FpModule::new(r.clone(), syz.row_slice(0, t))
    }

    /// `M / (a_1^k, ..., a_n^k) M`.
    pub fn adic_quotient(&self, seq: &[R::Elem], k: u32) -> FpModule<R> {
        let r = &self.ring;
        let g = self.generators();
        let mut parts = vec![self.relations.clone()];
        for a in seq {
            parts.push(Matrix::scalar(r, g, &r.pow(a, k)));
        }
        let refs: Vec<&Matrix<R::Elem>> = parts.iter().collect();
        FpModule::new(r.clone(), Matrix::hstack(r, &refs))
    }

    /// Vectors of `R^g` killed by `a_i^k` for every `i`, as generator columns
    /// (including the relations).
    fn killed_by_power(&self, seq: &[R::Elem], k: u32) -> Matrix<R::Elem> {
        let r = &self.ring;
        let g = self.generators();
        let s = self.relations.cols();
        let n = seq.len();
        // [a_i^k I | 0 .. rel .. 0] stacked over i; kernel projected to the first g coordinates
        let mut big = Matrix::zeros(n * g, g + n * s);
        for (i, a) in seq.iter().enumerate() {
            big.add_block(r, i * g, 0, &Matrix::scalar(r, g, &r.pow(a, k)));
            big.add_block(r, i * g, g + i * s, &self.relations);
        }
        r.kernel(&big).row_slice(0, g).nonzero_columns()
    }

    /// Γ_a(M): elements killed by a power of every `a_i`, with generators in
    /// coordinates of `R^g`.
    pub fn torsion_submodule(&self, seq: &[R::Elem]) -> Result<(FpModule<R>, Matrix<R::Elem>)> {
        if seq.is_empty() {
            return Err(Error::EmptySequence);
        }
        let r = &self.ring;
        let mut prev = self.killed_by_power(seq, 1);
        for k in 2..=64 {
            let next = self.killed_by_power(seq, k);
            let with_rel = Matrix::hstack(r, &[&prev, &self.relations]);
            if r.spans(&with_rel, &next) {
                return Ok((self.submodule(&prev), prev));
            }
            prev = next;
        }
        Err(Error::NoStabilization(64))
    }

    pub fn is_torsion(&self, seq: &[R::Elem]) -> Result<bool> {
        let (_, gens) = self.torsion_submodule(seq)?;
        Ok(self.generated_by(&gens))
    }
}

/// A module map given on generators: column `j` is the image of generator `j`.
#[derive(Clone, Debug)]
pub struct ModuleMap<R: ExactRing> {
    pub source: FpModule<R>,
    pub target: FpModule<R>,
    pub matrix: Matrix<R::Elem>,
}

impl<R: ExactRing> ModuleMap<R> {
    pub fn new(source: FpModule<R>, target: FpModule<R>, matrix: Matrix<R::Elem>) -> Result<Self> {
        if matrix.shape() != (target.generators(), source.generators()) {
            return Err(Error::DimensionMismatch("module map shape".into()));
        }
        let r = source.ring();
        let img = matrix.mul_unchecked(r, source.relations());
        if !target.contains_zero(&img) {
            return Err(Error::InvalidMap("relations do not map to relations".into()));
        }
        Ok(ModuleMap { source, target, matrix })
    }

    /// Generators (in source coordinates) of the kernel, relations included.
    pub fn kernel_generators(&self) -> Matrix<R::Elem> {
        let r = self.source.ring();
        let g = self.source.generators();
        let k = r.kernel(&Matrix::hstack(r, &[&self.matrix, self.target.relations()]));
        Matrix::hstack(r, &[&k.row_slice(0, g), self.source.relations()])
    }

    pub fn is_injective(&self) -> bool {
        self.source.contains_zero(&self.kernel_generators())
    }

    pub fn is_surjective(&self) -> bool {
        self.target.generated_by(&self.matrix)
    }

    pub fn is_zero(&self) -> bool {
        self.target.contains_zero(&self.matrix)
    }
}

/// Checks `0 -> M1 -f-> M2 -g-> M3 -> 0` is exact.
pub fn check_short_exact<R: ExactRing>(f: &ModuleMap<R>, g: &ModuleMap<R>) -> Result<()> {
    let r = f.source.ring();
    if f.matrix.rows() != g.matrix.cols() {
        return Err(Error::NotExact("maps are not composable".into()));
    }
    if !f.is_injective() {
        return Err(Error::NotExact("first map is not injective".into()));
    }
    if !g.is_surjective() {
        return Err(Error::NotExact("second map is not surjective".into()));
    }
    if !g.target.contains_zero(&g.matrix.mul_unchecked(r, &f.matrix)) {
        return Err(Error::NotExact("composite is not zero".into()));
    }
    let im = Matrix::hstack(r, &[&f.matrix, f.target.relations()]);
    if !r.spans(&im, &g.kernel_generators()) {
        return Err(Error::NotExact("kernel exceeds image in the middle".into()));
    }
    Ok(())
}

/// Whether the middle term of a short exact sequence with `a`-torsion outer
/// terms is `a`-torsion.
pub fn torsion_extension_check<R: ExactRing>(f: &ModuleMap<R>, g: &ModuleMap<R>, seq: &[R::Elem]) -> Result<bool> {
    check_short_exact(f, g)?;
    if !f.source.is_torsion(seq)? || !g.target.is_torsion(seq)? {
        return Err(Error::Precondition("outer terms must be torsion".into()));
    }
    f.target.is_torsion(seq)
}

/// Levels `M / a^j M` for `j = 1..=jmax`; transitions are the identity on
/// generators (level `j+1` onto level `j`).
pub fn adic_tower<R: ExactRing>(m: &FpModule<R>, seq: &[R::Elem], jmax: u32) -> Vec<FpModule<R>> {
    (1..=jmax).map(|j| m.adic_quotient(seq, j)).collect()
}
