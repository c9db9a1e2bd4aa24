//! Koszul systems `K(A; a^j)` and the bounded pro-zero test for weak proregularity.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{ComplexMap, FreeComplex};
use crate::error::{Error, Result};
use crate::linalg::ExactRing;
use crate::matrix::Matrix;
use crate::ops::{tensor, tensor_map};
use crate::qis::induces_zero_at;
use crate::ring::Ring;

/// `K(A; a^j) = ⊗_i (A --a_i^j--> A)` in degrees `-n..0`, for `j = 1..=jmax`,
/// with transitions `p_{k→j}` multiplying the degree -1 generator of each
/// factor by `a_i^{k-j}`.
#[derive(Clone, Debug)]
pub struct KoszulSystem<R: Ring> {
    ring: R,
    seq: Vec<R::Elem>,
    factors: Vec<Vec<Arc<FreeComplex<R>>>>,
    levels: Vec<Arc<FreeComplex<R>>>,
}

impl<R: ExactRing> KoszulSystem<R> {
    pub fn new(ring: R, seq: Vec<R::Elem>, jmax: u32) -> Result<Self> {
        if seq.is_empty() {
            return Err(Error::EmptySequence);
        }
        if jmax < 1 {
            return Err(Error::Precondition("koszul system needs jmax >= 1".into()));
        }
        let factors: Vec<Vec<Arc<FreeComplex<R>>>> = seq
            .iter()
            .map(|a| {
                (1..=jmax)
                    .map(|j| {
                        let d = Matrix::scalar(&ring, 1, &ring.pow(a, j));
                        Arc::new(FreeComplex::two_term(ring.clone(), -1, d).expect("two-term complex"))
                    })
                    .collect()
            })
            .collect();
        let levels = (0..jmax as usize)
            .into_par_iter()
            .map(|idx| {
                let mut k = factors[0][idx].as_ref().clone();
                for f in &factors[1..] {
                    k = tensor(&k, &f[idx]).expect("same ring");
                }
                Arc::new(k)
            })
            .collect();
        Ok(KoszulSystem { ring, seq, factors, levels })
    }

    pub fn jmax(&self) -> u32 {
        self.levels.len() as u32
    }

    pub fn level(&self, j: u32) -> &Arc<FreeComplex<R>> {
        &self.levels[j as usize - 1]
    }

    /// `p_{k→j}` for `k >= j`.
    pub fn transition(&self, k: u32, j: u32) -> ComplexMap<R> {
        assert!(k >= j && j >= 1, "transitions go down in level");
        let r = &self.ring;
        let mut out: Option<ComplexMap<R>> = None;
        for (a, f) in self.seq.iter().zip(&self.factors) {
            let (src, dst) = (&f[k as usize - 1], &f[j as usize - 1]);
            let c = r.pow(a, k - j);
            let m = ComplexMap::new(src.clone(), dst.clone(), vec![Matrix::scalar(r, 1, &c), Matrix::identity(r, 1)])
                .expect("koszul transition is a chain map");
            out = Some(match out {
                None => m,
                Some(prev) => tensor_map(&prev, &m).expect("same ring"),
            });
        }
        out.expect("nonempty sequence")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub i: i32,
    pub j: u32,
    pub k: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub i: i32,
    pub j: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ProZeroReport {
    pub verdict: String,
    pub jmax: u32,
    #[serde(rename = "B")]
    pub bound: u32,
    pub witnesses: Vec<Witness>,
    pub failures: Vec<Failure>,
}

impl ProZeroReport {
    pub fn certified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each degree `i` in `-n..=-1` and level `j <= jmax - B`, searches
/// `k` in `(j, j+B]` with `H^i(p_{k→j}) = 0`. Witnesses are re-checked on
/// the composite of one-step transitions.
pub fn wpr_check<R: ExactRing>(ring: &R, seq: &[R::Elem], jmax: u32, bound: u32) -> Result<ProZeroReport> {
    if bound < 1 || jmax <= bound {
        return Err(Error::Precondition(format!("wpr check needs jmax > B >= 1, got jmax={jmax}, B={bound}")));
    }
    let sys = KoszulSystem::new(ring.clone(), seq.to_vec(), jmax)?;
    let n = seq.len() as i32;
    let cells: Vec<(i32, u32)> = (-n..=-1).flat_map(|i| (1..=jmax - bound).map(move |j| (i, j))).collect();
    let results: Vec<std::result::Result<Witness, Failure>> = cells
        .par_iter()
        .map(|&(i, j)| {
            for k in j + 1..=j + bound {
                let p = sys.transition(k, j);
                if induces_zero_at(&p, i) {
                    let mut composite = sys.transition(j + 1, j);
                    for l in j + 1..k {
                        composite = composite.compose(&sys.transition(l + 1, l)).expect("composable");
                    }
                    if composite == p && induces_zero_at(&composite, i) {
                        return Ok(Witness { i, j, k });
                    }
                }
            }
            Err(Failure { i, j })
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for r in results {
        match r {
            Ok(w) => witnesses.push(w),
            Err(f) => failures.push(f),
        }
    }
    let verdict = if failures.is_empty() {
        format!("certified-pro-zero-up-to({jmax},{bound})")
    } else {
        "inconclusive".to_string()
    };
    Ok(ProZeroReport { verdict, jmax, bound, witnesses, failures })
}
