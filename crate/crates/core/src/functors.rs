//! Derived torsion and completion as telescope towers, and finite-stage
//! certificates for towers and tower maps.

use std::collections::BTreeMap;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{ComplexMap, FreeComplex};
use crate::error::{Error, Result};
use crate::linalg::ExactRing;
use crate::matrix::Matrix;
use crate::module::FpModule;
use crate::ops::{cone, hom, hom_map, tensor, tensor_map};
use crate::qis::{induces_injective_at, induces_surjective_at, induces_zero, induces_zero_at};
use crate::ring::Ring;
use crate::telescope::TelescopeTower;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variance {
    /// Transitions `level j -> level j+1`.
    Ind,
    /// Transitions `level j+1 -> level j`.
    Pro,
}

/// A tower of complexes indexed by `0..=jmax`.
#[derive(Clone, Debug)]
pub struct Tower<R: Ring> {
    pub variance: Variance,
    pub levels: Vec<Arc<FreeComplex<R>>>,
    /// `transitions[j]` connects levels `j` and `j+1` in the direction of the variance.
    pub transitions: Vec<ComplexMap<R>>,
}

impl<R: Ring> Tower<R> {
    pub fn new(variance: Variance, levels: Vec<Arc<FreeComplex<R>>>, transitions: Vec<ComplexMap<R>>) -> Result<Self> {
        if levels.is_empty() || transitions.len() + 1 != levels.len() {
            return Err(Error::Precondition("a tower needs one transition between consecutive levels".into()));
        }
        for (j, t) in transitions.iter().enumerate() {
            let (s, d) = match variance {
                Variance::Ind => (&levels[j], &levels[j + 1]),
                Variance::Pro => (&levels[j + 1], &levels[j]),
            };
            if t.source() != s || t.target() != d {
                return Err(Error::InvalidMap(format!("transition {j} has the wrong endpoints")));
            }
        }
        Ok(Tower { variance, levels, transitions })
    }

    /// The constant tower with identity transitions.
    pub fn constant(x: Arc<FreeComplex<R>>, variance: Variance, jmax: usize) -> Self {
        let levels = vec![x.clone(); jmax + 1];
        let transitions = (0..jmax).map(|_| ComplexMap::identity(x.clone())).collect();
        Tower { variance, levels, transitions }
    }

    pub fn jmax(&self) -> usize {
        self.levels.len() - 1
    }

    /// Composite transition between levels `j <= k`, in the tower's direction.
    pub fn composite(&self, j: usize, k: usize) -> ComplexMap<R> {
        assert!(j <= k && k <= self.jmax());
        let mut f = ComplexMap::identity(self.levels[j].clone());
        if self.variance == Variance::Pro {
            f = ComplexMap::identity(self.levels[k].clone());
        }
        for l in j..k {
            let t = &self.transitions[l];
            f = match self.variance {
                Variance::Ind => t.compose(&f),
                Variance::Pro => {
                    let idx = k - 1 - (l - j);
                    self.transitions[idx].compose(&f)
                }
            }
            .expect("composable transitions");
        }
        f
    }
}

/// Level maps between two towers of the same variance and length.
#[derive(Clone, Debug)]
pub struct TowerMap<R: Ring> {
    pub source: Tower<R>,
    pub target: Tower<R>,
    pub maps: Vec<ComplexMap<R>>,
}

impl<R: Ring> TowerMap<R> {
    /// Checks every square `f_{j'} ∘ t = t' ∘ f_j`.
    pub fn new(source: Tower<R>, target: Tower<R>, maps: Vec<ComplexMap<R>>) -> Result<Self> {
        if source.variance != target.variance || source.levels.len() != target.levels.len() || maps.len() != source.levels.len() {
            return Err(Error::Precondition("tower map needs matching variance and index range".into()));
        }
        for j in 0..source.jmax() {
            let (a, b) = match source.variance {
                Variance::Ind => (j, j + 1),
                Variance::Pro => (j + 1, j),
            };
            let left = maps[b].compose(&source.transitions[j])?;
            let right = target.transitions[j].compose(&maps[a])?;
            if left != right {
                return Err(Error::InvalidMap(format!("square at level {j} does not commute")));
            }
        }
        Ok(TowerMap { source, target, maps })
    }

    /// The tower of mapping cones.
    pub fn cone_tower(&self) -> Tower<R> {
        let levels: Vec<Arc<FreeComplex<R>>> = self.maps.iter().map(|f| Arc::new(cone(f))).collect();
        let transitions = (0..self.source.jmax())
            .map(|j| {
                let (a, b) = match self.source.variance {
                    Variance::Ind => (j, j + 1),
                    Variance::Pro => (j + 1, j),
                };
                cone_map(&self.source.transitions[j], &self.target.transitions[j], &levels[a], &levels[b])
            })
            .collect();
        Tower { variance: self.source.variance, levels, transitions }
    }
}

/// The map `cone(f) -> cone(f')` induced by `s: X -> X'`, `t: Y -> Y'` with `f' s = t f`.
pub fn cone_map<R: Ring>(
    s: &ComplexMap<R>,
    t: &ComplexMap<R>,
    from: &Arc<FreeComplex<R>>,
    to: &Arc<FreeComplex<R>>,
) -> ComplexMap<R> {
    let r = s.ring().clone();
    let (x, x2) = (s.source(), s.target());
    ComplexMap::from_fn(from.clone(), to.clone(), |n| {
        let mut m = Matrix::zeros(x2.rank(n + 1) + t.target().rank(n), x.rank(n + 1) + t.source().rank(n));
        m.add_block(&r, 0, 0, &s.component(n + 1));
        m.add_block(&r, x2.rank(n + 1), x.rank(n + 1), &t.component(n));
        m
    })
}

/// `RΓ_a(M)` as the ind-tower `T_j ⊗ M` and `σ_j = u_j ⊗ id` to the constant tower.
pub fn rgamma_tower<R: ExactRing>(m: &Arc<FreeComplex<R>>, tel: &TelescopeTower<R>) -> Result<TowerMap<R>> {
    let id = ComplexMap::identity(m.clone());
    let levels: Vec<Arc<FreeComplex<R>>> =
        (0..=tel.jmax()).into_par_iter().map(|j| tensor(tel.level(j), m).map(Arc::new)).collect::<Result<_>>()?;
    let transitions = (0..tel.jmax()).map(|j| tensor_map(&tel.inclusion(j, j + 1), &id)).collect::<Result<_>>()?;
    let tower = Tower::new(Variance::Ind, levels, transitions)?;
    let maps = (0..=tel.jmax()).map(|j| tensor_map(&tel.augmentation(j), &id)).collect::<Result<Vec<_>>>()?;
    let unit_m = Arc::new(tensor(tel.unit(), m)?);
    let constant = Tower::constant(unit_m, Variance::Ind, tel.jmax());
    TowerMap::new(tower, constant, maps)
}

/// `LΛ_a(M)` as the pro-tower `Hom(T_j, M)` and `τ_j = Hom(u_j, id)` from the constant tower.
pub fn llambda_tower<R: ExactRing>(m: &Arc<FreeComplex<R>>, tel: &TelescopeTower<R>) -> Result<TowerMap<R>> {
    let id = ComplexMap::identity(m.clone());
    let levels: Vec<Arc<FreeComplex<R>>> =
        (0..=tel.jmax()).into_par_iter().map(|j| hom(tel.level(j), m).map(Arc::new)).collect::<Result<_>>()?;
    let transitions = (0..tel.jmax()).map(|j| hom_map(&tel.inclusion(j, j + 1), &id)).collect::<Result<_>>()?;
    let tower = Tower::new(Variance::Pro, levels, transitions)?;
    let maps = (0..=tel.jmax()).map(|j| hom_map(&tel.augmentation(j), &id)).collect::<Result<Vec<_>>>()?;
    let hom_m = Arc::new(hom(tel.unit(), m)?);
    let constant = Tower::constant(hom_m, Variance::Pro, tel.jmax());
    TowerMap::new(constant, tower, maps)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EssKind {
    EssZero,
    EssIso,
    StablyNonzero,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelWitness {
    pub j: usize,
    pub k: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssCertificate {
    pub kind: EssKind,
    #[serde(rename = "B")]
    pub bound: usize,
    pub witnesses: Vec<LevelWitness>,
    pub failures: Vec<usize>,
    /// Degree of a persistent obstruction, for `stably-nonzero`.
    pub obstruction_degree: Option<i32>,
}

/// Searches, for every `j <= jmax - B`, the least `k` in `j..=j+B` whose
/// composite transition is zero on all cohomology.
pub fn ess_zero<R: ExactRing>(tower: &Tower<R>, bound: usize) -> EssCertificate {
    ess_zero_by(tower, bound, |f| induces_zero(f))
}

/// As [`ess_zero`], restricted to the given cohomological degrees.
pub fn ess_zero_in_degrees<R: ExactRing>(tower: &Tower<R>, bound: usize, degrees: &[i32]) -> EssCertificate {
    ess_zero_by(tower, bound, |f| degrees.iter().all(|&i| induces_zero_at(f, i)))
}

fn ess_zero_by<R: ExactRing>(
    tower: &Tower<R>,
    bound: usize,
    is_zero: impl Fn(&ComplexMap<R>) -> bool + Sync,
) -> EssCertificate {
    let top = tower.jmax().saturating_sub(bound);
    let found: Vec<std::result::Result<LevelWitness, usize>> = (0..=top)
        .into_par_iter()
        .map(|j| {
            (j..=(j + bound).min(tower.jmax()))
                .find(|&k| is_zero(&tower.composite(j, k)))
                .map(|k| LevelWitness { j, k })
                .ok_or(j)
        })
        .collect();
    let mut witnesses = Vec::new();
    let mut failures = Vec::new();
    for r in found {
        match r {
            Ok(w) => witnesses.push(w),
            Err(j) => failures.push(j),
        }
    }
    let kind = if failures.is_empty() { EssKind::EssZero } else { EssKind::Inconclusive };
    EssCertificate { kind, bound, witnesses, failures, obstruction_degree: None }
}

/// Degrees where every level has nonzero cohomology and every transition is
/// surjective (pro) or injective (ind) on it, so no class ever dies.
pub fn persistent_degrees<R: ExactRing>(tower: &Tower<R>) -> Vec<i32> {
    let lo = tower.levels.iter().map(|l| l.lo()).min().unwrap_or(0);
    let hi = tower.levels.iter().map(|l| l.hi()).max().unwrap_or(-1);
    (lo..=hi)
        .filter(|&i| {
            tower.levels.iter().all(|l| !l.cohomology(i).is_zero())
                && tower.transitions.iter().all(|t| match tower.variance {
                    Variance::Pro => induces_surjective_at(t, i),
                    Variance::Ind => induces_injective_at(t, i),
                })
        })
        .collect()
}

/// Ess-zero if possible, otherwise stably-nonzero if a persistent degree exists.
pub fn ess_check<R: ExactRing>(tower: &Tower<R>, bound: usize) -> EssCertificate {
    let cert = ess_zero(tower, bound);
    if cert.kind == EssKind::EssZero {
        return cert;
    }
    match persistent_degrees(tower).first() {
        Some(&i) => EssCertificate { kind: EssKind::StablyNonzero, obstruction_degree: Some(i), ..cert },
        None => cert,
    }
}

/// Ess-iso: the cone tower is ess-zero.
pub fn ess_iso<R: ExactRing>(map: &TowerMap<R>, bound: usize) -> EssCertificate {
    let mut cert = ess_zero(&map.cone_tower(), bound);
    if cert.kind == EssKind::EssZero {
        cert.kind = EssKind::EssIso;
    }
    cert
}

/// Re-checks every witness of an ess-zero certificate.
pub fn recheck<R: ExactRing>(tower: &Tower<R>, cert: &EssCertificate) -> bool {
    cert.witnesses.iter().all(|w| induces_zero(&tower.composite(w.j, w.k)))
}

/// Image of `H^i(f)` inside `H^i(target)`.
pub fn induced_image<R: ExactRing>(f: &ComplexMap<R>, i: i32) -> FpModule<R> {
    let r = f.ring();
    let y = f.target();
    let ambient = FpModule::new(r.clone(), y.d(i - 1).into_owned());
    let gens = if f.source().rank(i) == 0 {
        Matrix::zeros(y.rank(i), 0)
    } else {
        f.component(i).mul_unchecked(r, &r.kernel(&f.source().d(i)))
    };
    ambient.submodule(&gens)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerLevel {
    pub j: usize,
    pub cohomology: BTreeMap<i32, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerTransition {
    pub j: usize,
    pub induced: BTreeMap<i32, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub variance: Variance,
    pub levels: Vec<TowerLevel>,
    pub transitions: Vec<TowerTransition>,
}

/// `zero`, `iso`, `injective`, `surjective` or `nonzero` for `H^i(f)`.
pub fn describe_induced<R: ExactRing>(f: &ComplexMap<R>, i: i32) -> &'static str {
    if induces_zero_at(f, i) {
        return "zero";
    }
    match (induces_injective_at(f, i), induces_surjective_at(f, i)) {
        (true, true) => "iso",
        (true, false) => "injective",
        (false, true) => "surjective",
        (false, false) => "nonzero",
    }
}

/// Per-level cohomology and a description of each transition on cohomology.
pub fn tower_report<R: ExactRing>(tower: &Tower<R>) -> TowerReport {
    let r = tower.levels[0].ring().clone();
    let levels = tower
        .levels
        .par_iter()
        .enumerate()
        .map(|(j, l)| TowerLevel {
            j,
            cohomology: l.cohomology_all().into_iter().map(|(i, h)| (i, h.describe(&r))).collect(),
        })
        .collect();
    let transitions = tower
        .transitions
        .par_iter()
        .enumerate()
        .map(|(j, t)| {
            let lo = t.source().lo().min(t.target().lo());
            let hi = t.source().hi().max(t.target().hi());
            let induced = (lo..=hi)
                .map(|i| (i, describe_induced(t, i).to_string()))
                .collect();
            TowerTransition { j, induced }
        })
        .collect();
    TowerReport { variance: tower.variance, levels, transitions }
}
