//! Small expression language for the complexes and maps built out of `T`, `A`,
//! `P`, `N`, tensor and Hom, evaluated at finite telescope levels.
//!
//! Every occurrence of `T` is either covariant or contravariant (an odd number
//! of first-Hom-argument positions above it). A [`Level`] assigns one truncation
//! index to each kind.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::Serialize;

use crate::complex::{ComplexMap, FreeComplex};
use crate::error::Result;
use crate::linalg::ExactRing;
use crate::ops::{hom, hom_map, hom_tensor_adjunction, swap, tensor, tensor_map};
use crate::telescope::TelescopeTower;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Obj {
    Tel,
    Base,
    P,
    N,
    Tensor(Box<Obj>, Box<Obj>),
    Hom(Box<Obj>, Box<Obj>),
}

impl Obj {
    pub fn tensor(a: Obj, b: Obj) -> Obj {
        Obj::Tensor(Box::new(a), Box::new(b))
    }

    pub fn hom(a: Obj, b: Obj) -> Obj {
        Obj::Hom(Box::new(a), Box::new(b))
    }

    fn has_tel(&self, pol: bool, want: bool) -> bool {
        match self {
            Obj::Tel => pol == want,
            Obj::Base | Obj::P | Obj::N => false,
            Obj::Tensor(a, b) => a.has_tel(pol, want) || b.has_tel(pol, want),
            Obj::Hom(a, b) => a.has_tel(!pol, want) || b.has_tel(pol, want),
        }
    }
}

/// How a full object is recovered from its finite levels: a colimit over the
/// covariant index, a limit over the contravariant one, or a nesting of both.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Nesting {
    Const,
    Colim,
    Lim,
    LimColim,
    ColimLim,
}

impl Nesting {
    fn tensor(a: Nesting, b: Nesting) -> Option<Nesting> {
        use Nesting::*;
        match (a, b) {
            (Const, x) | (x, Const) => Some(x),
            (Colim, Colim) => Some(Colim),
            (Colim, Lim) | (Lim, Colim) | (Colim, ColimLim) | (ColimLim, Colim) => Some(ColimLim),
            _ => None,
        }
    }

    /// `Hom(X, Y)` with `X` finite at each level: a limit over `X`'s index
    /// outside whatever `Y` needs.
    fn hom(a: Nesting, b: Nesting) -> Option<Nesting> {
        use Nesting::*;
        match (a, b) {
            (Const, y) => Some(y),
            (Colim, Const | Lim) => Some(Lim),
            (Colim, Colim | LimColim) => Some(LimColim),
            _ => None,
        }
    }

    /// A common nesting for the source and target of a map.
    fn join(a: Nesting, b: Nesting) -> Option<Nesting> {
        use Nesting::*;
        match (a, b) {
            _ if a == b => Some(a),
            (Const, x) | (x, Const) => Some(x),
            (Colim | Lim, LimColim) | (LimColim, Colim | Lim) | (Colim, Lim) | (Lim, Colim) => Some(LimColim),
            (Colim | Lim, ColimLim) | (ColimLim, Colim | Lim) => Some(ColimLim),
            _ => None,
        }
    }
}

impl Obj {
    /// `None` when the object is not the limit/colimit of its levels in a
    /// form the finite checks can certify (e.g. `Hom(Hom(T, P), -)`).
    pub fn nesting(&self) -> Option<Nesting> {
        match self {
            Obj::Tel => Some(Nesting::Colim),
            Obj::Base | Obj::P | Obj::N => Some(Nesting::Const),
            Obj::Tensor(a, b) => Nesting::tensor(a.nesting()?, b.nesting()?),
            Obj::Hom(a, b) => Nesting::hom(a.nesting()?, b.nesting()?),
        }
    }
}

impl fmt::Display for Obj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Obj::Tel => write!(f, "T"),
            Obj::Base => write!(f, "A"),
            Obj::P => write!(f, "P"),
            Obj::N => write!(f, "N"),
            Obj::Tensor(a, b) => write!(f, "{a}⊗{b}"),
            Obj::Hom(a, b) => write!(f, "Hom({a}, {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Morph {
    Id(Obj),
    /// The augmentation `u: T -> A`.
    U,
    Tensor(Box<Morph>, Box<Morph>),
    /// `Hom(f, g): Hom(X, Y) -> Hom(X', Y')` for `f: X' -> X`, `g: Y -> Y'`.
    Hom(Box<Morph>, Box<Morph>),
    Swap(Obj, Obj),
    /// `Hom(X⊗Y, Z) -> Hom(X, Hom(Y, Z))`.
    Adj(Obj, Obj, Obj),
    AdjInv(Obj, Obj, Obj),
    /// `Compose(g, f) = g ∘ f`.
    Compose(Box<Morph>, Box<Morph>),
}

impl Morph {
    pub fn id(o: Obj) -> Morph {
        Morph::Id(o)
    }

    pub fn tensor(a: Morph, b: Morph) -> Morph {
        Morph::Tensor(Box::new(a), Box::new(b))
    }

    pub fn hom(a: Morph, b: Morph) -> Morph {
        Morph::Hom(Box::new(a), Box::new(b))
    }

    pub fn then(self, g: Morph) -> Morph {
        Morph::Compose(Box::new(g), Box::new(self))
    }

    pub fn source(&self) -> Obj {
        match self {
            Morph::Id(o) => o.clone(),
            Morph::U => Obj::Tel,
            Morph::Tensor(a, b) => Obj::tensor(a.source(), b.source()),
            Morph::Hom(a, b) => Obj::hom(a.target(), b.source()),
            Morph::Swap(x, y) => Obj::tensor(x.clone(), y.clone()),
            Morph::Adj(x, y, z) => Obj::hom(Obj::tensor(x.clone(), y.clone()), z.clone()),
            Morph::AdjInv(x, y, z) => Obj::hom(x.clone(), Obj::hom(y.clone(), z.clone())),
            Morph::Compose(_, f) => f.source(),
        }
    }

    pub fn target(&self) -> Obj {
        match self {
            Morph::Id(o) => o.clone(),
            Morph::U => Obj::Base,
            Morph::Tensor(a, b) => Obj::tensor(a.target(), b.target()),
            Morph::Hom(a, b) => Obj::hom(a.source(), b.target()),
            Morph::Swap(x, y) => Obj::tensor(y.clone(), x.clone()),
            Morph::Adj(x, y, z) => Obj::hom(x.clone(), Obj::hom(y.clone(), z.clone())),
            Morph::AdjInv(x, y, z) => Obj::hom(Obj::tensor(x.clone(), y.clone()), z.clone()),
            Morph::Compose(g, _) => g.target(),
        }
    }

    /// Whether any `T` sits in a contravariant position of source or target.
    pub fn has_contravariant(&self) -> bool {
        self.source().has_tel(true, false) || self.target().has_tel(true, false)
    }

    pub fn nesting(&self) -> Option<Nesting> {
        Nesting::join(self.source().nesting()?, self.target().nesting()?)
    }
}

impl fmt::Display for Morph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Morph::Id(_) => write!(f, "id"),
            Morph::U => write!(f, "u"),
            Morph::Tensor(a, b) => write!(f, "{a}⊗{b}"),
            Morph::Hom(a, b) => write!(f, "Hom({a}, {b})"),
            Morph::Swap(x, y) => write!(f, "swap({x}, {y})"),
            Morph::Adj(x, y, z) => write!(f, "adj({x}, {y}, {z})"),
            Morph::AdjInv(x, y, z) => write!(f, "adj⁻¹({x}, {y}, {z})"),
            Morph::Compose(g, h) => write!(f, "{g} ∘ {h}"),
        }
    }
}

/// Truncation indices for covariant and contravariant occurrences of `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Level {
    pub cov: usize,
    pub contra: usize,
}

impl Level {
    pub fn diagonal(j: usize) -> Level {
        Level { cov: j, contra: j }
    }

    fn at(&self, pol: bool) -> usize {
        if pol {
            self.cov
        } else {
            self.contra
        }
    }
}

type ObjKey = (Obj, usize, usize, bool);

/// Evaluation context: the telescope tower and the two coefficient complexes.
pub struct Evaluator<'a, R: ExactRing> {
    tower: &'a TelescopeTower<R>,
    p: Arc<FreeComplex<R>>,
    n: Arc<FreeComplex<R>>,
    base: Arc<FreeComplex<R>>,
    cache: Mutex<HashMap<ObjKey, Arc<FreeComplex<R>>>>,
}

impl<'a, R: ExactRing> Evaluator<'a, R> {
    pub fn new(tower: &'a TelescopeTower<R>, p: Arc<FreeComplex<R>>, n: Arc<FreeComplex<R>>) -> Self {
        let base = tower.unit().clone();
        Evaluator { tower, p, n, base, cache: Mutex::new(HashMap::new()) }
    }

    pub fn tower(&self) -> &TelescopeTower<R> {
        self.tower
    }

    pub fn object(&self, o: &Obj, lv: Level) -> Result<Arc<FreeComplex<R>>> {
        self.obj(o, lv, true)
    }

    fn obj(&self, o: &Obj, lv: Level, pol: bool) -> Result<Arc<FreeComplex<R>>> {
        let key = (o.clone(), lv.cov, lv.contra, pol);
        if let Some(x) = self.cache.lock().unwrap().get(&key) {
            return Ok(x.clone());
        }
        let x = match o {
            Obj::Tel => self.tower.level(lv.at(pol)).clone(),
            Obj::Base => self.base.clone(),
            Obj::P => self.p.clone(),
            Obj::N => self.n.clone(),
            Obj::Tensor(a, b) => Arc::new(tensor(&*self.obj(a, lv, pol)?, &*self.obj(b, lv, pol)?)?),
            Obj::Hom(a, b) => Arc::new(hom(&*self.obj(a, lv, !pol)?, &*self.obj(b, lv, pol)?)?),
        };
        self.cache.lock().unwrap().insert(key, x.clone());
        Ok(x)
    }

    /// The map `source(m)(lv) -> target(m)(lv)`.
    pub fn morphism(&self, m: &Morph, lv: Level) -> Result<ComplexMap<R>> {
        self.morph(m, lv, true)
    }

    fn morph(&self, m: &Morph, lv: Level, pol: bool) -> Result<ComplexMap<R>> {
        Ok(match m {
            Morph::Id(o) => ComplexMap::identity(self.obj(o, lv, pol)?),
            Morph::U => self.tower.augmentation(lv.at(pol)),
            Morph::Tensor(a, b) => tensor_map(&self.morph(a, lv, pol)?, &self.morph(b, lv, pol)?)?,
            Morph::Hom(a, b) => hom_map(&self.morph(a, lv, !pol)?, &self.morph(b, lv, pol)?)?,
            Morph::Swap(x, y) => swap(&*self.obj(x, lv, pol)?, &*self.obj(y, lv, pol)?)?,
            Morph::Adj(x, y, z) => {
                hom_tensor_adjunction(&*self.obj(x, lv, !pol)?, &*self.obj(y, lv, !pol)?, &*self.obj(z, lv, pol)?)?.0
            }
            Morph::AdjInv(x, y, z) => {
                hom_tensor_adjunction(&*self.obj(x, lv, !pol)?, &*self.obj(y, lv, !pol)?, &*self.obj(z, lv, pol)?)?.1
            }
            Morph::Compose(g, f) => self.morph(g, lv, pol)?.compose(&self.morph(f, lv, pol)?)?,
        })
    }

    /// The structure map `o(from) -> o(to)` induced by inclusions of
    /// truncations; requires `from.cov <= to.cov` and `from.contra >= to.contra`.
    pub fn transition(&self, o: &Obj, from: Level, to: Level) -> Result<ComplexMap<R>> {
        self.trans(o, from, to, true)
    }

    // pol = true: o(from) -> o(to); pol = false: o(to) -> o(from).
    fn trans(&self, o: &Obj, from: Level, to: Level, pol: bool) -> Result<ComplexMap<R>> {
        Ok(match o {
            Obj::Tel if pol => self.tower.inclusion(from.cov, to.cov),
            Obj::Tel => self.tower.inclusion(to.contra, from.contra),
            Obj::Base | Obj::P | Obj::N => ComplexMap::identity(self.obj(o, from, pol)?),
            Obj::Tensor(a, b) => tensor_map(&self.trans(a, from, to, pol)?, &self.trans(b, from, to, pol)?)?,
            Obj::Hom(a, b) => hom_map(&self.trans(a, from, to, !pol)?, &self.trans(b, from, to, pol)?)?,
        })
    }
}
