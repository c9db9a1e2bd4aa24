use std::sync::Arc;

use super::parse::split_terms;
use super::{Field, Ring};
use crate::error::{Error, Result};

#[derive(Debug, PartialEq)]
struct AlgebraData<F: Field> {
    base: F,
    label: String,
    dim: usize,
    /// `constants[(i * dim + j) * dim + k]` is the coefficient of `e_k` in `e_i e_j`.
    constants: Vec<F::Elem>,
    unit: Vec<F::Elem>,
    names: Vec<String>,
}

/// A finite-dimensional commutative algebra over a field, given by structure
/// constants. Elements are coordinate vectors in the chosen basis.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra<F: Field> {
    data: Arc<AlgebraData<F>>,
}

impl<F: Field> PartialEq for FiniteAlgebra<F> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data == other.data
    }
}

impl<F: Field> FiniteAlgebra<F> {
    /// Builds the algebra and checks commutativity, associativity and the unit
    /// on all basis triples.
    pub fn new(
        base: F,
        label: impl Into<String>,
        constants: Vec<Vec<Vec<F::Elem>>>,
        unit: Vec<F::Elem>,
        names: Option<Vec<String>>,
    ) -> Result<Self> {
        let dim = unit.len();
        if dim == 0 {
            return Err(Error::InvalidRing("algebra of dimension 0".into()));
        }
        if constants.len() != dim || constants.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
            return Err(Error::InvalidRing(format!("structure constants must have shape {dim}x{dim}x{dim}")));
        }
        let names = names.unwrap_or_else(|| (0..dim).map(|i| format!("e{i}")).collect());
        if names.len() != dim {
            return Err(Error::InvalidRing("wrong number of basis names".into()));
        }
        let flat = constants.into_iter().flatten().flatten().collect();
        let alg = FiniteAlgebra {
            data: Arc::new(AlgebraData { base, label: label.into(), dim, constants: flat, unit, names }),
        };
        alg.check_axioms()?;
        Ok(alg)
    }

    /// `F[x_1..x_r]` modulo the monomial ideal spanned by every monomial not in
    /// `basis`; `basis` must be closed under division and contain `1`.
    pub fn monomial_quotient(base: F, vars: &[&str], basis: &[Vec<u32>]) -> Result<Self> {
        let dim = basis.len();
        let index = |e: &[u32]| basis.iter().position(|b| b.as_slice() == e);
        if index(&vec![0; vars.len()]).is_none() {
            return Err(Error::InvalidRing("monomial basis must contain 1".into()));
        }
        let mut constants = vec![vec![vec![base.zero(); dim]; dim]; dim];
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let prod: Vec<u32> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if let Some(k) = index(&prod) {
                    constants[i][j][k] = base.one();
                }
            }
        }
        let mut unit = vec![base.zero(); dim];
        unit[index(&vec![0; vars.len()]).unwrap()] = base.one();
        let names: Vec<String> = basis.iter().map(|e| monomial_name(vars, e)).collect();
        let gens: Vec<String> = vars.iter().map(|v| v.to_string()).collect();
        let label = format!("{}[{}]/({})", base.name(), gens.join(","), relations_label(vars, basis));
        Self::new(base, label, constants, unit, Some(names))
    }

    /// `F[x]/(x^e)`.
    pub fn truncated_polynomial(base: F, var: &str, e: u32) -> Result<Self> {
        let basis: Vec<Vec<u32>> = (0..e).map(|i| vec![i]).collect();
        Self::monomial_quotient(base, &[var], &basis)
    }

    pub fn base(&self) -> &F {
        &self.data.base
    }

    pub fn dim(&self) -> usize {
        self.data.dim
    }

    fn c(&self, i: usize, j: usize, k: usize) -> &F::Elem {
        let d = self.data.dim;
        &self.data.constants[(i * d + j) * d + k]
    }

    pub fn basis_element(&self, i: usize) -> Vec<F::Elem> {
        let f = &self.data.base;
        let mut v = vec![f.zero(); self.data.dim];
        v[i] = f.one();
        v
    }

    /// Matrix (row-major, `dim x dim`) of multiplication by `a`; column `l`
    /// holds the coordinates of `a * e_l`.
    pub fn mul_operator(&self, a: &[F::Elem]) -> Vec<Vec<F::Elem>> {
        let f = &self.data.base;
        let d = self.data.dim;
        let mut m = vec![vec![f.zero(); d]; d];
        for (i, ai) in a.iter().enumerate() {
            if f.is_zero(ai) {
                continue;
            }
            for l in 0..d {
                for (k, row) in m.iter_mut().enumerate() {
                    let c = self.c(i, l, k);
                    if !f.is_zero(c) {
                        row[l] = f.add(&row[l], &f.mul(ai, c));
                    }
                }
            }
        }
        m
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.data.dim;
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    if self.c(i, j, k) != self.c(j, i, k) {
                        return Err(Error::InvalidRing(format!("multiplication is not commutative at (e{i}, e{j})")));
                    }
                }
            }
        }
        let basis: Vec<_> = (0..d).map(|i| self.basis_element(i)).collect();
        for (i, x) in basis.iter().enumerate() {
            if self.mul(&self.data.unit, x) != *x {
                return Err(Error::InvalidRing(format!("unit does not act as identity on e{i}")));
            }
            for (j, y) in basis.iter().enumerate() {
                let xy = self.mul(x, y);
                for (k, z) in basis.iter().enumerate() {
                    if self.mul(&xy, z) != self.mul(x, &self.mul(y, z)) {
                        return Err(Error::InvalidRing(format!("multiplication is not associative at (e{i}, e{j}, e{k})")));
                    }
                }
            }
        }
        Ok(())
    }
}

fn monomial_name(vars: &[&str], e: &[u32]) -> String {
    let mut s = String::new();
    for (v, k) in vars.iter().zip(e) {
        match k {
            0 => {}
            1 => s.push_str(v),
            _ => s.push_str(&format!("{v}{k}")),
        }
    }
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// Minimal monomial generators of the ideal complementary to `basis`.
fn relations_label(vars: &[&str], basis: &[Vec<u32>]) -> String {
    let r = vars.len();
    let max: Vec<u32> = (0..r).map(|i| basis.iter().map(|b| b[i]).max().unwrap_or(0) + 1).collect();
    let mut out = Vec::new();
    let mut e = vec![0u32; r];
    loop {
        let in_basis = basis.contains(&e);
        let minimal = !in_basis
            && (0..r).all(|i| {
                e[i] == 0 || {
                    let mut f = e.clone();
                    f[i] -= 1;
                    basis.contains(&f)
                }
            });
        if minimal {
            let mut s = String::new();
            for (v, k) in vars.iter().zip(&e) {
                match k {
                    0 => {}
                    1 => s.push_str(v),
                    _ => s.push_str(&format!("{v}^{k}")),
                }
            }
            out.push(s);
        }
        let mut i = 0;
        while i < r {
            e[i] += 1;
            if e[i] <= max[i] {
                break;
            }
            e[i] = 0;
            i += 1;
        }
        if i == r {
            break;
        }
    }
    out.join(",")
}

impl<F: Field> Ring for FiniteAlgebra<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.data.base.zero(); self.data.dim]
    }
    fn one(&self) -> Self::Elem {
        self.data.unit.clone()
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        let f = &self.data.base;
        let c = f.from_i64(n);
        self.data.unit.iter().map(|u| f.mul(u, &c)).collect()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.data.base;
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.data.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.data.base;
        let d = self.data.dim;
        let mut out = vec![f.zero(); d];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = self.c(i, j, k);
                    if !f.is_zero(c) {
                        *o = f.add(o, &f.mul(&xy, c));
                    }
                }
            }
        }
        out
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|x| self.data.base.is_zero(x))
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        crate::linalg::field::rank_dense(&self.data.base, self.mul_operator(a)) == self.data.dim
    }
    fn name(&self) -> String {
        self.data.label.clone()
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        let f = &self.data.base;
        let parts: Vec<String> = a
            .iter()
            .enumerate()
            .filter(|(_, c)| !f.is_zero(c))
            .map(|(i, c)| {
                let name = &self.data.names[i];
                if f.is_one(c) {
                    name.clone()
                } else if name == "1" {
                    f.format_elem(c)
                } else {
                    format!("{}*{}", f.format_elem(c), name)
                }
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        let f = &self.data.base;
        let t = s.trim();
        if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let coords: Vec<F::Elem> = inner.split(',').map(|c| f.parse_elem(c)).collect::<Result<_>>()?;
            if coords.len() != self.data.dim {
                return Err(Error::parse(0, format!("expected {} coordinates", self.data.dim)));
            }
            return Ok(coords);
        }
        let mut acc = self.zero();
        for term in split_terms(t)? {
            let coef = match &term.coef {
                Some(c) => f.parse_elem(c).map_err(|_| Error::parse(term.pos, format!("bad coefficient '{c}'")))?,
                None => f.one(),
            };
            let scalar: Vec<F::Elem> = self.data.unit.iter().map(|u| f.mul(u, &coef)).collect();
            let value = if term.name.is_empty() {
                scalar
            } else {
                let idx = self
                    .data
                    .names
                    .iter()
                    .position(|n| *n == term.name)
                    .ok_or_else(|| Error::parse(term.pos, format!("unknown basis element '{}'", term.name)))?;
                self.mul(&scalar, &self.pow(&self.basis_element(idx), term.exp))
            };
            acc = self.add(&acc, &self.signed(&value, term.negative));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::PrimeField;

    fn f2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn truncated_polynomial_arithmetic() {
        let a = FiniteAlgebra::truncated_polynomial(f2(), "x", 3).unwrap();
        let x = a.parse_elem("x").unwrap();
        assert_eq!(a.nilpotency_index(&x, 10), Some(3));
        assert_eq!(a.parse_elem("x^2").unwrap(), a.mul(&x, &x));
        assert!(a.is_unit(&a.parse_elem("1 + x").unwrap()));
        assert!(!a.is_unit(&x));
        assert_eq!(a.name(), "F2[x]/(x^3)");
    }

    #[test]
    fn two_variable_quotient() {
        let a = FiniteAlgebra::monomial_quotient(f2(), &["x", "y"], &[vec![0, 0], vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!(a.dim(), 3);
        let x = a.parse_elem("x").unwrap();
        let y = a.parse_elem("y").unwrap();
        assert!(a.is_zero(&a.mul(&x, &y)));
        assert!(a.is_zero(&a.mul(&x, &x)));
        assert_eq!(a.name(), "F2[x,y]/(x^2,xy,y^2)");
    }

    #[test]
    fn rejects_noncommutative_constants() {
        let f = f2();
        // e0 = 1, e1 with e0*e1 = e1 but e1*e0 = 0
        let c = vec![
            vec![vec![1, 0], vec![0, 1]],
            vec![vec![0, 0], vec![0, 0]],
        ];
        assert!(FiniteAlgebra::new(f, "bad", c, vec![1, 0], None).is_err());
    }
}
