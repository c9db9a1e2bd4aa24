use super::parse::split_terms;
use super::{Bezout, EdRing, Field, Ring};
use crate::error::{Error, Result};

/// Univariate polynomials over a field. Elements are coefficient vectors,
/// lowest degree first, with no trailing zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct UniPoly<F: Field> {
    base: F,
    var: String,
}

impl<F: Field> UniPoly<F> {
    pub fn new(base: F, var: impl Into<String>) -> Self {
        UniPoly { base, var: var.into() }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    fn trim(&self, mut c: Vec<F::Elem>) -> Vec<F::Elem> {
        while c.last().is_some_and(|x| self.base.is_zero(x)) {
            c.pop();
        }
        c
    }

    pub fn degree(&self, a: &[F::Elem]) -> Option<usize> {
        a.len().checked_sub(1)
    }

    /// `x^n`.
    pub fn monomial(&self, n: usize) -> Vec<F::Elem> {
        let mut c = vec![self.base.zero(); n + 1];
        c[n] = self.base.one();
        c
    }

    pub fn div_rem(&self, a: &[F::Elem], b: &[F::Elem]) -> (Vec<F::Elem>, Vec<F::Elem>) {
        let f = &self.base;
        let db = b.len().checked_sub(1).expect("division by zero polynomial");
        let lead_inv = f.inv(&b[db]);
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![f.zero(); r.len() - db];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + db], &lead_inv);
            if f.is_zero(&c) {
                continue;
            }
            for (i, bi) in b.iter().enumerate() {
                r[k + i] = f.sub(&r[k + i], &f.mul(&c, bi));
            }
            q[k] = c;
        }
        (self.trim(q), self.trim(r))
    }
}

impl<F: Field> Ring for UniPoly<F> {
    type Elem = Vec<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Vec::new()
    }
    fn one(&self) -> Self::Elem {
        vec![self.base.one()]
    }
    fn from_i64(&self, n: i64) -> Self::Elem {
        self.trim(vec![self.base.from_i64(n)])
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let f = &self.base;
        let n = a.len().max(b.len());
        let c = (0..n)
            .map(|i| match (a.get(i), b.get(i)) {
                (Some(x), Some(y)) => f.add(x, y),
                (Some(x), None) | (None, Some(x)) => x.clone(),
                (None, None) => f.zero(),
            })
            .collect();
        self.trim(c)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let f = &self.base;
        let mut c = vec![f.zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                c[i + j] = f.add(&c[i + j], &f.mul(x, y));
            }
        }
        self.trim(c)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_empty()
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        a.len() == 1
    }
    fn name(&self) -> String {
        format!("{}[{}]", self.base.name(), self.var)
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        if a.is_empty() {
            return "0".into();
        }
        let f = &self.base;
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate().rev() {
            if f.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => self.var.clone(),
                _ => format!("{}^{}", self.var, i),
            };
            let cs = f.format_elem(c);
            let cs = if cs.contains('/') { format!("({cs})") } else { cs };
            parts.push(if mono.is_empty() {
                cs
            } else if f.is_one(c) {
                mono
            } else {
                format!("{cs}{mono}")
            });
        }
        parts.join(" + ")
    }
    fn parse_elem(&self, s: &str) -> Result<Self::Elem> {
        let mut acc = self.zero();
        for term in split_terms(s)? {
            if !term.name.is_empty() && term.name != self.var {
                return Err(Error::parse(
                    term.pos,
                    format!("unknown variable '{}' (ring variable is '{}')", term.name, self.var),
                ));
            }
            let coef = match &term.coef {
                Some(c) => self.base.parse_elem(c).map_err(|_| Error::parse(term.pos, format!("bad coefficient '{c}'")))?,
                None => self.base.one(),
            };
            let deg = if term.name.is_empty() { 0 } else { term.exp as usize };
            let mut mono = self.monomial(deg);
            mono[deg] = self.base.signed(&coef, term.negative);
            acc = self.add(&acc, &self.trim(mono));
        }
        Ok(acc)
    }
}

impl<F: Field> EdRing for UniPoly<F> {
    fn bezout(&self, a: &Self::Elem, b: &Self::Elem) -> Bezout<Self::Elem> {
        if a.is_empty() && b.is_empty() {
            return Bezout { g: self.zero(), s: self.one(), t: self.zero(), u: self.zero(), v: self.one() };
        }
        // extended Euclid: invariants r0 = s0 a + t0 b, r1 = s1 a + t1 b
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), self.zero());
        let (mut t0, mut t1) = (self.zero(), self.one());
        while !r1.is_empty() {
            let (q, r) = self.div_rem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        let u = self.neg(&self.div_rem(b, &r0).0);
        let v = self.div_rem(a, &r0).0;
        Bezout { g: r0, s: s0, t: t0, u, v }
    }

    fn divide(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        if b.is_empty() {
            return a.is_empty().then(Vec::new);
        }
        let (q, r) = self.div_rem(a, b);
        r.is_empty().then_some(q)
    }

    fn normalizer(&self, a: &Self::Elem) -> Self::Elem {
        match a.last() {
            Some(lead) => vec![self.base.inv(lead)],
            None => self.one(),
        }
    }

    fn annihilator(&self, a: &Self::Elem) -> Self::Elem {
        if a.is_empty() {
            self.one()
        } else {
            self.zero()
        }
    }

    fn size(&self, a: &Self::Elem) -> u64 {
        a.len() as u64
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::{PrimeField, Rationals};

    #[test]
    fn parse_and_format_round_trip() {
        let r = UniPoly::new(PrimeField::new(2).unwrap(), "t");
        let p = r.parse_elem("t^2 + t + 1").unwrap();
        assert_eq!(p, vec![1, 1, 1]);
        assert_eq!(r.format_elem(&p), "t^2 + t + 1");
        assert_eq!(r.parse_elem("t + t").unwrap(), r.zero());
        assert!(r.parse_elem("x").is_err());
    }

    #[test]
    fn bezout_over_q() {
        let r = UniPoly::new(Rationals, "x");
        let a = r.parse_elem("x^2 - 1").unwrap();
        let b = r.parse_elem("x^2 + 2x + 1").unwrap();
        let z = r.bezout(&a, &b);
        assert_eq!(r.add(&r.mul(&z.s, &a), &r.mul(&z.t, &b)), z.g);
        assert_eq!(r.canonical(&z.g), r.parse_elem("x + 1").unwrap());
        assert!(r.is_zero(&r.add(&r.mul(&z.u, &a), &r.mul(&z.v, &b))));
        let det = r.sub(&r.mul(&z.s, &z.v), &r.mul(&z.t, &z.u));
        assert!(r.is_one(&det));
    }
}
