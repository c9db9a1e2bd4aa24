use num_integer::Integer;

use super::{field_bezout, Bezout, EdRing, Field, Ring};
use crate::error::{Error, Result};

fn parse_residue(s: &str, m: u64) -> Result<u64> {
    let t = s.trim();
    let n: i128 = t
        .parse()
        .map_err(|_| Error::parse(0, format!("expected an integer, found '{t}'")))?;
    Ok(n.rem_euclid(m as i128) as u64)
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// Z/m for m >= 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegersMod {
    m: u64,
}

impl IntegersMod {
    pub fn new(m: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidRing(format!("Z/{m}: modulus must be at least 2")));
        }
        if m > u32::MAX as u64 {
            return Err(Error::InvalidRing(format!("Z/{m}: modulus too large")));
        }
        Ok(IntegersMod { m })
    }

    pub fn modulus(&self) -> u64 {
        self.m
    }
}

impl Ring for IntegersMod {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.m as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.m
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.m - b) % self.m
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.m - a) % self.m
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.m
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        a.gcd(&self.m) == 1
    }
    fn name(&self) -> String {
        format!("Z/{}", self.m)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        parse_residue(s, self.m)
    }
}

impl EdRing for IntegersMod {
    fn bezout(&self, a: &u64, b: &u64) -> Bezout<u64> {
        if *a == 0 && *b == 0 {
            return Bezout { g: 0, s: 1, t: 0, u: 0, v: 1 };
        }
        let (ai, bi) = (*a as i128, *b as i128);
        let e = ai.extended_gcd(&bi);
        let g = e.gcd;
        let m = self.m as i128;
        let r = |x: i128| x.rem_euclid(m) as u64;
        Bezout { g: r(g), s: r(e.x), t: r(e.y), u: r(-(bi / g)), v: r(ai / g) }
    }

    fn divide(&self, a: &u64, b: &u64) -> Option<u64> {
        let g = b.gcd(&self.m);
        if a % g != 0 {
            return None;
        }
        let m2 = self.m / g;
        if m2 == 1 {
            return Some(0);
        }
        let inv = mod_inverse((b / g) % m2, m2)?;
        Some(((a / g) % m2) * inv % m2)
    }

    fn normalizer(&self, a: &u64) -> u64 {
        if *a == 0 {
            return 1;
        }
        let g = a.gcd(&self.m);
        let m2 = self.m / g;
        let w0 = if m2 == 1 { 0 } else { mod_inverse((a / g) % m2, m2).unwrap_or(1) };
        // lift the inverse modulo m/g to a unit modulo m
        (0..g)
            .map(|k| w0 + k * m2)
            .find(|w| w.gcd(&self.m) == 1)
            .unwrap_or(1)
    }

    fn annihilator(&self, a: &u64) -> u64 {
        (self.m / a.gcd(&self.m)) % self.m
    }

    fn size(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            a.gcd(&self.m)
        }
    }
}

/// The prime field F_p.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::InvalidRing(format!("F{p}: {p} is not a supported prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_i64(&self, n: i64) -> u64 {
        (n as i128).rem_euclid(self.p as i128) as u64
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a + self.p - b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn name(&self) -> String {
        format!("F{}", self.p)
    }
    fn format_elem(&self, a: &u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<u64> {
        match s.split_once('/') {
            Some((n, d)) => {
                let n = parse_residue(n, self.p)?;
                let d = parse_residue(d, self.p)?;
                if d == 0 {
                    return Err(Error::parse(0, "division by zero"));
                }
                Ok(self.mul(&n, &self.inv(&d)))
            }
            None => parse_residue(s, self.p),
        }
    }
}

impl EdRing for PrimeField {
    fn bezout(&self, a: &u64, b: &u64) -> Bezout<u64> {
        field_bezout(self, a, b)
    }
    fn divide(&self, a: &u64, b: &u64) -> Option<u64> {
        if *b == 0 {
            (*a == 0).then_some(0)
        } else {
            Some(self.mul(a, &self.inv(b)))
        }
    }
    fn normalizer(&self, a: &u64) -> u64 {
        if *a == 0 {
            1
        } else {
            self.inv(a)
        }
    }
    fn annihilator(&self, a: &u64) -> u64 {
        u64::from(*a == 0)
    }
    fn size(&self, a: &u64) -> u64 {
        u64::from(*a != 0)
    }
}

impl Field for PrimeField {
    fn inv(&self, a: &u64) -> u64 {
        mod_inverse(*a, self.p).expect("inverse of zero")
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_is_unimodular_mod_12() {
        let r = IntegersMod::new(12).unwrap();
        for a in 0..12u64 {
            for b in 0..12u64 {
                let z = r.bezout(&a, &b);
                assert_eq!(r.add(&r.mul(&z.s, &a), &r.mul(&z.t, &b)), z.g);
                assert_eq!(r.add(&r.mul(&z.u, &a), &r.mul(&z.v, &b)), 0);
                let det = r.sub(&r.mul(&z.s, &z.v), &r.mul(&z.t, &z.u));
                assert_eq!(det, 1, "a={a} b={b}");
            }
        }
    }

    #[test]
    fn normalizer_gives_gcd_associate() {
        let r = IntegersMod::new(12).unwrap();
        for a in 1..12u64 {
            let w = r.normalizer(&a);
            assert!(r.is_unit(&w));
            assert_eq!(r.mul(&a, &w), a.gcd(&12));
        }
    }

    #[test]
    fn divide_and_annihilator() {
        let r = IntegersMod::new(8).unwrap();
        assert_eq!(r.divide(&4, &2).map(|q| r.mul(&q, &2)), Some(4));
        assert_eq!(r.divide(&2, &4), None);
        assert_eq!(r.annihilator(&2), 4);
        assert_eq!(r.annihilator(&0), 1);
        assert_eq!(r.annihilator(&3), 0);
    }

    #[test]
    fn prime_check() {
        assert!(PrimeField::new(5).is_ok());
        assert!(PrimeField::new(6).is_err());
        assert!(IntegersMod::new(1).is_err());
    }
}
