use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{Bezout, EdRing, Ring};
use crate::error::{Error, Result};

/// The integers, with arbitrary-precision elements.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn from_i64(&self, n: i64) -> BigInt {
        BigInt::from(n)
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigInt) -> bool {
        a.abs().is_one()
    }
    fn name(&self) -> String {
        "Z".into()
    }
    fn format_elem(&self, a: &BigInt) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<BigInt> {
        let t = s.trim();
        t.parse::<BigInt>()
            .map_err(|_| Error::parse(0, format!("expected an integer, found '{t}'")))
    }
}

impl EdRing for Integers {
    fn bezout(&self, a: &BigInt, b: &BigInt) -> Bezout<BigInt> {
        if a.is_zero() && b.is_zero() {
            return Bezout {
                g: BigInt::zero(),
                s: BigInt::one(),
                t: BigInt::zero(),
                u: BigInt::zero(),
                v: BigInt::one(),
            };
        }
        let e = a.extended_gcd(b);
        let g = e.gcd;
        Bezout {
            u: -(b / &g),
            v: a / &g,
            s: e.x,
            t: e.y,
            g,
        }
    }

    fn divide(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return a.is_zero().then(BigInt::zero);
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }

    fn normalizer(&self, a: &BigInt) -> BigInt {
        if a.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        }
    }

    fn annihilator(&self, a: &BigInt) -> BigInt {
        if a.is_zero() {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    }

    fn size(&self, a: &BigInt) -> u64 {
        a.abs().to_u64().unwrap_or(u64::MAX)
    }
}
