use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{field_bezout, Bezout, EdRing, Field, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_unit(&self, a: &BigRational) -> bool {
        !a.is_zero()
    }
    fn name(&self) -> String {
        "Q".into()
    }
    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<BigRational> {
        let t = s.trim();
        let bad = || Error::parse(0, format!("expected a rational number, found '{t}'"));
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::parse(0, "division by zero"));
                }
                Ok(BigRational::new(n, d))
            }
            None => Ok(BigRational::from_integer(t.parse().map_err(|_| bad())?)),
        }
    }
}

impl EdRing for Rationals {
    fn bezout(&self, a: &BigRational, b: &BigRational) -> Bezout<BigRational> {
        field_bezout(self, a, b)
    }
    fn divide(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        if b.is_zero() {
            a.is_zero().then(BigRational::zero)
        } else {
            Some(a / b)
        }
    }
    fn normalizer(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            a.recip()
        }
    }
    fn annihilator(&self, a: &BigRational) -> BigRational {
        if a.is_zero() {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    }
    fn size(&self, a: &BigRational) -> u64 {
        u64::from(!a.is_zero())
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> BigRational {
        a.recip()
    }
    fn characteristic(&self) -> u64 {
        0
    }
}
