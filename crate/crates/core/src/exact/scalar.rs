//! Elements of the quadratic field ℚ(√2), stored as `rat + rad·√2`.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::field::Field;
use crate::error::Error;

#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    rat: BigRational,
    rad: BigRational,
}

impl Scalar {
    pub fn new(rat: BigRational, rad: BigRational) -> Self {
        Scalar { rat, rad }
    }

    pub fn from_rational(rat: BigRational) -> Self {
        Scalar {
            rat,
            rad: BigRational::zero(),
        }
    }

    pub fn int(v: i64) -> Self {
        Self::from_rational(BigRational::from_integer(v.into()))
    }

    pub fn frac(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `a + b·√2` with `a = an/ad`, `b = bn/bd`.
    pub fn with_sqrt2(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Scalar {
            rat: BigRational::new(an.into(), ad.into()),
            rad: BigRational::new(bn.into(), bd.into()),
        }
    }

    pub fn sqrt2() -> Self {
        Scalar {
            rat: BigRational::zero(),
            rad: BigRational::one(),
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rat
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.rad
    }

    pub fn is_rational(&self) -> bool {
        self.rad.is_zero()
    }

    /// The rational value when the √2 component vanishes.
    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational().then(|| self.rat.clone())
    }

    /// Field norm `a² − 2b²`; zero exactly when the element is zero.
    pub fn norm(&self) -> BigRational {
        &self.rat * &self.rat - BigRational::from_integer(2.into()) * &self.rad * &self.rad
    }

    pub fn inv(&self) -> Option<Scalar> {
        let n = self.norm();
        if n.is_zero() {
            return None;
        }
        Some(Scalar {
            rat: &self.rat / &n,
            rad: -&self.rad / &n,
        })
    }

    pub fn pow(&self, e: u32) -> Scalar {
        let mut acc = Scalar::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// True for nonnegative integers (radical part zero).
    pub fn as_nonnegative_integer(&self) -> Option<u64> {
        let r = self.to_rational()?;
        if !r.is_integer() || r.is_negative() {
            return None;
        }
        r.to_integer().try_into().ok()
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, r: &BigRational) -> fmt::Result {
    if r.is_integer() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rad.is_zero() {
            return write_rational(f, &self.rat);
        }
        if self.rat.is_zero() {
            write_rational(f, &self.rad)?;
        } else {
            write_rational(f, &self.rat)?;
            if self.rad.is_negative() {
                f.write_str("-")?;
                write_rational(f, &-self.rad.clone())?;
            } else {
                f.write_str("+")?;
                write_rational(f, &self.rad)?;
            }
        }
        f.write_str("*s2")
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    let bad = || Error::Parse(format!("invalid rational `{s}`"));
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Accepts `a/b`, `a`, `a/b+c/d*s2`, `a/b-c/d*s2` and `c/d*s2`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let Some(body) = s.strip_suffix("*s2") else {
            return Ok(Scalar::from_rational(parse_rational(&s)?));
        };
        // split at the last sign that is not the leading one
        let split = body
            .char_indices()
            .skip(1)
            .filter(|&(_, c)| c == '+' || c == '-')
            .map(|(i, _)| i)
            .last();
        match split {
            Some(i) => {
                let rat = parse_rational(&body[..i])?;
                let rad_str = body[i..].strip_prefix('+').unwrap_or(&body[i..]);
                Ok(Scalar::new(rat, parse_rational(rad_str)?))
            }
            None => Ok(Scalar::new(BigRational::zero(), parse_rational(body)?)),
        }
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }

    fn is_zero(&self) -> bool {
        self.rat.is_zero() && self.rad.is_zero()
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::int(1)
    }
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar::int(v)
    }
}

impl From<BigRational> for Scalar {
    fn from(v: BigRational) -> Self {
        Scalar::from_rational(v)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        let rad = if self.rad.is_zero() {
            o.rad.clone()
        } else if o.rad.is_zero() {
            self.rad.clone()
        } else {
            &self.rad + &o.rad
        };
        Scalar {
            rat: &self.rat + &o.rat,
            rad,
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            rat: &self.rat - &o.rat,
            rad: &self.rad - &o.rad,
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.rad.is_zero() && o.rad.is_zero() {
            return Scalar::from_rational(&self.rat * &o.rat);
        }
        let two = BigRational::from_integer(2.into());
        Scalar {
            rat: &self.rat * &o.rat + two * &self.rad * &o.rad,
            rad: &self.rat * &o.rad + &self.rad * &o.rat,
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &Scalar) -> Scalar {
        self * &o.inv().expect("division by zero in ℚ(√2)")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            rat: -&self.rat,
            rad: -&self.rad,
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar {
                (&self).$m(&o)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar {
                (&self).$m(o)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.rat += &o.rat;
        if !o.rad.is_zero() {
            self.rad += &o.rad;
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, o: &Scalar) {
        self.rat -= &o.rat;
        if !o.rad.is_zero() {
            self.rad -= &o.rad;
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

impl Field for Scalar {
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }

    fn from_i64(v: i64) -> Self {
        Scalar::int(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_scalar() -> impl Strategy<Value = Scalar> {
        (-20i64..20, 1i64..6, -20i64..20, 1i64..6)
            .prop_map(|(a, b, c, d)| Scalar::with_sqrt2(a, b, c, d))
    }

    #[test]
    fn sqrt2_squares_to_two() {
        assert_eq!(&Scalar::sqrt2() * &Scalar::sqrt2(), Scalar::int(2));
    }

    #[test]
    fn inverse_of_unit() {
        // (1 + √2)(−1 + √2) = 1
        let x = Scalar::with_sqrt2(1, 1, 1, 1);
        assert_eq!(x.inv().unwrap(), Scalar::with_sqrt2(-1, 1, 1, 1));
        assert!(Scalar::zero().inv().is_none());
    }

    #[test]
    fn string_forms() {
        for s in ["3/2", "-1/2+3/4*s2", "-1*s2", "5", "0", "2-1/2*s2"] {
            let x: Scalar = s.parse().unwrap();
            assert_eq!(x.to_string(), s);
        }
        assert_eq!("7".parse::<Scalar>().unwrap(), Scalar::int(7));
        assert_eq!(
            "1/2*s2".parse::<Scalar>().unwrap(),
            Scalar::with_sqrt2(0, 1, 1, 2)
        );
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
        }

        #[test]
        fn inverse_exists_iff_nonzero_norm(a in arb_scalar()) {
            match a.inv() {
                Some(i) => prop_assert_eq!(&a * &i, Scalar::one()),
                None => prop_assert!(a.norm().is_zero()),
            }
        }

        #[test]
        fn display_parse_roundtrip(a in arb_scalar()) {
            prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
        }
    }
}
