use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact field arithmetic shared by the polynomial, sparse-operator and
/// nullspace code. Equality is structural and exact.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
{
    /// Multiplicative inverse, `None` for zero.
    fn inverse(&self) -> Option<Self>;

    fn from_i64(v: i64) -> Self;
}

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(v.into())
    }
}

/// Additive structure used for coefficients of [`BiPoly`](super::BiPoly),
/// which may be scalars or operators.
pub trait Additive: Clone + Debug {
    fn is_zero_value(&self) -> bool;
    fn add_assign_ref(&mut self, other: &Self);
    fn negated(&self) -> Self;
}

impl<T: Field> Additive for T {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }

    fn add_assign_ref(&mut self, other: &Self) {
        *self = self.clone() + other.clone();
    }

    fn negated(&self) -> Self {
        -self.clone()
    }
}
