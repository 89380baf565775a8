//! Dense univariate polynomials in the spectral parameter `u`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::field::Field;

/// Coefficients in ascending degree; trailing zeros are always stripped, so
/// the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly<T> {
    coeffs: Vec<T>,
}

impl<T: Field> UniPoly<T> {
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(T::one())
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `u`.
    pub fn u() -> Self {
        Self::new(vec![T::zero(), T::one()])
    }

    /// `c·u^k`
    pub fn monomial(c: T, k: usize) -> Self {
        let mut coeffs = vec![T::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs)
    }

    /// `u − r`
    pub fn linear_root(r: T) -> Self {
        Self::new(vec![-r, T::one()])
    }

    /// `∏ (u − r)` over the given roots.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = &'a T>) -> Self
    where
        T: 'a,
    {
        roots
            .into_iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_root(r.clone()))
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> T {
        self.coeffs.get(k).cloned().unwrap_or_else(T::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` stands for the degree −∞ of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        self.coeffs
            .iter()
            .rev()
            .fold(T::zero(), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn scale(&self, s: &T) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.clone() * s.clone()).collect())
    }

    /// `p(q(u))`
    pub fn compose(&self, q: &Self) -> Self {
        self.coeffs.iter().rev().fold(Self::zero(), |acc, c| {
            &(&acc * q) + &Self::constant(c.clone())
        })
    }

    /// `p(a·u + b)`
    pub fn affine(&self, a: &T, b: &T) -> Self {
        self.compose(&Self::new(vec![b.clone(), a.clone()]))
    }

    /// `p(u + s)`
    pub fn shift(&self, s: &T) -> Self {
        self.affine(&T::one(), s)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c.clone() * T::from_i64(k as i64))
                .collect(),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        let lead_inv = d.coeffs[dd].inverse().expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![T::zero(); self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let c = rem[rem.len() - 1].clone() * lead_inv.clone();
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] = rem[k + i].clone() - c.clone() * dc.clone();
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(|c| c.is_zero()) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(l) => self.scale(&l.inverse().expect("nonzero leading coefficient")),
            None => Self::zero(),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn map<S: Field>(&self, f: impl Fn(&T) -> S) -> UniPoly<S> {
        UniPoly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<T: Field> Default for UniPoly<T> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<T: Field> Add for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn add(self, o: &UniPoly<T>) -> UniPoly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<T: Field> Sub for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn sub(self, o: &UniPoly<T>) -> UniPoly<T> {
        let n = self.coeffs.len().max(o.coeffs.len());
        UniPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<T: Field> Mul for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn mul(self, o: &UniPoly<T>) -> UniPoly<T> {
        if self.is_zero() || o.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![T::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        UniPoly::new(out)
    }
}

impl<T: Field> Neg for &UniPoly<T> {
    type Output = UniPoly<T>;
    fn neg(self) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(|c| -c.clone()).collect())
    }
}

macro_rules! forward_owned_poly {
    ($tr:ident, $m:ident) => {
        impl<T: Field> $tr for UniPoly<T> {
            type Output = UniPoly<T>;
            fn $m(self, o: UniPoly<T>) -> UniPoly<T> {
                (&self).$m(&o)
            }
        }
    };
}

forward_owned_poly!(Add, add);
forward_owned_poly!(Sub, sub);
forward_owned_poly!(Mul, mul);

impl<T: Field + fmt::Display> fmt::Display for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "({c})*u")?,
                _ => write!(f, "({c})*u^{k}")?,
            }
        }
        Ok(())
    }
}

impl<T: Field> fmt::Debug for UniPoly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;
    use proptest::prelude::*;

    type P = UniPoly<Scalar>;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::frac(n, d)
    }

    fn arb_poly() -> impl Strategy<Value = P> {
        proptest::collection::vec((-9i64..9, 1i64..4), 0..5)
            .prop_map(|v| P::new(v.into_iter().map(|(n, d)| s(n, d)).collect()))
    }

    #[test]
    fn eval_examples() {
        let p = P::new(vec![s(-1, 1), s(0, 1), s(1, 1)]);
        assert_eq!(p.eval(&Scalar::int(3)), Scalar::int(8));
        assert_eq!(
            P::zero().eval(&Scalar::with_sqrt2(5, 1, 3, 1)),
            Scalar::int(0)
        );
        let q = P::new(vec![Scalar::with_sqrt2(0, 1, 1, 2), Scalar::int(1)]);
        assert_eq!(q.eval(&Scalar::sqrt2()), Scalar::with_sqrt2(0, 1, 3, 2));
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(P::zero().degree(), None);
        assert_eq!(P::new(vec![s(0, 1), s(0, 1)]).degree(), None);
        assert_eq!(P::u().degree(), Some(1));
    }

    #[test]
    fn shift_and_compose() {
        // (u+1)^2 at u -> u - 1 gives u^2
        let p = &P::linear_root(s(-1, 1)) * &P::linear_root(s(-1, 1));
        assert_eq!(p.shift(&s(-1, 1)), P::monomial(s(1, 1), 2));
        assert_eq!(p.affine(&s(2, 1), &s(0, 1)).eval(&s(1, 2)), s(4, 1));
    }

    #[test]
    fn gcd_of_products() {
        let a = P::from_roots(&[s(1, 1), s(2, 1), s(-1, 2)]);
        let b = P::from_roots(&[s(2, 1), s(-1, 2), s(7, 1)]);
        assert_eq!(a.gcd(&b), P::from_roots(&[s(2, 1), s(-1, 2)]));
    }

    proptest! {
        #[test]
        fn degree_is_additive(p in arb_poly(), q in arb_poly()) {
            prop_assume!(!p.is_zero() && !q.is_zero());
            prop_assert_eq!((&p * &q).degree(), Some(p.degree().unwrap() + q.degree().unwrap()));
        }

        #[test]
        fn division_identity(p in arb_poly(), d in arb_poly()) {
            prop_assume!(!d.is_zero());
            let (q, r) = p.div_rem(&d);
            prop_assert_eq!(&(&q * &d) + &r, p);
            prop_assert!(r.degree() < d.degree());
        }

        #[test]
        fn eval_is_a_homomorphism(p in arb_poly(), q in arb_poly(), x in -5i64..5) {
            let x = Scalar::int(x);
            prop_assert_eq!((&p * &q).eval(&x), p.eval(&x) * q.eval(&x));
            prop_assert_eq!(p.compose(&q).eval(&x), p.eval(&q.eval(&x)));
        }
    }
}
