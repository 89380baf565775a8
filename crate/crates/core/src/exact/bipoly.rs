//! Sparse bivariate polynomials in `(u, v)`. Coefficients may be scalars or
//! whole operators, which is how both sides of the exchange relations are
//! expanded.

use std::collections::BTreeMap;

use super::field::{Additive, Field};
use super::poly::UniPoly;

/// Map `(deg_u, deg_v) → coefficient`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq)]
pub struct BiPoly<C> {
    terms: BTreeMap<(u32, u32), C>,
}

impl<C: Additive> Default for BiPoly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Additive> BiPoly<C> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(du: u32, dv: u32, c: C) -> Self {
        let mut p = Self::zero();
        p.add_term(du, dv, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &C)> {
        self.terms.iter()
    }

    pub fn get(&self, du: u32, dv: u32) -> Option<&C> {
        self.terms.get(&(du, dv))
    }

    pub fn add_term(&mut self, du: u32, dv: u32, c: &C) {
        if c.is_zero_value() {
            return;
        }
        match self.terms.get_mut(&(du, dv)) {
            Some(x) => {
                x.add_assign_ref(c);
                if x.is_zero_value() {
                    self.terms.remove(&(du, dv));
                }
            }
            None => {
                self.terms.insert((du, dv), c.clone());
            }
        }
    }

    pub fn add_assign(&mut self, o: &Self) {
        for ((du, dv), c) in &o.terms {
            self.add_term(*du, *dv, c);
        }
    }

    pub fn sub_assign(&mut self, o: &Self) {
        for ((du, dv), c) in &o.terms {
            self.add_term(*du, *dv, &c.negated());
        }
    }

    /// Generic product given a coefficient multiplication.
    pub fn mul_with<B: Additive, D: Additive>(
        &self,
        o: &BiPoly<B>,
        f: impl Fn(&C, &B) -> D,
    ) -> BiPoly<D> {
        let mut out = BiPoly::zero();
        for ((a1, b1), x) in &self.terms {
            for ((a2, b2), y) in &o.terms {
                out.add_term(a1 + a2, b1 + b2, &f(x, y));
            }
        }
        out
    }

    pub fn map<D: Additive>(&self, f: impl Fn(&C) -> D) -> BiPoly<D> {
        let mut out = BiPoly::zero();
        for ((du, dv), c) in &self.terms {
            out.add_term(*du, *dv, &f(c));
        }
        out
    }
}

impl<T: Field> BiPoly<T> {
    /// Embeds `p(u)` (or `p(v)` when `in_v`).
    pub fn from_uni(p: &UniPoly<T>, in_v: bool) -> Self {
        let mut out = Self::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            let k = k as u32;
            if in_v {
                out.add_term(0, k, c);
            } else {
                out.add_term(k, 0, c);
            }
        }
        out
    }

    /// `p(u − v)`
    pub fn of_difference(p: &UniPoly<T>) -> Self {
        let d = BiPoly::monomial(1, 0, T::one()).add(&BiPoly::monomial(0, 1, -T::one()));
        let mut out = Self::zero();
        let mut power = BiPoly::monomial(0, 0, T::one());
        for c in p.coeffs() {
            out.add_assign(&power.map(|x| x.clone() * c.clone()));
            power = power.mul(&d);
        }
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(o);
        out
    }

    pub fn mul(&self, o: &Self) -> Self {
        self.mul_with(o, |a, b| a.clone() * b.clone())
    }

    pub fn eval(&self, u: &T, v: &T) -> T {
        self.terms.iter().fold(T::zero(), |acc, ((du, dv), c)| {
            acc + c.clone() * pow(u, *du) * pow(v, *dv)
        })
    }

    /// Substitutes `v = x`, leaving a polynomial in `u`.
    pub fn substitute_v(&self, x: &T) -> UniPoly<T> {
        let deg = self.terms.keys().map(|(du, _)| *du).max().unwrap_or(0) as usize;
        let mut coeffs = vec![T::zero(); deg + 1];
        for ((du, dv), c) in &self.terms {
            coeffs[*du as usize] = coeffs[*du as usize].clone() + c.clone() * pow(x, *dv);
        }
        UniPoly::new(coeffs)
    }
}

fn pow<T: Field>(x: &T, e: u32) -> T {
    (0..e).fold(T::one(), |acc, _| acc * x.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::Scalar;

    type B = BiPoly<Scalar>;

    #[test]
    fn difference_expansion() {
        // (u − v)^2 = u^2 − 2uv + v^2
        let p = UniPoly::monomial(Scalar::int(1), 2);
        let b = B::of_difference(&p);
        assert_eq!(b.get(2, 0), Some(&Scalar::int(1)));
        assert_eq!(b.get(1, 1), Some(&Scalar::int(-2)));
        assert_eq!(b.get(0, 2), Some(&Scalar::int(1)));
        assert_eq!(b.eval(&Scalar::int(5), &Scalar::int(2)), Scalar::int(9));
    }

    #[test]
    fn substitution_gives_univariate() {
        let b = B::monomial(1, 1, Scalar::int(3)).add(&B::monomial(0, 2, Scalar::int(1)));
        // 3uv + v^2 at v = 2 → 6u + 4
        let p = b.substitute_v(&Scalar::int(2));
        assert_eq!(p, UniPoly::new(vec![Scalar::int(4), Scalar::int(6)]));
    }

    #[test]
    fn cancellation_removes_terms() {
        let mut b = B::monomial(1, 0, Scalar::int(2));
        b.sub_assign(&B::monomial(1, 0, Scalar::int(2)));
        assert!(b.is_zero());
    }
}
