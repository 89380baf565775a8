//! Rational roots of polynomials with rational coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::UniPoly;
use super::scalar::Scalar;
use crate::error::Error;

/// Rational roots with multiplicities (ascending by root) and the monic-free
/// remainder that has no further rational roots.
#[derive(Clone, Debug, PartialEq)]
pub struct RootSplit {
    pub roots: Vec<(Scalar, usize)>,
    pub remainder: UniPoly<Scalar>,
}

/// Splits off every rational root of `p`. Errors on the zero polynomial or on
/// coefficients with a √2 component.
pub fn rational_roots(p: &UniPoly<Scalar>) -> Result<RootSplit, Error> {
    if p.is_zero() {
        return Err(Error::Domain(
            "rational_roots of the zero polynomial".into(),
        ));
    }
    let mut coeffs = Vec::with_capacity(p.coeffs().len());
    for c in p.coeffs() {
        coeffs.push(
            c.to_rational()
                .ok_or_else(|| Error::Domain(format!("coefficient {c} is not rational")))?,
        );
    }
    // clear denominators to an integer polynomial
    let lcm = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();

    let mut rem = p.clone();
    let mut roots = Vec::new();
    // x = 0 first: strip powers of u
    let low = ints.iter().take_while(|c| c.is_zero()).count();
    if low > 0 {
        roots.push((Scalar::int(0), low));
        rem = UniPoly::new(rem.coeffs()[low..].to_vec());
    }
    let ints = &ints[low..];
    if ints.len() > 1 {
        let a0 = ints[0].abs();
        let an = ints[ints.len() - 1].abs();
        let mut candidates: Vec<BigRational> = Vec::new();
        for pn in divisors(&a0) {
            for qd in divisors(&an) {
                let r = BigRational::new(pn.clone(), qd.clone());
                candidates.push(r.clone());
                candidates.push(-r);
            }
        }
        candidates.sort();
        candidates.dedup();
        for r in candidates {
            let rs = Scalar::from_rational(r);
            let lin = UniPoly::linear_root(rs.clone());
            let mut mult = 0;
            while rem.degree().unwrap_or(0) > 0 && rem.eval(&rs).is_zero() {
                rem = rem.div_rem(&lin).0;
                mult += 1;
            }
            if mult > 0 {
                roots.push((rs, mult));
            }
        }
    }
    roots.sort_by(|a, b| a.0.rational_part().cmp(b.0.rational_part()));
    Ok(RootSplit {
        roots,
        remainder: rem,
    })
}

/// Positive divisors by trial division; the inputs here are tiny.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let q = n / &d;
            if q != d {
                out.push(q);
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(n: i64, d: i64) -> Scalar {
        Scalar::frac(n, d)
    }

    #[test]
    fn repeated_half_root() {
        let p = UniPoly::from_roots(&[s(1, 1), s(-1, 2), s(-1, 2)]);
        let split = rational_roots(&p).unwrap();
        assert_eq!(split.roots, vec![(s(-1, 2), 2), (s(1, 1), 1)]);
        assert_eq!(split.remainder, UniPoly::one());
    }

    #[test]
    fn irreducible_quadratic() {
        let p = UniPoly::new(vec![s(1, 1), s(0, 1), s(1, 1)]);
        let split = rational_roots(&p).unwrap();
        assert!(split.roots.is_empty());
        assert_eq!(split.remainder, p);
    }

    #[test]
    fn heisenberg_polynomial_at_ell_one() {
        // (u−ℓ)(u−ℓ+1)(u+ℓ−1) at ℓ = 1
        let p = UniPoly::from_roots(&[s(1, 1), s(0, 1), s(0, 1)]);
        let split = rational_roots(&p).unwrap();
        assert_eq!(split.roots, vec![(s(0, 1), 2), (s(1, 1), 1)]);
    }

    #[test]
    fn radical_coefficients_are_rejected() {
        let p = UniPoly::new(vec![Scalar::sqrt2(), s(1, 1)]);
        assert!(rational_roots(&p).is_err());
        assert!(rational_roots(&UniPoly::zero()).is_err());
    }
}
