//! Highest-weight vectors, weight functions and their ratios, the polynomial
//! conditions the weights obey, and the Drinfeld finiteness test.
//!
//! Weight functions are stored as `λ_a(−u)`, the eigen-polynomial of
//! `L_{−a,a}(u)` on the highest-weight vector. With `L(u) = u^s ε + …` its
//! leading coefficient is `ε_{−a}`. Components are the raw coefficients:
//! `λ_a^{[k]}` multiplies `u^{s−k}`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{nullspace, rational_roots};
use crate::lops::{fuse_so3_from_gl2, Gl2LOperator, LOperator};
use crate::structure::{CaseDescriptor, Family};
use crate::verify::{check_rll, check_rll_gl2, check_symmetric_constraints, CheckReport};
use crate::{Error, Op, Poly, Result, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightFunction {
    pub case: CaseDescriptor,
    pub order: usize,
    /// `λ_a(−u)` keyed by the signed index `a`.
    pub at_minus_u: BTreeMap<i64, Poly>,
}

impl WeightFunction {
    /// `λ_a(−u)`
    pub fn get(&self, a: i64) -> &Poly {
        &self.at_minus_u[&a]
    }

    /// `λ_a(u)`
    pub fn lambda(&self, a: i64) -> Poly {
        self.get(a).affine(&Scalar::int(-1), &Scalar::zero())
    }

    /// `λ_a^{[k]}`, the coefficient of `u^{s−k}` in `λ_a(−u)`.
    pub fn component(&self, a: i64, k: usize) -> Scalar {
        if k > self.order {
            Scalar::zero()
        } else {
            self.get(a).coeff(self.order - k)
        }
    }

    fn positive(&self) -> impl Iterator<Item = i64> {
        1..=self.case.m as i64
    }

    /// `λ_i^{[1]}` for `i = 1..m`.
    pub fn lambda1(&self) -> Vec<Scalar> {
        self.positive().map(|i| self.component(i, 1)).collect()
    }

    /// `λ̃_i^{[2]} = ½(λ_i^{[2]} + ελ_{−i}^{[2]})` for `i = 1..m`.
    pub fn lambda_tilde(&self) -> Vec<Scalar> {
        let eps = self.case.eps_scalar();
        let half = Scalar::frac(1, 2);
        self.positive()
            .map(|i| (self.component(i, 2) + eps.clone() * self.component(-i, 2)) * half.clone())
            .collect()
    }

    /// `λ̄_i^{[2]} = ½(λ_i^{[2]} − ελ_{−i}^{[2]})` for `i = 1..m`.
    pub fn lambda_bar(&self) -> Vec<Scalar> {
        let eps = self.case.eps_scalar();
        let half = Scalar::frac(1, 2);
        self.positive()
            .map(|i| (self.component(i, 2) - eps.clone() * self.component(-i, 2)) * half.clone())
            .collect()
    }

    /// Quadratic weights assembled from their independent components:
    /// `λ_i(−u) = ε_{−i}u² + λ_i u + λ̃_i + λ̄_i` and
    /// `λ_{−i}(−u) = u² − ελ_i u + ελ̃_i − ελ̄_i`, `λ₀(−u) = u² + λ̃₀`.
    pub fn from_components(
        case: &CaseDescriptor,
        lam: &[Scalar],
        tilde: &[Scalar],
        bar: &[Scalar],
        tilde0: Scalar,
    ) -> Result<Self> {
        let m = case.m;
        if lam.len() != m || tilde.len() != m || bar.len() != m {
            return Err(Error::Domain(format!(
                "expected {m} components per sequence"
            )));
        }
        let eps = case.eps_scalar();
        let mut at_minus_u = BTreeMap::new();
        for i in 0..m {
            let a = i as i64 + 1;
            at_minus_u.insert(
                a,
                Poly::new(vec![
                    tilde[i].clone() + bar[i].clone(),
                    lam[i].clone(),
                    Scalar::int(case.eps_of(-a)),
                ]),
            );
            at_minus_u.insert(
                -a,
                Poly::new(vec![
                    eps.clone() * (tilde[i].clone() - bar[i].clone()),
                    -eps.clone() * lam[i].clone(),
                    Scalar::one(),
                ]),
            );
        }
        if case.has_zero() {
            at_minus_u.insert(0, Poly::new(vec![tilde0, Scalar::zero(), Scalar::one()]));
        }
        Ok(WeightFunction {
            case: case.clone(),
            order: 2,
            at_minus_u,
        })
    }
}

/// A rational function `num/den`, kept both as computed and reduced (common
/// factors removed, denominator monic).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub num: Poly,
    pub den: Poly,
    pub raw_num: Poly,
    pub raw_den: Poly,
}

impl Ratio {
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Domain(
                "ratio with identically zero denominator".into(),
            ));
        }
        let (n, d) = if num.is_zero() {
            (Poly::zero(), Poly::one())
        } else {
            let g = num.gcd(&den);
            let (n, _) = num.div_rem(&g);
            let (d, _) = den.div_rem(&g);
            let lead = d.leading().expect("nonzero").inv().expect("nonzero");
            (n.scale(&lead), d.scale(&lead))
        };
        Ok(Ratio {
            num: n,
            den: d,
            raw_num: num,
            raw_den: den,
        })
    }

    pub fn one() -> Self {
        Ratio::new(Poly::one(), Poly::one()).expect("nonzero denominator")
    }

    pub fn is_one(&self) -> bool {
        self.num == self.den
    }

    /// `f(a·u + b)`
    pub fn affine(&self, a: &Scalar, b: &Scalar) -> Self {
        Ratio::new(self.num.affine(a, b), self.den.affine(a, b)).expect("a ≠ 0 keeps den nonzero")
    }

    pub fn mul(&self, o: &Ratio) -> Self {
        Ratio::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero denominators")
    }

    /// Equality as rational functions.
    pub fn same_function(&self, o: &Ratio) -> bool {
        self.num == o.num && self.den == o.den
    }
}

impl std::fmt::Display for Ratio {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightReport {
    /// Nonzero components of the highest-weight vector, by basis label.
    pub vector: Vec<(String, Scalar)>,
    pub weights: WeightFunction,
    pub lambda1: Vec<Scalar>,
    pub lambda_tilde: Vec<Scalar>,
    pub lambda_bar: Vec<Scalar>,
    pub k: Option<Scalar>,
    pub ratios: Vec<Ratio>,
    pub verdicts: Vec<CheckReport>,
}

impl WeightReport {
    pub fn all_pass(&self) -> bool {
        self.verdicts.iter().all(|r| r.pass)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrinfeldEntry {
    /// Simple-root index `i = 1..m`.
    pub index: usize,
    pub delta: Scalar,
    pub ratio: Ratio,
    pub exists: bool,
    /// Roots of `P_i` with multiplicities, ascending.
    pub roots: Vec<(Scalar, usize)>,
    pub witness: Option<String>,
    /// `P(u+Δ)/P(u)` reproduces `f_i` exactly (only set when `exists`).
    pub round_trip: Option<bool>,
}

impl DrinfeldEntry {
    pub fn polynomial(&self) -> Poly {
        let roots: Vec<Scalar> = self
            .roots
            .iter()
            .flat_map(|(r, k)| std::iter::repeat_n(r.clone(), *k))
            .collect();
        Poly::from_roots(&roots)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrinfeldResult {
    pub entries: Vec<DrinfeldEntry>,
    pub exists: bool,
}

// ---------------------------------------------------------------------------
// highest-weight vectors
// ---------------------------------------------------------------------------

fn apply(op: &Op, v: &[Scalar]) -> Vec<Scalar> {
    op.apply(v)
}

/// `w = c·v` for some scalar `c`, or `None`.
fn eigenvalue(w: &[Scalar], v: &[Scalar]) -> Option<Scalar> {
    let p = v.iter().position(|x| !x.is_zero())?;
    let c = w[p].clone() / v[p].clone();
    w.iter()
        .zip(v)
        .all(|(x, y)| *x == c.clone() * y.clone())
        .then_some(c)
}

/// Entries that must annihilate a highest-weight vector: the basic ones
/// (`L_{−i,j}, i<j`; `L_{−i,−j}`; `L_{−i,0}`) and, with `dependent`, the
/// implied `L_{j,−i}, i<j` and `L_{0,−i}`.
fn raising_entries(case: &CaseDescriptor, dependent: bool) -> Vec<(i64, i64)> {
    let m = case.m as i64;
    let mut out = Vec::new();
    for i in 1..=m {
        for j in 1..=m {
            if i < j {
                out.push((-i, j));
            }
            out.push((-i, -j));
        }
        if case.has_zero() {
            out.push((-i, 0));
        }
    }
    if dependent {
        for i in 1..=m {
            for j in i + 1..=m {
                out.push((j, -i));
            }
            if case.has_zero() {
                out.push((0, -i));
            }
        }
    }
    out
}

/// Coefficient-exact highest-weight conditions on `v`, including the
/// dependent ones and the eigenvector conditions for every `L_{−a,a}`.
pub fn verify_highest_weight(l: &LOperator, v: &[Scalar]) -> CheckReport {
    const NAME: &str = "highest_weight";
    if v.len() != l.dim() || v.iter().all(Zero::is_zero) {
        return CheckReport::failed(NAME, vec![], "vector is zero or has the wrong length");
    }
    let case = &l.case;
    let top = l.order();
    let first = raising_entries(case, true)
        .into_par_iter()
        .find_map_first(|(a, b)| {
            (0..top).find_map(|k| {
                let w = apply(l.coeffs[k].at(a, b), v);
                (!w.iter().all(Zero::is_zero)).then(|| {
                    (
                        vec![a, b],
                        format!("u^{k} coefficient does not annihilate the vector"),
                    )
                })
            })
        });
    if let Some((idx, res)) = first {
        return CheckReport::failed(NAME, idx, res);
    }
    let diag = case.indices().into_par_iter().find_map_first(|a| {
        (0..top).find_map(|k| {
            let w = apply(l.coeffs[k].at(-a, a), v);
            eigenvalue(&w, v).is_none().then(|| {
                (
                    vec![-a, a],
                    format!("u^{k} coefficient is not diagonal on the vector"),
                )
            })
        })
    });
    match diag {
        Some((idx, res)) => CheckReport::failed(NAME, idx, res),
        None => CheckReport::new(NAME, None),
    }
}

/// Basis of the joint kernel of every coefficient of the basic raising
/// entries, restricted to vectors with headroom for one L-factor.
pub fn find_highest_weight(l: &LOperator) -> Vec<Vec<Scalar>> {
    let cols = l.safe_columns(1);
    let rows: Vec<usize> = (0..l.dim()).collect();
    let blocks: Vec<Op> = raising_entries(&l.case, false)
        .into_iter()
        .flat_map(|(a, b)| (0..l.order()).map(move |k| (a, b, k)))
        .map(|(a, b, k)| l.coeffs[k].at(a, b).restrict(&rows, &cols))
        .filter(|op| !op.is_zero())
        .collect();
    nullspace(&blocks, cols.len())
        .into_iter()
        .map(|w| {
            let mut v = vec![Scalar::zero(); l.dim()];
            for (c, x) in cols.iter().zip(w) {
                v[*c] = x;
            }
            v
        })
        .collect()
}

/// Eigen-polynomials `λ_a(−u)` of `L_{−a,a}(u)` on `v`.
pub fn weight_functions(l: &LOperator, v: &[Scalar]) -> Result<WeightFunction> {
    let mut at_minus_u = BTreeMap::new();
    for a in l.case.indices() {
        let mut coeffs = Vec::with_capacity(l.order() + 1);
        for (k, c) in l.coeffs.iter().enumerate() {
            let w = apply(c.at(-a, a), v);
            let e = eigenvalue(&w, v).ok_or_else(|| {
                Error::Domain(format!(
                    "L_{{{},{a}}} u^{k} coefficient is not diagonal on the vector",
                    -a
                ))
            })?;
            coeffs.push(e);
        }
        at_minus_u.insert(a, Poly::new(coeffs));
    }
    Ok(WeightFunction {
        case: l.case.clone(),
        order: l.order(),
        at_minus_u,
    })
}

// ---------------------------------------------------------------------------
// ratios and Λ
// ---------------------------------------------------------------------------

/// `f_i = λ_i/λ_{i+1}` for `i < m`; `f_m = λ_m/λ_{1−m}` (so(2m)),
/// `−λ_m/λ_{−m}` (sp(2m)), `λ_m/λ₀` (so(2m+1)), as functions of `u`.
pub fn ratios(wf: &WeightFunction) -> Result<Vec<Ratio>> {
    let case = &wf.case;
    let m = case.m as i64;
    let mut out = Vec::with_capacity(case.m);
    for i in 1..m {
        out.push(Ratio::new(wf.lambda(i), wf.lambda(i + 1))?);
    }
    let last = match case.family {
        Family::SoEven if m == 1 => {
            return Err(Error::Unsupported(
                "so(2) has no simple root ratio f_m".into(),
            ))
        }
        Family::SoEven => Ratio::new(wf.lambda(m), wf.lambda(1 - m))?,
        Family::Sp => Ratio::new(-&wf.lambda(m), wf.lambda(-m))?,
        Family::SoOdd => Ratio::new(wf.lambda(m), wf.lambda(0))?,
    };
    out.push(last);
    Ok(out)
}

/// `Λ_i(u, α, γ) = λ_i(−u+α)·λ_{−i}(−u+γ)`.
pub fn lambda_big(wf: &WeightFunction, i: i64, alpha: &Scalar, gamma: &Scalar) -> Poly {
    wf.get(i).shift(&-alpha.clone()) * wf.get(-i).shift(&-gamma.clone())
}

fn equality_report(name: &str, idx: Vec<i64>, lhs: &Poly, rhs: &Poly) -> CheckReport {
    if lhs == rhs {
        CheckReport::new(name, None)
    } else {
        CheckReport::failed(name, idx, format!("{} ≠ {}", lhs, rhs))
    }
}

fn zero_report(name: &str, idx: Vec<i64>, value: Scalar) -> CheckReport {
    if value.is_zero() {
        CheckReport::new(name, None)
    } else {
        CheckReport::failed(name, idx, format!("evaluates to {value}"))
    }
}

/// `Λ_i(u, β−i+1, 1) = Λ_{i+1}(u, β−i+1, 1)`, and for so(2m+1)
/// `Λ_m(u, ½, 1) = Λ₀(u, ½, 1)`.
pub fn check_lambda_identities(wf: &WeightFunction) -> Vec<CheckReport> {
    let case = &wf.case;
    let m = case.m as i64;
    let one = Scalar::one();
    let mut out = Vec::new();
    for i in 1..m {
        let alpha = case.beta.clone() - Scalar::int(i - 1);
        out.push(equality_report(
            &format!("lambda_identity_{i}"),
            vec![i, i + 1],
            &lambda_big(wf, i, &alpha, &one),
            &lambda_big(wf, i + 1, &alpha, &one),
        ));
    }
    if case.has_zero() {
        let half = Scalar::frac(1, 2);
        out.push(equality_report(
            "lambda_identity_m0",
            vec![m, 0],
            &lambda_big(wf, m, &half, &one),
            &lambda_big(wf, 0, &half, &one),
        ));
    }
    out
}

/// Two-factor conditions `(λ_{i+1}−λ_i)(λ_{i+1}+λ_i−ε(β−i)) = 0` and, for
/// so(2m+1), `λ_m(λ_m+½) = 0`.
pub fn check_linear_conditions(lam: &[Scalar], case: &CaseDescriptor) -> Vec<CheckReport> {
    let eps = case.eps_scalar();
    let m = lam.len();
    let mut out = Vec::new();
    for i in 1..m {
        let (a, b) = (&lam[i - 1], &lam[i]);
        let second =
            b.clone() + a.clone() - eps.clone() * (case.beta.clone() - Scalar::int(i as i64));
        out.push(zero_report(
            &format!("two_factor_{i}"),
            vec![i as i64, i as i64 + 1],
            (b.clone() - a.clone()) * second,
        ));
    }
    if case.has_zero() && m > 0 {
        let l = &lam[m - 1];
        out.push(zero_report(
            "two_factor_m0",
            vec![m as i64, 0],
            l.clone() * (l.clone() + Scalar::frac(1, 2)),
        ));
    }
    out
}

/// Quadratic-evaluation conditions, in order: the Λ identities, the λ̄
/// relations, and (when every `λ̄_i` vanishes) the three-factor relations.
pub fn check_quadratic_conditions(wf: &WeightFunction, k: &Scalar) -> Vec<CheckReport> {
    let case = &wf.case;
    let eps = case.eps_scalar();
    let beta = &case.beta;
    let lam = wf.lambda1();
    let bar = wf.lambda_bar();
    let m = case.m;
    let half = Scalar::frac(1, 2);
    let mut out = check_lambda_identities(wf);

    for i in 1..m {
        let shift = eps.clone() * (beta.clone() - Scalar::int(i as i64));
        let lhs = bar[i - 1].clone() * (lam[i - 1].clone() - shift.clone());
        let rhs = bar[i].clone() * (lam[i].clone() - shift);
        out.push(zero_report(
            &format!("lambda_bar_{i}"),
            vec![i as i64, i as i64 + 1],
            lhs - rhs,
        ));
    }
    if case.has_zero() {
        out.push(zero_report(
            "lambda_bar_m0",
            vec![m as i64, 0],
            bar[m - 1].clone() * (lam[m - 1].clone() + half.clone()),
        ));
    }

    if bar.iter().all(Zero::is_zero) {
        let mut prefix = Scalar::zero();
        for i in 1..m {
            let (a, b) = (lam[i - 1].clone(), lam[i].clone());
            let bi = beta.clone() - Scalar::int(i as i64);
            let f1 = a.clone() - b.clone();
            let f2 = a.clone() + b.clone() - Scalar::int(2) * eps.clone() * bi.clone();
            let f3 = half.clone() * (a.clone() * a.clone() + b.clone() * b.clone())
                - eps.clone() * (bi.clone() + Scalar::one()) * (a.clone() + b.clone())
                + eps.clone() * b.clone()
                + k.clone()
                - eps.clone() * prefix.clone()
                + half.clone() * bi.clone() * bi;
            out.push(zero_report(
                &format!("three_factor_{i}"),
                vec![i as i64, i as i64 + 1],
                f1 * f2 * f3,
            ));
            prefix = prefix + a;
        }
        if case.has_zero() {
            // the sum runs over j < m; this is what Λ_m = Λ₀ forces
            let l = lam[m - 1].clone();
            let below: Scalar = lam[..m - 1]
                .iter()
                .fold(Scalar::zero(), |s, x| s + x.clone());
            let f3 = half.clone() * l.clone() * (l.clone() - Scalar::one()) - below
                + k.clone()
                + Scalar::frac(1, 8);
            out.push(zero_report(
                "three_factor_m0",
                vec![m as i64, 0],
                l.clone() * (l + Scalar::one()) * f3,
            ));
        }
    }
    out
}

/// `2ελ̃_i = λ_i(λ_i − ε(β−i+1)) − εΣ_{j<i}λ_j + k` for `i = 1..m`.
pub fn check_lambda_tilde(wf: &WeightFunction, k: &Scalar) -> CheckReport {
    let case = &wf.case;
    let eps = case.eps_scalar();
    let lam = wf.lambda1();
    let tilde = wf.lambda_tilde();
    let mut prefix = Scalar::zero();
    for i in 1..=case.m {
        let l = lam[i - 1].clone();
        let expected = l.clone()
            * (l.clone() - eps.clone() * (case.beta.clone() - Scalar::int(i as i64 - 1)))
            - eps.clone() * prefix.clone()
            + k.clone();
        let got = Scalar::int(2) * eps.clone() * tilde[i - 1].clone();
        if got != expected {
            return CheckReport::failed(
                "lambda_tilde",
                vec![i as i64],
                format!("2ελ̃ = {got}, formula gives {expected}"),
            );
        }
        prefix = prefix + l;
    }
    CheckReport::new("lambda_tilde", None)
}

/// Degrees, leading coefficients `ε_{−a}`, and `λ_i^{[1]} = −ελ_{−i}^{[1]}`,
/// `λ₀^{[1]} = 0`.
pub fn check_parity(wf: &WeightFunction) -> CheckReport {
    const NAME: &str = "weight_parity";
    let case = &wf.case;
    for a in case.indices() {
        let p = wf.get(a);
        if p.degree() != Some(wf.order)
            || *p.leading().expect("nonzero") != Scalar::int(case.eps_of(-a))
        {
            return CheckReport::failed(NAME, vec![a], format!("λ_a(−u) = {p} is not normalized"));
        }
    }
    let eps = case.eps_scalar();
    for i in 1..=case.m as i64 {
        if wf.component(i, 1) != -eps.clone() * wf.component(-i, 1) {
            return CheckReport::failed(NAME, vec![i, -i], "λ_i^[1] ≠ −ελ_{−i}^[1]");
        }
    }
    if case.has_zero() && !wf.component(0, 1).is_zero() {
        return CheckReport::failed(NAME, vec![0], "λ_0^[1] ≠ 0");
    }
    CheckReport::new(NAME, None)
}

/// Highest-weight consequences of `W = 0`: `(λ_i−1)λ_j = 0` for `i<j` and
/// `(1−ε)(λ_i−1)λ_i = 0`.
pub fn check_w_weights(wf: &WeightFunction) -> CheckReport {
    let lam = wf.lambda1();
    let one = Scalar::one();
    let one_minus_eps = one.clone() - wf.case.eps_scalar();
    for i in 0..lam.len() {
        let r = one_minus_eps.clone() * (lam[i].clone() - one.clone()) * lam[i].clone();
        if !r.is_zero() {
            return CheckReport::failed(
                "w_weights",
                vec![i as i64 + 1],
                format!("(1−ε)(λ_i−1)λ_i = {r}"),
            );
        }
        for j in i + 1..lam.len() {
            let r = (lam[i].clone() - one.clone()) * lam[j].clone();
            if !r.is_zero() {
                return CheckReport::failed(
                    "w_weights",
                    vec![i as i64 + 1, j as i64 + 1],
                    format!("(λ_i−1)λ_j = {r}"),
                );
            }
        }
    }
    CheckReport::new("w_weights", None)
}

/// Full weight analysis of `l` on `v`. For quadratic operators `k` is taken
/// from the symmetric constraints when not supplied.
pub fn weight_report(l: &LOperator, v: &[Scalar], k: Option<Scalar>) -> Result<WeightReport> {
    let hw = verify_highest_weight(l, v);
    if !hw.pass {
        return Err(Error::Domain(format!(
            "not a highest-weight vector: {}",
            hw.counterexample
                .as_ref()
                .map(|c| c.residual.as_str())
                .unwrap_or("")
        )));
    }
    let wf = weight_functions(l, v)?;
    let k = match (k, l.order()) {
        (Some(k), _) => Some(k),
        (None, 2) => check_symmetric_constraints(l)
            .scalar("c23")
            .map(|s| s.parse())
            .transpose()?,
        _ => None,
    };
    let mut verdicts = vec![hw, check_parity(&wf)];
    match l.order() {
        1 => {
            let lam: Vec<Scalar> = (1..=l.case.m as i64).map(|i| wf.component(i, 1)).collect();
            verdicts.extend(check_lambda_identities(&wf));
            verdicts.extend(check_linear_conditions(&lam, &l.case));
        }
        2 => match &k {
            Some(k) => {
                verdicts.extend(check_quadratic_conditions(&wf, k));
                verdicts.push(check_lambda_tilde(&wf, k));
            }
            None => {
                verdicts.extend(check_lambda_identities(&wf));
                verdicts.push(CheckReport::failed(
                    "central_value",
                    vec![],
                    "k could not be extracted",
                ));
            }
        },
        _ => verdicts.extend(check_lambda_identities(&wf)),
    }
    let ratios = ratios(&wf)?;
    let vector = v
        .iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (l.space.labels[i].clone(), x.clone()))
        .collect();
    Ok(WeightReport {
        vector,
        lambda1: wf.lambda1(),
        lambda_tilde: wf.lambda_tilde(),
        lambda_bar: wf.lambda_bar(),
        weights: wf,
        k,
        ratios,
        verdicts,
    })
}

/// Weight reports for the designated highest-weight vector, or for every
/// vector of the joint kernel when none is designated.
pub fn analyze(l: &LOperator) -> Result<Vec<WeightReport>> {
    let vectors = match l.hw_hint {
        Some(h) => vec![l.space.basis_vector(h)],
        None => find_highest_weight(l),
    };
    if vectors.is_empty() {
        return Err(Error::Domain(
            "no highest-weight vector in the space".into(),
        ));
    }
    vectors.iter().map(|v| weight_report(l, v, None)).collect()
}

// ---------------------------------------------------------------------------
// Drinfeld polynomials
// ---------------------------------------------------------------------------

/// Shift of the `i`-th ratio: 1 for `i < m`, and 1 / ½ / 2 at `i = m` for
/// so(2m) / so(2m+1) / sp(2m).
pub fn drinfeld_shift(case: &CaseDescriptor, i: usize) -> Scalar {
    if i < case.m {
        return Scalar::one();
    }
    match case.family {
        Family::SoEven => Scalar::one(),
        Family::SoOdd => Scalar::frac(1, 2),
        Family::Sp => Scalar::int(2),
    }
}

fn rational(x: &Scalar) -> BigRational {
    x.to_rational().expect("rational roots only")
}

/// Decides whether a monic `P` with `f(u) = P(u+Δ)/P(u)` exists.
pub fn drinfeld_single(f: &Ratio, delta: &Scalar, index: usize) -> Result<DrinfeldEntry> {
    let fail = |witness: String| DrinfeldEntry {
        index,
        delta: delta.clone(),
        ratio: f.clone(),
        exists: false,
        roots: Vec::new(),
        witness: Some(witness),
        round_trip: None,
    };
    if f.num.is_zero() {
        return Ok(fail("ratio vanishes identically".into()));
    }
    let split_num = rational_roots(&f.num)?;
    let split_den = rational_roots(&f.den)?;
    if split_num.remainder.degree() != Some(0) || split_den.remainder.degree() != Some(0) {
        return Err(Error::Domain(format!("ratio {f} has irrational roots")));
    }
    if f.num.leading() != f.den.leading() {
        return Ok(fail("f(u) does not tend to 1 as u → ∞".into()));
    }
    // g(x) = mult_num(x) − mult_den(x)
    let mut g: BTreeMap<BigRational, i64> = BTreeMap::new();
    for (r, k) in &split_num.roots {
        *g.entry(rational(r)).or_default() += *k as i64;
    }
    for (r, k) in &split_den.roots {
        *g.entry(rational(r)).or_default() -= *k as i64;
    }
    g.retain(|_, v| *v != 0);

    let d = rational(delta);
    let mut classes: BTreeMap<BigRational, Vec<BigRational>> = BTreeMap::new();
    for x in g.keys() {
        let rep = x - (x / &d).floor() * &d;
        classes.entry(rep).or_default().push(x.clone());
    }
    let mut roots: BTreeMap<BigRational, usize> = BTreeMap::new();
    for (rep, pts) in &classes {
        // pts are ascending (BTreeMap key order); P's multiplicity walks
        // upward as m(x+Δ) = m(x) + g(x), starting from 0 below the chain
        let (lo, hi) = (pts[0].clone(), pts[pts.len() - 1].clone());
        let mut x = lo;
        let mut mult: i64 = 0;
        while x <= hi {
            mult += g.get(&x).copied().unwrap_or(0);
            x = &x + &d;
            if mult < 0 {
                return Ok(fail(format!(
                    "chain through {rep} mod {delta}: multiplicity at {} is {mult}",
                    Scalar::from_rational(x)
                )));
            }
            if mult > 0 {
                roots.insert(x.clone(), mult as usize);
            }
        }
        if mult != 0 {
            return Ok(fail(format!(
                "chain through {rep} mod {delta} does not terminate (multiplicity {mult} past its last point)"
            )));
        }
    }
    let roots: Vec<(Scalar, usize)> = roots
        .into_iter()
        .map(|(r, k)| (Scalar::from_rational(r), k))
        .collect();
    let mut entry = DrinfeldEntry {
        index,
        delta: delta.clone(),
        ratio: f.clone(),
        exists: true,
        roots,
        witness: None,
        round_trip: None,
    };
    let p = entry.polynomial();
    let back = Ratio::new(p.shift(delta), p)?;
    entry.round_trip = Some(back.same_function(f));
    Ok(entry)
}

/// Drinfeld test for the ratio sequence `f₁..f_m` of `case`.
pub fn drinfeld_test(fs: &[Ratio], case: &CaseDescriptor) -> Result<DrinfeldResult> {
    let entries = fs
        .iter()
        .enumerate()
        .map(|(i, f)| drinfeld_single(f, &drinfeld_shift(case, i + 1), i + 1))
        .collect::<Result<Vec<_>>>()?;
    let exists = entries
        .iter()
        .all(|e| e.exists && e.round_trip == Some(true));
    Ok(DrinfeldResult { entries, exists })
}

// ---------------------------------------------------------------------------
// gl(2) reductions
// ---------------------------------------------------------------------------

/// `λ^{gl}_α(−u)`, the eigen-polynomials of `L_{αα}(u)` on the
/// highest-weight vector, after checking `L₁₂(u)` annihilates it.
pub fn gl2_weights(l: &Gl2LOperator) -> Result<[Poly; 2]> {
    let v = l.space.basis_vector(l.hw);
    for c in l.entry(1, 2) {
        if !apply(&c, &v).iter().all(Zero::is_zero) {
            return Err(Error::Domain(
                "L_12 does not annihilate the gl(2) highest-weight vector".into(),
            ));
        }
    }
    let diag = |a: usize| -> Result<Poly> {
        l.entry(a, a)
            .iter()
            .map(|c| {
                eigenvalue(&apply(c, &v), &v)
                    .ok_or_else(|| Error::Domain(format!("L_{a}{a} is not diagonal on the vector")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Poly::new)
    };
    Ok([diag(1)?, diag(2)?])
}

/// `f(u) = λ^{gl}_1(u)/λ^{gl}_2(u)`.
pub fn gl2_ratio(l: &Gl2LOperator) -> Result<Ratio> {
    let [a, b] = gl2_weights(l)?;
    let flip = |p: &Poly| p.affine(&Scalar::int(-1), &Scalar::zero());
    Ratio::new(flip(&a), flip(&b))
}

/// The sp(2) entries `(L_{−1,1}, L_{−1,−1}, L_{1,1}, L_{1,−1})` at `2u`,
/// in gl(2) row-major order.
pub fn sp2_as_gl2(l: &LOperator) -> Result<[Vec<Op>; 4]> {
    if l.case.family != Family::Sp || l.case.m != 1 {
        return Err(Error::Domain(format!(
            "expected sp(2), got {}",
            l.case.name()
        )));
    }
    let at_2u = |a: i64, b: i64| -> Vec<Op> {
        let mut p = Scalar::one();
        l.entry(a, b)
            .into_iter()
            .map(|c| {
                let out = c.scale(&p);
                p = p.clone() * Scalar::int(2);
                out
            })
            .collect()
    };
    Ok([at_2u(-1, 1), at_2u(-1, -1), at_2u(1, 1), at_2u(1, -1)])
}

/// sp(2) generators at `2u` satisfy the gl(2) RLL relation with
/// `R(u) = u + P`.
pub fn check_sp2_gl2_embedding(l: &LOperator) -> Result<CheckReport> {
    let entries = sp2_as_gl2(l)?;
    Ok(check_rll_gl2(
        "sp2_gl2_embedding",
        &entries,
        &l.safe_columns(2),
        1,
    ))
}

/// Fusion checks: the fused so(3) operator obeys RLL (with `qdet` cleared)
/// and its ratio satisfies `f₁(u) = f(2u)`.
pub fn check_fusion(chain: &Gl2LOperator) -> Result<Vec<CheckReport>> {
    let fused = fuse_so3_from_gl2(chain)?;
    let rll = check_rll(&fused.lop);
    let f = gl2_ratio(chain)?;
    let v = fused.lop.space.basis_vector(fused.hw);
    let hw = verify_highest_weight(&fused.lop, &v);
    if !hw.pass {
        return Ok(vec![rll, hw]);
    }
    let f1 = ratios(&weight_functions(&fused.lop, &v)?)?.remove(0);
    let expected = f.affine(&Scalar::int(2), &Scalar::zero());
    let ratio = if f1.same_function(&expected) {
        CheckReport::new("fusion_ratio", None)
    } else {
        CheckReport::failed(
            "fusion_ratio",
            vec![1],
            format!("f₁(u) = {f1}, f(2u) = {expected}"),
        )
    }
    .with_scalar("f1", &f1)
    .with_scalar("f", &f);
    Ok(vec![rll, hw, ratio])
}
