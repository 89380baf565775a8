//! Case descriptors, the invariant metric, the `I`, `P`, `K` tensors, the
//! fundamental R-matrix and the Yang-Baxter check.
//!
//! The fundamental basis is ordered `−m, …, −1, (0), 1, …, m`, and tensor
//! products are flattened row-major in that order.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{BiPoly, UniPoly};
use crate::{Error, Op, Poly, Result, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    SoEven,
    SoOdd,
    Sp,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::SoEven => "so_even",
            Family::SoOdd => "so_odd",
            Family::Sp => "sp",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseDescriptor {
    pub family: Family,
    pub m: usize,
    pub n: usize,
    /// `+1` orthogonal, `−1` symplectic.
    pub eps: i64,
    pub beta: Scalar,
}

/// Builds the descriptor for `so(2m)`, `so(2m+1)` or `sp(2m)`.
pub fn make_case(family: Family, m: usize) -> Result<CaseDescriptor> {
    if m == 0 {
        return Err(Error::Domain("rank m must be at least 1".into()));
    }
    let (n, eps) = match family {
        Family::SoEven => (2 * m, 1),
        Family::SoOdd => (2 * m + 1, 1),
        Family::Sp => (2 * m, -1),
    };
    Ok(CaseDescriptor {
        family,
        m,
        n,
        eps,
        beta: Scalar::frac(n as i64, 2) - Scalar::int(eps),
    })
}

impl CaseDescriptor {
    pub fn name(&self) -> String {
        match self.family {
            Family::SoEven | Family::SoOdd => format!("so({})", self.n),
            Family::Sp => format!("sp({})", self.n),
        }
    }

    pub fn eps_scalar(&self) -> Scalar {
        Scalar::int(self.eps)
    }

    pub fn has_zero(&self) -> bool {
        self.family == Family::SoOdd
    }

    /// Indices in basis order.
    pub fn indices(&self) -> Vec<i64> {
        let m = self.m as i64;
        let mut out: Vec<i64> = (1..=m).rev().map(|i| -i).collect();
        if self.has_zero() {
            out.push(0);
        }
        out.extend(1..=m);
        out
    }

    /// Basis position of index `a`.
    pub fn pos(&self, a: i64) -> usize {
        let m = self.m as i64;
        assert!(
            a.abs() <= m && (a != 0 || self.has_zero()),
            "index {a} out of range"
        );
        if a < 0 || self.has_zero() {
            (a + m) as usize
        } else {
            (a + m - 1) as usize
        }
    }

    /// `ε_a`: `1` for positive indices and `0`, `ε` for negative ones.
    pub fn eps_of(&self, a: i64) -> i64 {
        if a < 0 {
            self.eps
        } else {
            1
        }
    }

    /// Lowered metric `ε_{ab} = ε_a δ_{a,−b}`.
    pub fn metric(&self, a: i64, b: i64) -> i64 {
        if a == -b {
            self.eps_of(a)
        } else {
            0
        }
    }

    /// Inverse metric `ε^{ab} = ε_b δ_{a,−b}`.
    pub fn metric_inv(&self, a: i64, b: i64) -> i64 {
        if a == -b {
            self.eps_of(b)
        } else {
            0
        }
    }

    /// The metric as an `n×n` matrix in basis order.
    pub fn metric_matrix(&self) -> Op {
        let idx = self.indices();
        Op::from_triplets(
            self.n,
            self.n,
            idx.iter()
                .map(|&a| (self.pos(a), self.pos(-a), Scalar::int(self.metric(a, -a)))),
        )
    }

    pub fn metric_inv_matrix(&self) -> Op {
        let idx = self.indices();
        Op::from_triplets(
            self.n,
            self.n,
            idx.iter().map(|&a| {
                (
                    self.pos(a),
                    self.pos(-a),
                    Scalar::int(self.metric_inv(a, -a)),
                )
            }),
        )
    }
}

// ---------------------------------------------------------------------------
// I, P, K on V ⊗ V, rows (a1,a2), columns (b1,b2)
// ---------------------------------------------------------------------------

pub fn tensor_i(case: &CaseDescriptor) -> Op {
    Op::identity(case.n * case.n)
}

pub fn tensor_p(case: &CaseDescriptor) -> Op {
    permutation(case.n)
}

pub fn permutation(n: usize) -> Op {
    Op::from_triplets(
        n * n,
        n * n,
        (0..n).flat_map(|i| (0..n).map(move |j| (i * n + j, j * n + i, Scalar::int(1)))),
    )
}

/// `K^{a1a2}_{b1b2} = ε^{a1a2} ε_{b1b2}`.
pub fn tensor_k(case: &CaseDescriptor) -> Op {
    let n = case.n;
    let idx = case.indices();
    let mut out = Op::zero(n * n, n * n);
    for &a in &idx {
        for &b in &idx {
            let c = case.metric_inv(a, -a) * case.metric(b, -b);
            out.add_entry(
                case.pos(a) * n + case.pos(-a),
                case.pos(b) * n + case.pos(-b),
                Scalar::int(c),
            );
        }
    }
    out
}

/// R-matrix as a polynomial in `u` with operator coefficients.
#[derive(Clone, Debug)]
pub struct RMatrix {
    pub n: usize,
    /// Ascending powers of `u`.
    pub coeffs: Vec<Op>,
}

impl RMatrix {
    /// Entry `(a1a2, b1b2)` given basis positions.
    pub fn entry(&self, row: usize, col: usize) -> Poly {
        UniPoly::new(self.coeffs.iter().map(|c| c.get(row, col)).collect())
    }

    pub fn eval(&self, u: &Scalar) -> Op {
        let d = self.n * self.n;
        self.coeffs
            .iter()
            .rev()
            .fold(Op::zero(d, d), |acc, c| acc.scale(u).add(c))
    }

    /// `R(u − v)` as a bivariate polynomial.
    pub fn of_difference(&self) -> BiPoly<Op> {
        let mut out = BiPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            let p = BiPoly::of_difference(&UniPoly::monomial(Scalar::int(1), k));
            out.add_assign(&p.map(|s| c.scale(s)));
        }
        out
    }
}

/// `R(u) = u(u+β)I + (u+β)P − εuK`.
pub fn fundamental_r(case: &CaseDescriptor) -> RMatrix {
    r_with_k_sign(case, -case.eps)
}

/// Same shape with the `K` coefficient `k_sign·u`; `k_sign = +ε` is the
/// negative control.
pub fn r_with_k_sign(case: &CaseDescriptor, k_sign: i64) -> RMatrix {
    let (i, p, k) = (tensor_i(case), tensor_p(case), tensor_k(case));
    let beta = &case.beta;
    RMatrix {
        n: case.n,
        coeffs: vec![
            p.scale(beta),
            i.scale(beta).add(&p).add(&k.scale(&Scalar::int(k_sign))),
            i,
        ],
    }
}

/// Yang's matrix `uI + P` of `gl(n)`.
pub fn yang_r(n: usize) -> RMatrix {
    let p = permutation(n);
    RMatrix {
        n,
        coeffs: vec![p, Op::identity(n * n)],
    }
}

// ---------------------------------------------------------------------------
// Yang-Baxter
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct YbeReport {
    pub case: String,
    pub pass: bool,
    /// First violating entry `(row, col)` of the `n³×n³` residual.
    pub first_violation: Option<(usize, usize, String)>,
}

/// Checks `R12(u−v)R13(u)R23(v) = R23(v)R13(u)R12(u−v)` coefficient by
/// coefficient in `(u, v)`.
pub fn check_ybe(case: &CaseDescriptor) -> YbeReport {
    check_ybe_for(&fundamental_r(case), &case.name())
}

pub fn check_ybe_for(r: &RMatrix, label: &str) -> YbeReport {
    let n = r.n;
    let id = Op::identity(n);
    let p23 = id.kron(&permutation(n));
    let lift12 = |o: &Op| o.kron(&id);
    let lift23 = |o: &Op| id.kron(o);
    let lift13 = |o: &Op| p23.mul(&o.kron(&id)).mul(&p23);

    let r12 = r.of_difference().map(lift12);
    let mut r13 = BiPoly::zero();
    let mut r23 = BiPoly::zero();
    for (k, c) in r.coeffs.iter().enumerate() {
        r13.add_term(k as u32, 0, &lift13(c));
        r23.add_term(0, k as u32, &lift23(c));
    }
    let prod3 = |a: &BiPoly<Op>, b: &BiPoly<Op>, c: &BiPoly<Op>| {
        let ab = a.mul_with(b, |x, y| x.mul(y));
        ab.mul_with(c, |x, y| x.mul(y))
    };
    let (lhs, rhs) = rayon::join(|| prod3(&r12, &r13, &r23), || prod3(&r23, &r13, &r12));
    let mut diff = lhs;
    diff.sub_assign(&rhs);
    let first_violation = first_entry(&diff);
    YbeReport {
        case: label.to_string(),
        pass: first_violation.is_none(),
        first_violation,
    }
}

/// Lexicographically first `(row, col)` with a nonzero residual polynomial.
pub(crate) fn first_entry(diff: &BiPoly<Op>) -> Option<(usize, usize, String)> {
    let mut best: Option<(usize, usize)> = None;
    for (_, op) in diff.terms() {
        if let Some((r, c, _)) = op.entries().next() {
            if best.is_none_or(|b| (r, c) < b) {
                best = Some((r, c));
            }
        }
    }
    let (r, c) = best?;
    let poly = diff.map(|op| op.get(r, c));
    Some((r, c, format_bipoly(&poly)))
}

pub(crate) fn format_bipoly(p: &BiPoly<Scalar>) -> String {
    let parts: Vec<String> = p
        .terms()
        .map(|((du, dv), c)| format!("({c})*u^{du}*v^{dv}"))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

/// Compares the `sp(2)` R-matrix with Yang's `gl(2)` matrix at `u/2`.
/// Returns `φ(u)` with `R^{sp(2)}(u) = φ(u)·R^{gl(2)}(u/2)` entrywise, if one
/// polynomial factor does it.
pub fn sp2_gl2_factor() -> Result<Poly> {
    let case = make_case(Family::Sp, 1)?;
    let rsp = fundamental_r(&case);
    let gl = yang_r(2);
    let d = 4;
    let half = Scalar::frac(1, 2);
    let mut factor: Option<Poly> = None;
    for row in 0..d {
        for col in 0..d {
            let a = rsp.entry(row, col);
            let b = gl.entry(row, col).affine(&half, &Scalar::int(0));
            match (a.is_zero(), b.is_zero()) {
                (true, true) => continue,
                (false, false) => {}
                _ => return Err(Error::Domain(format!("support differs at ({row},{col})"))),
            }
            let (q, r) = a.div_rem(&b);
            if !r.is_zero() {
                return Err(Error::Domain(format!("entry ({row},{col}) not divisible")));
            }
            match &factor {
                None => factor = Some(q),
                Some(f) if *f == q => {}
                Some(_) => return Err(Error::Domain("entries differ by distinct factors".into())),
            }
        }
    }
    factor.ok_or_else(|| Error::Domain("zero R-matrix".into()))
}

/// Parallel YBE over several cases, in input order.
pub fn check_ybe_all(cases: &[CaseDescriptor]) -> Vec<YbeReport> {
    cases.par_iter().map(check_ybe).collect()
}
