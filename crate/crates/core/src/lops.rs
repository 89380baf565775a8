//! L-operators `L_{ab}(u) = u^s ε_{ab} + u^{s−1} G_{ab} + …` on explicit
//! representation spaces, and the constructions that produce them.
//!
//! Index pairs are stored lowered. Matrix products of lowered matrices go
//! through the metric, `(A∘B)_{ab} = Σ A_{ac} ε^{cd} B_{db}`, so the
//! identity of this product is `ε_{ab}·1`.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;

use crate::exact::UniPoly;
use crate::spaces::{
    gl2_oscillator_layer, heisenberg_space, homogeneous_space, spinor_space_truncated, RepSpace,
    DEFAULT_BOSON_TRUNCATION,
};
use crate::structure::{CaseDescriptor, Family};
use crate::{Error, Op, Poly, Result, Scalar};

/// An `n × n` matrix of operators with lowered indices.
#[derive(Clone, Debug, PartialEq)]
pub struct OpMatrix {
    case: CaseDescriptor,
    dim: usize,
    entries: Vec<Op>,
}

impl OpMatrix {
    pub fn zero(case: &CaseDescriptor, dim: usize) -> Self {
        OpMatrix {
            case: case.clone(),
            dim,
            entries: vec![Op::zero(dim, dim); case.n * case.n],
        }
    }

    /// `ε_{ab}·1`, the unit of the ∘ product.
    pub fn metric(case: &CaseDescriptor, dim: usize) -> Self {
        Self::from_fn(case, dim, |a, b| {
            Op::scalar(dim, Scalar::int(case.metric(a, b)))
        })
    }

    pub fn from_fn(case: &CaseDescriptor, dim: usize, f: impl Fn(i64, i64) -> Op) -> Self {
        let idx = case.indices();
        let mut entries = Vec::with_capacity(case.n * case.n);
        for &a in &idx {
            for &b in &idx {
                let op = f(a, b);
                debug_assert_eq!((op.nrows(), op.ncols()), (dim, dim));
                entries.push(op);
            }
        }
        OpMatrix {
            case: case.clone(),
            dim,
            entries,
        }
    }

    pub fn case(&self) -> &CaseDescriptor {
        &self.case
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Entry by signed indices.
    pub fn at(&self, a: i64, b: i64) -> &Op {
        &self.entries[self.case.pos(a) * self.case.n + self.case.pos(b)]
    }

    pub fn set(&mut self, a: i64, b: i64, op: Op) {
        let k = self.case.pos(a) * self.case.n + self.case.pos(b);
        self.entries[k] = op;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Op::is_zero)
    }

    pub fn map(&self, dim: usize, f: impl Fn(&Op) -> Op + Sync + Send) -> Self {
        OpMatrix {
            case: self.case.clone(),
            dim,
            entries: self.entries.par_iter().map(f).collect(),
        }
    }

    fn zip(&self, o: &Self, f: impl Fn(&Op, &Op) -> Op) -> Self {
        OpMatrix {
            case: self.case.clone(),
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&o.entries)
                .map(|(x, y)| f(x, y))
                .collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, Op::add)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, Op::sub)
    }

    pub fn scale(&self, s: &Scalar) -> Self {
        self.map(self.dim, |x| x.scale(s))
    }

    /// `self + c·ε_{ab}`
    pub fn add_metric(&self, c: &Scalar) -> Self {
        self.add(&Self::metric(&self.case, self.dim).scale(c))
    }

    /// `(Aᵗ)_{ab} = A_{ba}`
    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.case, self.dim, |a, b| self.at(b, a).clone())
    }

    /// `(A∘B)_{ab} = Σ_c ε^{c,−c} A_{ac} B_{−c,b}`
    pub fn circ(&self, o: &Self) -> Self {
        let case = &self.case;
        let idx = case.indices();
        let entries = pairs(case)
            .into_par_iter()
            .map(|(a, b)| {
                let mut acc = Op::zero(self.dim, o.dim);
                for &c in &idx {
                    let w = Scalar::int(case.metric_inv(c, -c));
                    acc.add_scaled_assign(&w, &self.at(a, c).mul(o.at(-c, b)));
                }
                acc
            })
            .collect();
        OpMatrix {
            case: case.clone(),
            dim: self.dim,
            entries,
        }
    }

    /// `Σ_{d,e} A_{da} ε^{ed} B_{eb}`, the contraction appearing in `Lᵗ(u−β)L(u)`.
    pub fn tprod(&self, o: &Self) -> Self {
        let case = &self.case;
        let idx = case.indices();
        let entries = pairs(case)
            .into_par_iter()
            .map(|(a, b)| {
                let mut acc = Op::zero(self.dim, o.dim);
                for &d in &idx {
                    let w = Scalar::int(case.metric_inv(-d, d));
                    acc.add_scaled_assign(&w, &self.at(d, a).mul(o.at(-d, b)));
                }
                acc
            })
            .collect();
        OpMatrix {
            case: case.clone(),
            dim: self.dim,
            entries,
        }
    }

    /// Every entry `A_{ab}` replaced by `A_{ab} ⊗ 1_{dim2}`.
    pub fn kron_left(&self, dim2: usize) -> Self {
        let id = Op::identity(dim2);
        self.map(self.dim * dim2, |x| x.kron(&id))
    }

    /// Every entry `A_{ab}` replaced by `1_{dim1} ⊗ A_{ab}`.
    pub fn kron_right(&self, dim1: usize) -> Self {
        let id = Op::identity(dim1);
        self.map(self.dim * dim1, |x| id.kron(x))
    }

    /// `Some(c)` when the matrix equals `c·ε_{ab}·1` on the given columns.
    pub fn metric_multiple(&self, cols: &[usize]) -> Option<Scalar> {
        let mut found: Option<Scalar> = None;
        for (a, b) in pairs(&self.case) {
            let e = self.case.metric(a, b);
            let x = self.at(a, b);
            if e == 0 {
                if !x.mask_columns(cols).is_zero() {
                    return None;
                }
                continue;
            }
            let s = x.scalar_on_columns(cols)? * Scalar::int(e);
            match &found {
                None => found = Some(s),
                Some(f) if *f == s => {}
                Some(_) => return None,
            }
        }
        Some(found.unwrap_or_else(|| Scalar::int(0)))
    }

    /// First index pair where `self` and `o` differ on the given columns.
    pub fn first_difference(&self, o: &Self, cols: &[usize]) -> Option<(i64, i64, String)> {
        pairs(&self.case).into_iter().find_map(|(a, b)| {
            self.at(a, b)
                .first_difference(o.at(a, b), cols)
                .map(|(r, c, d)| (a, b, format!("entry ({r},{c}) differs by {d}")))
        })
    }

    /// `Σ_a (A)^a_a = Σ_a ε_{−a} A_{−a,a}`, an operator.
    pub fn trace(&self) -> Op {
        let mut acc = Op::zero(self.dim, self.dim);
        for a in self.case.indices() {
            acc.add_scaled_assign(&Scalar::int(self.case.eps_of(-a)), self.at(-a, a));
        }
        acc
    }
}

/// All lowered index pairs in row-major order.
pub fn pairs(case: &CaseDescriptor) -> Vec<(i64, i64)> {
    let idx = case.indices();
    idx.iter()
        .flat_map(|&a| idx.iter().map(move |&b| (a, b)))
        .collect()
}

/// L-operator polynomial in `u` with coefficients `coeffs[k]` of `u^k`; the
/// top coefficient is the metric.
#[derive(Clone, Debug)]
pub struct LOperator {
    pub label: String,
    pub case: CaseDescriptor,
    pub space: RepSpace,
    pub coeffs: Vec<OpMatrix>,
    /// Raising steps (in units of the space's headroom) that one
    /// coefficient may take; identities with `p` L-factors are asserted on
    /// columns with headroom `≥ p·steps`.
    pub steps: u32,
    /// Construction parameters, string-serialized.
    pub params: BTreeMap<String, String>,
    /// Basis position of the designated highest-weight vector.
    pub hw_hint: Option<usize>,
}

impl LOperator {
    /// `L(u) = u^s ε + u^{s−1} c_{s−1} + … + c_0`, lower coefficients given
    /// in ascending order.
    pub fn from_lower(
        label: &str,
        case: &CaseDescriptor,
        space: RepSpace,
        lower: Vec<OpMatrix>,
        steps: u32,
    ) -> Self {
        let dim = space.dim();
        let mut coeffs = lower;
        coeffs.push(OpMatrix::metric(case, dim));
        LOperator {
            label: label.into(),
            case: case.clone(),
            space,
            coeffs,
            steps,
            params: BTreeMap::new(),
            hw_hint: None,
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// First nontrivial coefficient `G`.
    pub fn g(&self) -> &OpMatrix {
        &self.coeffs[self.order() - 1]
    }

    /// Second nontrivial coefficient `H` (zero for linear operators).
    pub fn h(&self) -> OpMatrix {
        if self.order() >= 2 {
            self.coeffs[self.order() - 2].clone()
        } else {
            OpMatrix::zero(&self.case, self.dim())
        }
    }

    /// Coefficients of `L_{ab}(u)`, ascending in `u`.
    pub fn entry(&self, a: i64, b: i64) -> Vec<Op> {
        self.coeffs.iter().map(|c| c.at(a, b).clone()).collect()
    }

    /// Coefficients of the mixed entry `L^a_b(u) = ε_{−a} L_{−a,b}(u)`.
    pub fn mixed(&self, a: i64, b: i64) -> Vec<Op> {
        let s = Scalar::int(self.case.eps_of(-a));
        self.coeffs.iter().map(|c| c.at(-a, b).scale(&s)).collect()
    }

    pub fn eval(&self, u: &Scalar) -> OpMatrix {
        let mut acc = OpMatrix::zero(&self.case, self.dim());
        let mut power = Scalar::int(1);
        for c in &self.coeffs {
            acc = acc.add(&c.scale(&power));
            power = power * u.clone();
        }
        acc
    }

    /// `L(u + c)`
    pub fn shift(&self, c: &Scalar) -> Self {
        let mut out = self.clone();
        out.coeffs = affine_coeffs(
            &self.coeffs,
            &Scalar::int(1),
            c,
            |m, s| m.scale(s),
            |x, y| x.add(y),
        )
        .expect("nonempty coefficient list");
        out
    }

    /// `L(u + c)` with `c` chosen so that `G` is ε-antisymmetric, together
    /// with `c`. `None` if the ε-symmetric part of `G` is not a multiple of
    /// the metric.
    pub fn centered(&self) -> Option<(Self, Scalar)> {
        let g = self.g();
        let sym = g
            .add(&g.transpose().scale(&self.case.eps_scalar()))
            .scale(&Scalar::frac(1, 2));
        let t = sym.metric_multiple(&self.safe_columns(1))?;
        let c = -t / Scalar::int(self.order() as i64);
        let mut out = self.shift(&c);
        out.params.insert("center_shift".into(), c.to_string());
        Some((out, c))
    }

    /// Columns on which identities with `factors` L-factors are exact.
    pub fn safe_columns(&self, factors: u32) -> Vec<usize> {
        self.space.safe_columns(factors * self.steps)
    }

    pub fn with_param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }
}

/// Coefficients of `p(a·u + b)` for a polynomial with module-valued
/// coefficients (ascending).
fn affine_coeffs<M: Clone>(
    p: &[M],
    a: &Scalar,
    b: &Scalar,
    scale: impl Fn(&M, &Scalar) -> M,
    add: impl Fn(&M, &M) -> M,
) -> Option<Vec<M>> {
    let mut out: Vec<Option<M>> = vec![None; p.len()];
    let lin = Poly::new(vec![b.clone(), a.clone()]);
    let mut power = Poly::one();
    for c in p {
        for (j, w) in power.coeffs().iter().enumerate() {
            let term = scale(c, w);
            out[j] = Some(match &out[j] {
                None => term,
                Some(x) => add(x, &term),
            });
        }
        power = &power * &lin;
    }
    // (a·u + b)^k has degree k, so every slot is reached when a ≠ 0
    out.into_iter().collect()
}

// ---------------------------------------------------------------------------
// linear constructions
// ---------------------------------------------------------------------------

/// Clifford / oscillator L-operator `L_{ab}(u) = (u+½)ε_{ab} − c_a c_b` on the
/// spinor space.
pub fn build_spinorial_linear(case: &CaseDescriptor) -> LOperator {
    build_spinorial_linear_truncated(case, DEFAULT_BOSON_TRUNCATION)
}

/// As [`build_spinorial_linear`] with an explicit bosonic occupation cap.
pub fn build_spinorial_linear_truncated(case: &CaseDescriptor, cap: u32) -> LOperator {
    let (space, gens) = spinor_space_truncated(case, cap);
    let dim = space.dim();
    let half_eps = Scalar::frac(case.eps, 2);
    let g = OpMatrix::from_fn(case, dim, |a, b| {
        let diag = Op::scalar(dim, half_eps.clone() * Scalar::int(case.metric(a, b)));
        diag.sub(&gens.c(a).mul(gens.c(b)))
    });
    let mut l = LOperator::from_lower("spinor", case, space, vec![g], 1);
    l.hw_hint = Some(0);
    if case.family == Family::Sp {
        l = l.with_param("trunc", cap);
    }
    l
}

/// Matrix-Heisenberg L-operator with representation parameter `ℓ`, on
/// polynomials of degree `≤ D`.
pub fn build_heisenberg_linear(
    case: &CaseDescriptor,
    ell: &Scalar,
    max_degree: u32,
) -> Result<LOperator> {
    let (space, gens) = heisenberg_space(case, max_degree)?;
    let dim = space.dim();
    let m = case.m;
    let eps = case.eps_scalar();
    let beta = case.beta.clone();
    let id = Op::identity(dim);
    let delta = |i: usize, j: usize| {
        if i == j {
            Scalar::int(1)
        } else {
            Scalar::int(0)
        }
    };
    // Σ_k ∂^i_k x^k_j with x acting first
    let dx = |i: usize, j: usize| {
        (1..=m).fold(Op::zero(dim, dim), |acc, k| {
            acc.add(&gens.dm(i, k).mul(gens.xm(k, j)))
        })
    };
    let x_d = |i: usize, j: usize| {
        (1..=m).fold(Op::zero(dim, dim), |acc, k| {
            acc.add(&gens.xm(i, k).mul(gens.dm(k, j)))
        })
    };
    let two_l_beta = Scalar::int(2) * ell.clone() + beta.clone();
    let g = OpMatrix::from_fn(case, dim, |a, b| {
        let (i, j) = (a.unsigned_abs() as usize, b.unsigned_abs() as usize);
        match (a < 0, b < 0) {
            (true, false) => {
                let shift = -(ell.clone() + beta.clone()) * delta(i, j);
                id.scale(&shift).add(&dx(i, j)).scale(&eps)
            }
            (true, true) => gens.dm(i, j).scale(&eps),
            (false, false) => (1..=m).fold(Op::zero(dim, dim), |acc, k| {
                let inner = id.scale(&(two_l_beta.clone() * delta(k, j))).sub(&dx(k, j));
                acc.add(&gens.xm(i, k).mul(&inner))
            }),
            (false, true) => id.scale(&(ell.clone() * delta(i, j))).sub(&x_d(i, j)),
        }
    });
    let mut l = LOperator::from_lower("heisenberg", case, space, vec![g], 1);
    l.hw_hint = Some(0);
    Ok(l.with_param("ell", ell).with_param("trunc", max_degree))
}

// ---------------------------------------------------------------------------
// quadratic constructions
// ---------------------------------------------------------------------------

/// `k = −2ℓ − ½(β + 2ℓ − 1)²`
pub fn default_js_k(case: &CaseDescriptor, two_l: u32) -> Scalar {
    let tl = Scalar::int(i64::from(two_l));
    let b = case.beta.clone() + tl.clone() - Scalar::int(1);
    -tl - Scalar::frac(1, 2) * b.clone() * b
}

/// Jordan-Schwinger L-operator on the degree-`twoL` layer:
/// `G_{ab} = −ε(x_a∂_b − εx_b∂_a)`, `H = ½(G∘G + βG + kε)`.
pub fn build_js_quadratic(
    case: &CaseDescriptor,
    two_l: u32,
    k: Option<Scalar>,
) -> Result<LOperator> {
    let hs = homogeneous_space(case, two_l)?;
    let gens = &hs.gens;
    let eps = case.eps_scalar();
    let layer = &hs.layer;
    let dim = layer.len();
    let g = OpMatrix::from_fn(case, dim, |a, b| {
        let xd = gens.x(a).mul(gens.d(b));
        let xd_t = gens.x(b).mul(gens.d(a)).scale(&eps);
        xd.sub(&xd_t).scale(&-eps.clone()).restrict(layer, layer)
    });
    let k = k.unwrap_or_else(|| default_js_k(case, two_l));
    let h = g
        .circ(&g)
        .add(&g.scale(&case.beta))
        .add_metric(&k)
        .scale(&Scalar::frac(1, 2));
    let mut l = LOperator::from_lower("js", case, hs.layer_space(), vec![h, g], 1);
    l.hw_hint = Some(hs.highest_monomial(case));
    Ok(l.with_param("twoL", two_l).with_param("k", k))
}

/// `L₁₂(u) = L₁(u − δ/2) ∘ L₂(u + δ/2)` on the tensor product space, so
/// that `G = G₁ + G₂`.
pub fn build_product(l1: &LOperator, l2: &LOperator, delta: &Scalar) -> Result<LOperator> {
    if l1.case != l2.case {
        return Err(Error::Domain(format!(
            "product of L-operators for different algebras {} and {}",
            l1.case.name(),
            l2.case.name()
        )));
    }
    let half = Scalar::frac(1, 2) * delta.clone();
    let a = l1.shift(&-half.clone());
    let b = l2.shift(&half);
    let (d1, d2) = (l1.dim(), l2.dim());
    let left: Vec<OpMatrix> = a.coeffs.iter().map(|c| c.kron_left(d2)).collect();
    let right: Vec<OpMatrix> = b.coeffs.iter().map(|c| c.kron_right(d1)).collect();
    let mut coeffs: Vec<Option<OpMatrix>> = vec![None; left.len() + right.len() - 1];
    for (i, x) in left.iter().enumerate() {
        for (j, y) in right.iter().enumerate() {
            let t = x.circ(y);
            coeffs[i + j] = Some(match &coeffs[i + j] {
                None => t,
                Some(acc) => acc.add(&t),
            });
        }
    }
    let coeffs = coeffs.into_iter().map(|c| c.expect("filled")).collect();
    let mut params = BTreeMap::new();
    params.insert("delta".into(), delta.to_string());
    params.insert("left".into(), l1.label.clone());
    params.insert("right".into(), l2.label.clone());
    Ok(LOperator {
        label: "product".into(),
        case: l1.case.clone(),
        space: l1.space.tensor(&l2.space),
        coeffs,
        steps: l1.steps.max(l2.steps),
        params,
        hw_hint: l1.hw_hint.zip(l2.hw_hint).map(|(a, b)| a * l2.dim() + b),
    })
}

/// Restriction of `l` to the submodule generated from `seed` by all
/// coefficient entries. The seed becomes basis vector 0 and the designated
/// highest-weight vector. Only closed (untruncated) spaces are accepted.
pub fn cyclic_submodule(l: &LOperator, seed: &[Scalar]) -> Result<LOperator> {
    if l.space.headroom.iter().any(Option::is_some) {
        return Err(Error::Unsupported(
            "cyclic submodules are only formed in untruncated spaces".into(),
        ));
    }
    if seed.iter().all(Zero::is_zero) {
        return Err(Error::Domain("seed vector is zero".into()));
    }
    let ops: Vec<&Op> = l
        .coeffs
        .iter()
        .flat_map(|c| pairs(&l.case).into_iter().map(move |(a, b)| c.at(a, b)))
        .collect();
    // basis vectors as found, plus a reduced echelon copy for membership
    let mut basis: Vec<Vec<Scalar>> = Vec::new();
    let mut echelon: Vec<(usize, Vec<Scalar>)> = Vec::new();
    let reduce = |echelon: &[(usize, Vec<Scalar>)], mut w: Vec<Scalar>| {
        for (p, row) in echelon {
            if !w[*p].is_zero() {
                let f = w[*p].clone();
                for (x, y) in w.iter_mut().zip(row) {
                    *x = x.clone() - f.clone() * y.clone();
                }
            }
        }
        w
    };
    let push =
        |basis: &mut Vec<Vec<Scalar>>, echelon: &mut Vec<(usize, Vec<Scalar>)>, v: Vec<Scalar>| {
            let w = reduce(echelon, v.clone());
            let Some(p) = w.iter().position(|x| !x.is_zero()) else {
                return false;
            };
            let inv = w[p].inv().expect("nonzero pivot");
            let w: Vec<Scalar> = w.iter().map(|x| x.clone() * inv.clone()).collect();
            for (_, row) in echelon.iter_mut() {
                if !row[p].is_zero() {
                    let f = row[p].clone();
                    for (x, y) in row.iter_mut().zip(&w) {
                        *x = x.clone() - f.clone() * y.clone();
                    }
                }
            }
            echelon.push((p, w));
            basis.push(v);
            true
        };
    push(&mut basis, &mut echelon, seed.to_vec());
    let mut next = 0;
    while next < basis.len() {
        let v = basis[next].clone();
        for op in &ops {
            push(&mut basis, &mut echelon, op.apply(&v));
        }
        next += 1;
    }
    let k = basis.len();
    // coordinates: w = Σ c_j basis_j; solve on the pivot rows
    let pivots: Vec<usize> = echelon.iter().map(|(p, _)| *p).collect();
    let mut m: Vec<Vec<Scalar>> = (0..k)
        .map(|r| {
            let mut row: Vec<Scalar> = basis.iter().map(|b| b[pivots[r]].clone()).collect();
            row.extend((0..k).map(|j| {
                if j == r {
                    Scalar::int(1)
                } else {
                    Scalar::int(0)
                }
            }));
            row
        })
        .collect();
    crate::exact::rref(&mut m, 2 * k);
    let minv: Vec<Vec<Scalar>> = m.iter().map(|row| row[k..].to_vec()).collect();
    let coords = |w: &[Scalar]| -> Vec<Scalar> {
        (0..k)
            .map(|i| {
                pivots
                    .iter()
                    .enumerate()
                    .fold(Scalar::int(0), |acc, (r, &p)| {
                        acc + minv[i][r].clone() * w[p].clone()
                    })
            })
            .collect()
    };
    let restrict = |op: &Op| -> Op {
        let mut out = Op::zero(k, k);
        for (j, b) in basis.iter().enumerate() {
            for (i, c) in coords(&op.apply(b)).into_iter().enumerate() {
                out.add_entry(i, j, c);
            }
        }
        out
    };
    let coeffs = l.coeffs.iter().map(|c| c.map(k, restrict)).collect();
    let space = RepSpace {
        kind: format!("{}-cyclic", l.space.kind),
        labels: (0..k).map(|i| format!("v{i}")).collect(),
        grading: vec![0; k],
        headroom: vec![None; k],
        variables: l.space.variables,
        truncation: None,
    };
    let mut params = l.params.clone();
    params.insert("submodule".into(), "cyclic".into());
    Ok(LOperator {
        label: l.label.clone(),
        case: l.case.clone(),
        space,
        coeffs,
        steps: l.steps,
        params,
        hw_hint: Some(0),
    })
}

/// Jordan-Schwinger operator restricted to the irreducible module generated
/// by `x_{−1}^{2ℓ}` (the homogeneous layer also contains the traces).
pub fn build_js_irreducible(
    case: &CaseDescriptor,
    two_l: u32,
    k: Option<Scalar>,
) -> Result<LOperator> {
    let full = build_js_quadratic(case, two_l, k)?;
    let seed = full
        .space
        .basis_vector(full.hw_hint.expect("js sets its hw vector"));
    cyclic_submodule(&full, &seed)
}

// ---------------------------------------------------------------------------
// gl(2) chains and so(3) fusion
// ---------------------------------------------------------------------------

/// 2×2 L-operator for the gl(2) Yangian, entries row-major
/// (`11, 12, 21, 22`), coefficients ascending in `u`.
#[derive(Clone, Debug)]
pub struct Gl2LOperator {
    pub space: RepSpace,
    pub coeffs: Vec<[Op; 4]>,
    /// Basis position of the highest-weight vector.
    pub hw: usize,
    pub factors: Vec<(Scalar, u32)>,
}

impl Gl2LOperator {
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Coefficients of entry `(α, β)`, 1-based.
    pub fn entry(&self, alpha: usize, beta: usize) -> Vec<Op> {
        let k = (alpha - 1) * 2 + (beta - 1);
        self.coeffs.iter().map(|c| c[k].clone()).collect()
    }

    /// Coefficients of `L_{αβ}(a·u + b)`.
    pub fn entry_affine(&self, alpha: usize, beta: usize, a: &Scalar, b: &Scalar) -> Vec<Op> {
        affine_coeffs(&self.entry(alpha, beta), a, b, |x, s| x.scale(s), Op::add)
            .expect("nonempty coefficient list")
    }
}

/// Product of operator polynomials (ascending coefficients).
pub fn op_poly_mul(p: &[Op], q: &[Op]) -> Vec<Op> {
    let (r, c) = (p[0].nrows(), q[0].ncols());
    let mut out = vec![Op::zero(r, c); p.len() + q.len() - 1];
    for (i, x) in p.iter().enumerate() {
        for (j, y) in q.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y));
        }
    }
    out
}

pub fn op_poly_add(p: &[Op], q: &[Op]) -> Vec<Op> {
    let len = p.len().max(q.len());
    let zero = Op::zero(p[0].nrows(), p[0].ncols());
    (0..len)
        .map(|k| p.get(k).unwrap_or(&zero).add(q.get(k).unwrap_or(&zero)))
        .collect()
}

pub fn op_poly_scale(p: &[Op], s: &Scalar) -> Vec<Op> {
    p.iter().map(|x| x.scale(s)).collect()
}

/// `∏_k L_k(u − u_k)` with `(L_k)_{αβ}(u) = uδ_{αβ} − x_α ∂_β` acting on the
/// degree-`d_k` layer of the `k`-th oscillator pair; the highest-weight
/// vector is `∏ (x₁^{(k)})^{d_k}`.
pub fn build_gl2_js_chain(factors: &[(Scalar, i64)]) -> Result<Gl2LOperator> {
    let mut chain = Gl2LOperator {
        space: RepSpace::trivial(),
        coeffs: vec![std::array::from_fn(|k| {
            if k == 0 || k == 3 {
                Op::identity(1)
            } else {
                Op::zero(1, 1)
            }
        })],
        hw: 0,
        factors: Vec::new(),
    };
    for (shift, d) in factors {
        let d = u32::try_from(*d).map_err(|_| {
            Error::Domain(format!(
                "gl(2) chain exponent must be a nonnegative integer, got {d}"
            ))
        })?;
        let (space, e) = gl2_oscillator_layer(d);
        let dim = space.dim();
        let id = Op::identity(dim);
        // (u − u_k)δ − E
        let constant: [Op; 4] = std::array::from_fn(|k| {
            let diag = if k == 0 || k == 3 {
                id.scale(&-shift.clone())
            } else {
                Op::zero(dim, dim)
            };
            diag.sub(&e[k])
        });
        let linear: [Op; 4] = std::array::from_fn(|k| {
            if k == 0 || k == 3 {
                id.clone()
            } else {
                Op::zero(dim, dim)
            }
        });
        let factor = [constant, linear];
        let d1 = chain.dim();
        let mut coeffs: Vec<[Op; 4]> =
            vec![std::array::from_fn(|_| Op::zero(d1 * dim, d1 * dim)); chain.coeffs.len() + 1];
        for (i, x) in chain.coeffs.iter().enumerate() {
            for (j, y) in factor.iter().enumerate() {
                for al in 0..2 {
                    for ga in 0..2 {
                        let mut acc = coeffs[i + j][al * 2 + ga].clone();
                        for be in 0..2 {
                            acc = acc.add(&x[al * 2 + be].kron(&y[be * 2 + ga]));
                        }
                        coeffs[i + j][al * 2 + ga] = acc;
                    }
                }
            }
        }
        chain = Gl2LOperator {
            hw: chain.hw * dim,
            space: chain.space.tensor(&space),
            coeffs,
            factors: {
                let mut f = chain.factors;
                f.push((shift.clone(), d));
                f
            },
        };
    }
    Ok(chain)
}

/// so(3) L-operator fused from a gl(2) operator, together with the
/// quantum determinant that was cleared from its denominator.
#[derive(Clone, Debug)]
pub struct FusedSo3 {
    /// Numerator normalized to a monic leading coefficient `ε_{ab}`.
    pub lop: LOperator,
    /// `qdet(u)` such that the fused operator is `lop(u)·c / qdet(u)`.
    pub qdet: Poly,
    /// The constant `c` removed when normalizing the numerator.
    pub normalization: Scalar,
    pub hw: usize,
}

/// Pauli-type matrices `σ₋₁ = √2E₂₁`, `σ₀ = diag(1, −1)`, `σ₁ = √2E₁₂`,
/// row-major.
fn sigma(a: i64) -> [Scalar; 4] {
    let z = Scalar::int(0);
    match a {
        -1 => [z.clone(), z.clone(), Scalar::sqrt2(), z],
        0 => [Scalar::int(1), z.clone(), z, Scalar::int(-1)],
        1 => [z.clone(), Scalar::sqrt2(), z.clone(), z],
        _ => unreachable!("so(3) index out of range"),
    }
}

/// Quantum determinant `L₁₁(z+1)L₂₂(z) − L₁₂(z+1)L₂₁(z)` as a polynomial in
/// `z`, or `None` if it is not a multiple of the identity.
pub fn gl2_qdet(l: &Gl2LOperator) -> Option<Poly> {
    let one = Scalar::int(1);
    let zero = Scalar::int(0);
    let a11 = l.entry_affine(1, 1, &one, &one);
    let a12 = l.entry_affine(1, 2, &one, &one);
    let b22 = l.entry_affine(2, 2, &one, &zero);
    let b21 = l.entry_affine(2, 1, &one, &zero);
    let q = op_poly_add(
        &op_poly_mul(&a11, &b22),
        &op_poly_scale(&op_poly_mul(&a12, &b21), &-one),
    );
    let coeffs: Option<Vec<Scalar>> = q.iter().map(Op::as_scalar).collect();
    coeffs.map(Poly::new)
}

/// Fusion `L_{ab}(u) = ½ tr(σ_a L(2u) σ_b L(2u+2)⁻¹)` with the inverse
/// written as `adj(2u+1)/qdet(2u+1)`.
pub fn fuse_so3_from_gl2(l: &Gl2LOperator) -> Result<FusedSo3> {
    let case = crate::structure::make_case(Family::SoOdd, 1)?;
    let qdet_z =
        gl2_qdet(l).ok_or_else(|| Error::Domain("quantum determinant is not central".into()))?;
    if qdet_z.is_zero() {
        return Err(Error::Domain(
            "quantum determinant vanishes identically".into(),
        ));
    }
    let two = Scalar::int(2);
    let one = Scalar::int(1);
    let zero = Scalar::int(0);
    // qdet at z = 2u + 1
    let qdet = qdet_z.affine(&two, &one);
    let lu: Vec<Vec<Op>> = (0..4)
        .map(|k| l.entry_affine(k / 2 + 1, k % 2 + 1, &two, &zero))
        .collect();
    let adj: Vec<Vec<Op>> = [(2, 2, 1), (1, 2, -1), (2, 1, -1), (1, 1, 1)]
        .iter()
        .map(|&(al, be, s)| op_poly_scale(&l.entry_affine(al, be, &two, &one), &Scalar::int(s)))
        .collect();
    let dim = l.dim();
    let deg = 2 * l.order();
    let half = Scalar::frac(1, 2);
    let mut entries: BTreeMap<(i64, i64), Vec<Op>> = BTreeMap::new();
    for a in [-1i64, 0, 1] {
        for b in [-1i64, 0, 1] {
            let (sa, sb) = (sigma(a), sigma(b));
            let mut acc = vec![Op::zero(dim, dim); deg + 1];
            for i in 0..2 {
                for j in 0..2 {
                    for k in 0..2 {
                        for m in 0..2 {
                            let w = sa[i * 2 + j].clone() * sb[k * 2 + m].clone();
                            if w.is_zero() {
                                continue;
                            }
                            let prod = op_poly_mul(&lu[j * 2 + k], &adj[m * 2 + i]);
                            acc = op_poly_add(&acc, &op_poly_scale(&prod, &(w * half.clone())));
                        }
                    }
                }
            }
            entries.insert((a, b), acc);
        }
    }
    // leading coefficient must be c·ε_{ab}
    let lead_of = |a: i64, b: i64| entries[&(a, b)][deg].clone();
    let c = lead_of(0, 0)
        .as_scalar()
        .filter(|c| !c.is_zero())
        .ok_or_else(|| Error::Domain("fused numerator has no scalar leading coefficient".into()))?;
    let inv = c.inv().expect("nonzero");
    let coeffs: Vec<OpMatrix> = (0..=deg)
        .map(|k| OpMatrix::from_fn(&case, dim, |a, b| entries[&(a, b)][k].scale(&inv)))
        .collect();
    if coeffs[deg] != OpMatrix::metric(&case, dim) {
        return Err(Error::Domain(
            "fused numerator leading term is not the metric".into(),
        ));
    }
    let lop = LOperator {
        label: "fused".into(),
        case,
        space: l.space.clone(),
        coeffs,
        steps: 1,
        hw_hint: Some(l.hw),
        params: BTreeMap::from([(
            "chain".into(),
            l.factors
                .iter()
                .map(|(s, d)| format!("({s},{d})"))
                .collect::<Vec<_>>()
                .join(","),
        )]),
    };
    Ok(FusedSo3 {
        lop,
        qdet,
        normalization: c,
        hw: l.hw,
    })
}

/// `Poly` from scalar operator coefficients, if all are scalar.
pub fn scalar_poly(p: &[Op]) -> Option<Poly> {
    p.iter()
        .map(Op::as_scalar)
        .collect::<Option<Vec<_>>>()
        .map(UniPoly::new)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::structure::make_case;

    fn case(f: Family, m: usize) -> CaseDescriptor {
        make_case(f, m).unwrap()
    }

    fn eps_antisymmetric(l: &LOperator) -> bool {
        let g = l.g();
        let cols = l.safe_columns(1);
        g.add(&g.transpose().scale(&l.case.eps_scalar()))
            .metric_multiple(&cols)
            .is_some_and(|c| c.is_zero())
    }

    #[test]
    fn spinor_linear_constraint_so3() {
        let c = case(Family::SoOdd, 1);
        let l = build_spinorial_linear(&c);
        let g = l.g();
        let lhs = g.circ(g).add(&g.scale(&c.beta));
        // ¼ε(n−ε) at n = 3
        assert_eq!(
            lhs.metric_multiple(&l.safe_columns(2)),
            Some(Scalar::frac(1, 2))
        );
        assert!(eps_antisymmetric(&l));
    }

    #[test]
    fn centering_undoes_a_shift() {
        let l = build_spinorial_linear(&case(Family::SoEven, 2));
        let shifted = l.shift(&Scalar::frac(3, 2));
        assert!(!eps_antisymmetric(&shifted));
        let (back, c) = shifted.centered().unwrap();
        assert_eq!(c, Scalar::frac(-3, 2));
        assert_eq!(back.coeffs, l.coeffs);
        let (same, c) = l.centered().unwrap();
        assert!(c.is_zero());
        assert_eq!(same.coeffs, l.coeffs);
    }

    #[test]
    fn spinor_vacuum_weight_so4() {
        let l = build_spinorial_linear(&case(Family::SoEven, 2));
        let v = l.space.basis_vector(0);
        let w = l.g().at(-1, 1).apply(&v);
        assert_eq!(w[0], Scalar::frac(-1, 2));
        assert!(w[1..].iter().all(|x| x.is_zero()));
    }

    #[test]
    fn spinor_sp2_eps_antisymmetric() {
        assert!(eps_antisymmetric(&build_spinorial_linear(&case(
            Family::Sp,
            1
        ))));
    }

    #[test]
    fn heisenberg_linear_constraint() {
        for (f, m) in [(Family::SoEven, 2), (Family::Sp, 1), (Family::Sp, 2)] {
            let c = case(f, m);
            for ell in 0..3 {
                let ell = Scalar::int(ell);
                let l = build_heisenberg_linear(&c, &ell, 3).unwrap();
                assert!(eps_antisymmetric(&l), "{}", c.name());
                let g = l.g();
                let lhs = g.circ(g).add(&g.scale(&c.beta));
                let expect = ell.clone() * (ell.clone() + c.beta.clone());
                assert_eq!(
                    lhs.metric_multiple(&l.safe_columns(2)),
                    Some(expect),
                    "{}",
                    c.name()
                );
            }
        }
        assert!(build_heisenberg_linear(&case(Family::SoOdd, 1), &Scalar::int(1), 2).is_err());
    }

    #[test]
    fn heisenberg_so4_weights_on_constant() {
        let c = case(Family::SoEven, 2);
        let l = build_heisenberg_linear(&c, &Scalar::int(1), 3).unwrap();
        let v = l.space.basis_vector(0);
        // λ_i(u) = −ε(u+ℓ): eigenvalue of G_{−i,i} is the constant of λ_i(−u) = u − 1
        for i in 1..=2 {
            assert_eq!(l.g().at(-i, i).apply(&v)[0], Scalar::int(-1));
            assert_eq!(l.g().at(i, -i).apply(&v)[0], Scalar::int(1));
        }
    }

    #[test]
    fn js_default_k_and_weights() {
        let c = case(Family::SoOdd, 2);
        assert_eq!(default_js_k(&c, 2), Scalar::frac(-41, 8));
        let l = build_js_quadratic(&c, 2, None).unwrap();
        assert_eq!(l.dim(), 15);
        assert!(eps_antisymmetric(&l));
        let hw = l.hw_hint.unwrap();
        assert_eq!(l.space.labels[hw], "[0,2,0,0,0]");
        let v = l.space.basis_vector(hw);
        assert_eq!(l.g().at(-1, 1).apply(&v)[hw], Scalar::int(-2));
        assert!(l.g().at(-2, 2).apply(&v).iter().all(Zero::is_zero));
    }

    #[test]
    fn trivial_js_has_zero_generators() {
        let l = build_js_quadratic(&case(Family::SoEven, 2), 0, None).unwrap();
        assert_eq!(l.dim(), 1);
        assert!(l.g().is_zero());
    }

    #[test]
    fn product_generators_add() {
        let c = case(Family::SoEven, 2);
        let s = build_spinorial_linear(&c);
        let p = build_product(&s, &s, &Scalar::int(0)).unwrap();
        assert_eq!(p.order(), 2);
        let expect = s.g().kron_left(s.dim()).add(&s.g().kron_right(s.dim()));
        assert_eq!(*p.g(), expect);
        // weights add on the product vacuum
        let v = p.space.basis_vector(0);
        assert_eq!(p.g().at(-1, 1).apply(&v)[0], Scalar::int(-1));
        let other = build_spinorial_linear(&case(Family::SoOdd, 2));
        assert!(build_product(&s, &other, &Scalar::int(0)).is_err());
    }

    #[test]
    fn gl2_chain_shapes() {
        let empty = build_gl2_js_chain(&[]).unwrap();
        assert_eq!((empty.dim(), empty.order()), (1, 0));
        assert!(build_gl2_js_chain(&[(Scalar::int(0), -1)]).is_err());
        let l = build_gl2_js_chain(&[(Scalar::int(0), 1), (Scalar::frac(1, 2), 1)]).unwrap();
        assert_eq!((l.dim(), l.order()), (4, 2));
        assert!(gl2_qdet(&l).is_some());
    }

    #[test]
    fn js_cyclic_module_is_harmonic() {
        // degree-2 layer of so(5) splits off the invariant x·x
        let l = build_js_irreducible(&case(Family::SoOdd, 2), 2, None).unwrap();
        assert_eq!(l.dim(), 14);
        let l = build_js_irreducible(&case(Family::Sp, 2), 1, None).unwrap();
        assert_eq!(l.dim(), 4);
        let h = build_heisenberg_linear(&case(Family::Sp, 1), &Scalar::int(1), 2).unwrap();
        assert!(cyclic_submodule(&h, &h.space.basis_vector(0)).is_err());
    }

    #[test]
    fn fusion_of_trivial_chain_is_metric() {
        let l = build_gl2_js_chain(&[(Scalar::int(0), 0)]).unwrap();
        let f = fuse_so3_from_gl2(&l).unwrap();
        assert_eq!(f.lop.order(), 2);
        for k in 0..2 {
            assert!(f.lop.coeffs[k].metric_multiple(&[0]).is_some());
        }
    }
}
