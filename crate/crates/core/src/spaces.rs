//! Explicit representation spaces and the generator operators acting on
//! them: Clifford / oscillator modes for spinors, canonical pairs `x_a, ∂_a`
//! on homogeneous polynomials, and the matrix pairs `x^i_j, ∂^i_j`.
//!
//! Truncated spaces record a per-vector *headroom*: the number of
//! degree-raising generator steps that can be applied before the truncation
//! boundary is reached. Identities are asserted only on columns with enough
//! headroom, which keeps boundary effects out of every check.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::structure::{CaseDescriptor, Family};
use crate::{Error, Op, Result, Scalar};

/// Occupation cap for the bosonic (symplectic) spinor space when none is given.
pub const DEFAULT_BOSON_TRUNCATION: u32 = 6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpaceSummary {
    pub kind: String,
    pub dimension: usize,
    pub variables: usize,
    pub truncation: Option<u32>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RepSpace {
    pub kind: String,
    pub labels: Vec<String>,
    pub grading: Vec<i64>,
    /// `None` means unbounded.
    pub headroom: Vec<Option<u32>>,
    pub variables: usize,
    pub truncation: Option<u32>,
}

impl RepSpace {
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// One-dimensional space of the trivial representation.
    pub fn trivial() -> Self {
        RepSpace {
            kind: "trivial".into(),
            labels: vec!["1".into()],
            grading: vec![0],
            headroom: vec![None],
            variables: 0,
            truncation: None,
        }
    }

    /// Columns that survive `steps` raising steps.
    pub fn safe_columns(&self, steps: u32) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.headroom[i].is_none_or(|h| h >= steps))
            .collect()
    }

    /// Tensor product with basis index `i·dim(other) + j`.
    pub fn tensor(&self, other: &RepSpace) -> RepSpace {
        let mut labels = Vec::with_capacity(self.dim() * other.dim());
        let mut grading = Vec::new();
        let mut headroom = Vec::new();
        for i in 0..self.dim() {
            for j in 0..other.dim() {
                labels.push(format!("{}⊗{}", self.labels[i], other.labels[j]));
                grading.push(self.grading[i] + other.grading[j]);
                headroom.push(match (self.headroom[i], other.headroom[j]) {
                    (Some(a), Some(b)) => Some(a.min(b)),
                    (a, b) => a.or(b),
                });
            }
        }
        RepSpace {
            kind: format!("{}⊗{}", self.kind, other.kind),
            labels,
            grading,
            headroom,
            variables: self.variables + other.variables,
            truncation: match (self.truncation, other.truncation) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            },
        }
    }

    /// Subspace on the given basis positions.
    pub fn subspace(&self, idx: &[usize], kind: &str) -> RepSpace {
        RepSpace {
            kind: kind.into(),
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            grading: idx.iter().map(|&i| self.grading[i]).collect(),
            headroom: idx.iter().map(|&i| self.headroom[i]).collect(),
            variables: self.variables,
            truncation: self.truncation,
        }
    }

    pub fn summary(&self) -> SpaceSummary {
        SpaceSummary {
            kind: self.kind.clone(),
            dimension: self.dim(),
            variables: self.variables,
            truncation: self.truncation,
        }
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::int(0); self.dim()];
        v[i] = Scalar::int(1);
        v
    }
}

/// Named generator operators on a space.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub case: CaseDescriptor,
    pub ops: BTreeMap<String, Op>,
}

impl GeneratorSet {
    pub fn get(&self, name: &str) -> &Op {
        self.ops
            .get(name)
            .unwrap_or_else(|| panic!("no generator named {name}"))
    }

    pub fn c(&self, a: i64) -> &Op {
        self.get(&format!("c_{a}"))
    }

    pub fn x(&self, a: i64) -> &Op {
        self.get(&format!("x_{a}"))
    }

    pub fn d(&self, a: i64) -> &Op {
        self.get(&format!("d_{a}"))
    }

    /// Matrix variable `x^i_j`, `1 ≤ i, j ≤ m`.
    pub fn xm(&self, i: usize, j: usize) -> &Op {
        self.get(&format!("x^{i}_{j}"))
    }

    pub fn dm(&self, i: usize, j: usize) -> &Op {
        self.get(&format!("d^{i}_{j}"))
    }
}

// ---------------------------------------------------------------------------
// monomial bookkeeping
// ---------------------------------------------------------------------------

/// All exponent vectors of length `vars` and total degree `deg`, first
/// variable highest first.
fn exponents(vars: usize, deg: u32) -> Vec<Vec<u32>> {
    if vars == 0 {
        return if deg == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in (0..=deg).rev() {
        for mut rest in exponents(vars - 1, deg - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Graded-lexicographic monomial basis over the degree range.
fn monomial_basis(vars: usize, lo: u32, hi: u32) -> Vec<Vec<u32>> {
    (lo..=hi).flat_map(|d| exponents(vars, d)).collect()
}

fn label_of(e: &[u32]) -> String {
    let parts: Vec<String> = e.iter().map(u32::to_string).collect();
    format!("[{}]", parts.join(","))
}

struct MonomialSpace {
    basis: Vec<Vec<u32>>,
    pos: HashMap<Vec<u32>, usize>,
}

impl MonomialSpace {
    fn new(basis: Vec<Vec<u32>>) -> Self {
        let pos = basis
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, e)| (e, i))
            .collect();
        MonomialSpace { basis, pos }
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Multiplication by variable `k`, dropped where it leaves the basis.
    fn mul_var(&self, k: usize) -> Op {
        let mut op = Op::zero(self.dim(), self.dim());
        for (col, e) in self.basis.iter().enumerate() {
            let mut f = e.clone();
            f[k] += 1;
            if let Some(&row) = self.pos.get(&f) {
                op.add_entry(row, col, Scalar::int(1));
            }
        }
        op
    }

    /// `∂/∂(variable k)`.
    fn diff_var(&self, k: usize) -> Op {
        let mut op = Op::zero(self.dim(), self.dim());
        for (col, e) in self.basis.iter().enumerate() {
            if e[k] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[k] -= 1;
            if let Some(&row) = self.pos.get(&f) {
                op.add_entry(row, col, Scalar::int(i64::from(e[k])));
            }
        }
        op
    }
}

// ---------------------------------------------------------------------------
// spinor spaces
// ---------------------------------------------------------------------------

/// Spinor space with generators `c_a`. Orthogonal cases use the fermionic
/// Fock space of dimension `2^m`; the symplectic case needs `[c_{−i}, c_i] = 1`,
/// which no finite space carries, so it uses bosonic modes truncated at total
/// occupation [`DEFAULT_BOSON_TRUNCATION`].
pub fn spinor_space(case: &CaseDescriptor) -> (RepSpace, GeneratorSet) {
    spinor_space_truncated(case, DEFAULT_BOSON_TRUNCATION)
}

/// As [`spinor_space`] with an explicit occupation cap for the bosonic case
/// (ignored for fermions).
pub fn spinor_space_truncated(case: &CaseDescriptor, cap: u32) -> (RepSpace, GeneratorSet) {
    match case.family {
        Family::Sp => bosonic_space(case, cap),
        _ => fermionic_space(case),
    }
}

fn fermionic_space(case: &CaseDescriptor) -> (RepSpace, GeneratorSet) {
    let m = case.m;
    // occupation vectors, graded-lex, vacuum first
    let basis = monomial_basis(m, 0, m as u32)
        .into_iter()
        .filter(|e| e.iter().all(|&x| x <= 1))
        .collect::<Vec<_>>();
    let ms = MonomialSpace::new(basis);
    let dim = ms.dim();
    let mut ops = BTreeMap::new();
    for i in 0..m {
        let mut create = Op::zero(dim, dim);
        for (col, e) in ms.basis.iter().enumerate() {
            if e[i] == 1 {
                continue;
            }
            let sign = if e[..i].iter().sum::<u32>() % 2 == 0 {
                1
            } else {
                -1
            };
            let mut f = e.clone();
            f[i] = 1;
            create.add_entry(ms.pos[&f], col, Scalar::int(sign));
        }
        let idx = (i + 1) as i64;
        ops.insert(format!("c_{}", -idx), create.transpose());
        ops.insert(format!("c_{idx}"), create);
    }
    if case.has_zero() {
        // (1/√2)(−1)^F
        let half_sqrt2 = Scalar::with_sqrt2(0, 1, 1, 2);
        let c0 = Op::from_triplets(
            dim,
            dim,
            ms.basis.iter().enumerate().map(|(k, e)| {
                let parity = e.iter().sum::<u32>() % 2;
                let v = if parity == 0 {
                    half_sqrt2.clone()
                } else {
                    -half_sqrt2.clone()
                };
                (k, k, v)
            }),
        );
        ops.insert("c_0".into(), c0);
    }
    let space = RepSpace {
        kind: "fermionic".into(),
        labels: ms.basis.iter().map(|e| label_of(e)).collect(),
        grading: ms
            .basis
            .iter()
            .map(|e| e.iter().sum::<u32>() as i64)
            .collect(),
        headroom: vec![None; dim],
        variables: m,
        truncation: None,
    };
    (
        space,
        GeneratorSet {
            case: case.clone(),
            ops,
        },
    )
}

fn bosonic_space(case: &CaseDescriptor, cap: u32) -> (RepSpace, GeneratorSet) {
    let m = case.m;
    let ms = MonomialSpace::new(monomial_basis(m, 0, cap));
    let mut ops = BTreeMap::new();
    for i in 0..m {
        // a† on occupation basis: √(n+1); use the monomial normalization
        // x^n instead, where a† = x and a = ∂ keep entries rational.
        let create = ms.mul_var(i);
        let annihilate = ms.diff_var(i);
        let idx = (i + 1) as i64;
        ops.insert(format!("c_{idx}"), create);
        ops.insert(format!("c_{}", -idx), annihilate);
    }
    let space = RepSpace {
        kind: "bosonic".into(),
        labels: ms.basis.iter().map(|e| label_of(e)).collect(),
        grading: ms
            .basis
            .iter()
            .map(|e| e.iter().sum::<u32>() as i64)
            .collect(),
        // each generator matrix element moves occupation by at most 2
        headroom: ms
            .basis
            .iter()
            .map(|e| Some((cap - e.iter().sum::<u32>()) / 2))
            .collect(),
        variables: m,
        truncation: Some(cap),
    };
    (
        space,
        GeneratorSet {
            case: case.clone(),
            ops,
        },
    )
}

// ---------------------------------------------------------------------------
// homogeneous polynomials in x_a
// ---------------------------------------------------------------------------

/// Homogeneous space of degree `twoL` in the `n` variables `x_a` together
/// with its degree `twoL ± 1` neighbours, and the canonical pairs
/// `∂_a = ε_a ∂/∂x_{−a}`.
#[derive(Clone, Debug)]
pub struct HomogeneousSpace {
    pub space: RepSpace,
    pub gens: GeneratorSet,
    /// Positions of the degree-`twoL` layer, in basis order.
    pub layer: Vec<usize>,
    pub two_l: u32,
}

impl HomogeneousSpace {
    /// The layer itself as a space.
    pub fn layer_space(&self) -> RepSpace {
        let mut s = self.space.subspace(&self.layer, "homogeneous");
        s.headroom = vec![None; self.layer.len()];
        s
    }

    /// Basis position (within the layer) of `x_{−1}^{twoL}`.
    pub fn highest_monomial(&self, case: &CaseDescriptor) -> usize {
        let mut e = vec![0u32; case.n];
        e[case.pos(-1)] = self.two_l;
        let label = label_of(&e);
        self.layer
            .iter()
            .position(|&i| self.space.labels[i] == label)
            .expect("x_{-1}^{2l} lies in the layer")
    }
}

/// Commuting variables for the orthogonal families, Grassmann variables for
/// the symplectic one (`twoL ∈ {0, 1}` there).
pub fn homogeneous_space(case: &CaseDescriptor, two_l: u32) -> Result<HomogeneousSpace> {
    let n = case.n;
    let idx = case.indices();
    let grassmann = case.family == Family::Sp;
    if grassmann && two_l >= 2 {
        return Err(Error::Domain(format!(
            "symplectic homogeneous space needs twoL ∈ {{0,1}}, got {two_l}"
        )));
    }
    let lo = two_l.saturating_sub(1);
    let hi = if grassmann {
        (two_l + 1).min(n as u32)
    } else {
        two_l + 1
    };
    let mut basis = monomial_basis(n, lo, hi);
    if grassmann {
        basis.retain(|e| e.iter().all(|&x| x <= 1));
    }
    let ms = MonomialSpace::new(basis);
    let dim = ms.dim();

    let mut mult = Vec::with_capacity(n);
    let mut diff = Vec::with_capacity(n);
    for k in 0..n {
        if grassmann {
            let (mo, dop) = grassmann_ops(&ms, k);
            mult.push(mo);
            diff.push(dop);
        } else {
            mult.push(ms.mul_var(k));
            diff.push(ms.diff_var(k));
        }
    }
    let mut ops = BTreeMap::new();
    for &a in &idx {
        ops.insert(format!("x_{a}"), mult[case.pos(a)].clone());
        let d = diff[case.pos(-a)].scale(&Scalar::int(case.eps_of(a)));
        ops.insert(format!("d_{a}"), d);
    }
    let layer: Vec<usize> = (0..dim)
        .filter(|&i| ms.basis[i].iter().sum::<u32>() == two_l)
        .collect();
    let space = RepSpace {
        kind: if grassmann {
            "grassmann".into()
        } else {
            "polynomial".into()
        },
        labels: ms.basis.iter().map(|e| label_of(e)).collect(),
        grading: ms
            .basis
            .iter()
            .map(|e| e.iter().sum::<u32>() as i64)
            .collect(),
        headroom: ms
            .basis
            .iter()
            .map(|e| Some(u32::from(e.iter().sum::<u32>() == two_l)))
            .collect(),
        variables: n,
        truncation: Some(hi),
    };
    let _ = dim;
    Ok(HomogeneousSpace {
        space,
        gens: GeneratorSet {
            case: case.clone(),
            ops,
        },
        layer,
        two_l,
    })
}

/// Left multiplication and left derivative for Grassmann variable `k`.
fn grassmann_ops(ms: &MonomialSpace, k: usize) -> (Op, Op) {
    let dim = ms.dim();
    let mut mo = Op::zero(dim, dim);
    let mut dop = Op::zero(dim, dim);
    for (col, e) in ms.basis.iter().enumerate() {
        let before: u32 = e[..k].iter().sum();
        let sign = Scalar::int(if before.is_multiple_of(2) { 1 } else { -1 });
        let mut f = e.clone();
        if e[k] == 0 {
            f[k] = 1;
            if let Some(&row) = ms.pos.get(&f) {
                mo.add_entry(row, col, sign);
            }
        } else {
            f[k] = 0;
            if let Some(&row) = ms.pos.get(&f) {
                dop.add_entry(row, col, sign);
            }
        }
    }
    (mo, dop)
}

// ---------------------------------------------------------------------------
// matrix Heisenberg pairs
// ---------------------------------------------------------------------------

/// Polynomials of degree `≤ D` in the independent entries `y_{kl}` of the
/// ε-antisymmetric matrix `x̂` (`k < l` orthogonal, `k ≤ l` symplectic).
pub fn heisenberg_space(
    case: &CaseDescriptor,
    max_degree: u32,
) -> Result<(RepSpace, GeneratorSet)> {
    if case.family == Family::SoOdd {
        return Err(Error::Unsupported(
            "the matrix Heisenberg construction does not exist for so(2m+1)".into(),
        ));
    }
    if max_degree == 0 {
        return Err(Error::Domain(
            "truncation degree D must be at least 1".into(),
        ));
    }
    let m = case.m;
    let eps = case.eps;
    let mut vars: Vec<(usize, usize)> = Vec::new();
    for k in 1..=m {
        for l in k..=m {
            if l > k || eps == -1 {
                vars.push((k, l));
            }
        }
    }
    let var_of: HashMap<(usize, usize), usize> =
        vars.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let ms = MonomialSpace::new(monomial_basis(vars.len(), 0, max_degree));
    let dim = ms.dim();
    let mult: Vec<Op> = (0..vars.len()).map(|k| ms.mul_var(k)).collect();
    let diff: Vec<Op> = (0..vars.len()).map(|k| ms.diff_var(k)).collect();

    // x^i_j = sign · y_{min,max}
    let entry = |i: usize, j: usize| -> Option<(usize, i64)> {
        if i == j && eps == 1 {
            return None;
        }
        let key = (i.min(j), i.max(j));
        let sign = if i <= j { 1 } else { -eps };
        Some((var_of[&key], sign))
    };
    let mut ops = BTreeMap::new();
    for i in 1..=m {
        for j in 1..=m {
            let (x, d) = match entry(i, j) {
                None => (Op::zero(dim, dim), Op::zero(dim, dim)),
                Some((v, sx)) => {
                    let x = mult[v].scale(&Scalar::int(sx));
                    // ∂^i_j pairs with x^j_i; the diagonal symplectic entry
                    // carries [∂^i_i, x^i_i] = 1 − ε = 2
                    let d = if i == j {
                        diff[v].scale(&Scalar::int(1 - eps))
                    } else {
                        let (_, s_ji) = entry(j, i).expect("off-diagonal entry");
                        diff[v].scale(&Scalar::int(s_ji))
                    };
                    (x, d)
                }
            };
            ops.insert(format!("x^{i}_{j}"), x);
            ops.insert(format!("d^{i}_{j}"), d);
        }
    }
    let space = RepSpace {
        kind: "heisenberg".into(),
        labels: ms.basis.iter().map(|e| label_of(e)).collect(),
        grading: ms
            .basis
            .iter()
            .map(|e| e.iter().sum::<u32>() as i64)
            .collect(),
        headroom: ms
            .basis
            .iter()
            .map(|e| Some(max_degree - e.iter().sum::<u32>()))
            .collect(),
        variables: vars.len(),
        truncation: Some(max_degree),
    };
    Ok((
        space,
        GeneratorSet {
            case: case.clone(),
            ops,
        },
    ))
}

/// Degree-`d` layer of polynomials in two commuting variables with the
/// bilinears `E_{αβ} = x_α ∂_β` (row-major `E11, E12, E21, E22`), which
/// preserve the layer exactly.
pub fn gl2_oscillator_layer(d: u32) -> (RepSpace, [Op; 4]) {
    let ms = MonomialSpace::new(monomial_basis(2, d.saturating_sub(1), d));
    let layer: Vec<usize> = (0..ms.dim())
        .filter(|&i| ms.basis[i].iter().sum::<u32>() == d)
        .collect();
    let e = |a: usize, b: usize| ms.mul_var(a).mul(&ms.diff_var(b)).restrict(&layer, &layer);
    let space = RepSpace {
        kind: "gl2-layer".into(),
        labels: layer.iter().map(|&i| label_of(&ms.basis[i])).collect(),
        grading: vec![i64::from(d); layer.len()],
        headroom: vec![None; layer.len()],
        variables: 2,
        truncation: None,
    };
    (space, [e(0, 0), e(0, 1), e(1, 0), e(1, 1)])
}
