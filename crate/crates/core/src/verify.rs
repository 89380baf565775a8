//! Exact verification of the algebraic identities an L-operator must obey.
//!
//! Every check compares operators exactly on the columns where the
//! truncation boundary cannot interfere (see [`LOperator::safe_columns`]).
//! Index tuples are checked in parallel; the reported counterexample is
//! always the lexicographically first failing tuple.

use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::BiPoly;
use crate::lops::{pairs, scalar_poly, LOperator, OpMatrix};
use crate::structure::{first_entry, CaseDescriptor};
use crate::{BiPolyS, Op, Poly, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub indices: Vec<i64>,
    pub residual: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub pass: bool,
    /// Extracted constants, exact and string-serialized.
    pub scalars: BTreeMap<String, String>,
    pub counterexample: Option<Counterexample>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckReport {
    pub(crate) fn new(name: &str, counterexample: Option<Counterexample>) -> Self {
        CheckReport {
            name: name.into(),
            pass: counterexample.is_none(),
            scalars: BTreeMap::new(),
            counterexample,
            note: None,
        }
    }

    pub(crate) fn failed(name: &str, indices: Vec<i64>, residual: impl Into<String>) -> Self {
        Self::new(
            name,
            Some(Counterexample {
                indices,
                residual: residual.into(),
            }),
        )
    }

    pub fn with_scalar(mut self, key: &str, value: impl ToString) -> Self {
        self.scalars.insert(key.into(), value.to_string());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn scalar(&self, key: &str) -> Option<&str> {
        self.scalars.get(key).map(String::as_str)
    }
}

/// Exact symbolic expansion, or evaluation at sample points (a fast smoke
/// test that proves nothing).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    #[default]
    Exact,
    Sample,
}

/// Deterministic rational sample points `(u_j, v_j)`.
pub fn sample_points(count: usize) -> Vec<(Scalar, Scalar)> {
    (0..count as i64)
        .map(|j| (Scalar::frac(2 * j + 3, 7), Scalar::frac(1 - 3 * j, 5)))
        .collect()
}

fn scalar_of(i: i64) -> Scalar {
    Scalar::int(i)
}

// ---------------------------------------------------------------------------
// Lie algebra and adjoint action
// ---------------------------------------------------------------------------

/// `[G_{ab}, X_{cd}] = −ε_{cb}X_{ad} + ε_{ad}X_{cb} + ε_{ac}X_{bd} − ε_{db}X_{ca}`
/// for all index tuples, on the given columns.
pub fn check_adjoint_relation(
    name: &str,
    case: &CaseDescriptor,
    g: &OpMatrix,
    x: &OpMatrix,
    cols: &[usize],
) -> CheckReport {
    let pp = pairs(case);
    let count = pp.len() * pp.len();
    let first = (0..count).into_par_iter().find_map_first(|t| {
        let (a, b) = pp[t / pp.len()];
        let (c, d) = pp[t % pp.len()];
        let lhs = g
            .at(a, b)
            .mul(&x.at(c, d).mask_columns(cols))
            .sub(&x.at(c, d).mul(&g.at(a, b).mask_columns(cols)));
        let mut rhs = Op::zero(g.dim(), g.dim());
        for (w, op) in [
            (-case.metric(c, b), x.at(a, d)),
            (case.metric(a, d), x.at(c, b)),
            (case.metric(a, c), x.at(b, d)),
            (-case.metric(d, b), x.at(c, a)),
        ] {
            if w != 0 {
                rhs.add_scaled_assign(&scalar_of(w), op);
            }
        }
        lhs.first_difference(&rhs, cols).map(|(r, col, diff)| {
            (
                vec![a, b, c, d],
                format!("entry ({r},{col}) differs by {diff}"),
            )
        })
    });
    match first {
        None => CheckReport::new(name, None),
        Some((idx, res)) => CheckReport::failed(name, idx, res),
    }
}

/// Lie algebra relations among the `G_{ab}`.
pub fn check_lie(l: &LOperator) -> CheckReport {
    check_adjoint_relation("lie", &l.case, l.g(), l.g(), &l.safe_columns(2))
}

/// Adjoint action of `G` on `H`.
pub fn check_adjoint(l: &LOperator) -> CheckReport {
    let h = if l.order() >= 2 { l.h() } else { l.g().clone() };
    check_adjoint_relation("adjoint", &l.case, l.g(), &h, &l.safe_columns(2))
}

// ---------------------------------------------------------------------------
// RLL
// ---------------------------------------------------------------------------

/// Mixed-index coefficient lists of an L-operator at the two spectral
/// parameters, with right factors masked to safe columns.
struct RllData {
    u: HashMap<(i64, i64), Vec<Op>>,
    v: HashMap<(i64, i64), Vec<Op>>,
    u_masked: HashMap<(i64, i64), Vec<Op>>,
    v_masked: HashMap<(i64, i64), Vec<Op>>,
}

/// `p(u)·q(v)` as a bivariate operator polynomial (`u_first` places the
/// `u`-factor on the left).
fn uv_product(pu: &[Op], qv: &[Op], u_first: bool) -> BiPoly<Op> {
    let mut out = BiPoly::zero();
    for (i, x) in pu.iter().enumerate() {
        for (j, y) in qv.iter().enumerate() {
            let prod = if u_first { x.mul(y) } else { y.mul(x) };
            out.add_term(i as u32, j as u32, &prod);
        }
    }
    out
}

fn scale_bipoly(s: &BiPolyS, p: &BiPoly<Op>) -> BiPoly<Op> {
    s.mul_with(p, |c, op| op.scale(c))
}

/// Scalar coefficient functions of an R-matrix `r_I·1 + r_P·P + r_K·K`.
struct RCoeffs {
    id: BiPolyS,
    perm: BiPolyS,
    k: Option<BiPolyS>,
}

fn difference_poly(coeffs: &[i64], beta: &Scalar, with_beta: bool) -> BiPolyS {
    let _ = coeffs;
    let d = BiPolyS::monomial(1, 0, Scalar::int(1)).add(&BiPolyS::monomial(0, 1, Scalar::int(-1)));
    if with_beta {
        d.add(&BiPolyS::monomial(0, 0, beta.clone()))
    } else {
        d
    }
}

/// K-term sums keyed by an index pair.
type PairSums = HashMap<(i64, i64), BiPoly<Op>>;

/// Generic RLL comparison over mixed indices. `lhs_k`/`rhs_k` supply the
/// metric weights for the K-terms when present.
fn rll_engine(
    name: &str,
    idx: &[i64],
    data: &RllData,
    r: &RCoeffs,
    case: Option<&CaseDescriptor>,
) -> CheckReport {
    let n = idx.len();
    // K-sums, indexed by (c1, c2) and (a1, a2)
    let (s1, s2): (PairSums, PairSums) = match (case, &r.k) {
        (Some(case), Some(_)) => {
            let idx_pairs: Vec<(i64, i64)> = idx
                .iter()
                .flat_map(|&x| idx.iter().map(move |&y| (x, y)))
                .collect();
            let s1 = idx_pairs
                .par_iter()
                .map(|&(c1, c2)| {
                    let mut acc = BiPoly::zero();
                    for &b in idx {
                        let w = case.metric(b, -b);
                        let t = uv_product(&data.u[&(b, c1)], &data.v_masked[&(-b, c2)], true);
                        acc.add_assign(&t.map(|op| op.scale(&scalar_of(w))));
                    }
                    ((c1, c2), acc)
                })
                .collect();
            let s2 = idx_pairs
                .par_iter()
                .map(|&(a1, a2)| {
                    let mut acc = BiPoly::zero();
                    for &b in idx {
                        let w = case.metric_inv(b, -b);
                        let t = uv_product(&data.u_masked[&(a1, b)], &data.v[&(a2, -b)], false);
                        acc.add_assign(&t.map(|op| op.scale(&scalar_of(w))));
                    }
                    ((a1, a2), acc)
                })
                .collect();
            (s1, s2)
        }
        _ => (HashMap::new(), HashMap::new()),
    };
    let count = n * n * n * n;
    let first = (0..count).into_par_iter().find_map_first(|t| {
        let (a1, a2, c1, c2) = (
            idx[t / (n * n * n)],
            idx[(t / (n * n)) % n],
            idx[(t / n) % n],
            idx[t % n],
        );
        let mut lhs = scale_bipoly(
            &r.id,
            &uv_product(&data.u[&(a1, c1)], &data.v_masked[&(a2, c2)], true),
        );
        lhs.add_assign(&scale_bipoly(
            &r.perm,
            &uv_product(&data.u[&(a2, c1)], &data.v_masked[&(a1, c2)], true),
        ));
        let mut rhs = scale_bipoly(
            &r.id,
            &uv_product(&data.u_masked[&(a1, c1)], &data.v[&(a2, c2)], false),
        );
        rhs.add_assign(&scale_bipoly(
            &r.perm,
            &uv_product(&data.u_masked[&(a1, c2)], &data.v[&(a2, c1)], false),
        ));
        if let (Some(case), Some(rk)) = (case, &r.k) {
            let w_up = case.metric_inv(a1, a2);
            if w_up != 0 {
                lhs.add_assign(
                    &scale_bipoly(rk, &s1[&(c1, c2)]).map(|op| op.scale(&scalar_of(w_up))),
                );
            }
            let w_down = case.metric(c1, c2);
            if w_down != 0 {
                rhs.add_assign(
                    &scale_bipoly(rk, &s2[&(a1, a2)]).map(|op| op.scale(&scalar_of(w_down))),
                );
            }
        }
        lhs.sub_assign(&rhs);
        first_entry(&lhs)
            .map(|(r, c, res)| (vec![a1, a2, c1, c2], format!("entry ({r},{c}): {res}")))
    });
    match first {
        None => CheckReport::new(name, None),
        Some((indices, res)) => CheckReport::failed(name, indices, res),
    }
}

fn mixed_table(
    l: &LOperator,
    cols: Option<&[usize]>,
    at: Option<&Scalar>,
) -> HashMap<(i64, i64), Vec<Op>> {
    let idx = l.case.indices();
    let keys: Vec<(i64, i64)> = idx
        .iter()
        .flat_map(|&a| idx.iter().map(move |&b| (a, b)))
        .collect();
    keys.into_par_iter()
        .map(|(a, b)| {
            let mut coeffs = l.mixed(a, b);
            if let Some(x) = at {
                coeffs = vec![eval_op_poly(&coeffs, x)];
            }
            if let Some(cols) = cols {
                coeffs = coeffs.iter().map(|c| c.mask_columns(cols)).collect();
            }
            ((a, b), coeffs)
        })
        .collect()
}

fn eval_op_poly(p: &[Op], x: &Scalar) -> Op {
    let mut acc = Op::zero(p[0].nrows(), p[0].ncols());
    let mut power = Scalar::int(1);
    for c in p {
        acc.add_scaled_assign(&power, c);
        power = power * x.clone();
    }
    acc
}

/// `R₁₂(u−v)L₁(u)L₂(v) = L₂(v)L₁(u)R₁₂(u−v)` with the fundamental R-matrix,
/// expanded exactly in `(u, v)`.
pub fn check_rll(l: &LOperator) -> CheckReport {
    check_rll_mode(l, Mode::Exact, 0)
}

pub fn check_rll_mode(l: &LOperator, mode: Mode, points: usize) -> CheckReport {
    let case = &l.case;
    let idx = case.indices();
    let cols = l.safe_columns(2);
    let diff = difference_poly(&[], &case.beta, false);
    let diff_beta = difference_poly(&[], &case.beta, true);
    let r = RCoeffs {
        id: diff.mul(&diff_beta),
        perm: diff_beta.clone(),
        k: Some(diff.map(|c| -c.clone() * case.eps_scalar())),
    };
    match mode {
        Mode::Exact => {
            let u = mixed_table(l, None, None);
            let u_masked = mixed_table(l, Some(&cols), None);
            let data = RllData {
                v: u.clone(),
                v_masked: u_masked.clone(),
                u,
                u_masked,
            };
            rll_engine("rll", &idx, &data, &r, Some(case))
        }
        Mode::Sample => {
            for (u0, v0) in sample_points(points.max(1)) {
                let data = RllData {
                    u: mixed_table(l, None, Some(&u0)),
                    v: mixed_table(l, None, Some(&v0)),
                    u_masked: mixed_table(l, Some(&cols), Some(&u0)),
                    v_masked: mixed_table(l, Some(&cols), Some(&v0)),
                };
                let at = |p: &BiPolyS| BiPolyS::monomial(0, 0, p.eval(&u0, &v0));
                let rs = RCoeffs {
                    id: at(&r.id),
                    perm: at(&r.perm),
                    k: r.k.as_ref().map(at),
                };
                let rep = rll_engine("rll", &idx, &data, &rs, Some(case));
                if !rep.pass {
                    return rep.with_note(format!("sampled at u={u0}, v={v0}"));
                }
            }
            CheckReport::new("rll", None)
                .with_note(format!("sampled at {} points; not a proof", points.max(1)))
        }
    }
}

/// gl(2)-type RLL with `R(u) = u·1 + σP`, for an operator given by its four
/// entries `L_{αβ}(u)` (row-major, ascending coefficients).
pub fn check_rll_gl2(
    name: &str,
    entries: &[Vec<Op>; 4],
    cols: &[usize],
    sigma: i64,
) -> CheckReport {
    let idx = [1i64, 2];
    let key = |a: i64, b: i64| ((a - 1) * 2 + (b - 1)) as usize;
    let table = |masked: bool| -> HashMap<(i64, i64), Vec<Op>> {
        let mut t = HashMap::new();
        for a in idx {
            for b in idx {
                let e = &entries[key(a, b)];
                let e = if masked {
                    e.iter().map(|c| c.mask_columns(cols)).collect()
                } else {
                    e.clone()
                };
                t.insert((a, b), e);
            }
        }
        t
    };
    let data = RllData {
        u: table(false),
        v: table(false),
        u_masked: table(true),
        v_masked: table(true),
    };
    let r = RCoeffs {
        id: difference_poly(&[], &Scalar::int(0), false),
        perm: BiPolyS::monomial(0, 0, scalar_of(sigma)),
        k: None,
    };
    rll_engine(name, &idx, &data, &r, None)
}

// ---------------------------------------------------------------------------
// polynomial constraints
// ---------------------------------------------------------------------------

fn metric_check(name: &str, m: &OpMatrix, cols: &[usize], key: &str) -> CheckReport {
    match m.metric_multiple(cols) {
        Some(c) => CheckReport::new(name, None).with_scalar(key, c),
        None => {
            let (a, b, res) = off_metric_witness(m, cols);
            CheckReport::failed(name, vec![a, b], format!("{key}: {res}"))
        }
    }
}

/// First entry that keeps `m` from being a multiple of `ε_{ab}`.
fn off_metric_witness(m: &OpMatrix, cols: &[usize]) -> (i64, i64, String) {
    let case = m.case();
    let reference = pairs(case)
        .into_iter()
        .filter(|&(a, b)| case.metric(a, b) != 0)
        .find_map(|(a, b)| {
            m.at(a, b)
                .scalar_on_columns(cols)
                .map(|s| s * Scalar::int(case.metric(a, b)))
        })
        .unwrap_or_else(Scalar::zero);
    let target = OpMatrix::metric(case, m.dim()).scale(&reference);
    m.first_difference(&target, cols)
        .unwrap_or((0, 0, "not a multiple of the metric".into()))
}

/// `G∘G + βG = c₂·ε` with `n c₂ = tr G²`.
pub fn check_linear_constraint(l: &LOperator) -> CheckReport {
    let g = l.g();
    let cols = l.safe_columns(2);
    let sq = g.circ(g);
    let rep = metric_check(
        "linear_constraint",
        &sq.add(&g.scale(&l.case.beta)),
        &cols,
        "c2",
    );
    if let Some(tr) = sq.trace().scalar_on_columns(&cols) {
        let n = Scalar::int(l.case.n as i64);
        rep.with_scalar("tr_g2_over_n", tr * n.inv().expect("n > 0"))
    } else {
        rep
    }
}

/// The four symmetric constraints of a quadratic operator, i.e. the
/// coefficient matrices `C^{(2.1)}, C^{(2.3)}, C^{(2.6)}, C^{(2.8)}` of the
/// center generating function, each required to be a multiple of `ε`.
pub fn symmetric_constraint_matrices(l: &LOperator) -> [OpMatrix; 4] {
    let g = l.g();
    let h = l.h();
    let eps = l.case.eps_scalar();
    let beta = &l.case.beta;
    let c1 = g.add(&g.transpose().scale(&eps));
    let c3 = h
        .add(&h.transpose().scale(&eps))
        .add(&g.tprod(g))
        .sub(&g.scale(beta));
    let c6 = h
        .tprod(g)
        .add(&g.tprod(&h))
        .sub(&h.sub(&h.transpose().scale(&eps)).scale(beta));
    let c8 = h
        .tprod(&h)
        .sub(&g.tprod(&h).scale(beta))
        .add(&h.scale(&(beta.clone() * beta.clone())));
    [c1, c3, c6, c8]
}

pub const CONSTRAINT_KEYS: [&str; 4] = ["c21", "c23", "c26", "c28"];

pub fn check_symmetric_constraints(l: &LOperator) -> CheckReport {
    let cols = l.safe_columns(2);
    let mats = symmetric_constraint_matrices(l);
    let mut rep = CheckReport::new("symmetric_constraints", None);
    for (m, key) in mats.iter().zip(CONSTRAINT_KEYS) {
        let r = metric_check("symmetric_constraints", m, &cols, key);
        if !r.pass {
            return r;
        }
        rep.scalars.extend(r.scalars);
    }
    rep
}

/// `W_{ab,cd}` summed over the six orderings.
pub fn check_w_tensor(l: &LOperator) -> CheckReport {
    let g = l.g();
    let case = &l.case;
    let cols = l.safe_columns(2);
    let idx = case.indices();
    let n = idx.len();
    let gm: HashMap<(i64, i64), Op> = pairs(case)
        .into_iter()
        .map(|(a, b)| ((a, b), g.at(a, b).mask_columns(&cols)))
        .collect();
    let first = (0..n * n * n * n).into_par_iter().find_map_first(|t| {
        let (a, b, c, d) = (
            idx[t / (n * n * n)],
            idx[(t / (n * n)) % n],
            idx[(t / n) % n],
            idx[t % n],
        );
        let w = [((a, b), (c, d)), ((a, c), (d, b)), ((a, d), (b, c))]
            .iter()
            .fold(Op::zero(g.dim(), g.dim()), |acc, &(x, y)| {
                acc.add(&g.at(x.0, x.1).mul(&gm[&y]))
                    .add(&g.at(y.0, y.1).mul(&gm[&x]))
            });
        let witness = w
            .entries()
            .next()
            .map(|(r, col, v)| (vec![a, b, c, d], format!("entry ({r},{col}) = {v}")));
        witness
    });
    match first {
        None => CheckReport::new("w_tensor", None),
        Some((i, res)) => CheckReport::failed("w_tensor", i, res),
    }
}

/// `χ³(G) = G³ + (ε+2β)G² + (2εβ − εN)G − N = 0` with `N = ½ tr(G∘G)`.
/// The ½ is the normalization under which the cubic identity holds in the
/// fundamental representation; the full trace does not satisfy it.
pub fn check_chi3(l: &LOperator) -> CheckReport {
    let g = l.g();
    let case = &l.case;
    let cols = l.safe_columns(3);
    let eps = case.eps_scalar();
    let beta = case.beta.clone();
    let g2 = g.circ(g);
    let g3 = g2.circ(g);
    let casimir = g2.trace().scale(&Scalar::frac(1, 2));
    let two = Scalar::int(2);
    let ng = g.map(g.dim(), |x| casimir.mul(x));
    let n_metric = OpMatrix::from_fn(case, g.dim(), |a, b| {
        casimir.scale(&scalar_of(case.metric(a, b)))
    });
    let chi = g3
        .add(&g2.scale(&(eps.clone() + two.clone() * beta.clone())))
        .add(&g.scale(&(two * eps.clone() * beta)))
        .sub(&ng.scale(&eps))
        .sub(&n_metric);
    let zero = OpMatrix::zero(case, g.dim());
    let rep = match chi.first_difference(&zero, &cols) {
        None => CheckReport::new("chi3", None),
        Some((a, b, res)) => CheckReport::failed("chi3", vec![a, b], res),
    };
    match casimir.scalar_on_columns(&cols) {
        Some(c) => rep.with_scalar("n_c2", c),
        None => rep,
    }
}

// ---------------------------------------------------------------------------
// center
// ---------------------------------------------------------------------------

/// `C_{ab}(u) = Σ L_{da}(u−β) ε^{ed} L_{eb}(u)`; passes when `C(u) = c(u)ε`
/// for a scalar polynomial `c(u)` whose coefficients commute with `L`.
pub fn center_function(l: &LOperator) -> (Option<Poly>, CheckReport) {
    let cols = l.safe_columns(2);
    let shifted = l.shift(&-l.case.beta.clone());
    let s = l.order();
    let mut coeffs: Vec<Option<OpMatrix>> = vec![None; 2 * s + 1];
    for (i, x) in shifted.coeffs.iter().enumerate() {
        for (j, y) in l.coeffs.iter().enumerate() {
            let t = x.tprod(y);
            coeffs[i + j] = Some(match &coeffs[i + j] {
                None => t,
                Some(acc) => acc.add(&t),
            });
        }
    }
    let mut c = Vec::with_capacity(coeffs.len());
    for (k, m) in coeffs.into_iter().enumerate() {
        let m = m.expect("filled");
        match m.metric_multiple(&cols) {
            Some(x) => c.push(x),
            None => {
                let (a, b, res) = off_metric_witness(&m, &cols);
                return (
                    None,
                    CheckReport::failed("center", vec![a, b], format!("u^{k}: {res}")),
                );
            }
        }
    }
    let poly = Poly::new(c);
    let rep = CheckReport::new("center", None)
        .with_scalar("c(u)", &poly)
        .with_note("coefficients are scalar, hence commute with every L_{cd}(v)");
    (Some(poly), rep)
}

/// Splits a quartic `c(u)` as `u²(u−β)² + u²(u−β)c₁ + u(u−β)c₃ + u c₆ + c₈`.
pub fn decompose_center(c: &Poly, beta: &Scalar) -> Option<[Scalar; 4]> {
    if c.degree() != Some(4) || c.coeff(4) != Scalar::int(1) {
        return None;
    }
    let c1 = c.coeff(3) + Scalar::int(2) * beta.clone();
    let c3 = c.coeff(2) - beta.clone() * beta.clone() + beta.clone() * c1.clone();
    let c6 = c.coeff(1) + beta.clone() * c3.clone();
    let c8 = c.coeff(0);
    Some([c1, c3, c6, c8])
}

/// Runs `check` at each parameter value; passes only if all pass. The
/// identity being certified is polynomial of degree `≤ degree` in the
/// parameter, so `degree + 1` points suffice.
pub fn certify_in_parameter(
    name: &str,
    points: &[Scalar],
    degree: usize,
    check: impl Fn(&Scalar) -> CheckReport,
) -> CheckReport {
    let mut rep = CheckReport::new(name, None)
        .with_scalar("degree_bound", degree)
        .with_scalar("points", points.len());
    if points.len() <= degree {
        return CheckReport::failed(
            name,
            vec![],
            "too few parameter points for the degree bound",
        );
    }
    for p in points {
        let r = check(p);
        for (k, v) in &r.scalars {
            rep.scalars.insert(format!("{k}@{p}"), v.clone());
        }
        if !r.pass {
            let mut r = r;
            r.name = name.into();
            return r.with_note(format!("failed at parameter {p}"));
        }
    }
    rep
}

/// Scalar polynomial `c(u)` of an operator polynomial, or `None`.
pub fn scalar_op_poly(p: &[Op]) -> Option<Poly> {
    scalar_poly(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lops::{
        build_heisenberg_linear, build_js_irreducible, build_js_quadratic, build_product,
        build_spinorial_linear,
    };
    use crate::structure::{make_case, Family};

    fn case(f: Family, m: usize) -> CaseDescriptor {
        make_case(f, m).unwrap()
    }

    #[test]
    fn lie_spinor_and_negative_control() {
        let c = case(Family::SoEven, 2);
        let l = build_spinorial_linear(&c);
        assert!(check_lie(&l).pass);
        let mut g = l.g().clone();
        g.set(-1, 2, Op::zero(l.dim(), l.dim()));
        let rep = check_adjoint_relation("lie", &c, &g, &g, &l.safe_columns(2));
        assert!(!rep.pass);
        assert!(rep.counterexample.is_some());
    }

    #[test]
    fn lie_heisenberg_truncated() {
        let l = build_heisenberg_linear(&case(Family::SoEven, 2), &Scalar::int(1), 3).unwrap();
        assert!(check_lie(&l).pass);
        let l = build_heisenberg_linear(&case(Family::Sp, 2), &Scalar::int(2), 3).unwrap();
        assert!(check_lie(&l).pass);
    }

    #[test]
    fn rll_spinor_small() {
        for (f, m) in [(Family::SoOdd, 1), (Family::SoEven, 2), (Family::Sp, 1)] {
            let rep = check_rll(&build_spinorial_linear(&case(f, m)));
            assert!(rep.pass, "{f} {m}: {rep:?}");
        }
    }

    #[test]
    fn rll_js_and_negative_control() {
        let l = build_js_quadratic(&case(Family::SoOdd, 1), 2, None).unwrap();
        assert!(check_rll(&l).pass);
        let mut broken = l.clone();
        broken.coeffs[0] = OpMatrix::zero(&l.case, l.dim());
        assert!(!check_rll(&broken).pass);
    }

    #[test]
    fn rll_sample_mode_agrees() {
        let l = build_spinorial_linear(&case(Family::SoEven, 2));
        let rep = check_rll_mode(&l, Mode::Sample, 3);
        assert!(rep.pass);
        assert!(rep.note.unwrap().contains("not a proof"));
    }

    #[test]
    fn linear_constraint_values() {
        let rep = check_linear_constraint(&build_spinorial_linear(&case(Family::SoOdd, 1)));
        assert_eq!(rep.scalar("c2"), Some("1/2"));
        let l = build_heisenberg_linear(&case(Family::Sp, 1), &Scalar::int(2), 3).unwrap();
        assert_eq!(check_linear_constraint(&l).scalar("c2"), Some("8"));
        let js = build_js_quadratic(&case(Family::SoEven, 2), 2, None).unwrap();
        assert!(!check_linear_constraint(&js).pass);
    }

    #[test]
    fn symmetric_constraints_js_so5() {
        let l = build_js_irreducible(&case(Family::SoOdd, 2), 2, None).unwrap();
        let rep = check_symmetric_constraints(&l);
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.scalar("c21"), Some("0"));
        assert_eq!(rep.scalar("c23"), Some("-41/8"));
    }

    #[test]
    fn symmetric_constraints_heisenberg_product() {
        let c = case(Family::SoEven, 2);
        let h = build_heisenberg_linear(&c, &Scalar::int(1), 3).unwrap();
        let p = build_product(&h, &h, &Scalar::int(0)).unwrap();
        let rep = check_symmetric_constraints(&p);
        assert!(rep.pass, "{rep:?}");
        assert_eq!(rep.scalar("c23"), Some("-4"));
    }

    #[test]
    fn w_and_chi3() {
        let js = build_js_irreducible(&case(Family::SoEven, 2), 2, None).unwrap();
        assert!(check_w_tensor(&js).pass);
        assert!(check_chi3(&js).pass);
        let fund = build_js_quadratic(&case(Family::SoOdd, 2), 1, None).unwrap();
        assert!(check_w_tensor(&fund).pass);
        assert!(check_chi3(&fund).pass);
        let sp = build_spinorial_linear(&case(Family::SoEven, 2));
        assert!(!check_w_tensor(&sp).pass);
    }

    #[test]
    fn center_of_trivial_and_js() {
        let trivial = build_js_quadratic(&case(Family::SoOdd, 2), 0, None).unwrap();
        let (c, rep) = center_function(&trivial);
        assert!(rep.pass);
        assert_eq!(c.unwrap().degree(), Some(4));
        let js = build_js_irreducible(&case(Family::SoOdd, 2), 2, None).unwrap();
        let (c, rep) = center_function(&js);
        assert!(rep.pass, "{rep:?}");
        let parts = decompose_center(&c.unwrap(), &js.case.beta).unwrap();
        let sym = check_symmetric_constraints(&js);
        for (p, k) in parts.iter().zip(CONSTRAINT_KEYS) {
            assert_eq!(Some(p.to_string().as_str()), sym.scalar(k), "{k}");
        }
        let (c, rep) = center_function(&build_spinorial_linear(&case(Family::SoOdd, 1)));
        assert!(rep.pass);
        assert_eq!(c.unwrap().degree(), Some(2));
    }
}
