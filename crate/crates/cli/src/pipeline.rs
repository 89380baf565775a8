//! construct → verify → weights → finiteness.

use std::time::Instant;

use yanglab::lops::{
    build_gl2_js_chain, build_heisenberg_linear, build_js_irreducible, build_js_quadratic,
    build_product, build_spinorial_linear, build_spinorial_linear_truncated, fuse_so3_from_gl2,
    Gl2LOperator, LOperator,
};
use yanglab::structure::{check_ybe, sp2_gl2_factor, Family};
use yanglab::verify::{
    center_function, check_adjoint, check_chi3, check_lie, check_linear_constraint, check_rll_mode,
    check_symmetric_constraints, check_w_tensor, CheckReport,
};
use yanglab::weights::{
    analyze, check_fusion, check_sp2_gl2_embedding, drinfeld_single, drinfeld_test, gl2_ratio,
    gl2_weights, DrinfeldResult,
};
use yanglab::{Error, Scalar};

use crate::config::{FactorKind, OpKind, RunConfig};
use crate::report::{Gl2Weights, Report, Timed};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stage {
    RCheck,
    Construct,
    Verify,
    Weights,
    Finiteness,
    All,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::RCheck => "r-check",
            Stage::Construct => "construct",
            Stage::Verify => "verify",
            Stage::Weights => "weights",
            Stage::Finiteness => "finiteness",
            Stage::All => "all",
        }
    }
}

enum Built {
    L(LOperator),
    Gl2(Gl2LOperator),
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, u64) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed().as_micros() as u64)
}

fn factor(cfg: &RunConfig, kind: FactorKind, ell: &Scalar) -> Result<LOperator, Error> {
    match kind {
        FactorKind::Spinor => Ok(spinor(cfg)),
        FactorKind::Heisenberg => build_heisenberg_linear(&cfg.case, ell, cfg.trunc),
    }
}

fn spinor(cfg: &RunConfig) -> LOperator {
    match cfg.spinor_trunc {
        Some(cap) => build_spinorial_linear_truncated(&cfg.case, cap),
        None => build_spinorial_linear(&cfg.case),
    }
}

fn build(cfg: &RunConfig, report: &mut Report) -> Result<Built, Error> {
    let built = match cfg.op {
        OpKind::Spinor => Built::L(spinor(cfg)),
        OpKind::Heisenberg => Built::L(build_heisenberg_linear(&cfg.case, &cfg.ell, cfg.trunc)?),
        OpKind::Js if cfg.full_layer => {
            Built::L(build_js_quadratic(&cfg.case, cfg.two_l, cfg.k.clone())?)
        }
        OpKind::Js => Built::L(build_js_irreducible(&cfg.case, cfg.two_l, cfg.k.clone())?),
        OpKind::Product => {
            let l1 = factor(cfg, cfg.left, &cfg.ell)?;
            let l2 = factor(cfg, cfg.right, &cfg.ell2)?;
            Built::L(build_product(&l1, &l2, &cfg.delta)?)
        }
        OpKind::Gl2chain => Built::Gl2(build_gl2_js_chain(&cfg.chain)?),
        OpKind::Fuse3 => {
            let fused = fuse_so3_from_gl2(&build_gl2_js_chain(&cfg.chain)?)?;
            // weight formulas assume an ε-antisymmetric G
            let (mut l, _) = fused
                .lop
                .centered()
                .ok_or_else(|| Error::Domain("fused operator cannot be centered".into()))?;
            l.hw_hint = Some(fused.hw);
            report
                .construction
                .insert("qdet".into(), fused.qdet.to_string());
            report
                .construction
                .insert("normalization".into(), fused.normalization.to_string());
            Built::L(l)
        }
    };
    match &built {
        Built::L(l) => {
            report.space = Some(l.space.summary());
            report.construction.insert("label".into(), l.label.clone());
            report
                .construction
                .insert("order".into(), l.order().to_string());
            report.construction.extend(l.params.clone());
        }
        Built::Gl2(g) => {
            report.space = Some(g.space.summary());
            report
                .construction
                .insert("label".into(), "gl2_chain".into());
            report
                .construction
                .insert("order".into(), g.order().to_string());
        }
    }
    Ok(built)
}

fn not_applicable(name: &str, what: &str) -> Error {
    Error::Domain(format!("check `{name}` does not apply to {what}"))
}

fn run_check(cfg: &RunConfig, l: &LOperator, name: &str) -> Result<Vec<CheckReport>, Error> {
    let rep = match name {
        "rll" => check_rll_mode(l, cfg.mode, cfg.points),
        "lie" => check_lie(l),
        "adjoint" => check_adjoint(l),
        "constraint" => match l.order() {
            1 => check_linear_constraint(l),
            2 => check_symmetric_constraints(l),
            s => return Err(Error::Unsupported(format!("constraints of order {s}"))),
        },
        "center" => center_function(l).1,
        "w" => check_w_tensor(l),
        "chi3" => check_chi3(l),
        "sp2_gl2" => {
            if l.case.family != Family::Sp || l.case.m != 1 {
                return Err(not_applicable(name, &l.case.name()));
            }
            check_sp2_gl2_embedding(l)?
        }
        _ => {
            return Err(not_applicable(
                name,
                &format!("the {} construction", l.label),
            ))
        }
    };
    Ok(vec![rep])
}

fn verify(cfg: &RunConfig, built: &Built, report: &mut Report) -> Result<(), Error> {
    for name in &cfg.checks {
        let (reps, micros) = match built {
            Built::L(l) => timed(|| run_check(cfg, l, name)),
            Built::Gl2(g) if name == "fusion" => timed(|| check_fusion(g)),
            Built::Gl2(_) => return Err(not_applicable(name, "a gl(2) chain")),
        };
        for value in reps? {
            report.checks.push(Timed { value, micros });
        }
    }
    Ok(())
}

fn weights(built: &Built, report: &mut Report) -> Result<(), Error> {
    match built {
        Built::L(l) => report.weights = analyze(l)?,
        Built::Gl2(g) => {
            report.gl2 = Some(Gl2Weights {
                weights: gl2_weights(g)?,
                ratio: gl2_ratio(g)?,
            })
        }
    }
    Ok(())
}

fn finiteness(cfg: &RunConfig, report: &mut Report) -> Result<(), Error> {
    let result = match (&report.gl2, report.weights.first()) {
        (Some(g), _) => {
            let e = drinfeld_single(&g.ratio, &Scalar::int(1), 1)?;
            DrinfeldResult {
                exists: e.exists,
                entries: vec![e],
            }
        }
        (None, Some(w)) => drinfeld_test(&w.ratios, &cfg.case)?,
        (None, None) => {
            return Err(Error::Domain(
                "no weight data for the finiteness test".into(),
            ))
        }
    };
    report.drinfeld = Some(result);
    Ok(())
}

fn r_check(cfg: &RunConfig, report: &mut Report) -> Result<(), Error> {
    let (value, micros) = timed(|| check_ybe(&cfg.case));
    report.ybe.push(Timed { value, micros });
    if cfg.case.family == Family::Sp && cfg.case.m == 1 {
        let (phi, micros) = timed(sp2_gl2_factor);
        let expected = yanglab::Poly::new(vec![Scalar::int(2), Scalar::int(2)]);
        let phi = phi?;
        let value = CheckReport {
            name: "sp2_gl2_r".into(),
            pass: phi == expected,
            scalars: [("factor".to_string(), phi.to_string())]
                .into_iter()
                .collect(),
            counterexample: None,
            note: Some("R^sp(2)(u) = factor(u) · R^gl(2)(u/2)".into()),
        };
        report.checks.push(Timed { value, micros });
    }
    Ok(())
}

/// Runs the requested stage and all stages it depends on.
pub fn run(stage: Stage, cfg: &RunConfig) -> Result<Report, Error> {
    let mut echo = cfg.clone();
    echo.json = None;
    echo.jobs = None;
    let mut report = Report::new(stage.name(), echo);
    let mark = |report: &mut Report, key: &str, t: Instant| {
        report
            .stage_micros
            .insert(key.into(), t.elapsed().as_micros() as u64);
    };
    if matches!(stage, Stage::RCheck | Stage::All) {
        let t = Instant::now();
        r_check(cfg, &mut report)?;
        mark(&mut report, "r_check", t);
    }
    if stage != Stage::RCheck {
        let t = Instant::now();
        let built = build(cfg, &mut report)?;
        mark(&mut report, "construct", t);
        if matches!(stage, Stage::Verify | Stage::All) {
            let t = Instant::now();
            verify(cfg, &built, &mut report)?;
            mark(&mut report, "verify", t);
        }
        if matches!(stage, Stage::Weights | Stage::Finiteness | Stage::All) {
            let t = Instant::now();
            weights(&built, &mut report)?;
            mark(&mut report, "weights", t);
        }
        if matches!(stage, Stage::Finiteness | Stage::All) {
            let t = Instant::now();
            finiteness(cfg, &mut report)?;
            mark(&mut report, "finiteness", t);
        }
    }
    report.pass = report.verdict();
    Ok(report)
}
