//! Machine-readable run report.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use yanglab::spaces::SpaceSummary;
use yanglab::structure::YbeReport;
use yanglab::verify::CheckReport;
use yanglab::weights::{DrinfeldResult, Ratio, WeightReport};
use yanglab::Poly;

use crate::config::RunConfig;

/// Bumped on any incompatible change of the JSON layout.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Timed<T> {
    #[serde(flatten)]
    pub value: T,
    pub micros: u64,
}

/// Highest-weight data of a gl(2) chain.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Gl2Weights {
    pub weights: [Poly; 2],
    pub ratio: Ratio,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub config: RunConfig,
    #[serde(default)]
    pub space: Option<SpaceSummary>,
    #[serde(default)]
    pub construction: BTreeMap<String, String>,
    #[serde(default)]
    pub ybe: Vec<Timed<YbeReport>>,
    #[serde(default)]
    pub checks: Vec<Timed<CheckReport>>,
    #[serde(default)]
    pub weights: Vec<WeightReport>,
    #[serde(default)]
    pub gl2: Option<Gl2Weights>,
    #[serde(default)]
    pub drinfeld: Option<DrinfeldResult>,
    /// Wall-clock time per pipeline stage; never part of the verdict.
    pub stage_micros: BTreeMap<String, u64>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: &str, config: RunConfig) -> Self {
        Report {
            schema_version: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION").into(),
            command: command.into(),
            config,
            space: None,
            construction: BTreeMap::new(),
            ybe: Vec::new(),
            checks: Vec::new(),
            weights: Vec::new(),
            gl2: None,
            drinfeld: None,
            stage_micros: BTreeMap::new(),
            pass: true,
        }
    }

    /// Conjunction of every verdict in the report.
    pub fn verdict(&self) -> bool {
        self.ybe.iter().all(|r| r.value.pass)
            && self.checks.iter().all(|r| r.value.pass)
            && self.weights.iter().all(WeightReport::all_pass)
            && self.drinfeld.as_ref().is_none_or(|d| d.exists)
    }

    /// Short human-readable listing, one line per verdict.
    pub fn summary(&self) -> String {
        let mark = |ok: bool| if ok { "PASS" } else { "FAIL" };
        let mut out = Vec::new();
        out.push(format!("{} {}", self.command, self.config.case.name()));
        if let Some(s) = &self.space {
            out.push(format!("  space {} dim {}", s.kind, s.dimension));
        }
        for r in &self.ybe {
            out.push(format!("  [{}] ybe {}", mark(r.value.pass), r.value.case));
        }
        for r in &self.checks {
            out.push(format!("  [{}] {}", mark(r.value.pass), r.value.name));
            if let Some(c) = &r.value.counterexample {
                out.push(format!("         at {:?}: {}", c.indices, c.residual));
            }
        }
        for w in &self.weights {
            let lam: Vec<String> = w.lambda1.iter().map(|x| x.to_string()).collect();
            out.push(format!("  weights λ = ({})", lam.join(", ")));
            for (i, f) in w.ratios.iter().enumerate() {
                out.push(format!("    f{} = {f}", i + 1));
            }
            for r in &w.verdicts {
                out.push(format!("  [{}] {}", mark(r.pass), r.name));
            }
        }
        if let Some(g) = &self.gl2 {
            out.push(format!("  gl(2) f = {}", g.ratio));
        }
        if let Some(d) = &self.drinfeld {
            for e in &d.entries {
                let p = if e.exists {
                    format!("P{} = {}", e.index, e.polynomial())
                } else {
                    format!("P{} does not exist", e.index)
                };
                out.push(format!("  [{}] {p}", mark(e.exists)));
            }
        }
        out.push(mark(self.pass).to_string());
        out.join("\n")
    }
}
