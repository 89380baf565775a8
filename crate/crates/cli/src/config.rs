//! Run configuration: command-line flags layered over an optional JSON file.

use std::path::{Path, PathBuf};

use clap::{Args, ValueEnum};
use serde::{Deserialize, Serialize};
use thiserror::Error;
use yanglab::structure::{make_case, CaseDescriptor, Family};
use yanglab::verify::Mode;
use yanglab::Scalar;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("cannot read config {path}: {source}")]
    Read {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("malformed config {path}: {source}")]
    Parse {
        path: PathBuf,
        source: serde_json::Error,
    },
    #[error("invalid value for {key}: {msg}")]
    Value { key: &'static str, msg: String },
    #[error("{0}")]
    Invalid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FamilyArg {
    So,
    Sp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum OpKind {
    Spinor,
    Heisenberg,
    Js,
    Product,
    Gl2chain,
    Fuse3,
}

/// Factor of a product construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum FactorKind {
    Spinor,
    Heisenberg,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModeArg {
    Exact,
    Sample,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Sample => Mode::Sample,
        }
    }
}

/// Every flag is optional so that a config file can supply it.
#[derive(Args, Clone, Debug, Default, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ConfigArgs {
    /// JSON file with any of the options below; flags take precedence.
    #[arg(long, value_name = "PATH")]
    #[serde(skip)]
    pub config: Option<PathBuf>,

    #[arg(long, value_enum)]
    pub family: Option<FamilyArg>,
    /// Rank.
    #[arg(long)]
    pub m: Option<usize>,
    /// Odd orthogonal algebra so(2m+1).
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub odd: Option<bool>,
    #[arg(long, value_enum)]
    pub op: Option<OpKind>,

    /// Twice the JS representation parameter.
    #[arg(long = "twoL", alias = "two-l")]
    #[serde(rename = "twoL")]
    pub two_l: Option<u32>,
    /// Heisenberg parameter ℓ (rational, e.g. `3/2`).
    #[arg(long)]
    pub ell: Option<String>,
    /// ℓ of the right factor of a product.
    #[arg(long)]
    pub ell2: Option<String>,
    /// Relative shift of the product factors.
    #[arg(long)]
    pub delta: Option<String>,
    /// Central value k of the JS construction.
    #[arg(long)]
    pub k: Option<String>,
    /// Degree truncation D of polynomial modules (occupation cap for the
    /// symplectic spinor).
    #[arg(long = "trunc")]
    pub trunc: Option<u32>,
    #[arg(long, value_enum)]
    pub left: Option<FactorKind>,
    #[arg(long, value_enum)]
    pub right: Option<FactorKind>,
    /// gl(2) chain factors `u_k:d_k`, comma separated (e.g. `0:2,1/2:1`).
    #[arg(long)]
    pub chain: Option<String>,
    /// Use the whole degree-2ℓ layer instead of the module generated by the
    /// highest-weight vector.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub full_layer: Option<bool>,

    /// Comma-separated check names (default depends on the construction).
    #[arg(long)]
    pub checks: Option<String>,
    #[arg(long, value_enum)]
    pub mode: Option<ModeArg>,
    /// Number of sample points in sample mode.
    #[arg(long)]
    pub points: Option<usize>,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Worker thread cap.
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl ConfigArgs {
    /// Fills unset fields from `base`.
    fn or(self, base: ConfigArgs) -> ConfigArgs {
        ConfigArgs {
            config: self.config,
            family: self.family.or(base.family),
            m: self.m.or(base.m),
            odd: self.odd.or(base.odd),
            op: self.op.or(base.op),
            two_l: self.two_l.or(base.two_l),
            ell: self.ell.or(base.ell),
            ell2: self.ell2.or(base.ell2),
            delta: self.delta.or(base.delta),
            k: self.k.or(base.k),
            trunc: self.trunc.or(base.trunc),
            left: self.left.or(base.left),
            right: self.right.or(base.right),
            chain: self.chain.or(base.chain),
            full_layer: self.full_layer.or(base.full_layer),
            checks: self.checks.or(base.checks),
            mode: self.mode.or(base.mode),
            points: self.points.or(base.points),
            json: self.json.or(base.json),
            jobs: self.jobs.or(base.jobs),
        }
    }
}

pub const CHECK_NAMES: [&str; 9] = [
    "rll",
    "lie",
    "adjoint",
    "constraint",
    "center",
    "w",
    "chi3",
    "sp2_gl2",
    "fusion",
];

/// Validated configuration, echoed into the report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub case: CaseDescriptor,
    pub op: OpKind,
    pub two_l: u32,
    pub ell: Scalar,
    pub ell2: Scalar,
    pub delta: Scalar,
    pub k: Option<Scalar>,
    pub trunc: u32,
    pub spinor_trunc: Option<u32>,
    pub left: FactorKind,
    pub right: FactorKind,
    pub chain: Vec<(Scalar, i64)>,
    pub full_layer: bool,
    pub checks: Vec<String>,
    pub mode: Mode,
    pub points: usize,
    #[serde(skip)]
    pub json: Option<PathBuf>,
    #[serde(skip)]
    pub jobs: Option<usize>,
}

fn scalar(key: &'static str, v: Option<&str>, default: &str) -> Result<Scalar, ConfigError> {
    v.unwrap_or(default)
        .parse()
        .map_err(|e: yanglab::Error| ConfigError::Value {
            key,
            msg: e.to_string(),
        })
}

fn parse_chain(s: &str) -> Result<Vec<(Scalar, i64)>, ConfigError> {
    let bad = |msg: String| ConfigError::Value { key: "chain", msg };
    s.split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|part| {
            let (u, d) = part
                .split_once(':')
                .ok_or_else(|| bad(format!("`{part}` is not u:d")))?;
            let u: Scalar = u
                .trim()
                .parse()
                .map_err(|e: yanglab::Error| bad(e.to_string()))?;
            let d: i64 = d
                .trim()
                .parse()
                .map_err(|_| bad(format!("`{d}` is not an integer")))?;
            if d < 0 {
                return Err(bad(format!("negative exponent {d}")));
            }
            Ok((u, d))
        })
        .collect()
}

pub fn load_file(path: &Path) -> Result<ConfigArgs, ConfigError> {
    let text = std::fs::read_to_string(path).map_err(|source| ConfigError::Read {
        path: path.into(),
        source,
    })?;
    serde_json::from_str(&text).map_err(|source| ConfigError::Parse {
        path: path.into(),
        source,
    })
}

impl RunConfig {
    /// Merges flags over the config file and checks every precondition of
    /// the chosen construction.
    pub fn resolve(flags: ConfigArgs) -> Result<RunConfig, ConfigError> {
        let args = match &flags.config {
            Some(p) => flags.clone().or(load_file(p)?),
            None => flags,
        };
        let op = args.op.unwrap_or(OpKind::Spinor);
        let family = match (op, args.family, args.odd.unwrap_or(false)) {
            (OpKind::Gl2chain | OpKind::Fuse3, _, _) => Family::SoOdd,
            (_, Some(FamilyArg::Sp), true) => {
                return Err(ConfigError::Invalid(
                    "--odd applies to the orthogonal family only".into(),
                ))
            }
            (_, Some(FamilyArg::Sp), false) => Family::Sp,
            (_, _, true) => Family::SoOdd,
            (_, _, false) => Family::SoEven,
        };
        let m = match op {
            OpKind::Gl2chain | OpKind::Fuse3 => 1,
            _ => args
                .m
                .ok_or_else(|| ConfigError::Invalid("--m is required".into()))?,
        };
        let case = make_case(family, m).map_err(|e| ConfigError::Invalid(e.to_string()))?;

        let ell = scalar("ell", args.ell.as_deref(), "0")?;
        let ell2 = match &args.ell2 {
            Some(_) => scalar("ell2", args.ell2.as_deref(), "0")?,
            None => ell.clone(),
        };
        let delta = scalar("delta", args.delta.as_deref(), "0")?;
        let k = args
            .k
            .as_deref()
            .map(|v| scalar("k", Some(v), "0"))
            .transpose()?;
        let two_l = args.two_l.unwrap_or(1);
        let trunc = args.trunc.unwrap_or(3);
        let left = args.left.unwrap_or(FactorKind::Spinor);
        let right = args.right.unwrap_or(left);
        let chain = match (&args.chain, op) {
            (Some(c), _) => parse_chain(c)?,
            (None, OpKind::Gl2chain | OpKind::Fuse3) => vec![(Scalar::int(0), 2)],
            (None, _) => Vec::new(),
        };

        let uses_heisenberg = op == OpKind::Heisenberg
            || (op == OpKind::Product
                && (left == FactorKind::Heisenberg || right == FactorKind::Heisenberg));
        if uses_heisenberg && family == Family::SoOdd {
            return Err(ConfigError::Invalid(
                "the Heisenberg construction does not exist for so(2m+1)".into(),
            ));
        }
        if uses_heisenberg && trunc == 0 {
            return Err(ConfigError::Value {
                key: "trunc",
                msg: "must be at least 1".into(),
            });
        }
        if op == OpKind::Js && family == Family::Sp && two_l > 1 {
            return Err(ConfigError::Value {
                key: "twoL",
                msg: "must be 0 or 1 for sp(2m)".into(),
            });
        }
        if op == OpKind::Fuse3 && chain.is_empty() {
            return Err(ConfigError::Value {
                key: "chain",
                msg: "empty chain".into(),
            });
        }
        if op == OpKind::Gl2chain && chain.is_empty() {
            return Err(ConfigError::Value {
                key: "chain",
                msg: "empty chain".into(),
            });
        }
        if k.is_some() && op != OpKind::Js {
            return Err(ConfigError::Invalid(
                "--k applies to the js construction only".into(),
            ));
        }

        let checks = match &args.checks {
            Some(list) => {
                let names: Vec<String> = list
                    .split(',')
                    .map(|s| s.trim().to_string())
                    .filter(|s| !s.is_empty())
                    .collect();
                if let Some(bad) = names.iter().find(|n| !CHECK_NAMES.contains(&n.as_str())) {
                    return Err(ConfigError::Value {
                        key: "checks",
                        msg: format!("unknown check `{bad}` (known: {})", CHECK_NAMES.join(", ")),
                    });
                }
                names
            }
            None => default_checks(op, &case, chain.len()),
        };
        let mode: Mode = args.mode.unwrap_or(ModeArg::Exact).into();
        let points = args.points.unwrap_or(4);
        if mode == Mode::Sample && points == 0 {
            return Err(ConfigError::Value {
                key: "points",
                msg: "must be positive".into(),
            });
        }
        if args.jobs == Some(0) {
            return Err(ConfigError::Value {
                key: "jobs",
                msg: "must be positive".into(),
            });
        }
        let spinor_trunc = (family == Family::Sp).then_some(args.trunc).flatten();
        Ok(RunConfig {
            case,
            op,
            two_l,
            ell,
            ell2,
            delta,
            k,
            trunc,
            spinor_trunc,
            left,
            right,
            chain,
            full_layer: args.full_layer.unwrap_or(false),
            checks,
            mode,
            points,
            json: args.json,
            jobs: args.jobs,
        })
    }
}

fn default_checks(op: OpKind, case: &CaseDescriptor, chain_len: usize) -> Vec<String> {
    let names: &[&str] = match op {
        OpKind::Gl2chain => &["fusion"],
        // fused chains of several factors have order > 2
        OpKind::Fuse3 if chain_len > 1 => &["rll", "lie", "adjoint", "center"],
        OpKind::Js => &["rll", "lie", "adjoint", "constraint", "center", "w", "chi3"],
        OpKind::Spinor | OpKind::Heisenberg if case.family == Family::Sp && case.m == 1 => {
            &["rll", "lie", "adjoint", "constraint", "center", "sp2_gl2"]
        }
        _ => &["rll", "lie", "adjoint", "constraint", "center"],
    };
    names.iter().map(|s| s.to_string()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(f: impl FnOnce(&mut ConfigArgs)) -> ConfigArgs {
        let mut a = ConfigArgs {
            m: Some(2),
            ..Default::default()
        };
        f(&mut a);
        a
    }

    #[test]
    fn chain_parsing() {
        let c = parse_chain("0:2, 1/2:1").unwrap();
        assert_eq!(c, vec![(Scalar::int(0), 2), (Scalar::frac(1, 2), 1)]);
        assert!(parse_chain("0").is_err());
        assert!(parse_chain("0:-1").is_err());
    }

    #[test]
    fn preconditions_are_enforced() {
        let heis_odd = args(|a| {
            a.op = Some(OpKind::Heisenberg);
            a.odd = Some(true);
        });
        assert!(RunConfig::resolve(heis_odd).is_err());
        let js_sp = args(|a| {
            a.op = Some(OpKind::Js);
            a.family = Some(FamilyArg::Sp);
            a.two_l = Some(2);
        });
        assert!(RunConfig::resolve(js_sp).is_err());
        let unknown = args(|a| a.checks = Some("rll,bogus".into()));
        assert!(RunConfig::resolve(unknown).is_err());
        assert!(RunConfig::resolve(ConfigArgs::default()).is_err());
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("yanglab-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("run.json");
        std::fs::write(
            &path,
            r#"{"family": "sp", "m": 1, "op": "heisenberg", "ell": "1/2"}"#,
        )
        .unwrap();
        let flags = ConfigArgs {
            config: Some(path.clone()),
            m: Some(2),
            ..Default::default()
        };
        let cfg = RunConfig::resolve(flags).unwrap();
        assert_eq!(cfg.case.m, 2);
        assert_eq!(cfg.case.family, Family::Sp);
        assert_eq!(cfg.ell, Scalar::frac(1, 2));
        std::fs::write(&path, r#"{"famly": "sp"}"#).unwrap();
        let flags = ConfigArgs {
            config: Some(path),
            ..Default::default()
        };
        assert!(matches!(
            RunConfig::resolve(flags),
            Err(ConfigError::Parse { .. })
        ));
        std::fs::remove_dir_all(dir).ok();
    }
}
