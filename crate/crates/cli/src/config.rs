use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use orlicz_core::{GroupSpec, Init, NFunction, Scheme, SolverConfig};
use serde::Serialize;

use crate::args::{InitArg, NfArgs, SchemeArg, SolverArgs};
use crate::Failure;

/// How the N-function was specified on the command line.
#[derive(Debug, Clone, Serialize)]
#[serde(untagged)]
pub enum NfSpec {
    Builtin(String),
    Expr { phi_expr: String, dphi_expr: String, params: BTreeMap<String, f64> },
}

/// Fully resolved configuration, embedded in every run record.
#[derive(Debug, Clone, Default, Serialize)]
pub struct RunConfig {
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub group: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub radius: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nf: Option<NfSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverConfig>,
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<PathBuf>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    pub format: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub options: BTreeMap<String, serde_json::Value>,
}

impl RunConfig {
    pub fn new(command: &str, output: &Option<PathBuf>) -> Self {
        RunConfig { command: command.into(), output: output.clone(), format: "json".into(), ..Default::default() }
    }

    pub fn option(mut self, key: &str, value: impl Serialize) -> Self {
        self.options.insert(key.into(), serde_json::to_value(value).expect("option serializes"));
        self
    }
}

#[derive(Serialize)]
pub struct RunRecord<'a, T: Serialize> {
    pub config: &'a RunConfig,
    pub result: T,
}

pub fn record<T: Serialize>(config: &RunConfig, result: T) -> String {
    let mut s = serde_json::to_string_pretty(&RunRecord { config, result }).expect("record serializes");
    s.push('\n');
    s
}

pub fn resolve_nf(args: &NfArgs) -> Result<(NFunction, NfSpec), Failure> {
    match (&args.nf, &args.phi_expr, &args.dphi_expr) {
        (Some(spec), None, None) => {
            if !args.params.is_empty() {
                return Err(Failure::usage(
                    "--param only applies to --phi-expr/--dphi-expr; put built-in parameters in --nf",
                ));
            }
            Ok((NFunction::from_spec(spec)?, NfSpec::Builtin(spec.clone())))
        }
        (None, Some(phi), Some(dphi)) => {
            let mut params = BTreeMap::new();
            for item in &args.params {
                let (k, v) =
                    item.split_once('=').ok_or_else(|| Failure::usage(format!("expected NAME=VALUE, got '{item}'")))?;
                let v: f64 = v.trim().parse().map_err(|_| Failure::usage(format!("bad number in '{item}'")))?;
                params.insert(k.trim().to_string(), v);
            }
            let nf = NFunction::parse(phi, dphi, &params)?;
            Ok((nf, NfSpec::Expr { phi_expr: phi.clone(), dphi_expr: dphi.clone(), params }))
        }
        _ => Err(Failure::usage("give either --nf or both --phi-expr and --dphi-expr")),
    }
}

pub fn solver_config(args: &SolverArgs) -> Result<SolverConfig, Failure> {
    let cfg = SolverConfig {
        scheme: match args.scheme {
            SchemeArg::GaussSeidel => Scheme::GaussSeidel,
            SchemeArg::GradientDescent => Scheme::GradientDescent,
        },
        tol_residual: args.tol_residual,
        tol_energy: args.tol_energy,
        max_sweeps: args.max_sweeps,
        inner_tol: args.inner_tol,
        init: match args.init {
            InitArg::Zero => Init::Zero,
            InitArg::CopyF => Init::CopyF,
        },
    };
    cfg.validate()?;
    Ok(cfg)
}

pub fn group(spec: &str) -> Result<GroupSpec, Failure> {
    Ok(spec.parse::<GroupSpec>()?)
}

/// Splits a comma-separated group list, keeping commas inside parentheses.
pub fn split_groups(list: &str) -> Result<Vec<GroupSpec>, Failure> {
    let mut out = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, c) in list.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(group(list[start..i].trim())?);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(group(list[start..].trim())?);
    Ok(out)
}

pub fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::io(format!("cannot read {}: {e}", path.display())))
}
