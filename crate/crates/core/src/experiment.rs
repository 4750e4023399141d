//! Tabulated runs over groups and radii.
//!
//! Cells run in parallel; rows come out in (group, radius) declaration order
//! and each cell depends only on its own inputs and the seed.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cohomology::capacity_report;
use crate::decompose::harmonic_extension_report;
use crate::error::{Error, Result};
use crate::groups::{CayleyBall, GroupSpec};
use crate::laplacian::DirichletForm;
use crate::nfunction::NFunction;
use crate::rng::random_boundary;
use crate::solver::SolverConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExperimentKind {
    /// Capacity of the identity relative to the sphere of radius `R`.
    CapacityTrend,
    /// Oscillation of the harmonic extension of random boundary data on the
    /// ball of radius `⌊R/2⌋`.
    FlattenTest,
}

impl ExperimentKind {
    pub fn quantity(self) -> &'static str {
        match self {
            ExperimentKind::CapacityTrend => "capacity",
            ExperimentKind::FlattenTest => "inner_oscillation",
        }
    }
}

impl std::str::FromStr for ExperimentKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "capacity_trend" => Ok(ExperimentKind::CapacityTrend),
            "flatten_test" => Ok(ExperimentKind::FlattenTest),
            _ => Err(Error::Argument(format!("unknown experiment '{s}' (expected capacity_trend or flatten_test)"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Row {
    pub group: String,
    pub radius: usize,
    pub nfunction: String,
    pub quantity: String,
    /// `None` when the cell failed before producing a value.
    pub value: Option<f64>,
    pub converged: bool,
    pub residual: Option<f64>,
    pub sweeps: Option<usize>,
    pub vertices: Option<usize>,
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub kind: ExperimentKind,
    pub seed: u64,
    pub rows: Vec<Row>,
}

pub const CSV_HEADER: &str = "group,radius,nfunction,quantity,value,converged";

impl Report {
    /// One line per row; failed cells have an empty value field.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for r in &self.rows {
            let value = r.value.filter(|v| v.is_finite()).map(|v| format!("{v:e}")).unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                csv_field(&r.group),
                r.radius,
                csv_field(&r.nfunction),
                r.quantity,
                value,
                r.converged
            ));
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Values of one group's rows, in radius order.
    pub fn column(&self, group: &str) -> Vec<(usize, Option<f64>)> {
        self.rows.iter().filter(|r| r.group == group).map(|r| (r.radius, r.value)).collect()
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn run_experiment(
    kind: ExperimentKind,
    groups: &[GroupSpec],
    radii: &[usize],
    nf: &NFunction,
    cfg: &SolverConfig,
    seed: u64,
) -> Report {
    let cells: Vec<(&GroupSpec, usize)> = groups.iter().flat_map(|g| radii.iter().map(move |&r| (g, r))).collect();
    let rows = cells.par_iter().map(|&(g, r)| run_cell(kind, g, r, nf, cfg, seed)).collect();
    Report { kind, seed, rows }
}

fn run_cell(
    kind: ExperimentKind,
    group: &GroupSpec,
    radius: usize,
    nf: &NFunction,
    cfg: &SolverConfig,
    seed: u64,
) -> Row {
    let mut row = Row {
        group: group.to_string(),
        radius,
        nfunction: nf.name().to_string(),
        quantity: kind.quantity().to_string(),
        value: None,
        converged: false,
        residual: None,
        sweeps: None,
        vertices: None,
        error: None,
    };
    let outcome = (|| -> Result<()> {
        if radius == 0 {
            return Err(Error::Argument("radius must be at least 1".into()));
        }
        let ball = CayleyBall::build(group, radius)?;
        row.vertices = Some(ball.len());
        let report = match kind {
            ExperimentKind::CapacityTrend => capacity_report(&ball, nf, cfg)?,
            ExperimentKind::FlattenTest => {
                let f = random_boundary(&ball, seed);
                harmonic_extension_report(&DirichletForm::new(nf, &ball), &f, cfg)?
            }
        };
        row.value = Some(match kind {
            ExperimentKind::CapacityTrend => report.energy,
            ExperimentKind::FlattenTest => {
                let inner = ball.interior().filter(|&x| ball.depth(x) <= radius / 2).map(|x| report.values[x]);
                let (lo, hi) = inner.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)));
                hi - lo
            }
        });
        row.converged = report.converged;
        row.residual = Some(report.residual);
        row.sweeps = Some(report.sweeps);
        if !report.converged {
            row.error = Some(Error::NonConvergence { sweeps: report.sweeps, residual: report.residual }.to_string());
        }
        Ok(())
    })();
    if let Err(e) = outcome {
        row.error = Some(e.to_string());
    }
    row
}
