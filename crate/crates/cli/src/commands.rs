use orlicz_core::cohomology::{capacity_on, CapacityResult};
use orlicz_core::decompose::decompose as decompose_fn;
use orlicz_core::experiment::{run_experiment, ExperimentKind, Report};
use orlicz_core::nfunction::{
    certify_delta2, certify_nabla2, check_growth_bounds, default_c_grid, GrowthBoundReport, RegularityCertificate,
    ValidationReport, YoungPair,
};
use orlicz_core::orlicz::{luxemburg_norm, modular, orlicz_norm};
use orlicz_core::rng::random_boundary;
use orlicz_core::{CayleyBall, DirichletForm, FiniteFunction, NFunction};
use serde::Serialize;

use crate::args::{
    BallArgs, BallSel, Boundary, CapacityArgs, DecomposeArgs, ExperimentArgs, Format, LaplacianArgs, NfCheckArgs,
    NormArgs,
};
use crate::config::{read_file, record, resolve_nf, solver_config, split_groups, RunConfig};
use crate::{Failure, Outcome};

fn ok(artifact: String, summary: String) -> Result<Outcome, Failure> {
    Ok(Outcome { artifact, summary, failure: None })
}

fn build_ball(sel: &BallSel, config: &mut RunConfig) -> Result<CayleyBall, Failure> {
    let spec = crate::config::group(&sel.group)?;
    config.group = Some(spec.to_string());
    config.radius = Some(sel.radius);
    Ok(CayleyBall::build(&spec, sel.radius)?)
}

#[derive(Serialize)]
struct YoungSummary {
    grid: usize,
    range: f64,
    min_gap: f64,
    equality_max_gap: f64,
}

#[derive(Serialize)]
struct NfCheckResult {
    name: String,
    validation: ValidationReport,
    delta2: RegularityCertificate,
    nabla2: RegularityCertificate,
    growth_bounds: GrowthBoundReport,
    young: YoungSummary,
}

fn young_summary(nf: &NFunction, range: f64, n: usize) -> Result<YoungSummary, Failure> {
    if !(range > 0.0 && range.is_finite()) || n < 2 {
        return Err(Failure::usage("--young-max must be positive and --young-grid at least 2"));
    }
    let grid: Vec<f64> = (0..n).map(|i| range * i as f64 / (n - 1) as f64).collect();
    let pair = YoungPair::new(nf, range.max(nf.dphi(range)))?;
    let psi = grid.iter().map(|&b| pair.psi.eval_phi(b)).collect::<Result<Vec<f64>, _>>()?;
    let mut min_gap = f64::INFINITY;
    let mut equality_max_gap = 0.0f64;
    for &a in &grid {
        for (&b, &psi_b) in grid.iter().zip(&psi) {
            min_gap = min_gap.min(nf.phi(a) + psi_b - a * b);
        }
        equality_max_gap = equality_max_gap.max(pair.gap(a, nf.dphi(a))?.abs());
    }
    Ok(YoungSummary { grid: n, range, min_gap, equality_max_gap })
}

pub fn nf_check(a: &NfCheckArgs) -> Result<Outcome, Failure> {
    let (nf, spec) = resolve_nf(&a.nf)?;
    let config = RunConfig { nf: Some(spec), ..RunConfig::new("nf-check", &a.output) }
        .option("x0", a.x0)
        .option("grid_points", a.grid_points)
        .option("young_max", a.young_max)
        .option("young_grid", a.young_grid);
    let delta2 = certify_delta2(&nf, a.x0, a.grid_points)?;
    let nabla2 = certify_nabla2(&nf, a.x0, &default_c_grid(), a.grid_points)?;
    let growth_bounds = check_growth_bounds(&nf, a.x0, delta2.constant, a.grid_points)?;
    let young = young_summary(&nf, a.young_max, a.young_grid)?;
    let result =
        NfCheckResult { name: nf.name().to_string(), validation: nf.validate(), delta2, nabla2, growth_bounds, young };
    let pass = |b: bool| if b { "pass" } else { "fail" };
    let summary = format!(
        "{}: N-function checks {}; Delta2 K = {} ({}); Nabla2 c = {} ({}); growth bounds {}; Young min gap {:e}, equality-case max |gap| {:e}",
        result.name,
        pass(result.validation.ok()),
        result.delta2.constant,
        pass(result.delta2.passed),
        result.nabla2.constant,
        pass(result.nabla2.passed),
        pass(result.growth_bounds.passed),
        result.young.min_gap,
        result.young.equality_max_gap
    );
    ok(record(&config, &result), summary)
}

#[derive(Serialize)]
struct NormResult {
    length: usize,
    modular: f64,
    luxemburg: f64,
    orlicz: f64,
    sandwich_ok: bool,
}

fn parse_vector(text: &str) -> Result<Vec<f64>, Failure> {
    let values: Vec<f64> = match serde_json::from_str::<Vec<f64>>(text) {
        Ok(v) => v,
        Err(_) => FiniteFunction::from_json(text)?.values,
    };
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Failure::usage("vector entries must be finite"));
    }
    Ok(values)
}

pub fn norm(a: &NormArgs) -> Result<Outcome, Failure> {
    let (nf, spec) = resolve_nf(&a.nf)?;
    let config = RunConfig { nf: Some(spec), input: Some(a.input.clone()), ..RunConfig::new("norm", &a.output) };
    let f = parse_vector(&read_file(&a.input)?)?;
    let (gauge, orlicz) = (luxemburg_norm(&nf, &f), orlicz_norm(&nf, &f));
    let result = NormResult {
        length: f.len(),
        modular: modular(&nf, &f),
        luxemburg: gauge,
        orlicz,
        sandwich_ok: gauge - 1e-9 <= orlicz && orlicz <= 2.0 * gauge + 1e-9,
    };
    let summary = format!("{}: Luxemburg norm {gauge}, Orlicz norm {orlicz} over {} entries", nf.name(), f.len());
    ok(record(&config, &result), summary)
}

/// The ball file format is fixed, so this artifact is the serialized ball
/// rather than a run record.
pub fn ball(a: &BallArgs) -> Result<Outcome, Failure> {
    let b = match (&a.input, &a.group, a.radius) {
        (Some(path), _, _) => CayleyBall::from_json(&read_file(path)?)?,
        (None, Some(g), Some(r)) => CayleyBall::build(&crate::config::group(g)?, r)?,
        _ => return Err(Failure::usage("give --group and --radius, or --input")),
    };
    let mut artifact = b.to_json();
    artifact.push('\n');
    let summary = format!(
        "{}: {} vertices, {} generators, {} interior, {} on the boundary sphere",
        b.id(),
        b.len(),
        b.generator_count(),
        b.interior().count(),
        b.boundary().count()
    );
    ok(artifact, summary)
}

#[derive(Serialize)]
struct LaplacianResult {
    laplacian: FiniteFunction,
    max_abs: f64,
    dirichlet_modular: f64,
    dirichlet_seminorm: f64,
}

pub fn laplacian(a: &LaplacianArgs) -> Result<Outcome, Failure> {
    let (nf, spec) = resolve_nf(&a.nf)?;
    let mut config =
        RunConfig { nf: Some(spec), input: Some(a.input.clone()), ..RunConfig::new("laplacian", &a.output) };
    let b = build_ball(&a.ball, &mut config)?;
    let f = FiniteFunction::from_json(&read_file(&a.input)?)?;
    let form = DirichletForm::new(&nf, &b);
    let lap = form.laplacian_all(&f)?;
    let result = LaplacianResult {
        max_abs: lap.values.iter().fold(0.0, |m, v| m.max(v.abs())),
        dirichlet_modular: form.dirichlet_modular(&f)?,
        dirichlet_seminorm: form.dirichlet_seminorm(&f)?,
        laplacian: lap,
    };
    let summary = format!(
        "{} {}: max |Laplacian| over the interior {:e}, Dirichlet modular {}",
        b.id(),
        nf.name(),
        result.max_abs,
        result.dirichlet_modular
    );
    ok(record(&config, &result), summary)
}

pub fn decompose(a: &DecomposeArgs) -> Result<Outcome, Failure> {
    let (nf, spec) = resolve_nf(&a.nf)?;
    let cfg = solver_config(&a.solver)?;
    let mut config = RunConfig {
        nf: Some(spec),
        solver: Some(cfg.clone()),
        seed: a.seed,
        input: a.input.clone(),
        ..RunConfig::new("decompose", &a.output)
    }
    .option("boundary", if a.boundary == Boundary::Random { "random" } else { "file" });
    let b = build_ball(&a.ball, &mut config)?;
    let f = match (a.boundary, &a.input) {
        (Boundary::Random, _) => random_boundary(&b, a.seed),
        (Boundary::File, Some(path)) => FiniteFunction::from_json(&read_file(path)?)?,
        (Boundary::File, None) => return Err(Failure::usage("--boundary file needs --input")),
    };
    let d = decompose_fn(&DirichletForm::new(&nf, &b), &f, &cfg)?;
    let summary = format!(
        "{} {}: converged after {} sweeps, residual {:e}, energy {}, route gap {:e}",
        b.id(),
        nf.name(),
        d.sweeps,
        d.residual,
        d.energy,
        d.route_gap
    );
    ok(record(&config, &d), summary)
}

pub fn capacity(a: &CapacityArgs) -> Result<Outcome, Failure> {
    let (nf, spec) = resolve_nf(&a.nf)?;
    let cfg = solver_config(&a.solver)?;
    let mut config = RunConfig { nf: Some(spec), solver: Some(cfg.clone()), ..RunConfig::new("capacity", &a.output) };
    let b = build_ball(&a.ball, &mut config)?;
    let c: CapacityResult = capacity_on(&b, &nf, &cfg)?;
    let summary = format!(
        "capacity({}, R={}, {}) = {} ({} sweeps, residual {:e})",
        c.group, c.radius, c.nfunction, c.capacity, c.sweeps, c.residual
    );
    ok(record(&config, &c), summary)
}

fn experiment_summary(report: &Report) -> String {
    let mut lines = vec![format!("{:?} (seed {})", report.kind, report.seed)];
    for r in &report.rows {
        let value = match (r.value, &r.error) {
            (Some(v), None) => format!("{v}"),
            (Some(v), Some(e)) => format!("{v} ({e})"),
            (None, Some(e)) => format!("failed: {e}"),
            (None, None) => "no value".into(),
        };
        lines.push(format!("  {} R={}: {} = {value}", r.group, r.radius, r.quantity));
    }
    lines.join("\n")
}

pub fn experiment(a: &ExperimentArgs) -> Result<Outcome, Failure> {
    let kind: ExperimentKind = a.kind.parse()?;
    let groups = split_groups(&a.groups)?;
    let (nf, spec) = resolve_nf(&a.nf)?;
    let cfg = solver_config(&a.solver)?;
    let config = RunConfig {
        nf: Some(spec),
        solver: Some(cfg.clone()),
        seed: a.seed,
        format: if a.format == Format::Csv { "csv" } else { "json" }.into(),
        ..RunConfig::new("experiment", &a.output)
    }
    .option("kind", kind)
    .option("groups", groups.iter().map(ToString::to_string).collect::<Vec<_>>())
    .option("radii", &a.radii);
    let report = run_experiment(kind, &groups, &a.radii, &nf, &cfg, a.seed);
    let failed = report.rows.iter().filter(|r| r.error.is_some()).count();
    let artifact = match a.format {
        Format::Csv => report.to_csv(),
        Format::Json => record(&config, &report),
    };
    Ok(Outcome {
        artifact,
        summary: experiment_summary(&report),
        failure: (failed > 0).then(|| Failure::numerical(format!("{failed} of {} cells failed", report.rows.len()))),
    })
}
