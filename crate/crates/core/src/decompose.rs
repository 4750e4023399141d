//! Harmonic extension and the decomposition `f = u + h` on a ball, where `u`
//! vanishes off the interior and `h` is Φ-harmonic at every interior vertex.
//!
//! Two routes compute the same object:
//!
//! * in `h`: minimize `ρ(h)` over `h` agreeing with `f` off the interior;
//! * in `u`: minimize `ρ(f − u)` over interior-supported `u`.
//!
//! Boundary values pin the solution, so no normalization by constants is
//! applied.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::laplacian::DirichletForm;
use crate::orlicz::FiniteFunction;
use crate::solver::{initial_values, EdgeProblem, Init, SolveReport, SolverConfig};

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition {
    pub u: FiniteFunction,
    pub h: FiniteFunction,
    /// `max |Δ_Φ h|` over the interior.
    pub residual: f64,
    /// `ρ(h)`.
    pub energy: f64,
    pub sweeps: usize,
    pub converged: bool,
    /// `max |h − h′|` between the two routes.
    pub route_gap: f64,
}

#[derive(Serialize)]
struct DecompositionJson<'a> {
    u: &'a [f64],
    h: &'a [f64],
    residual: f64,
    energy: f64,
    sweeps: usize,
    converged: bool,
}

impl Serialize for Decomposition {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        DecompositionJson {
            u: &self.u.values,
            h: &self.h.values,
            residual: self.residual,
            energy: self.energy,
            sweeps: self.sweeps,
            converged: self.converged,
        }
        .serialize(ser)
    }
}

impl Decomposition {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }
}

fn interior_mask(form: &DirichletForm) -> Vec<bool> {
    (0..form.ball.len()).map(|x| form.ball.is_interior(x)).collect()
}

/// Minimizes `ρ(h)` with `h = f` off the interior and returns the full
/// solver report; non-convergence is reported, not raised.
pub fn harmonic_extension_report(form: &DirichletForm, f: &FiniteFunction, cfg: &SolverConfig) -> Result<SolveReport> {
    form.ball.check(f)?;
    let problem = EdgeProblem::new(*form, form.ball.interior())?;
    let start = initial_values(&f.values, &interior_mask(form), &cfg.init)?;
    problem.solve(start, cfg)
}

/// The Φ-harmonic function agreeing with `boundary` off the interior.
/// Interior values of `boundary` only matter through `Init::CopyF`.
pub fn harmonic_extension(
    form: &DirichletForm,
    boundary: &FiniteFunction,
    cfg: &SolverConfig,
) -> Result<FiniteFunction> {
    let report = harmonic_extension_report(form, boundary, cfg)?.require_converged()?;
    Ok(FiniteFunction { ball: form.ball.id(), values: report.values })
}

/// Minimizes `ρ(f − u)` over interior-supported `u`. `cfg.init` describes
/// the starting `h = f − u`, as in [`harmonic_extension`].
pub fn minimize_interior_report(form: &DirichletForm, f: &FiniteFunction, cfg: &SolverConfig) -> Result<SolveReport> {
    form.ball.check(f)?;
    let ball = form.ball;
    let offsets: Vec<Vec<f64>> = (0..ball.generator_count())
        .map(|s| (0..ball.len()).map(|x| ball.neighbor(s, x).map_or(0.0, |y| f.values[y] - f.values[x])).collect())
        .collect();
    let problem = EdgeProblem::new(*form, ball.interior())?.with_offsets(&offsets);
    let mask = interior_mask(form);
    let h0 = initial_values(&f.values, &mask, &cfg.init)?;
    let start: Vec<f64> = (0..ball.len()).map(|x| if mask[x] { f.values[x] - h0[x] } else { 0.0 }).collect();
    problem.solve(start, cfg)
}

pub fn decompose(form: &DirichletForm, f: &FiniteFunction, cfg: &SolverConfig) -> Result<Decomposition> {
    form.ball.check(f)?;
    cfg.validate()?;
    let first = f.values.first().copied().unwrap_or(0.0);
    if f.values.iter().all(|&v| v == first) {
        return Ok(Decomposition {
            u: form.ball.zeros(),
            h: f.clone(),
            residual: 0.0,
            energy: 0.0,
            sweeps: 0,
            converged: true,
            route_gap: 0.0,
        });
    }
    let a = harmonic_extension_report(form, f, cfg)?.require_converged()?;
    let b = minimize_interior_report(form, f, cfg)?.require_converged()?;
    let route_gap =
        a.values.iter().zip(&b.values).zip(&f.values).map(|((h, u), f)| (h - (f - u)).abs()).fold(0.0, f64::max);
    let u: Vec<f64> = f.values.iter().zip(&a.values).map(|(f, h)| f - h).collect();
    Ok(Decomposition {
        u: FiniteFunction { ball: form.ball.id(), values: u },
        h: FiniteFunction { ball: form.ball.id(), values: a.values },
        residual: a.residual,
        energy: a.energy,
        sweeps: a.sweeps,
        converged: a.converged,
        route_gap,
    })
}

/// `max |h_a − h_b|` for two solver configurations.
pub fn verify_uniqueness(
    form: &DirichletForm,
    f: &FiniteFunction,
    cfg_a: &SolverConfig,
    cfg_b: &SolverConfig,
) -> Result<f64> {
    if cfg_a == cfg_b {
        return Err(Error::Argument("configurations must differ in scheme or initialization".into()));
    }
    let a = decompose(form, f, cfg_a)?;
    let b = decompose(form, f, cfg_b)?;
    Ok(a.h.values.iter().zip(&b.h.values).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max))
}

/// `max_x |⟨Δ_Φ h, δ_x⟩|` over interior `x`.
pub fn first_order_violation(form: &DirichletForm, h: &FiniteFunction) -> Result<f64> {
    form.ball.check(h)?;
    let mut worst = 0.0f64;
    for x in form.ball.interior() {
        worst = worst.max(form.pairing(h, &form.ball.delta(x))?.abs());
    }
    Ok(worst)
}

impl Init {
    pub fn name(&self) -> &'static str {
        match self {
            Init::Zero => "zero",
            Init::CopyF => "copy_f",
            Init::Given(_) => "given",
        }
    }
}
