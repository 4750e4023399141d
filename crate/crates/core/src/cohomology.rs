//! 1-cocycles for the left-regular representation on a ball, the coboundary
//! map `α(f)(g) = λ(g)f − f`, and the capacity of the identity.
//!
//! A cocycle is stored by its generator values `b(s)`; the value at a longer
//! element is rebuilt along the BFS geodesic word with
//! `b(s·y) = b(s) + λ(s) b(y)`. Each value carries a mask of the vertices
//! where it is defined inside the ball.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{CayleyBall, GroupElement, GroupSpec};
use crate::laplacian::DirichletForm;
use crate::nfunction::NFunction;
use crate::orlicz::{luxemburg_norm, FiniteFunction};
use crate::solver::{initial_values, EdgeProblem, SolveReport, SolverConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Alpha,
    Explicit,
}

#[derive(Debug, Clone)]
pub struct Cocycle<'a> {
    pub ball: &'a CayleyBall,
    /// `b(s)` for each generator, zero outside its mask.
    pub values: Vec<FiniteFunction>,
    pub masks: Vec<Vec<bool>>,
    pub provenance: Provenance,
}

/// A function together with the vertices where it is defined.
#[derive(Debug, Clone, PartialEq)]
pub struct Partial {
    pub values: Vec<f64>,
    pub mask: Vec<bool>,
}

impl Partial {
    fn zero(n: usize) -> Self {
        Partial { values: vec![0.0; n], mask: vec![true; n] }
    }
}

/// `b(s) = λ(s)f − f`, defined where `s⁻¹x` lies in the ball.
pub fn alpha<'a>(ball: &'a CayleyBall, f: &FiniteFunction) -> Result<Cocycle<'a>> {
    ball.check(f)?;
    let mut values = Vec::with_capacity(ball.generator_count());
    let mut masks = Vec::with_capacity(ball.generator_count());
    for s in 0..ball.generator_count() {
        let mut b = ball.zeros();
        let mut m = vec![false; ball.len()];
        for x in 0..ball.len() {
            if let Some(y) = ball.neighbor(s, x) {
                b.values[x] = f.values[y] - f.values[x];
                m[x] = true;
            }
        }
        values.push(b);
        masks.push(m);
    }
    Ok(Cocycle { ball, values, masks, provenance: Provenance::Alpha })
}

impl<'a> Cocycle<'a> {
    pub fn explicit(ball: &'a CayleyBall, values: Vec<FiniteFunction>, masks: Vec<Vec<bool>>) -> Result<Self> {
        if values.len() != ball.generator_count() || masks.len() != ball.generator_count() {
            return Err(Error::Argument(format!(
                "a cocycle on {} needs one value per generator ({})",
                ball.id(),
                ball.generator_count()
            )));
        }
        for (v, m) in values.iter().zip(&masks) {
            ball.check(v)?;
            if m.len() != ball.len() {
                return Err(Error::Argument("mask length differs from the ball size".into()));
            }
        }
        Ok(Cocycle { ball, values, masks, provenance: Provenance::Explicit })
    }

    /// `λ(s) F`, i.e. `x ↦ F(s⁻¹x)`.
    fn shift(&self, s: usize, f: &Partial) -> Partial {
        let n = self.ball.len();
        let mut out = Partial { values: vec![0.0; n], mask: vec![false; n] };
        for x in 0..n {
            if let Some(y) = self.ball.neighbor(s, x) {
                if f.mask[y] {
                    out.values[x] = f.values[y];
                    out.mask[x] = true;
                }
            }
        }
        out
    }

    /// `b(g)` for `g` in the ball, rebuilt along its geodesic word.
    pub fn value_at(&self, g: &GroupElement) -> Result<Partial> {
        let idx = self.ball.index_of(g).ok_or_else(|| {
            Error::Domain(format!("{g} is outside {}; its cocycle value is not reconstructible", self.ball.id()))
        })?;
        let word = self.ball.geodesic_word(idx);
        let mut acc = Partial::zero(self.ball.len());
        for &s in word.iter().rev() {
            let mut next = self.shift(s, &acc);
            for x in 0..self.ball.len() {
                next.mask[x] &= self.masks[s][x];
                next.values[x] = if next.mask[x] { self.values[s].values[x] + next.values[x] } else { 0.0 };
            }
            acc = next;
        }
        Ok(acc)
    }

    /// Largest `|b(s)|` on the masks.
    pub fn scale(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.masks)
            .flat_map(|(v, m)| v.values.iter().zip(m).filter(|(_, m)| **m).map(|(x, _)| x.abs()))
            .fold(0.0, f64::max)
    }
}

/// `max |b(gh) − b(g) − λ(g) b(h)|` over the common domain.
pub fn cocycle_check(b: &Cocycle, g: &GroupElement, h: &GroupElement) -> Result<f64> {
    let spec = b.ball.spec();
    for e in [g, h] {
        if !spec.contains(e) {
            return Err(Error::Argument(format!("{e} is not an element of {spec}")));
        }
    }
    let gh = spec.mul(g, h);
    let (bg, bh, bgh) = (b.value_at(g)?, b.value_at(h)?, b.value_at(&gh)?);
    let g_inv = spec.inv(g);
    let mut worst = 0.0f64;
    for x in 0..b.ball.len() {
        if !(bg.mask[x] && bgh.mask[x]) {
            continue;
        }
        let Some(y) = b.ball.index_of(&spec.mul(&g_inv, b.ball.vertex(x))) else {
            continue;
        };
        if bh.mask[y] {
            worst = worst.max((bgh.values[x] - bg.values[x] - bh.values[y]).abs());
        }
    }
    Ok(worst)
}

#[derive(Debug, Clone, Serialize)]
pub struct CoboundaryDistance {
    /// `Σ_s ρ_Φ(b(s) − (λ(s)v − v))` at the minimizer.
    pub modular: f64,
    /// `Σ_s ‖b(s) − (λ(s)v − v)‖_(Φ)` at the minimizer.
    pub norm: f64,
    pub v: FiniteFunction,
    pub residual: f64,
    pub sweeps: usize,
    pub converged: bool,
}

/// Distance from `b` to coboundaries of interior-supported functions.
pub fn coboundary_distance(b: &Cocycle, form: &DirichletForm, cfg: &SolverConfig) -> Result<CoboundaryDistance> {
    let ball = form.ball;
    if !std::ptr::eq(ball, b.ball) && ball.id() != b.ball.id() {
        return Err(Error::Argument(format!("cocycle lives on {}, form on {}", b.ball.id(), ball.id())));
    }
    for s in 0..ball.generator_count() {
        for x in 0..ball.len() {
            if b.masks[s][x] != ball.neighbor(s, x).is_some() {
                return Err(Error::Argument(format!(
                    "generator value {} is not defined on every in-ball pair",
                    ball.generators()[s]
                )));
            }
        }
    }
    let offsets: Vec<Vec<f64>> = b.values.iter().map(|v| v.values.clone()).collect();
    let problem = EdgeProblem::new(*form, ball.interior())?.with_offsets(&offsets);
    let mask: Vec<bool> = (0..ball.len()).map(|x| ball.is_interior(x)).collect();
    let start = initial_values(&vec![0.0; ball.len()], &mask, &cfg.init)?;
    let report = problem.solve(start, cfg)?;
    let v = &report.values;
    let mut norm = 0.0;
    for s in 0..ball.generator_count() {
        let diff: Vec<f64> = (0..ball.len())
            .filter_map(|x| ball.neighbor(s, x).map(|y| b.values[s].values[x] - (v[y] - v[x])))
            .collect();
        norm += luxemburg_norm(form.nf, &diff);
    }
    Ok(CoboundaryDistance {
        modular: report.energy,
        norm,
        residual: report.residual,
        sweeps: report.sweeps,
        converged: report.converged,
        v: FiniteFunction { ball: ball.id(), values: report.values },
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CapacityResult {
    pub group: String,
    pub radius: usize,
    pub nfunction: String,
    pub capacity: f64,
    pub h: FiniteFunction,
    pub residual: f64,
    pub sweeps: usize,
    pub converged: bool,
}

/// `min ρ(f)` over `f` with `f(e) = 1` and `f = 0` on the sphere of radius `R`.
pub fn capacity(spec: &GroupSpec, radius: usize, nf: &NFunction, cfg: &SolverConfig) -> Result<CapacityResult> {
    let ball = CayleyBall::build(spec, radius)?;
    capacity_on(&ball, nf, cfg)
}

pub fn capacity_on(ball: &CayleyBall, nf: &NFunction, cfg: &SolverConfig) -> Result<CapacityResult> {
    if ball.radius() == 0 {
        return Err(Error::Argument("capacity needs radius at least 1".into()));
    }
    let report = capacity_report(ball, nf, cfg)?.require_converged()?;
    Ok(CapacityResult {
        group: ball.spec().to_string(),
        radius: ball.radius(),
        nfunction: nf.name().to_string(),
        capacity: report.energy,
        h: FiniteFunction { ball: ball.id(), values: report.values },
        residual: report.residual,
        sweeps: report.sweeps,
        converged: report.converged,
    })
}

/// Solver run behind [`capacity_on`]; non-convergence is reported, not raised.
pub fn capacity_report(ball: &CayleyBall, nf: &NFunction, cfg: &SolverConfig) -> Result<SolveReport> {
    let form = DirichletForm::new(nf, ball);
    let free: Vec<usize> = ball.interior().filter(|&x| x != 0).collect();
    let problem = EdgeProblem::new(form, free.iter().copied())?;
    let mut base = vec![0.0; ball.len()];
    base[0] = 1.0;
    let mut mask = vec![false; ball.len()];
    free.iter().for_each(|&x| mask[x] = true);
    let start = initial_values(&base, &mask, &cfg.init)?;
    problem.solve(start, cfg)
}
