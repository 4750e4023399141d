//! Convex minimization of edge energies
//!
//! ```text
//! E(v) = Σ_{(x,s)} Φ(v(s⁻¹x) − v(x) − c_s(x))
//! ```
//!
//! over the values of `v` at a set of free vertices, all other values held
//! fixed. With `c = 0` this is the Dirichlet modular; with `c_s = λ(s)f − f`
//! it is the coboundary distance to `α(f)`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laplacian::DirichletForm;
use crate::numeric::bisect_increasing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    /// Coordinate sweeps in vertex-index order, each coordinate solved exactly
    /// by monotone bisection.
    GaussSeidel,
    /// Polak–Ribière nonlinear conjugate gradients with exact line search.
    GradientDescent,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Init {
    Zero,
    CopyF,
    Given(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct SolverConfig {
    pub scheme: Scheme,
    pub tol_residual: f64,
    pub tol_energy: f64,
    pub max_sweeps: usize,
    pub inner_tol: f64,
    pub init: Init,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            scheme: Scheme::GaussSeidel,
            tol_residual: 1e-10,
            tol_energy: 1e-14,
            max_sweeps: 100_000,
            inner_tol: 1e-13,
            init: Init::Zero,
        }
    }
}

impl SolverConfig {
    pub fn with_scheme(mut self, scheme: Scheme) -> Self {
        self.scheme = scheme;
        self
    }

    pub fn with_init(mut self, init: Init) -> Self {
        self.init = init;
        self
    }

    pub fn validate(&self) -> Result<()> {
        for (name, v) in
            [("tol_residual", self.tol_residual), ("tol_energy", self.tol_energy), ("inner_tol", self.inner_tol)]
        {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Argument(format!("{name} = {v} must be positive")));
            }
        }
        if self.max_sweeps == 0 {
            return Err(Error::Argument("max_sweeps must be at least 1".into()));
        }
        Ok(())
    }
}

/// Result of a minimization. `trace[k]` is the energy after `k` sweeps.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveReport {
    pub values: Vec<f64>,
    pub residual: f64,
    pub energy: f64,
    pub sweeps: usize,
    pub converged: bool,
    #[serde(skip)]
    pub trace: Vec<f64>,
}

impl SolveReport {
    pub fn require_converged(self) -> Result<Self> {
        if self.converged {
            Ok(self)
        } else {
            Err(Error::NonConvergence { sweeps: self.sweeps, residual: self.residual })
        }
    }
}

pub(crate) struct EdgeProblem<'a> {
    form: DirichletForm<'a>,
    /// `offsets[s][x] = c_s(x)`.
    offsets: Option<&'a [Vec<f64>]>,
    free: Vec<usize>,
    is_free: Vec<bool>,
}

impl<'a> EdgeProblem<'a> {
    pub fn new(form: DirichletForm<'a>, free: impl IntoIterator<Item = usize>) -> Result<Self> {
        if !form.nf.is_strictly_convex() {
            return Err(Error::Domain(format!(
                "{} is not strictly convex; the minimizer is not unique",
                form.nf.name()
            )));
        }
        let mut is_free = vec![false; form.ball.len()];
        let free: Vec<usize> = free.into_iter().collect();
        for &x in &free {
            debug_assert!(form.ball.is_interior(x));
            is_free[x] = true;
        }
        Ok(EdgeProblem { form, offsets: None, free, is_free })
    }

    pub fn with_offsets(mut self, offsets: &'a [Vec<f64>]) -> Self {
        debug_assert_eq!(offsets.len(), self.form.ball.generator_count());
        self.offsets = Some(offsets);
        self
    }

    #[inline]
    fn offset(&self, s: usize, x: usize) -> f64 {
        self.offsets.map_or(0.0, |c| c[s][x])
    }

    pub fn energy(&self, v: &[f64]) -> f64 {
        let nf = self.form.nf;
        let mut acc = 0.0;
        self.form.for_each_edge(|x, y, s| acc += nf.phi(v[y] - v[x] - self.offset(s, x)));
        acc
    }

    /// Anchors `a_k` with `∂E/∂v(z) = Σ_k Φ′(v(z) − a_k)`.
    fn anchors(&self, v: &[f64], z: usize, out: &mut Vec<f64>) {
        let ball = self.form.ball;
        out.clear();
        for s in 0..ball.generator_count() {
            let y = ball.neighbor(s, z).expect("free vertices are interior");
            out.push(v[y] - self.offset(s, z));
            let x = ball.forward(s, z).expect("free vertices are interior");
            out.push(v[x] + self.offset(s, x));
        }
    }

    fn partial(&self, anchors: &[f64], t: f64) -> f64 {
        anchors.iter().map(|&a| self.form.nf.dphi(t - a)).sum()
    }

    /// `∇E` restricted to free vertices (zero elsewhere).
    fn gradient(&self, v: &[f64], grad: &mut [f64]) {
        let nf = self.form.nf;
        grad.iter_mut().for_each(|g| *g = 0.0);
        self.form.for_each_edge(|x, y, s| {
            let d = nf.dphi(v[y] - v[x] - self.offset(s, x));
            if self.is_free[y] {
                grad[y] += d;
            }
            if self.is_free[x] {
                grad[x] -= d;
            }
        });
    }

    /// `max_z |∂E/∂v(z)| / 2`; equals `max |Δ_Φ v|` when `c = 0`.
    pub fn residual(&self, v: &[f64]) -> f64 {
        let mut anchors = Vec::new();
        self.free
            .iter()
            .map(|&z| {
                self.anchors(v, z, &mut anchors);
                0.5 * self.partial(&anchors, v[z]).abs()
            })
            .fold(0.0, f64::max)
    }

    pub fn solve(&self, start: Vec<f64>, cfg: &SolverConfig) -> Result<SolveReport> {
        cfg.validate()?;
        if start.len() != self.form.ball.len() {
            return Err(Error::Argument(format!(
                "initial values have length {}, ball has {} vertices",
                start.len(),
                self.form.ball.len()
            )));
        }
        if self.free.is_empty() {
            let energy = self.energy(&start);
            return Ok(SolveReport {
                values: start,
                residual: 0.0,
                energy,
                sweeps: 0,
                converged: true,
                trace: vec![energy],
            });
        }
        match cfg.scheme {
            Scheme::GaussSeidel => Ok(self.gauss_seidel(start, cfg)),
            Scheme::GradientDescent => Ok(self.conjugate_gradient(start, cfg)),
        }
    }

    fn stop(&self, prev: f64, energy: f64, residual: f64, cfg: &SolverConfig) -> bool {
        residual <= cfg.tol_residual && prev - energy <= cfg.tol_energy * prev.max(f64::MIN_POSITIVE)
    }

    fn gauss_seidel(&self, mut v: Vec<f64>, cfg: &SolverConfig) -> SolveReport {
        let mut last_step = vec![0.0f64; v.len()];
        let mut anchors = Vec::with_capacity(2 * self.form.ball.generator_count());
        let mut energy = self.energy(&v);
        let mut trace = vec![energy];
        let mut residual = f64::INFINITY;
        for sweep in 1..=cfg.max_sweeps {
            for &z in &self.free {
                self.anchors(&v, z, &mut anchors);
                let new = self.coordinate_min(&anchors, v[z], last_step[z], cfg.inner_tol);
                last_step[z] = new - v[z];
                v[z] = new;
            }
            let prev = energy;
            energy = self.energy(&v);
            trace.push(energy);
            residual = self.residual(&v);
            if self.stop(prev, energy, residual, cfg) {
                return SolveReport { values: v, residual, energy, sweeps: sweep, converged: true, trace };
            }
        }
        SolveReport { values: v, residual, energy, sweeps: cfg.max_sweeps, converged: false, trace }
    }

    /// Root of `t ↦ Σ_k Φ′(t − a_k)`, bracketed first near `current` and
    /// then, if needed, by the anchor hull.
    fn coordinate_min(&self, anchors: &[f64], current: f64, last_step: f64, tol: f64) -> f64 {
        let (lo_hull, hi_hull) =
            anchors.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &a| (lo.min(a), hi.max(a)));
        let width = hi_hull - lo_hull;
        if width == 0.0 {
            return lo_hull;
        }
        let g = |t: f64| self.partial(anchors, t);
        let t0 = current.clamp(lo_hull, hi_hull);
        let g0 = g(t0);
        if g0 == 0.0 {
            return t0;
        }
        let abs_tol = tol * width;
        let mut step = (2.0 * last_step.abs()).max(abs_tol);
        let (lo, hi) = if g0 > 0.0 {
            let mut hi = t0;
            loop {
                let lo = (t0 - step).max(lo_hull);
                if lo == lo_hull || g(lo) <= 0.0 {
                    break (lo, hi);
                }
                hi = lo;
                step *= 4.0;
            }
        } else {
            let mut lo = t0;
            loop {
                let hi = (t0 + step).min(hi_hull);
                if hi == hi_hull || g(hi) >= 0.0 {
                    break (lo, hi);
                }
                lo = hi;
                step *= 4.0;
            }
        };
        bisect_increasing(g, lo, hi, abs_tol, tol)
    }

    fn directional(&self, v: &[f64], d: &[f64], alpha: f64) -> f64 {
        let nf = self.form.nf;
        let mut acc = 0.0;
        self.form.for_each_edge(|x, y, s| {
            let dd = d[y] - d[x];
            if dd != 0.0 {
                acc += nf.dphi(v[y] - v[x] - self.offset(s, x) + alpha * dd) * dd;
            }
        });
        acc
    }

    fn line_search(&self, v: &[f64], d: &[f64], guess: f64, tol: f64) -> f64 {
        let phi = |a: f64| self.directional(v, d, a);
        let (mut lo, mut hi) = (0.0, guess);
        while phi(hi) < 0.0 {
            lo = hi;
            hi *= 2.0;
            if !hi.is_finite() {
                return lo;
            }
        }
        bisect_increasing(phi, lo, hi, 0.0, tol)
    }

    fn conjugate_gradient(&self, mut v: Vec<f64>, cfg: &SolverConfig) -> SolveReport {
        let n = v.len();
        let mut grad = vec![0.0; n];
        let mut next_grad = vec![0.0; n];
        self.gradient(&v, &mut grad);
        let mut dir: Vec<f64> = grad.iter().map(|g| -g).collect();
        let mut alpha = 1.0f64;
        let mut energy = self.energy(&v);
        let mut trace = vec![energy];
        let mut residual = f64::INFINITY;
        let restart = self.free.len().max(1);
        for iter in 1..=cfg.max_sweeps {
            let scale = dir.iter().fold(0.0f64, |m, d| m.max(d.abs()));
            if scale == 0.0 {
                residual = self.residual(&v);
                return SolveReport { values: v, residual, energy, sweeps: iter, converged: true, trace };
            }
            alpha = self.line_search(&v, &dir, alpha.max(1e-300), cfg.inner_tol);
            for &z in &self.free {
                v[z] += alpha * dir[z];
            }
            let prev = energy;
            energy = self.energy(&v);
            trace.push(energy);
            residual = self.residual(&v);
            if self.stop(prev, energy, residual, cfg) {
                return SolveReport { values: v, residual, energy, sweeps: iter, converged: true, trace };
            }
            self.gradient(&v, &mut next_grad);
            let gg: f64 = self.free.iter().map(|&z| grad[z] * grad[z]).sum();
            let beta = if iter % restart == 0 || gg == 0.0 {
                0.0
            } else {
                let num: f64 = self.free.iter().map(|&z| next_grad[z] * (next_grad[z] - grad[z])).sum();
                (num / gg).max(0.0)
            };
            for &z in &self.free {
                dir[z] = -next_grad[z] + beta * dir[z];
            }
            let descent: f64 = self.free.iter().map(|&z| dir[z] * next_grad[z]).sum();
            if descent >= 0.0 {
                for &z in &self.free {
                    dir[z] = -next_grad[z];
                }
            }
            std::mem::swap(&mut grad, &mut next_grad);
        }
        SolveReport { values: v, residual, energy, sweeps: cfg.max_sweeps, converged: false, trace }
    }
}

/// Starting values: `base` everywhere, with free vertices overwritten
/// according to `init`.
pub(crate) fn initial_values(base: &[f64], free: &[bool], init: &Init) -> Result<Vec<f64>> {
    let mut v = base.to_vec();
    match init {
        Init::CopyF => {}
        Init::Zero => {
            for (x, _) in free.iter().enumerate().filter(|(_, f)| **f) {
                v[x] = 0.0;
            }
        }
        Init::Given(g) => {
            if g.len() != base.len() {
                return Err(Error::Argument(format!(
                    "given initialization has length {}, expected {}",
                    g.len(),
                    base.len()
                )));
            }
            if g.iter().any(|x| !x.is_finite()) {
                return Err(Error::Argument("given initialization has non-finite entries".into()));
            }
            for (x, _) in free.iter().enumerate().filter(|(_, f)| **f) {
                v[x] = g[x];
            }
        }
    }
    Ok(v)
}
