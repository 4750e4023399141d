//! The Φ-Laplacian and Dirichlet modular on a truncated Cayley ball.
//!
//! Sums run over directed pairs `(x, s)` with both `x` and `s⁻¹x` in the ball,
//! so every undirected edge is counted once per direction:
//!
//! ```text
//! ρ(f)        = Σ_s Σ_x Φ(f(s⁻¹x) − f(x))
//! (Δ_Φ f)(x)  = Σ_s Φ′(f(s⁻¹x) − f(x))                 (x interior)
//! ⟨Δ_Φ h, f⟩  = Σ_s Σ_x Φ′(h(s⁻¹x) − h(x)) (f(s⁻¹x) − f(x))
//! ```
//!
//! All sums are taken sequentially in (generator, vertex) order, so results
//! are bit-reproducible.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::CayleyBall;
use crate::nfunction::NFunction;
use crate::orlicz::{luxemburg_norm, FiniteFunction};

#[derive(Debug, Clone, Copy)]
pub struct DirichletForm<'a> {
    pub nf: &'a NFunction,
    pub ball: &'a CayleyBall,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IdentityCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub ok: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GateauxRow {
    pub t: f64,
    pub err: f64,
}

impl<'a> DirichletForm<'a> {
    pub fn new(nf: &'a NFunction, ball: &'a CayleyBall) -> Self {
        DirichletForm { nf, ball }
    }

    /// Calls `visit(x, y, s)` for every directed pair, `y = s⁻¹x`.
    #[inline]
    pub fn for_each_edge(&self, mut visit: impl FnMut(usize, usize, usize)) {
        for s in 0..self.ball.generator_count() {
            for x in 0..self.ball.len() {
                if let Some(y) = self.ball.neighbor(s, x) {
                    visit(x, y, s);
                }
            }
        }
    }

    pub fn laplacian(&self, f: &FiniteFunction, x: usize) -> Result<f64> {
        self.ball.check(f)?;
        self.require_interior(x)?;
        Ok(self.laplacian_unchecked(&f.values, x))
    }

    /// `Δ_Φ f` at every interior vertex, zero elsewhere.
    pub fn laplacian_all(&self, f: &FiniteFunction) -> Result<FiniteFunction> {
        self.ball.check(f)?;
        let mut out = self.ball.zeros();
        for x in self.ball.interior() {
            out.values[x] = self.laplacian_unchecked(&f.values, x);
        }
        Ok(out)
    }

    pub(crate) fn laplacian_unchecked(&self, f: &[f64], x: usize) -> f64 {
        let mut acc = 0.0;
        for s in 0..self.ball.generator_count() {
            if let Some(y) = self.ball.neighbor(s, x) {
                acc += self.nf.dphi(f[y] - f[x]);
            }
        }
        acc
    }

    pub fn dirichlet_modular(&self, f: &FiniteFunction) -> Result<f64> {
        self.ball.check(f)?;
        Ok(self.modular_values(&f.values))
    }

    pub(crate) fn modular_values(&self, f: &[f64]) -> f64 {
        let mut acc = 0.0;
        self.for_each_edge(|x, y, _| acc += self.nf.phi(f[y] - f[x]));
        acc
    }

    pub fn pairing(&self, h: &FiniteFunction, f: &FiniteFunction) -> Result<f64> {
        self.ball.check(h)?;
        self.ball.check(f)?;
        Ok(self.pairing_values(&h.values, &f.values))
    }

    pub(crate) fn pairing_values(&self, h: &[f64], f: &[f64]) -> f64 {
        let mut acc = 0.0;
        self.for_each_edge(|x, y, _| {
            let df = f[y] - f[x];
            if df != 0.0 {
                acc += self.nf.dphi(h[y] - h[x]) * df;
            }
        });
        acc
    }

    /// `⟨Δ_Φ h, δ_x⟩ = −2 (Δ_Φ h)(x)`.
    pub fn delta_identity_check(&self, h: &FiniteFunction, x: usize) -> Result<IdentityCheck> {
        let rhs = -2.0 * self.laplacian(h, x)?;
        let lhs = self.pairing(h, &self.ball.delta(x))?;
        Ok(IdentityCheck { lhs, rhs, ok: (lhs - rhs).abs() <= 1e-12 * (1.0 + rhs.abs()) })
    }

    /// One-sided difference quotients of `ρ` at `f` in direction `g` against
    /// `⟨Δ_Φ f, g⟩`.
    pub fn gateaux_check(&self, f: &FiniteFunction, g: &FiniteFunction, ts: &[f64]) -> Result<Vec<GateauxRow>> {
        self.ball.check(f)?;
        self.ball.check(g)?;
        if let Some(x) = (0..self.ball.len()).find(|&x| g.values[x] != 0.0 && !self.ball.is_interior(x)) {
            return Err(Error::Domain(format!("direction is nonzero at non-interior vertex {x}")));
        }
        if let Some(t) = ts.iter().find(|t| !(**t > 0.0)) {
            return Err(Error::Argument(format!("step {t} must be positive")));
        }
        let base = self.modular_values(&f.values);
        let derivative = self.pairing_values(&f.values, &g.values);
        Ok(ts
            .iter()
            .map(|&t| {
                let moved = f.axpy(1.0, &g.scaled(t));
                let quotient = (self.modular_values(&moved.values) - base) / t;
                GateauxRow { t, err: (quotient - derivative).abs() }
            })
            .collect())
    }

    /// `Σ_s ‖λ(s)f − f‖_(Φ)` with differences over in-ball pairs only.
    pub fn dirichlet_seminorm(&self, f: &FiniteFunction) -> Result<f64> {
        self.ball.check(f)?;
        let mut total = 0.0;
        let mut diff = Vec::with_capacity(self.ball.len());
        for s in 0..self.ball.generator_count() {
            diff.clear();
            for x in 0..self.ball.len() {
                if let Some(y) = self.ball.neighbor(s, x) {
                    diff.push(f.values[y] - f.values[x]);
                }
            }
            total += luxemburg_norm(self.nf, &diff);
        }
        Ok(total)
    }

    fn require_interior(&self, x: usize) -> Result<()> {
        if x >= self.ball.len() {
            return Err(Error::Argument(format!("vertex {x} is outside the ball")));
        }
        if !self.ball.is_interior(x) {
            return Err(Error::Domain(format!(
                "vertex {x} (depth {}) is not interior to {}",
                self.ball.depth(x),
                self.ball.id()
            )));
        }
        Ok(())
    }
}
